#include "telegraph/harness/config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "telegraph/errors.hpp"

namespace telegraph::harness {

using nlohmann::json;

namespace {

struct ModeEntry {
    Mode mode;
    std::string_view name;
};

constexpr ModeEntry kModes[] = {
    {Mode::NoKillLimit, "no_kill_limit"}, {Mode::KillLimit, "kill_limit"},
    {Mode::KernelValidation, "kernel_validation"}, {Mode::Simulate, "simulate"},
    {Mode::KernelTable, "kernel_table"},
};

const std::vector<std::string> kTopKeys{"mode",    "params",         "epsilons", "t_macro",        "grid",
                                        "initial", "mc",             "flip_intensity", "cfl", "report_runtime",
                                        "kernel_table", "output"};
const std::vector<std::string> kParamKeys{"p", "p_prime", "q", "q_prime"};
const std::vector<std::string> kGridKeys{"half_width", "n_cells"};
const std::vector<std::string> kInitialKeys{"kind", "mean", "std", "x", "line"};
const std::vector<std::string> kMcKeys{"n_particles", "seed"};
const std::vector<std::string> kTableKeys{"times", "x", "y"};

std::size_t edit_distance(std::string_view a, std::string_view b) {
    std::vector<std::size_t> row(b.size() + 1);
    for (std::size_t j = 0; j <= b.size(); ++j) row[j] = j;
    for (std::size_t i = 1; i <= a.size(); ++i) {
        std::size_t diag = row[0];
        row[0] = i;
        for (std::size_t j = 1; j <= b.size(); ++j) {
            const std::size_t up = row[j];
            row[j] = std::min({row[j] + 1, row[j - 1] + 1, diag + (a[i - 1] == b[j - 1] ? 0 : 1)});
            diag = up;
        }
    }
    return row[b.size()];
}

void reject_unknown(const json& obj, const std::vector<std::string>& known, std::string_view where) {
    if (!obj.is_object()) throw ConfigError(std::string(where) + " must be a JSON object");
    for (const auto& [key, value] : obj.items()) {
        if (std::find(known.begin(), known.end(), key) != known.end()) continue;
        std::string msg = "unknown key '" + key + "' in " + std::string(where);
        if (auto s = suggest_key(key, known)) msg += "; did you mean '" + *s + "'?";
        throw ConfigError(msg);
    }
}

template <class T>
T get(const json& obj, const char* key, std::string_view where) {
    try {
        return obj.at(key).get<T>();
    } catch (const json::exception&) {
        throw ConfigError(std::string(where) + "." + key + " is missing or has the wrong type");
    }
}

template <class T>
void get_opt(const json& obj, const char* key, std::string_view where, T& out) {
    if (obj.contains(key)) out = get<T>(obj, key, where);
}

std::string fmt(double v) {
    std::ostringstream os;
    os << v;
    return os.str();
}

void check_kill_hypothesis(const InterfaceParams& ip) {
    if (ip.gamma_kill > 0.0) return;
    if (ip.p0 == 0.0 && ip.q0 == 0.0) {
        throw ConfigError("kill limit needs killing at the interface, but p0 = q0 = 0 (gamma = p q0 + q p0 + p0 q0 = 0); "
                          "use converge-nokill");
    }
    if (ip.p0 == 0.0 && ip.p == 0.0) {
        throw ConfigError("gamma = p q0 + q p0 + p0 q0 = 0 with p0 = 0 and p = 0: every particle approaching from the "
                          "left is reflected and never reaches the right half-axis to be killed there, so the minimal "
                          "Brownian motion is not a good approximation even though q0 > 0");
    }
    if (ip.q0 == 0.0 && ip.q == 0.0) {
        throw ConfigError("gamma = p q0 + q p0 + p0 q0 = 0 with q0 = 0 and q = 0: every particle approaching from the "
                          "right is reflected and never reaches the left half-axis to be killed there, so the minimal "
                          "Brownian motion is not a good approximation even though p0 > 0");
    }
    throw ConfigError("kill limit requires gamma = p q0 + q p0 + p0 q0 > 0");
}

}  // namespace

std::string_view mode_name(Mode mode) {
    for (const auto& e : kModes) {
        if (e.mode == mode) return e.name;
    }
    return "unknown";
}

std::optional<Mode> mode_from_name(std::string_view name) {
    for (const auto& e : kModes) {
        if (e.name == name) return e.mode;
    }
    return std::nullopt;
}

std::optional<std::string> suggest_key(std::string_view unknown, const std::vector<std::string>& known) {
    std::optional<std::string> best;
    std::size_t best_d = 0;
    for (const auto& k : known) {
        const std::size_t d = edit_distance(unknown, k);
        if (!best || d < best_d) {
            best = k;
            best_d = d;
        }
    }
    // one edit per three characters, at least one
    if (best && best_d <= std::max<std::size_t>(1, unknown.size() / 3)) return best;
    return std::nullopt;
}

void validate(ExperimentConfig& c) {
    try {
        c.params = InterfaceParams::validate(c.raw.p, c.raw.p_prime, c.raw.q, c.raw.q_prime);
    } catch (const ValidationError& e) {
        throw ConfigError(std::string("params: ") + e.what());
    }
    const InterfaceParams& ip = c.params;

    const bool evolves = c.mode == Mode::NoKillLimit || c.mode == Mode::KillLimit || c.mode == Mode::Simulate;
    if (evolves) {
        if (c.epsilons.empty()) throw ConfigError("epsilons must list at least one value");
        for (std::size_t i = 0; i < c.epsilons.size(); ++i) {
            if (!(c.epsilons[i] > 0.0) || !std::isfinite(c.epsilons[i])) {
                throw ConfigError("epsilons must be positive, got " + fmt(c.epsilons[i]));
            }
            if (i > 0 && !(c.epsilons[i] < c.epsilons[i - 1])) {
                throw ConfigError("epsilons must be strictly decreasing (" + fmt(c.epsilons[i - 1]) + " then " +
                                  fmt(c.epsilons[i]) + ")");
            }
        }
        if (!(c.t_macro > 0.0) || !std::isfinite(c.t_macro)) throw ConfigError("t_macro must be positive");
        if (!(c.grid.half_width > 0.0)) throw ConfigError("grid.half_width must be positive");
        if (c.grid.n_cells < 2 || c.grid.n_cells % 2 != 0) {
            throw ConfigError("grid.n_cells must be even and at least 2 so that x = 0 is a cell edge");
        }
        if (c.initial.line != 1 && c.initial.line != -1) throw ConfigError("initial.line must be +1 or -1");
        if (c.initial.kind == InitialKind::Gaussian) {
            if (!(c.initial.std > 0.0)) throw ConfigError("initial.std must be positive");
            if (std::abs(c.initial.mean) >= c.grid.half_width) throw ConfigError("initial.mean lies outside the grid");
        } else {
            if (c.initial.x == 0.0) {
                throw ConfigError("initial.x = 0 sits on the interface and has no approach side; use a small nonzero value");
            }
            if (std::abs(c.initial.x) >= c.grid.half_width) throw ConfigError("initial.x lies outside the grid");
        }
        if (!(c.flip_intensity > 0.0)) throw ConfigError("flip_intensity must be positive");
        if (!(c.cfl > 0.0 && c.cfl <= 1.0)) throw ConfigError("cfl must lie in (0, 1]");
    }

    switch (c.mode) {
        case Mode::NoKillLimit:
            if (!ip.conserves_mass()) {
                throw ConfigError("no-kill limit requires p + p' = 1 and q + q' = 1 (got p0 = " + fmt(ip.p0) +
                                  ", q0 = " + fmt(ip.q0) + ")");
            }
            if (!(ip.p + ip.q > 0.0)) throw ConfigError("no-kill limit requires p + q > 0");
            break;
        case Mode::KillLimit:
            check_kill_hypothesis(ip);
            break;
        case Mode::KernelValidation:
        case Mode::KernelTable:
            if (!(ip.p + ip.q > 0.0)) throw ConfigError("skew kernels require p + q > 0");
            break;
        case Mode::Simulate:
            break;
    }

    if (c.mode == Mode::KernelTable) {
        if (c.kernel_table.times.empty() || c.kernel_table.x.empty()) {
            throw ConfigError("kernel_table.times and kernel_table.x must be non-empty");
        }
        for (double t : c.kernel_table.times) {
            if (!(t > 0.0)) throw ConfigError("kernel_table.times must be positive");
        }
        for (double x : c.kernel_table.x) {
            if (x == 0.0) throw ConfigError("kernel_table.x must not contain 0 (the kernel needs a side)");
        }
    }
}

ExperimentConfig parse_config_json(const json& doc, std::optional<Mode> mode) {
    reject_unknown(doc, kTopKeys, "config");
    ExperimentConfig c;

    std::optional<Mode> declared;
    if (doc.contains("mode")) {
        const auto name = get<std::string>(doc, "mode", "config");
        declared = mode_from_name(name);
        if (!declared) throw ConfigError("unknown mode '" + name + "'");
    }
    if (mode && declared && *mode != *declared) {
        throw ConfigError("config mode '" + std::string(mode_name(*declared)) + "' does not match the requested '" +
                          std::string(mode_name(*mode)) + "'");
    }
    if (!mode && !declared) throw ConfigError("config has no mode and none was implied");
    c.mode = mode ? *mode : *declared;

    if (!doc.contains("params")) throw ConfigError("config.params is required");
    const json& p = doc.at("params");
    reject_unknown(p, kParamKeys, "params");
    c.raw.p = get<double>(p, "p", "params");
    c.raw.p_prime = get<double>(p, "p_prime", "params");
    c.raw.q = get<double>(p, "q", "params");
    c.raw.q_prime = get<double>(p, "q_prime", "params");

    get_opt(doc, "epsilons", "config", c.epsilons);
    get_opt(doc, "t_macro", "config", c.t_macro);
    if (doc.contains("grid")) {
        const json& g = doc.at("grid");
        reject_unknown(g, kGridKeys, "grid");
        get_opt(g, "half_width", "grid", c.grid.half_width);
        get_opt(g, "n_cells", "grid", c.grid.n_cells);
    }
    if (doc.contains("initial")) {
        const json& i = doc.at("initial");
        reject_unknown(i, kInitialKeys, "initial");
        std::string kind = "gaussian";
        get_opt(i, "kind", "initial", kind);
        if (kind == "gaussian") {
            c.initial.kind = InitialKind::Gaussian;
        } else if (kind == "point") {
            c.initial.kind = InitialKind::Point;
        } else {
            throw ConfigError("initial.kind must be 'gaussian' or 'point', got '" + kind + "'");
        }
        get_opt(i, "mean", "initial", c.initial.mean);
        get_opt(i, "std", "initial", c.initial.std);
        get_opt(i, "x", "initial", c.initial.x);
        get_opt(i, "line", "initial", c.initial.line);
    }
    if (doc.contains("mc")) {
        const json& m = doc.at("mc");
        reject_unknown(m, kMcKeys, "mc");
        get_opt(m, "n_particles", "mc", c.mc.n_particles);
        get_opt(m, "seed", "mc", c.mc.seed);
    }
    get_opt(doc, "flip_intensity", "config", c.flip_intensity);
    get_opt(doc, "cfl", "config", c.cfl);
    get_opt(doc, "report_runtime", "config", c.report_runtime);
    if (doc.contains("kernel_table")) {
        const json& k = doc.at("kernel_table");
        reject_unknown(k, kTableKeys, "kernel_table");
        get_opt(k, "times", "kernel_table", c.kernel_table.times);
        get_opt(k, "x", "kernel_table", c.kernel_table.x);
        get_opt(k, "y", "kernel_table", c.kernel_table.y);
    }
    get_opt(doc, "output", "config", c.output);

    validate(c);
    return c;
}

ExperimentConfig parse_config_text(std::string_view text, std::optional<Mode> mode) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ConfigError(std::string("malformed JSON: ") + e.what());
    }
    return parse_config_json(doc, mode);
}

ExperimentConfig parse_config(const std::filesystem::path& file, std::optional<Mode> mode) {
    std::ifstream in(file);
    if (!in) throw ConfigError("cannot open config file " + file.string());
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_config_text(buf.str(), mode);
}

json to_json(const ExperimentConfig& c) {
    json doc;
    doc["mode"] = std::string(mode_name(c.mode));
    doc["params"] = {{"p", c.raw.p}, {"p_prime", c.raw.p_prime}, {"q", c.raw.q}, {"q_prime", c.raw.q_prime}};
    doc["epsilons"] = c.epsilons;
    doc["t_macro"] = c.t_macro;
    doc["grid"] = {{"half_width", c.grid.half_width}, {"n_cells", c.grid.n_cells}};
    doc["initial"] = {{"kind", c.initial.kind == InitialKind::Gaussian ? "gaussian" : "point"},
                      {"mean", c.initial.mean},
                      {"std", c.initial.std},
                      {"x", c.initial.x},
                      {"line", c.initial.line}};
    doc["mc"] = {{"n_particles", c.mc.n_particles}, {"seed", c.mc.seed}};
    doc["flip_intensity"] = c.flip_intensity;
    doc["cfl"] = c.cfl;
    doc["report_runtime"] = c.report_runtime;
    doc["kernel_table"] = {{"times", c.kernel_table.times}, {"x", c.kernel_table.x}, {"y", c.kernel_table.y}};
    doc["output"] = c.output;
    return doc;
}

}  // namespace telegraph::harness
