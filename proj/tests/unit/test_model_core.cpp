#include <cmath>
#include <random>

#include "doctest.h"
#include "telegraph/density.hpp"
#include "telegraph/errors.hpp"
#include "telegraph/params.hpp"

using namespace telegraph;

namespace {

TwoLineDensity random_density(const Grid& g, std::mt19937_64& gen) {
    std::uniform_real_distribution<double> u(0.0, 1.0);
    TwoLineDensity d(g);
    for (auto& v : d.plus) v = u(gen);
    for (auto& v : d.minus) v = u(gen);
    return d;
}

}  // namespace

TEST_CASE("validate: conservative interface has no killing") {
    const auto ip = InterfaceParams::validate(0.7, 0.3, 0.5, 0.5);
    CHECK(ip.p0 == 0.0);
    CHECK(ip.q0 == 0.0);
    CHECK(ip.gamma_kill == 0.0);
    CHECK(ip.conserves_mass());
}

TEST_CASE("validate: gamma_kill arithmetic") {
    const auto ip = InterfaceParams::validate(0.5, 0.3, 0.4, 0.4);
    CHECK(ip.p0 == doctest::Approx(0.2).epsilon(1e-14));
    CHECK(ip.q0 == doctest::Approx(0.2).epsilon(1e-14));
    // 0.5*0.2 + 0.4*0.2 + 0.2*0.2
    CHECK(ip.gamma_kill == doctest::Approx(0.22).epsilon(1e-14));
}

TEST_CASE("validate: violated constraints are named") {
    try {
        (void)InterfaceParams::validate(0.8, 0.4, 0.1, 0.1);
        FAIL("expected a validation error");
    } catch (const ValidationError& e) {
        CHECK(std::string(e.what()).find("p+p'>1") != std::string::npos);
    }
    CHECK_THROWS_AS((void)InterfaceParams::validate(0.1, 0.1, 0.6, 0.5), ValidationError);
    CHECK_THROWS_AS((void)InterfaceParams::validate(-0.1, 0.1, 0.5, 0.5), ValidationError);
    CHECK_THROWS_AS((void)InterfaceParams::validate(0.5, 0.5, 1.2, 0.0), ValidationError);
}

TEST_CASE("validate: decimal rounding is absorbed and clamped") {
    const auto ip = InterfaceParams::validate(0.1 + 0.2, 0.7, 0.6, 0.4);
    CHECK(ip.p0 == 0.0);
    CHECK(ip.q0 == 0.0);
    CHECK(ip.gamma_kill >= 0.0);
}

TEST_CASE("grid puts the interface on a cell edge") {
    const Grid g(8.0, 16);
    CHECK(g.dx() == doctest::Approx(1.0));
    CHECK(g.left_edge(g.origin_cell()) == 0.0);
    CHECK(g.center(7) == doctest::Approx(-0.5));
    CHECK(g.center(8) == doctest::Approx(0.5));
    CHECK(g.cell_of(0.0).value() == 8);
    CHECK(g.cell_of(-1e-12).value() == 7);
    CHECK_FALSE(g.cell_of(8.0).has_value());
    CHECK_THROWS_AS(Grid(1.0, 7), ValidationError);
}

TEST_CASE("project_P") {
    const Grid g(2.0, 40);
    std::mt19937_64 gen(3);
    SUBCASE("equal lines are fixed") {
        TwoLineDensity d = random_density(g, gen);
        d.minus = d.plus;
        const auto out = project_P(d);
        CHECK(l1_distance(out, d) == 0.0);
    }
    SUBCASE("one-sided input splits in half") {
        TwoLineDensity d = random_density(g, gen);
        d.minus.assign(g.n_cells(), 0.0);
        const auto out = project_P(d);
        for (std::size_t i = 0; i < g.n_cells(); ++i) {
            CHECK(out.plus[i] == doctest::Approx(d.plus[i] / 2));
            CHECK(out.minus[i] == doctest::Approx(d.plus[i] / 2));
        }
    }
    SUBCASE("idempotent and mass preserving") {
        const TwoLineDensity d = random_density(g, gen);
        const auto once = project_P(d);
        CHECK(l1_distance(project_P(once), once) < 1e-15);
        CHECK(total_mass(once) == doctest::Approx(total_mass(d)).epsilon(1e-14));
    }
}

TEST_CASE("flip_exact") {
    const Grid g(1.0, 2);
    SUBCASE("zero span is the identity") {
        TwoLineDensity d(g);
        d.plus = {0.3, 0.9};
        d.minus = {0.1, 0.0};
        CHECK(l1_distance(flip_exact(d, 0.0), d) == 0.0);
    }
    SUBCASE("unit mass on one line") {
        TwoLineDensity d(g);
        d.plus = {1.0, 1.0};
        const auto out = flip_exact(d, 0.7);
        const double u = std::exp(-0.7) * std::cosh(0.7);
        const double v = std::exp(-0.7) * std::sinh(0.7);
        CHECK(out.plus[0] == doctest::Approx(u).epsilon(1e-15));
        CHECK(out.minus[0] == doctest::Approx(v).epsilon(1e-15));
        CHECK(out.plus[0] + out.minus[0] == doctest::Approx(1.0).epsilon(1e-15));
    }
    SUBCASE("long span reaches the projection") {
        std::mt19937_64 gen(5);
        const Grid big(3.0, 30);
        const TwoLineDensity d = random_density(big, gen);
        const auto far = flip_exact(d, 50.0);
        const auto p = project_P(d);
        for (std::size_t i = 0; i < big.n_cells(); ++i) {
            CHECK(std::abs(far.plus[i] - p.plus[i]) <= 1e-15 * std::abs(p.plus[i]) + 1e-300);
            CHECK(std::abs(far.minus[i] - p.minus[i]) <= 1e-15 * std::abs(p.minus[i]) + 1e-300);
        }
    }
    SUBCASE("semigroup property and positivity") {
        std::mt19937_64 gen(9);
        const Grid big(3.0, 30);
        const TwoLineDensity d = random_density(big, gen);
        const auto two = flip_exact(flip_exact(d, 0.3), 1.1);
        const auto one = flip_exact(d, 1.4);
        CHECK(l1_distance(two, one) <= 1e-12 * total_mass(d));
        CHECK(total_mass(one) == doctest::Approx(total_mass(d)).epsilon(1e-14));
        for (double v : one.plus) CHECK(v >= 0.0);
    }
    SUBCASE("negative span is rejected") {
        TwoLineDensity d(g);
        CHECK_THROWS_AS((void)flip_exact(d, -1e-3), ValidationError);
    }
}

TEST_CASE("mass and L1 metric") {
    const Grid g(3.0, 60);
    TwoLineDensity ones(g);
    ones.plus.assign(g.n_cells(), 1.0);
    ones.minus.assign(g.n_cells(), 1.0);
    CHECK(total_mass(ones) == doctest::Approx(4.0 * 3.0));
    CHECK(l1_distance(ones, ones) == 0.0);

    std::mt19937_64 gen(11);
    for (int k = 0; k < 50; ++k) {
        const auto a = random_density(g, gen);
        const auto b = random_density(g, gen);
        const auto c = random_density(g, gen);
        CHECK(l1_distance(a, c) <= l1_distance(a, b) + l1_distance(b, c) + 1e-14);
    }
    const TwoLineDensity other(Grid(3.0, 62));
    CHECK_THROWS_AS((void)l1_distance(ones, other), GridMismatchError);
}

TEST_CASE("collapse and spread") {
    const Grid g(2.0, 8);
    TwoLineDensity d(g);
    d.plus = {1, 2, 3, 4, 5, 6, 7, 8};
    d.minus = {8, 7, 6, 5, 4, 3, 2, 1};
    const LineDensity line = collapse_lines(d);
    for (double v : line.values) CHECK(v == 9.0);
    const TwoLineDensity back = spread_lines(line);
    CHECK(l1_distance(back, project_P(d)) < 1e-15);
}

TEST_CASE("gaussian cells carry the requested mass") {
    const Grid g(8.0, 1024);
    CHECK(total_mass(gaussian_cells(g, -1.0, 0.5)) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(total_mass(gaussian_cells(g, 0.3, 0.2, 2.5)) == doctest::Approx(2.5).epsilon(1e-12));
}

TEST_CASE("scaled model checks its fields") {
    CHECK_NOTHROW(ScaledModel{0.1, 1.0}.check());
    CHECK_THROWS_AS((ScaledModel{0.0, 1.0}.check()), ValidationError);
    CHECK_THROWS_AS((ScaledModel{0.1, -1.0}.check()), ValidationError);
}
