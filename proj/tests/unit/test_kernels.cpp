#include <cmath>
#include <numbers>
#include <random>

#include "doctest.h"
#include "telegraph/errors.hpp"
#include "telegraph/quadrature.hpp"
#include "telegraph/skew_kernels.hpp"

using namespace telegraph;

namespace {

double heat(double t, double z) { return std::exp(-z * z / (2 * t)) / std::sqrt(2 * std::numbers::pi * t); }

double Phi(double z) { return 0.5 * std::erfc(-z / std::numbers::sqrt2); }

template <class F>
double integrate_line(F&& f, double reach = 30.0) {
    return quad::adaptive(f, -reach, 0.0) + quad::adaptive(f, 0.0, reach);
}

}  // namespace

TEST_CASE("equal weights give the heat kernel") {
    const auto sp = SkewParams::make(0.3, 0.3);
    CHECK(sp.theta() == 0.0);
    for (double x : {-1.5, -0.2, 0.4, 2.0}) {
        for (double y : {-3.0, -0.5, 0.0, 0.1, 1.7}) {
            CHECK(gamma_kernel(0.7, x, y, sp) == doctest::Approx(heat(0.7, y - x)).epsilon(1e-14));
        }
    }
}

TEST_CASE("one-sided weights give reflection") {
    const auto sp = SkewParams::make(1.0, 0.0);  // theta = 1
    for (double y : {-2.0, -0.3}) CHECK(gamma_plus(1.0, 0.5, y, sp) == 0.0);
    for (double y : {0.0, 0.4, 2.5}) {
        CHECK(gamma_plus(1.0, 0.5, y, sp) == doctest::Approx(heat(1, y - 0.5) + heat(1, y + 0.5)).epsilon(1e-14));
    }
    // started on the left, everything crossing is pushed through
    CHECK(gamma_minus(1.0, -0.5, 0.3, sp) == doctest::Approx(2 * heat(1, 0.8)).epsilon(1e-14));
}

TEST_CASE("kernel is a probability density") {
    for (auto [p, q] : {std::pair{0.7, 0.3}, std::pair{0.1, 0.9}, std::pair{0.0, 1.0}}) {
        const auto sp = SkewParams::make(p, q);
        for (double x : {-0.5, 0.5}) {
            const double mass = integrate_line([&](double y) { return gamma_kernel(1.0, x, y, sp); });
            CHECK(std::abs(mass - 1.0) < 1e-10);
        }
    }
}

TEST_CASE("right half-line mass") {
    // P_x(X_t > 0) = Phi(x/sqrt t) + theta (1 - Phi(x/sqrt t)) for x > 0
    const auto sp = SkewParams::make(0.7, 0.3);
    for (double t : {0.1, 1.0, 5.0}) {
        const double x = 0.4;
        const double mass = quad::adaptive([&](double y) { return gamma_plus(t, x, y, sp); }, 0.0, 60.0);
        const double z = x / std::sqrt(t);
        CHECK(mass == doctest::Approx(Phi(z) + sp.theta() * (1 - Phi(z))).epsilon(1e-10));
    }
    // long-time limit p/(p+q)
    const double far = quad::adaptive([&](double y) { return gamma_minus(1e4, -0.1, y, sp); }, 0.0, 2000.0);
    CHECK(far == doctest::Approx(0.7).epsilon(1e-3));
}

TEST_CASE("right mass grows with p") {
    double last = -1.0;
    for (double p : {0.0, 0.2, 0.4, 0.6, 0.8, 1.0}) {
        const auto sp = SkewParams::make(p, 0.5);
        const double mass = quad::adaptive([&](double y) { return gamma_minus(1.0, -0.3, y, sp); }, 0.0, 30.0);
        CHECK(mass > last);
        last = mass;
    }
}

TEST_CASE("Chapman-Kolmogorov") {
    const auto sp = SkewParams::make(0.8, 0.2);
    std::mt19937_64 gen(5);
    std::uniform_real_distribution<double> ux(-2.0, 2.0), ut(0.2, 1.5);
    for (int k = 0; k < 10; ++k) {
        double x = ux(gen);
        if (x == 0.0) x = 0.1;
        const double y = ux(gen), s = ut(gen), t = ut(gen);
        const double composed =
            integrate_line([&](double z) { return gamma_kernel(s, x, z, sp) * gamma_kernel(t, z, y, sp); }, 25.0);
        CHECK(composed == doctest::Approx(gamma_kernel(s + t, x, y, sp)).epsilon(1e-8));
    }
}

TEST_CASE("transmission condition p rho(0-) = q rho(0+)") {
    const auto sp = SkewParams::make(0.65, 0.35);
    for (double x : {-1.0, 0.7}) {
        const double left = gamma_kernel(0.5, x, -1e-300, sp);
        const double right = gamma_kernel(0.5, x, 1e-300, sp);
        CHECK(std::abs(sp.p * left - sp.q * right) < 1e-15);
    }
    // the grid evolution obeys it up to O(dx)
    std::vector<double> defect;
    for (std::size_t n : {200u, 400u, 800u}) {
        const Grid g(5.0, n);
        const LineDensity rho = skew_density_evolve(gaussian_cells(g, -0.8, 0.4), 0.5, sp);
        const std::size_t h = g.origin_cell();
        defect.push_back(std::abs(sp.p * rho.values[h - 1] - sp.q * rho.values[h]));
    }
    CHECK(defect[1] < 0.6 * defect[0]);
    CHECK(defect[2] < 0.6 * defect[1]);
}

TEST_CASE("skew evolution") {
    const Grid g(6.0, 600);
    const auto sp = SkewParams::make(0.7, 0.3);
    const LineDensity psi = gaussian_cells(g, -1.0, 0.5);
    SUBCASE("t = 0 is the identity") { CHECK(l1_distance(skew_density_evolve(psi, 0.0, sp), psi) == 0.0); }
    SUBCASE("short time is close to the identity") {
        CHECK(l1_distance(skew_density_evolve(psi, 1e-6, sp), psi) < 1e-3);
    }
    SUBCASE("mass and positivity") {
        const LineDensity out = skew_density_evolve(psi, 1.0, sp);
        // tails past +-L are cut
        CHECK(std::abs(total_mass(out) - total_mass(psi)) < 1e-5);
        for (double v : out.values) CHECK(v >= 0.0);
    }
    SUBCASE("matches the pointwise kernel") {
        for (double t : {0.3, 1.0, 2.5}) {
            const LineDensity out = skew_density_evolve(psi, t, sp);
            for (std::size_t j : {150u, 290u, 310u, 420u}) {
                const double y = g.center(j);
                auto integrand = [&](double x) {
                    return gamma_kernel(t, x, y, sp) * std::exp(-2 * (x + 1) * (x + 1)) / std::sqrt(0.5 * std::numbers::pi);
                };
                const double ref = quad::adaptive(integrand, -6.0, 0.0) + quad::adaptive(integrand, 0.0, 6.0);
                CHECK(std::abs(out.values[j] - ref) < 2e-4);
            }
        }
    }
}

TEST_CASE("minimal Brownian motion") {
    CHECK(minimal_bm_kernel(1.0, 0.5, 0.0) == 0.0);
    CHECK(minimal_bm_kernel(0.8, 0.3, 1.1) == doctest::Approx(minimal_bm_kernel(0.8, 1.1, 0.3)).epsilon(1e-15));
    CHECK(minimal_bm_kernel(1.0, 0.5, 0.2) == doctest::Approx(heat(1, 0.3) - heat(1, 0.7)).epsilon(1e-14));
    const double survive = quad::adaptive([](double y) { return minimal_bm_kernel(1.0, 0.5, y); }, 0.0, 30.0);
    CHECK(survive == doctest::Approx(std::erf(0.5 / std::numbers::sqrt2)).epsilon(1e-10));
    CHECK(survive == doctest::Approx(0.3829249).epsilon(1e-6));
    CHECK_THROWS_AS((void)minimal_bm_kernel(1.0, -0.5, 0.2), ValidationError);
}

TEST_CASE("minimal evolution and survival") {
    const Grid g(10.0, 1000);
    SUBCASE("surviving mass of a narrow cell") {
        LineDensity psi(g);
        const std::size_t i = *g.cell_of(0.5);
        psi.values[i] = 1.0 / g.dx();
        const double x = g.center(i);
        CHECK(surviving_mass(psi, 1.0) == doctest::Approx(std::erf(x / std::numbers::sqrt2)).epsilon(1e-4));
        CHECK(surviving_mass(psi, 0.0) == doctest::Approx(1.0).epsilon(1e-15));
    }
    SUBCASE("grid evolution matches closed-form survival") {
        const LineDensity psi = gaussian_cells(g, -1.0, 0.5);
        const LineDensity out = minimal_density_evolve(psi, 1.0);
        CHECK(std::abs(total_mass(out) - surviving_mass(psi, 1.0)) < 1e-9);
        // no mass crosses 0: a left-only start stays left
        LineDensity left = psi;
        for (std::size_t j = g.origin_cell(); j < g.n_cells(); ++j) left.values[j] = 0.0;
        const LineDensity left_out = minimal_density_evolve(left, 1.0);
        for (std::size_t j = g.origin_cell(); j < g.n_cells(); ++j) CHECK(left_out.values[j] == 0.0);
    }
    SUBCASE("far from the origin nothing is lost") {
        const LineDensity psi = gaussian_cells(g, 5.0, 0.2);
        CHECK(std::abs(total_mass(minimal_density_evolve(psi, 0.1)) - total_mass(psi)) < 1e-8);
        CHECK(std::abs(surviving_mass(psi, 0.1) - total_mass(psi)) < 1e-8);
    }
    SUBCASE("t = 0") {
        const LineDensity psi = gaussian_cells(g, 1.0, 0.5);
        CHECK(l1_distance(minimal_density_evolve(psi, 0.0), psi) == 0.0);
    }
}

TEST_CASE("killed resolvent") {
    auto one = [](double) { return 1.0; };
    CHECK(killed_resolvent_apply(one, 0.5, 1.0) == doctest::Approx(2 * (1 - std::exp(-1.0))).epsilon(1e-10));
    CHECK(killed_resolvent_apply(one, 0.5, 0.0) == 0.0);

    // lambda u - u''/2 = f at x = 1
    auto f = [](double y) { return std::exp(-y) * (1 + y * y); };
    const double lambda = 0.5, x = 1.0, h = 2e-3;
    auto u = [&](double z) { return killed_resolvent_apply(f, lambda, z); };
    const double upp = (u(x + h) - 2 * u(x) + u(x - h)) / (h * h);
    CHECK(std::abs(lambda * u(x) - 0.5 * upp - f(x)) < 1e-6);
    CHECK_THROWS_AS((void)killed_resolvent_apply(one, 0.5, -1.0), ValidationError);
}
