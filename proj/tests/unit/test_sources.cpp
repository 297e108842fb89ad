#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "heraldsim/errors.hpp"
#include "heraldsim/sources.hpp"

#include <cmath>
#include <random>

using namespace heraldsim;

TEST_CASE("model constructors validate") {
    CHECK_NOTHROW(make_finite_window(1.0, 150.0));
    CHECK_THROWS_AS(make_finite_window(0.0, 150.0), std::invalid_argument);
    CHECK_THROWS_AS(make_finite_window(2.0, 1.0), std::invalid_argument);
    CHECK_NOTHROW(make_stationary_cw(0.01, 1.0));
    CHECK_THROWS_AS(make_stationary_cw(1.5, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(make_stationary_cw(-0.1, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(make_stationary_cw(0.1, 0.0), std::invalid_argument);
}

TEST_CASE("windowed joint amplitude") {
    const FiniteWindowExponential model{1.0, 150.0};
    const auto g = make_grid_with_step(-2.0, 152.0, 0.125);
    const auto psi = joint_amplitude(model, g);

    SUBCASE("unit norm") { CHECK(std::abs(psi.norm_squared() - 1.0) < 1e-10); }

    SUBCASE("constant diagonal and e^-1 at two correlation times") {
        const std::size_t a = g.nearest_index(40.0);
        const std::size_t b = g.nearest_index(90.0);
        CHECK(std::abs(psi.at(a, a) - psi.at(b, b)) < 1e-15);
        const std::size_t a2 = g.nearest_index(42.0);
        CHECK(std::abs(psi.at(a, a2) / psi.at(a, a) - std::exp(-1.0)) < 1e-12);
    }

    SUBCASE("zero outside the window") {
        const std::size_t out = g.nearest_index(-1.0);
        const std::size_t in = g.nearest_index(10.0);
        CHECK(psi.at(out, in) == Complex{});
        CHECK(psi.at(in, g.nearest_index(151.0)) == Complex{});
    }

    SUBCASE("idler marginal flat over the interior") {
        double lo = 1e300;
        double hi = 0.0;
        for (std::size_t b = 0; b < g.count; ++b) {
            const double t = g.at(b);
            if (t < 10.0 || t > 140.0) continue;
            double m = 0.0;
            for (std::size_t a = 0; a < g.count; ++a) m += std::norm(psi.at(a, b)) * g.step;
            lo = std::min(lo, m);
            hi = std::max(hi, m);
        }
        CHECK((hi - lo) / hi < 2.0 / 150.0);
    }

    SUBCASE("anti-diagonal e^-1 half-width is 2 t_c") {
        const std::size_t c = g.nearest_index(75.0);
        const double peak = std::abs(psi.at(c, c));
        std::size_t k = 0;
        while (std::abs(psi.at(c, c + k)) > peak * std::exp(-1.0)) ++k;
        CHECK(std::abs(static_cast<double>(k) * g.step - 2.0) <= g.step);
    }

    SUBCASE("under-resolved grid") {
        CHECK_THROWS_AS(joint_amplitude(model, make_grid_with_step(0.0, 150.0, 0.3)), ResolutionError);
    }
}

TEST_CASE("unconditional spectral width of the windowed model") {
    // |Φ(ω, ω')|² integrated over the sum frequency gives the e^{-|τ|/t_c}
    // autocorrelation's transform, (1 + 4ω²t_c²)^{-2} in the difference
    // frequency; its e^{-1} half-width is sqrt(sqrt(e) - 1)/(2 t_c).
    const double t_c = 1.0;
    const auto g = make_grid_with_step(-200.0, 200.0, 0.05);
    const auto lag = sample(g, [&](double t) { return std::exp(-std::abs(t) / (2.0 * t_c)); });
    const auto spec = to_frequency_domain(lag);
    double peak = 0.0;
    for (const auto& z : spec.samples) peak = std::max(peak, std::norm(z));
    const std::size_t zero = spec.grid.origin < 0 ? static_cast<std::size_t>(-spec.grid.origin / spec.grid.step) : 0;
    std::size_t k = zero;
    while (std::norm(spec.samples[k]) > peak * std::exp(-1.0)) ++k;
    const double width = spec.grid.at(k);
    const double expected = std::sqrt(std::sqrt(std::exp(1.0)) - 1.0) / (2.0 * t_c);
    CHECK(std::abs(width - expected) <= spec.grid.step);
    const auto w = spectral_widths(FiniteWindowExponential{t_c, 150.0});
    CHECK(w.omega_u * t_c == 1.0);
    CHECK(w.omega_c * 150.0 == 1.0);
}

TEST_CASE("ideal joint amplitude") {
    const auto g = make_grid_with_step(0.0, 10.0, 0.1);
    const auto psi = ideal_joint_amplitude(g);
    CHECK(std::abs(psi.norm_squared() - 1.0) < 1e-12);
    double off = 0.0;
    for (std::size_t a = 0; a < g.count; ++a)
        for (std::size_t b = 0; b < g.count; ++b)
            if (a != b) off += std::abs(psi.at(a, b));
    CHECK(off == 0.0);
    for (std::size_t a = 1; a < g.count; ++a) CHECK(psi.at(a, a) == psi.at(0, 0));
}

TEST_CASE("first-order correlators") {
    const StationaryCW cw{0.02, 1.5};
    CHECK(g1_auto(cw, 0.0) == doctest::Approx(0.02));
    CHECK(g1_auto(cw, 3.0) == doctest::Approx(2.0 * 0.02 / std::exp(1.0)));
    CHECK(g1_cross(cw, 0.0) == doctest::Approx(std::sqrt(0.02 / 3.0)));
    CHECK(g1_cross(cw, 3.0) == doctest::Approx(std::sqrt(0.02 / 3.0) / std::exp(1.0)));

    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> u(-40.0, 40.0);
    for (int i = 0; i < 200; ++i) {
        const double dt = u(rng);
        CHECK(g1_auto(cw, dt) == g1_auto(cw, -dt));
        CHECK(g1_cross(cw, dt) == g1_cross(cw, -dt));
        CHECK(g1_auto(cw, dt) <= g1_auto(cw, 0.0));
        CHECK(g1_cross(cw, dt) <= g1_cross(cw, 0.0));
    }

    // ∫ g1_cross² = n̄
    const auto g = make_grid_with_step(-60.0, 60.0, 0.001);
    std::vector<double> v(g.count);
    for (std::size_t i = 0; i < g.count; ++i) v[i] = std::pow(g1_cross(cw, g.at(i)), 2);
    CHECK(trapezoid(v, g.step) == doctest::Approx(0.02).epsilon(1e-6));
}
