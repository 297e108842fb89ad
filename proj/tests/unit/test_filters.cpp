#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "heraldsim/errors.hpp"
#include "heraldsim/filters.hpp"

#include <cmath>
#include <random>
#include <sstream>

using namespace heraldsim;

namespace {

double rel_l2_error(const ComplexEnvelope& got, const ComplexEnvelope& want) {
    double num = 0.0;
    double den = 0.0;
    for (std::size_t i = 0; i < got.samples.size(); ++i) {
        num += std::norm(got.samples[i] - want.samples[i]);
        den += std::norm(want.samples[i]);
    }
    return std::sqrt(num / den);
}

ComplexSpectrum lorentzian_table(double t_m, std::size_t count, double half_band) {
    const auto g = make_frequency_grid(2.0 * half_band / static_cast<double>(count), count);
    return sample(g, [&](double w) { return 1.0 / Complex(1.0, -2.0 * w * t_m); });
}

}  // namespace

TEST_CASE("Lorentzian transmission") {
    const double t_m = 10.0;
    const double drift = 0.03;
    const auto f = SpectralFilter::lorentzian(t_m, drift);
    CHECK(f.transmission(drift) == Complex(1.0, 0.0));
    CHECK(std::norm(f.transmission(drift + 1.0 / (2.0 * t_m))) == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(f.passband() == doctest::Approx(0.1));
    CHECK_THROWS_AS(SpectralFilter::lorentzian(0.0), std::invalid_argument);
    CHECK_THROWS_AS(SpectralFilter::lorentzian(-1.0), std::invalid_argument);

    // passivity is drift-invariant
    double peak0 = 0.0;
    double peak1 = 0.0;
    const auto g = SpectralFilter::lorentzian(t_m);
    for (double w = -2.0; w <= 2.0; w += 1e-3) {
        peak0 = std::max(peak0, std::abs(g.transmission(w)));
        peak1 = std::max(peak1, std::abs(f.transmission(w)));
    }
    CHECK(peak0 <= 1.0 + 1e-12);
    CHECK(peak1 <= 1.0 + 1e-12);
    CHECK(std::abs(peak0 - peak1) < 1e-6);
}

TEST_CASE("Lorentzian impulse response") {
    const double t_m = 10.0;
    const auto grid = make_grid_with_step(-20.0, 400.0, t_m / 32.0);
    const auto r = impulse_response(SpectralFilter::lorentzian(t_m), grid);
    const std::size_t i = grid.nearest_index(2.0 * t_m);
    CHECK(r.samples[i].real() == doctest::Approx(std::exp(-1.0) / (2.0 * t_m)));

    std::vector<double> re(grid.count);
    for (std::size_t k = 0; k < grid.count; ++k) re[k] = r.samples[k].real();
    CHECK(trapezoid(re, grid.step) == doctest::Approx(1.0).epsilon(1e-3));

    SUBCASE("drift adds a phase ramp only") {
        const double wd = 0.05;
        const auto d = impulse_response(SpectralFilter::lorentzian(t_m, wd), grid);
        for (std::size_t k = 0; k < grid.count; k += 37) {
            CHECK(std::abs(d.samples[k]) == doctest::Approx(std::abs(r.samples[k])));
            if (grid.at(k) > 0.0) {
                const Complex ratio = d.samples[k] / r.samples[k];
                CHECK(std::abs(ratio - std::polar(1.0, -wd * grid.at(k))) < 1e-12);
            }
        }
    }

    SUBCASE("resolution checks") {
        CHECK_THROWS_AS(impulse_response(SpectralFilter::lorentzian(t_m), make_grid_with_step(0.0, 400.0, 1.0)),
                        ResolutionError);
        CHECK_THROWS_AS(impulse_response(SpectralFilter::lorentzian(t_m), make_grid_with_step(0.0, 100.0, 0.5)),
                        ResolutionError);
    }
}

TEST_CASE("tabulated Lorentzian reproduces the analytic impulse response") {
    const double t_m = 10.0;
    const auto table = lorentzian_table(t_m, 1 << 17, 2000.0 / t_m);
    const auto tab = SpectralFilter::tabulated(table);
    CHECK(tab.kind() == SpectralFilter::Kind::Tabulated);
    CHECK(tab.response_time() == doctest::Approx(t_m).epsilon(1e-3));

    const auto grid = make_grid_with_step(-20.0, 200.0, t_m / 32.0);
    const auto analytic = impulse_response(SpectralFilter::lorentzian(t_m), grid);
    const auto numeric = impulse_response(tab, grid);
    CHECK(rel_l2_error(numeric, analytic) < 2e-3);
}

TEST_CASE("tabulated filters are checked for passivity") {
    auto table = lorentzian_table(5.0, 256, 2.0);
    table.samples[128] *= 1.01;  // ω = 0, where |F| = 1
    CHECK_THROWS_AS(SpectralFilter::tabulated(table), std::invalid_argument);
}

TEST_CASE("causality check") {
    const auto rep = check_causality(SpectralFilter::lorentzian(10.0), 1e-6);
    CHECK(rep.causal);
    CHECK(rep.pre_herald_mass < 1e-6);

    // zero-phase Gaussian: even impulse response
    const auto g = make_frequency_grid(0.01, 4096);
    const auto gauss = SpectralFilter::tabulated(sample(g, [](double w) { return Complex(std::exp(-w * w / 0.02)); }));
    const auto bad = check_causality(gauss, 1e-6);
    CHECK_FALSE(bad.causal);
    CHECK(bad.pre_herald_mass == doctest::Approx(0.5).epsilon(0.05));
    CHECK(check_causality(gauss, 1.0).causal);
}

TEST_CASE("discrete filter: frequency and time paths agree") {
    const double t_m = 4.0;
    const double h = 0.25;
    const std::size_t n = 300;
    std::mt19937_64 rng(3);
    std::normal_distribution<double> nd(0.0, 1.0);
    std::vector<Complex> x(n);
    for (auto& z : x) z = Complex(nd(rng), nd(rng));

    for (double drift : {0.0, 0.07}) {
        DiscreteFilter op(SpectralFilter::lorentzian(t_m, drift), h, n);
        std::vector<Complex> a(op.output_count());
        std::vector<Complex> b(op.output_count());
        op.apply(x, a);
        op.apply_direct(x, b, op.kernel());
        double num = 0.0;
        double den = 0.0;
        for (std::size_t i = 0; i < a.size(); ++i) {
            num += std::norm(a[i] - b[i]);
            den += std::norm(a[i]);
        }
        CHECK(std::sqrt(num / den) < 1e-10);
    }
}

TEST_CASE("discrete kernel approximates step times the impulse response") {
    const double t_m = 10.0;
    const double h = 0.125;
    const DiscreteFilter op(SpectralFilter::lorentzian(t_m), h, 1000);
    const auto k = op.kernel();
    for (double tau : {1.0, 5.0, 20.0, 60.0}) {
        const auto j = static_cast<std::size_t>(std::lround(tau / h));
        const double want = h * std::exp(-tau / (2.0 * t_m)) / (2.0 * t_m);
        CHECK(std::abs(k[j] - want) < 2e-2 * want);
    }
}

TEST_CASE("filtered energy never exceeds input energy") {
    std::mt19937_64 rng(11);
    std::normal_distribution<double> nd(0.0, 1.0);
    std::uniform_real_distribution<double> tm(0.5, 30.0);
    for (int trial = 0; trial < 50; ++trial) {
        const auto filter = SpectralFilter::lorentzian(tm(rng), 0.1 * nd(rng));
        const auto g = make_grid_with_step(0.0, 50.0, 0.1);
        ComplexEnvelope in{g, std::vector<Complex>(g.count)};
        for (auto& z : in.samples) z = Complex(nd(rng), nd(rng));
        const auto out = filter_envelope(filter, in);
        CHECK(l2_norm(out) <= l2_norm(in) * (1.0 + 1e-12));
    }
}

TEST_CASE("all-pass table leaves input unchanged") {
    const auto g = make_frequency_grid(0.01, 8192);
    const auto allpass = SpectralFilter::tabulated(sample(g, [](double) { return Complex(1.0); }));
    const auto grid = make_grid_with_step(0.0, 20.0, 0.2);
    const auto in = sample(grid, [](double t) { return std::exp(-(t - 10.0) * (t - 10.0)) * Complex(1.0, t); });
    const auto out = filter_envelope(allpass, in);
    for (std::size_t i = 0; i < in.samples.size(); ++i) CHECK(std::abs(out.samples[i] - in.samples[i]) < 1e-12);
}

TEST_CASE("filter table text round trip") {
    const auto table = lorentzian_table(3.0, 64, 5.0);
    std::stringstream ss;
    write_filter_table(ss, table);
    const auto back = read_filter_table(ss);
    CHECK(back.grid.same_axis(table.grid));
    for (std::size_t i = 0; i < table.samples.size(); ++i) CHECK(back.samples[i] == table.samples[i]);

    std::istringstream no_header("0 1 0\n1 1 0\n2 1 0\n3 1 0\n");
    CHECK_THROWS_AS(read_filter_table(no_header), std::invalid_argument);
    std::istringstream decreasing("# w re im\n0 1 0\n1 1 0\n0.5 1 0\n3 1 0\n");
    CHECK_THROWS_AS(read_filter_table(decreasing), std::invalid_argument);
    std::istringstream uneven("# w re im\n0 1 0\n1 1 0\n2.5 1 0\n3 1 0\n");
    CHECK_THROWS_AS(read_filter_table(uneven), std::invalid_argument);
    std::istringstream commas("# w, re, im\n0,1,0\n1,1,0\n2,1,0\n3,1,0\n");
    CHECK(read_filter_table(commas).grid.count == 4);
}
