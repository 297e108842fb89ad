#include "heraldsim/numerics.hpp"

#include "heraldsim/fft.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <stdexcept>

namespace heraldsim {
namespace {

bool close(double a, double b) {
    return std::abs(a - b) <= 1e-9 * std::max({1.0, std::abs(a), std::abs(b)});
}

// e^{sign·2πi·ratio·k/n} for k = 0..n-1. When ratio is an integer the phase
// index is reduced modulo n in integer arithmetic, which keeps the twiddles
// exact for the zero-centred grids used by default.
std::vector<Complex> phase_ramp(double ratio, std::size_t n, int sign) {
    std::vector<Complex> out(n);
    const double rounded = std::round(ratio);
    const double two_pi_over_n = 2.0 * kPi / static_cast<double>(n);
    if (std::abs(ratio - rounded) < 1e-9 && std::abs(rounded) < 1e15) {
        const auto nn = static_cast<std::int64_t>(n);
        std::int64_t r = static_cast<std::int64_t>(rounded) % nn;
        if (r < 0) r += nn;
        for (std::size_t k = 0; k < n; ++k) {
            const std::int64_t idx = (r * static_cast<std::int64_t>(k)) % nn;
            out[k] = std::polar(1.0, sign * two_pi_over_n * static_cast<double>(idx));
        }
    } else {
        for (std::size_t k = 0; k < n; ++k) {
            const double turns = std::remainder(ratio * static_cast<double>(k), static_cast<double>(n));
            out[k] = std::polar(1.0, sign * two_pi_over_n * turns);
        }
    }
    return out;
}

Complex constant_phase(double a, double b, std::size_t n, int sign) {
    // e^{sign·2πi·a·b/n}
    const double turns = std::remainder(a * b, static_cast<double>(n));
    return std::polar(1.0, sign * 2.0 * kPi * turns / static_cast<double>(n));
}

}  // namespace

bool Grid::contains(double t) const {
    const double tol = 1e-9 * step;
    return t >= origin - tol && t <= back() + tol;
}

std::size_t Grid::nearest_index(double t) const {
    const double x = std::round((t - origin) / step);
    if (x <= 0.0) return 0;
    if (x >= static_cast<double>(count - 1)) return count - 1;
    return static_cast<std::size_t>(x);
}

bool Grid::same_axis(const Grid& other) const {
    return count == other.count && close(step, other.step) &&
           std::abs(origin - other.origin) <= 1e-9 * std::max(step, std::abs(origin));
}

bool FrequencyGrid::same_axis(const FrequencyGrid& other) const {
    return count == other.count && close(step, other.step) &&
           std::abs(origin - other.origin) <= 1e-9 * std::max(step, std::abs(origin));
}

Grid make_grid(double t_min, double t_max, std::size_t count) {
    if (!std::isfinite(t_min) || !std::isfinite(t_max) || !(t_max > t_min))
        throw std::invalid_argument("make_grid: need t_max > t_min");
    if (count < 2) throw std::invalid_argument("make_grid: need at least 2 samples");
    return Grid{t_min, (t_max - t_min) / static_cast<double>(count - 1), count, {}};
}

Grid make_grid_with_step(double t_min, double t_max, double step) {
    if (!(step > 0.0) || !std::isfinite(step)) throw std::invalid_argument("make_grid_with_step: step must be > 0");
    if (!(t_max > t_min)) throw std::invalid_argument("make_grid_with_step: need t_max > t_min");
    const auto intervals = static_cast<std::size_t>(std::ceil((t_max - t_min) / step - 1e-9));
    return Grid{t_min, step, std::max<std::size_t>(intervals, 1) + 1, {}};
}

FrequencyGrid make_frequency_grid(double step, std::size_t count) {
    if (!(step > 0.0)) throw std::invalid_argument("make_frequency_grid: step must be > 0");
    if (count < 2) throw std::invalid_argument("make_frequency_grid: need at least 2 samples");
    const double half = static_cast<double>(count / 2);
    const double time_step = 2.0 * kPi / (step * static_cast<double>(count));
    return FrequencyGrid{-half * step, step, count, -half * time_step};
}

FrequencyGrid dual_of(const Grid& grid) {
    auto f = make_frequency_grid(2.0 * kPi / (grid.step * static_cast<double>(grid.count)), grid.count);
    f.dual_origin = grid.origin;
    return f;
}

Grid dual_of(const FrequencyGrid& grid) {
    return Grid{grid.dual_origin, 2.0 * kPi / (grid.step * static_cast<double>(grid.count)), grid.count, {}};
}

double l2_norm(std::span<const Complex> samples, double step) {
    double acc = 0.0;
    for (const auto& z : samples) acc += std::norm(z);
    return std::sqrt(acc * step);
}

double l2_norm(const ComplexEnvelope& a) { return l2_norm(a.samples, a.grid.step); }
double l2_norm(const ComplexSpectrum& a) { return l2_norm(a.samples, a.grid.step / (2.0 * kPi)); }

ComplexEnvelope normalize(ComplexEnvelope a) {
    const double n = l2_norm(a);
    if (!(n > 0.0) || !std::isfinite(n)) throw std::invalid_argument("normalize: zero or non-finite envelope");
    for (auto& z : a.samples) z /= n;
    return a;
}

ComplexSpectrum to_frequency_domain(const ComplexEnvelope& signal) {
    const Grid& tg = signal.grid;
    const std::size_t n = tg.count;
    const FrequencyGrid fg = dual_of(tg);

    // X_k = dt Σ_n x_n e^{iω_k t_n}
    const double a = fg.origin / fg.step;  // ω0/dω
    const double b = tg.origin / tg.step;  // t0/dt
    const auto pre = phase_ramp(a, n, +1);
    const auto post = phase_ramp(b, n, +1);
    const Complex c = constant_phase(a, b, n, +1) * tg.step;

    FftBuffer buf(n);
    auto d = buf.data();
    for (std::size_t i = 0; i < n; ++i) d[i] = signal.samples[i] * pre[i];
    buf.backward();
    std::vector<Complex> out(n);
    for (std::size_t k = 0; k < n; ++k) out[k] = c * post[k] * d[k];
    ComplexSpectrum result{fg, std::move(out)};
    result.warnings = signal.warnings;
    return result;
}

ComplexEnvelope to_time_domain(const ComplexSpectrum& spectrum) {
    const FrequencyGrid& fg = spectrum.grid;
    const std::size_t n = fg.count;
    const Grid tg = dual_of(fg);

    // x_n = (dω/2π) Σ_k X_k e^{-iω_k t_n}
    const double a = fg.origin / fg.step;
    const double b = tg.origin / tg.step;
    const auto pre = phase_ramp(b, n, -1);
    const auto post = phase_ramp(a, n, -1);
    const Complex c = constant_phase(a, b, n, -1) * (fg.step / (2.0 * kPi));

    FftBuffer buf(n);
    auto d = buf.data();
    for (std::size_t k = 0; k < n; ++k) d[k] = spectrum.samples[k] * pre[k];
    buf.forward();
    std::vector<Complex> out(n);
    for (std::size_t i = 0; i < n; ++i) out[i] = c * post[i] * d[i];

    ComplexEnvelope result{tg, std::move(out)};
    result.warnings = spectrum.warnings;
    double peak = 0.0;
    for (const auto& z : spectrum.samples) peak = std::max(peak, std::abs(z));
    const double edge = std::max(std::abs(spectrum.samples.front()), std::abs(spectrum.samples.back()));
    if (peak > 0.0 && edge > 1e-4 * peak) {
        result.warnings.push_back("aliasing: spectrum at band edge is " + std::to_string(edge / peak) +
                                  " of its peak (> 1e-4); widen the frequency window");
    }
    return result;
}

ComplexEnvelope convolve(const ComplexEnvelope& a, const ComplexEnvelope& b) {
    if (!close(a.grid.step, b.grid.step)) throw std::invalid_argument("convolve: grid steps differ");
    const std::size_t len = a.grid.count + b.grid.count - 1;
    const std::size_t m = next_fast_size(len);
    FftBuffer fa(m);
    FftBuffer fb(m);
    std::ranges::fill(fa.data(), Complex{});
    std::ranges::fill(fb.data(), Complex{});
    std::ranges::copy(a.samples, fa.data().begin());
    std::ranges::copy(b.samples, fb.data().begin());
    fa.forward();
    fb.forward();
    auto da = fa.data();
    auto db = fb.data();
    for (std::size_t k = 0; k < m; ++k) da[k] *= db[k];
    fa.backward();
    const double scale = a.grid.step / static_cast<double>(m);
    std::vector<Complex> out(len);
    for (std::size_t i = 0; i < len; ++i) out[i] = da[i] * scale;
    Grid g{a.grid.origin + b.grid.origin, a.grid.step, len, a.grid.unit_label};
    return {g, std::move(out)};
}

Complex overlap(const ComplexEnvelope& a, const ComplexEnvelope& b) {
    if (!a.grid.same_axis(b.grid)) throw std::invalid_argument("overlap: envelopes live on different grids");
    Complex acc{};
    for (std::size_t i = 0; i < a.samples.size(); ++i) acc += std::conj(a.samples[i]) * b.samples[i];
    return acc * a.grid.step;
}

double trapezoid(std::span<const double> values, double step) {
    if (values.size() < 2) return 0.0;
    double acc = 0.5 * (values.front() + values.back());
    for (std::size_t i = 1; i + 1 < values.size(); ++i) acc += values[i];
    return acc * step;
}

std::vector<double> cumulative_trapezoid(std::span<const double> values, double step) {
    std::vector<double> out(values.size(), 0.0);
    for (std::size_t i = 1; i < values.size(); ++i) out[i] = out[i - 1] + 0.5 * step * (values[i - 1] + values[i]);
    return out;
}

std::size_t next_fast_size(std::size_t n) {
    for (std::size_t m = std::max<std::size_t>(n, 1);; ++m) {
        std::size_t r = m;
        for (std::size_t p : {2u, 3u, 5u, 7u})
            while (r % p == 0) r /= p;
        if (r == 1) return m;
    }
}

std::vector<double> intensity(std::span<const Complex> samples) {
    std::vector<double> out(samples.size());
    std::ranges::transform(samples, out.begin(), [](const Complex& z) { return std::norm(z); });
    return out;
}

}  // namespace heraldsim
