#pragma once

// Uniform grids, Fourier transforms, convolution and quadrature.
//
// Fourier convention used throughout the library:
//
//     f(t) = ∫ F(ω) e^{-iωt} dω/2π          (to_time_domain)
//     F(ω) = ∫ f(t) e^{+iωt} dt             (to_frequency_domain)
//
// so that a Lorentzian F(ω) = 1/(1 - 2iωt_m) maps onto the causal
// exponential (1/2t_m) e^{-t/2t_m} Θ(t).

#include <complex>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace heraldsim {

using Complex = std::complex<double>;

inline constexpr double kPi = 3.14159265358979323846;

/// Uniform time axis. Times are dimensionless (units of t_c) unless
/// unit_label says otherwise.
struct Grid {
    double origin = 0.0;
    double step = 1.0;
    std::size_t count = 2;
    std::string unit_label;

    [[nodiscard]] double at(std::size_t i) const { return origin + step * static_cast<double>(i); }
    [[nodiscard]] double back() const { return at(count - 1); }
    [[nodiscard]] double span() const { return step * static_cast<double>(count - 1); }
    [[nodiscard]] bool contains(double t) const;
    /// Index of the sample closest to t (clamped to the grid).
    [[nodiscard]] std::size_t nearest_index(double t) const;
    /// Same origin/step/count (relative tolerance 1e-9 on the reals).
    [[nodiscard]] bool same_axis(const Grid& other) const;
};

/// Uniform angular-frequency axis, offsets from the carrier.
///
/// A frequency grid is always the DFT dual of some time grid: it remembers
/// the origin of that time grid so that transforms round-trip onto the same
/// axis.
struct FrequencyGrid {
    double origin = 0.0;
    double step = 1.0;
    std::size_t count = 2;
    double dual_origin = 0.0;

    [[nodiscard]] double at(std::size_t i) const { return origin + step * static_cast<double>(i); }
    [[nodiscard]] double back() const { return at(count - 1); }
    [[nodiscard]] bool same_axis(const FrequencyGrid& other) const;
};

/// t_min..t_max inclusive with count samples.
Grid make_grid(double t_min, double t_max, std::size_t count);

/// Grid with a given step that covers [t_min, t_max] (t_max rounded up to a
/// whole number of steps).
Grid make_grid_with_step(double t_min, double t_max, double step);

/// Frequency grid centred on zero: origin = -(count/2)·step.
FrequencyGrid make_frequency_grid(double step, std::size_t count);

/// DFT dual of a time grid: step_ω = 2π/(step·count), centred on ω = 0.
FrequencyGrid dual_of(const Grid& grid);

/// Time grid dual to a frequency grid, starting at grid.dual_origin.
Grid dual_of(const FrequencyGrid& grid);

/// Sampled function over a grid. Warnings collect non-fatal diagnostics
/// (aliasing, snapping) produced while computing the samples.
template <class Axis, class T = Complex>
struct Envelope {
    Axis grid;
    std::vector<T> samples;
    std::vector<std::string> warnings;

    Envelope() = default;
    Envelope(Axis g, std::vector<T> s) : grid(std::move(g)), samples(std::move(s)) {}
};

using ComplexEnvelope = Envelope<Grid, Complex>;
using ComplexSpectrum = Envelope<FrequencyGrid, Complex>;
using RealEnvelope = Envelope<Grid, double>;

/// Evaluate f(t) on every sample of a grid.
template <class Fn>
ComplexEnvelope sample(const Grid& grid, Fn&& fn) {
    std::vector<Complex> s(grid.count);
    for (std::size_t i = 0; i < grid.count; ++i) s[i] = fn(grid.at(i));
    return {grid, std::move(s)};
}

template <class Fn>
ComplexSpectrum sample(const FrequencyGrid& grid, Fn&& fn) {
    std::vector<Complex> s(grid.count);
    for (std::size_t i = 0; i < grid.count; ++i) s[i] = fn(grid.at(i));
    return {grid, std::move(s)};
}

/// Discrete L² norm sqrt(Σ|a|²·step).
double l2_norm(std::span<const Complex> samples, double step);
double l2_norm(const ComplexEnvelope& a);
double l2_norm(const ComplexSpectrum& a);

/// Rescale to unit l2_norm. Throws std::invalid_argument for a zero envelope.
ComplexEnvelope normalize(ComplexEnvelope a);

/// Spectrum → time signal. Attaches an aliasing warning when |F| at the
/// band edges exceeds 1e-4 of its peak.
ComplexEnvelope to_time_domain(const ComplexSpectrum& spectrum);

/// Time signal → spectrum on the dual, zero-centred frequency grid.
ComplexSpectrum to_frequency_domain(const ComplexEnvelope& signal);

/// Linear convolution (a ⊛ b)(t) = ∫ a(s) b(t - s) ds. The output grid
/// starts at a.origin + b.origin and has a.count + b.count - 1 samples.
ComplexEnvelope convolve(const ComplexEnvelope& a, const ComplexEnvelope& b);

/// ⟨a|b⟩ = Σ conj(a)·b·step on identical grids.
Complex overlap(const ComplexEnvelope& a, const ComplexEnvelope& b);

/// Trapezoidal rule on a uniform grid.
double trapezoid(std::span<const double> values, double step);

/// Running trapezoidal integral; result[0] = 0.
std::vector<double> cumulative_trapezoid(std::span<const double> values, double step);

/// Heaviside step with Θ(0) = 1/2, the value a Fourier series converges to
/// at a jump.
inline double heaviside(double x) { return x > 0.0 ? 1.0 : (x < 0.0 ? 0.0 : 0.5); }

/// Smallest n' ≥ n whose only prime factors are 2, 3, 5 and 7.
std::size_t next_fast_size(std::size_t n);

/// Intensity |a|² of each sample.
std::vector<double> intensity(std::span<const Complex> samples);

}  // namespace heraldsim
