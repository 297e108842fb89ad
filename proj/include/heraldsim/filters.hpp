#pragma once

// Complex spectral filters placed in the idler arm.

#include "heraldsim/fft.hpp"
#include "heraldsim/numerics.hpp"

#include <filesystem>
#include <iosfwd>
#include <memory>
#include <span>
#include <vector>

namespace heraldsim {

/// Passive linear filter described by its transmission F(ω) and impulse
/// response 𝓕(τ) = ∫F(ω)e^{-iωτ}dω/2π.
///
/// A drift ω_d shifts the whole transmission rigidly: F_d(ω) = F(ω - ω_d).
class SpectralFilter {
public:
    enum class Kind { Lorentzian, Tabulated };

    /// F(ω) = 1/(1 - 2i(ω - ω_d)t_m). Throws std::invalid_argument if t_m ≤ 0.
    static SpectralFilter lorentzian(double t_m, double drift = 0.0);

    /// Linear interpolation between table samples, zero outside the table.
    /// The table must be passive: |F| ≤ 1 + 1e-12.
    static SpectralFilter tabulated(ComplexSpectrum table, double drift = 0.0);

    [[nodiscard]] SpectralFilter with_drift(double drift) const;

    [[nodiscard]] Kind kind() const { return kind_; }
    [[nodiscard]] double drift() const { return drift_; }

    /// t_m for a Lorentzian; for a table, 1/(2·HWHM) of |F|², which is t_m
    /// again for a sampled Lorentzian.
    [[nodiscard]] double response_time() const { return response_time_; }

    /// Passband estimate ω_m = 1/t_m.
    [[nodiscard]] double passband() const { return 1.0 / response_time_; }

    /// Delay after which |𝓕| is negligible: 24·t_m for a Lorentzian
    /// (amplitude e^{-12}), the native time window for a table.
    [[nodiscard]] double settling_time() const;

    [[nodiscard]] Complex transmission(double omega) const;

    [[nodiscard]] const ComplexSpectrum* table() const { return table_.get(); }

private:
    SpectralFilter() = default;

    Kind kind_ = Kind::Lorentzian;
    double response_time_ = 1.0;
    double drift_ = 0.0;
    std::shared_ptr<const ComplexSpectrum> table_;
};

/// 𝓕(τ) on a grid. Lorentzians use the closed form
/// (1/2t_m)e^{-τ/2t_m}Θ(τ)e^{-iω_dτ} with Θ(0) = 1/2; tables are
/// transformed on their native dual grid and interpolated.
/// Throws ResolutionError if step > t_m/16 or span < 12·t_m.
ComplexEnvelope impulse_response(const SpectralFilter& filter, const Grid& grid);

struct CausalityReport {
    bool causal = true;
    double pre_herald_mass = 0.0;  // ∫_{τ<0}|𝓕|² / ∫|𝓕|²
};

CausalityReport check_causality(const SpectralFilter& filter, double tol);

/// Filter action as a discrete operator on sequences of a fixed length.
///
/// Inputs of `input_count` samples are zero-padded to `output_count()`
/// samples (at least settling_time() of padding), transformed, multiplied by
/// F(ω_k) on the padded DFT frequencies and transformed back. The padded
/// tail is kept, so no transmitted energy is discarded. The same operator is
/// available as an explicit circular convolution with the grid impulse
/// response (`apply_direct`), which serves as the time-domain path.
class DiscreteFilter {
public:
    DiscreteFilter(const SpectralFilter& filter, double step, std::size_t input_count);

    [[nodiscard]] std::size_t input_count() const { return input_count_; }
    [[nodiscard]] std::size_t output_count() const { return transfer_.size(); }

    /// F(ω_k) in DFT order (k ≥ M/2 are negative frequencies).
    [[nodiscard]] std::span<const Complex> transfer() const { return transfer_; }

    /// Discrete kernel h_j = (1/M) Σ_k F(ω_k) e^{-2πikj/M}; h_j ≈ step·𝓕(j·step).
    [[nodiscard]] std::vector<Complex> kernel() const;

    /// Frequency path. `out` must hold output_count() samples.
    void apply(std::span<const Complex> in, std::span<Complex> out);

    /// Time path: y_m = Σ_n h_{(m-n) mod M} x_n. O(M·N).
    void apply_direct(std::span<const Complex> in, std::span<Complex> out, std::span<const Complex> kernel) const;

private:
    std::size_t input_count_;
    std::vector<Complex> transfer_;
    FftBuffer buffer_;
};

/// 1-D filtering of an envelope; the result extends past the input grid by
/// the padding of DiscreteFilter.
ComplexEnvelope filter_envelope(const SpectralFilter& filter, const ComplexEnvelope& input);

/// Text table: a '#' header line, then "omega re im" per line (whitespace or
/// comma separated), ω strictly increasing and uniformly spaced.
ComplexSpectrum read_filter_table(std::istream& in);
ComplexSpectrum read_filter_table(const std::filesystem::path& path);
void write_filter_table(std::ostream& out, const ComplexSpectrum& table);

}  // namespace heraldsim
