#pragma once

// Heralded conditional shapes, heralding probabilities and correlations.

#include "heraldsim/filters.hpp"
#include "heraldsim/joint_amplitude.hpp"
#include "heraldsim/numerics.hpp"

#include <optional>
#include <string>
#include <vector>

namespace heraldsim {

enum class FilterPath { Frequency, Time };

/// Ψ(t,t') → ∫dτ 𝓕(τ)Ψ(t,t'-τ) along the idler axis.
///
/// The idler axis of the result is extended by the filter's settling time so
/// that the full transmitted amplitude is kept; its norm² is the heralding
/// probability. FilterPath::Time evaluates the same operator as an explicit
/// convolution (O(N_s·M·N_i)); use it for cross-checks on small grids.
///
/// Throws StateError if `joint` is already filtered and ResolutionError if
/// the idler step exceeds t_m/4.
JointAmplitude apply_filter(const JointAmplitude& joint, const SpectralFilter& filter,
                            FilterPath path = FilterPath::Frequency);

/// Signal amplitude conditioned on an idler click at t'.
struct HeraldResult {
    double herald_instant = 0.0;      // after snapping to the idler grid
    std::size_t herald_index = 0;
    ComplexEnvelope shape;            // unit-normalised, over the signal grid
    double raw_norm = 0.0;            // norm of the slice before normalisation
    std::vector<std::string> warnings;
};

/// Normalised signal slice of a filtered joint amplitude at idler time t'.
/// Off-grid t' snaps to the nearest sample with a warning.
/// Throws StateError for an unfiltered input, std::invalid_argument if t' is
/// outside the idler grid and NoHeraldError if the slice norm is < 1e-12.
HeraldResult conditional_shape(const JointAmplitude& filtered, double herald_time);

/// Same slice without the filtered-state requirement (used for the
/// unfiltered cross-correlation reference).
HeraldResult signal_slice(const JointAmplitude& joint, double herald_time);

/// Idler time distribution ∫dt |Ψ(t,t')|² as a function of t'.
RealEnvelope idler_marginal(const JointAmplitude& joint);

/// R = ∬|F(ω')Φ(ω,ω')|² dωdω'/(2π)², from the 2-D spectrum of the
/// unfiltered joint amplitude. Throws StateError on a filtered input.
double heralding_probability(const JointAmplitude& joint, const SpectralFilter& filter);

/// A scalar estimate plus any regime warnings raised while forming it.
struct Estimate {
    double value = 0.0;
    std::vector<std::string> warnings;
};

/// R ≈ ω_m/ω_u, clamped to [0, 1]; warns when ω_m > ω_u.
Estimate heralding_probability_estimate(double omega_m, double omega_u);

struct ModulationEstimate {
    double rate = 0.0;         // R' ≈ (t_m/t_u)·ω_f·t_c
    double enhancement = 0.0;  // R/R' ≈ 1/(ω_f·t_m)
    std::vector<std::string> warnings;
};

/// Heralding-rate estimate for nonlocal temporal modulation with a
/// frequency post-selection window ω_f.
ModulationEstimate temporal_modulation_rate_estimate(double t_m, double t_u, double omega_f, double t_c);

struct CwHeraldingProbability {
    double exact = 0.0;       // (2/t_c + 1/t_m) / (t_m (1/t_c + 1/t_m)²)
    double asymptotic = 0.0;  // 2t_c/t_m
};

CwHeraldingProbability cw_heralding_probability(double t_c, double t_m);

/// Normalised signal–filtered-idler cross-correlation g⁽²⁾(t, t') for the
/// stationary source and a Lorentzian idler filter.
double g2_cross(double t, double t_prime, double pair_rate, double t_c, double t_m);

/// Heralded amplitude of the stationary model (value 1 at t = t'):
///   t ≤ t': [2e^{s/2t_m} - (1+κ)e^{s/2t_c}]/(1-κ),  s = t - t', κ = t_c/t_m
///   t > t': e^{-s/2t_c}
/// with the analytic limit (1 - s/t_c)e^{s/2t_c} when |1-κ| < 1e-6.
Complex cw_conditional_shape(double t, double t_prime, double t_c, double t_m);

/// cw_conditional_shape sampled on a grid and normalised.
ComplexEnvelope cw_conditional_envelope(const Grid& grid, double t_prime, double t_c, double t_m);

/// Intensity smeared by a unit-area box of width t_d (detector timing
/// jitter). t_d = 0 (or below one grid step) is the identity.
RealEnvelope apply_detector_jitter(const RealEnvelope& intensity, double t_d);

/// [∫√(I₁I₂)]² / (∫I₁ ∫I₂) for two intensity profiles on the same grid.
double intensity_fidelity(const RealEnvelope& a, const RealEnvelope& b);

/// Expected shift of the heralded spectrum for a filter drift ω_d: -ω_d.
double heralded_spectrum_shift(double filter_drift);

/// Intensity-weighted mean frequency of a shape's spectrum.
double spectral_centroid(const ComplexEnvelope& shape);

/// Inputs of the regime validator. Unset optionals are skipped.
struct RegimeParams {
    double t_c = 1.0;
    double t_m = 10.0;
    std::optional<double> t_u;
    std::optional<double> t_d;
    std::optional<double> omega_d;
    std::optional<double> pair_rate;
    std::optional<double> t_coh;
};

enum class RegimeStatus { Pass, Warn, Fail };

struct RegimeCondition {
    std::string condition;  // e.g. "t_c << t_m"
    double margin = 0.0;    // the ratio that must be small
    bool satisfied = false; // margin ≤ 0.2
    RegimeStatus status = RegimeStatus::Fail;  // Pass: ≤ 0.05, Warn: ≤ 0.2
};

inline constexpr double kRegimeWarnRatio = 0.2;
inline constexpr double kRegimeCleanRatio = 0.05;

/// Evaluates every "≪" condition of the shaping regime as a ratio.
/// Throws std::invalid_argument if a supplied parameter is not positive.
std::vector<RegimeCondition> validate_regime(const RegimeParams& params);

std::string to_string(RegimeStatus status);

}  // namespace heraldsim
