#pragma once

// Entangled photon-pair resources.

#include "heraldsim/joint_amplitude.hpp"
#include "heraldsim/numerics.hpp"

#include <variant>

namespace heraldsim {

/// Perfect time correlation, Ψ(t,t') ∝ δ(t - t'). Only meaningful as the
/// t_c → 0 reference.
struct IdealCorrelated {};

/// Ψ(t,t') ∝ e^{-|t-t'|/2t_c} on the square 0 ≤ t, t' ≤ t_u.
struct FiniteWindowExponential {
    double t_c = 1.0;
    double t_u = 150.0;
};

/// Stationary pair stream characterised by its first-order correlators;
/// pair_rate is the mean flux n̄ of each arm.
struct StationaryCW {
    double pair_rate = 0.01;
    double t_c = 1.0;
};

using PairModel = std::variant<IdealCorrelated, FiniteWindowExponential, StationaryCW>;

/// Validated constructors. Throw std::invalid_argument on non-positive
/// times, t_u ≤ t_c, or n̄·t_c ≥ 1 (outside the low-pump regime).
FiniteWindowExponential make_finite_window(double t_c, double t_u);
StationaryCW make_stationary_cw(double pair_rate, double t_c);

/// Characteristic widths under the convention ω_u·t_c = ω_c·t_u = 1.
/// Order-of-magnitude quantities only.
struct SpectralWidths {
    double omega_u = 1.0;  // unconditional bandwidth
    double omega_c = 0.0;  // conditional bandwidth
};

SpectralWidths spectral_widths(const FiniteWindowExponential& model);

/// Unit-normalised Ψ(t,t') of the finite-window model on grid × grid.
/// Throws ResolutionError if grid.step > t_c/4.
JointAmplitude joint_amplitude(const FiniteWindowExponential& model, const Grid& grid);
JointAmplitude joint_amplitude(const FiniteWindowExponential& model, const Grid& signal, const Grid& idler);

/// Diagonal ridge Ψ = δ_{t,t'}/(step·√count), unit-normalised.
JointAmplitude ideal_joint_amplitude(const Grid& grid);

/// G⁽¹⁾_ss(Δ) = n̄ e^{-|Δ|/2t_c}(1 + |Δ|/2t_c).
double g1_auto(const StationaryCW& model, double dt);

/// G⁽¹⁾_si(Δ) = √(n̄/2t_c) e^{-|Δ|/2t_c}.
double g1_cross(const StationaryCW& model, double dt);

}  // namespace heraldsim
