#pragma once

// Two-level atom driven by a shaped single photon (resonant, full solid angle).

#include "heraldsim/numerics.hpp"

#include <string>
#include <vector>

namespace heraldsim {

struct AtomModel {
    double lifetime = 10.0;  // radiative lifetime τ
};

/// Throws std::invalid_argument unless lifetime > 0.
AtomModel make_atom(double lifetime);

struct ExcitationCurve {
    Grid grid;
    std::vector<double> p;
    double p_max = 0.0;
    double t_peak = 0.0;
    std::vector<std::string> warnings;
};

/// Scattered field ψ̃(t) = (1/τ)∫_{-∞}^{t} e^{-(t-t')/2τ} ψ(t') dt' - ψ(t).
///
/// The running integral is advanced with an exponential integrator that is
/// exact for a cubic interpolant of ψ (linear at the two ends of the grid).
/// Throws ResolutionError if step > τ/8 and std::invalid_argument if ψ is
/// not unit-normalised.
ComplexEnvelope scattered_shape(const ComplexEnvelope& psi, const AtomModel& atom);

/// p(t) = ∫_{-∞}^{t} (|ψ|² - |ψ̃|²) dt'.
///
/// Throws ContainmentError if the pulse intensity at either grid edge is above
/// 1e-6 of its peak. A warning is attached if p has not relaxed below 1e-3 at
/// the right edge.
ExcitationCurve excitation_curve(const ComplexEnvelope& psi, const AtomModel& atom);

/// ε/(ε + 1/2). Throws std::invalid_argument if ε ≤ 0.
double p_max_closed_form(double epsilon);

}  // namespace heraldsim
