#include "heraldsim/sources.hpp"

#include "heraldsim/errors.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace heraldsim {

JointAmplitude::JointAmplitude(Grid signal, Grid idler, std::vector<Complex> samples, bool filtered)
    : signal_(std::move(signal)), idler_(std::move(idler)), samples_(std::move(samples)), filtered_(filtered) {
    if (samples_.size() != signal_.count * idler_.count)
        throw std::invalid_argument("JointAmplitude: sample count does not match grid shape");
}

double JointAmplitude::norm_squared() const {
    double acc = 0.0;
    for (const auto& z : samples_) acc += std::norm(z);
    return acc * signal_.step * idler_.step;
}

FiniteWindowExponential make_finite_window(double t_c, double t_u) {
    if (!(t_c > 0.0)) throw std::invalid_argument("finite window: t_c must be > 0");
    if (!(t_u > t_c)) throw std::invalid_argument("finite window: t_u must exceed t_c");
    return {t_c, t_u};
}

StationaryCW make_stationary_cw(double pair_rate, double t_c) {
    if (!(t_c > 0.0)) throw std::invalid_argument("stationary CW: t_c must be > 0");
    if (!(pair_rate >= 0.0)) throw std::invalid_argument("stationary CW: pair rate must be >= 0");
    if (!(pair_rate * t_c < 1.0))
        throw std::invalid_argument("stationary CW: n̄·t_c must be < 1 (low-pump regime)");
    return {pair_rate, t_c};
}

SpectralWidths spectral_widths(const FiniteWindowExponential& model) {
    return {1.0 / model.t_c, 1.0 / model.t_u};
}

JointAmplitude joint_amplitude(const FiniteWindowExponential& model, const Grid& grid) {
    return joint_amplitude(model, grid, grid);
}

JointAmplitude joint_amplitude(const FiniteWindowExponential& model, const Grid& signal, const Grid& idler) {
    make_finite_window(model.t_c, model.t_u);
    for (const Grid* g : {&signal, &idler}) {
        if (g->step > model.t_c / 4.0)
            throw ResolutionError("joint_amplitude: grid step " + std::to_string(g->step) +
                                  " exceeds t_c/4; use step <= " + std::to_string(model.t_c / 4.0));
    }
    const double tol = 1e-9 * std::min(signal.step, idler.step);
    auto inside = [&](double t) { return t >= -tol && t <= model.t_u + tol; };

    std::vector<Complex> s(signal.count * idler.count, Complex{});
    double acc = 0.0;
    for (std::size_t a = 0; a < signal.count; ++a) {
        const double t = signal.at(a);
        if (!inside(t)) continue;
        for (std::size_t b = 0; b < idler.count; ++b) {
            const double tp = idler.at(b);
            if (!inside(tp)) continue;
            const double v = std::exp(-std::abs(t - tp) / (2.0 * model.t_c));
            s[a * idler.count + b] = v;
            acc += v * v;
        }
    }
    acc *= signal.step * idler.step;
    if (!(acc > 0.0)) throw std::invalid_argument("joint_amplitude: pair window does not intersect the grid");
    const double scale = 1.0 / std::sqrt(acc);
    for (auto& z : s) z *= scale;
    return {signal, idler, std::move(s)};
}

JointAmplitude ideal_joint_amplitude(const Grid& grid) {
    const double v = 1.0 / (grid.step * std::sqrt(static_cast<double>(grid.count)));
    std::vector<Complex> s(grid.count * grid.count, Complex{});
    for (std::size_t i = 0; i < grid.count; ++i) s[i * grid.count + i] = v;
    return {grid, grid, std::move(s)};
}

double g1_auto(const StationaryCW& model, double dt) {
    const double x = std::abs(dt) / (2.0 * model.t_c);
    return model.pair_rate * std::exp(-x) * (1.0 + x);
}

double g1_cross(const StationaryCW& model, double dt) {
    return std::sqrt(model.pair_rate / (2.0 * model.t_c)) * std::exp(-std::abs(dt) / (2.0 * model.t_c));
}

}  // namespace heraldsim
