#include "heraldsim/atom.hpp"

#include "heraldsim/errors.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <stdexcept>

namespace heraldsim {
namespace {

// w_j = ∫_0^h e^{-λ(h-u)} L_j(u) du for the Lagrange basis on nodes·h.
// Composite Simpson on a smooth integrand; ample for the tolerances in play.
template <std::size_t N>
std::array<double, N> exponential_weights(double h, double lambda, const std::array<int, N>& nodes) {
    constexpr int panels = 512;
    const double du = h / panels;
    std::array<double, N> w{};
    for (int k = 0; k <= panels; ++k) {
        const double u = du * k;
        const double simpson = (k == 0 || k == panels) ? 1.0 : (k % 2 == 1 ? 4.0 : 2.0);
        const double e = std::exp(-lambda * (h - u)) * simpson * du / 3.0;
        for (std::size_t j = 0; j < N; ++j) {
            double basis = 1.0;
            for (std::size_t m = 0; m < N; ++m) {
                if (m == j) continue;
                basis *= (u - nodes[m] * h) / ((nodes[j] - nodes[m]) * h);
            }
            w[j] += e * basis;
        }
    }
    return w;
}

}  // namespace

AtomModel make_atom(double lifetime) {
    if (!(lifetime > 0.0) || !std::isfinite(lifetime)) throw std::invalid_argument("atom lifetime must be > 0");
    return {lifetime};
}

ComplexEnvelope scattered_shape(const ComplexEnvelope& psi, const AtomModel& atom) {
    make_atom(atom.lifetime);
    const double h = psi.grid.step;
    if (h > atom.lifetime / 8.0)
        throw ResolutionError("scattered_shape: step " + std::to_string(h) + " does not resolve the atom lifetime " +
                              std::to_string(atom.lifetime) + " (need step <= lifetime/8)");
    const double norm = l2_norm(psi);
    if (std::abs(norm - 1.0) > 1e-6)
        throw std::invalid_argument("scattered_shape: input pulse is not unit-normalised (norm " +
                                    std::to_string(norm) + ")");

    const double lambda = 0.5 / atom.lifetime;
    const double decay = std::exp(-lambda * h);
    const auto cubic = exponential_weights<4>(h, lambda, {-1, 0, 1, 2});
    const auto linear = exponential_weights<2>(h, lambda, {0, 1});

    const auto& x = psi.samples;
    const std::size_t n = x.size();
    std::vector<Complex> out(n);
    Complex running{};
    out[0] = -x[0];
    for (std::size_t i = 1; i < n; ++i) {
        Complex inc;
        if (i >= 2 && i + 1 < n) {
            inc = cubic[0] * x[i - 2] + cubic[1] * x[i - 1] + cubic[2] * x[i] + cubic[3] * x[i + 1];
        } else {
            inc = linear[0] * x[i - 1] + linear[1] * x[i];
        }
        running = decay * running + inc;
        out[i] = running / atom.lifetime - x[i];
    }
    ComplexEnvelope r{psi.grid, std::move(out)};
    r.warnings = psi.warnings;
    return r;
}

ExcitationCurve excitation_curve(const ComplexEnvelope& psi, const AtomModel& atom) {
    const auto in = intensity(psi.samples);
    const double peak = *std::ranges::max_element(in);
    if (in.front() > 1e-6 * peak || in.back() > 1e-6 * peak)
        throw ContainmentError("excitation_curve: pulse is truncated by the grid (edge intensity " +
                               std::to_string(std::max(in.front(), in.back()) / peak) +
                               " of peak); widen the time window");
    const auto scattered = scattered_shape(psi, atom);
    const auto out = intensity(scattered.samples);

    std::vector<double> diff(in.size());
    for (std::size_t i = 0; i < in.size(); ++i) diff[i] = in[i] - out[i];

    ExcitationCurve c;
    c.grid = psi.grid;
    c.p = cumulative_trapezoid(diff, psi.grid.step);
    const auto it = std::ranges::max_element(c.p);
    c.p_max = *it;
    c.t_peak = psi.grid.at(static_cast<std::size_t>(it - c.p.begin()));
    c.warnings = scattered.warnings;
    if (std::abs(c.p.back()) > 1e-3)
        c.warnings.push_back("excitation has not relaxed by the end of the grid (p = " + std::to_string(c.p.back()) +
                             "); extend the window past several atom lifetimes");
    return c;
}

double p_max_closed_form(double epsilon) {
    if (!(epsilon > 0.0)) throw std::invalid_argument("p_max_closed_form: epsilon must be > 0");
    return epsilon / (epsilon + 0.5);
}

}  // namespace heraldsim
