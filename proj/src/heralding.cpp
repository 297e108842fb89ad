#include "heraldsim/heralding.hpp"

#include "heraldsim/errors.hpp"
#include "heraldsim/fft.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace heraldsim {
namespace {

// A table that keeps |F|² >= 1/2 over the whole sampled band acts on the
// grid as a near all-pass, so a coarse step loses nothing.
bool passes_sampled_band(const SpectralFilter& filter, double step) {
    if (filter.kind() != SpectralFilter::Kind::Tabulated) return false;
    const double nyquist = kPi / step;
    const double dw = filter.table()->grid.step;
    for (double w = -nyquist; w <= nyquist; w += dw)
        if (std::norm(filter.transmission(w)) < 0.5) return false;
    return true;
}

void require_positive(double v, const char* what) {
    if (!(v > 0.0) || !std::isfinite(v)) throw std::invalid_argument(std::string(what) + " must be > 0");
}

// Real heralded amplitude of the stationary model, s = t - t'.
double cw_amplitude(double s, double t_c, double t_m) {
    if (s > 0.0) return std::exp(-s / (2.0 * t_c));
    const double kappa = t_c / t_m;
    const double d = 1.0 - kappa;
    if (std::abs(d) < 1e-6) return (1.0 - s / t_c) * std::exp(s / (2.0 * t_c));
    return (2.0 * std::exp(s / (2.0 * t_m)) - (1.0 + kappa) * std::exp(s / (2.0 * t_c))) / d;
}

}  // namespace

JointAmplitude apply_filter(const JointAmplitude& joint, const SpectralFilter& filter, FilterPath path) {
    if (joint.filtered()) throw StateError("apply_filter: joint amplitude is already filtered");
    const Grid& gi = joint.idler_grid();
    const Grid& gs = joint.signal_grid();
    if (gi.step > filter.response_time() / 4.0 && !passes_sampled_band(filter, gi.step))
        throw ResolutionError("apply_filter: idler step " + std::to_string(gi.step) + " does not resolve t_m = " +
                              std::to_string(filter.response_time()) + " (need step <= t_m/4)");

    DiscreteFilter op(filter, gi.step, gi.count);
    const std::size_t m = op.output_count();
    std::vector<Complex> out(gs.count * m, Complex{});
    std::vector<Complex> kernel;
    if (path == FilterPath::Time) kernel = op.kernel();

    for (std::size_t a = 0; a < gs.count; ++a) {
        const auto row = joint.row(a);
        if (std::ranges::all_of(row, [](const Complex& z) { return z == Complex{}; })) continue;
        std::span<Complex> dst(out.data() + a * m, m);
        if (path == FilterPath::Frequency) {
            op.apply(row, dst);
        } else {
            op.apply_direct(row, dst, kernel);
        }
    }
    Grid extended = gi;
    extended.count = m;
    return {gs, extended, std::move(out), true};
}

HeraldResult signal_slice(const JointAmplitude& joint, double herald_time) {
    const Grid& gi = joint.idler_grid();
    const Grid& gs = joint.signal_grid();
    if (!gi.contains(herald_time))
        throw std::invalid_argument("herald instant " + std::to_string(herald_time) + " is outside the idler grid [" +
                                    std::to_string(gi.origin) + ", " + std::to_string(gi.back()) + "]");
    HeraldResult r;
    r.herald_index = gi.nearest_index(herald_time);
    r.herald_instant = gi.at(r.herald_index);
    if (std::abs(r.herald_instant - herald_time) > 1e-9 * gi.step) {
        r.warnings.push_back("herald instant " + std::to_string(herald_time) + " snapped to grid sample " +
                             std::to_string(r.herald_instant));
    }
    std::vector<Complex> slice(gs.count);
    for (std::size_t a = 0; a < gs.count; ++a) slice[a] = joint.at(a, r.herald_index);
    r.raw_norm = l2_norm(slice, gs.step);
    if (!(r.raw_norm >= 1e-12))
        throw NoHeraldError("no herald: detection probability at t' = " + std::to_string(r.herald_instant) +
                            " is negligible (slice norm " + std::to_string(r.raw_norm) + ")");
    for (auto& z : slice) z /= r.raw_norm;
    r.shape = ComplexEnvelope{gs, std::move(slice)};
    r.shape.warnings = r.warnings;
    return r;
}

HeraldResult conditional_shape(const JointAmplitude& filtered, double herald_time) {
    if (!filtered.filtered()) throw StateError("conditional_shape: joint amplitude has not been filtered");
    return signal_slice(filtered, herald_time);
}

RealEnvelope idler_marginal(const JointAmplitude& joint) {
    const Grid& gi = joint.idler_grid();
    const Grid& gs = joint.signal_grid();
    std::vector<double> m(gi.count, 0.0);
    for (std::size_t a = 0; a < gs.count; ++a) {
        const auto row = joint.row(a);
        for (std::size_t b = 0; b < gi.count; ++b) m[b] += std::norm(row[b]);
    }
    for (auto& v : m) v *= gs.step;
    return {gi, std::move(m)};
}

double heralding_probability(const JointAmplitude& joint, const SpectralFilter& filter) {
    if (joint.filtered()) throw StateError("heralding_probability: expects the unfiltered joint amplitude");
    const Grid& gi = joint.idler_grid();
    const Grid& gs = joint.signal_grid();
    const DiscreteFilter op(filter, gi.step, gi.count);
    const std::size_t m = op.output_count();
    const auto transfer = op.transfer();

    // Φ on the (signal, padded idler) DFT lattice. The grid-origin phases do
    // not affect |Φ| and are omitted.
    FftBuffer spectrum(gs.count, m);
    auto d = spectrum.data();
    std::ranges::fill(d, Complex{});
    for (std::size_t a = 0; a < gs.count; ++a) std::ranges::copy(joint.row(a), d.begin() + static_cast<std::ptrdiff_t>(a * m));
    spectrum.backward();

    double acc = 0.0;
    for (std::size_t k = 0; k < gs.count; ++k) {
        const Complex* row = d.data() + k * m;
        for (std::size_t l = 0; l < m; ++l) acc += std::norm(transfer[l] * row[l]);
    }
    // dω dω'/(2π)² · (dt dt')² with dω = 2π/(N_s dt), dω' = 2π/(M dt').
    return acc * gs.step * gi.step / (static_cast<double>(gs.count) * static_cast<double>(m));
}

Estimate heralding_probability_estimate(double omega_m, double omega_u) {
    require_positive(omega_m, "omega_m");
    require_positive(omega_u, "omega_u");
    Estimate e;
    const double ratio = omega_m / omega_u;
    e.value = std::clamp(ratio, 0.0, 1.0);
    if (ratio > 1.0)
        e.warnings.push_back("filter passband exceeds the unconditional bandwidth (omega_m/omega_u = " +
                             std::to_string(ratio) + "); estimate clamped to 1");
    return e;
}

ModulationEstimate temporal_modulation_rate_estimate(double t_m, double t_u, double omega_f, double t_c) {
    require_positive(t_m, "t_m");
    require_positive(t_u, "t_u");
    require_positive(t_c, "t_c");
    if (!(omega_f >= 0.0) || !std::isfinite(omega_f)) throw std::invalid_argument("omega_f must be >= 0");
    ModulationEstimate e;
    e.rate = (t_m / t_u) * omega_f * t_c;
    e.enhancement = omega_f > 0.0 ? 1.0 / (omega_f * t_m) : std::numeric_limits<double>::infinity();
    if (t_m > t_u) e.warnings.push_back("t_m/t_u > 1: modulation window longer than the pair window");
    if (omega_f * t_c > 1.0) e.warnings.push_back("omega_f·t_c > 1: post-selection window wider than the pair bandwidth");
    return e;
}

CwHeraldingProbability cw_heralding_probability(double t_c, double t_m) {
    require_positive(t_c, "t_c");
    require_positive(t_m, "t_m");
    const double inv_c = 1.0 / t_c;
    const double inv_m = 1.0 / t_m;
    const double sum = inv_c + inv_m;
    return {(2.0 * inv_c + inv_m) / (t_m * sum * sum), 2.0 * t_c / t_m};
}

double g2_cross(double t, double t_prime, double pair_rate, double t_c, double t_m) {
    require_positive(pair_rate, "pair rate");
    require_positive(t_c, "t_c");
    require_positive(t_m, "t_m");
    const double peak = (1.0 / (2.0 * pair_rate * t_c)) / (1.0 + 2.0 * t_m / t_c);
    const double s = t - t_prime;
    if (s > 0.0) return 1.0 + peak * std::exp(-s / t_c);
    const double amp = cw_amplitude(s, t_c, t_m);
    return 1.0 + peak * amp * amp;
}

Complex cw_conditional_shape(double t, double t_prime, double t_c, double t_m) {
    require_positive(t_c, "t_c");
    require_positive(t_m, "t_m");
    return cw_amplitude(t - t_prime, t_c, t_m);
}

ComplexEnvelope cw_conditional_envelope(const Grid& grid, double t_prime, double t_c, double t_m) {
    return normalize(sample(grid, [&](double t) { return cw_conditional_shape(t, t_prime, t_c, t_m); }));
}

RealEnvelope apply_detector_jitter(const RealEnvelope& input, double t_d) {
    if (!(t_d >= 0.0) || !std::isfinite(t_d)) throw std::invalid_argument("detector jitter: t_d must be >= 0");
    if (t_d == 0.0) return input;
    const double h = input.grid.step;
    const double half = 0.5 * t_d;
    const auto reach = static_cast<std::ptrdiff_t>(std::ceil(half / h));
    std::vector<double> weights;
    for (std::ptrdiff_t j = -reach; j <= reach; ++j) {
        const double lo = std::max(static_cast<double>(j) * h - 0.5 * h, -half);
        const double hi = std::min(static_cast<double>(j) * h + 0.5 * h, half);
        weights.push_back(std::max(hi - lo, 0.0) / t_d);
    }
    const auto n = static_cast<std::ptrdiff_t>(input.samples.size());
    std::vector<double> out(input.samples.size(), 0.0);
    for (std::ptrdiff_t i = 0; i < n; ++i) {
        double acc = 0.0;
        for (std::ptrdiff_t j = -reach; j <= reach; ++j) {
            const std::ptrdiff_t src = i - j;
            if (src < 0 || src >= n) continue;
            acc += weights[static_cast<std::size_t>(j + reach)] * input.samples[static_cast<std::size_t>(src)];
        }
        out[static_cast<std::size_t>(i)] = acc;
    }
    RealEnvelope r{input.grid, std::move(out)};
    r.warnings = input.warnings;
    return r;
}

double intensity_fidelity(const RealEnvelope& a, const RealEnvelope& b) {
    if (!a.grid.same_axis(b.grid)) throw std::invalid_argument("intensity_fidelity: grids differ");
    double cross = 0.0;
    double na = 0.0;
    double nb = 0.0;
    for (std::size_t i = 0; i < a.samples.size(); ++i) {
        const double x = std::max(a.samples[i], 0.0);
        const double y = std::max(b.samples[i], 0.0);
        cross += std::sqrt(x * y);
        na += x;
        nb += y;
    }
    if (!(na > 0.0) || !(nb > 0.0)) throw std::invalid_argument("intensity_fidelity: zero intensity");
    return cross * cross / (na * nb);
}

double heralded_spectrum_shift(double filter_drift) { return -filter_drift; }

double spectral_centroid(const ComplexEnvelope& shape) {
    const auto spectrum = to_frequency_domain(shape);
    double num = 0.0;
    double den = 0.0;
    for (std::size_t k = 0; k < spectrum.samples.size(); ++k) {
        const double p = std::norm(spectrum.samples[k]);
        num += spectrum.grid.at(k) * p;
        den += p;
    }
    if (!(den > 0.0)) throw std::invalid_argument("spectral_centroid: zero spectrum");
    return num / den;
}

std::vector<RegimeCondition> validate_regime(const RegimeParams& p) {
    require_positive(p.t_c, "t_c");
    require_positive(p.t_m, "t_m");
    std::vector<RegimeCondition> out;
    auto add = [&](std::string name, double ratio) {
        RegimeCondition c;
        c.condition = std::move(name);
        c.margin = ratio;
        const double slack = 1.0 + 1e-12;
        if (ratio <= kRegimeCleanRatio * slack) {
            c.status = RegimeStatus::Pass;
        } else if (ratio <= kRegimeWarnRatio * slack) {
            c.status = RegimeStatus::Warn;
        } else {
            c.status = RegimeStatus::Fail;
        }
        c.satisfied = c.status != RegimeStatus::Fail;
        out.push_back(std::move(c));
    };
    add("t_c << t_m", p.t_c / p.t_m);
    if (p.t_u) {
        require_positive(*p.t_u, "t_u");
        add("t_m << t_u", p.t_m / *p.t_u);
    }
    if (p.t_d) {
        require_positive(*p.t_d, "t_d");
        add("t_d << t_m", *p.t_d / p.t_m);
    }
    if (p.omega_d) {
        if (!std::isfinite(*p.omega_d) || *p.omega_d == 0.0)
            throw std::invalid_argument("omega_d must be non-zero when supplied");
        add("omega_d << 1/t_m", std::abs(*p.omega_d) * p.t_m);
    }
    if (p.pair_rate) {
        require_positive(*p.pair_rate, "pair rate");
        add("t_m << 1/nbar", *p.pair_rate * p.t_m);
    }
    if (p.t_coh) {
        require_positive(*p.t_coh, "t_coh");
        add("t_m << t_coh", p.t_m / *p.t_coh);
    }
    return out;
}

std::string to_string(RegimeStatus status) {
    switch (status) {
        case RegimeStatus::Pass: return "pass";
        case RegimeStatus::Warn: return "warn";
        case RegimeStatus::Fail: return "FAIL";
    }
    return "?";
}

}  // namespace heraldsim
