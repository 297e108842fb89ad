#include "heraldsim/filters.hpp"

#include "heraldsim/errors.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>

namespace heraldsim {
namespace {

constexpr double kLorentzianSettling = 24.0;

double half_power_width(const ComplexSpectrum& table) {
    const auto& s = table.samples;
    const auto power = intensity(s);
    const auto peak_it = std::ranges::max_element(power);
    const double half = 0.5 * *peak_it;
    const auto peak = static_cast<std::size_t>(peak_it - power.begin());
    const double dw = table.grid.step;

    double right = static_cast<double>(s.size() - 1 - peak) * dw;
    for (std::size_t i = peak; i + 1 < s.size(); ++i) {
        if (power[i + 1] <= half) {
            right = (static_cast<double>(i - peak) + (power[i] - half) / (power[i] - power[i + 1])) * dw;
            break;
        }
    }
    double left = static_cast<double>(peak) * dw;
    for (std::size_t i = peak; i > 0; --i) {
        if (power[i - 1] <= half) {
            left = (static_cast<double>(peak - i) + (power[i] - half) / (power[i] - power[i - 1])) * dw;
            break;
        }
    }
    return 0.5 * (left + right);
}

ComplexEnvelope interpolate(const ComplexEnvelope& src, const Grid& dst) {
    std::vector<Complex> out(dst.count, Complex{});
    const Grid& g = src.grid;
    for (std::size_t i = 0; i < dst.count; ++i) {
        const double x = (dst.at(i) - g.origin) / g.step;
        if (x < -1e-9 || x > static_cast<double>(g.count - 1) + 1e-9) continue;
        const double fl = std::clamp(std::floor(x), 0.0, static_cast<double>(g.count - 1));
        const auto j = static_cast<std::size_t>(fl);
        const double f = x - fl;
        if (j + 1 >= g.count || f < 1e-12) {
            out[i] = src.samples[j];
        } else {
            out[i] = (1.0 - f) * src.samples[j] + f * src.samples[j + 1];
        }
    }
    ComplexEnvelope result{dst, std::move(out)};
    result.warnings = src.warnings;
    return result;
}

}  // namespace

SpectralFilter SpectralFilter::lorentzian(double t_m, double drift) {
    if (!(t_m > 0.0) || !std::isfinite(t_m)) throw std::invalid_argument("lorentzian: t_m must be > 0");
    if (!std::isfinite(drift)) throw std::invalid_argument("lorentzian: drift must be finite");
    SpectralFilter f;
    f.kind_ = Kind::Lorentzian;
    f.response_time_ = t_m;
    f.drift_ = drift;
    return f;
}

SpectralFilter SpectralFilter::tabulated(ComplexSpectrum table, double drift) {
    if (table.samples.size() != table.grid.count || table.grid.count < 4)
        throw std::invalid_argument("tabulated filter: need at least 4 consistent samples");
    double peak = 0.0;
    for (const auto& z : table.samples) {
        if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
            throw std::invalid_argument("tabulated filter: non-finite transmission");
        peak = std::max(peak, std::abs(z));
    }
    if (peak > 1.0 + 1e-12)
        throw std::invalid_argument("tabulated filter: |F| = " + std::to_string(peak) +
                                    " > 1; a passive filter cannot amplify");
    if (!(peak > 0.0)) throw std::invalid_argument("tabulated filter: transmission is identically zero");
    SpectralFilter f;
    f.kind_ = Kind::Tabulated;
    f.drift_ = drift;
    f.response_time_ = 1.0 / (2.0 * half_power_width(table));
    f.table_ = std::make_shared<const ComplexSpectrum>(std::move(table));
    return f;
}

SpectralFilter SpectralFilter::with_drift(double drift) const {
    SpectralFilter f = *this;
    f.drift_ = drift;
    return f;
}

double SpectralFilter::settling_time() const {
    if (kind_ == Kind::Lorentzian) return kLorentzianSettling * response_time_;
    return 2.0 * kPi / table_->grid.step;
}

Complex SpectralFilter::transmission(double omega) const {
    const double w = omega - drift_;
    if (kind_ == Kind::Lorentzian) return 1.0 / Complex(1.0, -2.0 * w * response_time_);
    const auto& g = table_->grid;
    const double x = (w - g.origin) / g.step;
    if (x < 0.0 || x > static_cast<double>(g.count - 1)) return {};
    const auto j = std::min(static_cast<std::size_t>(x), g.count - 2);
    const double f = x - static_cast<double>(j);
    return (1.0 - f) * table_->samples[j] + f * table_->samples[j + 1];
}

ComplexEnvelope impulse_response(const SpectralFilter& filter, const Grid& grid) {
    const double t_m = filter.response_time();
    if (grid.step > t_m / 16.0)
        throw ResolutionError("impulse_response: step " + std::to_string(grid.step) + " exceeds t_m/16 = " +
                              std::to_string(t_m / 16.0) + "; refine the grid");
    if (grid.span() < 12.0 * t_m)
        throw ResolutionError("impulse_response: grid span " + std::to_string(grid.span()) +
                              " is shorter than 12·t_m = " + std::to_string(12.0 * t_m));

    const double drift = filter.drift();
    if (filter.kind() == SpectralFilter::Kind::Lorentzian) {
        return sample(grid, [&](double tau) {
            const double amp = heaviside(tau) * std::exp(-tau / (2.0 * t_m)) / (2.0 * t_m);
            return std::polar(amp, -drift * tau);
        });
    }
    ComplexEnvelope native = to_time_domain(*filter.table());
    if (drift != 0.0) {
        for (std::size_t i = 0; i < native.samples.size(); ++i)
            native.samples[i] *= std::polar(1.0, -drift * native.grid.at(i));
    }
    return interpolate(native, grid);
}

CausalityReport check_causality(const SpectralFilter& filter, double tol) {
    const double t_m = filter.response_time();
    const double step = t_m / 32.0;
    double half = kLorentzianSettling * t_m;
    if (filter.kind() == SpectralFilter::Kind::Tabulated) half = std::min(half, 0.5 * filter.settling_time());
    const auto n = static_cast<std::size_t>(std::ceil(half / step));
    const Grid grid{-static_cast<double>(n) * step, step, 2 * n + 1, {}};
    const auto response = impulse_response(filter, grid);

    double before = 0.0;
    double total = 0.0;
    for (std::size_t i = 0; i < grid.count; ++i) {
        const double p = std::norm(response.samples[i]);
        total += p;
        if (i < n) before += p;
    }
    CausalityReport r;
    r.pre_herald_mass = total > 0.0 ? before / total : 0.0;
    r.causal = tol >= 1.0 || r.pre_herald_mass < tol;
    return r;
}

DiscreteFilter::DiscreteFilter(const SpectralFilter& filter, double step, std::size_t input_count)
    : input_count_(input_count),
      buffer_(next_fast_size(input_count + static_cast<std::size_t>(std::ceil(filter.settling_time() / step)))) {
    if (!(step > 0.0)) throw std::invalid_argument("DiscreteFilter: step must be > 0");
    if (input_count == 0) throw std::invalid_argument("DiscreteFilter: empty input");
    const std::size_t m = buffer_.size();
    transfer_.resize(m);
    const double dw = 2.0 * kPi / (static_cast<double>(m) * step);
    for (std::size_t k = 0; k < m; ++k) {
        const double signed_k = k < (m + 1) / 2 ? static_cast<double>(k) : static_cast<double>(k) - static_cast<double>(m);
        transfer_[k] = filter.transmission(signed_k * dw);
    }
}

std::vector<Complex> DiscreteFilter::kernel() const {
    const std::size_t m = transfer_.size();
    FftBuffer buf(m);
    std::ranges::copy(transfer_, buf.data().begin());
    buf.forward();
    std::vector<Complex> h(m);
    for (std::size_t j = 0; j < m; ++j) h[j] = buf.data()[j] / static_cast<double>(m);
    return h;
}

void DiscreteFilter::apply(std::span<const Complex> in, std::span<Complex> out) {
    const std::size_t m = transfer_.size();
    if (in.size() != input_count_ || out.size() != m)
        throw std::invalid_argument("DiscreteFilter::apply: size mismatch");
    auto d = buffer_.data();
    std::ranges::copy(in, d.begin());
    std::fill(d.begin() + static_cast<std::ptrdiff_t>(in.size()), d.end(), Complex{});
    buffer_.backward();  // X_k = Σ x_n e^{+2πikn/M}
    for (std::size_t k = 0; k < m; ++k) d[k] *= transfer_[k];
    buffer_.forward();
    const double scale = 1.0 / static_cast<double>(m);
    for (std::size_t i = 0; i < m; ++i) out[i] = d[i] * scale;
}

void DiscreteFilter::apply_direct(std::span<const Complex> in, std::span<Complex> out,
                                  std::span<const Complex> kernel) const {
    const std::size_t m = transfer_.size();
    if (in.size() != input_count_ || out.size() != m || kernel.size() != m)
        throw std::invalid_argument("DiscreteFilter::apply_direct: size mismatch");
    for (std::size_t i = 0; i < m; ++i) {
        Complex acc{};
        for (std::size_t n = 0; n < in.size(); ++n) {
            if (in[n] == Complex{}) continue;
            const std::size_t j = i >= n ? i - n : i + m - n;
            acc += kernel[j] * in[n];
        }
        out[i] = acc;
    }
}

ComplexEnvelope filter_envelope(const SpectralFilter& filter, const ComplexEnvelope& input) {
    DiscreteFilter op(filter, input.grid.step, input.grid.count);
    std::vector<Complex> out(op.output_count());
    op.apply(input.samples, out);
    Grid g = input.grid;
    g.count = op.output_count();
    ComplexEnvelope result{g, std::move(out)};
    result.warnings = input.warnings;
    return result;
}

ComplexSpectrum read_filter_table(std::istream& in) {
    std::string line;
    std::size_t line_no = 0;
    bool header = false;
    std::vector<double> omega;
    std::vector<Complex> values;
    while (std::getline(in, line)) {
        ++line_no;
        const auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos) continue;
        if (line[first] == '#') {
            if (omega.empty()) header = true;
            continue;
        }
        if (!header)
            throw std::invalid_argument("filter table line " + std::to_string(line_no) +
                                        ": expected a '#' header line first");
        std::ranges::replace(line, ',', ' ');
        std::istringstream ls(line);
        double w = 0.0;
        double re = 0.0;
        double im = 0.0;
        std::string extra;
        if (!(ls >> w >> re >> im) || (ls >> extra))
            throw std::invalid_argument("filter table line " + std::to_string(line_no) +
                                        ": expected three numbers 'omega re im'");
        if (!omega.empty() && !(w > omega.back()))
            throw std::invalid_argument("filter table line " + std::to_string(line_no) +
                                        ": omega must be strictly increasing");
        omega.push_back(w);
        values.emplace_back(re, im);
    }
    if (omega.size() < 4) throw std::invalid_argument("filter table: need at least 4 rows");
    const double step = (omega.back() - omega.front()) / static_cast<double>(omega.size() - 1);
    for (std::size_t i = 1; i < omega.size(); ++i) {
        if (std::abs(omega[i] - omega[i - 1] - step) > 1e-6 * step)
            throw std::invalid_argument("filter table: omega must be uniformly spaced (row " + std::to_string(i + 1) +
                                        ")");
    }
    FrequencyGrid g = make_frequency_grid(step, omega.size());
    g.origin = omega.front();
    return {g, std::move(values)};
}

ComplexSpectrum read_filter_table(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open filter table " + path.string());
    return read_filter_table(in);
}

void write_filter_table(std::ostream& out, const ComplexSpectrum& table) {
    out << "# omega re_F im_F\n";
    char buf[96];
    for (std::size_t i = 0; i < table.grid.count; ++i) {
        std::snprintf(buf, sizeof buf, "%.17g %.17g %.17g\n", table.grid.at(i), table.samples[i].real(),
                      table.samples[i].imag());
        out << buf;
    }
}

}  // namespace heraldsim
