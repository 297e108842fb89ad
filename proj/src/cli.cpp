#include "heraldsim/cli.hpp"

#include "heraldsim/errors.hpp"
#include "heraldsim/filters.hpp"
#include "heraldsim/sources.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

namespace heraldsim::cli {

using nlohmann::json;
namespace fs = std::filesystem;

Format parse_format(std::string_view name) {
    if (name == "csv") return Format::Csv;
    if (name == "json") return Format::Json;
    throw ConfigError("unknown output format '" + std::string(name) + "' (expected csv or json)");
}

// ---------------------------------------------------------------- config

namespace {

std::size_t line_of_offset(std::string_view text, std::size_t offset) {
    offset = std::min(offset, text.size());
    return 1 + static_cast<std::size_t>(std::count(text.begin(), text.begin() + static_cast<std::ptrdiff_t>(offset), '\n'));
}

std::size_t line_of_key(std::string_view text, std::string_view key) {
    const std::string quoted = "\"" + std::string(key) + "\"";
    const auto pos = text.find(quoted);
    return pos == std::string_view::npos ? 0 : line_of_offset(text, pos);
}

class Reader {
public:
    explicit Reader(std::string_view text) : text_(text) {}

    [[noreturn]] void fail(const std::string& path, const std::string& what) const {
        const auto dot = path.find_last_of('.');
        const auto key = dot == std::string::npos ? path : path.substr(dot + 1);
        const auto line = line_of_key(text_, key);
        std::string where = line ? "line " + std::to_string(line) + ": " : "";
        throw ConfigError(where + "'" + path + "': " + what);
    }

    void allow(const json& obj, const std::string& path, std::initializer_list<const char*> keys) const {
        if (!obj.is_object()) fail(path, "expected an object");
        std::set<std::string> allowed(keys.begin(), keys.end());
        for (const auto& [k, v] : obj.items()) {
            if (!allowed.contains(k)) fail(path.empty() ? k : path + "." + k, "unknown key");
        }
    }

    double number(const json& obj, const std::string& path, const char* key) const {
        const auto full = path + "." + key;
        if (!obj.contains(key)) fail(full, "missing required key");
        return as_number(obj.at(key), full);
    }

    std::optional<double> optional_number(const json& obj, const std::string& path, const char* key) const {
        if (!obj.contains(key)) return std::nullopt;
        return as_number(obj.at(key), path + "." + key);
    }

    double as_number(const json& v, const std::string& path) const {
        if (!v.is_number()) fail(path, "expected a number");
        const double d = v.get<double>();
        if (!std::isfinite(d)) fail(path, "expected a finite number");
        return d;
    }

    std::string string(const json& obj, const std::string& path, const char* key, const char* fallback) const {
        if (!obj.contains(key)) {
            if (fallback) return fallback;
            fail(path + "." + key, "missing required key");
        }
        const auto& v = obj.at(key);
        if (!v.is_string()) fail(path + "." + key, "expected a string");
        return v.get<std::string>();
    }

private:
    std::string_view text_;
};

}  // namespace

ScenarioConfig parse_scenario(std::string_view text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ConfigError("line " + std::to_string(line_of_offset(text, e.byte == 0 ? 0 : e.byte - 1)) +
                          ": malformed config: " + e.what());
    }
    const Reader r(text);
    r.allow(doc, "", {"pair_model", "filter", "herald_instants", "atom", "grid", "imperfections", "output", "units",
                      "temporal_modulation"});
    ScenarioConfig c;

    if (!doc.contains("pair_model")) r.fail("pair_model", "missing required key");
    const auto& pm = doc.at("pair_model");
    r.allow(pm, "pair_model", {"type", "t_c", "t_u", "pair_rate", "t_coh"});
    c.pair_model.type = r.string(pm, "pair_model", "type", nullptr);
    if (c.pair_model.type == "finite_window") {
        c.pair_model.t_c = r.number(pm, "pair_model", "t_c");
        c.pair_model.t_u = r.number(pm, "pair_model", "t_u");
        if (pm.contains("pair_rate")) r.fail("pair_model.pair_rate", "not used by the finite_window model");
    } else if (c.pair_model.type == "cw") {
        c.pair_model.t_c = r.number(pm, "pair_model", "t_c");
        c.pair_model.pair_rate = r.number(pm, "pair_model", "pair_rate");
        if (pm.contains("t_u")) r.fail("pair_model.t_u", "not used by the cw model");
    } else if (c.pair_model.type == "ideal") {
        for (const char* k : {"t_c", "t_u", "pair_rate"})
            if (pm.contains(k)) r.fail(std::string("pair_model.") + k, "not used by the ideal model");
        c.pair_model.t_c = 1.0;
    } else {
        r.fail("pair_model.type", "expected finite_window, cw or ideal");
    }
    c.pair_model.t_coh = r.optional_number(pm, "pair_model", "t_coh");

    if (!doc.contains("filter")) r.fail("filter", "missing required key");
    const auto& f = doc.at("filter");
    r.allow(f, "filter", {"type", "t_m", "table"});
    c.filter.type = r.string(f, "filter", "type", "lorentzian");
    if (c.filter.type == "lorentzian") {
        c.filter.t_m = r.number(f, "filter", "t_m");
    } else if (c.filter.type == "table") {
        c.filter.table = r.string(f, "filter", "table", nullptr);
    } else {
        r.fail("filter.type", "expected lorentzian or table");
    }

    if (doc.contains("herald_instants")) {
        const auto& h = doc.at("herald_instants");
        if (!h.is_array()) r.fail("herald_instants", "expected an array of times");
        for (std::size_t i = 0; i < h.size(); ++i)
            c.herald_instants.push_back(r.as_number(h[i], "herald_instants[" + std::to_string(i) + "]"));
    }

    if (doc.contains("atom")) {
        const auto& a = doc.at("atom");
        r.allow(a, "atom", {"lifetime"});
        c.atom_lifetime = r.number(a, "atom", "lifetime");
    }
    if (doc.contains("grid")) {
        const auto& g = doc.at("grid");
        r.allow(g, "grid", {"step", "t_min", "t_max"});
        c.grid.step = r.optional_number(g, "grid", "step");
        c.grid.t_min = r.optional_number(g, "grid", "t_min");
        c.grid.t_max = r.optional_number(g, "grid", "t_max");
    }
    if (doc.contains("imperfections")) {
        const auto& im = doc.at("imperfections");
        r.allow(im, "imperfections", {"t_d", "omega_d"});
        c.imperfections.t_d = r.optional_number(im, "imperfections", "t_d");
        c.imperfections.omega_d = r.optional_number(im, "imperfections", "omega_d");
    }
    if (doc.contains("temporal_modulation")) {
        const auto& tm = doc.at("temporal_modulation");
        r.allow(tm, "temporal_modulation", {"omega_f"});
        c.omega_f = r.number(tm, "temporal_modulation", "omega_f");
    }
    if (doc.contains("output")) {
        const auto& o = doc.at("output");
        r.allow(o, "output", {"directory", "format"});
        c.output_directory = r.string(o, "output", "directory", "out");
        try {
            c.format = parse_format(r.string(o, "output", "format", "csv"));
        } catch (const ConfigError& e) {
            r.fail("output.format", e.what());
        }
    }
    if (doc.contains("units")) {
        const auto& u = doc.at("units");
        r.allow(u, "units", {"label"});
        c.unit_label = r.string(u, "units", "label", "");
    }

    auto positive = [&](std::optional<double> v, const char* path) {
        if (v && !(*v > 0.0)) r.fail(path, "must be > 0");
    };
    positive(c.pair_model.t_c, "pair_model.t_c");
    if (c.pair_model.type == "finite_window") {
        positive(c.pair_model.t_u, "pair_model.t_u");
        if (!(c.pair_model.t_u > c.pair_model.t_c)) r.fail("pair_model.t_u", "must exceed t_c");
    }
    if (c.pair_model.type == "cw") {
        positive(c.pair_model.pair_rate, "pair_model.pair_rate");
        if (!(c.pair_model.pair_rate * c.pair_model.t_c < 1.0)) r.fail("pair_model.pair_rate", "n̄·t_c must be < 1");
    }
    if (c.pair_model.type == "ideal" && !(c.grid.t_min && c.grid.t_max && c.grid.step))
        r.fail("grid", "the ideal model needs grid.step, grid.t_min and grid.t_max");
    if (c.grid.t_min && c.grid.t_max && !(*c.grid.t_max > *c.grid.t_min)) r.fail("grid.t_max", "must exceed grid.t_min");
    if (c.filter.type == "lorentzian") positive(c.filter.t_m, "filter.t_m");
    positive(c.pair_model.t_coh, "pair_model.t_coh");
    positive(c.atom_lifetime, "atom.lifetime");
    positive(c.grid.step, "grid.step");
    positive(c.imperfections.t_d, "imperfections.t_d");
    if (c.omega_f && !(*c.omega_f > 0.0)) r.fail("temporal_modulation.omega_f", "must be > 0");
    return c;
}

ScenarioConfig load_scenario(const fs::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file " + path.string());
    std::stringstream ss;
    ss << in.rdbuf();
    auto c = parse_scenario(ss.str());
    if (!c.filter.table.empty() && c.filter.table.is_relative()) c.filter.table = path.parent_path() / c.filter.table;
    return c;
}

// ---------------------------------------------------------------- output

void Dataset::add(std::string name, std::vector<double> values) {
    if (!columns.empty() && values.size() != columns.front().size())
        throw std::invalid_argument("Dataset: column '" + name + "' has a different length");
    names.push_back(std::move(name));
    columns.push_back(std::move(values));
}

std::string format_number(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.12g", v == 0.0 ? 0.0 : v);  // no "-0"
    return buf;
}

std::string to_csv(const Dataset& data) {
    std::string out;
    for (std::size_t j = 0; j < data.names.size(); ++j) out += (j ? "," : "") + data.names[j];
    out += '\n';
    for (std::size_t i = 0; i < data.rows(); ++i) {
        for (std::size_t j = 0; j < data.columns.size(); ++j) {
            if (j) out += ',';
            out += format_number(data.columns[j][i]);
        }
        out += '\n';
    }
    return out;
}

std::string to_json(const Dataset& data) {
    std::string out = "[\n";
    for (std::size_t i = 0; i < data.rows(); ++i) {
        out += "  {";
        for (std::size_t j = 0; j < data.columns.size(); ++j) {
            if (j) out += ", ";
            out += "\"" + data.names[j] + "\": " + format_number(data.columns[j][i]);
        }
        out += i + 1 < data.rows() ? "},\n" : "}\n";
    }
    out += "]\n";
    return out;
}

void write_file_atomic(const fs::path& path, std::string_view content) {
    if (path.has_parent_path()) fs::create_directories(path.parent_path());
    fs::path tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw std::runtime_error("cannot write " + tmp.string());
        out.write(content.data(), static_cast<std::streamsize>(content.size()));
        if (!out) throw std::runtime_error("write failed for " + tmp.string());
    }
    fs::rename(tmp, path);
}

fs::path write_dataset(const Dataset& data, const fs::path& stem, Format format) {
    fs::path p = stem;
    p += format == Format::Csv ? ".csv" : ".json";
    write_file_atomic(p, format == Format::Csv ? to_csv(data) : to_json(data));
    return p;
}

Dataset shape_dataset(const ComplexEnvelope& shape, double time_scale) {
    const double amp = 1.0 / std::sqrt(time_scale);
    std::vector<double> t, re, im, in;
    for (std::size_t i = 0; i < shape.samples.size(); ++i) {
        t.push_back(shape.grid.at(i) * time_scale);
        re.push_back(shape.samples[i].real() * amp);
        im.push_back(shape.samples[i].imag() * amp);
        in.push_back(std::norm(shape.samples[i]) / time_scale);
    }
    Dataset d;
    d.add("t", std::move(t));
    d.add("re", std::move(re));
    d.add("im", std::move(im));
    d.add("intensity", std::move(in));
    return d;
}

// ---------------------------------------------------------------- shared pieces

ComplexEnvelope cw_shape_window(double t_prime, double t_c, double t_m, double step) {
    const double slow = std::max(t_c, t_m);
    const Grid g = make_grid_with_step(t_prime - 22.0 * slow - 22.0 * t_c, t_prime + 22.0 * t_c, step);
    return cw_conditional_envelope(g, t_prime, t_c, t_m);
}

ComplexEnvelope pad_zeros(const ComplexEnvelope& shape, double before, double after) {
    const double h = shape.grid.step;
    const auto nb = static_cast<std::size_t>(std::ceil(std::max(before, 0.0) / h));
    const auto na = static_cast<std::size_t>(std::ceil(std::max(after, 0.0) / h));
    Grid g = shape.grid;
    g.origin -= static_cast<double>(nb) * h;
    g.count += nb + na;
    std::vector<Complex> s(g.count, Complex{});
    std::ranges::copy(shape.samples, s.begin() + static_cast<std::ptrdiff_t>(nb));
    ComplexEnvelope r{g, std::move(s)};
    r.warnings = shape.warnings;
    return r;
}

ExcitationCurve cw_excitation(double epsilon, double step) {
    if (!(epsilon > 0.0)) throw std::invalid_argument("epsilon must be > 0");
    const auto shape = pad_zeros(cw_shape_window(0.0, 1.0, epsilon, step), 0.0, 25.0 * epsilon);
    return excitation_curve(shape, AtomModel{epsilon});
}

std::string regime_report(const std::vector<RegimeCondition>& conditions) {
    std::string out;
    for (const auto status : {RegimeStatus::Fail, RegimeStatus::Warn})
        for (const auto& c : conditions)
            if (c.status == status)
                out += (status == RegimeStatus::Fail ? "REGIME VIOLATION: " : "regime warning: ") + c.condition +
                       " has ratio " + format_number(c.margin) + "\n";
    char line[160];
    std::snprintf(line, sizeof line, "%-20s %-18s %s\n", "condition", "ratio", "status");
    out += line;
    for (const auto& c : conditions) {
        std::snprintf(line, sizeof line, "%-20s %-18s %s\n", c.condition.c_str(), format_number(c.margin).c_str(),
                      to_string(c.status).c_str());
        out += line;
    }
    return out;
}

namespace {

struct WindowedRun {
    JointAmplitude unfiltered;
    JointAmplitude filtered;
    double r_frequency = 0.0;
};

WindowedRun run_grid_pipeline(JointAmplitude psi, const SpectralFilter& filter) {
    const double r = heralding_probability(psi, filter);
    auto filtered = apply_filter(psi, filter);
    return {std::move(psi), std::move(filtered), r};
}

std::vector<double> normalized_intensity_column(const ComplexEnvelope& shape, const Grid& target) {
    // Shapes here share the target's origin and step; only the count differs.
    std::vector<double> col(target.count, 0.0);
    double peak = 0.0;
    for (std::size_t i = 0; i < shape.samples.size() && i < target.count; ++i) {
        col[i] = std::norm(shape.samples[i]);
        peak = std::max(peak, col[i]);
    }
    if (peak > 0.0)
        for (auto& v : col) v /= peak;
    return col;
}

}  // namespace

// ---------------------------------------------------------------- scenario

ScenarioReport run_scenario(const ScenarioConfig& cfg) {
    const auto& pm = cfg.pair_model;
    const double s = pm.t_c;  // internal time unit
    const std::string unit = !cfg.unit_label.empty() ? cfg.unit_label : (s == 1.0 ? "t_c" : "input units");
    auto in = [&](double t) { return t / s; };

    SpectralFilter filter = [&] {
        const double drift = cfg.imperfections.omega_d.value_or(0.0) * s;
        if (cfg.filter.type == "table") {
            auto table = read_filter_table(cfg.filter.table);
            table.grid.origin *= s;
            table.grid.step *= s;
            table.grid.dual_origin /= s;
            return SpectralFilter::tabulated(std::move(table), drift);
        }
        return SpectralFilter::lorentzian(in(cfg.filter.t_m), drift);
    }();
    const double t_m = filter.response_time();

    std::optional<FiniteWindowExponential> window;
    std::optional<StationaryCW> cw;
    if (pm.type == "finite_window") window = make_finite_window(1.0, in(pm.t_u));
    if (pm.type == "cw") cw = make_stationary_cw(pm.pair_rate * s, 1.0);

    RegimeParams rp;
    rp.t_c = pm.type == "ideal" ? in(*cfg.grid.step) : 1.0;
    rp.t_m = t_m;
    if (window) rp.t_u = window->t_u;
    if (cfg.imperfections.t_d) rp.t_d = in(*cfg.imperfections.t_d);
    if (cfg.imperfections.omega_d && *cfg.imperfections.omega_d != 0.0) rp.omega_d = *cfg.imperfections.omega_d * s;
    if (cw) rp.pair_rate = cw->pair_rate;
    if (pm.t_coh) rp.t_coh = in(*pm.t_coh);
    const auto regime = validate_regime(rp);

    ScenarioReport rep;
    json& sum = rep.summary;
    std::ostringstream body;
    const fs::path dir = cfg.output_directory;

    sum["unit"] = unit;
    sum["model"] = pm.type;
    sum["regime"] = json::array();
    for (const auto& c : regime)
        sum["regime"].push_back({{"condition", c.condition}, {"ratio", c.margin}, {"status", to_string(c.status)}});

    body << "model: " << pm.type;
    if (pm.type != "ideal") body << ", t_c = " << format_number(pm.t_c);
    if (window) body << ", t_u = " << format_number(pm.t_u);
    if (cw) body << ", pair rate = " << format_number(pm.pair_rate);
    body << "\nfilter: " << cfg.filter.type << ", t_m = " << format_number(t_m * s);
    if (filter.drift() != 0.0) body << ", drift omega_d = " << format_number(filter.drift() / s);
    body << "\ntimes in " << unit << "\n\n";

    std::vector<ComplexEnvelope> shapes;
    std::vector<double> heralds;

    if (window || pm.type == "ideal") {
        const double step = cfg.grid.step ? in(*cfg.grid.step) : std::min(0.125, t_m / 16.0);
        Grid g;
        JointAmplitude psi = [&] {
            if (window) {
                g = make_grid_with_step(0.0, window->t_u, step);
                return joint_amplitude(*window, g);
            }
            g = make_grid_with_step(in(*cfg.grid.t_min), in(*cfg.grid.t_max), step);
            return ideal_joint_amplitude(g);
        }();
        const auto run = run_grid_pipeline(std::move(psi), filter);
        const double r_time = run.filtered.norm_squared();
        sum["R_exact"] = run.r_frequency;
        sum["R_time_domain"] = r_time;
        body << "heralding probability R (exact) = " << format_number(run.r_frequency) << "\n";
        body << "  time-domain filtered norm^2 = " << format_number(r_time) << " (relative difference "
             << format_number(std::abs(r_time - run.r_frequency) / run.r_frequency) << ")\n";
        if (window) {
            const auto est = heralding_probability_estimate(filter.passband(), spectral_widths(*window).omega_u);
            sum["R_estimate"] = est.value;
            body << "heralding probability estimate omega_m/omega_u = t_c/t_m = " << format_number(est.value) << "\n";
            for (const auto& w : est.warnings) body << "  warning: " << w << "\n";
            if (cfg.omega_f) {
                const auto mod = temporal_modulation_rate_estimate(t_m, window->t_u, *cfg.omega_f * s, 1.0);
                sum["modulation_rate_estimate"] = mod.rate;
                sum["filtering_enhancement"] = mod.enhancement;
                body << "temporal-modulation rate estimate R' = " << format_number(mod.rate)
                     << ", enhancement R/R' = " << format_number(mod.enhancement) << "\n";
                for (const auto& w : mod.warnings) body << "  warning: " << w << "\n";
            }
        }
        for (double t : cfg.herald_instants) {
            auto h = conditional_shape(run.filtered, in(t));
            for (const auto& w : h.warnings) body << "  warning: " << w << "\n";
            heralds.push_back(h.herald_instant);
            shapes.push_back(std::move(h.shape));
        }
    } else {
        const auto r = cw_heralding_probability(1.0, t_m);
        sum["R_exact"] = r.exact;
        sum["R_estimate"] = r.asymptotic;
        body << "heralding probability R (exact) = " << format_number(r.exact) << "\n";
        body << "heralding probability estimate 2t_c/t_m = " << format_number(r.asymptotic) << "\n";
        if (filter.kind() != SpectralFilter::Kind::Lorentzian)
            body << "  note: stationary closed forms assume a Lorentzian; the table's response time is used\n";
        const double step = cfg.grid.step ? in(*cfg.grid.step) : std::min(1.0, t_m) / 16.0;
        for (double t : cfg.herald_instants) {
            heralds.push_back(in(t));
            shapes.push_back(cw_shape_window(in(t), 1.0, t_m, step));
        }
    }

    // g² against t - t' around a herald.
    {
        const double nbar = cw ? cw->pair_rate : (window ? 1.0 / window->t_u : 0.0);
        if (nbar > 0.0) {
            const Grid dt = make_grid_with_step(-20.0 * t_m, 20.0 * t_m, 1.0 / 16.0);
            std::vector<double> x, y;
            for (std::size_t i = 0; i < dt.count; ++i) {
                x.push_back(dt.at(i) * s);
                y.push_back(g2_cross(dt.at(i), 0.0, nbar, 1.0, t_m));
            }
            const double peak = g2_cross(0.0, 0.0, nbar, 1.0, t_m);
            sum["g2_peak"] = peak;
            body << "g2 peak at t = t' = " << format_number(peak) << " (pair rate " << format_number(nbar / s)
                 << (window ? ", taken as 1/t_u" : "") << ")\n";
            Dataset d;
            d.add("dt", std::move(x));
            d.add("g2", std::move(y));
            rep.files.push_back(write_dataset(d, dir / "g2", cfg.format));
        }
    }

    sum["shapes"] = json::array();
    for (std::size_t k = 0; k < shapes.size(); ++k) {
        const auto& shape = shapes[k];
        const std::string tag = std::to_string(k + 1);
        rep.files.push_back(write_dataset(shape_dataset(shape, s), dir / ("shape_" + tag), cfg.format));
        json entry = {{"herald_instant", heralds[k] * s}};
        body << "\nherald t' = " << format_number(heralds[k] * s) << " -> shape_" << tag << "\n";

        if (cfg.imperfections.t_d) {
            RealEnvelope ideal{shape.grid, intensity(shape.samples)};
            const double f = intensity_fidelity(ideal, apply_detector_jitter(ideal, in(*cfg.imperfections.t_d)));
            entry["jitter_fidelity"] = f;
            body << "  intensity fidelity with detector jitter t_d = " << format_number(*cfg.imperfections.t_d)
                 << ": " << format_number(f) << "\n";
        }
        if (filter.drift() != 0.0) {
            const double c = spectral_centroid(shape);
            entry["spectral_centroid"] = c / s;
            body << "  heralded spectrum centroid " << format_number(c / s) << " (expected shift "
                 << format_number(heralded_spectrum_shift(filter.drift()) / s) << ")\n";
        }
        if (cfg.atom_lifetime) {
            const AtomModel atom = make_atom(in(*cfg.atom_lifetime));
            const auto padded = pad_zeros(shape, 2.0 * atom.lifetime, 25.0 * atom.lifetime);
            const auto curve = excitation_curve(padded, atom);
            entry["p_max"] = curve.p_max;
            entry["t_peak"] = curve.t_peak * s;
            body << "  atom excitation p_max = " << format_number(curve.p_max) << " at t = "
                 << format_number(curve.t_peak * s) << "\n";
            if (cw && std::abs(atom.lifetime - t_m) <= 1e-9 * t_m)
                body << "  matched closed form eps/(eps+1/2) = " << format_number(p_max_closed_form(t_m)) << "\n";
            for (const auto& w : curve.warnings) body << "  warning: " << w << "\n";
            Dataset d;
            std::vector<double> t;
            for (std::size_t i = 0; i < curve.grid.count; ++i) t.push_back(curve.grid.at(i) * s);
            d.add("t", std::move(t));
            d.add("p", curve.p);
            rep.files.push_back(write_dataset(d, dir / ("excitation_" + tag), cfg.format));
        }
        sum["shapes"].push_back(entry);
    }

    rep.text = regime_report(regime) + "\n" + body.str();
    const fs::path report = dir / "report.txt";
    write_file_atomic(report, rep.text);
    rep.files.push_back(report);
    const fs::path summary = dir / "summary.json";
    write_file_atomic(summary, sum.dump(2) + "\n");
    rep.files.push_back(summary);
    return rep;
}

// ---------------------------------------------------------------- figures

namespace {

const FiniteWindowExponential kFigureWindow{1.0, 150.0};
constexpr double kFigureTm = 10.0;
constexpr double kFigureStep = 0.125;

std::vector<fs::path> figure3(bool marginals, const fs::path& dir, Format format) {
    const Grid g = make_grid_with_step(0.0, kFigureWindow.t_u, kFigureStep);
    const auto filter = SpectralFilter::lorentzian(kFigureTm);
    auto psi = joint_amplitude(kFigureWindow, g);
    const auto filtered = apply_filter(psi, filter);

    Dataset d;
    if (marginals) {
        const auto before = idler_marginal(psi);
        const auto after = idler_marginal(filtered);
        std::vector<double> t, b(after.grid.count, 0.0);
        for (std::size_t i = 0; i < after.grid.count; ++i) t.push_back(after.grid.at(i));
        std::ranges::copy(before.samples, b.begin());
        d.add("t", std::move(t));
        d.add("before", std::move(b));
        d.add("after", after.samples);
        return {write_dataset(d, dir / "fig3a", format)};
    }

    std::vector<double> t;
    for (std::size_t i = 0; i < g.count; ++i) t.push_back(g.at(i));
    d.add("t", std::move(t));
    for (double herald : {7.0, 60.0, 130.0}) {
        const auto shaped = conditional_shape(filtered, herald);
        const auto reference = signal_slice(psi, herald);
        const std::string tag = format_number(herald);
        d.add("filtered_t" + tag, normalized_intensity_column(shaped.shape, g));
        d.add("unfiltered_t" + tag, normalized_intensity_column(reference.shape, g));
    }
    return {write_dataset(d, dir / "fig3b", format)};
}

std::vector<fs::path> figure4(const fs::path& dir, Format format) {
    const auto curve = cw_excitation(10.0, 1.0 / 16.0);
    const auto shape = pad_zeros(cw_shape_window(0.0, 1.0, 10.0, 1.0 / 16.0), 0.0, 250.0);
    Dataset d;
    std::vector<double> t;
    for (std::size_t i = 0; i < curve.grid.count; ++i) t.push_back(curve.grid.at(i));
    d.add("t", std::move(t));
    d.add("p", curve.p);
    d.add("intensity", intensity(shape.samples));
    return {write_dataset(d, dir / "fig4", format)};
}

}  // namespace

std::vector<double> figure5_epsilons() {
    std::vector<double> eps{0.5};
    for (int j = -5; j <= 40; ++j) eps.push_back(std::pow(10.0, j / 20.0));
    return eps;
}

namespace {

std::vector<fs::path> figure5(const fs::path& dir, Format format) {
    std::vector<double> eps, r, p;
    for (double e : figure5_epsilons()) {
        eps.push_back(e);
        r.push_back(cw_heralding_probability(1.0, e).exact);
        p.push_back(cw_excitation(e, std::min(1.0, e) / 16.0).p_max);
    }
    Dataset d;
    d.add("epsilon", std::move(eps));
    d.add("R", std::move(r));
    d.add("p_max", std::move(p));
    return {write_dataset(d, dir / "fig5", format)};
}

}  // namespace

std::vector<fs::path> reproduce_figure(std::string_view id, const fs::path& dir, Format format) {
    if (id == "fig3a") return figure3(true, dir, format);
    if (id == "fig3b") return figure3(false, dir, format);
    if (id == "fig4") return figure4(dir, format);
    if (id == "fig5") return figure5(dir, format);
    if (id == "all") {
        std::vector<fs::path> out;
        for (const char* f : {"fig3a", "fig3b", "fig4", "fig5"}) {
            auto part = reproduce_figure(f, dir, format);
            out.insert(out.end(), part.begin(), part.end());
        }
        return out;
    }
    throw ConfigError("unknown figure '" + std::string(id) + "' (expected fig3a, fig3b, fig4, fig5 or all)");
}

}  // namespace heraldsim::cli
