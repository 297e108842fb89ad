// heraldsim command-line front end.
//
// Exit codes: 0 success, 2 configuration/argument error, 3 resolution,
// containment or no-herald error, 1 anything else.

#include "heraldsim/atom.hpp"
#include "heraldsim/cli.hpp"
#include "heraldsim/errors.hpp"
#include "heraldsim/filters.hpp"
#include "heraldsim/heralding.hpp"
#include "heraldsim/sources.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <iostream>
#include <optional>

namespace hs = heraldsim;
namespace cli = heraldsim::cli;

namespace {

struct Units {
    std::string label;
    double tc = 1.0;  // t_c in the chosen unit; internal times are t / tc
};

void add_units(CLI::App* sub, Units& u) {
    sub->add_option("--unit", u.label, "Label of the time unit used by every time argument and output");
    sub->add_option("--tc", u.tc, "Pair correlation time t_c in that unit")->check(CLI::PositiveNumber);
}

void emit(const cli::Dataset& d, const std::string& out, const std::string& format) {
    const auto f = cli::parse_format(format);
    if (out.empty()) {
        std::cout << (f == cli::Format::Csv ? cli::to_csv(d) : cli::to_json(d));
        return;
    }
    cli::write_file_atomic(out, f == cli::Format::Csv ? cli::to_csv(d) : cli::to_json(d));
    std::cerr << "wrote " << out << "\n";
}

std::string unit_name(const Units& u) { return u.label.empty() ? (u.tc == 1.0 ? "t_c" : "input units") : u.label; }

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Heralded single-photon temporal shaping simulator"};
    app.require_subcommand(1);

    Units units;
    std::string model = "cw";
    double t_m = 10.0;
    double t_u = 150.0;
    std::optional<double> herald;
    std::optional<double> step;
    std::string out;
    std::string format = "csv";

    // shape
    auto* shape = app.add_subcommand("shape", "Heralded conditional shape");
    add_units(shape, units);
    shape->add_option("--model", model, "cw (closed form) or window (grid pipeline)")
        ->check(CLI::IsMember({"cw", "window"}));
    shape->add_option("--tm", t_m, "Filter response time")->check(CLI::PositiveNumber);
    shape->add_option("--tu", t_u, "Pair window duration (window model)")->check(CLI::PositiveNumber);
    shape->add_option("--herald", herald, "Herald instant t'");
    shape->add_option("--step", step, "Grid step")->check(CLI::PositiveNumber);
    shape->add_option("--out", out, "Output file (stdout if omitted)");
    shape->add_option("--format", format)->check(CLI::IsMember({"csv", "json"}));

    // herald-prob
    auto* prob = app.add_subcommand("herald-prob", "Heralding probability, exact and estimated");
    add_units(prob, units);
    prob->add_option("--model", model)->check(CLI::IsMember({"cw", "window"}));
    prob->add_option("--tm", t_m)->check(CLI::PositiveNumber);
    prob->add_option("--tu", t_u)->check(CLI::PositiveNumber);
    prob->add_option("--step", step)->check(CLI::PositiveNumber);

    // g2
    double nbar = 0.01;
    std::optional<double> span;
    auto* g2 = app.add_subcommand("g2", "Signal / filtered-idler cross-correlation g2(t - t')");
    add_units(g2, units);
    g2->add_option("--nbar", nbar, "Pair rate (per time unit)")->check(CLI::PositiveNumber);
    g2->add_option("--tm", t_m)->check(CLI::PositiveNumber);
    g2->add_option("--span", span, "Half-width of the t - t' range (default 20 t_m)")->check(CLI::PositiveNumber);
    g2->add_option("--step", step)->check(CLI::PositiveNumber);
    g2->add_option("--out", out);
    g2->add_option("--format", format)->check(CLI::IsMember({"csv", "json"}));

    // atom
    std::optional<double> epsilon;
    std::optional<double> lifetime;
    auto* atom = app.add_subcommand("atom", "Atom excitation by the stationary heralded shape");
    add_units(atom, units);
    atom->add_option("--epsilon", epsilon, "t_m/t_c (overrides --tm)")->check(CLI::PositiveNumber);
    atom->add_option("--tm", t_m)->check(CLI::PositiveNumber);
    atom->add_option("--lifetime", lifetime, "Atom radiative lifetime (default: matched to t_m)")
        ->check(CLI::PositiveNumber);
    atom->add_option("--step", step)->check(CLI::PositiveNumber);
    atom->add_option("--out", out);
    atom->add_option("--format", format)->check(CLI::IsMember({"csv", "json"}));

    // validate
    std::optional<double> tu_opt, td, omega_d, rate, tcoh;
    auto* validate = app.add_subcommand("validate", "Check the shaping-regime conditions");
    add_units(validate, units);
    validate->add_option("--tm", t_m)->check(CLI::PositiveNumber);
    validate->add_option("--tu", tu_opt);
    validate->add_option("--td", td, "Detector jitter");
    validate->add_option("--omega-d", omega_d, "Filter drift (rad per time unit)");
    validate->add_option("--nbar", rate, "Pair rate");
    validate->add_option("--tcoh", tcoh, "Pump coherence time");

    // figure
    std::string figure_id;
    std::string dir = "figures";
    auto* figure = app.add_subcommand("figure", "Write a figure dataset");
    figure->add_option("id", figure_id, "fig3a, fig3b, fig4, fig5 or all")->required();
    figure->add_option("--out", dir, "Output directory");
    figure->add_option("--format", format)->check(CLI::IsMember({"csv", "json"}));

    // run
    std::string config;
    std::optional<std::string> run_dir;
    std::optional<std::string> run_format;
    auto* run = app.add_subcommand("run", "Run a scenario config file");
    run->add_option("config", config, "JSON scenario")->required();
    run->add_option("--out", run_dir, "Override the output directory");
    run->add_option("--format", run_format)->check(CLI::IsMember({"csv", "json"}));

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    const double tc = units.tc;
    auto in = [&](double t) { return t / tc; };

    try {
        if (*shape) {
            const double tm = in(t_m);
            hs::ComplexEnvelope result;
            if (model == "cw") {
                const double h = step ? in(*step) : std::min(1.0, tm) / 16.0;
                result = cli::cw_shape_window(in(herald.value_or(0.0)), 1.0, tm, h);
            } else {
                const auto window = hs::make_finite_window(1.0, in(t_u));
                const hs::Grid g = hs::make_grid_with_step(0.0, window.t_u, step ? in(*step) : std::min(0.125, tm / 16.0));
                const auto filtered = hs::apply_filter(hs::joint_amplitude(window, g), hs::SpectralFilter::lorentzian(tm));
                auto h = hs::conditional_shape(filtered, in(herald.value_or(t_u / 2.0)));
                for (const auto& w : h.warnings) std::cerr << "warning: " << w << "\n";
                result = std::move(h.shape);
            }
            emit(cli::shape_dataset(result, tc), out, format);
        } else if (*prob) {
            const double tm = in(t_m);
            if (model == "cw") {
                const auto r = hs::cw_heralding_probability(1.0, tm);
                std::cout << "R_exact = " << cli::format_number(r.exact) << "\n"
                          << "R_asymptotic = " << cli::format_number(r.asymptotic) << "\n";
            } else {
                const auto window = hs::make_finite_window(1.0, in(t_u));
                const auto filter = hs::SpectralFilter::lorentzian(tm);
                const hs::Grid g = hs::make_grid_with_step(0.0, window.t_u, step ? in(*step) : std::min(0.125, tm / 16.0));
                const auto psi = hs::joint_amplitude(window, g);
                const double r = hs::heralding_probability(psi, filter);
                const double r_time = hs::apply_filter(psi, filter).norm_squared();
                const auto est = hs::heralding_probability_estimate(filter.passband(), hs::spectral_widths(window).omega_u);
                std::cout << "R_exact = " << cli::format_number(r) << "\n"
                          << "R_time_domain = " << cli::format_number(r_time) << "\n"
                          << "R_estimate = " << cli::format_number(est.value) << "\n";
                for (const auto& w : est.warnings) std::cerr << "warning: " << w << "\n";
            }
        } else if (*g2) {
            const double tm = in(t_m);
            const double half = span ? in(*span) : 20.0 * tm;
            const hs::Grid g = hs::make_grid_with_step(-half, half, step ? in(*step) : 1.0 / 16.0);
            std::vector<double> x, y;
            for (std::size_t i = 0; i < g.count; ++i) {
                x.push_back(g.at(i) * tc);
                y.push_back(hs::g2_cross(g.at(i), 0.0, nbar * tc, 1.0, tm));
            }
            cli::Dataset d;
            d.add("dt", std::move(x));
            d.add("g2", std::move(y));
            emit(d, out, format);
        } else if (*atom) {
            const double tm = epsilon ? *epsilon : in(t_m);
            const double tau = lifetime ? in(*lifetime) : tm;
            const double h = step ? in(*step) : std::min({1.0, tm, tau}) / 16.0;
            const auto shape = cli::pad_zeros(cli::cw_shape_window(0.0, 1.0, tm, h), 0.0, 25.0 * tau);
            const auto curve = hs::excitation_curve(shape, hs::make_atom(tau));
            std::cerr << "p_max = " << cli::format_number(curve.p_max) << " at t = "
                      << cli::format_number(curve.t_peak * tc) << " " << unit_name(units) << "\n";
            if (std::abs(tau - tm) <= 1e-12 * tm)
                std::cerr << "closed form eps/(eps+1/2) = " << cli::format_number(hs::p_max_closed_form(tm)) << "\n";
            for (const auto& w : curve.warnings) std::cerr << "warning: " << w << "\n";
            cli::Dataset d;
            std::vector<double> t;
            for (std::size_t i = 0; i < curve.grid.count; ++i) t.push_back(curve.grid.at(i) * tc);
            d.add("t", std::move(t));
            d.add("p", curve.p);
            if (!out.empty()) emit(d, out, format);
        } else if (*validate) {
            hs::RegimeParams p;
            p.t_c = 1.0;
            p.t_m = in(t_m);
            if (tu_opt) p.t_u = in(*tu_opt);
            if (td) p.t_d = in(*td);
            if (omega_d) p.omega_d = *omega_d * tc;
            if (rate) p.pair_rate = *rate * tc;
            if (tcoh) p.t_coh = in(*tcoh);
            std::cout << cli::regime_report(hs::validate_regime(p));
        } else if (*figure) {
            for (const auto& f : cli::reproduce_figure(figure_id, dir, cli::parse_format(format)))
                std::cerr << "wrote " << f.string() << "\n";
        } else if (*run) {
            auto cfg = cli::load_scenario(config);
            if (run_dir) cfg.output_directory = *run_dir;
            if (run_format) cfg.format = cli::parse_format(*run_format);
            const auto rep = cli::run_scenario(cfg);
            std::cout << rep.text;
        }
    } catch (const cli::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "invalid argument: " << e.what() << "\n";
        return 2;
    } catch (const hs::ResolutionError& e) {
        std::cerr << "resolution error: " << e.what() << "\n";
        return 3;
    } catch (const hs::ContainmentError& e) {
        std::cerr << "containment error: " << e.what() << "\n";
        return 3;
    } catch (const hs::NoHeraldError& e) {
        std::cerr << "no herald: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
