#pragma once

// Scenario configs, figure datasets and file emission for the command line.

#include "heraldsim/atom.hpp"
#include "heraldsim/heralding.hpp"

#include <json.hpp>

#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace heraldsim::cli {

/// Malformed or inconsistent configuration (exit code 2).
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

enum class Format { Csv, Json };

Format parse_format(std::string_view name);

/// All times in a config share one unit; the pair correlation time t_c is
/// the internal unit, so outputs come back in the unit of the inputs.
struct PairModelSpec {
    std::string type = "finite_window";  // finite_window | cw | ideal
    double t_c = 1.0;
    double t_u = 150.0;
    double pair_rate = 0.0;
    std::optional<double> t_coh;  // pump coherence time, regime check only
};

struct FilterSpec {
    std::string type = "lorentzian";  // lorentzian | table
    double t_m = 10.0;
    std::filesystem::path table;      // "omega re im" rows, ω in rad per time unit
};

struct GridSpec {
    std::optional<double> step;
    std::optional<double> t_min;  // required for the ideal model
    std::optional<double> t_max;
};

struct Imperfections {
    std::optional<double> t_d;
    std::optional<double> omega_d;
};

struct ScenarioConfig {
    PairModelSpec pair_model;
    FilterSpec filter;
    std::vector<double> herald_instants;
    std::optional<double> atom_lifetime;
    GridSpec grid;
    Imperfections imperfections;
    std::optional<double> omega_f;  // post-selection window for the modulation estimate
    std::filesystem::path output_directory = "out";
    Format format = Format::Csv;
    std::string unit_label;
};

/// Parses a JSON scenario. Unknown keys, wrong types and missing fields
/// raise ConfigError naming the key path and its line in `text`.
ScenarioConfig parse_scenario(std::string_view text);

/// Reads and parses a file; a relative filter table path is resolved
/// against the config's directory.
ScenarioConfig load_scenario(const std::filesystem::path& path);

struct ScenarioReport {
    std::string text;
    nlohmann::json summary;
    std::vector<std::filesystem::path> files;
};

/// Runs a scenario and writes its datasets plus report.txt and summary.json
/// into the output directory.
ScenarioReport run_scenario(const ScenarioConfig& config);

/// fig3a | fig3b | fig4 | fig5 | all. Returns the files written.
std::vector<std::filesystem::path> reproduce_figure(std::string_view id, const std::filesystem::path& directory,
                                                    Format format);

/// ε values of the fig5 sweep: 0.5 and 10^{j/20} for j = -5..40.
std::vector<double> figure5_epsilons();

/// Named columns of equal length.
struct Dataset {
    std::vector<std::string> names;
    std::vector<std::vector<double>> columns;

    void add(std::string name, std::vector<double> values);
    [[nodiscard]] std::size_t rows() const { return columns.empty() ? 0 : columns.front().size(); }
};

/// "%.12g", the number format used in every emitted file.
std::string format_number(double v);

std::string to_csv(const Dataset& data);
std::string to_json(const Dataset& data);

/// Writes `stem` + ".csv" or ".json" atomically and returns the path.
std::filesystem::path write_dataset(const Dataset& data, const std::filesystem::path& stem, Format format);

/// Writes via a sibling temporary file and rename.
void write_file_atomic(const std::filesystem::path& path, std::string_view content);

/// Shape columns t, re, im, intensity; times scaled by `time_scale`.
Dataset shape_dataset(const ComplexEnvelope& shape, double time_scale = 1.0);

/// Closed-form stationary heralded shape over a window that contains it
/// (intensity below 1e-9 of peak at both edges), unit-normalised.
ComplexEnvelope cw_shape_window(double t_prime, double t_c, double t_m, double step);

/// Appends zero samples so that an excitation curve can relax after the
/// pulse; `before` and `after` are durations.
ComplexEnvelope pad_zeros(const ComplexEnvelope& shape, double before, double after);

/// Excitation of a matched atom by the ε = t_m/t_c stationary heralded shape
/// (t_c = 1, herald at 0).
ExcitationCurve cw_excitation(double epsilon, double step);

/// Regime table, non-passing rows first as warning lines.
std::string regime_report(const std::vector<RegimeCondition>& conditions);

}  // namespace heraldsim::cli
