#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "heraldsim/cli.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <sys/wait.h>

using namespace heraldsim;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
    const fs::path p = fs::temp_directory_path() / ("heraldsim_test_cli_" + name);
    fs::remove_all(p);
    return p;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

int run_tool(const std::string& args) {
    const std::string cmd = std::string(HERALDSIM_TOOL) + " " + args + " >/dev/null 2>&1";
    const int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string config_error(const std::string& text) {
    try {
        cli::parse_scenario(text);
    } catch (const cli::ConfigError& e) {
        return e.what();
    }
    return {};
}

}  // namespace

TEST_CASE("config parsing") {
    const std::string good = R"({
  "pair_model": {"type": "finite_window", "t_c": 1, "t_u": 150},
  "filter": {"type": "lorentzian", "t_m": 10},
  "herald_instants": [75, 120],
  "atom": {"lifetime": 10},
  "imperfections": {"t_d": 0.1},
  "output": {"directory": "out", "format": "json"}
})";
    const auto c = cli::parse_scenario(good);
    CHECK(c.pair_model.t_u == 150.0);
    CHECK(c.herald_instants.size() == 2);
    CHECK(c.atom_lifetime.value() == 10.0);
    CHECK(c.format == cli::Format::Json);

    SUBCASE("unknown key names the path and line") {
        const auto msg = config_error(R"({
  "pair_model": {"type": "cw", "t_c": 1, "pair_rate": 0.01},
  "filter": {"t_m": 10, "bandwidth": 3}
})");
        CHECK(msg.find("filter.bandwidth") != std::string::npos);
        CHECK(msg.find("line 3") != std::string::npos);
    }
    SUBCASE("missing and mistyped values") {
        CHECK(config_error(R"({"filter": {"t_m": 10}})").find("pair_model") != std::string::npos);
        CHECK(config_error(R"({"pair_model": {"type": "cw", "t_c": "one", "pair_rate": 0.01}, "filter": {"t_m": 1}})")
                  .find("pair_model.t_c") != std::string::npos);
        CHECK(config_error(R"({"pair_model": {"type": "cw", "t_c": 1, "pair_rate": 2}, "filter": {"t_m": 1}})")
                  .find("pair_rate") != std::string::npos);
        CHECK(config_error(R"({"pair_model": {"type": "laser"}, "filter": {"t_m": 1}})").find("pair_model.type") !=
              std::string::npos);
    }
    SUBCASE("malformed JSON reports a line") {
        const auto msg = config_error("{\n  \"pair_model\": {\n    \"type\": \"cw\",,\n  }\n}");
        CHECK(msg.find("line 3") != std::string::npos);
    }
}

TEST_CASE("windowed scenario report") {
    const auto dir = scratch("window");
    auto cfg = cli::parse_scenario(R"({
  "pair_model": {"type": "finite_window", "t_c": 1, "t_u": 150},
  "filter": {"type": "lorentzian", "t_m": 10},
  "herald_instants": [75],
  "atom": {"lifetime": 10}
})");
    cfg.output_directory = dir;
    const auto rep = cli::run_scenario(cfg);
    CHECK(std::abs(rep.summary["R_exact"].get<double>() - 0.17) < 0.01);
    CHECK(rep.summary["R_estimate"].get<double>() == doctest::Approx(0.1));
    CHECK(std::abs(rep.summary["R_time_domain"].get<double>() - rep.summary["R_exact"].get<double>()) < 1e-8);
    CHECK(rep.text.find("R (exact) = 0.17") != std::string::npos);
    CHECK(rep.text.find("t_c << t_m") != std::string::npos);
    CHECK(fs::exists(dir / "shape_1.csv"));
    CHECK(fs::exists(dir / "g2.csv"));
    CHECK(fs::exists(dir / "excitation_1.csv"));
    CHECK(slurp(dir / "shape_1.csv").rfind("t,re,im,intensity\n", 0) == 0);
    CHECK(slurp(dir / "g2.csv").rfind("dt,g2\n", 0) == 0);
    CHECK(slurp(dir / "excitation_1.csv").rfind("t,p\n", 0) == 0);
    for (const auto& e : fs::directory_iterator(dir)) CHECK(e.path().extension() != ".tmp");
    fs::remove_all(dir);
}

TEST_CASE("stationary scenario with matched atom") {
    const auto dir = scratch("cw");
    auto cfg = cli::parse_scenario(R"({
  "pair_model": {"type": "cw", "t_c": 1, "pair_rate": 0.001},
  "filter": {"t_m": 10},
  "herald_instants": [0],
  "atom": {"lifetime": 10}
})");
    cfg.output_directory = dir;
    const auto rep = cli::run_scenario(cfg);
    const double p = rep.summary["shapes"][0]["p_max"].get<double>();
    CHECK(std::abs(p - 0.95) < 0.005);
    CHECK(rep.text.find("p_max = 0.95") != std::string::npos);
    fs::remove_all(dir);
}

TEST_CASE("regime violations lead the report") {
    const auto dir = scratch("violation");
    auto cfg = cli::parse_scenario(R"({
  "pair_model": {"type": "cw", "t_c": 1, "pair_rate": 0.05},
  "filter": {"t_m": 10}
})");
    cfg.output_directory = dir;
    const auto rep = cli::run_scenario(cfg);
    CHECK(rep.text.rfind("REGIME VIOLATION: t_m << 1/nbar", 0) == 0);
    fs::remove_all(dir);
}

TEST_CASE("physical units are carried through") {
    const auto dir = scratch("units");
    auto cfg = cli::parse_scenario(R"({
  "pair_model": {"type": "cw", "t_c": 7, "pair_rate": 0.001},
  "filter": {"t_m": 35},
  "herald_instants": [100],
  "imperfections": {"t_d": 0.1},
  "units": {"label": "ns"}
})");
    cfg.output_directory = dir;
    const auto rep = cli::run_scenario(cfg);
    CHECK(rep.summary["R_exact"].get<double>() == doctest::Approx(11.0 / 36.0));
    CHECK(rep.summary["shapes"][0]["herald_instant"].get<double>() == doctest::Approx(100.0));
    CHECK(rep.text.find("times in ns") != std::string::npos);
    fs::remove_all(dir);
}

TEST_CASE("dataset formatting") {
    cli::Dataset d;
    d.add("t", {0.0, 0.5});
    d.add("p", {-0.0, 1.0 / 3.0});
    CHECK(cli::to_csv(d) == "t,p\n0,0\n0.5,0.333333333333\n");
    CHECK(cli::to_json(d) == "[\n  {\"t\": 0, \"p\": 0},\n  {\"t\": 0.5, \"p\": 0.333333333333}\n]\n");
    CHECK_THROWS_AS(d.add("bad", {1.0}), std::invalid_argument);
}

TEST_CASE("figure datasets are deterministic") {
    const auto a = scratch("fig_a");
    const auto b = scratch("fig_b");
    const auto fa = cli::reproduce_figure("all", a, cli::Format::Csv);
    const auto fb = cli::reproduce_figure("all", b, cli::Format::Csv);
    REQUIRE(fa.size() == 4);
    for (std::size_t i = 0; i < fa.size(); ++i) CHECK(slurp(fa[i]) == slurp(fb[i]));
    CHECK(slurp(a / "fig5.csv").rfind("epsilon,R,p_max\n", 0) == 0);
    CHECK(slurp(a / "fig4.csv").rfind("t,p,intensity\n", 0) == 0);
    CHECK_THROWS_AS(cli::reproduce_figure("fig9", a, cli::Format::Csv), cli::ConfigError);
    fs::remove_all(a);
    fs::remove_all(b);
}

TEST_CASE("command-line exit codes") {
    const auto dir = scratch("exit");
    fs::create_directories(dir);
    CHECK(run_tool("validate --tm 10 --nbar 0.001") == 0);
    CHECK(run_tool("herald-prob --model cw --tm 5") == 0);
    CHECK(run_tool("shape --model window --tm 10 --tu 40 --step 0.5") == 3);
    CHECK(run_tool("atom --epsilon 10 --step 5") == 3);
    CHECK(run_tool("bogus") == 2);

    {
        std::ofstream bad(dir / "bad.json");
        bad << "{\n  \"pair_model\": {\"type\": \"cw\", \"t_c\": 1, \"pair_rate\": 0.01},\n  \"filters\": {}\n}\n";
    }
    CHECK(run_tool("run " + (dir / "bad.json").string()) == 2);
    {
        std::ofstream good(dir / "good.json");
        good << R"({"pair_model": {"type": "cw", "t_c": 1, "pair_rate": 0.01}, "filter": {"t_m": 10}, "herald_instants": [0]})";
    }
    CHECK(run_tool("run " + (dir / "good.json").string() + " --out " + (dir / "out").string()) == 0);
    CHECK(fs::exists(dir / "out" / "report.txt"));
    fs::remove_all(dir);
}
