#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "iftsim/config.hpp"
#include "iftsim/csv.hpp"
#include "iftsim/error.hpp"
#include "iftsim/runner.hpp"

using namespace ift;
namespace fs = std::filesystem;

TEST_SUITE_BEGIN("config-cli");

namespace {

std::string slurp(const fs::path& p) {
    std::ifstream in(p);
    std::stringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

fs::path temp_dir(const std::string& tag) {
    auto p = fs::temp_directory_path() / ("iftsim_test_" + tag);
    fs::remove_all(p);
    fs::create_directories(p);
    return p;
}

} // namespace

TEST_CASE("toml subset parsing") {
    auto toml = parse_toml(R"(
# comment
[model]
L = 10
g_x = 1.25      # trailing comment
boundary = "PBC"

[scatter]
measure_times = [0.0, 0.5, 1.0]
exact_evolution = true
)");
    CHECK(std::get<double>(toml["model"]["L"].v) == 10.0);
    CHECK(std::get<std::string>(toml["model"]["boundary"].v) == "PBC");
    CHECK(std::get<std::vector<double>>(toml["scatter"]["measure_times"].v).size() == 3);
    CHECK(std::get<bool>(toml["scatter"]["exact_evolution"].v));
}

TEST_CASE("unknown keys and sections are rejected") {
    CHECK_THROWS_AS(config_from_toml(parse_toml("[model]\nQ = 2\n")), ConfigError);
    CHECK_THROWS_AS(config_from_toml(parse_toml("[nonsense]\n")), ConfigError);
    CHECK_THROWS_AS(config_from_toml(parse_toml("[model]\nL = 3.5\n")), ConfigError);
    CHECK_THROWS_AS(parse_toml("[model]\nL = 3\nL = 4\n"), ConfigError);
}

TEST_CASE("the resource ceiling is refused with a clear message") {
    try {
        config_from_toml(parse_toml("[model]\nL = 30\n"));
        FAIL("expected a ceiling error");
    } catch (const ConfigError& e) {
        CHECK(std::string(e.what()).find("ceiling") != std::string::npos);
    }
}

TEST_CASE("manifest echoes every resolved default deterministically") {
    RunConfig cfg = config_from_toml(parse_toml("[model]\nL = 8\n"));
    auto a = manifest_json(cfg, "spectra", {"dispersion.csv"});
    auto b = manifest_json(cfg, "spectra", {"dispersion.csv"});
    CHECK(a == b);
    for (const char* key :
         {"g_x", "g_z", "sigma", "pool", "dt", "p_err", "cutoff_min", "threads"}) {
        CHECK(a.find(key) != std::string::npos);
    }
}

TEST_CASE("csv formatting is bit-faithful") {
    CsvTable t;
    t.header = {"x", "y"};
    t.add_row(std::vector<double>{1.0 / 3.0, 1e-17});
    auto text = csv_to_string(t);
    auto back = csv_from_string(text);
    CHECK(back.value(0, 0) == 1.0 / 3.0);
    CHECK(back.value(0, 1) == 1e-17);
}

TEST_CASE("prepare subcommand writes circuit, results and manifest") {
    auto out = temp_dir("prepare");
    RunConfig cfg = config_from_toml(parse_toml(R"(
[model]
L = 8
[wavepacket]
k0_over_pi = 0.25
sigma = 0.3
d = 8
construction = "mcmff"
delta = 0.2
)"));
    RunOverrides ov;
    ov.out_dir = out.string();
    CHECK(run_subcommand("prepare", cfg, ov) == 0);
    CHECK(fs::exists(out / "circuit.json"));
    CHECK(fs::exists(out / "results.csv"));
    CHECK(fs::exists(out / "manifest.json"));
    auto table = csv_read_file((out / "results.csv").string());
    int qcol = table.column("quantity");
    REQUIRE(qcol == 0);
    // predicted and simulated success probabilities agree
    CHECK(table.value(0, 1) == doctest::Approx(table.value(0, 2)).epsilon(1e-10));
    // circuit round trip through the serialized form
    auto circ = circuit_from_json(slurp(out / "circuit.json"));
    CHECK(circ.n_qubits == 8);
    auto again = circuit_from_json(circuit_to_json(circ));
    CHECK(circuit_to_json(again) == circuit_to_json(circ));
}

TEST_CASE("spectra subcommand emits the dispersion table") {
    auto out = temp_dir("spectra");
    RunConfig cfg = config_from_toml(parse_toml("[model]\nL = 8\n"));
    RunOverrides ov;
    ov.out_dir = out.string();
    CHECK(run_subcommand("spectra", cfg, ov) == 0);
    auto table = csv_read_file((out / "dispersion.csv").string());
    CHECK(table.column("k_over_pi") == 0);
    CHECK(table.column("E") == 1);
    CHECK(table.column("v") == 2);
    CHECK(table.rows.size() == 8);
    auto kin = csv_read_file((out / "kinematics.csv").string());
    CHECK(kin.column("value") == 1);
}

TEST_CASE("identical seeds give bit-identical result files") {
    RunConfig cfg = config_from_toml(parse_toml(R"(
[model]
L = 6
[wavepacket]
k0_over_pi = 0.33
sigma = 0.5
d = 2
[noise]
shots = 200
seed = 99
[adapt]
steps = 1
pool = "O1"
optimizer_max_evals = 200
[scatter]
dt = 0.2
n_T = 2
separation = 2
)"));
    auto out1 = temp_dir("rerun1");
    auto out2 = temp_dir("rerun2");
    RunOverrides ov1, ov2;
    ov1.out_dir = out1.string();
    ov2.out_dir = out2.string();
    CHECK(run_subcommand("noise-lab", cfg, ov1) == 0);
    CHECK(run_subcommand("noise-lab", cfg, ov2) == 0);
    CHECK(slurp(out1 / "mitigation.json") == slurp(out2 / "mitigation.json"));
    // manifests agree up to the differing output directory
    auto m1 = slurp(out1 / "manifest.json");
    auto m2 = slurp(out2 / "manifest.json");
    auto scrub = [](std::string s, const std::string& dir) {
        size_t pos;
        while ((pos = s.find(dir)) != std::string::npos) s.replace(pos, dir.size(), "@");
        return s;
    };
    CHECK(scrub(m1, out1.string()) == scrub(m2, out2.string()));
}

TEST_CASE("compare subcommand reports per-row diffs") {
    auto out = temp_dir("compare");
    CsvTable a, b;
    a.header = b.header = {"t", "n", "E_n"};
    a.add_row(std::vector<double>{0.0, 0.0, 0.5});
    a.add_row(std::vector<double>{0.0, 1.0, 0.25});
    b.add_row(std::vector<double>{0.0, 0.0, 0.5});
    b.add_row(std::vector<double>{0.0, 1.0, 0.251});
    csv_write_file((out / "a.csv").string(), a);
    csv_write_file((out / "b.csv").string(), b);
    RunConfig cfg;
    cfg.computed_csv = (out / "a.csv").string();
    cfg.reference_csv = (out / "b.csv").string();
    cfg.tolerance = 1e-2;
    RunOverrides ov;
    ov.out_dir = out.string();
    CHECK(run_subcommand("compare", cfg, ov) == 0);
    auto diff = csv_read_file((out / "diff.csv").string());
    CHECK(diff.rows.size() == 2);
    CHECK(diff.value(1, 3) == doctest::Approx(-0.001));
    cfg.tolerance = 1e-6;
    CHECK(run_subcommand("compare", cfg, ov) == 1);
}

TEST_SUITE_END();
