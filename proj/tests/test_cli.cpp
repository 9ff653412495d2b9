#include "boxdos/cli.hpp"
#include "boxdos/csv.hpp"
#include "boxdos/errors.hpp"
#include "boxdos/manybody.hpp"
#include "boxdos/spectra.hpp"

#include <doctest.h>

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

using namespace boxdos;
namespace fs = std::filesystem;

namespace {

struct Result {
    int code;
    std::string out;
    std::string err;
};

Result run_cli(std::vector<std::string> args) {
    args.insert(args.begin(), "boxdos");
    std::vector<const char*> argv;
    for (const std::string& a : args) {
        argv.push_back(a.c_str());
    }
    std::ostringstream out;
    std::ostringstream err;
    const int code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
    return {code, out.str(), err.str()};
}

std::vector<std::vector<std::string>> parse_csv(const std::string& text) {
    std::vector<std::vector<std::string>> rows;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        std::vector<std::string> cells;
        std::istringstream ls(line);
        std::string cell;
        while (std::getline(ls, cell, ',')) {
            cells.push_back(cell);
        }
        rows.push_back(cells);
    }
    return rows;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::stringstream s;
    s << in.rdbuf();
    return s.str();
}

struct TempDir {
    fs::path path;
    TempDir() {
        path = fs::temp_directory_path() / ("boxdos_test_" + std::to_string(std::rand()) + "_" +
                                            std::to_string(reinterpret_cast<std::uintptr_t>(this)));
        fs::create_directories(path);
    }
    ~TempDir() {
        std::error_code ec;
        fs::remove_all(path, ec);
    }
};

} // namespace

TEST_CASE("RunConfig survives a JSON round trip") {
    cli::RunConfig defaults;
    CHECK(cli::config_from_json_text(cli::to_json_text(defaults)) == defaults);

    cli::RunConfig c;
    c.subcommand = "sweep";
    c.geometry = "hyperbox";
    c.lengths = {0.1, 1.0 / 3.0, 7.25};
    c.radius = 0.62035049089940;
    c.raw = true;
    c.e_max = 1024;
    c.k_max = 95.5;
    c.labels = true;
    c.input = "levels.csv";
    c.levels = 321;
    c.b = -0.5;
    c.a = std::numbers::pi / 4;
    c.seed = (std::uint64_t{1} << 63) + 5;
    c.window = 0.1;
    c.e_lo = 1e-300;
    c.e_hi = 1e300;
    c.tiling = true;
    c.particles = 4;
    c.base_e_max = 60;
    c.configs = true;
    c.form = "convolve";
    c.dimension = 5;
    c.points = 7;
    c.min_count = 3;
    c.label = "a,b \"quoted\"";
    c.range = "0.01:100:log:9";
    c.sweep_window = 123.456;
    c.target = "fig9";
    c.output = "out dir";
    const std::string text = cli::to_json_text(c);
    const cli::RunConfig back = cli::config_from_json_text(text);
    CHECK(back == c);
    CHECK(cli::to_json_text(back) == text);

    CHECK_THROWS_AS(cli::config_from_json_text("{\"no_such_key\": 1}"), ValidationError);
    CHECK_THROWS_AS(cli::config_from_json_text("{not json"), ValidationError);
}

TEST_CASE("seed resolution order") {
    cli::RunConfig c;
    ::unsetenv(cli::kSeedEnv);
    CHECK(cli::resolved_seed(c) == cli::kDefaultSeed);
    ::setenv(cli::kSeedEnv, "777", 1);
    CHECK(cli::resolved_seed(c) == 777);
    c.seed = 5;
    CHECK(cli::resolved_seed(c) == 5);
    ::setenv(cli::kSeedEnv, "banana", 1);
    c.seed.reset();
    CHECK_THROWS_AS(cli::resolved_seed(c), ValidationError);
    ::unsetenv(cli::kSeedEnv);
}

TEST_CASE("cube spectrum to 1024") {
    const Result r = run_cli({"spectrum", "--geometry", "cube", "--e-max", "1024"});
    REQUIRE(r.code == 0);
    const auto rows = parse_csv(r.out);
    REQUIRE(rows.size() == 819);
    CHECK(rows[0] == std::vector<std::string>{"energy", "degeneracy"});
    std::int64_t total = 0;
    for (std::size_t i = 1; i < rows.size(); ++i) {
        total += std::stoll(rows[i][1]);
    }
    CHECK(total == 15954);
    CHECK(rows[1] == std::vector<std::string>{"3", "1"});
}

TEST_CASE("exit codes") {
    CHECK(run_cli({}).code == cli::exit_usage);
    CHECK(run_cli({"frobnicate"}).code == cli::exit_usage);
    CHECK(run_cli({"spectrum", "--e-max", "abc"}).code == cli::exit_usage);
    CHECK(run_cli({"spectrum", "--no-such-flag"}).code == cli::exit_usage);
    CHECK(run_cli({"--help"}).code == cli::exit_ok);

    const Result window = run_cli({"dos", "--e-max", "100", "--window", "-1"});
    CHECK(window.code == cli::exit_validation);
    CHECK(window.err.find("--window") != std::string::npos);
    CHECK(run_cli({"spectrum"}).code == cli::exit_validation); // --e-max is required
    CHECK(run_cli({"spectrum", "-g", "hyperbox", "--e-max", "10"}).code == cli::exit_validation);
    CHECK(run_cli({"nboson", "--e-max", "53", "--base-e-max", "20", "-n", "2"}).code == cli::exit_validation);
    CHECK(run_cli({"reproduce", "fig12"}).code == cli::exit_validation);
    CHECK(run_cli({"analytic", "--form", "nope"}).code == cli::exit_validation);
    CHECK(run_cli({"spectrum", "--e-max", "10", "--seed", "-3"}).code != cli::exit_ok);

    const Result overflow = run_cli({"analytic", "--form", "closed", "-n", "400"});
    CHECK(overflow.code == cli::exit_computation);
}

TEST_CASE("flags override a config file and --save-config round trips") {
    TempDir tmp;
    const fs::path cfg = tmp.path / "run.json";
    const Result first = run_cli({"--save-config", cfg.string(), "staircase", "-g", "square", "--e-max", "200"});
    REQUIRE(first.code == 0);
    const Result again = run_cli({"--config", cfg.string(), "staircase"});
    REQUIRE(again.code == 0);
    CHECK(again.out == first.out);
    const Result smaller = run_cli({"--config", cfg.string(), "staircase", "--e-max", "50"});
    REQUIRE(smaller.code == 0);
    CHECK(smaller.out.size() < first.out.size());
    CHECK(run_cli({"--config", (tmp.path / "missing.json").string(), "staircase"}).code == cli::exit_validation);
}

TEST_CASE("output is deterministic and written atomically") {
    TempDir tmp;
    const fs::path target = tmp.path / "levels.csv";
    const std::vector<std::string> args{"spectrum", "-g", "sphere", "--k-max", "40", "--labels", "-o", target.string()};
    REQUIRE(run_cli(args).code == 0);
    const std::string first = slurp(target);
    REQUIRE(run_cli(args).code == 0);
    CHECK(slurp(target) == first);
    std::size_t entries = 0;
    for ([[maybe_unused]] const auto& e : fs::directory_iterator(tmp.path)) {
        ++entries;
    }
    CHECK(entries == 1);

    // A failing run leaves an existing file alone.
    const std::vector<std::string> bad{"spectrum", "-g", "sphere", "--k-max", "-1", "-o", target.string()};
    CHECK(run_cli(bad).code == cli::exit_validation);
    CHECK(slurp(target) == first);

    const Result random_a = run_cli({"--seed", "9", "spectrum", "-g", "random", "--count", "50"});
    const Result random_b = run_cli({"--seed", "9", "spectrum", "-g", "random", "--count", "50"});
    const Result random_c = run_cli({"--seed", "10", "spectrum", "-g", "random", "--count", "50"});
    REQUIRE(random_a.code == 0);
    CHECK(random_a.out == random_b.out);
    CHECK(random_a.out != random_c.out);
}

TEST_CASE("spectrum CSV round trip") {
    const Spectrum s = enumerate(cube(), 200, {.labels = true});
    std::ostringstream out;
    csv::write_spectrum(out, s, true);
    std::istringstream in(out.str());
    const Spectrum back = csv::read_spectrum(in);
    REQUIRE(back.distinct_levels() == s.distinct_levels());
    for (std::size_t i = 0; i < s.distinct_levels(); ++i) {
        CHECK(back.levels()[i].energy == s.levels()[i].energy);
        CHECK(back.levels()[i].degeneracy == s.levels()[i].degeneracy);
        CHECK(back.levels()[i].labels == s.levels()[i].labels);
    }
    CHECK(out.str().find("6,3,1|1|2;1|2|1;2|1|1\n") != std::string::npos);

    std::istringstream broken("energy,degeneracy\n3,x\n");
    CHECK_THROWS_AS(csv::read_spectrum(broken), ValidationError);
    CHECK(csv::format_number(1.0 / 3.0) == "0.333333333333");
    CHECK(csv::format_number(15954) == "15954");
}

TEST_CASE("configuration dump") {
    const Result r = run_cli({"nboson", "-g", "cube", "--e-max", "12", "-n", "2", "--configs"});
    REQUIRE(r.code == 0);
    CHECK(r.out == "indices|energy\n1 1|6\n1 2|9\n1 3|9\n1 4|9\n1 5|12\n1 6|12\n1 7|12\n2 2|12\n2 3|12\n2 4|12\n3 3|12\n3 4|12\n4 4|12\n");
}

TEST_CASE("an N-boson listing can be fitted from a file") {
    TempDir tmp;
    const fs::path file = tmp.path / "sphere3.csv";
    REQUIRE(run_cli({"nboson", "-g", "sphere", "--e-max", "53", "-n", "3", "-o", file.string()}).code == 0);
    const Result r = run_cli({"fit", "--input", file.string(), "-n", "3"});
    REQUIRE(r.code == 0);
    const auto rows = parse_csv(r.out);
    REQUIRE(rows.size() == 2);
    CHECK(rows[1][0] == "sphere3");
    CHECK(rows[1][1] == "3");
    const double beta = std::stod(rows[1][3]);
    CHECK(beta > 4.0);
    CHECK(beta < 6.0);
}

TEST_CASE("square density via the CLI") {
    const Result r = run_cli({"dos", "-g", "square", "--e-max", "1600", "--window", "60"});
    REQUIRE(r.code == 0);
    const auto rows = parse_csv(r.out);
    REQUIRE(rows.size() > 10);
    CHECK(rows[0] == std::vector<std::string>{"center", "g"});
    for (std::size_t i = 1; i < rows.size(); ++i) {
        const double center = std::stod(rows[i][0]);
        if (center >= 100) {
            CHECK(std::abs(std::stod(rows[i][1]) / (std::numbers::pi / 4) - 1.0) < 0.25);
        }
    }
}

TEST_CASE("aspect-ratio sweep moves between regimes") {
    const Result r = run_cli({"sweep", "-g", "hyperbox", "--lz", "0.01:100:log:5"});
    REQUIRE(r.code == 0);
    const auto rows = parse_csv(r.out);
    REQUIRE(rows.size() == 6);
    CHECK(rows[0][0] == "lz");
    const double flat = std::stod(rows[1][4]);
    const double cube_like = std::stod(rows[3][4]);
    const double rod = std::stod(rows[5][4]);
    CHECK(std::abs(flat - 1.0) < 0.15);
    CHECK(std::abs(cube_like - 1.5) < 0.1);
    CHECK(rod < 1.2);

    const Result cyl = run_cli({"sweep", "-g", "cylinder", "--hr", "0.01:100:log:3"});
    REQUIRE(cyl.code == 0);
    const auto crow = parse_csv(cyl.out);
    REQUIRE(crow.size() == 4);
    CHECK(std::abs(std::stod(crow[1][4]) - 1.0) < 0.15);
    CHECK(std::abs(std::stod(crow[3][4]) - 0.5) < 0.15);
}

TEST_CASE("reproduce writes data files and a plot stub") {
    TempDir tmp;
    const Result r = run_cli({"reproduce", "fig2", "-o", tmp.path.string()});
    REQUIRE(r.code == 0);
    std::vector<std::string> names;
    for (const auto& e : fs::directory_iterator(tmp.path)) {
        names.push_back(e.path().filename().string());
    }
    CHECK(std::find(names.begin(), names.end(), "fig2_plot.py") != names.end());
    CHECK(names.size() >= 3);
    for (const std::string& n : names) {
        CHECK(n.find(".tmp") == std::string::npos);
    }
}
