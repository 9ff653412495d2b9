#pragma once

#include "boxdos/spectrum.hpp"

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace boxdos::cli {

enum ExitCode : int {
    exit_ok = 0,
    exit_usage = 2,
    exit_validation = 3,
    exit_computation = 4,
};

/// Used when neither --seed, the config file nor BOXDOS_SEED supplies one.
constexpr std::uint64_t kDefaultSeed = 12345;
constexpr const char* kSeedEnv = "BOXDOS_SEED";

/// Every parameter of one invocation. Unset optionals fall back to per-subcommand defaults.
struct RunConfig {
    std::string subcommand;

    // geometry
    std::string geometry = "cube";
    std::vector<double> lengths;
    std::optional<double> radius;
    std::optional<double> height;
    std::optional<double> side;
    bool raw = false;
    std::optional<double> e_max;
    std::optional<double> k_max;
    bool labels = false;
    std::string input;

    // random spectra
    int levels = 500;
    double b = 0.5;
    std::optional<double> a;
    std::optional<std::uint64_t> seed;

    // staircase / dos
    std::optional<double> window;
    std::optional<double> e_lo;
    std::optional<double> e_hi;
    bool tiling = false;

    // nboson
    int particles = 1;
    std::optional<double> base_e_max;
    bool configs = false;

    // analytic
    std::string form = "weyl";
    int dimension = 3;
    int points = 50;

    // fit
    std::int64_t min_count = 20;
    std::string label;

    // sweep
    std::string range;
    double sweep_window = 250.0;

    // reproduce
    std::string target;

    std::string output = "-";
    std::string format = "csv";

    bool operator==(const RunConfig&) const = default;
};

std::string to_json_text(const RunConfig& config);
/// Throws ValidationError on malformed JSON or unknown keys.
RunConfig config_from_json_text(const std::string& text);

/// --seed, else the config file, else $BOXDOS_SEED, else kDefaultSeed.
std::uint64_t resolved_seed(const RunConfig& config);

/// Checks every numeric parameter the subcommand will use; messages name the flag.
void validate(const RunConfig& config);

/// Single-particle spectrum described by the geometry flags (or --input).
Spectrum make_spectrum(const RunConfig& config);

struct OutputFile {
    std::string name;
    std::string content;
};

/// Data files (plus a plotting-script stub) for reproduce target fig1..fig11.
std::vector<OutputFile> reproduce_figure(const std::string& target, const RunConfig& config);

/// Parses argv, runs the subcommand and writes its output. Returns an ExitCode.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

} // namespace boxdos::cli
