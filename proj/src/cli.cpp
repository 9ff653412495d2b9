#include "boxdos/cli.hpp"

#include "boxdos/analytic.hpp"
#include "boxdos/csv.hpp"
#include "boxdos/errors.hpp"
#include "boxdos/fitlab.hpp"
#include "boxdos/manybody.hpp"
#include "boxdos/spectra.hpp"
#include "boxdos/specfun.hpp"
#include "boxdos/staircase.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <limits>
#include <numbers>
#include <set>
#include <sstream>

namespace boxdos::cli {

namespace {

using json = nlohmann::json;

const std::set<std::string> kSubcommands{"spectrum", "staircase", "dos",   "nboson",
                                         "analytic", "fit",       "sweep", "reproduce"};
const std::set<std::string> kGeometries{"cube",     "square2d", "square",       "line",  "rectangle",
                                        "hyperbox", "sphere",   "cylinder", "relativistic", "random"};
const std::set<std::string> kForms{"weyl", "closed", "beta", "convolve"};

template <typename T>
void put(json& j, const char* key, const std::optional<T>& value) {
    j[key] = value ? json(*value) : json(nullptr);
}

template <typename T>
void get(const json& j, const char* key, std::optional<T>& value) {
    if (!j.contains(key) || j.at(key).is_null()) {
        value.reset();
    } else {
        value = j.at(key).get<T>();
    }
}

template <typename T>
void get(const json& j, const char* key, T& value) {
    if (j.contains(key)) {
        value = j.at(key).get<T>();
    }
}

// Every key written by to_json_text, in order.
const std::vector<std::string> kConfigKeys{
    "subcommand", "geometry", "lengths",   "radius",     "height",  "side",      "raw",       "e_max",
    "k_max",      "labels",   "input",     "levels",     "b",       "a",         "seed",      "window",
    "e_lo",       "e_hi",     "tiling",    "particles",  "base_e_max", "configs", "form",     "dimension",
    "points",     "min_count", "label",    "range",      "sweep_window", "target", "output",  "format"};

void require_positive(const std::optional<double>& value, const char* flag) {
    if (value && !(*value > 0.0 && std::isfinite(*value))) {
        throw ValidationError(std::string(flag) + " must be a finite positive number");
    }
}

void require_finite(const std::optional<double>& value, const char* flag) {
    if (value && !std::isfinite(*value)) {
        throw ValidationError(std::string(flag) + " must be finite");
    }
}

struct RangeSpec {
    double lo = 0.0;
    double hi = 0.0;
    bool log = true;
    int count = 21;
};

RangeSpec parse_range(const std::string& text) {
    std::vector<std::string> parts;
    std::stringstream in(text);
    for (std::string part; std::getline(in, part, ':');) {
        parts.push_back(part);
    }
    if (parts.size() < 3 || parts.size() > 4) {
        throw ValidationError("--range must look like lo:hi:log or lo:hi:lin[:count], got '" + text + "'");
    }
    RangeSpec r;
    try {
        r.lo = std::stod(parts[0]);
        r.hi = std::stod(parts[1]);
        if (parts.size() == 4) {
            r.count = std::stoi(parts[3]);
        }
    } catch (const std::exception&) {
        throw ValidationError("--range has a non-numeric field: '" + text + "'");
    }
    if (parts[2] != "log" && parts[2] != "lin") {
        throw ValidationError("--range spacing must be 'log' or 'lin', got '" + parts[2] + "'");
    }
    r.log = parts[2] == "log";
    if (!(r.lo > 0.0) || !(r.hi > r.lo) || !std::isfinite(r.hi)) {
        throw ValidationError("--range needs 0 < lo < hi, got '" + text + "'");
    }
    if (r.count < 2) {
        throw ValidationError("--range needs at least 2 points");
    }
    return r;
}

std::vector<double> range_values(const RangeSpec& r) {
    std::vector<double> out;
    for (int i = 0; i < r.count; ++i) {
        const double t = static_cast<double>(i) / static_cast<double>(r.count - 1);
        out.push_back(r.log ? std::exp(std::log(r.lo) + t * (std::log(r.hi) - std::log(r.lo)))
                            : r.lo + t * (r.hi - r.lo));
    }
    out.back() = r.hi;
    return out;
}

bool uses_geometry(const std::string& subcommand) {
    return subcommand == "spectrum" || subcommand == "staircase" || subcommand == "dos" || subcommand == "nboson" ||
           subcommand == "fit";
}

std::uint64_t parse_seed(const std::string& text, const char* source) {
    std::size_t used = 0;
    unsigned long long value = 0;
    try {
        if (text.empty() || text.front() == '-') {
            throw std::invalid_argument("negative");
        }
        value = std::stoull(text, &used);
    } catch (const std::exception&) {
        used = 0;
    }
    if (used == 0 || used != text.size()) {
        throw ValidationError(std::string(source) + " must be an unsigned integer, got '" + text + "'");
    }
    return value;
}

Spectrum load_spectrum_file(const std::string& path) {
    std::ifstream file(path);
    if (!file) {
        throw ValidationError("--input: cannot open '" + path + "'");
    }
    return csv::read_spectrum(file);
}

// ---------------------------------------------------------------------------------------
// subcommands

void warn(std::ostream& err, const Spectrum& s) {
    if (!s.warning().empty()) {
        err << "warning: " << s.warning() << '\n';
    }
}

std::string cmd_spectrum(const RunConfig& c, std::ostream& err) {
    const Spectrum s = make_spectrum(c);
    warn(err, s);
    std::ostringstream out;
    csv::write_spectrum(out, s, c.labels);
    return out.str();
}

std::string cmd_staircase(const RunConfig& c, std::ostream& err) {
    const Spectrum s = make_spectrum(c);
    warn(err, s);
    std::ostringstream out;
    csv::write_staircase(out, Staircase(s));
    return out.str();
}

std::string cmd_dos(const RunConfig& c, std::ostream& err) {
    const Spectrum s = make_spectrum(c);
    warn(err, s);
    const double w = c.window.value_or(50.0);
    const Staircase st(s);
    DosSeries series;
    if (c.tiling) {
        const double lo = c.e_lo.value_or(0.0);
        const double hi = c.e_hi.value_or(s.e_max());
        if (!(hi - lo >= w)) {
            throw ValidationError("--window " + csv::format_number(w) + " does not fit in the energy range");
        }
        series = dos_tiling(st, lo, w, static_cast<std::size_t>(std::floor((hi - lo) / w)));
    } else {
        const double lo = c.e_lo.value_or(0.5 * w);
        const double hi = c.e_hi.value_or(s.e_max() - 0.5 * w);
        if (!(hi >= lo)) {
            throw ValidationError("--window " + csv::format_number(w) + " does not fit in the energy range");
        }
        series = dos_window(st, w, window_centers(lo, hi, w));
    }
    std::ostringstream out;
    csv::write_dos(out, series);
    return out.str();
}

Spectrum nboson_base(const RunConfig& c) {
    RunConfig base = c;
    base.e_max = c.base_e_max ? c.base_e_max : c.e_max;
    base.labels = false;
    return make_spectrum(base);
}

std::string cmd_nboson(const RunConfig& c, std::ostream& err) {
    const Spectrum base = nboson_base(c);
    std::ostringstream out;
    if (c.configs) {
        csv::write_configs(out, enumerate_boson_configs(base, c.particles, *c.e_max));
        return out.str();
    }
    const Spectrum s = build_nboson_spectrum(base, c.particles, *c.e_max);
    warn(err, s);
    csv::write_spectrum(out, s);
    return out.str();
}

std::string cmd_analytic(const RunConfig& c) {
    std::ostringstream out;
    const double e_max = c.e_max.value_or(c.form == "beta" ? 1.0 : 100.0);
    if (c.form == "weyl") {
        out << "energy,N,g\n";
        for (int k = 1; k <= c.points; ++k) {
            const double e = e_max * k / c.points;
            out << csv::format_number(e) << ',' << csv::format_number(analytic::weyl_counting(c.dimension, e)) << ','
                << csv::format_number(analytic::weyl_dos(c.dimension, e)) << '\n';
        }
    } else if (c.form == "closed") {
        out << "N,coefficient,exponent,alpha,beta,ln_alpha\n";
        for (int n = 1; n <= c.particles; ++n) {
            const auto f = analytic::nboson_closed_form(c.a.value_or(1.0), c.b, n);
            out << n << ',' << csv::format_number(f.coefficient) << ',' << csv::format_number(f.exponent) << ','
                << csv::format_number(f.alpha) << ',' << csv::format_number(f.beta) << ','
                << csv::format_number(f.ln_alpha) << '\n';
        }
    } else if (c.form == "beta") {
        out << "n,m,energy,value\n";
        for (int tn = -1; tn <= 8; ++tn) {
            for (int tm = -1; tm <= 8; ++tm) {
                const auto n = specfun::HalfInteger::from_twice(tn);
                const auto m = specfun::HalfInteger::from_twice(tm);
                out << csv::format_number(n.value()) << ',' << csv::format_number(m.value()) << ','
                    << csv::format_number(e_max) << ',' << csv::format_number(analytic::beta_integral(n, m, e_max))
                    << '\n';
            }
        }
    } else {
        const auto single = analytic::AnalyticDos::make(c.a.value_or(1.0), c.b);
        std::vector<double> grid;
        for (int k = 1; k <= c.points; ++k) {
            grid.push_back(e_max * k / c.points);
        }
        analytic::Density g = single;
        for (int n = 2; n <= c.particles; ++n) {
            g = analytic::convolve_dos(g, single, grid);
        }
        const auto closed = analytic::nboson_closed_form(single.a, single.b, c.particles);
        out << "energy,numeric,closed\n";
        for (double e : grid) {
            out << csv::format_number(e) << ',' << csv::format_number(analytic::evaluate(g, e)) << ','
                << csv::format_number(closed.dos(e)) << '\n';
        }
    }
    return out.str();
}

std::string cmd_fit(const RunConfig& c, std::ostream& err) {
    const Spectrum s = make_spectrum(c);
    warn(err, s);
    const Staircase st(s);
    if (st.empty()) {
        throw ValidationError("nothing to fit: the spectrum is empty");
    }
    FitOptions options;
    options.min_count = c.min_count;
    ReportRow row;
    row.label = !c.label.empty() ? c.label
                : !c.input.empty() ? std::filesystem::path(c.input).stem().string()
                                   : c.geometry;
    row.particles = c.particles;
    row.fit = fit_powerlaw(st, c.e_lo.value_or(st.energies().front()), c.e_hi.value_or(st.energies().back()), options);
    std::ostringstream out;
    csv::write_report(out, std::span<const ReportRow>(&row, 1));
    return out.str();
}

struct SweepBox {
    Spectrum spectrum;
    double ground;
};

SweepBox sweep_hyperbox(double lz, double window, bool raw) {
    std::vector<double> lengths{1.0, 1.0, lz};
    if (!raw) {
        const double scale = std::cbrt(1.0 / lz);
        for (double& l : lengths) {
            l *= scale;
        }
    }
    double ground = 0.0;
    for (double l : lengths) {
        ground += 1.0 / (l * l);
    }
    return {enumerate_hyperbox(lengths, ground + window, Normalization::raw), ground};
}

SweepBox sweep_cylinder(double ratio, double window, bool raw) {
    double radius = 1.0;
    if (!raw) {
        radius = std::cbrt(1.0 / (std::numbers::pi * ratio));
    }
    const double height = ratio * radius;
    const double k01 = specfun::bessel_zero(specfun::BesselKind::ordinary, 0, 1);
    const double ground =
        std::numbers::pi * std::numbers::pi / (height * height) + k01 * k01 / (radius * radius);
    return {enumerate_cylinder(height, radius, ground + window, Normalization::raw), ground};
}

std::string cmd_sweep(const RunConfig& c) {
    const RangeSpec range = parse_range(c.range);
    FitOptions options;
    options.min_count = c.min_count;
    std::ostringstream out;
    out << (c.geometry == "cylinder" ? "h_over_r" : "lz") << ",ground,states,alpha,beta,ln_alpha,residual_rms,points\n";
    for (double value : range_values(range)) {
        const SweepBox box = c.geometry == "cylinder" ? sweep_cylinder(value, c.sweep_window, c.raw)
                                                      : sweep_hyperbox(value, c.sweep_window, c.raw);
        // Energies are measured from the ground state, which itself is left out of the fit.
        const Spectrum shifted = box.spectrum.shifted(box.ground);
        PowerLawFit fit{};
        fit.alpha = fit.beta = fit.ln_alpha = fit.residual_rms = std::numeric_limits<double>::quiet_NaN();
        if (shifted.distinct_levels() > 1) {
            try {
                fit = fit_powerlaw(Staircase(shifted), shifted.levels()[1].energy, shifted.e_max(), options);
            } catch (const ValidationError&) {
                // too few levels in the window at this aspect ratio; the row reports NaN
            }
        }
        out << csv::format_number(value) << ',' << csv::format_number(box.ground) << ','
            << box.spectrum.total_states() << ',' << csv::format_number(fit.alpha) << ','
            << csv::format_number(fit.beta) << ',' << csv::format_number(fit.ln_alpha) << ','
            << csv::format_number(fit.residual_rms) << ',' << fit.point_count << '\n';
    }
    return out.str();
}

void emit(const RunConfig& c, const std::string& content, std::ostream& out) {
    if (c.output == "-") {
        out << content;
    } else {
        csv::write_atomic(c.output, content);
    }
}

int cmd_reproduce(const RunConfig& c) {
    const std::filesystem::path dir = c.output == "-" ? std::filesystem::path(c.target) : std::filesystem::path(c.output);
    const std::vector<OutputFile> files = reproduce_figure(c.target, c);
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec) {
        throw ComputationError("cannot create output directory " + dir.string() + ": " + ec.message());
    }
    for (const OutputFile& f : files) {
        csv::write_atomic(dir / f.name, f.content);
    }
    return exit_ok;
}

template <typename T>
CLI::Option* add_optional(CLI::App* app, const std::string& name, std::optional<T>& target, const std::string& help) {
    return app->add_option_function<T>(name, [&target](const T& v) { target = v; }, help);
}

void add_geometry_options(CLI::App* app, RunConfig& c) {
    app->add_option("-g,--geometry,--base", c.geometry,
                    "cube | square2d | line | rectangle | hyperbox | sphere | cylinder | relativistic | random");
    app->add_option("--lengths", c.lengths, "hyperbox side lengths")->delimiter(',');
    add_optional(app, "--radius", c.radius, "sphere or cylinder radius");
    add_optional(app, "--height", c.height, "cylinder height");
    add_optional(app, "--side", c.side, "relativistic square side");
    app->add_flag("--raw", c.raw, "use the dimensions as given instead of rescaling to unit volume");
    add_optional(app, "--e-max", c.e_max, "energy cutoff (reduced units)");
    add_optional(app, "--k-max", c.k_max, "sphere wavenumber cutoff");
    app->add_option("--input", c.input, "read the spectrum from a CSV file instead");
    app->add_option("--count,--levels", c.levels, "random spectrum: number of levels");
    app->add_option("--b", c.b, "density exponent (random spectrum, analytic forms)");
    add_optional(app, "--a", c.a, "density amplitude");
}

} // namespace

std::string to_json_text(const RunConfig& c) {
    json j;
    j["subcommand"] = c.subcommand;
    j["geometry"] = c.geometry;
    j["lengths"] = c.lengths;
    put(j, "radius", c.radius);
    put(j, "height", c.height);
    put(j, "side", c.side);
    j["raw"] = c.raw;
    put(j, "e_max", c.e_max);
    put(j, "k_max", c.k_max);
    j["labels"] = c.labels;
    j["input"] = c.input;
    j["levels"] = c.levels;
    j["b"] = c.b;
    put(j, "a", c.a);
    put(j, "seed", c.seed);
    put(j, "window", c.window);
    put(j, "e_lo", c.e_lo);
    put(j, "e_hi", c.e_hi);
    j["tiling"] = c.tiling;
    j["particles"] = c.particles;
    put(j, "base_e_max", c.base_e_max);
    j["configs"] = c.configs;
    j["form"] = c.form;
    j["dimension"] = c.dimension;
    j["points"] = c.points;
    j["min_count"] = c.min_count;
    j["label"] = c.label;
    j["range"] = c.range;
    j["sweep_window"] = c.sweep_window;
    j["target"] = c.target;
    j["output"] = c.output;
    j["format"] = c.format;
    return j.dump(2) + "\n";
}

RunConfig config_from_json_text(const std::string& text) {
    RunConfig c;
    try {
        const json j = json::parse(text);
        if (!j.is_object()) {
            throw ValidationError("config must be a JSON object");
        }
        for (const auto& item : j.items()) {
            if (std::find(kConfigKeys.begin(), kConfigKeys.end(), item.key()) == kConfigKeys.end()) {
                throw ValidationError("config has unknown key '" + item.key() + "'");
            }
        }
        get(j, "subcommand", c.subcommand);
        get(j, "geometry", c.geometry);
        get(j, "lengths", c.lengths);
        get(j, "radius", c.radius);
        get(j, "height", c.height);
        get(j, "side", c.side);
        get(j, "raw", c.raw);
        get(j, "e_max", c.e_max);
        get(j, "k_max", c.k_max);
        get(j, "labels", c.labels);
        get(j, "input", c.input);
        get(j, "levels", c.levels);
        get(j, "b", c.b);
        get(j, "a", c.a);
        get(j, "seed", c.seed);
        get(j, "window", c.window);
        get(j, "e_lo", c.e_lo);
        get(j, "e_hi", c.e_hi);
        get(j, "tiling", c.tiling);
        get(j, "particles", c.particles);
        get(j, "base_e_max", c.base_e_max);
        get(j, "configs", c.configs);
        get(j, "form", c.form);
        get(j, "dimension", c.dimension);
        get(j, "points", c.points);
        get(j, "min_count", c.min_count);
        get(j, "label", c.label);
        get(j, "range", c.range);
        get(j, "sweep_window", c.sweep_window);
        get(j, "target", c.target);
        get(j, "output", c.output);
        get(j, "format", c.format);
    } catch (const json::exception& e) {
        throw ValidationError(std::string("bad config: ") + e.what());
    }
    return c;
}

std::uint64_t resolved_seed(const RunConfig& c) {
    if (c.seed) {
        return *c.seed;
    }
    if (const char* env = std::getenv(kSeedEnv); env != nullptr && *env != '\0') {
        return parse_seed(env, kSeedEnv);
    }
    return kDefaultSeed;
}

void validate(const RunConfig& c) {
    if (!kSubcommands.contains(c.subcommand)) {
        throw ValidationError("unknown subcommand '" + c.subcommand + "'");
    }
    if (c.format != "csv") {
        throw ValidationError("--format: only 'csv' is supported, got '" + c.format + "'");
    }
    if (!kGeometries.contains(c.geometry)) {
        throw ValidationError("--geometry: unknown geometry '" + c.geometry + "'");
    }
    for (double l : c.lengths) {
        if (!(l > 0.0) || !std::isfinite(l)) {
            throw ValidationError("--lengths must all be finite and positive");
        }
    }
    require_positive(c.radius, "--radius");
    require_positive(c.height, "--height");
    require_positive(c.side, "--side");
    require_positive(c.e_max, "--e-max");
    require_positive(c.k_max, "--k-max");
    require_positive(c.a, "--a");
    require_positive(c.window, "--window");
    require_positive(c.base_e_max, "--base-e-max");
    require_finite(c.e_lo, "--e-lo");
    require_finite(c.e_hi, "--e-hi");
    if (c.e_lo && c.e_hi && !(*c.e_hi >= *c.e_lo)) {
        throw ValidationError("--e-hi must be >= --e-lo");
    }
    if (!(c.b > -1.0) || !std::isfinite(c.b)) {
        throw ValidationError("--b must be > -1");
    }
    if (c.levels < 1) {
        throw ValidationError("--count must be >= 1");
    }
    if (c.particles < 1) {
        throw ValidationError("--n must be >= 1");
    }
    if (c.min_count < 1) {
        throw ValidationError("--min-count must be >= 1");
    }
    if (c.dimension < 1) {
        throw ValidationError("--dim must be >= 1");
    }
    if (c.points < 1) {
        throw ValidationError("--points must be >= 1");
    }
    if (!(c.sweep_window > 0.0) || !std::isfinite(c.sweep_window)) {
        throw ValidationError("--window must be positive");
    }
    resolved_seed(c);

    if (uses_geometry(c.subcommand) && c.input.empty()) {
        const bool has_cutoff = c.e_max || (c.geometry == "sphere" && c.k_max) || c.geometry == "random";
        if (!has_cutoff) {
            throw ValidationError("--e-max is required for geometry '" + c.geometry + "'");
        }
        if (c.geometry == "hyperbox" && c.lengths.empty()) {
            throw ValidationError("--lengths is required for geometry 'hyperbox'");
        }
    }
    if (c.subcommand == "nboson") {
        if (!c.e_max) {
            throw ValidationError("--e-max (the N-boson cutoff) is required");
        }
        if (c.configs && c.particles > 3) {
            throw ValidationError("--configs is limited to --n <= 3");
        }
    }
    if (c.subcommand == "analytic" && !kForms.contains(c.form)) {
        throw ValidationError("--form must be weyl, closed, beta or convolve, got '" + c.form + "'");
    }
    if (c.subcommand == "sweep") {
        if (c.geometry != "hyperbox" && c.geometry != "cylinder") {
            throw ValidationError("--geometry: sweep supports 'hyperbox' (over L_z) or 'cylinder' (over H/R)");
        }
        parse_range(c.range);
    }
    if (c.subcommand == "reproduce") {
        bool known = false;
        for (int k = 1; k <= 11; ++k) {
            known = known || c.target == "fig" + std::to_string(k);
        }
        if (!known) {
            throw ValidationError("reproduce target must be fig1..fig11, got '" + c.target + "'");
        }
    }
}

Spectrum make_spectrum(const RunConfig& c) {
    if (!c.input.empty()) {
        return load_spectrum_file(c.input);
    }
    const Normalization norm = c.raw ? Normalization::raw : Normalization::unit_volume;
    const EnumerateOptions options{c.labels};
    const std::string& g = c.geometry;
    if (g == "random") {
        return random_power_spectrum(c.levels, c.b, resolved_seed(c), c.a.value_or(std::numbers::pi / 4.0));
    }
    if (g == "sphere") {
        const double radius = c.radius.value_or(1.0);
        if (c.k_max) {
            return enumerate_sphere(*c.k_max, norm, radius, options);
        }
        return enumerate(BoxGeometry{Sphere{radius}, norm}, *c.e_max, options);
    }
    if (!c.e_max) {
        throw ValidationError("--e-max is required for geometry '" + g + "'");
    }
    const double e_max = *c.e_max;
    if (g == "cube") {
        return enumerate_hyperbox(std::vector<double>{1.0, 1.0, 1.0}, e_max, norm, options);
    }
    if (g == "square2d" || g == "square") {
        return enumerate_hyperbox(std::vector<double>{1.0, 1.0}, e_max, norm, options);
    }
    if (g == "line") {
        return enumerate_hyperbox(std::vector<double>{1.0}, e_max, norm, options);
    }
    if (g == "rectangle") {
        const BoxGeometry rect = incommensurate_rectangle();
        return enumerate_hyperbox(std::get<Hyperbox>(rect.shape).lengths, e_max, norm, options);
    }
    if (g == "hyperbox") {
        return enumerate_hyperbox(c.lengths, e_max, norm, options);
    }
    if (g == "cylinder") {
        return enumerate_cylinder(c.height.value_or(1.0), c.radius.value_or(1.0), e_max, norm, options);
    }
    if (g == "relativistic") {
        return enumerate_relativistic_square(c.side.value_or(1.0), e_max, norm, options);
    }
    throw ValidationError("--geometry: unknown geometry '" + g + "'");
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    RunConfig c;

    // --config is applied first so that explicit flags override the file.
    for (int i = 1; i < argc; ++i) {
        std::string arg = argv[i];
        std::string path;
        if (arg == "--config" && i + 1 < argc) {
            path = argv[i + 1];
        } else if (arg.rfind("--config=", 0) == 0) {
            path = arg.substr(9);
        }
        if (!path.empty()) {
            std::ifstream file(path);
            if (!file) {
                err << "error: --config: cannot open '" << path << "'\n";
                return exit_validation;
            }
            std::stringstream text;
            text << file.rdbuf();
            try {
                c = config_from_json_text(text.str());
            } catch (const ValidationError& e) {
                err << "error: --config: " << e.what() << '\n';
                return exit_validation;
            }
        }
    }

    CLI::App app{"Spectra, level densities and N-boson counting for particles in rigid boxes"};
    app.require_subcommand(0, 1);
    app.fallthrough();
    std::string config_path;
    std::string save_config;
    app.add_option("--config", config_path, "read parameters from a JSON config file");
    app.add_option("--save-config", save_config, "write the effective parameters as JSON and continue");
    app.add_option_function<std::string>(
        "--seed", [&c](const std::string& v) { c.seed = parse_seed(v, "--seed"); },
        "random seed (default: $BOXDOS_SEED, else 12345)");
    app.add_option("-o,--output", c.output, "output file, '-' for stdout (reproduce: output directory)");
    app.add_option("--format", c.format, "output format (csv)");

    auto* spectrum = app.add_subcommand("spectrum", "single-particle levels: energy,degeneracy[,labels]");
    add_geometry_options(spectrum, c);
    spectrum->add_flag("--labels", c.labels, "add the quantum numbers of every state");

    auto* staircase = app.add_subcommand("staircase", "cumulative state number: energy,N");
    add_geometry_options(staircase, c);

    auto* dos = app.add_subcommand("dos", "windowed density of states: center,g");
    add_geometry_options(dos, c);
    add_optional(dos, "--window", c.window, "window width (default 50)");
    add_optional(dos, "--e-lo", c.e_lo, "first window center (tiling: left edge)");
    add_optional(dos, "--e-hi", c.e_hi, "last window center (tiling: right edge)");
    dos->add_flag("--tiling", c.tiling, "disjoint windows instead of 50% overlap");

    auto* nboson = app.add_subcommand("nboson", "spectrum of N identical bosons: energy,degeneracy");
    add_geometry_options(nboson, c);
    nboson->add_option("-n,--n", c.particles, "particle count");
    add_optional(nboson, "--base-e-max", c.base_e_max, "single-particle cutoff (default: --e-max)");
    nboson->add_flag("--configs", c.configs, "list the configurations instead (indices|energy, N <= 3)");

    auto* analytic_cmd = app.add_subcommand("analytic", "closed forms as CSV");
    analytic_cmd->add_option("--form", c.form, "weyl | closed | beta | convolve");
    analytic_cmd->add_option("--dim", c.dimension, "dimension (weyl)");
    analytic_cmd->add_option("--points", c.points, "number of energies");
    analytic_cmd->add_option("-n,--n", c.particles, "particle count (closed: 1..n)");
    add_optional(analytic_cmd, "--e-max", c.e_max, "largest energy");
    analytic_cmd->add_option("--b", c.b, "density exponent");
    add_optional(analytic_cmd, "--a", c.a, "density amplitude (default 1)");

    auto* fit = app.add_subcommand("fit", "power-law fit N = alpha e^beta: one report row");
    add_geometry_options(fit, c);
    add_optional(fit, "--e-lo", c.e_lo, "lowest energy used");
    add_optional(fit, "--e-hi", c.e_hi, "highest energy used");
    fit->add_option("--min-count", c.min_count, "drop corner points with fewer states");
    fit->add_option("--label", c.label, "row label");
    fit->add_option("-n,--n", c.particles, "particle count recorded in the row");

    auto* sweep = app.add_subcommand("sweep", "fitted exponent versus box aspect ratio");
    sweep->add_option("-g,--geometry", c.geometry, "hyperbox (vary L_z) or cylinder (vary H/R)");
    sweep->add_option("--lz,--hr,--range", c.range, "lo:hi:log or lo:hi:lin, optional :count (default 21)");
    sweep->add_option("--window", c.sweep_window, "energy range above the ground state (default 250)");
    sweep->add_option("--min-count", c.min_count, "drop corner points with fewer states");
    sweep->add_flag("--raw", c.raw, "keep the unscaled box instead of unit volume");

    auto* reproduce = app.add_subcommand("reproduce", "data for figure fig1..fig11");
    reproduce->add_option("target", c.target, "fig1 .. fig11")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError& e) {
        err << "usage error: " << e.what() << '\n';
        return exit_usage;
    } catch (const ValidationError& e) {
        err << "error: " << e.what() << '\n';
        return exit_validation;
    }
    const auto chosen = app.get_subcommands();
    if (!chosen.empty()) {
        c.subcommand = chosen.front()->get_name();
    }
    if (c.subcommand.empty()) {
        err << "usage error: a subcommand is required\n" << app.help();
        return exit_usage;
    }

    try {
        validate(c);
        if (!save_config.empty()) {
            csv::write_atomic(save_config, to_json_text(c));
        }
        const std::string& s = c.subcommand;
        if (s == "reproduce") {
            return cmd_reproduce(c);
        }
        std::string content;
        if (s == "spectrum") {
            content = cmd_spectrum(c, err);
        } else if (s == "staircase") {
            content = cmd_staircase(c, err);
        } else if (s == "dos") {
            content = cmd_dos(c, err);
        } else if (s == "nboson") {
            content = cmd_nboson(c, err);
        } else if (s == "analytic") {
            content = cmd_analytic(c);
        } else if (s == "fit") {
            content = cmd_fit(c, err);
        } else {
            content = cmd_sweep(c);
        }
        emit(c, content, out);
    } catch (const ValidationError& e) {
        err << "error: " << e.what() << '\n';
        return exit_validation;
    } catch (const ComputationError& e) {
        err << "computation failed: " << e.what() << '\n';
        return exit_computation;
    } catch (const std::exception& e) {
        err << "computation failed: " << e.what() << '\n';
        return exit_computation;
    }
    return exit_ok;
}

} // namespace boxdos::cli
