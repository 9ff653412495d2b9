#include "boxdos/cli.hpp"

#include "boxdos/analytic.hpp"
#include "boxdos/csv.hpp"
#include "boxdos/errors.hpp"
#include "boxdos/fitlab.hpp"
#include "boxdos/manybody.hpp"
#include "boxdos/spectra.hpp"
#include "boxdos/staircase.hpp"

#include <cmath>
#include <functional>
#include <map>
#include <sstream>

namespace boxdos::cli {

namespace {

// N-boson builds on the box spectra stop here: N = 5 on the sphere takes a few seconds and
// beta(N) is already close to linear.
constexpr double kScalingCutoff = 120.0;
// Random spectra have no ground-state gap, so their N-boson counts grow much faster.
constexpr double kEnsembleCutoff = 53.0;
constexpr std::size_t kEnsembleSize = 100;
constexpr int kEnsembleLevels = 500;
constexpr int kMaxParticles = 5;
constexpr double kSphereKMax = 95.0;
constexpr double kBoxEMax = 1024.0;

using Files = std::vector<OutputFile>;

template <typename Writer>
std::string render(Writer&& write) {
    std::ostringstream out;
    write(out);
    return out.str();
}

OutputFile spectrum_file(const std::string& name, const Spectrum& s, bool labels = false) {
    return {name, render([&](std::ostream& o) { csv::write_spectrum(o, s, labels); })};
}

OutputFile degeneracy_file(const std::string& name, const Spectrum& s) {
    const auto points = degeneracy_series(s);
    return {name, render([&](std::ostream& o) { csv::write_degeneracy(o, points); })};
}

OutputFile staircase_file(const std::string& name, const Spectrum& s) {
    return {name, render([&](std::ostream& o) { csv::write_staircase(o, Staircase(s)); })};
}

OutputFile dos_file(const std::string& name, const DosSeries& series) {
    return {name, render([&](std::ostream& o) { csv::write_dos(o, series); })};
}

OutputFile report_file(const std::string& name, const std::vector<ReportRow>& rows) {
    return {name, render([&](std::ostream& o) { csv::write_report(o, rows); })};
}

// `energy,N,g` from the D-dimensional counting law on a uniform grid.
OutputFile theory_file(const std::string& name, int dimension, double e_max, int points) {
    return {name, render([&](std::ostream& o) {
                o << "energy,N,g\n";
                for (int k = 1; k <= points; ++k) {
                    const double e = e_max * k / points;
                    o << csv::format_number(e) << ',' << csv::format_number(analytic::weyl_counting(dimension, e))
                      << ',' << csv::format_number(analytic::weyl_dos(dimension, e)) << '\n';
                }
            })};
}

OutputFile plot_stub(const std::string& target, const Files& files) {
    std::ostringstream o;
    o << "# Plotting stub for " << target << ": one panel per CSV written alongside this script.\n"
      << "# Column 1 goes on the x axis, every other numeric column on the y axis.\n"
      << "import csv\nimport pathlib\nimport matplotlib.pyplot as plt\n\n"
      << "here = pathlib.Path(__file__).parent\nfiles = [\n";
    for (const OutputFile& f : files) {
        o << "    \"" << f.name << "\",\n";
    }
    o << "]\n"
      << "fig, axes = plt.subplots(len(files), 1, figsize=(7, 3 * len(files)), squeeze=False)\n"
      << "for ax, name in zip(axes[:, 0], files):\n"
      << "    with open(here / name) as fh:\n"
      << "        rows = list(csv.reader(fh))\n"
      << "    header, data = rows[0], rows[1:]\n"
      << "    for col in range(1, len(header)):\n"
      << "        try:\n"
      << "            xs = [float(r[0]) for r in data]\n"
      << "            ys = [float(r[col]) for r in data]\n"
      << "        except ValueError:\n"
      << "            continue\n"
      << "        ax.plot(xs, ys, label=header[col])\n"
      << "    ax.set_title(name)\n"
      << "    ax.set_xlabel(header[0])\n"
      << "    ax.legend()\n"
      << "fig.tight_layout()\n"
      << "fig.savefig(here / \"" << target << ".png\")\n";
    return {target + "_plot.py", o.str()};
}

Spectrum square_spectrum(double e_max) { return enumerate(square(), e_max); }
Spectrum cube_spectrum(double e_max) { return enumerate(cube(), e_max); }

// Degeneracy, staircase, windowed DOS and the smooth law for a square or cube.
Files lattice_panels(const std::string& prefix, int dimension, double e_max, double window) {
    const Spectrum s = dimension == 2 ? square_spectrum(e_max) : cube_spectrum(e_max);
    Files files;
    files.push_back(degeneracy_file(prefix + "_degeneracy.csv", s));
    files.push_back(staircase_file(prefix + "_staircase.csv", s));
    const Staircase st(s);
    files.push_back(dos_file(prefix + "_dos.csv", dos_window(st, window, window_centers(0.5 * window, e_max - 0.5 * window, window))));
    files.push_back(theory_file(prefix + "_theory.csv", dimension, e_max, 200));
    return files;
}

Files fig1() {
    Files files;
    files.push_back({"fig1_grid.csv", render([](std::ostream& o) {
                         o << "nx,ny,energy\n";
                         for (int nx = 1; nx <= 10; ++nx) {
                             for (int ny = 1; ny <= 10; ++ny) {
                                 o << nx << ',' << ny << ',' << nx * nx + ny * ny << '\n';
                             }
                         }
                     })});
    const Spectrum s = enumerate_hyperbox(std::vector<double>{1.0, 1.0}, 100.0, Normalization::unit_volume, {true});
    files.push_back(spectrum_file("fig1_levels.csv", s, true));
    files.push_back({"fig1_circles.csv", render([&](std::ostream& o) {
                         o << "energy,degeneracy\n";
                         for (double e : {36.0, 65.0}) {
                             o << csv::format_number(e) << ',' << s.degeneracy_at(e) << '\n';
                         }
                     })});
    return files;
}

Files fig2() {
    const Spectrum toy({{2.0, 2, {}}, {3.0, 4, {}}, {5.0, 3, {}}}, 5.0, 1);
    const Spectrum lifted = lift_degeneracies(toy, 0.4);
    return {degeneracy_file("fig2_intact_degeneracy.csv", toy), staircase_file("fig2_intact_staircase.csv", toy),
            degeneracy_file("fig2_lifted_degeneracy.csv", lifted),
            staircase_file("fig2_lifted_staircase.csv", lifted)};
}

struct Boxes {
    Spectrum cube;
    Spectrum rectangle;
    Spectrum sphere;
};

Boxes unit_volume_boxes() {
    return {cube_spectrum(kBoxEMax), enumerate(incommensurate_rectangle(), kBoxEMax), enumerate_sphere(kSphereKMax)};
}

Files fig7() {
    const Boxes b = unit_volume_boxes();
    Files files;
    const std::vector<std::pair<std::string, const Spectrum*>> named{
        {"cube", &b.cube}, {"rectangle", &b.rectangle}, {"sphere", &b.sphere}};
    for (const auto& [name, s] : named) {
        files.push_back(staircase_file("fig7_" + name + "_staircase.csv", *s));
        // 40-unit bins over the range every box covers completely.
        files.push_back(dos_file("fig7_" + name + "_histogram.csv", dos_tiling(Staircase(*s), 0.0, 40.0, 25)));
    }
    files.push_back(theory_file("fig7_theory.csv", 3, kBoxEMax, 200));
    return files;
}

Files fig8() {
    const Boxes b = unit_volume_boxes();
    Files files{staircase_file("fig8_cube_staircase.csv", b.cube),
                staircase_file("fig8_rectangle_staircase.csv", b.rectangle),
                staircase_file("fig8_sphere_staircase.csv", b.sphere)};
    std::vector<LabeledSpectrum> spectra{{"cube", b.cube}, {"rectangle", b.rectangle}, {"sphere", b.sphere}};
    std::vector<ReportRow> rows;
    for (const LabeledSpectrum& ls : spectra) {
        rows.push_back({ls.label, 1, fit_powerlaw(Staircase(ls.spectrum)), {}});
    }
    files.push_back(report_file("fig8_fits.csv", rows));
    files.push_back(theory_file("fig8_theory.csv", 3, b.sphere.e_max(), 200));
    return files;
}

Files fig9() {
    const Spectrum sphere = enumerate(BoxGeometry{Sphere{}}, kScalingCutoff);
    Files files;
    std::vector<ReportRow> rows;
    for (int n = 1; n <= kMaxParticles; ++n) {
        const Spectrum s = build_nboson_spectrum(sphere, n, kScalingCutoff);
        files.push_back(staircase_file("fig9_N" + std::to_string(n) + "_staircase.csv", s));
        rows.push_back({"sphere", n, fit_powerlaw(Staircase(s)), {}});
    }
    files.push_back(report_file("fig9_fits.csv", rows));
    return files;
}

// fig10 and fig11 plot beta and ln alpha from the same data.
Files scaling_figure(const std::string& prefix, std::uint64_t seed) {
    const std::vector<LabeledSpectrum> spectra{{"cube", cube_spectrum(kScalingCutoff)},
                                               {"rectangle", enumerate(incommensurate_rectangle(), kScalingCutoff)},
                                               {"sphere", enumerate(BoxGeometry{Sphere{}}, kScalingCutoff)}};
    std::vector<int> particles;
    for (int n = 1; n <= kMaxParticles; ++n) {
        particles.push_back(n);
    }
    ScalingOptions options;
    options.nboson_e_max = kScalingCutoff;
    const std::vector<ReportRow> rows = scaling_report(spectra, particles, options);

    ScalingOptions ensemble_options;
    ensemble_options.nboson_e_max = kEnsembleCutoff;
    const auto seeds = consecutive_seeds(seed, kEnsembleSize);
    std::string random = "N,mean_beta,sd_beta,mean_ln_alpha,sd_ln_alpha,successes,failures\n";
    for (int n : particles) {
        const EnsembleStats st = random_ensemble_stats(seeds, kEnsembleLevels, 0.5, n, ensemble_options);
        random += std::to_string(n) + ',' + csv::format_number(st.mean_beta) + ',' + csv::format_number(st.sd_beta) +
                  ',' + csv::format_number(st.mean_ln_alpha) + ',' + csv::format_number(st.sd_ln_alpha) + ',' +
                  std::to_string(st.successes) + ',' + std::to_string(st.failures) + '\n';
    }
    return {report_file(prefix + "_report.csv", rows), {prefix + "_random.csv", random}};
}

} // namespace

std::vector<OutputFile> reproduce_figure(const std::string& target, const RunConfig& config) {
    const std::uint64_t seed = resolved_seed(config);
    const std::map<std::string, std::function<Files()>> targets{
        {"fig1", fig1},
        {"fig2", fig2},
        {"fig3", [] { return lattice_panels("fig3", 2, 100.0, 10.0); }},
        {"fig4", [] { return lattice_panels("fig4", 2, 1600.0, 60.0); }},
        {"fig5", [] { return lattice_panels("fig5", 3, 100.0, 10.0); }},
        {"fig6", [] { return lattice_panels("fig6", 3, 1600.0, 50.0); }},
        {"fig7", fig7},
        {"fig8", fig8},
        {"fig9", fig9},
        {"fig10", [seed] { return scaling_figure("fig10", seed); }},
        {"fig11", [seed] { return scaling_figure("fig11", seed); }},
    };
    const auto it = targets.find(target);
    if (it == targets.end()) {
        throw ValidationError("reproduce target must be fig1..fig11, got '" + target + "'");
    }
    Files files = it->second();
    files.push_back(plot_stub(target, files));
    return files;
}

} // namespace boxdos::cli
