#pragma once

#include "boxdos/manybody.hpp"
#include "boxdos/spectrum.hpp"
#include "boxdos/staircase.hpp"

#include <cstdint>
#include <limits>
#include <span>
#include <string>
#include <vector>

namespace boxdos {

/// N(e) = alpha e^beta from ordinary least squares of ln N on ln e.
struct PowerLawFit {
    double alpha = 0.0;
    double beta = 0.0;
    double ln_alpha = 0.0;
    double residual_rms = 0.0;
    double e_lo = 0.0;
    double e_hi = 0.0;
    std::size_t point_count = 0;
};

struct FitOptions {
    /// Corner points with fewer states than this are dropped; the low-energy end of a
    /// staircase is dominated by shape effects.
    std::int64_t min_count = 20;
};

/// Equal-weight fit through the staircase corner points (e_i, N_i) with e_lo <= e_i <= e_hi,
/// e_i > 0 and N_i >= min_count. Throws ValidationError with fewer than 3 usable points or
/// when all their energies coincide.
PowerLawFit fit_powerlaw(const Staircase& staircase, double e_lo, double e_hi, FitOptions options = {});
PowerLawFit fit_powerlaw(const Staircase& staircase, FitOptions options = {});

/// The same regression on arbitrary positive (x, y) data.
PowerLawFit fit_powerlaw_points(std::span<const double> x, std::span<const double> y);

struct LabeledSpectrum {
    std::string label;
    Spectrum spectrum;
};

struct ScalingOptions {
    /// Common cutoff for every N (N = 1 included), clipped to the base spectrum's e_max.
    double nboson_e_max = 53.0;
    FitOptions fit;
    NBosonOptions build;
    /// Theory rows from the closed form with g_1 = a E^b.
    bool include_theory = true;
    double theory_a = 0.4;
    double theory_b = 0.5;
};

struct ReportRow {
    std::string label;
    int particles = 0;
    PowerLawFit fit;
    /// Empty on success; the fit fields are NaN otherwise.
    std::string error;
};

/// Builds and fits every (base spectrum, N) pair. A failing row records its error and the
/// table continues.
std::vector<ReportRow> scaling_report(std::span<const LabeledSpectrum> spectra, std::span<const int> particle_counts,
                                      const ScalingOptions& options = {});

struct EnsembleStats {
    double mean_beta = 0.0;
    double sd_beta = 0.0;
    double mean_ln_alpha = 0.0;
    double sd_ln_alpha = 0.0;
    std::size_t successes = 0;
    std::size_t failures = 0;
};

std::vector<std::uint64_t> consecutive_seeds(std::uint64_t first, std::size_t count);

/// Random single-particle spectra (density pi/4 E^b scaled to `levels` states), one per
/// seed, each turned into an N-boson spectrum and fitted. Sample mean and standard deviation
/// (n - 1 denominator) of beta and ln alpha. Throws ComputationError when fewer than 10
/// seeds succeed.
EnsembleStats random_ensemble_stats(std::span<const std::uint64_t> seeds, int levels, double b, int particles,
                                    const ScalingOptions& options = {});

} // namespace boxdos
