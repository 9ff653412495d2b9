#include "boxdos/fitlab.hpp"

#include "boxdos/analytic.hpp"
#include "boxdos/errors.hpp"
#include "boxdos/spectra.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <limits>

namespace boxdos {

namespace {

constexpr std::size_t kMinEnsembleSuccesses = 10;

PowerLawFit regress(const Eigen::VectorXd& log_x, const Eigen::VectorXd& log_y) {
    const Eigen::Index n = log_x.size();
    if (n < 3) {
        throw ValidationError("power-law fit needs at least 3 points, got " + std::to_string(n));
    }
    if (log_x.maxCoeff() == log_x.minCoeff()) {
        throw ValidationError("power-law fit range is degenerate: all energies are equal");
    }
    // Straight-line least squares on centred data; same solution as the QR of [1, x].
    const double mean_x = log_x.mean();
    const double mean_y = log_y.mean();
    const Eigen::ArrayXd dx = log_x.array() - mean_x;
    const Eigen::ArrayXd dy = log_y.array() - mean_y;
    const double slope = (dx * dy).sum() / dx.square().sum();
    const Eigen::ArrayXd residual = dy - slope * dx;

    PowerLawFit fit;
    fit.ln_alpha = mean_y - slope * mean_x;
    fit.beta = slope;
    fit.alpha = std::exp(fit.ln_alpha);
    fit.residual_rms = std::sqrt(residual.square().sum() / static_cast<double>(n));
    fit.point_count = static_cast<std::size_t>(n);
    return fit;
}

PowerLawFit nan_fit() {
    const double nan = std::numeric_limits<double>::quiet_NaN();
    return PowerLawFit{nan, nan, nan, nan, nan, nan, 0};
}

PowerLawFit fit_spectrum(const Spectrum& spectrum, const FitOptions& options) {
    return fit_powerlaw(Staircase(spectrum), options);
}

// Every N, N = 1 included, is fitted below the same cutoff.
PowerLawFit fit_nboson(const Spectrum& base, int particles, const ScalingOptions& options) {
    const double e_max = std::min(options.nboson_e_max, base.e_max());
    return fit_spectrum(build_nboson_spectrum(base, particles, e_max, options.build), options.fit);
}

std::pair<double, double> mean_sd(const std::vector<double>& values) {
    // Deviations are taken from the first value, so identical inputs give exactly zero spread.
    const auto n = static_cast<double>(values.size());
    const double origin = values.front();
    double shift = 0.0;
    for (double v : values) {
        shift += v - origin;
    }
    shift /= n;
    double ss = 0.0;
    for (double v : values) {
        const double d = (v - origin) - shift;
        ss += d * d;
    }
    return {origin + shift, values.size() > 1 ? std::sqrt(ss / (n - 1.0)) : 0.0};
}

} // namespace

PowerLawFit fit_powerlaw(const Staircase& staircase, double e_lo, double e_hi, FitOptions options) {
    if (!(e_hi >= e_lo)) {
        throw ValidationError("fit range must satisfy e_lo <= e_hi");
    }
    std::vector<double> xs;
    std::vector<double> ys;
    for (std::size_t i = 0; i < staircase.size(); ++i) {
        const double e = staircase.energies()[i];
        const std::int64_t count = staircase.counts()[i];
        if (e >= e_lo && e <= e_hi && e > 0.0 && count > 0 && count >= options.min_count) {
            xs.push_back(std::log(e));
            ys.push_back(std::log(static_cast<double>(count)));
        }
    }
    PowerLawFit fit = regress(Eigen::Map<const Eigen::VectorXd>(xs.data(), static_cast<Eigen::Index>(xs.size())),
                              Eigen::Map<const Eigen::VectorXd>(ys.data(), static_cast<Eigen::Index>(ys.size())));
    fit.e_lo = e_lo;
    fit.e_hi = e_hi;
    return fit;
}

PowerLawFit fit_powerlaw(const Staircase& staircase, FitOptions options) {
    if (staircase.empty()) {
        throw ValidationError("power-law fit of an empty staircase");
    }
    return fit_powerlaw(staircase, staircase.energies().front(), staircase.energies().back(), options);
}

PowerLawFit fit_powerlaw_points(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size()) {
        throw ValidationError("fit inputs differ in length");
    }
    Eigen::VectorXd log_x(static_cast<Eigen::Index>(x.size()));
    Eigen::VectorXd log_y(log_x.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (!(x[i] > 0.0) || !(y[i] > 0.0)) {
            throw ValidationError("power-law fit needs positive data");
        }
        log_x(static_cast<Eigen::Index>(i)) = std::log(x[i]);
        log_y(static_cast<Eigen::Index>(i)) = std::log(y[i]);
    }
    PowerLawFit fit = regress(log_x, log_y);
    fit.e_lo = x.empty() ? 0.0 : *std::min_element(x.begin(), x.end());
    fit.e_hi = x.empty() ? 0.0 : *std::max_element(x.begin(), x.end());
    return fit;
}

std::vector<ReportRow> scaling_report(std::span<const LabeledSpectrum> spectra, std::span<const int> particle_counts,
                                      const ScalingOptions& options) {
    std::vector<ReportRow> rows;
    for (const LabeledSpectrum& base : spectra) {
        for (int n : particle_counts) {
            ReportRow row{base.label, n, nan_fit(), {}};
            try {
                row.fit = fit_nboson(base.spectrum, n, options);
            } catch (const std::exception& e) {
                row.error = e.what();
            }
            rows.push_back(std::move(row));
        }
    }
    if (options.include_theory) {
        for (int n : particle_counts) {
            ReportRow row{"theory", n, nan_fit(), {}};
            try {
                const auto closed = analytic::nboson_closed_form(options.theory_a, options.theory_b, n);
                row.fit.alpha = closed.alpha;
                row.fit.beta = closed.beta;
                row.fit.ln_alpha = closed.ln_alpha;
                row.fit.residual_rms = 0.0;
            } catch (const std::exception& e) {
                row.error = e.what();
            }
            rows.push_back(std::move(row));
        }
    }
    return rows;
}

std::vector<std::uint64_t> consecutive_seeds(std::uint64_t first, std::size_t count) {
    std::vector<std::uint64_t> seeds(count);
    for (std::size_t i = 0; i < count; ++i) {
        seeds[i] = first + i;
    }
    return seeds;
}

EnsembleStats random_ensemble_stats(std::span<const std::uint64_t> seeds, int levels, double b, int particles,
                                    const ScalingOptions& options) {
    std::vector<double> betas;
    std::vector<double> ln_alphas;
    EnsembleStats stats;
    std::string last_error;
    for (std::uint64_t seed : seeds) {
        try {
            const Spectrum base = random_power_spectrum(levels, b, seed);
            const PowerLawFit fit = fit_nboson(base, particles, options);
            betas.push_back(fit.beta);
            ln_alphas.push_back(fit.ln_alpha);
            ++stats.successes;
        } catch (const ValidationError& e) {
            ++stats.failures;
            last_error = e.what();
        } catch (const ComputationError& e) {
            ++stats.failures;
            last_error = e.what();
        }
    }
    if (stats.successes < kMinEnsembleSuccesses) {
        throw ComputationError("random ensemble needs at least 10 successful seeds, got " +
                               std::to_string(stats.successes) + (last_error.empty() ? "" : " (" + last_error + ")"));
    }
    std::tie(stats.mean_beta, stats.sd_beta) = mean_sd(betas);
    std::tie(stats.mean_ln_alpha, stats.sd_ln_alpha) = mean_sd(ln_alphas);
    return stats;
}

} // namespace boxdos
