#include "boxdos/errors.hpp"
#include "boxdos/fitlab.hpp"
#include "boxdos/spectra.hpp"
#include "boxdos/staircase.hpp"

#include <doctest.h>

#include <cmath>

using namespace boxdos;

namespace {

Spectrum power_law_levels(double alpha, double beta, int count) {
    // Levels placed so that the staircase corners lie exactly on N = alpha e^beta.
    std::vector<Level> levels;
    std::int64_t total = 0;
    for (int i = 1; i <= count; ++i) {
        const std::int64_t n = 20 + 5 * static_cast<std::int64_t>(i);
        levels.push_back({std::pow(static_cast<double>(n) / alpha, 1.0 / beta), n - total, {}});
        total = n;
    }
    return Spectrum(std::move(levels), levels.back().energy);
}

} // namespace

TEST_CASE("exact power law is recovered") {
    const std::vector<double> x{1, 2, 3, 5, 8, 13};
    std::vector<double> y;
    for (double v : x) {
        y.push_back(2.0 * std::pow(v, 1.5));
    }
    const PowerLawFit fit = fit_powerlaw_points(x, y);
    CHECK(std::abs(fit.alpha - 2.0) < 1e-10);
    CHECK(std::abs(fit.beta - 1.5) < 1e-10);
    CHECK(fit.residual_rms < 1e-12);
    CHECK(fit.point_count == 6);

    const PowerLawFit from_staircase = fit_powerlaw(Staircase(power_law_levels(2.0, 1.5, 40)));
    CHECK(std::abs(from_staircase.alpha - 2.0) < 1e-10);
    CHECK(std::abs(from_staircase.beta - 1.5) < 1e-10);
}

TEST_CASE("fit errors") {
    const std::vector<double> two{1, 2};
    CHECK_THROWS_AS(fit_powerlaw_points(two, two), ValidationError);
    const std::vector<double> same{3, 3, 3};
    const std::vector<double> y{1, 2, 4};
    CHECK_THROWS_AS(fit_powerlaw_points(same, y), ValidationError);
    const std::vector<double> bad{1, -2, 3};
    CHECK_THROWS_AS(fit_powerlaw_points(bad, y), ValidationError);
    const Staircase st(enumerate(cube(), 1024));
    CHECK_THROWS_AS(fit_powerlaw(st, 100, 101), ValidationError);
    CHECK_THROWS_AS(fit_powerlaw(st, 500, 100), ValidationError);
    CHECK_THROWS_AS(fit_powerlaw(Staircase{Spectrum{}}), ValidationError);
}

TEST_CASE("fit respects its range and cutoff") {
    const Staircase st(enumerate(cube(), 1024));
    const PowerLawFit fit = fit_powerlaw(st, 100, 500);
    std::size_t expected = 0;
    for (std::size_t i = 0; i < st.size(); ++i) {
        const double e = st.energies()[i];
        expected += (e >= 100 && e <= 500 && st.counts()[i] >= 20) ? 1 : 0;
    }
    CHECK(fit.point_count == expected);
    CHECK(fit.e_lo == 100);
    CHECK(fit.e_hi == 500);
    CHECK(std::abs(fit.alpha - std::exp(fit.ln_alpha)) < 1e-15 * fit.alpha);
}

TEST_CASE("fitting a fitted curve returns the same parameters") {
    const PowerLawFit first = fit_powerlaw(Staircase(enumerate(cube(), 1024)));
    std::vector<double> x;
    std::vector<double> y;
    for (double e = 30; e <= 1024; e *= 1.1) {
        x.push_back(e);
        y.push_back(first.alpha * std::pow(e, first.beta));
    }
    const PowerLawFit second = fit_powerlaw_points(x, y);
    CHECK(std::abs(second.beta - first.beta) < 1e-10);
    CHECK(std::abs(second.ln_alpha - first.ln_alpha) < 1e-10);
}

TEST_CASE("rescaling energies shifts only ln alpha") {
    const Spectrum s = enumerate(incommensurate_rectangle(), 600);
    const PowerLawFit base = fit_powerlaw(Staircase(s));
    for (double c : {0.1, 3.0, 250.0}) {
        std::vector<Level> scaled = s.levels();
        for (Level& lv : scaled) {
            lv.energy *= c;
        }
        const PowerLawFit fit = fit_powerlaw(Staircase(Spectrum(std::move(scaled), s.e_max() * c)));
        CHECK(std::abs(fit.beta - base.beta) < 1e-10);
        CHECK(std::abs(fit.ln_alpha - (base.ln_alpha - base.beta * std::log(c))) < 1e-9);
    }
}

TEST_CASE("cube exponent approaches 3/2 as the fit moves up in energy") {
    const Staircase st(enumerate(cube(), 4096));
    std::vector<double> distance;
    for (double lo : {20.0, 50.0, 100.0, 200.0, 400.0, 800.0, 1600.0}) {
        distance.push_back(std::abs(fit_powerlaw(st, lo, 4096).beta - 1.5));
    }
    // A trend, not a per-pair ordering: the least-squares slope against the step index is negative.
    double mean_i = 0.5 * static_cast<double>(distance.size() - 1);
    double mean_d = 0.0;
    for (double d : distance) {
        mean_d += d / static_cast<double>(distance.size());
    }
    double num = 0.0;
    for (std::size_t i = 0; i < distance.size(); ++i) {
        num += (static_cast<double>(i) - mean_i) * (distance[i] - mean_d);
    }
    CHECK(num < 0.0);
    CHECK(distance.back() < distance.front());
}

TEST_CASE("single-particle fits of the three unit-volume boxes") {
    const PowerLawFit cube_fit = fit_powerlaw(Staircase(enumerate(cube(), 1024)));
    CHECK(std::abs(cube_fit.alpha - 0.29) <= 0.05);
    CHECK(std::abs(cube_fit.beta - 1.58) <= 0.05);
    const PowerLawFit rect_fit = fit_powerlaw(Staircase(enumerate(incommensurate_rectangle(), 1024)));
    CHECK(std::abs(rect_fit.alpha - 0.32) <= 0.05);
    CHECK(std::abs(rect_fit.beta - 1.56) <= 0.05);
    const PowerLawFit sphere_fit = fit_powerlaw(Staircase(enumerate_sphere(95.0)));
    CHECK(std::abs(sphere_fit.beta - 1.51) <= 0.05);
    CHECK(std::abs(sphere_fit.alpha - 0.46) <= 0.05);
}

TEST_CASE("scaling report") {
    const Spectrum sphere = enumerate(BoxGeometry{Sphere{}}, 120);
    const std::vector<LabeledSpectrum> spectra{{"sphere", sphere}};
    const std::vector<int> particles{1, 2, 3, 4, 5};
    ScalingOptions options;
    options.nboson_e_max = 120;
    const auto rows = scaling_report(spectra, particles, options);
    REQUIRE(rows.size() == 10);
    std::vector<double> betas;
    for (const ReportRow& r : rows) {
        CHECK(r.error.empty());
        if (r.label == "theory") {
            CHECK(r.fit.beta == doctest::Approx(1.5 * r.particles).epsilon(1e-15));
        } else {
            betas.push_back(r.fit.beta);
        }
    }
    for (std::size_t i = 1; i < betas.size(); ++i) {
        CHECK(betas[i] > betas[i - 1]);
    }
    // Least-squares slope of beta against N.
    double slope = 0.0;
    for (std::size_t i = 0; i < betas.size(); ++i) {
        slope += (static_cast<double>(i) - 2.0) * betas[i] / 10.0;
    }
    CHECK_MESSAGE(slope >= 1.3, "slope " << slope);
    CHECK_MESSAGE(slope <= 1.7, "slope " << slope);
}

TEST_CASE("N = 1 row is the single-particle fit when the cutoff covers the spectrum") {
    const Spectrum sphere = enumerate_sphere(95.0);
    const std::vector<LabeledSpectrum> spectra{{"sphere", sphere}};
    const std::vector<int> one{1};
    ScalingOptions options;
    options.nboson_e_max = 1e9;
    options.include_theory = false;
    const auto rows = scaling_report(spectra, one, options);
    REQUIRE(rows.size() == 1);
    const PowerLawFit direct = fit_powerlaw(Staircase(sphere));
    CHECK(rows[0].fit.beta == direct.beta);
    CHECK(rows[0].fit.alpha == direct.alpha);
}

TEST_CASE("a failing row does not abort the report") {
    const Spectrum tiny = enumerate(cube(), 12);
    const std::vector<LabeledSpectrum> spectra{{"tiny", tiny}};
    const std::vector<int> particles{1, 5};
    const auto rows = scaling_report(spectra, particles);
    REQUIRE(rows.size() == 4);
    CHECK_FALSE(rows[0].error.empty()); // four levels: too few for a fit
    CHECK_FALSE(rows[1].error.empty());
    CHECK(std::isnan(rows[1].fit.beta));
    CHECK(rows[2].error.empty());
    CHECK(rows[3].error.empty());
}

TEST_CASE("random ensembles") {
    const auto seeds = consecutive_seeds(1, 100);
    CHECK(seeds.front() == 1);
    CHECK(seeds.back() == 100);
    const EnsembleStats one = random_ensemble_stats(seeds, 500, 0.5, 1);
    CHECK(one.successes == 100);
    CHECK(std::abs(one.mean_beta - 1.5) < 0.1);
    CHECK(one.sd_beta > 0.0);

    const std::vector<std::uint64_t> same(12, 42);
    const EnsembleStats flat = random_ensemble_stats(same, 500, 0.5, 2);
    CHECK(flat.sd_beta == 0.0);
    CHECK(flat.sd_ln_alpha == 0.0);

    CHECK_THROWS_AS(random_ensemble_stats(consecutive_seeds(1, 5), 500, 0.5, 1), ComputationError);
}
