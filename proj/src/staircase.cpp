#include "boxdos/staircase.hpp"

#include "boxdos/errors.hpp"

#include <algorithm>
#include <cmath>

namespace boxdos {

Staircase::Staircase(const Spectrum& spectrum) {
    energies_.reserve(spectrum.distinct_levels());
    counts_.reserve(spectrum.distinct_levels());
    std::int64_t running = 0;
    for (const Level& lv : spectrum.levels()) {
        running += lv.degeneracy;
        energies_.push_back(lv.energy);
        counts_.push_back(running);
    }
}

std::int64_t Staircase::evaluate(double e) const {
    const auto it = std::upper_bound(energies_.begin(), energies_.end(), e);
    if (it == energies_.begin()) {
        return 0;
    }
    return counts_[static_cast<std::size_t>(it - energies_.begin()) - 1];
}

DosSeries dos_window(const Staircase& staircase, double window, std::span<const double> centers) {
    if (!(window > 0.0) || !std::isfinite(window)) {
        throw ValidationError("dos window must be positive");
    }
    DosSeries out;
    out.window = window;
    out.samples.reserve(centers.size());
    for (double c : centers) {
        const double half = 0.5 * window;
        const auto count = staircase.evaluate(c + half) - staircase.evaluate(c - half);
        out.samples.push_back({c, static_cast<double>(count) / window});
    }
    return out;
}

DosSeries dos_window(const Spectrum& spectrum, double window, std::span<const double> centers) {
    return dos_window(Staircase(spectrum), window, centers);
}

DosSeries dos_tiling(const Staircase& staircase, double e_lo, double window, std::size_t count) {
    if (!(window > 0.0) || !std::isfinite(window)) {
        throw ValidationError("dos window must be positive");
    }
    DosSeries out;
    out.window = window;
    out.samples.reserve(count);
    double left = e_lo;
    std::int64_t below = staircase.evaluate(left);
    for (std::size_t k = 0; k < count; ++k) {
        const double right = e_lo + static_cast<double>(k + 1) * window;
        const std::int64_t upto = staircase.evaluate(right);
        out.samples.push_back({0.5 * (left + right), static_cast<double>(upto - below) / window});
        left = right;
        below = upto;
    }
    return out;
}

std::vector<double> window_centers(double e_lo, double e_hi, double window, WindowLayout layout) {
    if (!(window > 0.0) || !std::isfinite(window)) {
        throw ValidationError("dos window must be positive");
    }
    if (!(e_hi >= e_lo)) {
        throw ValidationError("window range must satisfy e_lo <= e_hi");
    }
    std::vector<double> centers;
    if (layout == WindowLayout::tiling) {
        // Computed from the index, not by accumulation, so window edges line up exactly
        // with e_lo + k w.
        for (std::size_t k = 0;; ++k) {
            const double left = e_lo + static_cast<double>(k) * window;
            if (left >= e_hi) {
                break;
            }
            centers.push_back(left + 0.5 * window);
        }
    } else {
        const double step = 0.5 * window;
        for (std::size_t k = 0;; ++k) {
            const double c = e_lo + static_cast<double>(k) * step;
            if (c > e_hi) {
                break;
            }
            centers.push_back(c);
        }
    }
    return centers;
}

std::vector<DegeneracyPoint> degeneracy_series(const Spectrum& spectrum) {
    std::vector<DegeneracyPoint> out;
    out.reserve(spectrum.distinct_levels());
    for (const Level& lv : spectrum.levels()) {
        out.push_back({lv.energy, lv.degeneracy});
    }
    return out;
}

Spectrum lift_degeneracies(const Spectrum& spectrum, double spread) {
    if (!(spread >= 0.0) || !std::isfinite(spread)) {
        throw ValidationError("degeneracy spread must be >= 0");
    }
    LevelAccumulator acc;
    for (const Level& lv : spectrum.levels()) {
        const auto d = static_cast<double>(lv.degeneracy);
        for (std::int64_t k = 0; k < lv.degeneracy; ++k) {
            acc.add(lv.energy + spread * (static_cast<double>(k) / d - 0.5));
        }
    }
    return std::move(acc).finish(spectrum.e_max() + 0.5 * spread);
}

} // namespace boxdos
