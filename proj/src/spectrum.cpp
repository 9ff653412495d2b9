#include "boxdos/spectrum.hpp"

#include "boxdos/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace boxdos {

namespace {

bool within_merge_tol(double group_start, double e) {
    return e - group_start <= kMergeRelTol * std::max(std::abs(group_start), 1e-300);
}

} // namespace

Spectrum::Spectrum(std::vector<Level> levels, double e_max, std::int64_t exact_denominator,
                   std::string warning)
    : levels_(std::move(levels)), e_max_(e_max), exact_denominator_(exact_denominator),
      warning_(std::move(warning)) {
    if (exact_denominator_ < 0) {
        throw ValidationError("exact denominator must be >= 0");
    }
    for (std::size_t i = 0; i < levels_.size(); ++i) {
        const Level& lv = levels_[i];
        if (lv.degeneracy < 1) {
            throw ValidationError("level degeneracy must be >= 1");
        }
        if (i > 0 && !(lv.energy > levels_[i - 1].energy)) {
            throw ValidationError("level energies must be strictly increasing");
        }
        if (lv.energy > e_max_) {
            throw ValidationError("level energy above the completeness cutoff e_max");
        }
        if (!lv.labels.empty() && static_cast<std::int64_t>(lv.labels.size()) != lv.degeneracy) {
            throw ValidationError("labels must list one tuple per state");
        }
        total_states_ += lv.degeneracy;
    }
}

double Spectrum::mean_degeneracy() const {
    return levels_.empty() ? 0.0 : static_cast<double>(total_states_) / static_cast<double>(levels_.size());
}

bool Spectrum::has_labels() const {
    return !levels_.empty() && !levels_.front().labels.empty();
}

std::int64_t Spectrum::degeneracy_at(double energy) const {
    const double tol = kMergeRelTol * std::max(std::abs(energy), 1e-300);
    auto it = std::lower_bound(levels_.begin(), levels_.end(), energy - tol,
                               [](const Level& lv, double e) { return lv.energy < e; });
    if (it != levels_.end() && std::abs(it->energy - energy) <= tol) {
        return it->degeneracy;
    }
    return 0;
}

std::vector<double> Spectrum::state_energies() const {
    std::vector<double> out;
    out.reserve(static_cast<std::size_t>(total_states_));
    for (const Level& lv : levels_) {
        out.insert(out.end(), static_cast<std::size_t>(lv.degeneracy), lv.energy);
    }
    return out;
}

Spectrum Spectrum::truncated(double e_max) const {
    if (e_max > e_max_) {
        throw ValidationError("cannot truncate above the completeness cutoff");
    }
    auto end = std::upper_bound(levels_.begin(), levels_.end(), e_max,
                                [](double e, const Level& lv) { return e < lv.energy; });
    return Spectrum(std::vector<Level>(levels_.begin(), end), e_max, exact_denominator_, warning_);
}

Spectrum Spectrum::shifted(double offset) const {
    std::vector<Level> out = levels_;
    for (Level& lv : out) {
        lv.energy -= offset;
    }
    std::int64_t den = 0;
    if (exact_denominator_ > 0) {
        const double scaled = offset * static_cast<double>(exact_denominator_);
        if (scaled == std::round(scaled)) {
            den = exact_denominator_;
        }
    }
    return Spectrum(std::move(out), e_max_ - offset, den, warning_);
}

void LevelAccumulator::add_exact(std::int64_t key, QuantumNumbers labels) {
    if (!keep_labels_) {
        labels.clear();
    }
    exact_.emplace_back(key, std::move(labels));
}

void LevelAccumulator::add(double energy, QuantumNumbers labels) {
    if (!keep_labels_) {
        labels.clear();
    }
    floating_.emplace_back(energy, std::move(labels));
}

Spectrum LevelAccumulator::finish_exact(double e_max, const std::function<double(std::int64_t)>& to_energy,
                                        std::int64_t exact_denominator, std::string warning) && {
    std::sort(exact_.begin(), exact_.end());
    std::vector<Level> levels;
    for (std::size_t i = 0; i < exact_.size();) {
        std::size_t j = i;
        Level lv;
        lv.energy = to_energy(exact_[i].first);
        while (j < exact_.size() && exact_[j].first == exact_[i].first) {
            if (keep_labels_) {
                lv.labels.push_back(std::move(exact_[j].second));
            }
            ++j;
        }
        lv.degeneracy = static_cast<std::int64_t>(j - i);
        levels.push_back(std::move(lv));
        i = j;
    }
    exact_.clear();
    return Spectrum(std::move(levels), e_max, exact_denominator, std::move(warning));
}

Spectrum LevelAccumulator::finish(double e_max, std::string warning) && {
    std::sort(floating_.begin(), floating_.end());
    std::vector<Level> levels;
    for (std::size_t i = 0; i < floating_.size();) {
        std::size_t j = i;
        Level lv;
        lv.energy = floating_[i].first;
        while (j < floating_.size() && within_merge_tol(floating_[i].first, floating_[j].first)) {
            if (keep_labels_) {
                lv.labels.push_back(std::move(floating_[j].second));
            }
            ++j;
        }
        lv.degeneracy = static_cast<std::int64_t>(j - i);
        levels.push_back(std::move(lv));
        i = j;
    }
    floating_.clear();
    return Spectrum(std::move(levels), e_max, 0, std::move(warning));
}

std::vector<Level> merge_weighted(std::vector<std::pair<double, std::int64_t>> weighted) {
    if (!std::is_sorted(weighted.begin(), weighted.end())) {
        std::sort(weighted.begin(), weighted.end());
    }
    std::vector<Level> levels;
    for (std::size_t i = 0; i < weighted.size();) {
        std::size_t j = i;
        std::int64_t count = 0;
        while (j < weighted.size() && within_merge_tol(weighted[i].first, weighted[j].first)) {
            count += weighted[j].second;
            ++j;
        }
        levels.push_back(Level{weighted[i].first, count, {}});
        i = j;
    }
    return levels;
}

} // namespace boxdos
