#include "boxdos/manybody.hpp"

#include "boxdos/errors.hpp"

#include <boost/sort/spreadsort/spreadsort.hpp>

#include <algorithm>
#include <cmath>
#include <map>
#include <string>

namespace boxdos {

namespace {

constexpr std::int64_t kDenseHistogramLimit = 50'000'000;
// Slack on the pruning bound only; the final energy test is exact.
constexpr double kPruneSlack = 1e-12;

void validate(const Spectrum& single, int particles, double e_max) {
    if (particles < 1) {
        throw ValidationError("particle count must be >= 1, got " + std::to_string(particles));
    }
    if (!std::isfinite(e_max)) {
        throw ValidationError("N-boson e_max must be finite");
    }
    if (e_max > single.e_max()) {
        throw ValidationError("N-boson e_max " + std::to_string(e_max) +
                              " exceeds the single-particle completeness cutoff " + std::to_string(single.e_max()));
    }
}

// Calls visit(energy_or_key, indices) for every nondecreasing tuple within the cutoff.
template <typename Energy, typename Visit>
void for_each_config(const std::vector<Energy>& states, int particles, Energy limit, Energy slack, Visit&& visit) {
    std::vector<int> indices(static_cast<std::size_t>(particles), 0);
    auto descend = [&](auto& self, int placed, std::size_t start, Energy partial) -> void {
        const int remaining = particles - placed;
        for (std::size_t j = start; j < states.size(); ++j) {
            const Energy e = states[j];
            if (partial + static_cast<Energy>(remaining) * e > limit + slack) {
                break;
            }
            indices[static_cast<std::size_t>(placed)] = static_cast<int>(j);
            if (remaining == 1) {
                const Energy total = partial + e;
                if (total <= limit) {
                    visit(total, indices);
                }
            } else {
                self(self, placed + 1, j, partial + e);
            }
        }
    };
    descend(descend, 0, 0, Energy{});
}

std::vector<std::int64_t> exact_keys(const Spectrum& single, double e_max) {
    const auto den = static_cast<double>(single.exact_denominator());
    std::vector<std::int64_t> keys;
    for (const Level& lv : single.levels()) {
        if (lv.energy > e_max) {
            break;
        }
        keys.insert(keys.end(), static_cast<std::size_t>(lv.degeneracy), std::llround(lv.energy * den));
    }
    return keys;
}

std::vector<double> floating_states(const Spectrum& single, double e_max) {
    std::vector<double> out;
    for (const Level& lv : single.levels()) {
        if (lv.energy > e_max) {
            break;
        }
        out.insert(out.end(), static_cast<std::size_t>(lv.degeneracy), lv.energy);
    }
    return out;
}

Spectrum build_exact(const Spectrum& single, int particles, double e_max) {
    const std::int64_t den = single.exact_denominator();
    const std::vector<std::int64_t> keys = exact_keys(single, e_max);
    const auto limit = static_cast<std::int64_t>(std::floor(e_max * static_cast<double>(den)));
    std::vector<std::pair<double, std::int64_t>> weighted;
    if (limit <= kDenseHistogramLimit) {
        std::vector<std::int64_t> histogram(static_cast<std::size_t>(std::max<std::int64_t>(limit, 0)) + 1, 0);
        for_each_config(keys, particles, limit, std::int64_t{0},
                        [&](std::int64_t key, const std::vector<int>&) { ++histogram[static_cast<std::size_t>(key)]; });
        for (std::size_t key = 0; key < histogram.size(); ++key) {
            if (histogram[key] > 0) {
                weighted.emplace_back(static_cast<double>(key) / static_cast<double>(den), histogram[key]);
            }
        }
    } else {
        std::map<std::int64_t, std::int64_t> histogram;
        for_each_config(keys, particles, limit, std::int64_t{0},
                        [&](std::int64_t key, const std::vector<int>&) { ++histogram[key]; });
        for (const auto& [key, count] : histogram) {
            weighted.emplace_back(static_cast<double>(key) / static_cast<double>(den), count);
        }
    }
    std::vector<Level> levels;
    levels.reserve(weighted.size());
    for (const auto& [energy, count] : weighted) {
        levels.push_back(Level{energy, count, {}});
    }
    return Spectrum(std::move(levels), e_max, den);
}

// Sorted, run-length encoded (energy, count) pairs; equal doubles only.
void compress_into(std::vector<double>& buffer, std::vector<std::pair<double, std::int64_t>>& histogram) {
    boost::sort::spreadsort::spreadsort(buffer.begin(), buffer.end());
    std::vector<std::pair<double, std::int64_t>> runs;
    for (std::size_t i = 0; i < buffer.size();) {
        std::size_t j = i;
        while (j < buffer.size() && buffer[j] == buffer[i]) {
            ++j;
        }
        runs.emplace_back(buffer[i], static_cast<std::int64_t>(j - i));
        i = j;
    }
    buffer.clear();
    std::vector<std::pair<double, std::int64_t>> merged;
    merged.reserve(histogram.size() + runs.size());
    std::size_t a = 0;
    std::size_t b = 0;
    while (a < histogram.size() || b < runs.size()) {
        if (b == runs.size() || (a < histogram.size() && histogram[a].first < runs[b].first)) {
            merged.push_back(histogram[a++]);
        } else if (a == histogram.size() || runs[b].first < histogram[a].first) {
            merged.push_back(runs[b++]);
        } else {
            merged.emplace_back(histogram[a].first, histogram[a].second + runs[b].second);
            ++a;
            ++b;
        }
    }
    histogram = std::move(merged);
}

Spectrum build_floating(const Spectrum& single, int particles, double e_max, const NBosonOptions& options) {
    const std::vector<double> states = floating_states(single, e_max);
    std::vector<double> buffer;
    std::vector<std::pair<double, std::int64_t>> histogram;
    const std::size_t threshold = std::max<std::size_t>(options.histogram_threshold, 1);
    for_each_config(states, particles, e_max, kPruneSlack * std::abs(e_max), [&](double energy, const std::vector<int>&) {
        buffer.push_back(energy);
        if (buffer.size() >= threshold) {
            compress_into(buffer, histogram);
        }
    });
    compress_into(buffer, histogram);
    return Spectrum(merge_weighted(std::move(histogram)), e_max, 0);
}

} // namespace

std::size_t states_below(const Spectrum& single, double e_max) {
    std::size_t count = 0;
    for (const Level& lv : single.levels()) {
        if (lv.energy > e_max) {
            break;
        }
        count += static_cast<std::size_t>(lv.degeneracy);
    }
    return count;
}

Spectrum build_nboson_spectrum(const Spectrum& single, int particles, double e_max, NBosonOptions options) {
    validate(single, particles, e_max);
    if (single.empty() || particles * single.levels().front().energy > e_max) {
        return Spectrum({}, e_max, single.exact_denominator(), "e_max is below the N-boson ground state");
    }
    if (single.exact_denominator() > 0) {
        return build_exact(single, particles, e_max);
    }
    return build_floating(single, particles, e_max, options);
}

std::vector<BosonConfig> enumerate_boson_configs(const Spectrum& single, int particles, double e_max) {
    validate(single, particles, e_max);
    const std::vector<double> states = floating_states(single, e_max);
    std::vector<BosonConfig> out;
    for_each_config(states, particles, e_max, kPruneSlack * std::abs(e_max),
                    [&](double energy, const std::vector<int>& indices) { out.push_back({indices, energy}); });
    return out;
}

} // namespace boxdos
