#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <utility>
#include <vector>

namespace boxdos {

/// Quantum numbers of one state, e.g. (n_x, n_y, n_z) or (l, n, m).
using QuantumNumbers = std::vector<int>;

/// Relative tolerance used to merge floating energies into one degenerate level.
inline constexpr double kMergeRelTol = 1e-9;

struct Level {
    double energy = 0.0;
    std::int64_t degeneracy = 0;
    /// One entry per state when labels were requested, empty otherwise.
    std::vector<QuantumNumbers> labels;
};

/// A sorted list of distinct energy levels, complete up to e_max.
///
/// Invariants (checked on construction): energies strictly increasing and <= e_max,
/// degeneracies >= 1, labels either absent or one per state.
class Spectrum {
public:
    Spectrum() = default;
    /// `exact_denominator` > 0 means every energy is an integer multiple of 1/denominator
    /// and downstream sums may be carried out in integers. 0 means floating energies.
    Spectrum(std::vector<Level> levels, double e_max, std::int64_t exact_denominator = 0,
             std::string warning = {});

    const std::vector<Level>& levels() const { return levels_; }
    double e_max() const { return e_max_; }
    std::int64_t exact_denominator() const { return exact_denominator_; }
    /// Non-empty when the enumeration succeeded but has nothing useful to report,
    /// e.g. a cutoff below the ground state.
    const std::string& warning() const { return warning_; }

    bool empty() const { return levels_.empty(); }
    std::size_t distinct_levels() const { return levels_.size(); }
    std::int64_t total_states() const { return total_states_; }
    double mean_degeneracy() const;
    bool has_labels() const;

    /// Degeneracy of the level at `energy` (matched to kMergeRelTol), 0 if absent.
    std::int64_t degeneracy_at(double energy) const;

    /// One entry per state, ascending (level energies repeated by degeneracy).
    std::vector<double> state_energies() const;

    /// Levels with energy <= e_max; the result is complete to the new cutoff.
    Spectrum truncated(double e_max) const;

    /// Same degeneracies, every energy shifted by -offset (used to measure energies
    /// above the ground state). Exactness is dropped unless the offset is on the grid.
    Spectrum shifted(double offset) const;

private:
    std::vector<Level> levels_;
    double e_max_ = 0.0;
    std::int64_t exact_denominator_ = 0;
    std::int64_t total_states_ = 0;
    std::string warning_;
};

/// Collects individual states and merges equal energies into levels.
///
/// Exact mode: states are keyed by an integer and merged by key; `to_energy` maps the
/// key to an energy. Floating mode: states carry a double energy and are merged when
/// within kMergeRelTol of the first energy of the group.
class LevelAccumulator {
public:
    explicit LevelAccumulator(bool keep_labels = false) : keep_labels_(keep_labels) {}

    void add_exact(std::int64_t key, QuantumNumbers labels = {});
    void add(double energy, QuantumNumbers labels = {});

    std::size_t size() const { return exact_.size() + floating_.size(); }

    /// `exact_denominator` is recorded on the spectrum (0 when keys are not energy*den).
    Spectrum finish_exact(double e_max, const std::function<double(std::int64_t)>& to_energy,
                          std::int64_t exact_denominator, std::string warning = {}) &&;
    Spectrum finish(double e_max, std::string warning = {}) &&;

private:
    bool keep_labels_;
    std::vector<std::pair<std::int64_t, QuantumNumbers>> exact_;
    std::vector<std::pair<double, QuantumNumbers>> floating_;
};

/// Merges (energy, multiplicity) pairs that lie within kMergeRelTol of each other.
/// Input need not be sorted.
std::vector<Level> merge_weighted(std::vector<std::pair<double, std::int64_t>> weighted);

} // namespace boxdos
