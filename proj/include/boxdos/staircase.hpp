#pragma once

#include "boxdos/spectrum.hpp"

#include <cstdint>
#include <span>
#include <vector>

namespace boxdos {

/// Cumulative state number N(e): one corner point per distinct level, where N jumps by
/// that level's degeneracy.
class Staircase {
public:
    Staircase() = default;
    explicit Staircase(const Spectrum& spectrum);

    const std::vector<double>& energies() const { return energies_; }
    const std::vector<std::int64_t>& counts() const { return counts_; }
    std::size_t size() const { return energies_.size(); }
    bool empty() const { return energies_.empty(); }
    std::int64_t total() const { return counts_.empty() ? 0 : counts_.back(); }

    /// Number of states with energy <= e (right-continuous), 0 below the ground state.
    std::int64_t evaluate(double e) const;

private:
    std::vector<double> energies_;
    std::vector<std::int64_t> counts_;
};

inline Staircase build_staircase(const Spectrum& spectrum) { return Staircase(spectrum); }
inline std::int64_t evaluate_N(const Staircase& staircase, double e) { return staircase.evaluate(e); }

struct DosSample {
    double center;
    double g;
};

struct DosSeries {
    std::vector<DosSample> samples;
    double window = 0.0;
};

/// g(c) = [N(c + w/2) - N(c - w/2)] / w, i.e. the states in (c - w/2, c + w/2] per unit
/// energy. Half-open windows so that adjacent windows tile without double counting.
DosSeries dos_window(const Staircase& staircase, double window, std::span<const double> centers);
DosSeries dos_window(const Spectrum& spectrum, double window, std::span<const double> centers);

enum class WindowLayout {
    overlapping, ///< centers every w/2
    tiling       ///< centers every w, windows partition the range
};

/// Window centers covering [e_lo, e_hi]. Tiling places the first window at (e_lo, e_lo + w].
std::vector<double> window_centers(double e_lo, double e_hi, double window,
                                   WindowLayout layout = WindowLayout::overlapping);

/// Disjoint windows (e_lo + k w, e_lo + (k+1) w] for k = 0..count-1, reported at their
/// centers. Both edges of neighbouring windows are the same double, so
/// sum_k g_k w = N(e_lo + count w) - N(e_lo) holds exactly.
DosSeries dos_tiling(const Staircase& staircase, double e_lo, double window, std::size_t count);

struct DegeneracyPoint {
    double energy;
    std::int64_t degeneracy;
};

std::vector<DegeneracyPoint> degeneracy_series(const Spectrum& spectrum);

/// Replaces each d-fold level by d single states spread evenly over [e - spread/2, e + spread/2).
/// Models a weak perturbation that lifts degeneracies.
Spectrum lift_degeneracies(const Spectrum& spectrum, double spread);

} // namespace boxdos
