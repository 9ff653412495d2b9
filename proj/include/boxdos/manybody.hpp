#pragma once

#include "boxdos/spectrum.hpp"

#include <cstddef>
#include <vector>

namespace boxdos {

/// One N-boson state: the multiset of occupied single-particle state indices, stored
/// nondecreasing so that every multiset has exactly one representation.
struct BosonConfig {
    std::vector<int> occupied;
    double energy = 0.0;
};

struct NBosonOptions {
    /// Floating-energy builds buffer this many configuration energies before compressing
    /// the buffer into (energy, multiplicity) pairs.
    std::size_t histogram_threshold = std::size_t{1} << 22;
};

/// Number of single-particle states with energy <= e_max.
std::size_t states_below(const Spectrum& single, double e_max);

/// Exact spectrum of N identical non-interacting bosons up to e_max.
///
/// Nondecreasing index tuples are extended depth first; a partial tuple of k particles
/// with energy E_k and last index i is abandoned once E_k + (N - k) eps_i > e_max, since
/// every completion uses states at or above i. Multiplicity of a level is the number of
/// distinct multisets with that energy. Integer arithmetic is used when the single-particle
/// spectrum is exact.
///
/// Throws ValidationError for N < 1 or e_max above single.e_max() (the result would be
/// incomplete).
Spectrum build_nboson_spectrum(const Spectrum& single, int particles, double e_max, NBosonOptions options = {});

/// Explicit list of configurations, ordered lexicographically by index tuple. Meant for
/// small builds (dumps and tests); the same pruning as build_nboson_spectrum applies.
std::vector<BosonConfig> enumerate_boson_configs(const Spectrum& single, int particles, double e_max);

} // namespace boxdos
