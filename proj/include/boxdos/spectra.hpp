#pragma once

#include "boxdos/spectrum.hpp"

#include <cstdint>
#include <numbers>
#include <span>
#include <string>
#include <variant>
#include <vector>

// Single-particle spectra of rigid boxes.
//
// Energies are in reduced units hbar^2 pi^2 / (2M) = 1, so a unit cube has the integer
// spectrum n_x^2 + n_y^2 + n_z^2. The cylinder follows its textbook form
// q^2 pi^2 / H^2 + K_ln^2 / R^2 (units hbar^2 / (2M) = 1), and the relativistic square
// uses pi hbar c = 1.

namespace boxdos {

enum class Normalization {
    unit_volume, ///< rescale the box (keeping its shape) so its volume is 1
    raw          ///< use the dimensions as given
};

struct Hyperbox {
    std::vector<double> lengths;
};

struct Sphere {
    double radius = 1.0;
};

struct Cylinder {
    double height = 1.0;
    double radius = 1.0;
};

struct RelativisticSquare {
    double side = 1.0;
};

struct BoxGeometry {
    std::variant<Hyperbox, Sphere, Cylinder, RelativisticSquare> shape;
    Normalization normalization = Normalization::unit_volume;
};

BoxGeometry cube();
BoxGeometry square();
/// L = (1, 2/e, e/2): unit volume and no degeneracies.
BoxGeometry incommensurate_rectangle();

/// Volume (area for 2-D shapes, length for 1-D) after normalization is applied.
double volume(const BoxGeometry& geometry);

/// Dimensions actually used for enumeration (normalization applied).
BoxGeometry resolved(const BoxGeometry& geometry);

struct EnumerateOptions {
    bool labels = false;
};

/// Every level with sum (n_i / L_i)^2 <= e_max. Each n_i is bounded by the energy left
/// after the quantum numbers already fixed, so nothing outside the ellipsoid is visited.
/// Integer arithmetic is used when all 1/L_i^2 are small rationals (cube, square, 1-D).
Spectrum enumerate_hyperbox(std::span<const double> lengths, double e_max,
                            Normalization normalization = Normalization::unit_volume,
                            EnumerateOptions options = {});

/// Levels k_ln^2 / (pi R)^2 for all spherical Bessel zeros k_ln <= k_max, degeneracy 2l+1.
/// With unit_volume, R = (3 / (4 pi))^(1/3) and `radius` is ignored.
Spectrum enumerate_sphere(double k_max, Normalization normalization = Normalization::unit_volume,
                          double radius = 1.0, EnumerateOptions options = {});

/// Levels q^2 pi^2 / H^2 + K_ln^2 / R^2 <= e_max; two states (+-l) for l >= 1.
/// unit_volume keeps H/R and rescales to pi R^2 H = 1.
Spectrum enumerate_cylinder(double height, double radius, double e_max,
                            Normalization normalization = Normalization::unit_volume,
                            EnumerateOptions options = {});

/// 2-D square with epsilon = sqrt(n_x^2 + n_y^2) / L.
Spectrum enumerate_relativistic_square(double side, double e_max,
                                       Normalization normalization = Normalization::unit_volume,
                                       EnumerateOptions options = {});

/// Dispatches on the geometry with a common energy cutoff.
Spectrum enumerate(const BoxGeometry& geometry, double e_max, EnumerateOptions options = {});

/// Scale factor [(b+1) count / a]^(1/(b+1)) mapping uniform variates to a density a E^b.
double random_power_scale(int count, double b, double a = std::numbers::pi / 4.0);

/// `count` uniform variates on [0, 1) from a seeded mt19937_64, sorted and mapped through
/// scale * x^(1/(b+1)). The result has density ~ a E^b with all degeneracies 1.
Spectrum random_power_spectrum(int count, double b, std::uint64_t seed,
                               double a = std::numbers::pi / 4.0);

} // namespace boxdos
