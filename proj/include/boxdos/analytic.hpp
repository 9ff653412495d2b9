#pragma once

#include "boxdos/specfun.hpp"

#include <Eigen/Core>

#include <span>
#include <variant>

namespace boxdos::analytic {

/// Power-law density g(E) = a E^b with a > 0, b > -1.
struct AnalyticDos {
    double a = 1.0;
    double b = 0.0;

    /// Throws ValidationError unless a > 0 and b > -1.
    static AnalyticDos make(double a, double b);
    double operator()(double energy) const;
};

/// Density known on a grid of energies. Between grid points it is interpolated linearly
/// in (ln E, ln g), which is exact for power laws, and the end segments are extended the
/// same way. Grids with a zero sample fall back to linear interpolation in E.
class SampledDensity {
public:
    SampledDensity() = default;
    SampledDensity(Eigen::ArrayXd energies, Eigen::ArrayXd values);

    const Eigen::ArrayXd& energies() const { return energies_; }
    const Eigen::ArrayXd& values() const { return values_; }
    double operator()(double energy) const;

private:
    Eigen::ArrayXd energies_;
    Eigen::ArrayXd values_;
    Eigen::ArrayXd log_energies_;
    Eigen::ArrayXd log_values_;
    bool log_log_ = false;
};

using Density = std::variant<AnalyticDos, SampledDensity>;

double evaluate(const Density& density, double energy);

/// Volume of a D-ball: pi^(D/2) / (D/2)! R^D.
double sphere_volume(int dimension, double radius);

/// States below e for a rigid D-dimensional box in reduced units:
/// (1/2^D) pi^(D/2) / (D/2)! e^(D/2).
double weyl_counting(int dimension, double energy);
/// d/de of weyl_counting.
double weyl_dos(int dimension, double energy);

/// x! for real x > -1. Exact product form for half-integers, lgamma otherwise.
double factorial(double x);
double log_factorial(double x);

/// Integral over [0, E] of E'^n (E - E')^m  =  n! m! / (n+m+1)! E^(n+m+1).
double beta_integral(specfun::HalfInteger n, specfun::HalfInteger m, double energy);
double beta_integral(double n, double m, double energy);

/// Closed form for N non-interacting bosons on g_1(E) = a E^b, from iterating the
/// single-particle convolution (which double counts some states):
///   g_N(E) = b!^N a^N / (Nb+N-1)! E^(Nb+N-1),   N_N(E) = b!^N a^N / (Nb+N)! E^(Nb+N).
struct NBosonClosedForm {
    int particles = 1;
    double coefficient = 0.0; ///< of g_N
    double exponent = 0.0;    ///< of g_N
    double alpha = 0.0;       ///< of N_N
    double beta = 0.0;        ///< of N_N
    double ln_alpha = 0.0;

    double dos(double energy) const;
    double counting(double energy) const;
};

/// Throws OverflowError when the coefficients are not representable as doubles.
NBosonClosedForm nboson_closed_form(double a, double b, int particles);

struct ConvolutionOptions {
    /// Simpson panels for the coarse pass; the fine pass uses twice as many.
    int panels = 2048;
    /// Maximum relative change between coarse and fine passes.
    double tolerance = 1e-6;
};

/// g_N(E) = integral over [0, E] of g_prev(E') g_1(E - E') dE', evaluated at each grid
/// energy (all > 0). Substituting E' = E sin^2(theta) removes the integrable power-law
/// singularities at both ends before composite Simpson is applied.
/// Throws ComputationError if halving the step changes a value by more than the tolerance.
SampledDensity convolve_dos(const Density& g_prev, const Density& g_single, std::span<const double> grid,
                            ConvolutionOptions options = {});

} // namespace boxdos::analytic
