#include "boxdos/analytic.hpp"

#include "boxdos/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

namespace boxdos::analytic {

using specfun::HalfInteger;

namespace {

constexpr double kLogMaxDouble = 709.0;
constexpr double kLogMinDouble = -708.0;

void check_dimension(int dimension) {
    if (dimension < 1) {
        throw ValidationError("dimension must be >= 1, got " + std::to_string(dimension));
    }
}

void check_energy(double energy) {
    if (!(energy >= 0.0) || !std::isfinite(energy)) {
        throw ValidationError("energy must be finite and >= 0");
    }
}

// pi^(D/2) / (D/2)!
double unit_ball_volume(int dimension) {
    return std::pow(std::numbers::pi, 0.5 * dimension) /
           specfun::half_integer_factorial(HalfInteger::from_twice(dimension));
}

double interpolate(const Eigen::ArrayXd& x, const Eigen::ArrayXd& y, double at) {
    const Eigen::Index n = x.size();
    if (n == 1) {
        return y(0);
    }
    const double* begin = x.data();
    const double* pos = std::upper_bound(begin, begin + n, at);
    Eigen::Index hi = std::clamp<Eigen::Index>(pos - begin, 1, n - 1);
    const Eigen::Index lo = hi - 1;
    const double t = (at - x(lo)) / (x(hi) - x(lo));
    return y(lo) + t * (y(hi) - y(lo));
}

double simpson(const Density& g_prev, const Density& g_single, double energy, int panels) {
    // E' = E sin^2(t), dE' = 2 E sin(t) cos(t) dt, t in [0, pi/2].
    const double h = 0.5 * std::numbers::pi / panels;
    auto integrand = [&](double t) {
        const double s = std::sin(t);
        const double c = std::cos(t);
        const double jacobian = 2.0 * energy * s * c;
        if (jacobian == 0.0) {
            return std::numeric_limits<double>::quiet_NaN();
        }
        return evaluate(g_prev, energy * s * s) * evaluate(g_single, energy * c * c) * jacobian;
    };
    // An endpoint where the product is 0 * inf is replaced by its quadratic extrapolation
    // from the interior; for half-integer exponents the integrand is smooth there.
    auto endpoint = [&](double t, double inward) {
        const double v = integrand(t);
        if (std::isfinite(v)) {
            return v;
        }
        return 3.0 * integrand(t + inward * h) - 3.0 * integrand(t + 2.0 * inward * h) +
               integrand(t + 3.0 * inward * h);
    };
    double sum = endpoint(0.0, 1.0) + endpoint(0.5 * std::numbers::pi, -1.0);
    for (int k = 1; k < panels; ++k) {
        sum += (k % 2 == 1 ? 4.0 : 2.0) * integrand(k * h);
    }
    return sum * h / 3.0;
}

} // namespace

AnalyticDos AnalyticDos::make(double a, double b) {
    if (!(a > 0.0) || !std::isfinite(a)) {
        throw ValidationError("density amplitude a must be > 0");
    }
    if (!(b > -1.0) || !std::isfinite(b)) {
        throw ValidationError("density exponent b must be > -1");
    }
    return AnalyticDos{a, b};
}

double AnalyticDos::operator()(double energy) const {
    return a * std::pow(energy, b);
}

SampledDensity::SampledDensity(Eigen::ArrayXd energies, Eigen::ArrayXd values)
    : energies_(std::move(energies)), values_(std::move(values)) {
    if (energies_.size() == 0 || energies_.size() != values_.size()) {
        throw ValidationError("sampled density needs matching, non-empty energy and value arrays");
    }
    for (Eigen::Index i = 0; i < energies_.size(); ++i) {
        if (!(energies_(i) > 0.0) || (i > 0 && !(energies_(i) > energies_(i - 1)))) {
            throw ValidationError("sampled density energies must be positive and strictly increasing");
        }
        if (!(values_(i) >= 0.0) || !std::isfinite(values_(i))) {
            throw ValidationError("sampled density values must be finite and >= 0");
        }
    }
    log_log_ = (values_ > 0.0).all();
    if (log_log_) {
        log_energies_ = energies_.log();
        log_values_ = values_.log();
    }
}

double SampledDensity::operator()(double energy) const {
    if (log_log_) {
        if (energy <= 0.0) {
            // Extending the first segment's power law to E = 0.
            const double slope = energies_.size() > 1
                                     ? (log_values_(1) - log_values_(0)) / (log_energies_(1) - log_energies_(0))
                                     : 0.0;
            return slope > 0.0 ? 0.0 : (slope < 0.0 ? std::numeric_limits<double>::infinity() : values_(0));
        }
        return std::exp(interpolate(log_energies_, log_values_, std::log(energy)));
    }
    return std::max(0.0, interpolate(energies_, values_, energy));
}

double evaluate(const Density& density, double energy) {
    return std::visit([energy](const auto& g) { return g(energy); }, density);
}

double sphere_volume(int dimension, double radius) {
    check_dimension(dimension);
    if (!(radius >= 0.0) || !std::isfinite(radius)) {
        throw ValidationError("radius must be finite and >= 0");
    }
    return unit_ball_volume(dimension) * std::pow(radius, dimension);
}

double weyl_counting(int dimension, double energy) {
    check_dimension(dimension);
    check_energy(energy);
    return std::ldexp(unit_ball_volume(dimension), -dimension) * std::pow(energy, 0.5 * dimension);
}

double weyl_dos(int dimension, double energy) {
    check_dimension(dimension);
    check_energy(energy);
    return dimension * std::ldexp(unit_ball_volume(dimension), -(dimension + 1)) *
           std::pow(energy, 0.5 * dimension - 1.0);
}

double factorial(double x) {
    if (!(x > -1.0) || !std::isfinite(x)) {
        throw ValidationError("factorial argument must be > -1");
    }
    if (HalfInteger::representable(x)) {
        return specfun::half_integer_factorial(HalfInteger::from_double(x));
    }
    const double value = std::tgamma(x + 1.0);
    if (!std::isfinite(value)) {
        throw OverflowError("factorial of " + std::to_string(x) + " overflows double");
    }
    return value;
}

double log_factorial(double x) {
    if (!(x > -1.0) || !std::isfinite(x)) {
        throw ValidationError("factorial argument must be > -1");
    }
    if (HalfInteger::representable(x)) {
        return specfun::log_half_integer_factorial(HalfInteger::from_double(x));
    }
    return std::lgamma(x + 1.0);
}

double beta_integral(HalfInteger n, HalfInteger m, double energy) {
    if (n.twice() <= -2 || m.twice() <= -2) {
        throw ValidationError("beta integral exponents must be > -1");
    }
    check_energy(energy);
    const HalfInteger total = n + m + HalfInteger::from_int(1);
    return specfun::half_integer_factorial(n) * specfun::half_integer_factorial(m) /
           specfun::half_integer_factorial(total) * std::pow(energy, total.value());
}

double beta_integral(double n, double m, double energy) {
    return beta_integral(HalfInteger::from_double(n), HalfInteger::from_double(m), energy);
}

double NBosonClosedForm::dos(double energy) const {
    return coefficient * std::pow(energy, exponent);
}

double NBosonClosedForm::counting(double energy) const {
    return alpha * std::pow(energy, beta);
}

NBosonClosedForm nboson_closed_form(double a, double b, int particles) {
    const AnalyticDos g1 = AnalyticDos::make(a, b);
    if (particles < 1) {
        throw ValidationError("particle count must be >= 1");
    }
    const double n = particles;
    NBosonClosedForm out;
    out.particles = particles;
    out.exponent = n * g1.b + n - 1.0;
    out.beta = n * g1.b + n;

    const double ln_numerator = n * (log_factorial(g1.b) + std::log(g1.a));
    const double ln_coefficient = ln_numerator - log_factorial(out.exponent);
    out.ln_alpha = ln_numerator - log_factorial(out.beta);
    if (ln_coefficient > kLogMaxDouble || out.ln_alpha < kLogMinDouble || ln_coefficient < kLogMinDouble) {
        throw OverflowError("N-boson closed form for N = " + std::to_string(particles) +
                            " is not representable in double precision");
    }

    // Direct products keep table values like 8 pi^3 / 654729075 exact to rounding.
    const double numerator = std::pow(factorial(g1.b) * g1.a, n);
    if (std::isfinite(numerator) && numerator > 0.0) {
        const double den_g = factorial(out.exponent);
        const double den_n = factorial(out.beta);
        out.coefficient = numerator / den_g;
        out.alpha = numerator / den_n;
    } else {
        out.coefficient = std::exp(ln_coefficient);
        out.alpha = std::exp(out.ln_alpha);
    }
    return out;
}

SampledDensity convolve_dos(const Density& g_prev, const Density& g_single, std::span<const double> grid,
                            ConvolutionOptions options) {
    if (grid.empty()) {
        throw ValidationError("convolution grid is empty");
    }
    if (options.panels < 2 || options.panels % 2 != 0) {
        throw ValidationError("convolution panel count must be even and >= 2");
    }
    Eigen::ArrayXd energies(static_cast<Eigen::Index>(grid.size()));
    Eigen::ArrayXd values(energies.size());
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const double energy = grid[i];
        if (!(energy > 0.0) || !std::isfinite(energy)) {
            throw ValidationError("convolution grid energies must be > 0");
        }
        const double coarse = simpson(g_prev, g_single, energy, options.panels);
        const double fine = simpson(g_prev, g_single, energy, 2 * options.panels);
        const double scale = std::max(std::abs(fine), std::numeric_limits<double>::min());
        if (!std::isfinite(fine) || std::abs(fine - coarse) > options.tolerance * scale) {
            throw ComputationError("convolution grid too coarse at E = " + std::to_string(energy) +
                                   ": halving the step changed the result by " +
                                   std::to_string(std::abs(fine - coarse) / scale) + " (relative)");
        }
        energies(static_cast<Eigen::Index>(i)) = energy;
        values(static_cast<Eigen::Index>(i)) = fine;
    }
    return SampledDensity(std::move(energies), std::move(values));
}

} // namespace boxdos::analytic
