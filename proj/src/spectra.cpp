#include "boxdos/spectra.hpp"

#include "boxdos/errors.hpp"
#include "boxdos/specfun.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <optional>
#include <random>

namespace boxdos {

namespace {

using specfun::BesselKind;

constexpr std::int64_t kMaxRationalDenominator = 1000;
constexpr double kMaxExactKey = 4e18;

void require_positive(double value, const char* name) {
    if (!(value > 0.0) || !std::isfinite(value)) {
        throw ValidationError(std::string(name) + " must be positive and finite");
    }
}

void require_finite(double value, const char* name) {
    if (!std::isfinite(value)) {
        throw ValidationError(std::string(name) + " must be finite");
    }
}

struct Rational {
    std::int64_t num;
    std::int64_t den;
};

std::optional<Rational> small_rational(double w) {
    for (std::int64_t q = 1; q <= kMaxRationalDenominator; ++q) {
        const double scaled = w * static_cast<double>(q);
        const double p = std::round(scaled);
        if (p >= 1.0 && std::abs(scaled - p) <= 1e-12 * scaled) {
            return Rational{static_cast<std::int64_t>(p), q};
        }
    }
    return std::nullopt;
}

double sphere_radius(Normalization normalization, double radius) {
    return normalization == Normalization::unit_volume ? std::cbrt(3.0 / (4.0 * std::numbers::pi)) : radius;
}

std::pair<double, double> cylinder_dims(Normalization normalization, double height, double radius) {
    if (normalization == Normalization::raw) {
        return {height, radius};
    }
    const double aspect = height / radius;
    const double r = std::cbrt(1.0 / (std::numbers::pi * aspect));
    return {aspect * r, r};
}

std::vector<double> hyperbox_lengths(std::span<const double> lengths, Normalization normalization) {
    std::vector<double> out(lengths.begin(), lengths.end());
    if (normalization == Normalization::unit_volume) {
        double log_volume = 0.0;
        for (double l : out) {
            log_volume += std::log(l);
        }
        const double scale = std::exp(log_volume / static_cast<double>(out.size()));
        for (double& l : out) {
            l /= scale;
        }
    }
    return out;
}

// Exact path: integer weights, energies key / denominator.
Spectrum enumerate_hyperbox_exact(const std::vector<std::int64_t>& weights, std::int64_t denominator,
                                  double e_max, bool labels) {
    const std::size_t dims = weights.size();
    const auto max_key = static_cast<std::int64_t>(std::floor(e_max * static_cast<double>(denominator)));
    std::vector<std::int64_t> min_rest(dims + 1, 0);
    for (std::size_t i = dims; i-- > 0;) {
        min_rest[i] = min_rest[i + 1] + weights[i];
    }

    LevelAccumulator acc(labels);
    QuantumNumbers n(dims, 0);
    auto descend = [&](auto& self, std::size_t i, std::int64_t used) -> void {
        for (std::int64_t k = 1;; ++k) {
            const std::int64_t here = used + weights[i] * k * k;
            if (here + min_rest[i + 1] > max_key) {
                break;
            }
            n[i] = static_cast<int>(k);
            if (i + 1 == dims) {
                acc.add_exact(here, labels ? n : QuantumNumbers{});
            } else {
                self(self, i + 1, here);
            }
        }
    };
    descend(descend, 0, 0);
    const double den = static_cast<double>(denominator);
    return std::move(acc).finish_exact(
        e_max, [den](std::int64_t key) { return static_cast<double>(key) / den; }, denominator);
}

Spectrum enumerate_hyperbox_floating(const std::vector<double>& weights, double e_max, bool labels) {
    const std::size_t dims = weights.size();
    std::vector<double> min_rest(dims + 1, 0.0);
    for (std::size_t i = dims; i-- > 0;) {
        min_rest[i] = min_rest[i + 1] + weights[i];
    }

    LevelAccumulator acc(labels);
    QuantumNumbers n(dims, 0);
    auto descend = [&](auto& self, std::size_t i, double used) -> void {
        for (int k = 1;; ++k) {
            const double here = used + weights[i] * static_cast<double>(k) * static_cast<double>(k);
            if (here + min_rest[i + 1] > e_max) {
                break;
            }
            n[i] = k;
            if (i + 1 == dims) {
                acc.add(here, labels ? n : QuantumNumbers{});
            } else {
                self(self, i + 1, here);
            }
        }
    };
    descend(descend, 0, 0.0);
    return std::move(acc).finish(e_max);
}

} // namespace

BoxGeometry cube() {
    return BoxGeometry{Hyperbox{{1.0, 1.0, 1.0}}, Normalization::unit_volume};
}

BoxGeometry square() {
    return BoxGeometry{Hyperbox{{1.0, 1.0}}, Normalization::unit_volume};
}

BoxGeometry incommensurate_rectangle() {
    return BoxGeometry{Hyperbox{{1.0, 2.0 / std::numbers::e, std::numbers::e / 2.0}}, Normalization::unit_volume};
}

BoxGeometry resolved(const BoxGeometry& geometry) {
    const Normalization norm = geometry.normalization;
    BoxGeometry out = geometry;
    out.normalization = Normalization::raw;
    std::visit(
        [&](const auto& shape) {
            using T = std::decay_t<decltype(shape)>;
            if constexpr (std::is_same_v<T, Hyperbox>) {
                out.shape = Hyperbox{hyperbox_lengths(shape.lengths, norm)};
            } else if constexpr (std::is_same_v<T, Sphere>) {
                out.shape = Sphere{sphere_radius(norm, shape.radius)};
            } else if constexpr (std::is_same_v<T, Cylinder>) {
                const auto [h, r] = cylinder_dims(norm, shape.height, shape.radius);
                out.shape = Cylinder{h, r};
            } else {
                out.shape = RelativisticSquare{norm == Normalization::unit_volume ? 1.0 : shape.side};
            }
        },
        geometry.shape);
    return out;
}

double volume(const BoxGeometry& geometry) {
    const BoxGeometry g = resolved(geometry);
    return std::visit(
        [](const auto& shape) -> double {
            using T = std::decay_t<decltype(shape)>;
            if constexpr (std::is_same_v<T, Hyperbox>) {
                return std::accumulate(shape.lengths.begin(), shape.lengths.end(), 1.0, std::multiplies<>());
            } else if constexpr (std::is_same_v<T, Sphere>) {
                return 4.0 / 3.0 * std::numbers::pi * std::pow(shape.radius, 3);
            } else if constexpr (std::is_same_v<T, Cylinder>) {
                return std::numbers::pi * shape.radius * shape.radius * shape.height;
            } else {
                return shape.side * shape.side;
            }
        },
        g.shape);
}

Spectrum enumerate_hyperbox(std::span<const double> lengths, double e_max, Normalization normalization,
                            EnumerateOptions options) {
    if (lengths.empty()) {
        throw ValidationError("hyperbox dimension must be >= 1");
    }
    for (double l : lengths) {
        require_positive(l, "box length");
    }
    require_finite(e_max, "e_max");

    const std::vector<double> sides = hyperbox_lengths(lengths, normalization);
    std::vector<double> weights;
    weights.reserve(sides.size());
    for (double l : sides) {
        weights.push_back(1.0 / (l * l));
    }
    const double ground = std::accumulate(weights.begin(), weights.end(), 0.0);
    if (e_max < ground) {
        return Spectrum({}, e_max, 0, "e_max is below the ground state energy");
    }

    std::vector<Rational> rationals;
    for (double w : weights) {
        if (auto r = small_rational(w)) {
            rationals.push_back(*r);
        } else {
            break;
        }
    }
    if (rationals.size() == weights.size()) {
        std::int64_t den = 1;
        for (const Rational& r : rationals) {
            den = std::lcm(den, r.den);
        }
        if (e_max * static_cast<double>(den) < kMaxExactKey) {
            std::vector<std::int64_t> int_weights;
            for (const Rational& r : rationals) {
                int_weights.push_back(r.num * (den / r.den));
            }
            return enumerate_hyperbox_exact(int_weights, den, e_max, options.labels);
        }
    }
    return enumerate_hyperbox_floating(weights, e_max, options.labels);
}

Spectrum enumerate_sphere(double k_max, Normalization normalization, double radius, EnumerateOptions options) {
    require_positive(k_max, "k_max");
    require_positive(radius, "radius");
    const double r = sphere_radius(normalization, radius);
    const double scale = 1.0 / (std::numbers::pi * r * std::numbers::pi * r);
    const double e_max = k_max * k_max * scale;

    LevelAccumulator acc(options.labels);
    for (int l = 0;; ++l) {
        // First zeros increase with l, so the first order with no zero below k_max ends the scan.
        const std::vector<double> zeros = specfun::bessel_zeros_below(BesselKind::spherical, l, k_max);
        if (zeros.empty()) {
            break;
        }
        for (std::size_t i = 0; i < zeros.size(); ++i) {
            const double energy = zeros[i] * zeros[i] * scale;
            for (int m = -l; m <= l; ++m) {
                acc.add(energy, options.labels ? QuantumNumbers{l, static_cast<int>(i) + 1, m} : QuantumNumbers{});
            }
        }
    }
    std::string warning = acc.size() == 0 ? "k_max is below the first zero of j_0" : "";
    return std::move(acc).finish(e_max, std::move(warning));
}

Spectrum enumerate_cylinder(double height, double radius, double e_max, Normalization normalization,
                            EnumerateOptions options) {
    require_positive(height, "height");
    require_positive(radius, "radius");
    require_finite(e_max, "e_max");
    const auto [h, r] = cylinder_dims(normalization, height, radius);
    const double axial = std::numbers::pi * std::numbers::pi / (h * h);
    const double radial = 1.0 / (r * r);

    LevelAccumulator acc(options.labels);
    if (e_max > axial) {
        const double x_max = r * std::sqrt(e_max - axial);
        for (int l = 0;; ++l) {
            const std::vector<double> zeros = specfun::bessel_zeros_below(BesselKind::ordinary, l, x_max);
            if (zeros.empty()) {
                break;
            }
            for (std::size_t i = 0; i < zeros.size(); ++i) {
                const double transverse = zeros[i] * zeros[i] * radial;
                for (int q = 1;; ++q) {
                    const double energy = axial * q * q + transverse;
                    if (energy > e_max) {
                        break;
                    }
                    const int n = static_cast<int>(i) + 1;
                    if (l == 0) {
                        acc.add(energy, options.labels ? QuantumNumbers{q, 0, n, 0} : QuantumNumbers{});
                    } else {
                        acc.add(energy, options.labels ? QuantumNumbers{q, l, n, 1} : QuantumNumbers{});
                        acc.add(energy, options.labels ? QuantumNumbers{q, l, n, -1} : QuantumNumbers{});
                    }
                }
            }
        }
    }
    std::string warning = acc.size() == 0 ? "e_max is below the ground state energy" : "";
    return std::move(acc).finish(e_max, std::move(warning));
}

Spectrum enumerate_relativistic_square(double side, double e_max, Normalization normalization,
                                       EnumerateOptions options) {
    require_positive(side, "side");
    require_finite(e_max, "e_max");
    const double l = normalization == Normalization::unit_volume ? 1.0 : side;
    LevelAccumulator acc(options.labels);
    const auto energy_of = [l](std::int64_t key) { return std::sqrt(static_cast<double>(key)) / l; };
    for (std::int64_t nx = 1; energy_of(nx * nx + 1) <= e_max; ++nx) {
        for (std::int64_t ny = 1; energy_of(nx * nx + ny * ny) <= e_max; ++ny) {
            acc.add_exact(nx * nx + ny * ny,
                          options.labels ? QuantumNumbers{static_cast<int>(nx), static_cast<int>(ny)} : QuantumNumbers{});
        }
    }
    std::string warning = acc.size() == 0 ? "e_max is below the ground state energy" : "";
    return std::move(acc).finish_exact(e_max, energy_of, 0, std::move(warning));
}

Spectrum enumerate(const BoxGeometry& geometry, double e_max, EnumerateOptions options) {
    const Normalization norm = geometry.normalization;
    return std::visit(
        [&](const auto& shape) -> Spectrum {
            using T = std::decay_t<decltype(shape)>;
            if constexpr (std::is_same_v<T, Hyperbox>) {
                return enumerate_hyperbox(shape.lengths, e_max, norm, options);
            } else if constexpr (std::is_same_v<T, Sphere>) {
                require_positive(e_max, "e_max");
                require_positive(shape.radius, "radius");
                const double r = sphere_radius(norm, shape.radius);
                // Overshoot slightly so rounding in k -> energy never drops a level at e_max.
                const double k_max = std::numbers::pi * r * std::sqrt(e_max) * (1.0 + 1e-12);
                return enumerate_sphere(k_max, norm, shape.radius, options).truncated(e_max);
            } else if constexpr (std::is_same_v<T, Cylinder>) {
                return enumerate_cylinder(shape.height, shape.radius, e_max, norm, options);
            } else {
                return enumerate_relativistic_square(shape.side, e_max, norm, options);
            }
        },
        geometry.shape);
}

double random_power_scale(int count, double b, double a) {
    if (count < 1) {
        throw ValidationError("random spectrum count must be >= 1");
    }
    if (!(b > -1.0) || !std::isfinite(b)) {
        throw ValidationError("density exponent b must be > -1");
    }
    require_positive(a, "density amplitude a");
    return std::pow((b + 1.0) * static_cast<double>(count) / a, 1.0 / (b + 1.0));
}

Spectrum random_power_spectrum(int count, double b, std::uint64_t seed, double a) {
    const double scale = random_power_scale(count, b, a);
    std::mt19937_64 engine(seed);
    std::vector<double> x(static_cast<std::size_t>(count));
    for (double& v : x) {
        // 53 random bits -> [0, 1); independent of the standard library's distributions.
        v = static_cast<double>(engine() >> 11) * 0x1.0p-53;
    }
    std::sort(x.begin(), x.end());
    LevelAccumulator acc;
    const double power = 1.0 / (b + 1.0);
    for (double v : x) {
        acc.add(scale * std::pow(v, power));
    }
    return std::move(acc).finish(scale);
}

} // namespace boxdos
