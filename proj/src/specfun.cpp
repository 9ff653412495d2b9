#include "boxdos/specfun.hpp"

#include "boxdos/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

namespace boxdos::specfun {

namespace {

constexpr double kRescaleAbove = 1e200;
constexpr double kRescaleBy = 1e-200;

// Sign-change scan step. Consecutive zeros of J_nu (nu >= 0) are more than 2.4 apart,
// so a step of 1/2 never straddles two of them.
constexpr double kScanStep = 0.5;
constexpr double kBisectionAbsTol = 1e-12;

int miller_start_order(int l, double x) {
    const double top = std::max(static_cast<double>(l), x);
    int m = static_cast<int>(top + std::sqrt(60.0 * top) + 20.0);
    return m + (m % 2);
}

double bisect(BesselKind kind, int l, double lo, double hi, double f_lo) {
    for (int iter = 0; iter < 200; ++iter) {
        const double mid = 0.5 * (lo + hi);
        if (hi - lo <= kBisectionAbsTol || mid <= lo || mid >= hi) {
            return mid;
        }
        const double f_mid = bessel(kind, l, mid);
        if (f_mid == 0.0) {
            return mid;
        }
        if ((f_mid < 0.0) == (f_lo < 0.0)) {
            lo = mid;
            f_lo = f_mid;
        } else {
            hi = mid;
        }
    }
    throw ComputationError("bessel zero bisection did not converge for order " + std::to_string(l));
}

// Scans upward from max(l, 1) and refines each bracketed sign change. Stops after
// `max_count` roots or once the scan passes x_max.
std::vector<double> scan_zeros(BesselKind kind, int l, int max_count, double x_max) {
    std::vector<double> roots;
    double x = std::max(static_cast<double>(l), 1.0);
    double f = bessel(kind, l, x);
    while (static_cast<int>(roots.size()) < max_count && x <= x_max) {
        const double x_next = x + kScanStep;
        const double f_next = bessel(kind, l, x_next);
        if (f == 0.0) {
            roots.push_back(x);
        } else if ((f < 0.0) != (f_next < 0.0) && f_next != 0.0) {
            roots.push_back(bisect(kind, l, x, x_next, f));
        }
        x = x_next;
        f = f_next;
    }
    return roots;
}

void check_order(int l) {
    if (l < 0) {
        throw ValidationError("bessel order must be >= 0, got " + std::to_string(l));
    }
}

} // namespace

std::string_view to_string(BesselKind kind) {
    return kind == BesselKind::ordinary ? "ordinary" : "spherical";
}

bool HalfInteger::representable(double x) {
    const double twice = 2.0 * x;
    return std::isfinite(x) && std::abs(twice - std::round(twice)) <= 1e-12 * std::max(1.0, std::abs(twice));
}

HalfInteger HalfInteger::from_double(double x) {
    if (!representable(x)) {
        throw ValidationError("value " + std::to_string(x) + " is not a multiple of 1/2");
    }
    return HalfInteger{static_cast<int>(std::lround(2.0 * x))};
}

double cyl_bessel_j(int l, double x) {
    check_order(l);
    if (x == 0.0) {
        return l == 0 ? 1.0 : 0.0;
    }
    const double ax = std::abs(x);
    const int m = miller_start_order(l, ax);

    double above = 0.0;  // J_{j+1}
    double current = 1.0; // J_j, arbitrary scale
    double wanted = (l == m) ? current : 0.0;
    double even_sum = 0.0;
    for (int j = m; j >= 1; --j) {
        const double below = (2.0 * j / ax) * current - above;
        above = current;
        current = below;
        if (std::abs(current) > kRescaleAbove) {
            current *= kRescaleBy;
            above *= kRescaleBy;
            wanted *= kRescaleBy;
            even_sum *= kRescaleBy;
        }
        const int index = j - 1;
        if (index == l) {
            wanted = current;
        }
        if (index > 0 && index % 2 == 0) {
            even_sum += current;
        }
    }
    const double value = wanted / (current + 2.0 * even_sum);
    return (x < 0.0 && l % 2 == 1) ? -value : value;
}

double sph_bessel_j(int l, double x) {
    check_order(l);
    if (x == 0.0) {
        return l == 0 ? 1.0 : 0.0;
    }
    const double s = std::sin(x);
    const double c = std::cos(x);
    const double j0 = s / x;
    if (l == 0) {
        return j0;
    }
    if (std::abs(x) > l) {
        double prev = j0;
        double cur = s / (x * x) - c / x;
        for (int k = 1; k < l; ++k) {
            const double next = (2.0 * k + 1.0) / x * cur - prev;
            prev = cur;
            cur = next;
        }
        return cur;
    }

    // x <= l: downward recurrence is the stable direction. Normalise against whichever of
    // j_0, j_1 is larger in magnitude so a zero of j_0 does not spoil the scale.
    const int m = miller_start_order(l, std::abs(x));
    double above = 0.0;
    double current = 1e-30;
    double wanted = 0.0;
    double at0 = 0.0;
    double at1 = 0.0;
    for (int k = m; k >= 1; --k) {
        const double below = (2.0 * k + 1.0) / x * current - above;
        above = current;
        current = below;
        if (std::abs(current) > kRescaleAbove) {
            current *= kRescaleBy;
            above *= kRescaleBy;
            wanted *= kRescaleBy;
        }
        const int index = k - 1;
        if (index == l) {
            wanted = current;
        }
    }
    at0 = current;
    at1 = above;
    const double j1 = s / (x * x) - c / x;
    if (std::abs(j0) >= std::abs(j1)) {
        return wanted * (j0 / at0);
    }
    return wanted * (j1 / at1);
}

double bessel(BesselKind kind, int l, double x) {
    return kind == BesselKind::ordinary ? cyl_bessel_j(l, x) : sph_bessel_j(l, x);
}

double bessel_zero(BesselKind kind, int l, int n) {
    check_order(l);
    if (n < 1) {
        throw ValidationError("bessel zero index must be >= 1, got " + std::to_string(n));
    }
    // Scan limit from the larger of the small-n estimate nu + n*pi and McMahon's large-n
    // estimate (n + nu/2) pi, widened if the zero still lies beyond it.
    double limit = std::max(l + (n + 2) * std::numbers::pi, (n + 0.5 * l + 1.0) * std::numbers::pi) + 10.0;
    auto roots = scan_zeros(kind, l, n, limit);
    for (int widen = 0; widen < 8 && static_cast<int>(roots.size()) < n; ++widen) {
        limit *= 2.0;
        roots = scan_zeros(kind, l, n, limit);
    }
    if (static_cast<int>(roots.size()) < n) {
        throw ComputationError("failed to bracket zero " + std::to_string(n) + " of " +
                               std::string(to_string(kind)) + " bessel order " + std::to_string(l));
    }
    return roots.back();
}

std::vector<double> bessel_zeros_below(BesselKind kind, int l, double x_max) {
    check_order(l);
    auto roots = scan_zeros(kind, l, std::numeric_limits<int>::max(), x_max);
    while (!roots.empty() && roots.back() > x_max) {
        roots.pop_back();
    }
    return roots;
}

double half_integer_factorial(HalfInteger x) {
    if (x.twice() < -1) {
        throw ValidationError("factorial argument must be >= -1/2, got " + std::to_string(x.value()));
    }
    double product = x.is_integer() ? 1.0 : std::sqrt(std::numbers::pi);
    // x (x-1) ... down to 1 (integer) or 1/2 (half-integer).
    for (int twice = x.twice(); twice >= 1; twice -= 2) {
        product *= 0.5 * twice;
    }
    if (!std::isfinite(product)) {
        throw OverflowError("factorial of " + std::to_string(x.value()) + " overflows double");
    }
    return product;
}

double half_integer_factorial(double x) {
    return half_integer_factorial(HalfInteger::from_double(x));
}

double log_half_integer_factorial(HalfInteger x) {
    if (x.twice() < -1) {
        throw ValidationError("factorial argument must be >= -1/2, got " + std::to_string(x.value()));
    }
    double sum = x.is_integer() ? 0.0 : 0.5 * std::log(std::numbers::pi);
    for (int twice = x.twice(); twice >= 1; twice -= 2) {
        sum += std::log(0.5 * twice);
    }
    return sum;
}

} // namespace boxdos::specfun
