#pragma once

#include <string_view>
#include <vector>

namespace boxdos::specfun {

enum class BesselKind { ordinary, spherical };

std::string_view to_string(BesselKind kind);

/// The n-th positive zero of J_l (ordinary) or j_l (spherical).
struct BesselZero {
    BesselKind kind;
    int order;
    int index;
    double root;
};

/// A number k/2 for integer k. Factorials and beta integrals in the closed forms only
/// ever need these, so they are kept exact instead of going through a floating gamma.
class HalfInteger {
public:
    constexpr HalfInteger() = default;
    static constexpr HalfInteger from_twice(int twice) { return HalfInteger{twice}; }
    static constexpr HalfInteger from_int(int n) { return HalfInteger{2 * n}; }
    /// Throws ValidationError unless 2x is an integer (to 1e-12).
    static HalfInteger from_double(double x);
    /// True when 2x is an integer to within 1e-12.
    static bool representable(double x);

    constexpr int twice() const { return twice_; }
    constexpr double value() const { return 0.5 * twice_; }
    constexpr bool is_integer() const { return twice_ % 2 == 0; }

    friend constexpr HalfInteger operator+(HalfInteger a, HalfInteger b) { return HalfInteger{a.twice_ + b.twice_}; }
    friend constexpr HalfInteger operator-(HalfInteger a, HalfInteger b) { return HalfInteger{a.twice_ - b.twice_}; }
    friend constexpr HalfInteger operator*(int n, HalfInteger a) { return HalfInteger{n * a.twice_}; }
    friend constexpr bool operator==(HalfInteger, HalfInteger) = default;
    friend constexpr auto operator<=>(HalfInteger, HalfInteger) = default;

private:
    constexpr explicit HalfInteger(int twice) : twice_(twice) {}
    int twice_ = 0;
};

/// Ordinary Bessel function of the first kind J_l(x), integer order.
/// Miller's downward recurrence normalised by J_0 + 2 sum J_2k = 1.
double cyl_bessel_j(int l, double x);

/// Spherical Bessel function j_l(x). Closed trigonometric form for l = 0;
/// upward recurrence for x > l, normalised downward recurrence otherwise.
double sph_bessel_j(int l, double x);

double bessel(BesselKind kind, int l, double x);

/// n-th positive root of J_l or j_l. Throws ValidationError for l < 0 or n < 1 and
/// ComputationError if the root cannot be bracketed.
double bessel_zero(BesselKind kind, int l, int n);

/// All positive roots of J_l or j_l that are <= x_max, ascending.
std::vector<double> bessel_zeros_below(BesselKind kind, int l, double x_max);

/// x! = Gamma(x + 1) for x in {-1/2, 0, 1/2, 1, ...}. Exact product form.
/// Throws ValidationError for x < -1/2, OverflowError if the result is not finite.
double half_integer_factorial(HalfInteger x);
double half_integer_factorial(double x);

/// ln(x!) for the same domain; never overflows.
double log_half_integer_factorial(HalfInteger x);

} // namespace boxdos::specfun
