#pragma once

// Polynomial enclosures of functions of t on [-1/30, 1/30].
//
// Coefficients are intervals. A side polynomial P stands for every
// polynomial whose coefficients lie in P's intervals, so for fixed t its value
// is the interval eval(P, t). A PolyBound certifies
//     eval(lower, t).lo() <= f(t) <= eval(upper, t).hi()   for |t| <= 1/30.

#include <array>
#include <string>
#include <vector>

#include "mdm/interval.hpp"

namespace mdm {

inline constexpr int kPolyDegree = 6;

// Interval enclosing [-1/30, 1/30].
Interval poly_domain();

struct Poly {
    std::vector<Interval> c;  // c[k] multiplies t^k

    Poly() = default;
    explicit Poly(std::vector<Interval> coeffs) : c(std::move(coeffs)) {}
    int degree() const { return static_cast<int>(c.size()) - 1; }
    Interval coeff(int k) const { return k < static_cast<int>(c.size()) ? c[k] : Interval(0.0); }
    Interval eval(const Interval& t) const;
};

Poly operator+(const Poly& a, const Poly& b);
Poly operator-(const Poly& a, const Poly& b);
Poly operator-(const Poly& a);
Poly operator*(const Poly& a, const Poly& b);
Poly operator*(const Interval& s, const Poly& a);

// Folds every t^k with k > target into t^target using
// |a t^k| <= |a| / 30^(k - target) * t^target; target is 2 or 6.
Poly reduce_degree(const Poly& p, int target);

struct PolyBound {
    std::array<Interval, kPolyDegree + 1> lower{};
    std::array<Interval, kPolyDegree + 1> upper{};

    static PolyBound constant(const Interval& v);
    // v0 + v1 t
    static PolyBound affine(const Interval& v0, const Interval& v1);
    static PolyBound from_sides(const Poly& lower, const Poly& upper);

    Poly lower_poly() const;
    Poly upper_poly() const;
    // Certified bounds at one t.
    double lower_at(double t) const;
    double upper_at(double t) const;
};

enum class BaseFunction {
    Sin,             // 0 < x + c < pi/2
    Cos,             // 0 < x + c < pi/2
    Arccos,          // 0 < c < 0.85, 0 < x + c < 0.85
    Reciprocal,      // 0.4 < c, 0.4 < x + c < 2c
    ReciprocalTight, // 1.2 < c, 1.2 < x + c < 2c
    Sqrt,            // 1.5 < c, 1.5 < x + c < 2c
};

const char* to_string(BaseFunction f);

// Taylor polynomial of f(x + c) in x with a Lagrange remainder term.
PolyBound base_bound(BaseFunction f, double c);

// f(g(t)); throws RangeConditionUnverifiable when g's bounds are not
// certified to stay in f's domain.
PolyBound compose(BaseFunction f, const PolyBound& inner);

PolyBound operator+(const PolyBound& a, const PolyBound& b);
PolyBound operator-(const PolyBound& a, const PolyBound& b);
PolyBound operator-(const PolyBound& a);
// Requires certified nonnegative lower sides; else NegativityUnderMul.
PolyBound operator*(const PolyBound& a, const PolyBound& b);
// s must be nonnegative.
PolyBound scale(const Interval& s, const PolyBound& a);

// Certified range of an interval quadratic over the domain.
Interval quadratic_range(const Poly& p);
// Range of a side: degree 6 -> 2, then exact extremum.
Interval side_range(const Poly& p);
// Certified enclosure of the range of the bounded function.
Interval range(const PolyBound& b);

// Closed intervals covering every t of the domain where the quadratic can be
// >= 0 (the set for > 0 is covered too). At most a handful of pieces, merged
// and sorted.
std::vector<Interval> quadratic_feasible_set(const Poly& p);
// Covers {t : f(t) >= 0} using the upper side.
std::vector<Interval> feasible_set(const PolyBound& b);

} // namespace mdm
