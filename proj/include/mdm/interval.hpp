#pragma once

// Closed intervals with outward rounding.
//
// Rounding is done without touching the FPU mode: every basic operation is
// computed in round-to-nearest, the exact rounding error is recovered with an
// error-free transform, and the endpoint is stepped one ulp outward only when
// that error points the wrong way. Exact results therefore stay exact.

#include <cmath>
#include <iosfwd>
#include <limits>
#include <string>

#include "mdm/error.hpp"

namespace mdm {

namespace rnd {

inline double next_up(double x) { return std::nextafter(x, std::numeric_limits<double>::infinity()); }
inline double next_down(double x) { return std::nextafter(x, -std::numeric_limits<double>::infinity()); }

// Below this magnitude fma residuals may themselves underflow.
inline constexpr double kTiny = 0x1p-960;

inline double add_down(double a, double b) {
    double s = a + b;
    double bb = s - a;
    double e = (a - (s - bb)) + (b - bb);
    return e < 0 ? next_down(s) : s;
}
inline double add_up(double a, double b) {
    double s = a + b;
    double bb = s - a;
    double e = (a - (s - bb)) + (b - bb);
    return e > 0 ? next_up(s) : s;
}
inline double sub_down(double a, double b) { return add_down(a, -b); }
inline double sub_up(double a, double b) { return add_up(a, -b); }

inline double mul_down(double a, double b) {
    double p = a * b;
    if (p != 0 && std::fabs(p) < kTiny) return next_down(p);
    if (p == 0) return (a == 0 || b == 0) ? 0.0 : next_down(0.0);
    double e = std::fma(a, b, -p);
    return e < 0 ? next_down(p) : p;
}
inline double mul_up(double a, double b) {
    double p = a * b;
    if (p != 0 && std::fabs(p) < kTiny) return next_up(p);
    if (p == 0) return (a == 0 || b == 0) ? 0.0 : next_up(0.0);
    double e = std::fma(a, b, -p);
    return e > 0 ? next_up(p) : p;
}

// Sign of (a/b - q) from the exact residual a - q*b.
inline double div_down(double a, double b) {
    double q = a / b;
    if (std::fabs(q) < kTiny) return a == 0 ? 0.0 : next_down(q);
    double r = std::fma(-q, b, a);
    bool below = (r > 0 && b < 0) || (r < 0 && b > 0);
    return below ? next_down(q) : q;
}
inline double div_up(double a, double b) {
    double q = a / b;
    if (std::fabs(q) < kTiny) return a == 0 ? 0.0 : next_up(q);
    double r = std::fma(-q, b, a);
    bool above = (r > 0 && b > 0) || (r < 0 && b < 0);
    return above ? next_up(q) : q;
}

inline double sqrt_down(double a) {
    double s = std::sqrt(a);
    double r = std::fma(-s, s, a);
    return r < 0 ? next_down(s) : s;
}
inline double sqrt_up(double a) {
    double s = std::sqrt(a);
    double r = std::fma(-s, s, a);
    return r > 0 ? next_up(s) : s;
}

} // namespace rnd

class Interval {
public:
    constexpr Interval() = default;
    constexpr Interval(double v) : lo_(v), hi_(v) {}  // NOLINT: point intervals convert freely
    Interval(double lo, double hi) : lo_(lo), hi_(hi) {
        if (!(lo <= hi) || std::isnan(lo) || std::isnan(hi))
            throw DomainViolation("invalid interval endpoints [" + std::to_string(lo) + ", " +
                                  std::to_string(hi) + "]");
    }

    double lo() const { return lo_; }
    double hi() const { return hi_; }
    double mid() const { return lo_ == hi_ ? lo_ : 0.5 * lo_ + 0.5 * hi_; }
    double width() const { return rnd::sub_up(hi_, lo_); }
    double rad() const { return 0.5 * width(); }
    // Largest and smallest absolute value.
    double mag() const { return std::fmax(std::fabs(lo_), std::fabs(hi_)); }
    double mig() const { return contains(0.0) ? 0.0 : std::fmin(std::fabs(lo_), std::fabs(hi_)); }

    bool is_point() const { return lo_ == hi_; }
    bool contains(double v) const { return lo_ <= v && v <= hi_; }
    bool contains(const Interval& o) const { return lo_ <= o.lo_ && o.hi_ <= hi_; }
    bool overlaps(const Interval& o) const { return lo_ <= o.hi_ && o.lo_ <= hi_; }
    bool subset_of(const Interval& o) const { return o.contains(*this); }

    bool certainly_positive() const { return lo_ > 0; }
    bool certainly_negative() const { return hi_ < 0; }
    bool certainly_less(const Interval& o) const { return hi_ < o.lo_; }

    Interval& operator+=(const Interval& b);
    Interval& operator-=(const Interval& b);
    Interval& operator*=(const Interval& b);
    Interval& operator/=(const Interval& b);

private:
    double lo_ = 0.0;
    double hi_ = 0.0;
};

inline Interval operator+(const Interval& a, const Interval& b) {
    return Interval(rnd::add_down(a.lo(), b.lo()), rnd::add_up(a.hi(), b.hi()));
}
inline Interval operator-(const Interval& a, const Interval& b) {
    return Interval(rnd::sub_down(a.lo(), b.hi()), rnd::sub_up(a.hi(), b.lo()));
}
inline Interval operator-(const Interval& a) { return Interval(-a.hi(), -a.lo()); }

Interval operator*(const Interval& a, const Interval& b);
Interval operator/(const Interval& a, const Interval& b);

inline Interval& Interval::operator+=(const Interval& b) { return *this = *this + b; }
inline Interval& Interval::operator-=(const Interval& b) { return *this = *this - b; }
inline Interval& Interval::operator*=(const Interval& b) { return *this = *this * b; }
inline Interval& Interval::operator/=(const Interval& b) { return *this = *this / b; }

Interval sqr(const Interval& a);
Interval sqrt(const Interval& a);
Interval sin(const Interval& a);
Interval cos(const Interval& a);
Interval asin(const Interval& a);
Interval acos(const Interval& a);
Interval abs(const Interval& a);

Interval hull(const Interval& a, const Interval& b);
// Throws DomainViolation when the two do not meet.
Interval intersect(const Interval& a, const Interval& b);
Interval min(const Interval& a, const Interval& b);
Interval max(const Interval& a, const Interval& b);

Interval pi();
Interval sqrt2();
Interval sqrt3();
Interval sqrt6();

// Certified enclosure of the decimal string, e.g. "1.545358".
Interval from_decimal(const std::string& s);

std::ostream& operator<<(std::ostream& os, const Interval& a);

} // namespace mdm
