#include "mdm/interval.hpp"

#include <algorithm>
#include <charconv>
#include <cstdlib>
#include <ostream>

namespace mdm {

namespace {

// libm sin/cos/asin/acos are accurate to well under one ulp on glibc; two
// ulps of padding on each side keeps the enclosure honest on other platforms.
double pad_down(double v) { return rnd::next_down(rnd::next_down(v)); }
double pad_up(double v) { return rnd::next_up(rnd::next_up(v)); }

Interval clamp_unit(double lo, double hi) {
    return Interval(std::max(lo, -1.0), std::min(hi, 1.0));
}

void check_trig_arg(const Interval& a, const char* fn) {
    if (!(std::fabs(a.lo()) < 1e4 && std::fabs(a.hi()) < 1e4)) {
        throw DomainViolation(std::string(fn) + ": argument outside |x| < 1e4");
    }
}

// Does some point (offset + 2k)*pi, k integer, possibly lie in a?
// offset is given in half-turns, e.g. 0.5 for the maxima of sin.
bool hits_lattice(const Interval& a, double offset) {
    const double two_pi = 6.283185307179586;
    long kmin = static_cast<long>(std::floor(a.lo() / two_pi)) - 1;
    long kmax = static_cast<long>(std::ceil(a.hi() / two_pi)) + 1;
    Interval p = pi();
    for (long k = kmin; k <= kmax; ++k) {
        Interval m = Interval(offset + 2.0 * static_cast<double>(k)) * p;
        if (m.hi() >= a.lo() && m.lo() <= a.hi()) return true;
    }
    return false;
}

} // namespace

Interval operator*(const Interval& a, const Interval& b) {
    double al = a.lo(), ah = a.hi(), bl = b.lo(), bh = b.hi();
    if (al >= 0 && bl >= 0) return Interval(rnd::mul_down(al, bl), rnd::mul_up(ah, bh));
    if (ah <= 0 && bh <= 0) return Interval(rnd::mul_down(ah, bh), rnd::mul_up(al, bl));
    double lo = std::min({rnd::mul_down(al, bl), rnd::mul_down(al, bh), rnd::mul_down(ah, bl),
                          rnd::mul_down(ah, bh)});
    double hi = std::max({rnd::mul_up(al, bl), rnd::mul_up(al, bh), rnd::mul_up(ah, bl),
                          rnd::mul_up(ah, bh)});
    return Interval(lo, hi);
}

Interval operator/(const Interval& a, const Interval& b) {
    if (b.contains(0.0))
        throw DivisionByIntervalContainingZero("divisor interval contains zero");
    double al = a.lo(), ah = a.hi(), bl = b.lo(), bh = b.hi();
    double lo = std::min({rnd::div_down(al, bl), rnd::div_down(al, bh), rnd::div_down(ah, bl),
                          rnd::div_down(ah, bh)});
    double hi = std::max({rnd::div_up(al, bl), rnd::div_up(al, bh), rnd::div_up(ah, bl),
                          rnd::div_up(ah, bh)});
    return Interval(lo, hi);
}

Interval sqr(const Interval& a) {
    double m = a.mag();
    if (a.contains(0.0)) return Interval(0.0, rnd::mul_up(m, m));
    double n = a.mig();
    return Interval(rnd::mul_down(n, n), rnd::mul_up(m, m));
}

Interval sqrt(const Interval& a) {
    if (a.lo() < 0) {
        throw DomainViolation("sqrt of interval with negative part [" + std::to_string(a.lo()) +
                              ", " + std::to_string(a.hi()) + "]");
    }
    return Interval(rnd::sqrt_down(a.lo()), rnd::sqrt_up(a.hi()));
}

Interval sin(const Interval& a) {
    check_trig_arg(a, "sin");
    if (a.is_point() && a.lo() == 0.0) return Interval(0.0);
    if (a.width() >= 6.3) return Interval(-1.0, 1.0);
    double sl = std::sin(a.lo()), sh = std::sin(a.hi());
    double lo = pad_down(std::min(sl, sh));
    double hi = pad_up(std::max(sl, sh));
    if (hits_lattice(a, 0.5)) hi = 1.0;
    if (hits_lattice(a, -0.5)) lo = -1.0;
    return clamp_unit(lo, hi);
}

Interval cos(const Interval& a) {
    check_trig_arg(a, "cos");
    if (a.is_point() && a.lo() == 0.0) return Interval(1.0);
    if (a.width() >= 6.3) return Interval(-1.0, 1.0);
    double cl = std::cos(a.lo()), ch = std::cos(a.hi());
    double lo = pad_down(std::min(cl, ch));
    double hi = pad_up(std::max(cl, ch));
    if (hits_lattice(a, 0.0)) hi = 1.0;
    if (hits_lattice(a, 1.0)) lo = -1.0;
    return clamp_unit(lo, hi);
}

Interval asin(const Interval& a) {
    if (a.lo() < -1.0 || a.hi() > 1.0)
        throw DomainViolation("asin argument [" + std::to_string(a.lo()) + ", " +
                              std::to_string(a.hi()) + "] not inside [-1, 1]");
    if (a.is_point() && a.lo() == 0.0) return Interval(0.0);
    double half_pi_hi = rnd::mul_up(pi().hi(), 0.5);
    return Interval(std::max(pad_down(std::asin(a.lo())), -half_pi_hi),
                    std::min(pad_up(std::asin(a.hi())), half_pi_hi));
}

Interval acos(const Interval& a) {
    if (a.lo() < -1.0 || a.hi() > 1.0)
        throw DomainViolation("acos argument [" + std::to_string(a.lo()) + ", " +
                              std::to_string(a.hi()) + "] not inside [-1, 1]");
    double lo = (a.hi() == 1.0) ? 0.0 : std::max(pad_down(std::acos(a.hi())), 0.0);
    double hi = std::min(pad_up(std::acos(a.lo())), pi().hi());
    return Interval(lo, hi);
}

Interval abs(const Interval& a) {
    if (a.lo() >= 0) return a;
    if (a.hi() <= 0) return -a;
    return Interval(0.0, a.mag());
}

Interval hull(const Interval& a, const Interval& b) {
    return Interval(std::min(a.lo(), b.lo()), std::max(a.hi(), b.hi()));
}

Interval intersect(const Interval& a, const Interval& b) {
    if (!a.overlaps(b)) throw DomainViolation("intersection of disjoint intervals");
    return Interval(std::max(a.lo(), b.lo()), std::min(a.hi(), b.hi()));
}

Interval min(const Interval& a, const Interval& b) {
    return Interval(std::min(a.lo(), b.lo()), std::min(a.hi(), b.hi()));
}

Interval max(const Interval& a, const Interval& b) {
    return Interval(std::max(a.lo(), b.lo()), std::max(a.hi(), b.hi()));
}

Interval pi() { return Interval(0x1.921fb54442d18p+1, 0x1.921fb54442d19p+1); }
Interval sqrt2() { return sqrt(Interval(2.0)); }
Interval sqrt3() { return sqrt(Interval(3.0)); }
Interval sqrt6() { return sqrt(Interval(6.0)); }

Interval from_decimal(const std::string& s) {
    double v = 0;
    auto res = std::from_chars(s.data(), s.data() + s.size(), v);
    if (res.ec != std::errc() || res.ptr != s.data() + s.size())
        throw DomainViolation("not a decimal number: " + s);
    return Interval(rnd::next_down(v), rnd::next_up(v));
}

std::ostream& operator<<(std::ostream& os, const Interval& a) {
    char buf[64];
    auto put = [&](double v) {
        auto r = std::to_chars(buf, buf + sizeof buf, v);
        os.write(buf, r.ptr - buf);
    };
    os << '[';
    put(a.lo());
    os << ", ";
    put(a.hi());
    return os << ']';
}

} // namespace mdm
