#include "mdm/polybound.hpp"

#include <algorithm>
#include <cmath>

namespace mdm {

namespace {

Interval I(double v) { return Interval(v); }

Interval third() { return I(1.0) / I(30.0); }

double pow30(int k) {
    double r = 1.0;
    for (int i = 0; i < k; ++i) r *= 30.0;  // exact up to 30^10
    return r;
}

struct Domain {
    Interval lo;        // x + c must stay strictly above this
    Interval hi;        // ... and strictly below this
    Interval c_lo;      // constraint on c itself
    Interval c_hi;
    bool increasing;
};

Domain domain_of(BaseFunction f, double c) {
    const Interval inf(1e300);
    Interval half_pi = pi() / I(2.0);
    switch (f) {
    case BaseFunction::Sin: return {I(0.0), half_pi, I(0.0), half_pi, true};
    case BaseFunction::Cos: return {I(0.0), half_pi, I(0.0), half_pi, false};
    case BaseFunction::Arccos: {
        Interval cap = I(85.0) / I(100.0);
        return {I(0.0), cap, I(0.0), cap, false};
    }
    case BaseFunction::Reciprocal: {
        Interval l = I(4.0) / I(10.0);
        return {l, I(2.0) * I(c), l, inf, false};
    }
    case BaseFunction::ReciprocalTight: {
        Interval l = I(12.0) / I(10.0);
        return {l, I(2.0) * I(c), l, inf, false};
    }
    case BaseFunction::Sqrt: return {I(1.5), I(2.0) * I(c), I(1.5), inf, true};
    }
    throw DomainConstraintViolated("unknown base function");
}

// Integer coefficients of P_n with (1 - x^2)^(-1/2) derivative n equal to
// P_n(x) (1 - x^2)^(-(2n + 1)/2).
std::vector<double> arccos_aux(int n) {
    std::vector<double> p{1.0};
    for (int k = 0; k < n; ++k) {
        std::vector<double> next(p.size() + 1, 0.0);
        for (std::size_t i = 1; i < p.size(); ++i) {
            double d = static_cast<double>(i) * p[i];  // P' coefficient of x^(i-1)
            next[i - 1] += d;
            next[i + 1] -= d;
        }
        for (std::size_t i = 0; i < p.size(); ++i) next[i + 1] += (2.0 * k + 1.0) * p[i];
        p = std::move(next);
    }
    return p;
}

// n-th derivative of (1 - x^2)^(-1/2).
Interval inv_sqrt_deriv(int n, const Interval& x) {
    auto p = arccos_aux(n);
    Interval acc(0.0);
    for (int i = static_cast<int>(p.size()) - 1; i >= 0; --i) acc = acc * x + I(p[i]);
    Interval s = sqrt(I(1.0) - sqr(x));
    Interval d(1.0);
    for (int i = 0; i < 2 * n + 1; ++i) d = d * s;
    return acc / d;
}

Interval sixth_derivative(BaseFunction f, const Interval& z) {
    switch (f) {
    case BaseFunction::Sin: return -sin(z);
    case BaseFunction::Cos: return -cos(z);
    case BaseFunction::Arccos: return -inv_sqrt_deriv(5, z);
    case BaseFunction::Reciprocal:
    case BaseFunction::ReciprocalTight: {
        Interval p(1.0);
        for (int i = 0; i < 7; ++i) p = p * z;
        return I(720.0) / p;
    }
    case BaseFunction::Sqrt: {
        Interval p = sqrt(z);
        for (int i = 0; i < 5; ++i) p = p * z;
        return I(-945.0) / I(64.0) / p;
    }
    }
    throw DomainConstraintViolated("unknown base function");
}

// Taylor coefficients of f(m + X) up to X^5 plus the remainder coefficient of X^6.
Poly taylor(BaseFunction f, double m, const Domain& d) {
    Interval x(m);
    std::vector<Interval> c(kPolyDegree + 1);
    const double fact[6] = {1, 1, 2, 6, 24, 120};
    switch (f) {
    case BaseFunction::Sin:
    case BaseFunction::Cos: {
        Interval s = sin(x), co = cos(x);
        // derivative cycle starting at sin: sin, cos, -sin, -cos
        Interval cyc[4] = {s, co, -s, -co};
        int shift = f == BaseFunction::Sin ? 0 : 1;
        for (int k = 0; k < 6; ++k) c[k] = cyc[(k + shift) % 4] / I(fact[k]);
        break;
    }
    case BaseFunction::Arccos:
        c[0] = acos(x);
        for (int k = 1; k < 6; ++k) c[k] = -inv_sqrt_deriv(k - 1, x) / I(fact[k]);
        break;
    case BaseFunction::Reciprocal:
    case BaseFunction::ReciprocalTight: {
        Interval p = I(1.0) / x;
        for (int k = 0; k < 6; ++k) {
            c[k] = (k % 2 == 0) ? p : -p;
            p = p / x;
        }
        break;
    }
    case BaseFunction::Sqrt: {
        const double binom[6] = {1.0, 0.5, -0.125, 0.0625, -0.0390625, 0.02734375};
        Interval p = sqrt(x);
        for (int k = 0; k < 6; ++k) {
            c[k] = I(binom[k]) * p;
            p = p / x;
        }
        break;
    }
    }
    // f^(6) keeps its sign and is monotone on the domain, so its values lie
    // between those at the two ends.
    Interval r = hull(I(0.0), hull(sixth_derivative(f, d.lo), sixth_derivative(f, d.hi)));
    c[6] = r / I(720.0);
    return Poly(std::move(c));
}

Poly to_poly(const std::array<Interval, kPolyDegree + 1>& a) {
    return Poly(std::vector<Interval>(a.begin(), a.end()));
}

std::array<Interval, kPolyDegree + 1> to_array(const Poly& p) {
    if (p.degree() > kPolyDegree) throw DomainViolation("polynomial side above degree 6");
    std::array<Interval, kPolyDegree + 1> a{};
    for (int k = 0; k <= p.degree(); ++k) a[k] = p.c[k];
    return a;
}

// Certified min of A + B t + C t^2 over [l, u].
double quad_min(double A, double B, double C, double l, double u) {
    auto q = [&](double t) { return I(A) + I(B) * I(t) + I(C) * sqr(I(t)); };
    double best = std::min(q(l).lo(), q(u).lo());
    if (C > 0) {
        Interval v = -I(B) / (I(2.0) * I(C));
        if (v.hi() >= l && v.lo() <= u) {
            Interval at = I(A) - sqr(I(B)) / (I(4.0) * I(C));
            best = std::min(best, at.lo());
        }
    }
    return best;
}

double quad_max(double A, double B, double C, double l, double u) {
    return -quad_min(-A, -B, -C, l, u);
}

void superlevel(double A, double B, double C, double l, double u, std::vector<Interval>& out) {
    auto push = [&](double a, double b) {
        if (a <= b) out.emplace_back(a, b);
    };
    if (C == 0) {
        if (B == 0) {
            if (A >= 0) push(l, u);
            return;
        }
        Interval r = -I(A) / I(B);
        if (B > 0) push(std::max(l, r.lo()), u);
        else push(l, std::min(u, r.hi()));
        return;
    }
    Interval disc = sqr(I(B)) - I(4.0) * I(A) * I(C);
    if (disc.hi() < 0) {
        if (C > 0) push(l, u);
        return;
    }
    if (disc.lo() < 0 && C > 0) {
        push(l, u);
        return;
    }
    Interval sq = sqrt(Interval(std::max(disc.lo(), 0.0), disc.hi()));
    // Cancellation-free roots: q = -(B + sign(B) sqrt(disc)) / 2, roots q/C and A/q.
    Interval qv = (B >= 0) ? -(I(B) + sq) / I(2.0) : -(I(B) - sq) / I(2.0);
    Interval r1, r2;
    if (qv.contains(0.0)) {
        r1 = (-I(B) - sq) / (I(2.0) * I(C));
        r2 = (-I(B) + sq) / (I(2.0) * I(C));
    } else {
        r1 = qv / I(C);
        r2 = I(A) / qv;
    }
    if (r1.mid() > r2.mid()) std::swap(r1, r2);
    if (r1.overlaps(r2)) r1 = r2 = hull(r1, r2);
    if (C > 0) {
        push(l, std::min(u, r1.hi()));
        push(std::max(l, r2.lo()), u);
    } else {
        push(std::max(l, r1.lo()), std::min(u, r2.hi()));
    }
}

} // namespace

Interval poly_domain() {
    double h = third().hi();
    return Interval(-h, h);
}

Interval Poly::eval(const Interval& t) const {
    Interval acc(0.0);
    for (int k = degree(); k >= 0; --k) acc = acc * t + c[k];
    return acc;
}

Poly operator+(const Poly& a, const Poly& b) {
    int n = std::max(a.degree(), b.degree());
    std::vector<Interval> c(n + 1);
    for (int k = 0; k <= n; ++k) c[k] = a.coeff(k) + b.coeff(k);
    return Poly(std::move(c));
}

Poly operator-(const Poly& a) {
    std::vector<Interval> c(a.c.size());
    for (std::size_t k = 0; k < c.size(); ++k) c[k] = -a.c[k];
    return Poly(std::move(c));
}

Poly operator-(const Poly& a, const Poly& b) { return a + (-b); }

Poly operator*(const Poly& a, const Poly& b) {
    if (a.c.empty() || b.c.empty()) return Poly();
    std::vector<Interval> c(a.c.size() + b.c.size() - 1, Interval(0.0));
    for (std::size_t i = 0; i < a.c.size(); ++i)
        for (std::size_t j = 0; j < b.c.size(); ++j) c[i + j] += a.c[i] * b.c[j];
    return Poly(std::move(c));
}

Poly operator*(const Interval& s, const Poly& a) {
    std::vector<Interval> c(a.c.size());
    for (std::size_t k = 0; k < c.size(); ++k) c[k] = s * a.c[k];
    return Poly(std::move(c));
}

Poly reduce_degree(const Poly& p, int target) {
    if (target != 2 && target != kPolyDegree)
        throw DomainViolation("degree reduction targets 2 or 6 only");
    if (p.degree() <= target) return p;
    std::vector<Interval> c(p.c.begin(), p.c.begin() + target + 1);
    for (int k = target + 1; k <= p.degree(); ++k) {
        double m = rnd::div_up(p.c[k].mag(), pow30(k - target));
        c[target] += Interval(-m, m);
    }
    return Poly(std::move(c));
}

PolyBound PolyBound::constant(const Interval& v) {
    PolyBound b;
    b.lower[0] = v;
    b.upper[0] = v;
    return b;
}

PolyBound PolyBound::affine(const Interval& v0, const Interval& v1) {
    PolyBound b = constant(v0);
    b.lower[1] = v1;
    b.upper[1] = v1;
    return b;
}

PolyBound PolyBound::from_sides(const Poly& lower, const Poly& upper) {
    PolyBound b;
    b.lower = to_array(reduce_degree(lower, kPolyDegree));
    b.upper = to_array(reduce_degree(upper, kPolyDegree));
    return b;
}

Poly PolyBound::lower_poly() const { return to_poly(lower); }
Poly PolyBound::upper_poly() const { return to_poly(upper); }
double PolyBound::lower_at(double t) const { return lower_poly().eval(Interval(t)).lo(); }
double PolyBound::upper_at(double t) const { return upper_poly().eval(Interval(t)).hi(); }

const char* to_string(BaseFunction f) {
    switch (f) {
    case BaseFunction::Sin: return "sin";
    case BaseFunction::Cos: return "cos";
    case BaseFunction::Arccos: return "arccos";
    case BaseFunction::Reciprocal: return "1/x";
    case BaseFunction::ReciprocalTight: return "1/x (c > 1.2)";
    case BaseFunction::Sqrt: return "sqrt";
    }
    return "?";
}

PolyBound base_bound(BaseFunction f, double c) {
    Domain d = domain_of(f, c);
    Interval span = Interval(c) + poly_domain();
    if (!(c > d.c_lo.hi() && c < d.c_hi.lo() && span.lo() > d.lo.hi() && span.hi() < d.hi.lo()))
        throw DomainConstraintViolated(std::string(to_string(f)) + ": expansion point " +
                                       std::to_string(c) + " outside the admissible domain");
    Poly t = taylor(f, c, d);
    PolyBound b;
    b.lower = to_array(t);
    b.upper = b.lower;
    return b;
}

PolyBound compose(BaseFunction f, const PolyBound& inner) {
    Poly lo = inner.lower_poly(), up = inner.upper_poly();
    double m_lo = lo.c[0].mid(), m_up = up.c[0].mid();
    Domain d_lo = domain_of(f, m_lo), d_up = domain_of(f, m_up);
    auto fail = [&](const std::string& why) {
        throw RangeConditionUnverifiable(std::string(to_string(f)) + ": " + why);
    };
    for (double m : {m_lo, m_up}) {
        if (!(m > d_lo.c_lo.hi() && m < d_lo.c_hi.lo())) fail("constant term outside admissible range");
    }
    Interval r_lo = side_range(lo), r_up = side_range(up);
    double cap = std::min(d_lo.hi.lo(), d_up.hi.lo());
    if (!(r_lo.lo() > d_lo.lo.hi() && r_up.lo() > d_lo.lo.hi()))
        fail("inner bound not certified above the domain's lower end");
    if (!(r_lo.hi() < cap && r_up.hi() < cap))
        fail("inner bound not certified below the domain's upper end");

    auto side = [&](const Poly& src, double m, const Domain& d) {
        Poly t = taylor(f, m, d);
        Poly x = src;
        x.c[0] = x.c[0] - Interval(m);
        Poly acc({t.c[kPolyDegree]});
        for (int k = kPolyDegree - 1; k >= 0; --k) acc = acc * x + Poly({t.c[k]});
        return reduce_degree(acc, kPolyDegree);
    };
    // An increasing f keeps the roles of the sides; a decreasing one swaps them.
    PolyBound out;
    if (domain_of(f, m_lo).increasing) {
        out.lower = to_array(side(lo, m_lo, d_lo));
        out.upper = to_array(side(up, m_up, d_up));
    } else {
        out.lower = to_array(side(up, m_up, d_up));
        out.upper = to_array(side(lo, m_lo, d_lo));
    }
    return out;
}

PolyBound operator+(const PolyBound& a, const PolyBound& b) {
    return PolyBound::from_sides(a.lower_poly() + b.lower_poly(), a.upper_poly() + b.upper_poly());
}

PolyBound operator-(const PolyBound& a, const PolyBound& b) {
    return PolyBound::from_sides(a.lower_poly() - b.upper_poly(), a.upper_poly() - b.lower_poly());
}

PolyBound operator-(const PolyBound& a) {
    return PolyBound::from_sides(-a.upper_poly(), -a.lower_poly());
}

PolyBound operator*(const PolyBound& a, const PolyBound& b) {
    if (side_range(a.lower_poly()).lo() < 0 || side_range(b.lower_poly()).lo() < 0)
        throw NegativityUnderMul("product factor not certified nonnegative");
    return PolyBound::from_sides(a.lower_poly() * b.lower_poly(), a.upper_poly() * b.upper_poly());
}

PolyBound scale(const Interval& s, const PolyBound& a) {
    if (s.lo() < 0) throw NegativityUnderMul("scale factor not certified nonnegative");
    return PolyBound::from_sides(s * a.lower_poly(), s * a.upper_poly());
}

Interval quadratic_range(const Poly& p0) {
    Poly p = reduce_degree(p0, 2);
    Interval a = p.coeff(0), b = p.coeff(1), c = p.coeff(2);
    double h = third().hi();
    double lo = std::min(quad_min(a.lo(), b.lo(), c.lo(), 0.0, h),
                         quad_min(a.lo(), b.hi(), c.lo(), -h, 0.0));
    double hi = std::max(quad_max(a.hi(), b.hi(), c.hi(), 0.0, h),
                         quad_max(a.hi(), b.lo(), c.hi(), -h, 0.0));
    return Interval(lo, hi);
}

Interval side_range(const Poly& p) { return quadratic_range(reduce_degree(p, 2)); }

Interval range(const PolyBound& b) {
    return Interval(side_range(b.lower_poly()).lo(), side_range(b.upper_poly()).hi());
}

std::vector<Interval> quadratic_feasible_set(const Poly& p0) {
    Poly p = reduce_degree(p0, 2);
    Interval a = p.coeff(0), b = p.coeff(1), c = p.coeff(2);
    double h = third().hi();
    std::vector<Interval> pieces;
    superlevel(a.hi(), b.lo(), c.hi(), -h, 0.0, pieces);
    superlevel(a.hi(), b.hi(), c.hi(), 0.0, h, pieces);
    std::sort(pieces.begin(), pieces.end(),
              [](const Interval& x, const Interval& y) { return x.lo() < y.lo(); });
    std::vector<Interval> merged;
    for (const Interval& x : pieces) {
        if (!merged.empty() && x.lo() <= merged.back().hi())
            merged.back() = hull(merged.back(), x);
        else
            merged.push_back(x);
    }
    return merged;
}

std::vector<Interval> feasible_set(const PolyBound& b) {
    return quadratic_feasible_set(b.upper_poly());
}

} // namespace mdm
