#include "mdm/scene.hpp"

#include <algorithm>
#include <string>

#include "mdm/steiner.hpp"

namespace mdm {

namespace {

Interval two_over_sqrt3() { return Interval(2.0) / sqrt3(); }

// Per-coordinate range of P as intervals (so the true endpoints are enclosed).
std::array<Interval, 6> p_lo() {
    Interval a = Interval(5.0) * pi() / Interval(12.0);
    return {Interval(0.0), Interval(0.0), a, Interval(0.0), Interval(0.0), Interval(0.0)};
}
std::array<Interval, 6> p_hi() {
    Interval k = range_bound();
    Interval h = pi() / Interval(2.0);
    return {k, k, h, h, h, h};
}

double up_by(double v, int n) {
    for (int i = 0; i < n; ++i) v = rnd::next_up(v);
    return v;
}
double down_by(double v, int n) {
    for (int i = 0; i < n; ++i) v = rnd::next_down(v);
    return v;
}

} // namespace

Interval beta_of(const Interval& alpha) {
    return Interval(11.0) * pi() / Interval(12.0) - alpha;
}

Interval ConfigPoint::beta() const { return beta_of(alpha); }

ConfigPoint ConfigPoint::from_array(const std::array<Interval, 6>& c) {
    return {c[0], c[1], c[2], c[3], c[4], c[5]};
}

ConfigPoint ConfigPoint::at(const std::array<double, 6>& c) {
    return {Interval(c[0]), Interval(c[1]), Interval(c[2]),
            Interval(c[3]), Interval(c[4]), Interval(c[5])};
}

ConfigPoint ConfigPoint::mirrored() const {
    return {y, x, beta(), xi2, xi1, pi() / Interval(2.0) - xi};
}

Interval ParamBox::coord(int i) const {
    return Interval(rnd::sub_down(center[i], half[i]), rnd::add_up(center[i], half[i]));
}

ConfigPoint ParamBox::enclosure() const {
    return {coord(0), coord(1), coord(2), coord(3), coord(4), coord(5)};
}

ParamBox ParamBox::from_bounds(const std::array<double, 6>& lo, const std::array<double, 6>& hi) {
    ParamBox b;
    for (int i = 0; i < 6; ++i) {
        if (!(lo[i] <= hi[i])) throw DomainViolation("box bounds out of order");
        double c = 0.5 * lo[i] + 0.5 * hi[i];
        b.center[i] = c;
        b.half[i] = std::max(rnd::sub_up(c, lo[i]), rnd::sub_up(hi[i], c));
    }
    return b;
}

Interval corner_offset() { return Interval(4.0) / sqrt6() + Interval(4.0); }
Interval range_bound() { return Interval(4.0) / sqrt6() + Interval(3.0); }
Interval alpha0() { return Interval(11.0) * pi() / Interval(24.0); }

ParamBox parameter_space() {
    auto lo = p_lo();
    auto hi = p_hi();
    std::array<double, 6> l{}, h{};
    for (int i = 0; i < 6; ++i) {
        l[i] = lo[i].lo();
        h[i] = hi[i].hi();
    }
    return ParamBox::from_bounds(l, h);
}

ParamBox target_box() {
    Interval tenth = Interval(1.0) / Interval(10.0);
    Interval thirtieth = Interval(1.0) / Interval(30.0);
    Interval xl = sqrt2() - tenth, xh = sqrt2() + tenth;
    Interval al = alpha0() - thirtieth, ah = alpha0() + thirtieth;
    auto hi = p_hi();
    // Pull each end a few ulps inward so the rounded box stays inside P0.
    std::array<double, 6> l{up_by(xl.hi(), 4), up_by(xl.hi(), 4), up_by(al.hi(), 4), 0.0, 0.0, 0.0};
    std::array<double, 6> h{down_by(xh.lo(), 4), down_by(xh.lo(), 4), down_by(ah.lo(), 4),
                            down_by(hi[3].lo(), 4), down_by(hi[4].lo(), 4),
                            down_by(hi[5].lo(), 4)};
    return ParamBox::from_bounds(l, h);
}

ConfigPoint reference_point() {
    Interval q = pi() / Interval(4.0);
    return {sqrt2(), sqrt2(), alpha0(), q, q, q};
}

bool in_parameter_space(const ConfigPoint& p) {
    const double tol = 1e-9;
    auto lo = p_lo();
    auto hi = p_hi();
    auto c = p.coords();
    for (int i = 0; i < 6; ++i) {
        if (c[i].lo() < lo[i].lo() - tol || c[i].hi() > hi[i].hi() + tol) return false;
    }
    return true;
}

ParamBox clamp_to_parameter_space(ParamBox b) {
    auto lo = p_lo();
    auto hi = p_hi();
    std::array<double, 6> l{}, h{};
    bool moved = b.clamped;
    for (int i = 0; i < 6; ++i) {
        Interval c = b.coord(i);
        l[i] = std::max(c.lo(), lo[i].lo());
        h[i] = std::min(c.hi(), hi[i].hi());
        if (l[i] > h[i]) throw OutOfParameterSpace("box does not meet the parameter space");
        if (l[i] != c.lo() || h[i] != c.hi()) moved = true;
    }
    if (!moved) return b;
    ParamBox out = ParamBox::from_bounds(l, h);
    out.clamped = true;
    return out;
}

Scene derive_scene(const ConfigPoint& p) {
    if (!in_parameter_space(p)) throw OutOfParameterSpace("configuration point outside P");
    const Interval& x = p.x;
    const Interval& y = p.y;
    const Interval& a = p.alpha;
    Interval b = p.beta();
    Interval k = corner_offset();
    Interval ca = cos(a), sa = sin(a), cb = cos(b), sb = sin(b);
    Interval c2a = cos(Interval(2.0) * a), s2a = sin(Interval(2.0) * a);
    Interval c2b = cos(Interval(2.0) * b), s2b = sin(Interval(2.0) * b);
    Interval s = two_over_sqrt3();

    Scene sc;
    sc.yW1 = {x, Interval(0.0)};
    sc.yW2 = {Interval(0.0), y};
    sc.W1 = {x + ca, sa};
    sc.W2 = {sb, y + cb};
    sc.Z1 = {k, sa};
    sc.Z2 = {sb, k};
    sc.Q = {cos(p.xi), sin(p.xi)};
    sc.Q1 = {x - cos(p.xi1), sin(p.xi1)};
    sc.Q2 = {sin(p.xi2), y - cos(p.xi2)};

    // Intersection of the lines W1 + l1 (cos2a, sin2a) and W2 + l2 (sin2b, cos2b),
    // simplified with cos 2(a + b) = sqrt3 / 2.
    sc.l1 = -s * (x * c2b + y * s2b + cos(a + Interval(2.0) * b) + sb);
    sc.l2 = -s * (y * c2a + x * s2a + cos(Interval(2.0) * a + b) + sa);
    Point v1 = sc.W1 + sc.l1 * Point{c2a, s2a};
    Point v2 = sc.W2 + sc.l2 * Point{s2b, c2b};
    sc.V = {intersect(v1.x, v2.x), intersect(v1.y, v2.y)};
    return sc;
}

Interval curve_length_C(const ConfigPoint& p, const Scene& s, ChainPolicy policy) {
    if (policy == ChainPolicy::Strict && (s.l1.certainly_negative() || s.l2.certainly_negative()))
        throw DegenerateChain("segment W1V or W2V has negative length");
    const Interval& x = p.x;
    const Interval& y = p.y;
    const Interval& a = p.alpha;
    Interval b = p.beta();
    Interval pv = pi();
    Interval t = Interval(2.0) * a - Interval(2.0) * pv / Interval(3.0);
    return Interval(2.0) * corner_offset() - x - cos(a) - y - cos(b) +
           two_over_sqrt3() * (x * sin(t) + y * cos(t) - cos(a - pv / Interval(6.0)) -
                               sin(a - pv / Interval(4.0)));
}

Interval curve_length_C(const ConfigPoint& p, ChainPolicy policy) {
    return curve_length_C(p, derive_scene(p), policy);
}

Interval total_length_L(const ConfigPoint& p, ChainPolicy policy) {
    Scene s = derive_scene(p);
    Interval c = curve_length_C(p, s, policy);
    SteinerBound st = melzak_lower_bound({s.V, s.Q1, s.Q2, s.Q});
    return Interval(rnd::add_down(c.lo(), st.lower), rnd::add_up(c.hi(), st.upper));
}

bool is_unobtainable(const ParamBox& b) {
    Interval xr = Interval(b.center[0]) + Interval(b.half[0]);
    Interval yr = Interval(b.center[1]) + Interval(b.half[1]);
    return (sqr(xr) + sqr(yr)).hi() < 4.0;
}

bool in_target_box(const ParamBox& b) {
    Interval tenth = Interval(1.0) / Interval(10.0);
    Interval thirtieth = Interval(1.0) / Interval(30.0);
    auto inside = [](const Interval& c, const Interval& lo, const Interval& hi) {
        return c.lo() >= lo.hi() && c.hi() <= hi.lo();
    };
    return inside(b.coord(0), sqrt2() - tenth, sqrt2() + tenth) &&
           inside(b.coord(1), sqrt2() - tenth, sqrt2() + tenth) &&
           inside(b.coord(2), alpha0() - thirtieth, alpha0() + thirtieth);
}

} // namespace mdm
