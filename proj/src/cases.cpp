#include "mdm/cases.hpp"

#include <charconv>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "mdm/polybound.hpp"
#include "mdm/steiner.hpp"

namespace mdm {

namespace {

Interval I(double v) { return Interval(v); }

Interval dec(const char* s) { return from_decimal(s); }

Point pt(const char* x, const char* y) { return {dec(x), dec(y)}; }

// Half a unit in the sixth decimal.
Interval half_unit() { return I(5.0) / I(1e7); }

Interval widen(const Interval& v) {
    Interval h = half_unit();
    return Interval((v - h).lo(), (v + h).hi());
}

Point widen(const Point& p) { return {widen(p.x), widen(p.y)}; }

bool strictly_inside(const Interval& v, double lo, double hi) { return v.lo() > lo && v.hi() < hi; }

void require(bool ok, const std::string& what) {
    if (!ok) throw CertificationFailed(what);
}

std::string fmt(double v) {
    char buf[32];
    auto r = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, r.ptr);
}

Interval angle_between(const Point& u, const Point& v) {
    Interval c = dot(u, v) / (norm(u) * norm(v));
    return acos(intersect(c, Interval(-1.0, 1.0)));
}

} // namespace

const char* to_string(Verdict v) {
    switch (v) {
    case Verdict::Reference: return "REFERENCE";
    case Verdict::Eliminated: return "ELIMINATED";
    case Verdict::Optimal: return "OPTIMAL";
    }
    return "?";
}

Interval CaseReport::value(const std::string& key) const {
    for (const auto& [k, v] : values)
        if (k == key) return v;
    throw std::out_of_range("no value named " + key + " in case " + id);
}

std::string CaseReport::summary() const {
    std::ostringstream os;
    bool first = true;
    for (const auto& [k, v] : values) {
        if (!first) os << "; ";
        first = false;
        os << k << "=[" << fmt(v.lo()) << ", " << fmt(v.hi()) << ']';
    }
    for (const auto& n : notes) os << "; " << n;
    return os.str();
}

// ---------------------------------------------------------------- case 1

CaseReport case1_reference() {
    CaseReport rep;
    rep.id = "1";
    rep.verdict = Verdict::Reference;

    ConfigPoint p0 = reference_point();
    Scene s = derive_scene(p0);
    Interval c = curve_length_C(p0, s);
    Interval exact = total_length_L(p0);

    // The corner-to-corner chain from its six-decimal coordinates, each
    // widened by the rounding error; the exact points must fall inside.
    Point z1 = widen(pt("5.632993", "0.991445")), w1 = widen(pt("1.544740", "0.991445"));
    Point v = widen(pt("1.108370", "1.108370"));
    Point w2 = widen(pt("0.991445", "1.544740")), z2 = widen(pt("0.991445", "5.632993"));
    Point q = widen(pt("0.707107", "0.707107"));
    const std::pair<const Point*, const Point*> checks[] = {
        {&z1, &s.Z1}, {&w1, &s.W1}, {&v, &s.V}, {&w2, &s.W2}, {&z2, &s.Z2},
        {&q, &s.Q},   {&q, &s.Q1},  {&q, &s.Q2}};
    for (auto [box, actual] : checks)
        require(box->x.contains(actual->x) && box->y.contains(actual->y),
                "reference point outside its rounding box");
    Interval rounded = dist(z1, w1) + dist(w1, v) + dist(v, w2) + dist(w2, z2) + dist(v, q);

    if (!(rounded.subset_of(Interval(9.647496, 9.647520)) && rounded.lo() > 9.647496 &&
          std::fabs(rounded.mid() - 9.647504) <= 1e-5 && rounded.width() < 1e-4))
        throw EnclosureTooWide("reference length enclosure " + fmt(rounded.lo()) + ".." +
                               fmt(rounded.hi()) + " misses the expected window");
    require(rounded.overlaps(exact), "rounded and exact reference lengths disagree");

    // pi - alpha = angle yW1 W1 V = alpha + pi/12 forces alpha = 11pi/24.
    Interval ang = angle_between(s.yW1 - s.W1, s.V - s.W1);
    Interval want = p0.alpha + pi() / I(12.0);
    require(ang.overlaps(want), "angle at W1 differs from alpha + pi/12");
    require(ang.overlaps(pi() - p0.alpha), "angle at W1 differs from pi - alpha");

    rep.set("L0", rounded);
    rep.set("L0_exact", exact);
    rep.set("C", c);
    rep.set("VQ", dist(s.V, s.Q));
    rep.set("Vx", s.V.x);
    rep.set("Vy", s.V.y);
    rep.set("Qx", s.Q.x);
    rep.set("Qy", s.Q.y);
    rep.set("angle_W1", ang);
    return rep;
}

// ---------------------------------------------------------------- case 2

CaseReport case2_eliminate() {
    CaseReport rep;
    rep.id = "2";
    Interval pv = pi();
    Interval alpha = (asin(I(1.0) / sqrt3()) + I(2.0) * pv / I(3.0)) / I(2.0);
    Interval bound = alpha0() - I(1.0) / I(30.0);
    require(alpha.hi() < bound.lo(), "alpha not below alpha0 - 1/30");
    // Check the closed form against the defining equation.
    Interval lhs = I(2.0) * sin(I(2.0) * pv / I(3.0)) * sin(I(2.0) * alpha - I(2.0) * pv / I(3.0));
    require(lhs.contains(1.0), "alpha does not solve 2 sin(2pi/3) sin(2a - 2pi/3) = 1");

    // alpha(t) = (t + arcsin(1 / (2 sin t))) / 2 grows on [pi/3, 2pi/3].
    const int pieces = 64;
    Interval lo = pv / I(3.0), hi = I(2.0) * pv / I(3.0);
    double min_deriv = INFINITY;
    for (int i = 0; i < pieces; ++i) {
        Interval a = lo + (hi - lo) * I(i) / I(pieces);
        Interval b = lo + (hi - lo) * I(i + 1) / I(pieces);
        Interval t(a.lo(), b.hi());
        Interval csc = I(1.0) / sin(t);
        Interval cot = cos(t) * csc;
        Interval d = (I(1.0) - cot * csc / sqrt(I(4.0) - sqr(csc))) / I(2.0);
        require(d.lo() > 0, "d alpha / dt not certified positive");
        min_deriv = std::min(min_deriv, d.lo());
    }
    Interval at_end = (hi + asin(I(1.0) / (I(2.0) * sin(hi)))) / I(2.0);
    require(at_end.overlaps(alpha), "alpha(2pi/3) differs from the closed form");

    rep.set("alpha", alpha);
    rep.set("alpha0_minus", bound);
    rep.set("min_dalpha_dt", Interval(min_deriv));
    rep.set("alpha_t_max", at_end);
    return rep;
}

// ---------------------------------------------------------------- case 3a

Case3aLayout case3a_layout() {
    return {pt("5.632993", "0.991394"), pt("1.545358", "0.991394"), pt("1.108083", "1.108927"),
            pt("0.991495", "1.545397"), pt("0.991495", "5.632993"), pt("0.723714", "0.725155"),
            pt("0.707224", "0.706989"), pt("1.414448", "0"),        pt("0", "1.415255")};
}

Case3aLayout case3a_layout_rounded() {
    Case3aLayout c = case3a_layout();
    for (Point* p : {&c.Z1, &c.W1, &c.V, &c.W2, &c.Z2, &c.Q2, &c.Q1, &c.yW1, &c.yW2}) *p = widen(*p);
    return c;
}

Interval case3a_length(const Case3aLayout& c) {
    return dist(c.Z1, c.W1) + dist(c.W1, c.V) + dist(c.V, c.W2) + dist(c.W2, c.Z2) +
           dist(c.V, c.Q2) + dist(c.Q2, c.Q1);
}

ConfigPoint case3a_config() {
    Case3aLayout c = case3a_layout();
    Interval x = c.yW1.x, y = c.yW2.y;
    Interval alpha = acos(c.W1.x - x);
    Interval xi1 = asin(c.Q1.y);
    Interval xi2 = asin(c.Q2.x);
    Interval xi = asin(c.Q1.y / norm(c.Q1));
    auto mid = [](const Interval& v) { return Interval(v.mid()); };
    return {mid(x), mid(y), mid(alpha), mid(xi1), mid(xi2), mid(xi)};
}

Interval theorem_constant(const Interval& h) {
    return I(8.0) * corner_offset() - I(4.0) * h + I(2.0);
}

CaseReport case3a_verify_optimal() {
    CaseReport rep;
    rep.id = "3a";
    rep.verdict = Verdict::Optimal;
    Case3aLayout c = case3a_layout();
    Point a1{I(0.0), I(0.0)};
    const std::pair<const char*, Interval> d[] = {
        {"|yW2 W2|", dist(c.yW2, c.W2)}, {"|yW2 Q2|", dist(c.yW2, c.Q2)},
        {"|A1 Q1|", dist(a1, c.Q1)},     {"|Q1 yW1|", dist(c.Q1, c.yW1)},
        {"|W1 yW1|", dist(c.W1, c.yW1)}};
    for (const auto& [name, v] : d) {
        require(strictly_inside(v, 0.999999, 1.0), std::string(name) + " not in (0.999999, 1)");
        rep.set(name, v);
    }
    require(c.Z1.y.lo() == c.W1.y.lo() && c.Z1.y.hi() == c.W1.y.hi(), "W1Z1 not horizontal");
    require(c.Z2.x.lo() == c.W2.x.lo() && c.Z2.x.hi() == c.W2.x.hi(), "W2Z2 not vertical");

    Interval len = case3a_length(c);
    require(len.hi() < 9.647492, "corner length not below 9.647492");
    Interval rounded = case3a_length(case3a_layout_rounded());
    rep.set("length", len);
    rep.set("length_rounded", rounded);
    rep.set("constant_point", theorem_constant(len));
    rep.set("constant", theorem_constant(rounded));
    return rep;
}

Interval theorem_total_length(double width, double height, double r) {
    if (!(width > 0 && height > 0 && r > 0)) throw RTooLarge("dimensions must be positive");
    if (r > std::min(width, height) / 20.0)
        throw RTooLarge("r = " + fmt(r) + " exceeds min(width, height) / 20");
    Interval per = I(2.0) * (I(width) + I(height));
    Interval k = theorem_constant(case3a_length(case3a_layout_rounded()));
    return per - k * I(r);
}

// ---------------------------------------------------------------- cases 3b, 5

namespace {

Interval arccos_two_cos_sq() {
    Interval third = I(1.0) / I(30.0);
    Interval a = alpha0();
    Interval alpha((a - third).lo(), (a + third).hi());
    return acos(I(2.0) * sqr(cos(alpha)));
}

} // namespace

CaseReport case3b_eliminate() {
    CaseReport rep;
    rep.id = "3b";
    Interval v = arccos_two_cos_sq();
    Interval bound = I(4.0) * pi() / I(9.0);
    require(v.lo() > bound.hi(), "arccos(2cos^2 a) not above 4pi/9");
    rep.set("arccos_2cos2", v);
    rep.set("4pi/9", bound);
    return rep;
}

CaseReport case5_eliminate() {
    CaseReport rep;
    rep.id = "5";
    Interval v = arccos_two_cos_sq();
    Interval bound = pi() / I(4.0);
    require(v.lo() > bound.hi(), "arccos(2cos^2 a) not above pi/4");
    rep.set("arccos_2cos2", v);
    rep.set("pi/4", bound);
    return rep;
}

// ---------------------------------------------------------------- case 4

namespace {

std::string pieces_to_string(const std::vector<Interval>& s) {
    std::string out;
    for (const auto& v : s) {
        if (!out.empty()) out += " u ";
        out += "[" + fmt(v.lo()) + ", " + fmt(v.hi()) + "]";
    }
    return out.empty() ? "empty" : out;
}

// Wraps each pipeline step so a failure names the step.
template <class F>
PolyBound step(const char* name, F&& f) {
    try {
        return f();
    } catch (const RangeConditionUnverifiable& e) {
        throw RangeConditionUnverifiable(std::string(name) + ": " + e.what());
    } catch (const NegativityUnderMul& e) {
        throw RangeConditionUnverifiable(std::string(name) + ": " + e.what());
    }
}

} // namespace

Case4Point case4_point(double dt) {
    Interval pv = pi();
    Interval a = alpha0() + I(dt);
    Interval b = I(11.0) * pv / I(12.0) - a;
    Interval acs = acos(I(1.0) - sin(I(2.0) * a));
    Interval q = acs / I(2.0) + a - pv / I(12.0);
    Interval g = -acs / I(2.0) + a - pv / I(12.0);
    Interval t = acos(I(1.0) + cos(I(2.0) * a) - cos(I(2.0) * pv / I(3.0) - I(2.0) * a + I(2.0) * q));
    Interval d = pv / I(3.0) - a + q - t / I(2.0);
    Interval x = sin(t + d) / sin(t);
    Interval c4 = cos(t + I(2.0) * d - pv / I(2.0));
    Interval y = (c4 * (I(1.0) - sin(d) * sin(g) * cos(t) / sin(t) + sin(d) * cos(g)) -
                  (sin(d) + cos(g)) * cos(q)) /
                 (c4 * cos(g) - cos(q));
    Case4Point c;
    c.Q2 = {sin(g), y - cos(g)};
    c.W1 = {x + cos(a), sin(a)};
    c.W2 = {sin(b), y + cos(b)};
    Point dw = c.W1 - c.W2;
    Interval s60 = sqrt3() / I(2.0);
    c.S = {c.W2.x + I(0.5) * dw.x - s60 * dw.y, c.W2.y + s60 * dw.x + I(0.5) * dw.y};
    Point v = c.S - c.Q2;
    c.r = sin(d) / sin(t) - I(1.0);
    c.s = cos(I(2.0) * b - I(2.0) * pv / I(3.0)) - v.y / norm(v);
    return c;
}

Case4Bounds case4_bounds() {
    using B = BaseFunction;
    Interval pv = pi();
    auto K = [](const Interval& v) { return PolyBound::constant(v); };
    const PolyBound one = K(I(1.0));

    PolyBound alpha = PolyBound::affine(alpha0(), I(1.0));
    // pi - 2 alpha keeps the sine and cosine arguments inside (0, pi/2).
    PolyBound pi_minus_2a = PolyBound::affine(pv - I(2.0) * alpha0(), I(-2.0));
    PolyBound sin2a = step("sin 2a", [&] { return compose(B::Sin, pi_minus_2a); });
    PolyBound cos2a = step("cos 2a", [&] { return -compose(B::Cos, pi_minus_2a); });
    PolyBound acs = step("arccos(1 - sin 2a)", [&] { return compose(B::Arccos, one - sin2a); });
    PolyBound half_acs = scale(I(0.5), acs);
    PolyBound q = half_acs + alpha - K(pv / I(12.0));
    PolyBound gamma = alpha - K(pv / I(12.0)) - half_acs;

    // cos(2pi/3 - 2a + 2q) = -cos(pi/3 + 2a - 2q)
    PolyBound theta_c = K(pv / I(3.0)) + scale(I(2.0), alpha) - scale(I(2.0), q);
    PolyBound cos_theta_c = step("cos(pi/3 + 2a - 2q)", [&] { return compose(B::Cos, theta_c); });
    PolyBound cos_t = one + cos2a + cos_theta_c;
    PolyBound t = step("t", [&] { return compose(B::Arccos, cos_t); });
    PolyBound delta = K(pv / I(3.0)) - alpha + q - scale(I(0.5), t);

    PolyBound sin_t = step("sin t", [&] { return compose(B::Sin, t); });
    PolyBound sin_d = step("sin delta", [&] { return compose(B::Sin, delta); });
    PolyBound sin_td = step("sin(t + delta)", [&] { return compose(B::Sin, t + delta); });
    PolyBound inv_sin_t = step("1/sin t", [&] { return compose(B::Reciprocal, sin_t); });
    PolyBound x = step("x", [&] { return sin_td * inv_sin_t; });
    PolyBound aq1 = step("|A1Q1|", [&] { return sin_d * inv_sin_t; });
    PolyBound r = aq1 - one;

    PolyBound c4 = step("cos(t + 2delta - pi/2)", [&] {
        return compose(B::Cos, t + scale(I(2.0), delta) - K(pv / I(2.0)));
    });
    PolyBound sin_g = step("sin gamma", [&] { return compose(B::Sin, gamma); });
    PolyBound cos_g = step("cos gamma", [&] { return compose(B::Cos, gamma); });
    PolyBound cos_q = step("cos q", [&] { return compose(B::Cos, q); });
    PolyBound cos_tt = step("cos t", [&] { return compose(B::Cos, t); });
    PolyBound bracket = step("y numerator bracket", [&] {
        return one - sin_d * sin_g * cos_tt * inv_sin_t + sin_d * cos_g;
    });
    PolyBound num = step("y numerator", [&] { return c4 * bracket - (sin_d + cos_g) * cos_q; });
    PolyBound den = step("y denominator", [&] { return c4 * cos_g - cos_q; });
    PolyBound inv_den = step("1/denominator", [&] { return compose(B::Reciprocal, den); });
    PolyBound y = step("y", [&] { return num * inv_den; });

    PolyBound beta = K(I(11.0) * pv / I(12.0)) - alpha;
    PolyBound q2x = sin_g;
    PolyBound q2y = y - cos_g;
    PolyBound w1x = x + step("cos a", [&] { return compose(B::Cos, alpha); });
    PolyBound w1y = step("sin a", [&] { return compose(B::Sin, alpha); });
    PolyBound w2x = step("sin b", [&] { return compose(B::Sin, beta); });
    PolyBound w2y = y + step("cos b", [&] { return compose(B::Cos, beta); });

    // S = W2 + (W1 - W2) [[cos pi/3, sin pi/3], [-sin pi/3, cos pi/3]] (row vector)
    Interval c60 = I(0.5), s60 = sqrt3() / I(2.0);
    PolyBound dx = w1x - w2x, dy = w1y - w2y;
    PolyBound sx = w2x + scale(c60, dx) - scale(s60, dy);
    PolyBound sy = w2y + scale(s60, dx) + scale(c60, dy);
    PolyBound vx = sx - q2x, vy = sy - q2y;
    PolyBound len2 = step("|S - Q2|^2", [&] { return vx * vx + vy * vy; });
    PolyBound len = step("|S - Q2|", [&] { return compose(B::Sqrt, len2); });
    PolyBound inv_len = step("1/|S - Q2|", [&] { return compose(B::ReciprocalTight, len); });
    PolyBound u = step("(S - Q2).(0,1)/|S - Q2|", [&] { return vy * inv_len; });
    // cos(2 beta - 2pi/3) = cos(7pi/6 - 2a)
    PolyBound target = step("cos(2b - 2pi/3)", [&] {
        return compose(B::Cos, K(I(7.0) * pv / I(6.0)) - scale(I(2.0), alpha));
    });
    return {r, target - u, x, y};
}

CaseReport case4_eliminate() {
    CaseReport rep;
    rep.id = "4";
    auto [r, s, x, y] = case4_bounds();

    // The rotation must give an equilateral W1 S W2 with S across W1W2 from Q2.
    for (double t0 : {-1.0 / 30.0, 0.0, 1.0 / 30.0}) {
        Case4Point c = case4_point(t0);
        Interval side = dist(c.W1, c.W2);
        require(dist(c.S, c.W1).overlaps(side) && dist(c.S, c.W2).overlaps(side),
                "W1 S W2 is not equilateral");
        Interval o = cross(c.W1 - c.W2, c.S - c.W2) * cross(c.W1 - c.W2, c.Q2 - c.W2);
        require(o.hi() < 0, "S and Q2 not on opposite sides of W1W2");
        require(Interval(r.lower_at(t0), r.upper_at(t0)).contains(c.r.mid()) &&
                    Interval(s.lower_at(t0), s.upper_at(t0)).contains(c.s.mid()),
                "polynomial bounds miss a point evaluation");
    }

    std::vector<Interval> set_i = feasible_set(r);
    std::vector<Interval> set_ii = feasible_set(s);
    require(!set_ii.empty(), "condition (ii) set unexpectedly empty");
    bool disjoint = true;
    for (const auto& a : set_i)
        for (const auto& b : set_ii)
            if (a.overlaps(b)) disjoint = false;
    require(disjoint, "conditions (i) and (ii) may hold together");

    rep.notes.push_back("set(i)=" + pieces_to_string(set_i));
    rep.notes.push_back("set(ii)=" + pieces_to_string(set_ii));
    if (!set_i.empty()) rep.set("set_i_hull", hull(set_i.front(), set_i.back()));
    rep.set("set_ii_hull", hull(set_ii.front(), set_ii.back()));
    rep.set("r_range", range(r));
    rep.set("s_range", range(s));
    rep.set("x_range", range(x));
    rep.set("y_range", range(y));
    return rep;
}

} // namespace mdm
