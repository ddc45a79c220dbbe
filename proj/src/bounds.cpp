#include "mdm/bounds.hpp"

#include <cmath>

namespace mdm {

namespace {

Interval two_over_sqrt3() { return Interval(2.0) / sqrt3(); }
Interval I(double v) { return Interval(v); }

} // namespace

Interval dC_dalpha(const Interval& x, const Interval& y, const Interval& a) {
    Interval pv = pi();
    Interval b = beta_of(a);
    Interval t = I(2) * a - I(2) * pv / I(3);
    return sin(a) - sin(b) +
           two_over_sqrt3() * (I(2) * x * cos(t) - I(2) * y * sin(t) + sin(a - pv / I(6)) -
                               cos(a - pv / I(4)));
}

Point dV_dalpha_total(const Interval& x, const Interval& y, const Interval& a) {
    Interval b = beta_of(a);
    Interval c2a = cos(I(2) * a), s2a = sin(I(2) * a);
    Interval c2b = cos(I(2) * b), s2b = sin(I(2) * b);
    Interval k = two_over_sqrt3();
    Interval l1 = -k * (x * c2b + y * s2b + cos(a + I(2) * b) + sin(b));
    Interval dl1 = -k * (I(2) * x * s2b - I(2) * y * c2b + sin(a + I(2) * b) - cos(b));
    return {-sin(a) + dl1 * c2a - I(2) * l1 * s2a, cos(a) + dl1 * s2a + I(2) * l1 * c2a};
}

Point dV_dalpha_components(const Interval& x, const Interval& y, const Interval& a,
                           const Interval& b) {
    Interval den = I(2) * (cos(I(4) * a + I(4) * b) + I(1));
    Interval nx = I(4) * y * cos(I(4) * b) - I(4) * x * sin(I(4) * b) - I(4) * y +
                  I(4) * cos(I(3) * b) - I(4) * cos(b) - sin(I(3) * a) +
                  sin(I(3) * a + I(4) * b) - I(3) * sin(a + I(4) * b) + I(3) * sin(a);
    Interval ny = I(4) * x * cos(I(4) * b) + I(4) * y * sin(I(4) * b) + I(4) * x -
                  cos(I(3) * a) - cos(I(3) * a + I(4) * b) + I(3) * cos(a + I(4) * b) +
                  I(3) * cos(a) + I(4) * sin(I(3) * b) - I(4) * sin(b);
    return {nx / den, -ny / den};
}

Interval dV_dalpha_compact(const Interval& x, const Interval& y, const Interval& a,
                           const Interval& b) {
    Interval num = I(4) * x * cos(I(2) * b) + I(4) * y * sin(I(2) * b) + I(4) * sin(b) +
                   I(3) * cos(a + I(2) * b) - cos(I(3) * a + I(2) * b);
    return abs(num / (cos(I(4) * a + I(4) * b) + I(1)));
}

bool dv_dalpha_crosscheck(const Interval& x, const Interval& y, const Interval& alpha) {
    Interval b = beta_of(alpha);
    Interval comp = norm(dV_dalpha_components(x, y, alpha, b));
    Interval compact = dV_dalpha_compact(x, y, alpha, b);
    return std::fabs(comp.mid() - compact.mid()) <= 1e-9;
}

DerivativeBounds derivative_bounds(const ParamBox& box) {
    ConfigPoint p = box.enclosure();
    Interval k = two_over_sqrt3();
    Interval t = I(2) * p.alpha - I(2) * pi() / I(3);
    DerivativeBounds d;
    // On P these are monotone in alpha, so the magnitudes below equal the
    // endpoint formulas 1 - (2/sqrt3) sin(2(a_c - da) - 2pi/3) and so on.
    d.dC_dx = abs(I(-1) + k * sin(t)).hi();
    d.dC_dy = abs(I(-1) + k * cos(t)).hi();
    d.dV_dx = abs(k * sin(I(2) * p.alpha)).hi();
    d.dV_dy = abs(k * sin(I(2) * p.beta())).hi();
    d.dC_dalpha = abs(dC_dalpha(p.x, p.y, p.alpha)).hi();
    d.dV_dalpha = norm(dV_dalpha_total(p.x, p.y, p.alpha)).hi();
    return d;
}

Interval err(const ParamBox& b, const DerivativeBounds& d) {
    Interval dx(b.half[0]), dy(b.half[1]), da(b.half[2]);
    // Q1 and Q2 also slide with x and y, hence the extra unit coefficients.
    return (I(d.dC_dx) + I(d.dV_dx) + I(1)) * dx + (I(d.dC_dy) + I(d.dV_dy) + I(1)) * dy +
           (I(d.dC_dalpha) + I(d.dV_dalpha)) * da + I(b.half[3]) + I(b.half[4]) + I(b.half[5]);
}

Interval err(const ParamBox& b) { return err(b, derivative_bounds(b)); }

} // namespace mdm
