#pragma once

#include "mdm/interval.hpp"
#include "mdm/scene.hpp"

namespace mdm {

// Suprema of the partial derivatives of C and V over a box.
struct DerivativeBounds {
    double dC_dx = 0, dC_dy = 0, dC_dalpha = 0;
    double dV_dx = 0, dV_dy = 0, dV_dalpha = 0;
};

DerivativeBounds derivative_bounds(const ParamBox& b);

// Mean-value budget: L(p) >= L(c) - err(b) for all p in b.
Interval err(const ParamBox& b);
Interval err(const ParamBox& b, const DerivativeBounds& d);

// dC/dalpha with beta = 11pi/12 - alpha.
Interval dC_dalpha(const Interval& x, const Interval& y, const Interval& alpha);
// Total dV/dalpha, beta following alpha.
Point dV_dalpha_total(const Interval& x, const Interval& y, const Interval& alpha);

// Partial of V in alpha with beta held fixed: component form and compact norm.
Point dV_dalpha_components(const Interval& x, const Interval& y, const Interval& alpha,
                           const Interval& beta);
Interval dV_dalpha_compact(const Interval& x, const Interval& y, const Interval& alpha,
                           const Interval& beta);

// The two forms above agree within 1e-9 at the point (beta = 11pi/12 - alpha).
bool dv_dalpha_crosscheck(const Interval& x, const Interval& y, const Interval& alpha);

} // namespace mdm
