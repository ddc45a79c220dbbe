#pragma once

#include <array>

#include "mdm/interval.hpp"
#include "mdm/point.hpp"

namespace mdm {

// p = (x, y, alpha, xi1, xi2, xi); r is fixed to 1.
struct ConfigPoint {
    Interval x, y, alpha, xi1, xi2, xi;

    Interval beta() const;
    std::array<Interval, 6> coords() const { return {x, y, alpha, xi1, xi2, xi}; }
    static ConfigPoint from_array(const std::array<Interval, 6>& c);
    static ConfigPoint at(const std::array<double, 6>& c);
    // Reflection in the diagonal: x <-> y, alpha <-> beta, xi1 <-> xi2, xi -> pi/2 - xi.
    ConfigPoint mirrored() const;
};

struct ParamBox {
    std::array<double, 6> center{};
    std::array<double, 6> half{};
    bool clamped = false;

    ConfigPoint center_point() const { return ConfigPoint::at(center); }
    Interval coord(int i) const;
    // Outward enclosure of the whole box.
    ConfigPoint enclosure() const;
    // Box spanning [lo_i, hi_i], rounded outward.
    static ParamBox from_bounds(const std::array<double, 6>& lo, const std::array<double, 6>& hi);
};

// Z-coordinate offset 4/sqrt6 + 4 (p_M + 3 for the right angle).
Interval corner_offset();
// Upper end of the x and y ranges of P, 4/sqrt6 + 3.
Interval range_bound();
Interval alpha0();
Interval beta_of(const Interval& alpha);

// Outer box of P; its corners may sit an ulp outside P.
ParamBox parameter_space();
// Inner box of P0: every point of it is certified inside P0.
ParamBox target_box();
ConfigPoint reference_point();

// Certified membership with a 1e-9 tolerance for rounded boundary inputs.
bool in_parameter_space(const ConfigPoint& p);
// Shrinks a box so that it lies in P; sets `clamped` when anything moved.
ParamBox clamp_to_parameter_space(ParamBox b);

struct Scene {
    Point Z1, W1, V, W2, Z2, Q1, Q2, Q, yW1, yW2;
    Interval l1, l2;
};

Scene derive_scene(const ConfigPoint& p);

// Strict rejects chains with a certainly negative W1V or W2V. Extended keeps
// the closed form everywhere on P, which is what the box search bounds: on
// valid chains both agree.
enum class ChainPolicy { Strict, Extended };

// Closed form of |Z1W1| + |W1V| + |VW2| + |W2Z2|.
Interval curve_length_C(const ConfigPoint& p, ChainPolicy policy = ChainPolicy::Strict);
Interval curve_length_C(const ConfigPoint& p, const Scene& s,
                        ChainPolicy policy = ChainPolicy::Strict);

Interval total_length_L(const ConfigPoint& p, ChainPolicy policy = ChainPolicy::Strict);

bool is_unobtainable(const ParamBox& b);
bool in_target_box(const ParamBox& b);

} // namespace mdm
