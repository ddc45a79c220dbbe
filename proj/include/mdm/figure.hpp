#pragma once

#include <array>
#include <string>
#include <vector>

#include "mdm/interval.hpp"

namespace mdm {

struct FigureSpec {
    double width = 16.0;
    double height = 9.0;
    double r = 0.2;
};

using Vec2 = std::array<double, 2>;

struct Segment {
    Vec2 a, b;
};

struct Figure {
    FigureSpec spec;
    std::vector<Segment> segments;  // exactly 21
    std::vector<Vec2> steiner_points;
    Interval total_length;
};

// Corner layout scaled by r and mirrored into the four corners, joined along
// the sides, with a 2r cut in the middle of the bottom side. RTooLarge
// unless r <= min(width, height) / 20.
Figure build_minimizer_figure(const FigureSpec& spec);

// The three angles at each Steiner point, in corner order.
std::vector<double> tripod_angles(const Figure& f);

std::string render_svg(const Figure& f);

} // namespace mdm
