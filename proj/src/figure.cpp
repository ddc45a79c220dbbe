#include "mdm/figure.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <numbers>

#include "mdm/cases.hpp"
#include "mdm/error.hpp"
#include "mdm/steiner.hpp"

namespace mdm {

namespace {

Vec2 mid_of(const Point& p) { return {p.x.mid(), p.y.mid()}; }

double dist2(const Vec2& a, const Vec2& b) { return std::hypot(a[0] - b[0], a[1] - b[1]); }

std::string num(double v) {
    char buf[32];
    auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

} // namespace

Figure build_minimizer_figure(const FigureSpec& spec) {
    const double w = spec.width, h = spec.height, r = spec.r;
    if (!(w > 0 && h > 0 && r > 0)) throw RTooLarge("dimensions must be positive");
    if (r > std::min(w, h) / 20.0) throw RTooLarge("r exceeds min(width, height) / 20");

    Case3aLayout c = case3a_layout();
    Vec2 W1 = mid_of(c.W1), W2 = mid_of(c.W2), Q2 = mid_of(c.Q2), Q1 = mid_of(c.Q1);
    // The tabulated V is only good to six digits; put it where the angles are exact.
    auto fp = fermat_point({W1[0], W1[1]}, {W2[0], W2[1]}, {Q2[0], Q2[1]});
    Vec2 V{fp.first, fp.second};

    // Corner frames: A1 as is, then mirrored into A2, A3, A4.
    auto place = [&](int corner, const Vec2& p) -> Vec2 {
        double x = p[0] * r, y = p[1] * r;
        switch (corner) {
        case 0: return {x, y};
        case 1: return {w - x, y};
        case 2: return {w - x, h - y};
        default: return {x, h - y};
        }
    };

    Figure f;
    f.spec = spec;
    for (int k = 0; k < 4; ++k) {
        Vec2 v = place(k, V);
        f.steiner_points.push_back(v);
        f.segments.push_back({place(k, W1), v});
        f.segments.push_back({v, place(k, W2)});
        f.segments.push_back({v, place(k, Q2)});
        f.segments.push_back({place(k, Q2), place(k, Q1)});
    }
    f.segments.push_back({place(0, W2), place(3, W2)});  // left
    f.segments.push_back({place(3, W1), place(2, W1)});  // top
    f.segments.push_back({place(1, W2), place(2, W2)});  // right
    Vec2 b0 = place(0, W1), b1 = place(1, W1);
    f.segments.push_back({b0, {w / 2 - r, b0[1]}});
    f.segments.push_back({{w / 2 + r, b1[1]}, b1});

    if (f.segments.size() != 21) throw CertificationFailed("minimizer must have 21 segments");
    for (const auto& s : f.segments)
        for (const Vec2& e : {s.a, s.b})
            if (!(e[0] >= 0 && e[0] <= w && e[1] >= 0 && e[1] <= h) || dist2(s.a, s.b) == 0)
                throw CertificationFailed("segment endpoint outside the rectangle");
    f.total_length = theorem_total_length(w, h, r);
    return f;
}

std::vector<double> tripod_angles(const Figure& f) {
    std::vector<double> out;
    for (const Vec2& v : f.steiner_points) {
        std::vector<double> dirs;
        for (const auto& s : f.segments) {
            if (s.a == v) dirs.push_back(std::atan2(s.b[1] - v[1], s.b[0] - v[0]));
            if (s.b == v) dirs.push_back(std::atan2(s.a[1] - v[1], s.a[0] - v[0]));
        }
        if (dirs.size() != 3) throw CertificationFailed("Steiner point without degree 3");
        std::sort(dirs.begin(), dirs.end());
        out.push_back(dirs[1] - dirs[0]);
        out.push_back(dirs[2] - dirs[1]);
        out.push_back(2 * std::numbers::pi - (dirs[2] - dirs[0]));
    }
    return out;
}

std::string render_svg(const Figure& f) {
    const double w = f.spec.width, h = f.spec.height;
    const double margin = 0.05 * std::max(w, h);
    const double stroke = std::max(w, h) / 800.0;
    // SVG y grows downwards; flip so the corner A1 sits bottom left.
    auto X = [&](double x) { return num(x); };
    auto Y = [&](double y) { return num(h - y); };

    std::string s;
    s += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    s += "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" viewBox=\"" + num(-margin) +
         " " + num(-margin) + " " + num(w + 2 * margin) + " " + num(h + 3 * margin) + "\">\n";
    s += "  <rect class=\"boundary\" x=\"0\" y=\"0\" width=\"" + num(w) + "\" height=\"" + num(h) +
         "\" fill=\"none\" stroke=\"black\" stroke-width=\"" + num(stroke) + "\"/>\n";
    s += "  <g class=\"minimizer\" stroke=\"#c0392b\" stroke-width=\"" + num(stroke) + "\">\n";
    for (const auto& seg : f.segments)
        s += "    <line x1=\"" + X(seg.a[0]) + "\" y1=\"" + Y(seg.a[1]) + "\" x2=\"" + X(seg.b[0]) +
             "\" y2=\"" + Y(seg.b[1]) + "\"/>\n";
    s += "  </g>\n";
    s += "  <text x=\"0\" y=\"" + num(h + 2 * margin) + "\" font-size=\"" + num(margin * 0.8) +
         "\">length in [" + num(f.total_length.lo()) + ", " + num(f.total_length.hi()) +
         "], r = " + num(f.spec.r) + "</text>\n";
    s += "</svg>\n";
    return s;
}

} // namespace mdm
