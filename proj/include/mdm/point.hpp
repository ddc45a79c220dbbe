#pragma once

#include "mdm/interval.hpp"

namespace mdm {

struct Point {
    Interval x;
    Interval y;
};

inline Point operator+(const Point& a, const Point& b) { return {a.x + b.x, a.y + b.y}; }
inline Point operator-(const Point& a, const Point& b) { return {a.x - b.x, a.y - b.y}; }
inline Point operator*(const Interval& s, const Point& p) { return {s * p.x, s * p.y}; }

inline Interval dot(const Point& a, const Point& b) { return a.x * b.x + a.y * b.y; }
inline Interval cross(const Point& a, const Point& b) { return a.x * b.y - a.y * b.x; }
inline Interval norm(const Point& a) { return sqrt(sqr(a.x) + sqr(a.y)); }
inline Interval dist(const Point& a, const Point& b) { return norm(a - b); }

inline Point midpoint_of(const Point& p) { return {Interval(p.x.mid()), Interval(p.y.mid())}; }
inline bool overlaps(const Point& a, const Point& b) { return a.x.overlaps(b.x) && a.y.overlaps(b.y); }
inline bool is_point(const Point& p) { return p.x.is_point() && p.y.is_point(); }
inline Point hull(const Point& a, const Point& b) { return {hull(a.x, b.x), hull(a.y, b.y)}; }

} // namespace mdm
