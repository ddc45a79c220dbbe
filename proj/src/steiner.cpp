#include "mdm/steiner.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>

namespace mdm {

namespace {

using P2 = std::pair<double, double>;

// Third vertex of the equilateral triangle on ab, rotating b about a by +60 or -60 degrees.
Point apex(const Point& a, const Point& b, int sign) {
    static const Interval half = Interval(0.5);
    static const Interval s60 = sqrt3() / Interval(2.0);
    Point d = b - a;
    Interval s = sign > 0 ? s60 : -s60;
    return {a.x + half * d.x - s * d.y, a.y + s * d.x + half * d.y};
}

P2 apex(P2 a, P2 b, int sign) {
    const double s60 = std::sqrt(3.0) / 2.0;
    double dx = b.first - a.first, dy = b.second - a.second;
    double s = sign > 0 ? s60 : -s60;
    return {a.first + 0.5 * dx - s * dy, a.second + s * dx + 0.5 * dy};
}

// Certified "angle at v is >= 120 degrees": 1 yes, 0 no, -1 undecided.
int wide_angle(const Point& v, const Point& u, const Point& w) {
    Point du = u - v, dw = w - v;
    Interval g = dot(du, dw) + Interval(0.5) * norm(du) * norm(dw);
    if (g.hi() <= 0) return 1;
    if (g.lo() > 0) return 0;
    return -1;
}

// |X c| with X the equilateral apex on ab away from c; both sides when undecided.
Interval melzak_three(const Point& a, const Point& b, const Point& c) {
    Interval o = cross(b - a, c - a);
    if (o.certainly_positive()) return dist(apex(a, b, -1), c);
    if (o.certainly_negative()) return dist(apex(a, b, +1), c);
    return hull(dist(apex(a, b, -1), c), dist(apex(a, b, +1), c));
}

// Melzak reconstruction along E -> F: s1 is the second meeting point of the
// line with the circle through a, b, E and s2 likewise for c, d, F. A real
// full tree needs E, s1, s2, F in this order with each Steiner point on the
// arc away from its apex.
bool certainly_unrealizable(const Point& a, const Point& b, const Point& e, const Point& c,
                            const Point& d, const Point& f) {
    try {
        Point dir = f - e;
        Interval len2 = sqr(dir.x) + sqr(dir.y);
        Point o1 = Interval(1.0) / Interval(3.0) * (a + b + e);
        Point o2 = Interval(1.0) / Interval(3.0) * (c + d + f);
        Interval t1 = Interval(-2.0) * dot(e - o1, dir) / len2;
        Interval t2 = Interval(1.0) + Interval(2.0) * dot(f - o2, Point{-dir.x, -dir.y}) / len2;
        if (t1.hi() <= 0 || t2.lo() >= 1 || t1.lo() >= t2.hi()) return true;
        Point q1 = e + t1 * dir;
        Point q2 = e + t2 * dir;
        if ((cross(b - a, q1 - a) * cross(b - a, e - a)).lo() >= 0) return true;
        if ((cross(d - c, q2 - c) * cross(d - c, f - c)).lo() >= 0) return true;
        return false;
    } catch (const DivisionByIntervalContainingZero&) {
        return false;
    }
}

Point as_point(P2 p) { return {Interval(p.first), Interval(p.second)}; }

double tree_length(const std::vector<P2>& v, const std::vector<std::pair<int, int>>& edges) {
    Interval total(0.0);
    for (auto [i, j] : edges) total += mdm::dist(as_point(v[i]), as_point(v[j]));
    return total.hi();
}

void neighbours(const Topology& t, int v, std::vector<int>& out) {
    out.clear();
    for (auto [i, j] : t.edges) {
        if (i == v) out.push_back(j);
        if (j == v) out.push_back(i);
    }
}

// Certified lower bound on the shortest tree with topology t.
double topology_lower(const Topology& t, const Terminals& p) {
    int n = t.terminals;
    std::vector<int> nb;
    switch (t.kind) {
    case TopologyKind::SpanningTree: {
        Interval total(0.0);
        for (auto [i, j] : t.edges) total += dist(p[i], p[j]);
        return total.lo();
    }
    case TopologyKind::OneSteiner: {
        neighbours(t, n, nb);
        Interval total = torricelli_length(p[nb[0]], p[nb[1]], p[nb[2]]);
        for (auto [i, j] : t.edges)
            if (i != n && j != n) total += dist(p[i], p[j]);
        return total.lo();
    }
    case TopologyKind::FullSteiner: {
        if (t.steiner_points == 1) {
            neighbours(t, n, nb);
            return torricelli_length(p[nb[0]], p[nb[1]], p[nb[2]]).lo();
        }
        std::vector<int> s1, s2;
        neighbours(t, n, s1);
        neighbours(t, n + 1, s2);
        s1.erase(std::remove(s1.begin(), s1.end(), n + 1), s1.end());
        s2.erase(std::remove(s2.begin(), s2.end(), n), s2.end());
        const Point &a = p[s1[0]], &b = p[s1[1]], &c = p[s2[0]], &d = p[s2[1]];
        // A full tree of this shape, if one exists, is reconstructed from one of
        // the four apex pairs. When every pair is certainly invalid the shape
        // only degenerates into topologies that are enumerated separately.
        bool possible = false;
        for (int se : {+1, -1})
            for (int sf : {+1, -1})
                if (!certainly_unrealizable(a, b, apex(a, b, se), c, d, apex(c, d, sf))) possible = true;
        if (!possible) return std::numeric_limits<double>::infinity();
        // |s a| + |s b| >= |s E| for either apex E of ab, so every choice below
        // bounds the tree from below; the largest is kept.
        double best = -std::numeric_limits<double>::infinity();
        for (int sg : {+1, -1}) {
            best = std::max(best, torricelli_length(apex(a, b, sg), c, d).lo());
            best = std::max(best, torricelli_length(apex(c, d, sg), a, b).lo());
        }
        return best;
    }
    }
    return 0.0;
}

// Length of a concrete tree with topology t built on the point terminals v.
double topology_upper(const Topology& t, const std::vector<P2>& v) {
    int n = t.terminals;
    std::vector<int> nb;
    std::vector<P2> all = v;
    switch (t.kind) {
    case TopologyKind::SpanningTree:
        return tree_length(all, t.edges);
    case TopologyKind::OneSteiner:
    case TopologyKind::FullSteiner:
        if (t.steiner_points == 1) {
            neighbours(t, n, nb);
            all.push_back(fermat_point(v[nb[0]], v[nb[1]], v[nb[2]]));
            return tree_length(all, t.edges);
        } else {
            std::vector<int> s1, s2;
            neighbours(t, n, s1);
            neighbours(t, n + 1, s2);
            s1.erase(std::remove(s1.begin(), s1.end(), n + 1), s1.end());
            s2.erase(std::remove(s2.begin(), s2.end(), n), s2.end());
            double best = std::numeric_limits<double>::infinity();
            for (int side = 0; side < 2; ++side) {
                const auto& first = side == 0 ? s1 : s2;
                const auto& second = side == 0 ? s2 : s1;
                for (int sg : {+1, -1}) {
                    P2 e = apex(v[first[0]], v[first[1]], sg);
                    P2 q2 = fermat_point(e, v[second[0]], v[second[1]]);
                    P2 q1 = fermat_point(v[first[0]], v[first[1]], q2);
                    std::vector<P2> pts = v;
                    pts.push_back(side == 0 ? q1 : q2);
                    pts.push_back(side == 0 ? q2 : q1);
                    best = std::min(best, tree_length(pts, t.edges));
                }
            }
            return best;
        }
    }
    return std::numeric_limits<double>::infinity();
}

} // namespace

const char* to_string(TopologyKind k) {
    switch (k) {
    case TopologyKind::SpanningTree: return "spanning-tree";
    case TopologyKind::OneSteiner: return "one-steiner";
    case TopologyKind::FullSteiner: return "full-steiner";
    }
    return "?";
}

std::string Topology::describe() const {
    std::ostringstream os;
    os << to_string(kind) << " {";
    auto name = [&](int v) {
        if (v < terminals) return std::to_string(v);
        return "s" + std::to_string(v - terminals + 1);
    };
    for (std::size_t k = 0; k < edges.size(); ++k) {
        if (k) os << ", ";
        os << name(edges[k].first) << '-' << name(edges[k].second);
    }
    os << '}';
    return os.str();
}

std::vector<Topology> enumerate_topologies(int n) {
    if (n < 2 || n > 4) throw UnsupportedCount("Steiner trees need 2 to 4 terminals, got " + std::to_string(n));
    std::vector<Topology> out;
    std::vector<std::pair<int, int>> pairs;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) pairs.emplace_back(i, j);

    // Spanning trees: (n-1)-subsets of the complete graph's edges without a cycle.
    int m = static_cast<int>(pairs.size());
    for (int mask = 0; mask < (1 << m); ++mask) {
        if (__builtin_popcount(static_cast<unsigned>(mask)) != n - 1) continue;
        std::array<int, 4> parent{0, 1, 2, 3};
        auto find = [&](int v) {
            while (parent[v] != v) v = parent[v];
            return v;
        };
        Topology t{TopologyKind::SpanningTree, n, 0, {}};
        bool acyclic = true;
        for (int e = 0; e < m && acyclic; ++e) {
            if (!(mask & (1 << e))) continue;
            int a = find(pairs[e].first), b = find(pairs[e].second);
            if (a == b) acyclic = false;
            parent[a] = b;
            t.edges.push_back(pairs[e]);
        }
        if (acyclic) out.push_back(t);
    }

    if (n == 3) out.push_back({TopologyKind::FullSteiner, 3, 1, {{0, 3}, {1, 3}, {2, 3}}});
    if (n == 4) {
        for (int d = 0; d < 4; ++d) {
            std::vector<int> tri;
            for (int i = 0; i < 4; ++i)
                if (i != d) tri.push_back(i);
            for (int c : tri) {
                Topology t{TopologyKind::OneSteiner, 4, 1, {}};
                for (int i : tri) t.edges.emplace_back(i, 4);
                t.edges.emplace_back(std::min(c, d), std::max(c, d));
                out.push_back(t);
            }
        }
        const int pairings[3][4] = {{0, 1, 2, 3}, {0, 2, 1, 3}, {0, 3, 1, 2}};
        for (const auto& pr : pairings)
            out.push_back({TopologyKind::FullSteiner, 4, 2,
                           {{pr[0], 4}, {pr[1], 4}, {4, 5}, {pr[2], 5}, {pr[3], 5}}});
    }
    return out;
}

Interval torricelli_length(const Point& a, const Point& b, const Point& c) {
    const Point* v[3] = {&a, &b, &c};
    bool undecided = false;
    Interval candidates;
    bool have = false;
    for (int i = 0; i < 3; ++i) {
        const Point& p = *v[i];
        const Point& u = *v[(i + 1) % 3];
        const Point& w = *v[(i + 2) % 3];
        int wide = wide_angle(p, u, w);
        if (wide == 0) continue;
        Interval two_seg = dist(p, u) + dist(p, w);
        if (wide == 1) return two_seg;
        candidates = have ? hull(candidates, two_seg) : two_seg;
        have = true;
        undecided = true;
    }
    Interval m = melzak_three(a, b, c);
    return undecided ? hull(candidates, m) : m;
}

P2 fermat_point(P2 a, P2 b, P2 c) {
    const P2 v[3] = {a, b, c};
    for (int i = 0; i < 3; ++i) {
        P2 p = v[i], u = v[(i + 1) % 3], w = v[(i + 2) % 3];
        double ux = u.first - p.first, uy = u.second - p.second;
        double wx = w.first - p.first, wy = w.second - p.second;
        if (ux * wx + uy * wy <= -0.5 * std::hypot(ux, uy) * std::hypot(wx, wy)) return p;
    }
    // Lines from each outer apex to the opposite vertex meet at the Fermat point.
    auto outer = [](P2 p, P2 q, P2 opp) {
        double o = (q.first - p.first) * (opp.second - p.second) -
                   (q.second - p.second) * (opp.first - p.first);
        return apex(p, q, o > 0 ? -1 : +1);
    };
    P2 x = outer(a, b, c), y = outer(b, c, a);
    double d1x = c.first - x.first, d1y = c.second - x.second;
    double d2x = a.first - y.first, d2y = a.second - y.second;
    double det = d1x * (-d2y) - d1y * (-d2x);
    if (det == 0) return a;
    double rx = y.first - x.first, ry = y.second - x.second;
    double t = (rx * (-d2y) - ry * (-d2x)) / det;
    return {x.first + t * d1x, x.second + t * d1y};
}

SteinerBound melzak_lower_bound(const Terminals& input) {
    Terminals t;
    for (const Point& p : input) {
        bool dup = false;
        if (is_point(p)) {
            for (const Point& q : t)
                if (is_point(q) && q.x.lo() == p.x.lo() && q.y.lo() == p.y.lo()) dup = true;
        }
        if (!dup) t.push_back(p);
    }
    if (input.size() < 2 || input.size() > 4)
        throw UnsupportedCount("Steiner trees need 2 to 4 terminals, got " + std::to_string(input.size()));

    SteinerBound out;
    if (t.size() == 1) {
        out.witness = {TopologyKind::SpanningTree, 1, 0, {}};
        out.witness_reconstructs = true;
        return out;
    }

    std::vector<P2> mids;
    double spread = 0.0;  // how far any point of a terminal box is from its midpoint
    for (const Point& p : t) {
        mids.emplace_back(p.x.mid(), p.y.mid());
        Interval r = sqrt(sqr(Interval(p.x.rad())) + sqr(Interval(p.y.rad())));
        spread = rnd::add_up(spread, r.hi());
    }

    double best_lower = std::numeric_limits<double>::infinity();
    double best_upper = std::numeric_limits<double>::infinity();
    double witness_upper = 0.0;
    for (const Topology& top : enumerate_topologies(static_cast<int>(t.size()))) {
        double lo = topology_lower(top, t);
        double up = topology_upper(top, mids);
        if (lo < best_lower) {
            best_lower = lo;
            out.witness = top;
            witness_upper = up;
        }
        best_upper = std::min(best_upper, up);
    }
    out.lower = std::max(best_lower, 0.0);
    out.upper = rnd::add_up(best_upper, spread);
    out.witness_reconstructs = witness_upper - out.lower <= 1e-9 * (1.0 + out.lower);
    return out;
}

} // namespace mdm
