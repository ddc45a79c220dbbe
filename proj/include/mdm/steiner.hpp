#pragma once

#include <string>
#include <utility>
#include <vector>

#include "mdm/point.hpp"

namespace mdm {

using Terminals = std::vector<Point>;

enum class TopologyKind { SpanningTree, OneSteiner, FullSteiner };

// Vertices 0..n-1 are terminals, n.. are Steiner slots.
struct Topology {
    TopologyKind kind = TopologyKind::SpanningTree;
    int terminals = 0;
    int steiner_points = 0;
    std::vector<std::pair<int, int>> edges;

    std::string describe() const;
};

struct SteinerBound {
    double lower = 0.0;   // certified lower bound on the SMT length
    double upper = 0.0;   // certified length of the best tree actually built
    Topology witness;     // topology attaining `lower`
    bool witness_reconstructs = false;  // the witness tree was built at length `lower`
};

std::vector<Topology> enumerate_topologies(int n);

// Exact length of the Steiner minimal tree of three points.
Interval torricelli_length(const Point& a, const Point& b, const Point& c);

SteinerBound melzak_lower_bound(const Terminals& t);

// Floating-point Fermat point of a triangle; a vertex when its angle is >= 120 degrees.
std::pair<double, double> fermat_point(std::pair<double, double> a, std::pair<double, double> b,
                                       std::pair<double, double> c);

const char* to_string(TopologyKind k);

} // namespace mdm
