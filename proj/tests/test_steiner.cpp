#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <map>
#include <random>
#include <set>

#include "mdm/scene.hpp"
#include "mdm/steiner.hpp"
#include "oracle.hpp"

using namespace mdm;

namespace {

Point P(double x, double y) { return {Interval(x), Interval(y)}; }

std::vector<oracle::P2> plain(const Terminals& t) {
    std::vector<oracle::P2> out;
    for (const auto& p : t) out.push_back({p.x.mid(), p.y.mid()});
    return out;
}

Terminals random_terminals(std::mt19937_64& g, int n) {
    std::uniform_real_distribution<double> u(0.0, 1.0);
    Terminals t;
    for (int i = 0; i < n; ++i) t.push_back(P(u(g), u(g)));
    return t;
}

bool connected(const Topology& t) {
    int n = t.terminals + t.steiner_points;
    std::vector<int> comp(n);
    for (int i = 0; i < n; ++i) comp[i] = i;
    for (auto [a, b] : t.edges) {
        int ca = comp[a], cb = comp[b];
        for (int& c : comp)
            if (c == cb) c = ca;
    }
    return std::set<int>(comp.begin(), comp.end()).size() == 1 &&
           static_cast<int>(t.edges.size()) == n - 1;
}

} // namespace

TEST_CASE("topology catalogue") {
    CHECK(enumerate_topologies(2).size() == 1);
    CHECK(enumerate_topologies(3).size() == 4);
    auto four = enumerate_topologies(4);
    CHECK(four.size() == 31);
    std::map<TopologyKind, int> kinds;
    for (const auto& t : four) {
        ++kinds[t.kind];
        CHECK(connected(t));
        std::vector<int> degree(t.terminals + t.steiner_points, 0);
        for (auto [a, b] : t.edges) ++degree[a], ++degree[b];
        for (int i = 0; i < t.terminals; ++i) CHECK(degree[i] <= 3);
        for (int i = t.terminals; i < t.terminals + t.steiner_points; ++i) CHECK(degree[i] == 3);
    }
    CHECK(kinds[TopologyKind::SpanningTree] == 16);
    CHECK(kinds[TopologyKind::OneSteiner] == 12);
    CHECK(kinds[TopologyKind::FullSteiner] == 3);
    CHECK_THROWS_AS(enumerate_topologies(5), UnsupportedCount);
    CHECK_THROWS_AS(enumerate_topologies(1), UnsupportedCount);
}

TEST_CASE("three-point trees") {
    Interval eq = torricelli_length(P(0, 0), P(1, 0), {Interval(0.5), sqrt3() / Interval(2.0)});
    CHECK(eq.contains(std::sqrt(3.0)));
    CHECK(eq.width() < 1e-14);
    Interval line = torricelli_length(P(0, 0), P(1, 0), P(2, 0));
    CHECK(line.contains(2.0));
    Interval flat = torricelli_length(P(0, 0), P(1, 0), P(0.5, 0.1));
    long double ref = oracle::smt_length({{0, 0}, {1, 0}, {0.5, 0.1}});
    CHECK(std::fabs(flat.mid() - ref) < 1e-9);
    CHECK(flat.contains(2 * std::sqrt(0.26)));
}

TEST_CASE("unit square") {
    SteinerBound b = melzak_lower_bound({P(0, 0), P(1, 0), P(1, 1), P(0, 1)});
    CHECK(b.lower <= 1 + std::sqrt(3.0));
    CHECK(std::fabs(b.lower - (1 + std::sqrt(3.0))) < 1e-6);
    CHECK(b.witness.kind == TopologyKind::FullSteiner);
    CHECK(b.witness_reconstructs);
    CHECK(b.upper >= b.lower);
    CHECK(std::fabs(static_cast<double>(oracle::smt_length({{0, 0}, {1, 0}, {1, 1}, {0, 1}})) -
                    (1 + std::sqrt(3.0))) < 1e-8);
}

TEST_CASE("equilateral triangle oracle") {
    long double s = oracle::smt_length({{0, 0}, {1, 0}, {0.5L, std::sqrt(3.0L) / 2}});
    CHECK(std::fabs(static_cast<double>(s) - std::sqrt(3.0)) < 1e-9);
}

TEST_CASE("duplicates collapse") {
    Terminals t{P(0, 0), P(0, 0), P(1, 0), P(0.5, 0.8)};
    SteinerBound b = melzak_lower_bound(t);
    SteinerBound c = melzak_lower_bound({P(0, 0), P(1, 0), P(0.5, 0.8)});
    CHECK(b.lower == doctest::Approx(c.lower).epsilon(1e-12));
    Scene s = derive_scene(reference_point());
    SteinerBound vq = melzak_lower_bound({s.V, s.Q1, s.Q2, s.Q});
    CHECK(std::fabs(vq.lower - 0.567472) < 1e-6);
    CHECK_THROWS_AS(melzak_lower_bound({P(0, 0), P(1, 0), P(2, 0), P(3, 0), P(4, 1)}),
                    UnsupportedCount);
}

TEST_CASE("random instances against the oracle") {
    std::mt19937_64 g(31);
    int reconstructed = 0;
    for (int i = 0; i < 1000; ++i) {
        Terminals t = random_terminals(g, 2 + i % 3);
        SteinerBound b = melzak_lower_bound(t);
        long double o = oracle::smt_length(plain(t));
        REQUIRE(b.lower <= o + 1e-9);
        REQUIRE(b.upper >= o - 1e-8);
        if (b.witness_reconstructs) {
            ++reconstructed;
            REQUIRE(std::fabs(b.lower - o) <= 1e-6);
        }
    }
    CHECK(reconstructed > 900);
}

TEST_CASE("widening terminals never raises the lower bound") {
    std::mt19937_64 g(37);
    std::uniform_real_distribution<double> w(0.0, 0.02);
    for (int i = 0; i < 500; ++i) {
        Terminals t = random_terminals(g, 2 + i % 3);
        Terminals wide = t;
        for (auto& p : wide) {
            p.x = Interval(p.x.lo() - w(g), p.x.hi() + w(g));
            p.y = Interval(p.y.lo() - w(g), p.y.hi() + w(g));
        }
        REQUIRE(melzak_lower_bound(wide).lower <= melzak_lower_bound(t).lower);
    }
}

TEST_CASE("rigid motions") {
    std::mt19937_64 g(41);
    std::uniform_real_distribution<double> u(-5.0, 5.0);
    for (int i = 0; i < 500; ++i) {
        Terminals t = random_terminals(g, 2 + i % 3);
        double th = u(g), dx = u(g), dy = u(g);
        Terminals moved;
        for (const auto& p : t) {
            double x = p.x.mid(), y = p.y.mid();
            moved.push_back(P(std::cos(th) * x - std::sin(th) * y + dx,
                              std::sin(th) * x + std::cos(th) * y + dy));
        }
        REQUIRE(std::fabs(melzak_lower_bound(t).lower - melzak_lower_bound(moved).lower) < 1e-9);
    }
}

TEST_CASE("fermat point") {
    auto f = fermat_point({0, 0}, {1, 0}, {0.5, std::sqrt(3.0) / 2});
    CHECK(f.first == doctest::Approx(0.5));
    CHECK(f.second == doctest::Approx(std::sqrt(3.0) / 6));
    auto v = fermat_point({0, 0}, {1, 0}, {0.5, 0.1});
    CHECK(v.first == doctest::Approx(0.5));
    CHECK(v.second == doctest::Approx(0.1));
}

TEST_CASE("oracle settles a nearly degenerate full topology") {
    // Angle 0-1-2 is just under 120 degrees, so one Steiner point sits very close to terminal 1.
    Terminals t = {P(0.81504427551065373, 0.79458371570012543), P(0.52461487117784245, 0.76856974360071273),
                   P(0.47476552617723028, 0.84314119898973439), P(0.21658113283191255, 0.069683271258853444)};
    long double o = oracle::smt_length(plain(t));
    SteinerBound b = melzak_lower_bound(t);
    CHECK(b.lower <= o + 1e-9L);
    CHECK(std::fabs(b.lower - o) < 1e-6L);
}
