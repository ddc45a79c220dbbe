#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <functional>
#include <random>

#include "mdm/cases.hpp"
#include "mdm/error.hpp"
#include "mdm/polybound.hpp"

using namespace mdm;

namespace {

const double kT = 1.0 / 30.0;
using Fn = std::function<long double(long double)>;

// Checks lower <= f <= upper at n evenly spread t, ends included.
bool encloses(const PolyBound& b, const Fn& f, int n = 1000, long double slack = 1e-15L) {
    for (int i = 0; i < n; ++i) {
        double t = -kT + 2 * kT * i / (n - 1);
        long double v = f(t);
        if (b.lower_at(t) > v + slack || b.upper_at(t) < v - slack) return false;
    }
    return true;
}

Fn base_fn(BaseFunction f, long double c) {
    switch (f) {
    case BaseFunction::Sin: return [c](long double t) { return std::sin(t + c); };
    case BaseFunction::Cos: return [c](long double t) { return std::cos(t + c); };
    case BaseFunction::Arccos: return [c](long double t) { return std::acos(t + c); };
    case BaseFunction::Reciprocal:
    case BaseFunction::ReciprocalTight: return [c](long double t) { return 1 / (t + c); };
    case BaseFunction::Sqrt: return [c](long double t) { return std::sqrt(t + c); };
    }
    return {};
}

} // namespace

TEST_CASE("sin at pi/4, t = 0") {
    PolyBound b = base_bound(BaseFunction::Sin, M_PI / 4);
    CHECK(b.lower_at(0) <= std::sin(M_PI / 4));
    CHECK(b.upper_at(0) >= std::sin(M_PI / 4));
    CHECK(b.upper_at(0) - b.lower_at(0) < 1e-15);
}

TEST_CASE("reciprocal at 1.3 sampled") {
    CHECK(encloses(base_bound(BaseFunction::Reciprocal, 1.3), base_fn(BaseFunction::Reciprocal, 1.3L)));
}

TEST_CASE("arccos at 0.5: width set by the sixth derivative") {
    // Derivatives of arcsin: (1-x^2) y^(n+2) = (2n+1) x y^(n+1) + n^2 y^(n).
    auto d6 = [](long double x) {
        long double y[7];
        y[1] = 1 / std::sqrt(1 - x * x);
        y[2] = x * std::pow(1 - x * x, -1.5L);
        for (int n = 1; n + 2 <= 6; ++n) y[n + 2] = ((2 * n + 1) * x * y[n + 1] + n * n * y[n]) / (1 - x * x);
        return y[6];
    };
    // Remainder uses the largest |f^(6)| on the whole domain (0, 0.85).
    long double M = d6(0.85L);
    long double cap = M * std::pow(1.0L / 30, 6) / 720;
    PolyBound b = base_bound(BaseFunction::Arccos, 0.5);
    for (double t : {-kT, kT}) {
        double w = b.upper_at(t) - b.lower_at(t);
        CHECK(w <= cap * (1 + 1e-6) + 1e-15);
        CHECK(w >= cap * (1 - 1e-6) - 1e-15);
        CHECK(b.lower_at(t) <= std::acos(0.5L + t));
        CHECK(b.upper_at(t) >= std::acos(0.5L + t));
    }
}

TEST_CASE("every base function encloses across its domain") {
    struct Range { BaseFunction f; double lo, hi; };
    const Range ranges[] = {
        {BaseFunction::Sin, kT + 1e-3, M_PI / 2 - kT - 1e-3},
        {BaseFunction::Cos, kT + 1e-3, M_PI / 2 - kT - 1e-3},
        {BaseFunction::Arccos, kT + 1e-3, 0.85 - kT - 1e-3},
        {BaseFunction::Reciprocal, 0.4 + kT + 1e-3, 5.0},
        {BaseFunction::ReciprocalTight, 1.2 + kT + 1e-3, 5.0},
        {BaseFunction::Sqrt, 1.5 + kT + 1e-3, 5.0},
    };
    std::mt19937_64 g(3);
    for (const auto& r : ranges) {
        std::uniform_real_distribution<double> u(r.lo, r.hi);
        for (int k = 0; k < 20; ++k) {
            double c = u(g);
            INFO(to_string(r.f), " c=", c);
            REQUIRE(encloses(base_bound(r.f, c), base_fn(r.f, c)));
        }
    }
}

TEST_CASE("base functions reject constants outside their domain") {
    CHECK_THROWS_AS(base_bound(BaseFunction::Sqrt, 1.0), DomainConstraintViolated);
    CHECK_THROWS_AS(base_bound(BaseFunction::Arccos, 0.9), DomainConstraintViolated);
    CHECK_THROWS_AS(base_bound(BaseFunction::Sin, 1.6), DomainConstraintViolated);
    CHECK_THROWS_AS(base_bound(BaseFunction::ReciprocalTight, 1.0), DomainConstraintViolated);
    CHECK_THROWS_AS(base_bound(BaseFunction::Reciprocal, 0.3), DomainConstraintViolated);
}

TEST_CASE("compose") {
    PolyBound k = compose(BaseFunction::Reciprocal, PolyBound::constant(Interval(1.3)));
    CHECK(k.lower_at(0.01) <= 1 / 1.3L);
    CHECK(k.upper_at(0.01) >= 1 / 1.3L);

    CHECK(encloses(compose(BaseFunction::Sin, PolyBound::affine(Interval(0.7), Interval(2.0))),
                   [](long double t) { return std::sin(0.7L + 2 * t); }));
    // Decreasing outer: lower and upper trade places.
    PolyBound inner = PolyBound::affine(Interval(0.5), Interval(-1.5));
    CHECK(encloses(compose(BaseFunction::Arccos, inner), [](long double t) { return std::acos(0.5L - 1.5L * t); }));
}

TEST_CASE("compose refuses unverified ranges") {
    CHECK_THROWS_AS(compose(BaseFunction::Arccos, PolyBound::affine(Interval(0.9), Interval(0.0))),
                    RangeConditionUnverifiable);
    // Already below the sqrt domain at t = 0.
    CHECK_THROWS_AS(compose(BaseFunction::Sqrt, PolyBound::affine(Interval(1.0), Interval(10.0))),
                    RangeConditionUnverifiable);
    CHECK_THROWS_AS(compose(BaseFunction::Sin, PolyBound::affine(Interval(1.5), Interval(3.0))),
                    RangeConditionUnverifiable);
}

TEST_CASE("arithmetic") {
    PolyBound a = compose(BaseFunction::Sin, PolyBound::affine(Interval(0.7), Interval(2.0)));
    CHECK(encloses(a + (-a), [](long double) { return 0.0L; }));
    CHECK(encloses(a - a, [](long double) { return 0.0L; }));

    PolyBound c = PolyBound::constant(Interval(2, 3)) * PolyBound::constant(Interval(4, 5));
    CHECK(c.lower_at(0) <= 8);
    CHECK(c.upper_at(0) >= 15);
    CHECK(c.lower_at(0.02) <= 8);

    CHECK(encloses(PolyBound::affine(Interval(2.0), Interval(1.0)) * PolyBound::affine(Interval(3.0), Interval(-1.0)),
                   [](long double t) { return (2 + t) * (3 - t); }));
    CHECK_THROWS_AS(PolyBound::affine(Interval(-0.01), Interval(1.0)) * PolyBound::constant(Interval(1.0)),
                    NegativityUnderMul);
    CHECK(encloses(scale(Interval(3.0), a), [](long double t) { return 3 * std::sin(0.7L + 2 * t); }));
}

TEST_CASE("random products keep containment") {
    std::mt19937_64 g(5);
    std::uniform_real_distribution<double> us(0.2, 1.3), ur(0.6, 3.0), ud(-3.0, 3.0);
    for (int k = 0; k < 50; ++k) {
        double c1 = us(g), c2 = ur(g), s1 = ud(g), s2 = ud(g);
        PolyBound a = compose(BaseFunction::Sin, PolyBound::affine(Interval(c1), Interval(s1)));
        PolyBound b = compose(BaseFunction::Reciprocal, PolyBound::affine(Interval(c2), Interval(s2)));
        Fn f = [=](long double t) { return std::sin(c1 + s1 * t) / (c2 + s2 * t); };
        REQUIRE(encloses(a * b, f));
        REQUIRE(encloses(a * b * a, [=](long double t) { return f(t) * std::sin(c1 + s1 * t); }));
    }
}

TEST_CASE("reduce_degree") {
    std::vector<Interval> c(8, Interval(0.0));
    c[7] = Interval(1.0);
    Poly r = reduce_degree(Poly(c), 6);
    CHECK(r.degree() <= 6);
    CHECK(r.coeff(6).contains(Interval(-1.0 / 30, 1.0 / 30)));
    CHECK(r.coeff(6).hi() < 1.0 / 30 * (1 + 1e-12));

    Poly q({Interval(1.0), Interval(2.0), Interval(-3.0)});
    Poly same = reduce_degree(q, 6);
    CHECK(same.degree() == 2);
    for (int k = 0; k <= 2; ++k) CHECK(same.coeff(k).contains(q.coeff(k)));

    std::mt19937_64 g(9);
    std::uniform_real_distribution<double> u(-5, 5);
    for (int k = 0; k < 200; ++k) {
        std::vector<Interval> p(13);
        for (auto& v : p) v = Interval(u(g));
        Poly big(p);
        for (int target : {2, 6}) {
            Poly red = reduce_degree(big, target);
            REQUIRE(red.degree() <= target);
            for (int i = 0; i < 50; ++i) {
                double t = -kT + 2 * kT * i / 49;
                Interval v = big.eval(Interval(t));
                Interval w = red.eval(Interval(t));
                REQUIRE(w.lo() <= v.hi());
                REQUIRE(w.hi() >= v.lo());
                REQUIRE(w.contains(v.mid()));
            }
        }
    }
}

TEST_CASE("quadratic_range") {
    Interval r = quadratic_range(Poly({Interval(0.0), Interval(0.0), Interval(1.0)}));
    CHECK(r.lo() <= 0);
    CHECK(r.lo() > -1e-15);
    CHECK(r.hi() >= 1.0 / 900);
    CHECK(r.hi() < 1.0 / 900 + 1e-15);
    Interval lin = quadratic_range(Poly({Interval(1.0), Interval(3.0)}));
    CHECK(lin.contains(Interval(0.9, 1.1)));
}

TEST_CASE("feasible sets") {
    auto pos = quadratic_feasible_set(Poly({Interval(0.0), Interval(1.0)}));
    REQUIRE(pos.size() == 1);
    CHECK(pos[0].lo() <= 1e-300);
    CHECK(pos[0].lo() > -1e-15);
    CHECK(pos[0].hi() >= kT);

    auto sym = quadratic_feasible_set(Poly({Interval(1e-4), Interval(0.0), Interval(-1.0)}));
    REQUIRE(sym.size() == 1);
    CHECK(std::fabs(sym[0].lo() + 0.01) < 1e-12);
    CHECK(std::fabs(sym[0].hi() - 0.01) < 1e-12);
    CHECK(sym[0].lo() <= -0.01);
    CHECK(sym[0].hi() >= 0.01);

    // t^2 - 1e-4 >= 0 on two pieces.
    auto two = quadratic_feasible_set(Poly({Interval(-1e-4), Interval(0.0), Interval(1.0)}));
    REQUIRE(two.size() == 2);
    CHECK(two[0].lo() <= -kT);
    CHECK(two[1].hi() >= kT);

    CHECK(quadratic_feasible_set(Poly({Interval(-1.0)})).empty());
    auto all = quadratic_feasible_set(Poly({Interval(1.0)}));
    REQUIRE(all.size() == 1);
    CHECK(all[0].contains(poly_domain()));
}

TEST_CASE("the case 4 pipeline encloses its chain") {
    Case4Bounds b = case4_bounds();
    for (int i = 0; i < 1000; ++i) {
        double t = -kT + 2 * kT * i / 999;
        Case4Point p = case4_point(t);
        INFO("t=", t);
        REQUIRE(b.r.lower_at(t) <= p.r.hi());
        REQUIRE(b.r.upper_at(t) >= p.r.lo());
        REQUIRE(b.s.lower_at(t) <= p.s.hi());
        REQUIRE(b.s.upper_at(t) >= p.s.lo());
        for (const PolyBound* pb : {&b.r, &b.s, &b.x, &b.y}) REQUIRE(pb->lower_at(t) <= pb->upper_at(t));
    }
}
