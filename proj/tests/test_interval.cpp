#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>
#include <sstream>

#include "mdm/interval.hpp"

using namespace mdm;

namespace {

double ulp(double v) { return std::nextafter(std::fabs(v), INFINITY) - std::fabs(v); }

// Exact value of a long double as seen through double endpoints: a <= v <= b
// must hold for the true value, and long double carries 11 extra bits.
bool encloses(const Interval& r, long double v) {
    return static_cast<long double>(r.lo()) <= v && v <= static_cast<long double>(r.hi());
}

Interval random_interval(std::mt19937_64& g, double scale) {
    std::uniform_real_distribution<double> u(-scale, scale);
    std::uniform_real_distribution<double> w(0.0, 1.0);
    double a = u(g);
    double width = w(g) < 0.2 ? 0.0 : std::ldexp(w(g), -static_cast<int>(w(g) * 20)) * scale;
    return {a, a + width};
}

double sample(std::mt19937_64& g, const Interval& x) {
    std::uniform_real_distribution<double> u(0.0, 1.0);
    double t = u(g);
    double v = x.lo() + t * (x.hi() - x.lo());
    return std::fmin(std::fmax(v, x.lo()), x.hi());
}

} // namespace

TEST_CASE("basic arithmetic examples") {
    Interval s = Interval(1, 2) + Interval(3, 4);
    CHECK(s.lo() == 4);
    CHECK(s.hi() == 6);
    Interval p = Interval(-1, 1) * Interval(-1, 1);
    CHECK(p.lo() == -1);
    CHECK(p.hi() == 1);
    Interval q = Interval(1.0) / Interval(3.0);
    CHECK(encloses(q, 1.0L / 3.0L));
    CHECK(q.width() <= 2 * ulp(1.0 / 3.0));
    CHECK_THROWS_AS(Interval(1.0) / Interval(-1, 1), DivisionByIntervalContainingZero);
    CHECK_THROWS_AS(Interval(2, 1), DomainViolation);
    CHECK_THROWS_AS(Interval(NAN, 1), DomainViolation);
}

TEST_CASE("elementary functions examples") {
    Interval z = sin(Interval(0.0));
    CHECK(z.lo() == 0);
    CHECK(z.hi() == 0);
    Interval c = cos(Interval(0.0, pi().hi()));
    CHECK(c.lo() == -1);
    CHECK(c.hi() == 1);
    Interval a = acos(Interval(0.5));
    CHECK(encloses(a, 1.047197551196597746154214461093167628L));
    CHECK(a.width() <= 4 * ulp(a.mid()));
    CHECK_THROWS_AS(sqrt(Interval(-1e-300, 1)), DomainViolation);
    CHECK_THROWS_AS(acos(Interval(0.5, 1.0000000001)), DomainViolation);
    CHECK_THROWS_AS(asin(Interval(-1.5, 0)), DomainViolation);
    CHECK_THROWS_AS(sin(Interval(2e4)), DomainViolation);
    CHECK(abs(Interval(-3, 2)).lo() == 0);
    CHECK(abs(Interval(-3, 2)).hi() == 3);
}

TEST_CASE("constants") {
    CHECK(encloses(pi(), 3.141592653589793238462643383279502884L));
    CHECK(pi().width() <= 2 * ulp(3.14));
    CHECK((sqrt3() * sqrt3()).contains(3.0));
    CHECK(encloses(sqrt6(), 2.449489742783178098197284074705891392L));
    CHECK(sqrt6().width() <= 2 * ulp(2.4));
    CHECK(encloses(sqrt2(), 1.414213562373095048801688724209698079L));
}

TEST_CASE("decimal strings are enclosed") {
    Interval v = from_decimal("0.1");
    CHECK(encloses(v, 0.1L));
    CHECK(v.width() <= 2 * ulp(0.1));
    CHECK(from_decimal("1.545358").contains(1.545358));
}

TEST_CASE("sampled containment of binary operations") {
    std::mt19937_64 g(7);
    long checked = 0;
    for (int i = 0; i < 100000; ++i) {
        Interval a = random_interval(g, 10.0), b = random_interval(g, 10.0);
        Interval sum = a + b, diff = a - b, prod = a * b;
        bool can_divide = !b.contains(0.0);
        Interval quot = can_divide ? a / b : Interval(0.0);
        bool ok = true;
        for (int j = 0; j < 1000; ++j) {
            long double x = sample(g, a), y = sample(g, b);
            ok &= encloses(sum, x + y) && encloses(diff, x - y) && encloses(prod, x * y);
            if (can_divide) ok &= encloses(quot, x / y);
            ++checked;
        }
        REQUIRE(ok);
    }
    CHECK(checked == 100000000);
}

TEST_CASE("sampled containment of unary functions") {
    std::mt19937_64 g(11);
    for (int i = 0; i < 2000; ++i) {
        Interval a = random_interval(g, 8.0);
        Interval s = sin(a), c = cos(a), q = sqr(a);
        Interval unit = a.overlaps(Interval(-1, 1)) ? intersect(a, Interval(-1, 1)) : Interval(0.0);
        Interval as = asin(unit), ac = acos(unit);
        Interval nonneg = Interval(std::fabs(a.lo()), std::fabs(a.lo()) + a.width());
        Interval r = sqrt(nonneg);
        for (int j = 0; j < 50; ++j) {
            long double x = sample(g, a);
            REQUIRE(encloses(s, std::sin(x)));
            REQUIRE(encloses(c, std::cos(x)));
            REQUIRE(encloses(q, x * x));
            long double u = sample(g, unit);
            REQUIRE(encloses(as, std::asin(u)));
            REQUIRE(encloses(ac, std::acos(u)));
            REQUIRE(encloses(r, std::sqrt(static_cast<long double>(sample(g, nonneg)))));
        }
    }
}

TEST_CASE("interior extrema of sin and cos") {
    Interval around_half_pi(1.5, 1.6);
    CHECK(sin(around_half_pi).hi() == 1.0);
    CHECK(cos(Interval(3.1, 3.2)).lo() == -1.0);
    CHECK(sin(Interval(-1.6, -1.5)).lo() == -1.0);
    // A monotone piece stays tight.
    Interval m = sin(Interval(0.1, 0.2));
    CHECK(m.lo() > 0.0998);
    CHECK(m.hi() < 0.1987);
}

TEST_CASE("inclusion monotonicity") {
    std::mt19937_64 g(3);
    for (int i = 0; i < 3000; ++i) {
        Interval a = random_interval(g, 4.0), b = random_interval(g, 4.0);
        Interval A = hull(a, random_interval(g, 4.0));
        Interval B = hull(b, random_interval(g, 4.0));
        REQUIRE((a + b).subset_of(A + B));
        REQUIRE((a * b).subset_of(A * B));
        REQUIRE((a - b).subset_of(A - B));
        REQUIRE(sin(a).subset_of(sin(A)));
        REQUIRE(cos(b).subset_of(cos(B)));
        REQUIRE(sqr(a).subset_of(sqr(A)));
        if (!B.contains(0.0)) REQUIRE((a / b).subset_of(A / B));
    }
}

TEST_CASE("point inputs give near-point results") {
    std::mt19937_64 g(5);
    std::uniform_real_distribution<double> u(-3, 3);
    for (int i = 0; i < 1000; ++i) {
        double x = u(g), y = u(g);
        Interval X(x), Y(y);
        REQUIRE((X + Y).width() <= 2 * ulp(x + y));
        REQUIRE((X * Y).width() <= 2 * ulp(x * y));
        REQUIRE(sin(X).width() <= 4 * ulp(std::sin(x)) + 1e-300);
        REQUIRE(cos(X).width() <= 4 * ulp(std::cos(x)) + 1e-300);
        REQUIRE(sin(X).contains(std::sin(x)));
    }
}

TEST_CASE("helpers") {
    CHECK(hull(Interval(1, 2), Interval(4, 5)).hi() == 5);
    CHECK(intersect(Interval(1, 3), Interval(2, 5)).lo() == 2);
    CHECK_THROWS_AS(intersect(Interval(1, 2), Interval(3, 4)), DomainViolation);
    CHECK(min(Interval(1, 4), Interval(2, 3)).hi() == 3);
    CHECK(max(Interval(1, 4), Interval(2, 3)).lo() == 2);
    CHECK(Interval(-1, 2).mig() == 0);
    CHECK(Interval(-3, 2).mag() == 3);
    std::ostringstream os;
    os << Interval(0.5, 1.25);
    CHECK(os.str() == "[0.5, 1.25]");
}
