#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <string>

#include "mdm/cases.hpp"
#include "mdm/error.hpp"
#include "mdm/scene.hpp"
#include "mdm/steiner.hpp"
#include "oracle.hpp"

using namespace mdm;

namespace {

long double alpha_of_t(long double t) { return (t + std::asin(1 / (2 * std::sin(t)))) / 2; }

} // namespace

TEST_CASE("case 1") {
    CaseReport r = case1_reference();
    CHECK(r.verdict == Verdict::Reference);
    Interval L0 = r.value("L0");
    CHECK(L0.contains(9.647504));
    CHECK(L0.lo() > 9.647496);
    CHECK(L0.width() < 1e-4);
    CHECK(std::fabs(L0.mid() - 9.647504) < 1e-5);
    Interval ex = r.value("L0_exact");
    CHECK(ex.width() < 1e-12);
    CHECK(L0.contains(ex));
    // Recomposition and the oracle.
    CHECK((r.value("C") + r.value("VQ")).overlaps(ex));
    long double o = oracle::total_length({std::sqrt(2.0L), std::sqrt(2.0L), 11 * oracle::kPi / 24,
                                          oracle::kPi / 4, oracle::kPi / 4, oracle::kPi / 4});
    CHECK(std::fabs(ex.mid() - static_cast<double>(o)) < 1e-9);
    CHECK(r.value("Qx").contains(1 / std::sqrt(2.0)));
    CHECK(r.value("Qy").contains(1 / std::sqrt(2.0)));
    CHECK(r.value("angle_W1").contains(11 * M_PI / 24 + M_PI / 12));
    CHECK_THROWS_AS(r.value("nope"), std::out_of_range);
}

TEST_CASE("case 2") {
    CaseReport r = case2_eliminate();
    CHECK(r.verdict == Verdict::Eliminated);
    Interval a = r.value("alpha");
    CHECK(std::floor(a.lo() * 1000) == 1354);
    CHECK(std::floor(a.hi() * 1000) == 1354);
    CHECK(a.width() < 1e-12);
    Interval b = r.value("alpha0_minus");
    CHECK(b.contains(static_cast<double>(11 * oracle::kPi / 24 - 1.0L / 30)));
    CHECK(std::fabs(b.mid() - 1.40656) < 1e-5);
    CHECK(a.hi() < b.lo());
    CHECK(r.value("min_dalpha_dt").lo() > 0);
    // d alpha / dt at pi/2 by central differences.
    long double h = 1e-6L, t = oracle::kPi / 2;
    long double d = (alpha_of_t(t + h) - alpha_of_t(t - h)) / (2 * h);
    CHECK(d > 0.4L);
    CHECK(r.value("alpha_t_max").contains(static_cast<double>(alpha_of_t(2 * oracle::kPi / 3))));
}

TEST_CASE("case 3a") {
    CaseReport r = case3a_verify_optimal();
    CHECK(r.verdict == Verdict::Optimal);
    CHECK(r.value("length").hi() < 9.647492);
    for (const char* k : {"|yW2 W2|", "|yW2 Q2|", "|A1 Q1|", "|Q1 yW1|", "|W1 yW1|"}) {
        INFO(k);
        CHECK(r.value(k).lo() > 0.999999);
        CHECK(r.value(k).hi() < 1.0);
    }
    Case3aLayout c = case3a_layout();
    CHECK(c.W1.x.contains(1.545358));
    CHECK(c.W1.y.contains(0.991394));
    Interval kp = r.value("constant_point");
    CHECK(kp.lo() > 8.47397);
    CHECK(kp.hi() < 8.47399);
    Interval k = r.value("constant");
    CHECK(k.contains(8.473981));
    CHECK(k.width() < 1e-4);
    // The six-decimal layout recomputed from its parameters through the scene.
    CHECK(total_length_L(case3a_config(), ChainPolicy::Extended).hi() < 9.647496);
}

TEST_CASE("cases 3b and 5") {
    CaseReport b = case3b_eliminate(), f = case5_eliminate();
    CHECK(b.verdict == Verdict::Eliminated);
    CHECK(f.verdict == Verdict::Eliminated);
    Interval v = b.value("arccos_2cos2");
    CHECK(v.lo() > 4 * M_PI / 9);
    CHECK(b.value("4pi/9").hi() < v.lo());
    CHECK(f.value("pi/4").hi() < f.value("arccos_2cos2").lo());
    double a = 11 * M_PI / 24;
    double at = std::acos(2 * std::cos(a) * std::cos(a));
    CHECK(std::fabs(at - 1.5367) < 1e-4);
    CHECK(v.contains(at));
    CHECK(4 * M_PI / 9 > M_PI / 4);
}

TEST_CASE("case 4") {
    CaseReport r = case4_eliminate();
    CHECK(r.verdict == Verdict::Eliminated);
    Interval si = r.value("set_i_hull"), sii = r.value("set_ii_hull");
    CHECK_FALSE(si.overlaps(sii));
    CHECK(si.lo() >= -1.0 / 30 - 1e-12);
    CHECK(si.hi() <= -0.004 + 1e-3);
    CHECK(sii.lo() >= -0.0008 - 2e-3);
    CHECK(sii.hi() <= 1.0 / 30 + 1e-12);
    REQUIRE(r.notes.size() >= 2);
    CHECK(r.notes[0].rfind("set(i)=", 0) == 0);

    // Direct evaluation agrees with the sets: r > 0 at the left end, s near 0 to the right.
    CHECK(case4_point(-1.0 / 30).r.lo() > 0);
    CHECK(case4_point(1.0 / 30).r.hi() < 0);
}

TEST_CASE("case 4 chain by plain geometry") {
    // W1 S W2 equilateral and S - Q2 recomputed in long double.
    for (double t : {-0.03, -0.01, 0.0, 0.02}) {
        Case4Point p = case4_point(t);
        Interval side = dist(p.W1, p.W2);
        CHECK(dist(p.S, p.W1).overlaps(side));
        CHECK(dist(p.S, p.W2).overlaps(side));
    }
}

TEST_CASE("theorem constant and total length") {
    Interval tl = theorem_total_length(16, 9, 0.2);
    CHECK(tl.contains(50 - 8.473981 * 0.2));
    CHECK(tl.width() < 1e-4 * 0.2 + 1e-12);
    Interval d1 = Interval(50.0) - tl;
    Interval d2 = Interval(50.0) - theorem_total_length(16, 9, 0.4);
    CHECK(std::fabs(d2.mid() - 2 * d1.mid()) < 1e-12);
    CHECK_THROWS_AS(theorem_total_length(16, 9, 0.5), RTooLarge);
    CHECK_NOTHROW(theorem_total_length(16, 9, 0.45));
    CHECK_THROWS_AS(theorem_total_length(16, 9, -1), RTooLarge);
}

TEST_CASE("strict ordering") {
    double l3a = case3a_verify_optimal().value("length").hi();
    double l0 = case1_reference().value("L0").lo();
    CHECK(l3a < 9.647492);
    CHECK(9.647492 < 9.647496);
    CHECK(9.647496 < l0);
}

TEST_CASE("summaries list every value") {
    for (const CaseReport& r : {case1_reference(), case2_eliminate(), case4_eliminate()}) {
        for (const auto& kv : r.values) CHECK(r.summary().find(kv.first + "=[") != std::string::npos);
        for (const auto& n : r.notes) CHECK(r.summary().find(n) != std::string::npos);
    }
}
