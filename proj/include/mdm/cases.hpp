#pragma once

#include <string>
#include <utility>
#include <vector>

#include "mdm/interval.hpp"
#include "mdm/point.hpp"
#include "mdm/polybound.hpp"
#include "mdm/scene.hpp"

namespace mdm {

enum class Verdict { Reference, Eliminated, Optimal };

const char* to_string(Verdict v);

struct CaseReport {
    std::string id;
    Verdict verdict = Verdict::Eliminated;
    std::vector<std::pair<std::string, Interval>> values;
    std::vector<std::string> notes;

    // Throws std::out_of_range for unknown keys.
    Interval value(const std::string& key) const;
    void set(const std::string& key, const Interval& v) { values.emplace_back(key, v); }
    std::string summary() const;
};

// Every case throws CertificationFailed (or the more specific error named
// below) when one of its claims cannot be certified.
CaseReport case1_reference();  // EnclosureTooWide
CaseReport case2_eliminate();
CaseReport case3a_verify_optimal();
CaseReport case3b_eliminate();
CaseReport case4_eliminate();  // RangeConditionUnverifiable
CaseReport case5_eliminate();

// Direct evaluation of the case 4 chain at alpha = alpha0 + dt.
struct Case4Point {
    Point W1, W2, S, Q2;
    Interval r;  // |A1Q1| - 1
    Interval s;  // cos(2 beta - 2pi/3) - (S - Q2).(0,1) / |S - Q2|
};
Case4Point case4_point(double dt);

// The polynomial pipeline as functions of dt.
struct Case4Bounds {
    PolyBound r, s, x, y;
};
Case4Bounds case4_bounds();

// The optimal corner configuration to six decimals, one coordinate per field.
struct Case3aLayout {
    Point Z1, W1, V, W2, Z2, Q2, Q1, yW1, yW2;
};
// Those decimals as (nearly) exact points.
Case3aLayout case3a_layout();
// Those decimals widened by half a unit in the last digit.
Case3aLayout case3a_layout_rounded();
// Length of Z1W1, W1V, VW2, W2Z2, VQ2, Q2Q1.
Interval case3a_length(const Case3aLayout& c);
// Parameters recovered from the six-decimal points (Q taken equal to Q1).
ConfigPoint case3a_config();

// 8 (4/sqrt6 + 4) - 4 H + 2 for the corner length H.
Interval theorem_constant(const Interval& corner_length);
// Per - constant * r; RTooLarge unless r <= min(width, height) / 20.
Interval theorem_total_length(double width, double height, double r);

} // namespace mdm
