#pragma once

#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "bigmcg/curves.hpp"

namespace bigmcg {

using Rational = boost::multiprecision::cpp_rational;

// Independent reference implementation for the braid action: one explicit
// simple closed curve tracked as an exact rational polyline. Each generator
// is applied as a concrete plane homeomorphism supported near the two
// swapped punctures; the curve is then re-read as a reduced sequence of
// crossings with the vertical reference lines (the same lines that define
// MultiCurveCoords) and redrawn through canonical ports.
//
// Oracle scale: n <= 6, word length <= 10 or so.
class OracleCurve {
public:
    struct Point {
        Rational x;
        Rational y;
    };

    // the round curve around punctures c.first..c.last
    static OracleCurve round(int n, const RoundCurve& c);

    int punctures() const { return n_; }

    // Reduced cyclic crossing sequence, canonical up to rotation and
    // reversal. Letters look like "W2", "r1", "s3".
    std::vector<std::string> word() const;
    std::string word_text() const;

    MultiCurveCoords coords() const;
    BigInt intersect_round(const RoundCurve& c) const;

    OracleCurve act_letter(int letter) const;
    OracleCurve act(const BraidWord& w) const;

private:
    OracleCurve(int n, std::vector<Point> pts)
        : n_(n), points_(std::move(pts)) {}

    int n_ = 0;
    std::vector<Point> points_;  // closed polyline, exact coordinates
};

inline OracleCurve oracle_act(const OracleCurve& curve, const BraidWord& w) {
    return curve.act(w);
}

} // namespace bigmcg
