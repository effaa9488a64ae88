#pragma once

#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace bigmcg {

using BigInt = boost::multiprecision::cpp_int;

// Coordinates of an integral lamination (multicurve) on the disk with n
// punctures in a row: (a_1, b_1, ..., a_{n-2}, b_{n-2}).
//
// With the punctures on a horizontal axis, the reference system consists of
// the vertical walls W_k between punctures k and k+1 and, at each puncture j,
// the vertical rays r_j (up) and s_j (down). For a multicurve in minimal
// position,
//   a_i = (|s_{i+1}| - |r_{i+1}|) / 2,   b_i = (|W_i| - |W_{i+1}|) / 2.
// The zero vector is the empty multicurve; vectors are canonical on
// essential multicurves and additive over disjoint union.
struct MultiCurveCoords {
    int n = 0;
    std::vector<BigInt> coords;  // size 2n-4

    BigInt& a(int i) { return coords[2 * (i - 1)]; }          // 1 <= i <= n-2
    BigInt& b(int i) { return coords[2 * (i - 1) + 1]; }
    const BigInt& a(int i) const { return coords[2 * (i - 1)]; }
    const BigInt& b(int i) const { return coords[2 * (i - 1) + 1]; }

    bool operator==(const MultiCurveCoords& o) const {
        return n == o.n && coords == o.coords;
    }
    bool is_empty() const;
};

MultiCurveCoords empty_multicurve(int n);

// Braid word: letters +i for sigma_i, -i for its inverse, 1 <= i <= n-1.
struct BraidWord {
    std::vector<int> letters;

    bool operator==(const BraidWord& o) const { return letters == o.letters; }
};

BraidWord free_reduce(const BraidWord& w);
BraidWord inverse(const BraidWord& w);
BraidWord concat(const BraidWord& x, const BraidWord& y);

// Round curve: convex circle enclosing the consecutive punctures
// first..last (1-based). Essential iff it encloses >= 2 punctures and it is
// not the boundary-parallel (1, n) curve.
struct RoundCurve {
    int first = 1;
    int last = 2;
};

void validate_round(const RoundCurve& c, int n, bool allow_boundary = true);

// One half-twist sigma_i (or its inverse for negative letters) acting on
// coordinates; integer piecewise-linear in the vector.
MultiCurveCoords act_generator(const MultiCurveCoords& L, int letter);
MultiCurveCoords act_word(const MultiCurveCoords& L, const BraidWord& w);

// Coordinates of a round curve.
MultiCurveCoords round_coords(const RoundCurve& c, int n);

// The full (positive) Dehn twist about a round curve as a braid word:
// the square of the half-twist on the enclosed strands.
BraidWord round_twist_word(const RoundCurve& c, int n);

// Geometric intersection number of the multicurve with a round curve.
BigInt intersection_with_round(const MultiCurveCoords& L, const RoundCurve& c);

// --- plain-text formats ---

// "n=4; a=[0,0]; b=[1,0]"
std::string coords_to_text(const MultiCurveCoords& L);
MultiCurveCoords coords_from_text(const std::string& text);

// "s1 s2^-1 s1"
std::string word_to_text(const BraidWord& w);
BraidWord word_from_text(const std::string& text);

} // namespace bigmcg
