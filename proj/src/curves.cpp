#include "bigmcg/curves.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

#include "bigmcg/errors.hpp"

namespace bigmcg {

namespace {

const BigInt kZero(0);

BigInt pos(const BigInt& x) { return x > 0 ? x : kZero; }
BigInt neg(const BigInt& x) { return x < 0 ? x : kZero; }

} // namespace

bool MultiCurveCoords::is_empty() const {
    for (const BigInt& c : coords)
        if (c != 0) return false;
    return true;
}

MultiCurveCoords empty_multicurve(int n) {
    if (n < 3) throw validity_error("need at least 3 punctures");
    MultiCurveCoords out;
    out.n = n;
    out.coords.assign(2 * n - 4, kZero);
    return out;
}

BraidWord free_reduce(const BraidWord& w) {
    BraidWord out;
    for (int letter : w.letters) {
        if (letter == 0) throw validity_error("zero braid letter");
        if (!out.letters.empty() && out.letters.back() == -letter)
            out.letters.pop_back();
        else
            out.letters.push_back(letter);
    }
    return out;
}

BraidWord inverse(const BraidWord& w) {
    BraidWord out;
    for (auto it = w.letters.rbegin(); it != w.letters.rend(); ++it)
        out.letters.push_back(-*it);
    return out;
}

BraidWord concat(const BraidWord& x, const BraidWord& y) {
    BraidWord out = x;
    out.letters.insert(out.letters.end(), y.letters.begin(), y.letters.end());
    return out;
}

void validate_round(const RoundCurve& c, int n, bool allow_boundary) {
    if (c.first < 1 || c.last > n || c.first >= c.last)
        throw validity_error("round curve interval out of range");
    if (!allow_boundary && c.first == 1 && c.last == n)
        throw validity_error("boundary-parallel round curve");
}

MultiCurveCoords round_coords(const RoundCurve& c, int n) {
    validate_round(c, n, /*allow_boundary=*/true);
    MultiCurveCoords out = empty_multicurve(n);
    // wall crossings: |W_k| = 2 exactly for first <= k <= last-1
    auto wall = [&](int k) {
        return (k >= c.first && k <= c.last - 1) ? BigInt(2) : kZero;
    };
    for (int i = 1; i <= n - 2; ++i) out.b(i) = (wall(i) - wall(i + 1)) / 2;
    return out;
}

BraidWord round_twist_word(const RoundCurve& c, int n) {
    validate_round(c, n, /*allow_boundary=*/true);
    BraidWord w;
    const int strands = c.last - c.first + 1;
    for (int rep = 0; rep < strands; ++rep)
        for (int k = c.first; k < c.last; ++k) w.letters.push_back(k);
    return w;
}

// ---------------------------------------------------------------- action

namespace {

// Positive half-twist at the left end of the row: only (a_1, b_1) changes.
void twist_low(BigInt& a, BigInt& b) {
    BigInt na = neg(a) + neg(b) + std::min(pos(a), pos(b));
    BigInt nb = BigInt(pos(b) - a);
    a = na;
    b = nb;
}

// Positive interior half-twist swapping punctures i, i+1: only the pairs
// (a_{i-1}, b_{i-1}) and (a_i, b_i) change.
void twist_interior(BigInt& a1, BigInt& b1, BigInt& a2, BigInt& b2) {
    BigInt c = a1 - a2;
    BigInt w = std::max(BigInt(b1 - b2), BigInt(c + pos(b1) - neg(b2)));
    BigInt na1 = b1 + a2 + std::max(kZero, std::max(c, BigInt(c - b1)));
    BigInt na2 = a1 + b2 - std::max(kZero, std::max(c, BigInt(c + b2)));
    a1 = na1;
    b1 = b1 - w;
    a2 = na2;
    b2 = b2 + w;
}

// Reflection across the puncture axis: reverses every half-twist, fixes b.
void flip_vertical(MultiCurveCoords& L) {
    for (int i = 1; i <= L.n - 2; ++i) L.a(i) = -L.a(i);
}

// Left-right reflection of the disk: reverses puncture order and
// orientation, so it conjugates sigma_i to sigma_{n-i}^{-1}.
void flip_horizontal(MultiCurveCoords& L) {
    const int m = L.n - 2;
    for (int i = 1; 2 * i <= m; ++i) {
        std::swap(L.a(i), L.a(m + 1 - i));
        std::swap(L.b(i), L.b(m + 1 - i));
    }
    for (int i = 1; i <= m; ++i) L.b(i) = -L.b(i);
}

MultiCurveCoords act_positive(MultiCurveCoords L, int i) {
    if (i == 1) {
        twist_low(L.a(1), L.b(1));
    } else if (i == L.n - 1) {
        // conjugate of the inverse low twist by the left-right reflection
        flip_horizontal(L);
        flip_vertical(L);
        twist_low(L.a(1), L.b(1));
        flip_vertical(L);
        flip_horizontal(L);
    } else {
        twist_interior(L.a(i - 1), L.b(i - 1), L.a(i), L.b(i));
    }
    return L;
}

} // namespace

// One half-twist on the coordinate vector; integer piecewise-linear. The
// update rules are local to the two affected coordinate pairs and are
// certified against the polyline oracle by the test suite (braid relations,
// inverse cancellation, twist growth, corpus agreement).
MultiCurveCoords act_generator(const MultiCurveCoords& L, int letter) {
    if (L.n < 3 || static_cast<int>(L.coords.size()) != 2 * L.n - 4)
        throw validity_error("malformed coordinate vector");
    int i = letter > 0 ? letter : -letter;
    if (i < 1 || i >= L.n) throw validity_error("generator index out of range");
    if (letter > 0) return act_positive(L, i);
    MultiCurveCoords out = L;
    flip_vertical(out);
    out = act_positive(std::move(out), i);
    flip_vertical(out);
    return out;
}

MultiCurveCoords act_word(const MultiCurveCoords& L, const BraidWord& w) {
    MultiCurveCoords cur = L;
    for (int letter : w.letters) cur = act_generator(cur, letter);
    return cur;
}

BigInt intersection_with_round(const MultiCurveCoords& L,
                               const RoundCurve& c) {
    validate_round(c, L.n, /*allow_boundary=*/true);
    if (c.first == 1 && c.last == L.n) return kZero;  // boundary-parallel
    if (L.is_empty()) return kZero;
    // A full twist about c moves L by i(L,c) parallel copies of c per turn;
    // once the drift stabilizes, the per-turn increment is i(L,c) * c.
    MultiCurveCoords cv = round_coords(c, L.n);
    BraidWord tw = round_twist_word(c, L.n);
    MultiCurveCoords prev = act_word(L, tw);
    MultiCurveCoords curr = act_word(prev, tw);
    std::vector<BigInt> delta_prev(2 * L.n - 4), delta_curr(2 * L.n - 4);
    for (std::size_t k = 0; k < delta_prev.size(); ++k)
        delta_prev[k] = prev.coords[k] - L.coords[k];
    for (int guard = 0; guard < 16; ++guard) {
        for (std::size_t k = 0; k < delta_curr.size(); ++k)
            delta_curr[k] = curr.coords[k] - prev.coords[k];
        if (delta_curr == delta_prev) break;
        delta_prev = delta_curr;
        prev = curr;
        curr = act_word(curr, tw);
    }
    // delta = +/- i(L,c) * coords(c); read the ratio off a nonzero entry
    BigInt result = 0;
    bool found = false;
    for (std::size_t k = 0; k < delta_curr.size(); ++k) {
        if (cv.coords[k] == 0) {
            if (delta_curr[k] != 0)
                throw resource_error("twist drift did not stabilize");
            continue;
        }
        BigInt q = delta_curr[k] / cv.coords[k];
        BigInt r = delta_curr[k] % cv.coords[k];
        if (r != 0) throw resource_error("twist drift not proportional");
        BigInt aq = q < 0 ? -q : q;
        if (!found) {
            result = aq;
            found = true;
        } else if (aq != result) {
            throw resource_error("twist drift inconsistent");
        }
    }
    return found ? result : kZero;
}

// ------------------------------------------------------------- text forms

std::string coords_to_text(const MultiCurveCoords& L) {
    std::string a = "[", b = "[";
    for (int i = 1; i <= L.n - 2; ++i) {
        if (i > 1) {
            a += ",";
            b += ",";
        }
        a += L.a(i).str();
        b += L.b(i).str();
    }
    return "n=" + std::to_string(L.n) + "; a=" + a + "]; b=" + b + "]";
}

namespace {

std::vector<BigInt> parse_int_list(const std::string& s, const char* what) {
    std::vector<BigInt> out;
    std::string cur;
    for (char ch : s) {
        if (ch == ',') {
            if (cur.empty()) throw syntax_error(std::string("empty entry in ") + what, 1, 1);
            out.emplace_back(cur);
            cur.clear();
        } else if (ch == '-' || std::isdigit(static_cast<unsigned char>(ch))) {
            cur += ch;
        } else if (!std::isspace(static_cast<unsigned char>(ch))) {
            throw syntax_error(std::string("bad character in ") + what, 1, 1);
        }
    }
    if (!cur.empty()) out.emplace_back(cur);
    return out;
}

} // namespace

MultiCurveCoords coords_from_text(const std::string& text) {
    // format: n=4; a=[..]; b=[..]
    auto find_field = [&](const std::string& key) -> std::string {
        std::size_t at = text.find(key + "=");
        if (at == std::string::npos)
            throw syntax_error("missing field " + key, 1, 1);
        std::size_t start = at + key.size() + 1;
        std::size_t end = text.find(';', start);
        if (end == std::string::npos) end = text.size();
        return text.substr(start, end - start);
    };
    int n;
    try {
        n = std::stoi(find_field("n"));
    } catch (const std::exception&) {
        throw syntax_error("bad puncture count", 1, 1);
    }
    if (n < 3 || n > 64) throw validity_error("puncture count out of range");
    auto strip = [](std::string s) {
        std::size_t l = s.find('[');
        std::size_t r = s.rfind(']');
        if (l == std::string::npos || r == std::string::npos || r < l)
            throw syntax_error("expected [..] list", 1, 1);
        return s.substr(l + 1, r - l - 1);
    };
    std::vector<BigInt> as = parse_int_list(strip(find_field("a")), "a");
    std::vector<BigInt> bs = parse_int_list(strip(find_field("b")), "b");
    if (static_cast<int>(as.size()) != n - 2 ||
        static_cast<int>(bs.size()) != n - 2)
        throw validity_error("coordinate list length must be n-2");
    MultiCurveCoords out = empty_multicurve(n);
    for (int i = 1; i <= n - 2; ++i) {
        out.a(i) = as[i - 1];
        out.b(i) = bs[i - 1];
    }
    return out;
}

std::string word_to_text(const BraidWord& w) {
    std::string s;
    for (std::size_t i = 0; i < w.letters.size(); ++i) {
        int l = w.letters[i];
        if (i) s += " ";
        s += "s" + std::to_string(l > 0 ? l : -l);
        if (l < 0) s += "^-1";
    }
    return s;
}

BraidWord word_from_text(const std::string& text) {
    BraidWord w;
    std::istringstream in(text);
    std::string tok;
    while (in >> tok) {
        bool inv = false;
        if (tok.size() > 3 && tok.substr(tok.size() - 3) == "^-1") {
            inv = true;
            tok = tok.substr(0, tok.size() - 3);
        }
        if (tok.size() < 2 || tok[0] != 's')
            throw syntax_error("bad braid letter '" + tok + "'", 1, 1);
        int idx;
        try {
            idx = std::stoi(tok.substr(1));
        } catch (const std::exception&) {
            throw syntax_error("bad braid letter '" + tok + "'", 1, 1);
        }
        if (idx < 1) throw syntax_error("bad braid index", 1, 1);
        w.letters.push_back(inv ? -idx : idx);
    }
    return w;
}

} // namespace bigmcg
