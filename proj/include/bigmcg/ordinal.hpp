#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace bigmcg {

// Ordinal below epsilon_0 in Cantor normal form:
//   omega^e1 * c1 + omega^e2 * c2 + ... with e1 > e2 > ... and ci >= 1.
// The empty term list is 0. Exponents are ordinals themselves; structural
// nesting is capped at kMaxDepth (deeper values raise resource_error).
class Ordinal {
public:
    static constexpr int kMaxDepth = 32;

    struct Term {
        std::vector<Term> exponent;  // term list of the exponent ordinal
        std::uint64_t coefficient = 1;
    };

    Ordinal() = default;

    static Ordinal zero() { return Ordinal(); }
    static Ordinal from_natural(std::uint64_t n);
    static Ordinal omega();
    // omega^e * c (c >= 1).
    static Ordinal omega_power(const Ordinal& e, std::uint64_t c = 1);

    bool is_zero() const { return terms_.empty(); }
    bool is_natural() const;
    // Only valid when is_natural().
    std::uint64_t natural_value() const;

    std::size_t term_count() const { return terms_.size(); }
    Ordinal exponent_at(std::size_t i) const;
    std::uint64_t coefficient_at(std::size_t i) const {
        return terms_[i].coefficient;
    }

    // Total order.
    int compare(const Ordinal& other) const;
    bool operator==(const Ordinal& other) const { return compare(other) == 0; }
    bool operator!=(const Ordinal& other) const { return compare(other) != 0; }
    bool operator<(const Ordinal& other) const { return compare(other) < 0; }
    bool operator<=(const Ordinal& other) const { return compare(other) <= 0; }
    bool operator>(const Ordinal& other) const { return compare(other) > 0; }
    bool operator>=(const Ordinal& other) const { return compare(other) >= 0; }

    // Ordinal addition (not commutative): absorbs the left tail below the
    // right-hand leading exponent.
    Ordinal add(const Ordinal& other) const;
    Ordinal successor() const { return add(from_natural(1)); }
    // Right multiplication by a natural number: this * n.
    Ordinal times_natural(std::uint64_t n) const;

    int depth() const;

    // Text form, e.g. "w^2*3 + w + 1"; "0" for zero.
    std::string to_string() const;

private:
    explicit Ordinal(std::vector<Term> terms) : terms_(std::move(terms)) {}

    void check_depth() const;

    std::vector<Term> terms_;
};

} // namespace bigmcg
