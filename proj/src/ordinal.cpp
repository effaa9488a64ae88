#include "bigmcg/ordinal.hpp"

#include <algorithm>

#include "bigmcg/errors.hpp"

namespace bigmcg {

namespace {

int compare_terms(const std::vector<Ordinal::Term>& a,
                  const std::vector<Ordinal::Term>& b) {
    const std::size_t n = std::min(a.size(), b.size());
    for (std::size_t i = 0; i < n; ++i) {
        int c = compare_terms(a[i].exponent, b[i].exponent);
        if (c != 0) return c;
        if (a[i].coefficient != b[i].coefficient)
            return a[i].coefficient < b[i].coefficient ? -1 : 1;
    }
    if (a.size() != b.size()) return a.size() < b.size() ? -1 : 1;
    return 0;
}

int terms_depth(const std::vector<Ordinal::Term>& ts) {
    int d = 0;
    for (const Ordinal::Term& t : ts)
        d = std::max(d, 1 + terms_depth(t.exponent));
    return d;
}

} // namespace

Ordinal Ordinal::from_natural(std::uint64_t n) {
    Ordinal o;
    if (n > 0) o.terms_.push_back(Term{{}, n});
    return o;
}

Ordinal Ordinal::omega() { return omega_power(from_natural(1), 1); }

Ordinal Ordinal::omega_power(const Ordinal& e, std::uint64_t c) {
    Ordinal o;
    if (c == 0) return o;
    o.terms_.push_back(Term{e.terms_, c});
    o.check_depth();
    return o;
}

bool Ordinal::is_natural() const {
    return terms_.empty() ||
           (terms_.size() == 1 && terms_[0].exponent.empty());
}

std::uint64_t Ordinal::natural_value() const {
    return terms_.empty() ? 0 : terms_[0].coefficient;
}

Ordinal Ordinal::exponent_at(std::size_t i) const {
    return Ordinal(terms_[i].exponent);
}

int Ordinal::compare(const Ordinal& other) const {
    return compare_terms(terms_, other.terms_);
}

Ordinal Ordinal::add(const Ordinal& other) const {
    if (other.is_zero()) return *this;
    Ordinal result;
    const std::vector<Term>& lead = other.terms_[0].exponent;
    // Keep terms of *this with exponent > lead; a term with exponent == lead
    // merges into other's leading coefficient; smaller terms are absorbed.
    for (const Term& t : terms_) {
        int c = compare_terms(t.exponent, lead);
        if (c > 0) {
            result.terms_.push_back(t);
        } else if (c == 0) {
            Term merged = other.terms_[0];
            merged.coefficient += t.coefficient;
            result.terms_.push_back(merged);
            result.terms_.insert(result.terms_.end(), other.terms_.begin() + 1,
                                 other.terms_.end());
            result.check_depth();
            return result;
        } else {
            break;
        }
    }
    result.terms_.insert(result.terms_.end(), other.terms_.begin(),
                         other.terms_.end());
    result.check_depth();
    return result;
}

Ordinal Ordinal::times_natural(std::uint64_t n) const {
    if (n == 0 || is_zero()) return Ordinal();
    if (n == 1) return *this;
    if (is_natural()) return from_natural(natural_value() * n);
    // (w^e*c + tail) * n = w^e*(c*(n-1)) + (w^e*c + tail) for limit-led
    // ordinals; the leading term soaks up the repetitions.
    Ordinal head;
    Term lead = terms_[0];
    lead.coefficient *= (n - 1);
    head.terms_.push_back(lead);
    return head.add(*this);
}

int Ordinal::depth() const { return terms_depth(terms_); }

void Ordinal::check_depth() const {
    if (depth() > kMaxDepth)
        throw resource_error("ordinal nesting exceeds depth " +
                             std::to_string(kMaxDepth));
}

std::string Ordinal::to_string() const {
    if (is_zero()) return "0";
    std::string out;
    bool first = true;
    for (const Term& t : terms_) {
        if (!first) out += " + ";
        first = false;
        Ordinal e(std::vector<Term>(t.exponent));
        if (e.is_zero()) {
            out += std::to_string(t.coefficient);
            continue;
        }
        out += "w";
        if (!(e.is_natural() && e.natural_value() == 1)) {
            std::string es = e.to_string();
            if (es.find(' ') != std::string::npos) es = "(" + es + ")";
            out += "^" + es;
        }
        if (t.coefficient != 1) out += "*" + std::to_string(t.coefficient);
    }
    return out;
}

} // namespace bigmcg
