#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "bigmcg/ordinal.hpp"

namespace bigmcg {

enum class Mark { planar, nonplanar };

// Expression denoting a marked pair (E, E_infinity) of end spaces:
//   Pt      - a single end
//   Omega   - omega-many copies of the child accumulating to one limit end
//   Cantor  - a Cantor set of ends with one uniform mark
//   Sum     - finite disjoint union (>= 2 summands, flattened)
// Nodes are immutable and shared.
class EndExpr {
public:
    enum class Kind { Pt, Omega, Cantor, Sum };

    static EndExpr pt(Mark m);
    static EndExpr omega(EndExpr child, Mark limit_mark);
    static EndExpr cantor(Mark m);
    static EndExpr sum(std::vector<EndExpr> children);

    Kind kind() const { return node_->kind; }
    Mark mark() const { return node_->mark; }              // Pt, Cantor
    Mark limit_mark() const { return node_->mark; }        // Omega
    const EndExpr& child() const { return node_->children[0]; }  // Omega
    const std::vector<EndExpr>& children() const { return node_->children; }

    bool operator==(const EndExpr& other) const;
    bool operator!=(const EndExpr& other) const { return !(*this == other); }
    bool operator<(const EndExpr& other) const;  // total order on trees

    bool contains_nonplanar() const;
    bool contains_cantor() const;
    bool contains_pt() const;
    bool contains_omega() const;
    // All Pt marks, Cantor marks and Omega limit marks equal m.
    bool uniformly_marked(Mark m) const;

    int depth() const;
    std::size_t node_count() const;

    // DSL surface syntax, e.g. "omega(pt)* + cantor".
    std::string to_string() const;

private:
    struct Node {
        Kind kind;
        Mark mark;
        std::vector<EndExpr> children;
    };

    explicit EndExpr(std::shared_ptr<const Node> n) : node_(std::move(n)) {}

    std::shared_ptr<const Node> node_;
};

struct Genus {
    bool infinite = false;
    std::uint64_t value = 0;

    static Genus inf() { return Genus{true, 0}; }
    static Genus finite(std::uint64_t g) { return Genus{false, g}; }
    bool operator==(const Genus& o) const {
        return infinite == o.infinite && (infinite || value == o.value);
    }
    std::string to_string() const {
        return infinite ? "inf" : std::to_string(value);
    }
};

struct SurfaceSpec {
    Genus genus;
    EndExpr ends;

    bool operator==(const SurfaceSpec& o) const {
        return genus == o.genus && ends == o.ends;
    }
};

// Cantor-Bendixson characteristic: the alpha-th derivative of the space is
// finite with exactly n points (space homeomorphic to w^alpha * n + 1).
struct CBCharacteristic {
    Ordinal alpha;
    std::uint64_t n = 1;

    bool operator==(const CBCharacteristic& o) const {
        return alpha == o.alpha && n == o.n;
    }
    std::string to_string() const;
};

struct CanonicalEndForm {
    EndExpr normal_form;
    // Present iff the expression has no Cantor node.
    std::optional<CBCharacteristic> characteristic;
    // One entry per Cantor node of the normal form: (mark, path).
    std::vector<std::pair<Mark, std::string>> cantor_parts;

    bool operator==(const CanonicalEndForm& o) const {
        return normal_form == o.normal_form;
    }
    // Deterministic structured record; stable field order.
    std::string to_record() const;
};

struct Violation {
    std::string invariant;
    std::string path;
    std::string detail;
};

enum class CountKind { finite, countably_many, cantor_many };

struct EndCount {
    CountKind kind = CountKind::finite;
    std::uint64_t value = 0;  // meaningful for finite

    static EndCount finite(std::uint64_t v) { return {CountKind::finite, v}; }
    static EndCount countable() { return {CountKind::countably_many, 0}; }
    static EndCount cantor() { return {CountKind::cantor_many, 0}; }

    EndCount operator+(const EndCount& o) const;
    bool operator==(const EndCount& o) const {
        return kind == o.kind && (kind != CountKind::finite || value == o.value);
    }
    std::string to_string() const;
};

enum class EndKind { isolated, limit, cantor_family };

struct EndDescriptor {
    std::string path;   // position of the defining node in the expression tree
    EndKind kind;
    Mark mark;
    EndExpr germ;       // local model of small clopen neighborhoods
    EndCount count;
};

struct SelfSimilarityResult {
    bool holds = false;
    // The first decomposition with no piece containing a clopen copy of the
    // whole pair, when holds is false.
    std::vector<EndExpr> witness;
};

enum class NamedSurface { loch_ness, jacobs_ladder, flute, cantor_tree };

std::string to_string(NamedSurface n);
std::string to_string(Mark m);

// --- operations ---

SurfaceSpec parse_surface(const std::string& text);
EndExpr parse_end_expr(const std::string& text);

std::vector<Violation> validate(const SurfaceSpec& spec);

bool is_infinite_type(const SurfaceSpec& spec);

CanonicalEndForm normalize(const EndExpr& expr);

// NotCountable is signalled by nullopt (a Cantor node is present).
std::optional<CBCharacteristic> characteristic(const EndExpr& expr);

std::vector<EndDescriptor> list_ends(const EndExpr& expr);

// All decompositions of the denoted space into >= 2 clopen pieces generated
// by the natural clopen basis, to the given recursion depth.
std::vector<std::vector<EndExpr>> clopen_decompositions(const EndExpr& expr,
                                                        int depth);

// Does `small` admit a mark-preserving clopen embedding into `big`?
// Both sides are normalized internally.
bool clopen_embeds(const EndExpr& small, const EndExpr& big);

SelfSimilarityResult is_self_similar_bounded(const EndExpr& expr, int depth);

std::optional<NamedSurface> recognize_named(const SurfaceSpec& spec);

} // namespace bigmcg
