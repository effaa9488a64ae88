#pragma once

#include <string>
#include <vector>

#include "bigmcg/end_space.hpp"

namespace bigmcg {

// Local model of an end: arbitrarily small clopen neighborhoods of the end
// are homeomorphic to the germ expression (as marked pairs).
struct EndGerm {
    EndExpr expr;
    Mark mark;
    std::string origin_path;
};

struct EndClass {
    EndGerm representative;
    std::vector<std::string> member_paths;
    EndCount cardinality;
};

struct EndClassReport {
    std::vector<EndClass> classes;
    // (i, j) with class i strictly below class j.
    std::vector<std::pair<std::size_t, std::size_t>> order;
    std::vector<std::size_t> maximal_classes;
    // A maximal class of countably-infinite cardinality contradicts the
    // finite-or-Cantor dichotomy; flagged rather than silently accepted.
    std::vector<std::string> inconsistencies;

    std::string to_record() const;
};

struct MaximalEnds {
    EndCount count;
    std::vector<EndClass> classes;
};

// y is below x: every small neighborhood of x admits a mark-preserving
// clopen copy of some small neighborhood of y.
bool germ_leq(const EndGerm& y, const EndGerm& x);

EndGerm germ_of(const EndDescriptor& d);

EndClassReport end_equivalence_classes(const SurfaceSpec& spec);

MaximalEnds maximal_ends(const SurfaceSpec& spec);

} // namespace bigmcg
