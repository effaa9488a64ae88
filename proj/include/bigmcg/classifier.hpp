#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "bigmcg/end_space.hpp"
#include "bigmcg/mann_rafi.hpp"

namespace bigmcg {

enum class VerdictValue { yes, no, unknown };

std::string to_string(VerdictValue v);

struct Verdict {
    VerdictValue value = VerdictValue::unknown;
    std::string reason;
    std::vector<std::string> citations;
    // Structured witness data; stable key order.
    std::map<std::string, std::string> certificate;
    // Backed by a pattern generalized from a single example rather than a
    // stated theorem; downgraded to unknown under strict mode.
    bool heuristic = false;
};

enum class DisplaceabilityTag {
    positive_finite_genus,
    invariant_set_ge3,
    figure7_pattern,
    curated_table,
    remark_one_negative,
    none_fired,
};

struct ClassifyConfig {
    // Disable pattern-based criteria; only theorem-backed ones remain.
    bool strict = false;
    // The finite-E_infinity/finite-planar-maximal pattern; on by default.
    bool figure7 = true;
};

struct ClassificationReport {
    SurfaceSpec spec;
    std::optional<NamedSurface> named;
    MaximalEnds maximal;
    Verdict displaceability;  // "has a non-displaceable finite-type subsurface"
    Verdict meager;
    Verdict dense;
    Verdict somewhere_dense;
    Verdict pmap_dense;
    Verdict extended_dense;
};

// Curated displaceability facts for the named surfaces of the theory; each
// entry carries its citation chain so the table can be audited as data.
struct CuratedEntry {
    std::string key;          // matcher id
    bool displaceable;        // verdict payload: has non-displaceable subsurface
    std::string reason;
    std::vector<std::string> citations;
    bool heuristic;           // gated off under strict
};

const std::vector<CuratedEntry>& curated_displaceability_table();

// Decides "does the surface have a non-displaceable finite-type subsurface",
// three-valued with certificates. Criteria run in a fixed order.
Verdict nondisplaceable_finite_type(const SurfaceSpec& spec,
                                    const ClassifyConfig& config = {});

ClassificationReport classify(const SurfaceSpec& spec,
                              const ClassifyConfig& config = {});

} // namespace bigmcg
