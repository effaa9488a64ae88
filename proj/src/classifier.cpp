#include "bigmcg/classifier.hpp"

#include <algorithm>

#include "bigmcg/errors.hpp"

namespace bigmcg {

std::string to_string(VerdictValue v) {
    switch (v) {
        case VerdictValue::yes: return "yes";
        case VerdictValue::no: return "no";
        case VerdictValue::unknown: return "unknown";
    }
    return "";
}

namespace {

const char* kCiteMeager = "thm:all-classes-meager";
const char* kCiteDense = "thm:dense-iff-unique-max-and-displaceable";
const char* kCiteSomewhere = "thm:somewhere-dense-iff-le2-max-and-displaceable";
const char* kCiteNowhere = "thm:nondisplaceable-implies-nowhere-dense";
const char* kCitePMap = "thm:pmap-subgroups-no-dense-class";
const char* kCiteLochNessPMap = "cor:loch-ness-pmap-dense-class";
const char* kCiteExtended = "cor:extended-mcg-no-dense-class";
const char* kCiteNormal = "prop:closed-normal-subgroup-blocks-density";
const char* kCiteCantorClass = "thm:cantor-maximal-class-blocks-density";
const char* kCiteGenus = "crit:positive-finite-genus";
const char* kCiteInvariantSet = "crit:invariant-end-set-ge-3";
const char* kCiteFigure7 = "crit:two-max-ends-mixed-pattern";
const char* kCiteRemarkOne = "rem:genus0-countable-omega-alpha-plus-1";

std::string tag_name(DisplaceabilityTag t) {
    switch (t) {
        case DisplaceabilityTag::positive_finite_genus:
            return "PositiveFiniteGenus";
        case DisplaceabilityTag::invariant_set_ge3: return "InvariantSetGE3";
        case DisplaceabilityTag::figure7_pattern: return "Figure7Pattern";
        case DisplaceabilityTag::curated_table: return "CuratedTable";
        case DisplaceabilityTag::remark_one_negative: return "RemarkOneNegative";
        case DisplaceabilityTag::none_fired: return "NoneFired";
    }
    return "";
}

std::optional<std::string> match_curated(const SurfaceSpec& spec) {
    if (auto named = recognize_named(spec)) return to_string(*named);
    if (!spec.genus.infinite && spec.genus.value == 0) {
        EndExpr n = normalize(spec.ends).normal_form;
        EndExpr biinfinite = EndExpr::sum(
            {EndExpr::omega(EndExpr::pt(Mark::planar), Mark::planar),
             EndExpr::omega(EndExpr::pt(Mark::planar), Mark::planar)});
        if (n == biinfinite) return std::string("biinfinite-flute");
    }
    return std::nullopt;
}

} // namespace

const std::vector<CuratedEntry>& curated_displaceability_table() {
    static const std::vector<CuratedEntry> table = {
        {"loch-ness", false,
         "the Loch Ness monster has a dense conjugacy class, which forces "
         "every finite-type subsurface to be displaceable",
         {kCiteLochNessPMap, kCiteDense}, false},
        {"flute", false,
         "the flute surface (ends = w+1, genus 0) realizes the unique-"
         "maximal-end case with every finite-type subsurface displaceable",
         {kCiteRemarkOne, kCiteDense}, false},
        {"jacobs-ladder", false,
         "the Jacob's ladder surface has a somewhere-dense conjugacy class, "
         "which forces every finite-type subsurface to be displaceable",
         {kCiteSomewhere, kCitePMap}, false},
        {"cantor-tree", false,
         "every finite-type subsurface of the Cantor tree is displaceable; "
         "its conjugacy classes fail density through the Cantor set of "
         "maximal ends instead",
         {kCiteSomewhere, kCiteCantorClass}, false},
        // Derivation: the biinfinite flute is the double of the flute; the
        // translation pushing each puncture one step moves any finite-type
        // subsurface off itself, exactly as the shift does for the flute.
        // This extends the flute argument past the stated w^alpha+1 case, so
        // it is marked heuristic and is disabled under strict mode.
        {"biinfinite-flute", false,
         "translation along the biinfinite puncture row displaces every "
         "finite-type subsurface",
         {kCiteSomewhere}, true},
    };
    return table;
}

Verdict nondisplaceable_finite_type(const SurfaceSpec& spec,
                                    const ClassifyConfig& config) {
    {
        std::vector<Violation> v = validate(spec);
        if (!v.empty())
            throw validity_error(v[0].invariant + ": " + v[0].detail);
    }
    std::vector<std::string> missed;

    // (a) positive finite genus
    if (!spec.genus.infinite && spec.genus.value > 0) {
        Verdict v;
        v.value = VerdictValue::yes;
        v.reason = "the genus is finite and positive; a subsurface carrying "
                   "all of it meets every homeomorphic image of itself";
        v.citations = {kCiteGenus};
        v.certificate = {{"criterion", tag_name(DisplaceabilityTag::positive_finite_genus)},
                         {"genus", std::to_string(spec.genus.value)}};
        return v;
    }
    missed.push_back("positive-finite-genus");

    EndClassReport classes = end_equivalence_classes(spec);

    // (b) finite invariant end set of size >= 3
    {
        std::uint64_t total = 0;
        std::vector<std::string> members;
        for (const EndClass& c : classes.classes) {
            if (c.cardinality.kind == CountKind::finite) {
                total += c.cardinality.value;
                for (const std::string& p : c.member_paths)
                    members.push_back(p.empty() ? "/" : p);
            }
        }
        if (total >= 3) {
            Verdict v;
            v.value = VerdictValue::yes;
            v.reason = "the union of the finite end classes is an invariant "
                       "end set of size >= 3; a subsurface separating those "
                       "ends is non-displaceable";
            v.citations = {kCiteInvariantSet};
            std::string z;
            std::sort(members.begin(), members.end());
            for (std::size_t i = 0; i < members.size(); ++i)
                z += (i ? "," : "") + members[i];
            v.certificate = {{"criterion", tag_name(DisplaceabilityTag::invariant_set_ge3)},
                             {"invariant_set", z},
                             {"size", std::to_string(total)}};
            return v;
        }
        missed.push_back("invariant-end-set-ge-3");
    }

    // (c) pattern: finitely many nonplanar ends together with finitely many
    // planar maximal ends (generalizes the two-maximal-ends example surface;
    // config gated).
    if (config.figure7 && !config.strict) {
        EndCount nonplanar = EndCount::finite(0);
        for (const EndDescriptor& d : list_ends(spec.ends))
            if (d.mark == Mark::nonplanar) nonplanar = nonplanar + d.count;
        EndCount planar_maximal = EndCount::finite(0);
        for (std::size_t i : classes.maximal_classes)
            if (classes.classes[i].representative.mark == Mark::planar)
                planar_maximal = planar_maximal + classes.classes[i].cardinality;
        bool np_finite = nonplanar.kind == CountKind::finite &&
                         nonplanar.value >= 1;
        bool pm_finite = planar_maximal.kind == CountKind::finite &&
                         planar_maximal.value >= 1;
        if (np_finite && pm_finite) {
            Verdict v;
            v.value = VerdictValue::yes;
            v.heuristic = true;
            v.reason = "finitely many nonplanar ends coexist with finitely "
                       "many planar maximal ends; a subsurface separating the "
                       "genus from those ends is non-displaceable (pattern "
                       "generalized from a single example; heuristic)";
            v.citations = {kCiteFigure7};
            v.certificate = {{"criterion", tag_name(DisplaceabilityTag::figure7_pattern)},
                             {"nonplanar_ends", std::to_string(nonplanar.value)},
                             {"planar_maximal_ends",
                              std::to_string(planar_maximal.value)}};
            return v;
        }
        missed.push_back("two-max-ends-mixed-pattern");
    } else {
        missed.push_back("two-max-ends-mixed-pattern(skipped)");
    }

    // (d) genus zero, countable ends of form w^alpha + 1
    if (!spec.genus.infinite && spec.genus.value == 0 &&
        is_infinite_type(spec)) {
        auto c = characteristic(spec.ends);
        if (c && c->n == 1) {
            Verdict v;
            v.value = VerdictValue::no;
            v.reason = "genus zero with countable end space w^alpha + 1: no "
                       "non-displaceable finite-type subsurface exists and "
                       "the maximal end is unique";
            v.citations = {kCiteRemarkOne};
            v.certificate = {{"alpha", c->alpha.to_string()},
                             {"criterion", tag_name(DisplaceabilityTag::remark_one_negative)}};
            return v;
        }
    }
    missed.push_back("genus0-omega-alpha-plus-1");

    // (e) curated table
    if (auto key = match_curated(spec)) {
        for (const CuratedEntry& entry : curated_displaceability_table()) {
            if (entry.key != *key) continue;
            if (entry.heuristic && config.strict) {
                missed.push_back("curated-table(skipped:" + entry.key + ")");
                break;
            }
            Verdict v;
            v.value = entry.displaceable ? VerdictValue::yes : VerdictValue::no;
            v.reason = entry.reason;
            v.citations = entry.citations;
            v.citations.insert(v.citations.begin(),
                               std::string("curated:") + entry.key);
            v.certificate = {{"criterion", tag_name(DisplaceabilityTag::curated_table)},
                             {"entry", entry.key}};
            v.heuristic = entry.heuristic;
            return v;
        }
    }
    if (missed.empty() || missed.back().rfind("curated", 0) != 0)
        missed.push_back("curated-table");

    Verdict v;
    v.value = VerdictValue::unknown;
    std::string joined;
    for (std::size_t i = 0; i < missed.size(); ++i)
        joined += (i ? "," : "") + missed[i];
    v.reason = "no displaceability criterion fired";
    v.certificate = {{"criteria_missed", joined},
                     {"criterion", tag_name(DisplaceabilityTag::none_fired)}};
    return v;
}

ClassificationReport classify(const SurfaceSpec& spec,
                              const ClassifyConfig& config) {
    {
        std::vector<Violation> v = validate(spec);
        if (!v.empty())
            throw validity_error(v[0].invariant + ": " + v[0].detail);
    }
    if (!is_infinite_type(spec))
        throw validity_error(
            "finite-type surface: the conjugacy-class theory here concerns "
            "infinite-type surfaces only");

    ClassificationReport r{spec, recognize_named(spec), maximal_ends(spec),
                           nondisplaceable_finite_type(spec, config),
                           {},     {},                  {},
                           {},     {}};

    r.meager.value = VerdictValue::yes;
    r.meager.reason = "every conjugacy class of a big mapping class group is "
                      "meager";
    r.meager.citations = {kCiteMeager};

    const EndCount& count = r.maximal.count;
    const bool cantor_max = count.kind == CountKind::cantor_many;
    const bool finite_max = count.kind == CountKind::finite;
    const std::uint64_t max_n = finite_max ? count.value : 0;

    // dense
    if (r.displaceability.value == VerdictValue::yes) {
        r.dense.value = VerdictValue::no;
        r.dense.reason = "a non-displaceable finite-type subsurface makes "
                         "every conjugacy class nowhere dense";
        r.dense.citations = {kCiteNowhere, kCiteDense};
        r.dense.heuristic = r.displaceability.heuristic;
    } else if (cantor_max) {
        r.dense.value = VerdictValue::no;
        r.dense.reason = "the maximal ends form a Cantor set, so no conjugacy "
                         "class is dense";
        r.dense.citations = {kCiteCantorClass, kCiteDense};
    } else if (!finite_max || max_n >= 2) {
        r.dense.value = VerdictValue::no;
        r.dense.reason = "there is more than one maximal end; the stabilizer "
                         "of the maximal ends is a proper closed normal "
                         "subgroup, which blocks dense conjugacy classes";
        r.dense.citations = {kCiteNormal, kCiteDense};
    } else if (r.displaceability.value == VerdictValue::no) {
        r.dense.value = VerdictValue::yes;
        r.dense.reason = "unique maximal end and no non-displaceable "
                         "finite-type subsurface";
        r.dense.citations = {kCiteDense};
        r.dense.heuristic = r.displaceability.heuristic;
    } else {
        r.dense.value = VerdictValue::unknown;
        r.dense.reason = "the maximal end is unique but displaceability is "
                         "unresolved";
        r.dense.citations = {kCiteDense};
    }

    // somewhere dense
    if (cantor_max || (finite_max && max_n >= 3) ||
        count.kind == CountKind::countably_many) {
        r.somewhere_dense.value = VerdictValue::no;
        r.somewhere_dense.reason = "more than two maximal ends (or a Cantor "
                                   "set of them); no conjugacy class is "
                                   "somewhere dense";
        r.somewhere_dense.citations = {kCiteSomewhere};
    } else if (r.displaceability.value == VerdictValue::yes) {
        r.somewhere_dense.value = VerdictValue::no;
        r.somewhere_dense.reason = "a non-displaceable finite-type subsurface "
                                   "makes every conjugacy class nowhere dense";
        r.somewhere_dense.citations = {kCiteNowhere, kCiteSomewhere};
        r.somewhere_dense.heuristic = r.displaceability.heuristic;
    } else if (r.displaceability.value == VerdictValue::no) {
        r.somewhere_dense.value = VerdictValue::yes;
        r.somewhere_dense.reason = "at most two maximal ends and no "
                                   "non-displaceable finite-type subsurface";
        r.somewhere_dense.citations = {kCiteSomewhere};
        r.somewhere_dense.heuristic = r.displaceability.heuristic;
    } else {
        r.somewhere_dense.value = VerdictValue::unknown;
        r.somewhere_dense.reason = "at most two maximal ends but "
                                   "displaceability is unresolved";
        r.somewhere_dense.citations = {kCiteSomewhere};
    }

    // pure mapping class group
    if (r.named == NamedSurface::loch_ness) {
        r.pmap_dense.value = VerdictValue::yes;
        r.pmap_dense.reason = "for the Loch Ness monster, every closed group "
                              "between the compactly supported classes and "
                              "the full group has a dense conjugacy class";
        r.pmap_dense.citations = {kCiteLochNessPMap};
    } else {
        r.pmap_dense.value = VerdictValue::no;
        r.pmap_dense.reason = "closed twist-rich subgroups of the end-fixing "
                              "group have no dense conjugacy class away from "
                              "the Loch Ness monster";
        r.pmap_dense.citations = {kCitePMap};
    }

    r.extended_dense.value = VerdictValue::no;
    r.extended_dense.reason = "the extended mapping class group has a proper "
                              "closed normal subgroup of index two";
    r.extended_dense.citations = {kCiteExtended, kCiteNormal};

    return r;
}

} // namespace bigmcg
