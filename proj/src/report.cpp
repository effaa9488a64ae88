#include "bigmcg/report.hpp"

#include "json.hpp"

namespace bigmcg {

namespace {

using ordered_json = nlohmann::ordered_json;

std::string verdict_line(const std::string& name, const Verdict& v) {
    std::string s = name + ": " + to_string(v.value);
    if (!v.citations.empty()) {
        s += " [";
        for (std::size_t i = 0; i < v.citations.size(); ++i)
            s += (i ? ", " : "") + v.citations[i];
        s += "]";
    }
    if (v.heuristic) s += " (heuristic)";
    s += "\n  " + v.reason + "\n";
    for (const auto& [k, val] : v.certificate)
        s += "  " + k + ": " + val + "\n";
    return s;
}

ordered_json verdict_json(const Verdict& v) {
    ordered_json j;
    j["value"] = to_string(v.value);
    j["reason"] = v.reason;
    j["citations"] = v.citations;
    if (!v.certificate.empty()) {
        ordered_json cert = ordered_json::object();
        for (const auto& [k, val] : v.certificate) cert[k] = val;
        j["certificate"] = cert;
    }
    if (v.heuristic) j["heuristic"] = true;
    return j;
}

ordered_json maximal_json(const MaximalEnds& m) {
    ordered_json j;
    j["count"] = m.count.to_string();
    ordered_json classes = ordered_json::array();
    for (const EndClass& c : m.classes) {
        classes.push_back(
            ordered_json{{"germ", c.representative.expr.to_string()},
                         {"mark", to_string(c.representative.mark)},
                         {"count", c.cardinality.to_string()}});
    }
    j["classes"] = classes;
    return j;
}

} // namespace

std::string report_to_text(const ClassificationReport& r) {
    std::string s;
    s += "surface: genus=" + r.spec.genus.to_string() +
         "; ends=" + r.spec.ends.to_string() + "\n";
    s += "named: " + (r.named ? to_string(*r.named) : std::string("none")) + "\n";
    s += "maximal-ends: " + r.maximal.count.to_string() + "\n";
    s += verdict_line("nondisplaceable-subsurface", r.displaceability);
    s += verdict_line("meager", r.meager);
    s += verdict_line("dense", r.dense);
    s += verdict_line("somewhere-dense", r.somewhere_dense);
    s += verdict_line("pmap-dense", r.pmap_dense);
    s += verdict_line("extended-dense", r.extended_dense);
    return s;
}

std::string report_to_structured(const ClassificationReport& r) {
    ordered_json j;
    j["surface"] = ordered_json{{"genus", r.spec.genus.to_string()},
                                {"ends", r.spec.ends.to_string()}};
    j["named"] = r.named ? ordered_json(to_string(*r.named)) : ordered_json();
    j["maximal_ends"] = maximal_json(r.maximal);
    ordered_json verdicts;
    verdicts["nondisplaceable_subsurface"] = verdict_json(r.displaceability);
    verdicts["meager"] = verdict_json(r.meager);
    verdicts["dense"] = verdict_json(r.dense);
    verdicts["somewhere_dense"] = verdict_json(r.somewhere_dense);
    verdicts["pmap_dense"] = verdict_json(r.pmap_dense);
    verdicts["extended_dense"] = verdict_json(r.extended_dense);
    j["verdicts"] = verdicts;
    return j.dump(2) + "\n";
}

std::string end_form_to_text(const CanonicalEndForm& f) {
    return f.to_record() + "\n";
}

std::string end_form_to_structured(const CanonicalEndForm& f) {
    ordered_json j;
    j["characteristic"] =
        f.characteristic ? ordered_json(f.characteristic->to_string())
                         : ordered_json("uncountable");
    ordered_json parts = ordered_json::array();
    for (const auto& [mark, path] : f.cantor_parts)
        parts.push_back(ordered_json{{"mark", to_string(mark)},
                                     {"path", path.empty() ? "/" : path}});
    j["cantor_parts"] = parts;
    j["normal_form"] = f.normal_form.to_string();
    return j.dump(2) + "\n";
}

std::string classes_to_text(const EndClassReport& r) { return r.to_record(); }

std::string classes_to_structured(const EndClassReport& r) {
    ordered_json j;
    ordered_json classes = ordered_json::array();
    for (const EndClass& c : r.classes) {
        ordered_json paths = ordered_json::array();
        for (const std::string& p : c.member_paths)
            paths.push_back(p.empty() ? "/" : p);
        classes.push_back(
            ordered_json{{"germ", c.representative.expr.to_string()},
                         {"mark", to_string(c.representative.mark)},
                         {"count", c.cardinality.to_string()},
                         {"ends", paths}});
    }
    j["classes"] = classes;
    ordered_json order = ordered_json::array();
    for (const auto& [lo, hi] : r.order)
        order.push_back(ordered_json{{"below", lo}, {"above", hi}});
    j["order"] = order;
    j["maximal"] = r.maximal_classes;
    j["inconsistencies"] = r.inconsistencies;
    return j.dump(2) + "\n";
}

std::string maximal_to_text(const MaximalEnds& m) {
    std::string s = "maximal-ends: " + m.count.to_string() + "\n";
    for (const EndClass& c : m.classes)
        s += "  class: germ=" + c.representative.expr.to_string() +
             "; count=" + c.cardinality.to_string() + "\n";
    return s;
}

std::string maximal_to_structured(const MaximalEnds& m) {
    return maximal_json(m).dump(2) + "\n";
}

std::string property_to_text(const PropertyResult& r) {
    std::string s = r.holds ? "Holds" : "Fails";
    s += " (bounds s=" + std::to_string(r.source_bound) +
         ",k=" + std::to_string(r.target_bound) + ")";
    if (!r.detail.empty()) s += ": " + r.detail;
    return s + "\n";
}

std::string chain_to_text(const ChainResult& r) {
    std::string s;
    s += "stages: " + std::to_string(r.stages.size()) + "\n";
    for (std::size_t t = 0; t < r.stages.size(); ++t)
        s += "  B" + std::to_string(t) + ": " + r.stages[t].serialize() + "\n";
    s += "tasks: " + std::to_string(r.ledger.size()) + "\n";
    for (const ChainTask& t : r.ledger) {
        s += "  [" + t.kind + " @" + std::to_string(t.scheduled_at) + "] " +
             t.description;
        if (t.realized_at >= 0)
            s += " => realized at stage " + std::to_string(t.realized_at) +
                 " (" + t.mode + ")";
        else
            s += " => pending";
        s += "\n";
    }
    return s;
}

std::string fraissefy_to_text(const FraissefyResult& r) {
    std::string s;
    s += "group-order: " + std::to_string(r.group.size()) + "\n";
    s += "relations: " +
         std::to_string(r.enriched.signature().relations.size()) + "\n";
    s += "enriched: " + r.enriched.serialize() + "\n";
    return s;
}

} // namespace bigmcg
