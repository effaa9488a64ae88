#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "json.hpp"

#include "bigmcg/classifier.hpp"
#include "bigmcg/curve_oracle.hpp"
#include "bigmcg/curves.hpp"
#include "bigmcg/end_space.hpp"
#include "bigmcg/errors.hpp"
#include "bigmcg/fraisse.hpp"
#include "bigmcg/mann_rafi.hpp"
#include "bigmcg/report.hpp"

namespace py = pybind11;
using namespace bigmcg;

namespace {

py::object json_to_py(const nlohmann::ordered_json& j) {
    using value_t = nlohmann::ordered_json::value_t;
    switch (j.type()) {
        case value_t::null: return py::none();
        case value_t::boolean: return py::bool_(j.get<bool>());
        case value_t::number_integer: return py::int_(j.get<long long>());
        case value_t::number_unsigned:
            return py::int_(j.get<unsigned long long>());
        case value_t::number_float: return py::float_(j.get<double>());
        case value_t::string: return py::str(j.get<std::string>());
        case value_t::array: {
            py::list out;
            for (const auto& item : j) out.append(json_to_py(item));
            return out;
        }
        case value_t::object: {
            py::dict out;
            for (const auto& [k, v] : j.items())
                out[py::str(k)] = json_to_py(v);
            return out;
        }
        default: return py::none();
    }
}

py::object structured(const std::string& s) {
    return json_to_py(nlohmann::ordered_json::parse(s));
}

py::int_ big_to_py(const BigInt& v) {
    return py::reinterpret_steal<py::int_>(
        PyLong_FromString(v.str().c_str(), nullptr, 10));
}

BigInt py_to_big(const py::handle& obj) {
    return BigInt(py::str(obj).cast<std::string>());
}

MultiCurveCoords coords_from_list(int n, const py::sequence& seq) {
    MultiCurveCoords v = empty_multicurve(n);
    if (static_cast<int>(py::len(seq)) != 2 * n - 4)
        throw validity_error("expected 2n-4 coordinates");
    for (int k = 0; k < 2 * n - 4; ++k) v.coords[k] = py_to_big(seq[k]);
    return v;
}

py::list coords_to_list(const MultiCurveCoords& v) {
    py::list out;
    for (const BigInt& c : v.coords) out.append(big_to_py(c));
    return out;
}

} // namespace

PYBIND11_MODULE(_bigmcg, m) {
    m.doc() = "conjugacy-class decision procedures for big mapping class "
              "groups: end spaces, the Mann-Rafi order, amalgamation "
              "classes and the braid action on multicurves";

    py::register_exception<syntax_error>(m, "SurfaceSyntaxError");
    py::register_exception<validity_error>(m, "ValidityError");
    py::register_exception<resource_error>(m, "ResourceBudgetError");
    py::register_exception<precondition_error>(m, "PreconditionError");
    py::register_exception<not_automorphism_error>(m, "NotAutomorphismError");
    py::register_exception<ill_formed_pair_error>(m, "IllFormedPairError");

    // ---- surfaces and end spaces ----
    m.def("classify", [](const std::string& text, bool strict) {
        ClassifyConfig cfg;
        cfg.strict = strict;
        return structured(report_to_structured(classify(parse_surface(text), cfg)));
    }, py::arg("surface"), py::arg("strict") = false,
       "three-valued verdicts with citations for a surface description");

    m.def("classify_text", [](const std::string& text, bool strict) {
        ClassifyConfig cfg;
        cfg.strict = strict;
        return report_to_text(classify(parse_surface(text), cfg));
    }, py::arg("surface"), py::arg("strict") = false);

    m.def("validate_surface", [](const std::string& text) {
        py::list out;
        try {
            parse_surface(text);
        } catch (const std::exception& e) {
            out.append(py::str(e.what()));
        }
        return out;
    }, py::arg("surface"), "empty list when the description is valid");

    m.def("normalize_ends", [](const std::string& expr) {
        return structured(end_form_to_structured(normalize(parse_end_expr(expr))));
    }, py::arg("expr"));

    m.def("characteristic", [](const std::string& expr) -> py::object {
        auto c = characteristic(parse_end_expr(expr));
        if (!c) return py::none();
        return py::make_tuple(c->alpha.to_string(), c->n);
    }, py::arg("expr"),
       "Cantor-Bendixson characteristic (alpha, n), or None if uncountable");

    m.def("recognize_named", [](const std::string& text) -> py::object {
        auto named = recognize_named(parse_surface(text));
        if (!named) return py::none();
        return py::str(to_string(*named));
    }, py::arg("surface"));

    m.def("end_classes", [](const std::string& text) {
        SurfaceSpec spec = text.find("genus") != std::string::npos
            ? parse_surface(text)
            : SurfaceSpec{parse_end_expr(text).contains_nonplanar()
                              ? Genus::inf() : Genus::finite(0),
                          parse_end_expr(text)};
        return structured(classes_to_structured(end_equivalence_classes(spec)));
    }, py::arg("surface"));

    m.def("maximal_ends", [](const std::string& text) {
        SurfaceSpec spec = text.find("genus") != std::string::npos
            ? parse_surface(text)
            : SurfaceSpec{parse_end_expr(text).contains_nonplanar()
                              ? Genus::inf() : Genus::finite(0),
                          parse_end_expr(text)};
        return structured(maximal_to_structured(maximal_ends(spec)));
    }, py::arg("surface"));

    m.def("list_ends", [](const std::string& expr) {
        py::list out;
        for (const EndDescriptor& d : list_ends(parse_end_expr(expr))) {
            py::dict item;
            item["path"] = d.path.empty() ? "/" : d.path;
            item["kind"] = d.kind == EndKind::isolated ? "isolated"
                           : d.kind == EndKind::limit  ? "limit"
                                                       : "cantor-family";
            item["mark"] = to_string(d.mark);
            item["germ"] = d.germ.to_string();
            item["count"] = d.count.to_string();
            out.append(item);
        }
        return out;
    }, py::arg("expr"));

    m.def("clopen_decompositions", [](const std::string& expr, int depth) {
        py::list out;
        for (const auto& pieces :
             clopen_decompositions(parse_end_expr(expr), depth)) {
            py::list part;
            for (const EndExpr& p : pieces) part.append(p.to_string());
            out.append(part);
        }
        return out;
    }, py::arg("expr"), py::arg("depth") = 1);

    m.def("is_self_similar", [](const std::string& expr, int depth) {
        SelfSimilarityResult r = is_self_similar_bounded(parse_end_expr(expr), depth);
        py::dict out;
        out["holds"] = r.holds;
        py::list witness;
        for (const EndExpr& p : r.witness) witness.append(p.to_string());
        out["witness"] = witness;
        return out;
    }, py::arg("expr"), py::arg("depth") = 2);

    // ---- amalgamation classes ----
    m.def("check_class_property", [](const std::string& class_text,
                                     const std::string& prop) {
        StructureClass cls = class_from_text(class_text);
        PropertyResult r;
        if (prop == "hp") r = check_class_property(cls, ClassProperty::hp);
        else if (prop == "jep") r = check_class_property(cls, ClassProperty::jep);
        else if (prop == "ap") r = check_class_property(cls, ClassProperty::ap);
        else if (prop == "wap") r = check_class_property(cls, ClassProperty::wap);
        else if (prop == "local-wap")
            r = check_class_property(cls, ClassProperty::local_wap);
        else if (prop == "jep-fp") r = check_pair_property(cls, PairProperty::jep_fp);
        else if (prop == "wap-fp") r = check_pair_property(cls, PairProperty::wap_fp);
        else if (prop == "local-wap-fp")
            r = check_pair_property(cls, PairProperty::local_wap_fp);
        else throw validity_error("unknown property " + prop);
        py::dict out;
        out["holds"] = r.holds;
        out["source_bound"] = r.source_bound;
        out["target_bound"] = r.target_bound;
        out["detail"] = r.detail;
        return out;
    }, py::arg("structure_class"), py::arg("property"));

    m.def("fraisse_chain", [](const std::string& class_text, int steps) {
        ChainResult r = fraisse_chain(class_from_text(class_text), steps);
        py::dict out;
        py::list stages;
        for (const FiniteStructure& s : r.stages) stages.append(s.serialize());
        out["stages"] = stages;
        py::list tasks;
        for (const ChainTask& t : r.ledger) {
            py::dict task;
            task["kind"] = t.kind;
            task["scheduled_at"] = t.scheduled_at;
            task["realized_at"] = t.realized_at;
            task["mode"] = t.mode;
            tasks.append(task);
        }
        out["tasks"] = tasks;
        return out;
    }, py::arg("structure_class"), py::arg("steps"));

    m.def("fraissefy", [](const std::string& struct_text,
                          const std::vector<std::vector<int>>& generators) {
        FraissefyResult r = fraissefy(structure_from_text(struct_text), generators);
        py::dict out;
        out["group_order"] = r.group.size();
        out["group"] = r.group;
        out["enriched"] = structure_to_text(r.enriched);
        out["relation_count"] = r.enriched.signature().relations.size();
        return out;
    }, py::arg("structure"), py::arg("generators"));

    m.def("is_ultrahomogeneous", [](const std::string& struct_text) {
        UltrahomogeneityResult r =
            check_ultrahomogeneous(structure_from_text(struct_text));
        py::dict out;
        out["ultrahomogeneous"] = r.ultrahomogeneous;
        out["witness_domain"] = r.witness_domain;
        out["witness_codomain"] = r.witness_codomain;
        return out;
    }, py::arg("structure"));

    // ---- multicurves ----
    m.def("act_word", [](int n, const py::sequence& coords,
                         const std::string& word) {
        return coords_to_list(
            act_word(coords_from_list(n, coords), word_from_text(word)));
    }, py::arg("n"), py::arg("coords"), py::arg("word"),
       "apply a braid word, e.g. \"s1 s2^-1\", to a coordinate vector");

    m.def("round_coords", [](int n, int first, int last) {
        return coords_to_list(round_coords({first, last}, n));
    }, py::arg("n"), py::arg("first"), py::arg("last"));

    m.def("round_twist_word", [](int n, int first, int last) {
        return word_to_text(round_twist_word({first, last}, n));
    }, py::arg("n"), py::arg("first"), py::arg("last"));

    m.def("intersect_round", [](int n, const py::sequence& coords, int first,
                                int last) {
        return big_to_py(intersection_with_round(coords_from_list(n, coords),
                                                 {first, last}));
    }, py::arg("n"), py::arg("coords"), py::arg("first"), py::arg("last"));

    m.def("oracle_act", [](int n, int first, int last,
                           const std::string& word) {
        OracleCurve c = OracleCurve::round(n, {first, last});
        OracleCurve img = c.act(word_from_text(word));
        py::dict out;
        out["coords"] = coords_to_list(img.coords());
        out["word"] = img.word_text();
        return out;
    }, py::arg("n"), py::arg("first"), py::arg("last"), py::arg("word"),
       "reference tracker: act on an explicit round curve and reread it");
}
