#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"

#include "bigmcg/classifier.hpp"
#include "bigmcg/curves.hpp"
#include "bigmcg/end_space.hpp"
#include "bigmcg/errors.hpp"
#include "bigmcg/fraisse.hpp"
#include "bigmcg/mann_rafi.hpp"
#include "bigmcg/report.hpp"

namespace {

using namespace bigmcg;

// Inline expressions are accepted wherever a file path is expected: no path
// separator plus an '=' means the argument is the content itself.
std::string resolve_input(const std::string& arg) {
    bool looks_inline = arg.find('=') != std::string::npos &&
                        arg.find('/') == std::string::npos &&
                        arg.find('\\') == std::string::npos;
    if (looks_inline) return arg;
    std::ifstream in(arg);
    if (!in) throw validity_error("cannot read input file: " + arg);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

// The ends subcommands take the expression itself; a path-looking argument
// is read as a file. A bare expression gets the genus its marks force.
SurfaceSpec surface_from_arg(const std::string& arg) {
    std::string text = arg;
    if (arg.find('/') != std::string::npos ||
        arg.find('\\') != std::string::npos)
        text = resolve_input(arg);
    if (text.find("genus") != std::string::npos) return parse_surface(text);
    EndExpr e = parse_end_expr(text);
    Genus g = e.contains_nonplanar() ? Genus::inf() : Genus::finite(0);
    return SurfaceSpec{g, std::move(e)};
}

RoundCurve parse_round_arg(const std::string& s) {
    std::size_t comma = s.find(',');
    if (comma == std::string::npos)
        throw syntax_error("expected --round i,j", 1, 1);
    try {
        return RoundCurve{std::stoi(s.substr(0, comma)),
                          std::stoi(s.substr(comma + 1))};
    } catch (const std::exception&) {
        throw syntax_error("expected --round i,j", 1, 1);
    }
}

MultiCurveCoords parse_coords_arg(int n, const std::string& s) {
    std::string text = s;
    if (text.find("n=") == std::string::npos)
        text = "n=" + std::to_string(n) + "; " + text;
    MultiCurveCoords v = coords_from_text(text);
    if (v.n != n)
        throw validity_error("coordinate vector disagrees with --n");
    return v;
}

int run(int argc, char** argv) {
    CLI::App app{"decision procedures for conjugacy classes of big mapping "
                 "class groups, with end-space, amalgamation and curve-twist "
                 "engines"};
    app.require_subcommand(1);
    std::string format = "text";

    // classify
    auto* classify_cmd = app.add_subcommand(
        "classify", "classify a surface's conjugacy-class behavior");
    std::string classify_input;
    bool strict = false;
    classify_cmd->add_option("input", classify_input,
                             "surface file or inline \"genus = ..; ends = ..\"")
        ->required();
    classify_cmd->add_flag("--strict", strict,
                           "disable pattern-based criteria");
    classify_cmd->add_option("--format", format, "text|structured")
        ->check(CLI::IsMember({"text", "structured"}));

    // ends
    auto* ends_cmd = app.add_subcommand("ends", "end-space computations");
    ends_cmd->require_subcommand(1);
    std::string ends_input;
    auto* ends_normalize = ends_cmd->add_subcommand("normalize",
                                                    "canonical end form");
    auto* ends_order = ends_cmd->add_subcommand("order",
                                                "end classes and their order");
    auto* ends_maximal = ends_cmd->add_subcommand("maximal", "maximal ends");
    for (CLI::App* sub : {ends_normalize, ends_order, ends_maximal}) {
        sub->add_option("expr", ends_input, "end-space expression or surface")
            ->required();
        sub->add_option("--format", format, "text|structured")
            ->check(CLI::IsMember({"text", "structured"}));
    }

    // fraisse
    auto* fraisse_cmd =
        app.add_subcommand("fraisse", "finite-structure class engine");
    fraisse_cmd->require_subcommand(1);
    auto* f_check = fraisse_cmd->add_subcommand("check", "class properties");
    std::string class_input, property;
    f_check->add_option("classfile", class_input, "structure-class file")
        ->required();
    f_check->add_option("--property", property, "property to check")
        ->required()
        ->check(CLI::IsMember({"hp", "jep", "ap", "wap", "local-wap",
                               "jep-fp", "wap-fp"}));
    auto* f_chain = fraisse_cmd->add_subcommand("chain", "limit chain prefix");
    int steps = 0;
    f_chain->add_option("classfile", class_input, "structure-class file")
        ->required();
    f_chain->add_option("--steps", steps, "chain length")->required();
    auto* f_fy = fraisse_cmd->add_subcommand("fraissefy",
                                             "orbit-relation enrichment");
    std::string struct_input, gens_input;
    f_fy->add_option("structfile", struct_input, "structure file")->required();
    f_fy->add_option("--generators", gens_input, "permutation file")
        ->required();

    // curves
    auto* curves_cmd =
        app.add_subcommand("curves", "multicurves on the punctured disk");
    curves_cmd->require_subcommand(1);
    int n_punctures = 0;
    std::string coords_input, word_input, round_input;
    auto* c_act = curves_cmd->add_subcommand("act", "apply a braid word");
    c_act->add_option("--n", n_punctures, "punctures")->required();
    c_act->add_option("--coords", coords_input, "coordinate vector")
        ->required();
    c_act->add_option("--word", word_input, "braid word, e.g. \"s1 s2^-1\"")
        ->required();
    auto* c_twist =
        curves_cmd->add_subcommand("twist", "braid word of a round twist");
    c_twist->add_option("--n", n_punctures, "punctures")->required();
    c_twist->add_option("--round", round_input, "round curve i,j")->required();
    auto* c_inter = curves_cmd->add_subcommand(
        "intersect", "intersection number with a round curve");
    c_inter->add_option("--n", n_punctures, "punctures")->required();
    c_inter->add_option("--round", round_input, "round curve i,j")->required();
    c_inter->add_option("--coords", coords_input, "coordinate vector")
        ->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);
        app.exit(e);
        return 2;
    }

    std::ostream& out = std::cout;
    if (classify_cmd->parsed()) {
        SurfaceSpec spec = parse_surface(resolve_input(classify_input));
        ClassifyConfig cfg;
        cfg.strict = strict;
        ClassificationReport r = classify(spec, cfg);
        out << (format == "structured" ? report_to_structured(r)
                                       : report_to_text(r));
        return 0;
    }
    if (ends_normalize->parsed()) {
        SurfaceSpec spec = surface_from_arg(ends_input);
        CanonicalEndForm f = normalize(spec.ends);
        out << (format == "structured" ? end_form_to_structured(f)
                                       : end_form_to_text(f));
        return 0;
    }
    if (ends_order->parsed()) {
        EndClassReport r = end_equivalence_classes(surface_from_arg(ends_input));
        out << (format == "structured" ? classes_to_structured(r)
                                       : classes_to_text(r));
        return 0;
    }
    if (ends_maximal->parsed()) {
        MaximalEnds m = maximal_ends(surface_from_arg(ends_input));
        out << (format == "structured" ? maximal_to_structured(m)
                                       : maximal_to_text(m));
        return 0;
    }
    if (f_check->parsed()) {
        StructureClass cls = class_from_text(resolve_input(class_input));
        PropertyResult r;
        if (property == "hp")
            r = check_class_property(cls, ClassProperty::hp);
        else if (property == "jep")
            r = check_class_property(cls, ClassProperty::jep);
        else if (property == "ap")
            r = check_class_property(cls, ClassProperty::ap);
        else if (property == "wap")
            r = check_class_property(cls, ClassProperty::wap);
        else if (property == "local-wap")
            r = check_class_property(cls, ClassProperty::local_wap);
        else if (property == "jep-fp")
            r = check_pair_property(cls, PairProperty::jep_fp);
        else
            r = check_pair_property(cls, PairProperty::wap_fp);
        out << property_to_text(r);
        return 0;
    }
    if (f_chain->parsed()) {
        StructureClass cls = class_from_text(resolve_input(class_input));
        out << chain_to_text(fraisse_chain(cls, steps));
        return 0;
    }
    if (f_fy->parsed()) {
        FiniteStructure k = structure_from_text(resolve_input(struct_input));
        auto gens = permutations_from_text(resolve_input(gens_input));
        out << fraissefy_to_text(fraissefy(k, gens));
        return 0;
    }
    if (c_act->parsed()) {
        MultiCurveCoords v = parse_coords_arg(n_punctures, coords_input);
        BraidWord w = word_from_text(word_input);
        out << coords_to_text(act_word(v, w)) << "\n";
        return 0;
    }
    if (c_twist->parsed()) {
        RoundCurve c = parse_round_arg(round_input);
        out << word_to_text(round_twist_word(c, n_punctures)) << "\n";
        return 0;
    }
    if (c_inter->parsed()) {
        RoundCurve c = parse_round_arg(round_input);
        MultiCurveCoords v = parse_coords_arg(n_punctures, coords_input);
        out << intersection_with_round(v, c).str() << "\n";
        return 0;
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const bigmcg::syntax_error& e) {
        std::cerr << e.what() << "\n";
        return 2;
    } catch (const bigmcg::validity_error& e) {
        std::cerr << e.what() << "\n";
        return 2;
    } catch (const bigmcg::ill_formed_pair_error& e) {
        std::cerr << e.what() << "\n";
        return 2;
    } catch (const bigmcg::resource_error& e) {
        std::cerr << e.what() << "\n";
        return 3;
    } catch (const bigmcg::precondition_error& e) {
        std::cerr << e.what() << "\n";
        return 4;
    } catch (const bigmcg::not_automorphism_error& e) {
        std::cerr << e.what() << "\n";
        return 4;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
