#include "bigmcg/mann_rafi.hpp"

#include <algorithm>

#include "bigmcg/errors.hpp"

namespace bigmcg {

bool germ_leq(const EndGerm& y, const EndGerm& x) {
    return clopen_embeds(y.expr, x.expr);
}

EndGerm germ_of(const EndDescriptor& d) {
    return EndGerm{d.germ, d.mark, d.path};
}

EndClassReport end_equivalence_classes(const SurfaceSpec& spec) {
    std::vector<Violation> v = validate(spec);
    if (!v.empty())
        throw validity_error(v[0].invariant + ": " + v[0].detail);

    std::vector<EndDescriptor> ends = list_ends(spec.ends);

    // Group descriptors by normalized germ; distinct germ expressions may
    // still be mutually comparable, so a second pass merges by germ_leq.
    struct Bucket {
        EndExpr germ_normal;
        EndGerm representative;
        std::vector<std::string> paths;
        EndCount count;
    };
    std::vector<Bucket> buckets;
    for (const EndDescriptor& d : ends) {
        EndExpr g = normalize(d.germ).normal_form;
        bool placed = false;
        for (Bucket& b : buckets) {
            if (b.germ_normal == g) {
                b.paths.push_back(d.path);
                b.count = b.count + d.count;
                placed = true;
                break;
            }
        }
        if (!placed)
            buckets.push_back(
                Bucket{g, EndGerm{g, d.mark, d.path}, {d.path}, d.count});
    }

    const std::size_t m = buckets.size();
    std::vector<std::vector<bool>> leq(m, std::vector<bool>(m, false));
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < m; ++j)
            leq[i][j] = i == j || germ_leq(buckets[i].representative,
                                           buckets[j].representative);

    // Merge mutually comparable buckets into classes.
    std::vector<int> class_of(m, -1);
    std::vector<std::vector<std::size_t>> class_buckets;
    for (std::size_t i = 0; i < m; ++i) {
        if (class_of[i] >= 0) continue;
        class_of[i] = static_cast<int>(class_buckets.size());
        class_buckets.push_back({i});
        for (std::size_t j = i + 1; j < m; ++j) {
            if (class_of[j] < 0 && leq[i][j] && leq[j][i]) {
                class_of[j] = class_of[i];
                class_buckets.back().push_back(j);
            }
        }
    }

    EndClassReport report;
    for (const auto& members : class_buckets) {
        EndClass cls{buckets[members[0]].representative, {}, EndCount::finite(0)};
        for (std::size_t b : members) {
            for (const std::string& p : buckets[b].paths)
                cls.member_paths.push_back(p);
            cls.cardinality = cls.cardinality + buckets[b].count;
        }
        std::sort(cls.member_paths.begin(), cls.member_paths.end());
        report.classes.push_back(std::move(cls));
    }
    // Deterministic class order: by representative germ text.
    std::vector<std::size_t> perm(report.classes.size());
    for (std::size_t i = 0; i < perm.size(); ++i) perm[i] = i;
    std::sort(perm.begin(), perm.end(), [&](std::size_t a, std::size_t b) {
        return report.classes[a].representative.expr.to_string() <
               report.classes[b].representative.expr.to_string();
    });
    std::vector<EndClass> sorted;
    for (std::size_t i : perm) sorted.push_back(report.classes[i]);
    report.classes = std::move(sorted);

    const std::size_t k = report.classes.size();
    std::vector<std::vector<bool>> cls_leq(k, std::vector<bool>(k, false));
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < k; ++j)
            cls_leq[i][j] = i == j || germ_leq(report.classes[i].representative,
                                               report.classes[j].representative);
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < k; ++j)
            if (i != j && cls_leq[i][j] && !cls_leq[j][i])
                report.order.emplace_back(i, j);
    for (std::size_t i = 0; i < k; ++i) {
        bool maximal = true;
        for (const auto& [lo, hi] : report.order)
            if (lo == i) { maximal = false; break; }
        if (maximal) report.maximal_classes.push_back(i);
    }
    for (std::size_t i : report.maximal_classes) {
        if (report.classes[i].cardinality.kind == CountKind::countably_many)
            report.inconsistencies.push_back(
                "maximal class " + std::to_string(i) +
                " is countably infinite; a maximal class must be finite or a "
                "Cantor set");
    }
    return report;
}

std::string EndClassReport::to_record() const {
    std::string s;
    for (std::size_t i = 0; i < classes.size(); ++i) {
        s += "class " + std::to_string(i) + ": germ=" +
             classes[i].representative.expr.to_string() +
             "; count=" + classes[i].cardinality.to_string() + "; ends=[";
        for (std::size_t j = 0; j < classes[i].member_paths.size(); ++j) {
            if (j) s += ",";
            s += classes[i].member_paths[j].empty() ? "/"
                                                    : classes[i].member_paths[j];
        }
        s += "]\n";
    }
    s += "order:";
    for (const auto& [lo, hi] : order)
        s += " " + std::to_string(lo) + "<" + std::to_string(hi);
    s += "\nmaximal:";
    for (std::size_t i : maximal_classes) s += " " + std::to_string(i);
    s += "\n";
    for (const std::string& msg : inconsistencies)
        s += "inconsistency: " + msg + "\n";
    return s;
}

MaximalEnds maximal_ends(const SurfaceSpec& spec) {
    EndClassReport report = end_equivalence_classes(spec);
    MaximalEnds result{EndCount::finite(0), {}};
    for (std::size_t i : report.maximal_classes) {
        result.count = result.count + report.classes[i].cardinality;
        result.classes.push_back(report.classes[i]);
    }
    return result;
}

} // namespace bigmcg
