#include "doctest.h"

#include <algorithm>
#include <random>
#include <set>

#include "bigmcg/errors.hpp"
#include "bigmcg/fraisse.hpp"

using namespace bigmcg;

namespace {

Signature graph_sig() { return Signature{{{"E", 2}}}; }
Signature order_sig() { return Signature{{{"lt", 2}}}; }

// undirected graph: store both orientations of each edge
FiniteStructure graph(int n, std::vector<std::pair<int, int>> edges) {
    std::vector<std::vector<int>> ts;
    for (auto [u, v] : edges) {
        ts.push_back({u, v});
        ts.push_back({v, u});
    }
    return FiniteStructure(graph_sig(), n, {ts});
}

FiniteStructure chain(int n) {
    std::vector<std::vector<int>> ts;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) ts.push_back({i, j});
    return FiniteStructure(order_sig(), n, {ts});
}

StructureClass orders_class(int max_size, int s, int k) {
    std::vector<FiniteStructure> members;
    for (int n = 1; n <= max_size; ++n) members.push_back(chain(n));
    return make_class(order_sig(), std::move(members), s, k);
}

std::vector<FiniteStructure> all_graphs(int n) {
    std::vector<std::pair<int, int>> slots;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) slots.emplace_back(i, j);
    std::vector<FiniteStructure> out;
    std::set<std::string> seen;
    for (unsigned mask = 0; mask < (1u << slots.size()); ++mask) {
        std::vector<std::pair<int, int>> edges;
        for (std::size_t b = 0; b < slots.size(); ++b)
            if (mask & (1u << b)) edges.push_back(slots[b]);
        FiniteStructure g = graph(n, edges);
        if (seen.insert(g.canonical_key()).second) out.push_back(g);
    }
    return out;
}

StructureClass graphs_class(int max_size, int s, int k,
                            int max_degree = -1) {
    std::vector<FiniteStructure> members;
    for (int n = 1; n <= max_size; ++n) {
        for (FiniteStructure& g : all_graphs(n)) {
            if (max_degree >= 0) {
                bool ok = true;
                std::vector<int> deg(n, 0);
                for (const auto& t : g.tuples(0)) ++deg[t[0]];
                for (int d : deg)
                    if (d > max_degree) { ok = false; break; }
                if (!ok) continue;
            }
            members.push_back(std::move(g));
        }
    }
    return make_class(graph_sig(), std::move(members), s, k);
}

FiniteStructure random_structure(std::mt19937& rng, int max_size) {
    int n = 1 + static_cast<int>(rng() % max_size);
    std::vector<std::vector<int>> ts;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (i != j && rng() % 3 == 0) ts.push_back({i, j});
    return FiniteStructure(graph_sig(), n, {ts});
}

} // namespace

TEST_CASE("embedding enumeration on the stated examples") {
    CHECK(enumerate_embeddings(graph(1, {}), graph(2, {{0, 1}})).size() == 2);
    CHECK(enumerate_embeddings(graph(2, {{0, 1}}),
                               graph(3, {{0, 1}, {1, 2}, {0, 2}}))
              .size() == 6);
    CHECK(enumerate_embeddings(graph(2, {{0, 1}}), graph(2, {})).empty());
    // results are lexicographically ordered and complete
    auto embs = enumerate_embeddings(graph(1, {}), graph(3, {}));
    REQUIRE(embs.size() == 3);
    CHECK(embs[0].map == std::vector<int>{0});
    CHECK(embs[2].map == std::vector<int>{2});
    // induced: the non-edge of the path never lands on an edge
    auto p3_into_triangle = enumerate_embeddings(
        graph(3, {{0, 1}, {1, 2}}), graph(3, {{0, 1}, {1, 2}, {0, 2}}));
    CHECK(p3_into_triangle.empty());
}

TEST_CASE("isomorphism checks") {
    CHECK(is_isomorphic(graph(3, {{0, 1}, {1, 2}}), graph(3, {{0, 2}, {2, 1}}))
              .has_value());
    CHECK(!is_isomorphic(graph(3, {{0, 1}, {1, 2}}),
                         graph(3, {{0, 1}, {1, 2}, {0, 2}}))
               .has_value());
    // two order-4 posets differing by one comparable pair
    FiniteStructure p1(order_sig(), 4, {{{0, 1}, {0, 2}, {0, 3}}});
    FiniteStructure p2(order_sig(), 4, {{{0, 1}, {0, 2}, {1, 2}}});
    CHECK(!is_isomorphic(p1, p2).has_value());
    CHECK(is_isomorphic(p1, p1).has_value());
}

TEST_CASE("isomorphism is an equivalence on random structures") {
    std::mt19937 rng(1234);
    std::vector<FiniteStructure> pool;
    for (int i = 0; i < 24; ++i) pool.push_back(random_structure(rng, 5));
    for (const FiniteStructure& a : pool) CHECK(is_isomorphic(a, a));
    for (const FiniteStructure& a : pool)
        for (const FiniteStructure& b : pool) {
            auto ab = is_isomorphic(a, b);
            auto ba = is_isomorphic(b, a);
            CHECK(ab.has_value() == ba.has_value());
            if (ab) {
                CHECK(is_induced_embedding(a, b, *ab));
                CHECK((a.canonical_key() == b.canonical_key()));
            }
        }
}

TEST_CASE("embedding composition yields embeddings") {
    std::mt19937 rng(99);
    for (int trial = 0; trial < 40; ++trial) {
        FiniteStructure a = random_structure(rng, 3);
        FiniteStructure b = random_structure(rng, 4);
        FiniteStructure c = random_structure(rng, 5);
        auto ab = first_embedding(a, b);
        auto bc = first_embedding(b, c);
        if (!ab || !bc) continue;
        Embedding comp;
        for (int v = 0; v < a.size(); ++v)
            comp.map.push_back(bc->map[ab->map[v]]);
        CHECK(is_induced_embedding(a, c, comp));
    }
}

TEST_CASE("linear orders 1..4 satisfy HP, JEP and AP at (2,4)") {
    StructureClass orders = orders_class(4, 2, 4);
    CHECK(check_class_property(orders, ClassProperty::hp).holds);
    CHECK(check_class_property(orders, ClassProperty::jep).holds);
    CHECK(check_class_property(orders, ClassProperty::ap).holds);
    // AP implies WAP at the same bounds
    CHECK(check_class_property(orders, ClassProperty::wap).holds);
    CHECK(check_class_property(orders, ClassProperty::local_wap).holds);
}

TEST_CASE("all graphs up to 4 satisfy JEP at (2,4) via disjoint unions") {
    StructureClass graphs = graphs_class(4, 2, 4);
    CHECK(check_class_property(graphs, ClassProperty::jep).holds);
    CHECK(check_class_property(graphs, ClassProperty::hp).holds);
}

TEST_CASE("max-degree-2 graphs fail AP; the edge/3-cycle/4-cycle span "
          "witnesses it") {
    StructureClass cls = graphs_class(4, 4, 4, /*max_degree=*/2);
    PropertyResult ap = check_class_property(cls, ClassProperty::ap);
    CHECK(!ap.holds);
    REQUIRE(ap.witness_structures.size() == 3);
    REQUIRE(ap.witness_embeddings.size() == 2);
    // the returned witness is a genuine non-amalgamable span
    CHECK(!find_amalgam(cls, ap.witness_structures[0], ap.witness_structures[1],
                        ap.witness_structures[2], ap.witness_embeddings[0],
                        ap.witness_embeddings[1]));

    // the documented span: A = edge {x,y}, B = 3-cycle, C = 4-cycle
    FiniteStructure edge = graph(2, {{0, 1}});
    FiniteStructure tri = graph(3, {{0, 1}, {1, 2}, {0, 2}});
    FiniteStructure cyc4 = graph(4, {{0, 1}, {1, 2}, {2, 3}, {3, 0}});
    auto f = first_embedding(edge, tri);
    auto g = first_embedding(edge, cyc4);
    REQUIRE(f);
    REQUIRE(g);
    // exhaustive amalgam search over the whole class finds nothing
    CHECK(!find_amalgam(cls, edge, tri, cyc4, *f, *g));
}

TEST_CASE("pair class construction") {
    // a single one-point structure gives exactly the empty pair and the
    // identity pair
    StructureClass pointcls =
        make_class(graph_sig(), {graph(1, {})}, 1, 1);
    auto pairs = build_pair_class(pointcls);
    REQUIRE(pairs.size() == 2);
    CHECK(pairs[0].domain.empty());
    CHECK(pairs[1].domain == std::vector<int>{0});
    CHECK(pairs[1].codomain == std::vector<int>{0});

    // linear orders <= 3 include the shifted pair <0<1<2, {0,1} -> {1,2}>
    StructureClass orders = orders_class(3, 2, 3);
    auto opairs = build_pair_class(orders);
    bool found = false;
    for (const PartialIsoPair& p : opairs) {
        if (p.ambient.size() == 3 && p.domain == std::vector<int>{0, 1} &&
            p.codomain == std::vector<int>{1, 2})
            found = true;
    }
    CHECK(found);

    // graph pairs up to 2: count against pairwise-isomorphism dedup
    StructureClass graphs2 = graphs_class(2, 2, 2);
    auto gpairs = build_pair_class(graphs2);
    std::vector<PartialIsoPair> reps;
    for (const FiniteStructure& m : graphs2.members) {
        const unsigned full = 1u << m.size();
        for (unsigned bm = 0; bm < full; ++bm)
            for (unsigned cm = 0; cm < full; ++cm) {
                if (__builtin_popcount(bm) != __builtin_popcount(cm)) continue;
                std::vector<int> dom, cod;
                for (int v = 0; v < m.size(); ++v) {
                    if (bm & (1u << v)) dom.push_back(v);
                    if (cm & (1u << v)) cod.push_back(v);
                }
                std::sort(cod.begin(), cod.end());
                do {
                    PartialIsoPair cand;
                    try {
                        cand = make_pair(m, dom, cod);
                    } catch (const ill_formed_pair_error&) {
                        continue;
                    }
                    bool iso_seen = false;
                    for (const PartialIsoPair& r : reps) {
                        if (r.ambient.size() != cand.ambient.size()) continue;
                        if (r.domain.size() != cand.domain.size()) continue;
                        auto a = pair_embeds(cand, r);
                        auto b = pair_embeds(r, cand);
                        if (a && b) { iso_seen = true; break; }
                    }
                    if (!iso_seen) reps.push_back(cand);
                } while (std::next_permutation(cod.begin(), cod.end()));
            }
    }
    CHECK(gpairs.size() == reps.size());
}

TEST_CASE("pair validation rejects non-isomorphisms") {
    // two points, unary P on exactly one: P-point cannot map to the plain one
    Signature sig{{{"P", 1}}};
    FiniteStructure two(sig, 2, {{{0}}});
    CHECK_THROWS_AS(make_pair(two, {0}, {1}), ill_formed_pair_error);
    CHECK_NOTHROW(make_pair(two, {0}, {0}));
    CHECK_NOTHROW(make_pair(two, {1}, {1}));
}

TEST_CASE("pair embedding on the chain example") {
    PartialIsoPair s = make_pair(chain(3), {0, 1}, {1, 2});
    PartialIsoPair t = make_pair(chain(5), {0, 1, 2}, {1, 2, 3});
    auto f = pair_embeds(s, t);
    REQUIRE(f);
    CHECK(f->map == std::vector<int>{0, 1, 2});

    CHECK(pair_embeds(s, s).has_value());
    CHECK(pair_embeds(t, t).has_value());

    // a pair whose psi fixes a point cannot embed into a fixed-point-free one
    PartialIsoPair fixing = make_pair(chain(2), {0}, {0});
    PartialIsoPair moving = make_pair(chain(2), {0}, {1});
    CHECK(!pair_embeds(fixing, moving).has_value());
}

TEST_CASE("JEP for pairs of linear orders") {
    StructureClass orders = orders_class(4, 2, 4);
    PropertyResult r = check_pair_property(orders, PairProperty::jep_fp);
    CHECK(r.holds);

    // at target bound 3 the identity pair and the shift pair cannot be joined
    StructureClass tight = orders_class(3, 2, 3);
    PropertyResult r2 = check_pair_property(tight, PairProperty::jep_fp);
    CHECK(!r2.holds);
    CHECK(r2.witness_pairs.size() == 2);
}

TEST_CASE("an engineered two-relation class fails pair JEP") {
    // one directed edge over marked nodes; the two opposite shifts along the
    // edge twist the direction against itself, and the class is too tight to
    // separate them
    Signature sig{{{"next", 2}, {"node", 1}}};
    FiniteStructure point(sig, 1, {{}, {{0}}});
    FiniteStructure edge(sig, 2, {{{0, 1}}, {{0}, {1}}});
    StructureClass cls = make_class(sig, {point, edge}, 2, 2);
    CHECK(check_class_property(cls, ClassProperty::hp).holds);
    CHECK(check_class_property(cls, ClassProperty::jep).holds);

    // the opposite shift pairs exist and are honest pairs
    CHECK_NOTHROW(make_pair(edge, {0}, {1}));
    CHECK_NOTHROW(make_pair(edge, {1}, {0}));
    PropertyResult r = check_pair_property(cls, PairProperty::jep_fp);
    CHECK(!r.holds);
    REQUIRE(r.witness_pairs.size() == 2);
}

TEST_CASE("chain construction for linear orders") {
    StructureClass orders = orders_class(4, 2, 4);
    ChainResult r0 = fraisse_chain(orders, 0);
    CHECK(r0.stages.size() == 1);
    CHECK(r0.stages[0] == orders.members[0]);

    ChainResult r = fraisse_chain(orders, 8);
    REQUIRE(r.stages.size() == 9);
    REQUIRE(r.chain.size() == 8);
    for (std::size_t t = 0; t + 1 < r.stages.size(); ++t)
        CHECK(is_induced_embedding(r.stages[t], r.stages[t + 1], r.chain[t]));
    for (int n = 1; n <= 4; ++n)
        CHECK(first_embedding(chain(n), r.stages.back()).has_value());
}

TEST_CASE("chain preconditions") {
    // orders without the 1-chain fail HP
    StructureClass broken =
        make_class(order_sig(), {chain(2), chain(3)}, 2, 3);
    CHECK_THROWS_AS(fraisse_chain(broken, 2), precondition_error);
}

TEST_CASE("chain for all graphs up to 3 approximates the random graph") {
    StructureClass graphs = graphs_class(3, 2, 3);
    ChainResult r = fraisse_chain(graphs, 10);
    for (std::size_t t = 0; t + 1 < r.stages.size(); ++t)
        CHECK(is_induced_embedding(r.stages[t], r.stages[t + 1], r.chain[t]));
    // every member embeds into the final stage
    for (const FiniteStructure& m : graphs.members)
        CHECK(first_embedding(m, r.stages.back()).has_value());
    // every scheduled one-point extension over a small substructure realized
    int ope = 0;
    for (const ChainTask& t : r.ledger) {
        if (t.kind != "one-point-extension") continue;
        if (t.anchor.size() > 2) continue;
        ++ope;
        CHECK(t.realized_at >= 0);
    }
    CHECK(ope > 0);
}

TEST_CASE("fraissefication of the 5-cycle with a rotation") {
    FiniteStructure c5 =
        graph(5, {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 0}});
    FraissefyResult r = fraissefy(c5, {{1, 2, 3, 4, 0}});
    CHECK(r.group.size() == 5);
    // the enriched structure keeps the universe and gains orbit relations
    CHECK(r.enriched.size() == 5);
    std::vector<std::vector<int>> autos = automorphisms(r.enriched);
    std::sort(autos.begin(), autos.end());
    CHECK(autos == r.group);   // reflections are excluded by orbit relations
    CHECK(check_ultrahomogeneous(r.enriched).ultrahomogeneous);
}

TEST_CASE("fraissefication with no generators makes everything definable") {
    FiniteStructure p3 = graph(3, {{0, 1}, {1, 2}});
    FraissefyResult r = fraissefy(p3, {});
    CHECK(r.group.size() == 1);
    CHECK(automorphisms(r.enriched).size() == 1);

    FraissefyResult rf = fraissefy(p3, {{2, 1, 0}});
    CHECK(rf.group.size() == 2);
    auto autos = automorphisms(rf.enriched);
    std::sort(autos.begin(), autos.end());
    CHECK(autos == rf.group);
}

TEST_CASE("fraissefication rejects non-automorphisms") {
    FiniteStructure p3 = graph(3, {{0, 1}, {1, 2}});
    CHECK_THROWS_AS(fraissefy(p3, {{1, 0, 2}}), not_automorphism_error);
    CHECK_THROWS_AS(fraissefy(p3, {{0, 0, 1}}), not_automorphism_error);
    try {
        fraissefy(p3, {{2, 1, 0}, {1, 0, 2}});
    } catch (const not_automorphism_error& e) {
        CHECK(e.generator_index() == 1);
    }
}

TEST_CASE("ultrahomogeneity checks") {
    FiniteStructure k3 = graph(3, {{0, 1}, {1, 2}, {0, 2}});
    CHECK(check_ultrahomogeneous(k3).ultrahomogeneous);

    FiniteStructure p3 = graph(3, {{0, 1}, {1, 2}});
    UltrahomogeneityResult u = check_ultrahomogeneous(p3);
    CHECK(!u.ultrahomogeneous);
    REQUIRE(u.witness_domain.size() == 1);
    // an endpoint maps to the midpoint but no automorphism does that
    CHECK(u.witness_domain == std::vector<int>{0});
    CHECK(u.witness_codomain == std::vector<int>{1});

    // fraissefication of any small structure is ultrahomogeneous
    FiniteStructure g = graph(4, {{0, 1}, {1, 2}});
    FraissefyResult r = fraissefy(g, automorphisms(g));
    CHECK(check_ultrahomogeneous(r.enriched).ultrahomogeneous);
}

TEST_CASE("class files round-trip byte-exactly on canonical form") {
    StructureClass orders = orders_class(3, 2, 3);
    std::string text = class_to_text(orders);
    StructureClass back = class_from_text(text);
    CHECK(class_to_text(back) == text);
    CHECK(back.members.size() == orders.members.size());
    CHECK(back.source_bound == 2);

    StructureClass graphs = graphs_class(3, 2, 3);
    std::string gt = class_to_text(graphs);
    CHECK(class_to_text(class_from_text(gt)) == gt);

    // loader rejects isomorphic duplicates and oversized arities
    CHECK_THROWS_AS(make_class(order_sig(),
                               {chain(2), FiniteStructure(order_sig(), 2,
                                                          {{{1, 0}}})},
                               1, 2),
                    validity_error);
    CHECK_THROWS_AS(
        class_from_text("{\"signature\":[{\"name\":\"R\",\"arity\":9}],"
                        "\"bounds\":{\"source\":1,\"target\":1},"
                        "\"structures\":[]}"),
        validity_error);
}
