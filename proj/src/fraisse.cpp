#include "bigmcg/fraisse.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <set>

#include "json.hpp"

#include "bigmcg/errors.hpp"

namespace bigmcg {

namespace {

constexpr std::size_t kSearchBudget = 5'000'000;
constexpr int kCanonicalSizeCap = 8;

using TupleList = std::vector<std::vector<int>>;

std::vector<int> apply_map(const std::vector<int>& map,
                           const std::vector<int>& tuple) {
    std::vector<int> out(tuple.size());
    for (std::size_t i = 0; i < tuple.size(); ++i) out[i] = map[tuple[i]];
    return out;
}

} // namespace

int Signature::index_of(const std::string& name) const {
    for (std::size_t i = 0; i < relations.size(); ++i)
        if (relations[i].name == name) return static_cast<int>(i);
    return -1;
}

FiniteStructure::FiniteStructure(Signature sig, int size,
                                 std::vector<TupleList> tuples)
    : sig_(std::move(sig)), size_(size), tuples_(std::move(tuples)) {
    if (tuples_.size() != sig_.relations.size())
        throw validity_error("structure has " + std::to_string(tuples_.size()) +
                             " tuple sets for " +
                             std::to_string(sig_.relations.size()) +
                             " relations");
    for (std::size_t r = 0; r < tuples_.size(); ++r) {
        for (const std::vector<int>& t : tuples_[r]) {
            if (static_cast<int>(t.size()) != sig_.relations[r].arity)
                throw validity_error("tuple arity mismatch in relation " +
                                     sig_.relations[r].name);
            for (int v : t)
                if (v < 0 || v >= size_)
                    throw validity_error("tuple entry out of universe in " +
                                         sig_.relations[r].name);
        }
        std::sort(tuples_[r].begin(), tuples_[r].end());
        tuples_[r].erase(std::unique(tuples_[r].begin(), tuples_[r].end()),
                         tuples_[r].end());
    }
}

bool FiniteStructure::has_tuple(int rel, const std::vector<int>& t) const {
    return std::binary_search(tuples_[rel].begin(), tuples_[rel].end(), t);
}

FiniteStructure FiniteStructure::induced(const std::vector<int>& subset) const {
    std::vector<int> back(size_, -1);
    for (std::size_t i = 0; i < subset.size(); ++i) back[subset[i]] = static_cast<int>(i);
    std::vector<TupleList> tuples(tuples_.size());
    for (std::size_t r = 0; r < tuples_.size(); ++r) {
        for (const std::vector<int>& t : tuples_[r]) {
            bool inside = true;
            for (int v : t)
                if (back[v] < 0) { inside = false; break; }
            if (inside) tuples[r].push_back(apply_map(back, t));
        }
    }
    return FiniteStructure(sig_, static_cast<int>(subset.size()),
                           std::move(tuples));
}

FiniteStructure FiniteStructure::relabelled(const std::vector<int>& perm) const {
    std::vector<TupleList> tuples(tuples_.size());
    for (std::size_t r = 0; r < tuples_.size(); ++r)
        for (const std::vector<int>& t : tuples_[r])
            tuples[r].push_back(apply_map(perm, t));
    return FiniteStructure(sig_, size_, std::move(tuples));
}

std::string FiniteStructure::serialize() const {
    std::string s = "n=" + std::to_string(size_);
    for (std::size_t r = 0; r < tuples_.size(); ++r) {
        s += ";" + sig_.relations[r].name + "=";
        for (const std::vector<int>& t : tuples_[r]) {
            s += "(";
            for (std::size_t i = 0; i < t.size(); ++i)
                s += (i ? "," : "") + std::to_string(t[i]);
            s += ")";
        }
    }
    return s;
}

std::string FiniteStructure::canonical_key() const {
    if (size_ > kCanonicalSizeCap)
        throw resource_error("canonical form limited to universes of size " +
                             std::to_string(kCanonicalSizeCap));
    std::vector<int> perm(size_);
    std::iota(perm.begin(), perm.end(), 0);
    std::string best;
    do {
        std::string s = relabelled(perm).serialize();
        if (best.empty() || s < best) best = std::move(s);
    } while (std::next_permutation(perm.begin(), perm.end()));
    return best.empty() ? serialize() : best;
}

bool FiniteStructure::operator==(const FiniteStructure& o) const {
    return sig_ == o.sig_ && size_ == o.size_ && tuples_ == o.tuples_;
}

// ------------------------------------------------------------ embeddings

namespace {

struct Incidence {
    // per vertex: list of (relation, tuple index)
    std::vector<std::vector<std::pair<int, int>>> at;

    explicit Incidence(const FiniteStructure& s) : at(s.size()) {
        for (std::size_t r = 0; r < s.signature().relations.size(); ++r) {
            const TupleList& ts = s.tuples(static_cast<int>(r));
            for (std::size_t ti = 0; ti < ts.size(); ++ti) {
                std::set<int> seen;
                for (int v : ts[ti])
                    if (seen.insert(v).second)
                        at[v].emplace_back(static_cast<int>(r),
                                           static_cast<int>(ti));
            }
        }
    }
};

struct EmbeddingSearch {
    const FiniteStructure& a;
    const FiniteStructure& b;
    Incidence ia;
    Incidence ib;
    std::vector<int> map;   // a-vertex -> b-vertex or -1
    std::vector<int> inv;   // b-vertex -> a-vertex or -1
    std::vector<Embedding>* out = nullptr;
    std::optional<Embedding> first;
    bool first_only = false;
    std::size_t budget = kSearchBudget;
    // degree profile per vertex and relation
    std::vector<std::vector<int>> prof_a, prof_b;

    EmbeddingSearch(const FiniteStructure& a_, const FiniteStructure& b_)
        : a(a_), b(b_), ia(a_), ib(b_) {
        map.assign(a.size(), -1);
        inv.assign(b.size(), -1);
        auto profile = [](const FiniteStructure& s) {
            std::vector<std::vector<int>> p(
                s.size(), std::vector<int>(s.signature().relations.size(), 0));
            for (std::size_t r = 0; r < s.signature().relations.size(); ++r)
                for (const std::vector<int>& t : s.tuples(static_cast<int>(r))) {
                    std::set<int> seen;
                    for (int v : t)
                        if (seen.insert(v).second) ++p[v][r];
                }
            return p;
        };
        prof_a = profile(a);
        prof_b = profile(b);
    }

    bool profile_ok(int av, int bv) const {
        for (std::size_t r = 0; r < prof_a[av].size(); ++r)
            if (prof_a[av][r] > prof_b[bv][r]) return false;
        return true;
    }

    // incremental induced check after assigning map[av] = bv
    bool consistent(int av, int bv) {
        for (const auto& [r, ti] : ia.at[av]) {
            const std::vector<int>& t = a.tuples(r)[ti];
            bool complete = true;
            for (int v : t)
                if (map[v] < 0) { complete = false; break; }
            if (complete && !b.has_tuple(r, apply_map(map, t))) return false;
        }
        for (const auto& [r, ti] : ib.at[bv]) {
            const std::vector<int>& t = b.tuples(r)[ti];
            bool inside = true;
            for (int v : t)
                if (inv[v] < 0) { inside = false; break; }
            if (inside && !a.has_tuple(r, apply_map(inv, t))) return false;
        }
        return true;
    }

    bool run(int av) {
        if (budget-- == 0) throw resource_error("embedding search budget");
        while (av < a.size() && map[av] >= 0) ++av;  // pre-assigned
        if (av == a.size()) {
            Embedding e{map};
            if (first_only) {
                first = std::move(e);
                return true;
            }
            out->push_back(std::move(e));
            return false;
        }
        for (int bv = 0; bv < b.size(); ++bv) {
            if (inv[bv] >= 0 || !profile_ok(av, bv)) continue;
            map[av] = bv;
            inv[bv] = av;
            if (consistent(av, bv) && run(av + 1)) return true;
            map[av] = -1;
            inv[bv] = -1;
        }
        return false;
    }

    bool seed(const std::vector<int>& partial) {
        if (partial.empty()) return true;
        for (int av = 0; av < a.size(); ++av) {
            int bv = partial[av];
            if (bv < 0) continue;
            if (bv >= b.size() || inv[bv] >= 0) return false;
            map[av] = bv;
            inv[bv] = av;
        }
        // validate all seeded assignments
        for (int av = 0; av < a.size(); ++av)
            if (map[av] >= 0 && !consistent(av, map[av])) return false;
        return true;
    }
};

} // namespace

bool is_induced_embedding(const FiniteStructure& a, const FiniteStructure& b,
                          const Embedding& e) {
    if (static_cast<int>(e.map.size()) != a.size()) return false;
    std::vector<int> inv(b.size(), -1);
    for (int v = 0; v < a.size(); ++v) {
        int w = e.map[v];
        if (w < 0 || w >= b.size() || inv[w] >= 0) return false;
        inv[w] = v;
    }
    for (std::size_t r = 0; r < a.signature().relations.size(); ++r) {
        for (const std::vector<int>& t : a.tuples(static_cast<int>(r)))
            if (!b.has_tuple(static_cast<int>(r), apply_map(e.map, t)))
                return false;
        for (const std::vector<int>& t : b.tuples(static_cast<int>(r))) {
            bool inside = true;
            for (int v : t)
                if (inv[v] < 0) { inside = false; break; }
            if (inside &&
                !a.has_tuple(static_cast<int>(r), apply_map(inv, t)))
                return false;
        }
    }
    return true;
}

std::vector<Embedding> enumerate_embeddings(const FiniteStructure& a,
                                            const FiniteStructure& b,
                                            const std::vector<int>& partial) {
    if (!(a.signature() == b.signature()))
        throw validity_error("embedding between different signatures");
    std::vector<Embedding> out;
    if (a.size() > b.size()) return out;
    EmbeddingSearch s(a, b);
    s.out = &out;
    if (!s.seed(partial)) return out;
    s.run(0);
    return out;
}

std::optional<Embedding> first_embedding(const FiniteStructure& a,
                                         const FiniteStructure& b,
                                         const std::vector<int>& partial) {
    if (!(a.signature() == b.signature()))
        throw validity_error("embedding between different signatures");
    if (a.size() > b.size()) return std::nullopt;
    EmbeddingSearch s(a, b);
    s.first_only = true;
    if (!s.seed(partial)) return std::nullopt;
    s.run(0);
    return s.first;
}

std::optional<Embedding> is_isomorphic(const FiniteStructure& a,
                                       const FiniteStructure& b) {
    if (a.size() != b.size()) return std::nullopt;
    return first_embedding(a, b);
}

std::vector<std::vector<int>> automorphisms(const FiniteStructure& k) {
    std::vector<std::vector<int>> out;
    for (const Embedding& e : enumerate_embeddings(k, k)) out.push_back(e.map);
    return out;
}

// ---------------------------------------------------------------- pairs

std::optional<int> PartialIsoPair::psi(int v) const {
    for (std::size_t i = 0; i < domain.size(); ++i)
        if (domain[i] == v) return codomain[i];
    return std::nullopt;
}

std::string PartialIsoPair::serialize() const {
    std::string s = ambient.serialize() + ";psi=";
    for (std::size_t i = 0; i < domain.size(); ++i) {
        if (i) s += ",";
        s += std::to_string(domain[i]) + ":" + std::to_string(codomain[i]);
    }
    return s;
}

std::string PartialIsoPair::canonical_key() const {
    std::vector<int> perm(ambient.size());
    std::iota(perm.begin(), perm.end(), 0);
    std::string best;
    do {
        FiniteStructure rs = ambient.relabelled(perm);
        std::vector<std::pair<int, int>> psi2;
        for (std::size_t i = 0; i < domain.size(); ++i)
            psi2.emplace_back(perm[domain[i]], perm[codomain[i]]);
        std::sort(psi2.begin(), psi2.end());
        std::string s = rs.serialize() + ";psi=";
        for (std::size_t i = 0; i < psi2.size(); ++i) {
            if (i) s += ",";
            s += std::to_string(psi2[i].first) + ":" +
                 std::to_string(psi2[i].second);
        }
        if (best.empty() || s < best) best = std::move(s);
    } while (std::next_permutation(perm.begin(), perm.end()));
    return best;
}

PartialIsoPair make_pair(FiniteStructure ambient, std::vector<int> domain,
                         std::vector<int> codomain) {
    if (domain.size() != codomain.size())
        throw ill_formed_pair_error("domain and codomain sizes differ");
    // sort by domain, keep psi alignment
    std::vector<std::size_t> idx(domain.size());
    std::iota(idx.begin(), idx.end(), 0);
    std::sort(idx.begin(), idx.end(),
              [&](std::size_t x, std::size_t y) { return domain[x] < domain[y]; });
    std::vector<int> d, c;
    for (std::size_t i : idx) {
        d.push_back(domain[i]);
        c.push_back(codomain[i]);
    }
    auto in_range = [&](int v) { return v >= 0 && v < ambient.size(); };
    for (std::size_t i = 0; i < d.size(); ++i) {
        if (!in_range(d[i]) || !in_range(c[i]))
            throw ill_formed_pair_error("psi refers outside the universe");
        if (i > 0 && d[i] == d[i - 1])
            throw ill_formed_pair_error("psi domain has repeats");
    }
    std::vector<int> csorted = c;
    std::sort(csorted.begin(), csorted.end());
    if (std::adjacent_find(csorted.begin(), csorted.end()) != csorted.end())
        throw ill_formed_pair_error("psi is not injective");
    // psi must be an isomorphism of induced substructures
    FiniteStructure db = ambient.induced(d);
    FiniteStructure cb = ambient.induced(csorted);
    std::vector<int> emb(d.size());
    for (std::size_t i = 0; i < d.size(); ++i) {
        auto pos = std::lower_bound(csorted.begin(), csorted.end(), c[i]) -
                   csorted.begin();
        emb[i] = static_cast<int>(pos);
    }
    if (!is_induced_embedding(db, cb, Embedding{emb}))
        throw ill_formed_pair_error(
            "psi does not preserve the induced relations");
    return PartialIsoPair{std::move(ambient), std::move(d), std::move(c)};
}

std::vector<Embedding> enumerate_pair_embeddings(const PartialIsoPair& s,
                                                 const PartialIsoPair& t) {
    std::vector<Embedding> out;
    for (const Embedding& f : enumerate_embeddings(s.ambient, t.ambient)) {
        bool ok = true;
        for (std::size_t i = 0; i < s.domain.size() && ok; ++i) {
            int fb = f.map[s.domain[i]];
            auto ft = t.psi(fb);
            // f(B) inside B' with psi'(f(b)) = f(psi(b))
            if (!ft || *ft != f.map[s.codomain[i]]) ok = false;
        }
        if (!ok) continue;
        // f(C) inside C'
        std::set<int> tcod(t.codomain.begin(), t.codomain.end());
        for (std::size_t i = 0; i < s.codomain.size() && ok; ++i)
            if (!tcod.count(f.map[s.codomain[i]])) ok = false;
        if (ok) out.push_back(f);
    }
    return out;
}

std::optional<Embedding> pair_embeds(const PartialIsoPair& s,
                                     const PartialIsoPair& t) {
    std::vector<Embedding> all = enumerate_pair_embeddings(s, t);
    if (all.empty()) return std::nullopt;
    return all.front();
}

// ---------------------------------------------------------------- classes

StructureClass make_class(Signature sig, std::vector<FiniteStructure> members,
                          int source_bound, int target_bound) {
    if (source_bound < 1 || target_bound < source_bound)
        throw validity_error("bounds must satisfy 1 <= source <= target");
    for (const FiniteStructure& m : members)
        if (!(m.signature() == sig))
            throw validity_error("class member over a different signature");
    std::vector<std::pair<std::string, FiniteStructure>> keyed;
    for (FiniteStructure& m : members)
        keyed.emplace_back(m.canonical_key(), std::move(m));
    std::sort(keyed.begin(), keyed.end(),
              [](const auto& x, const auto& y) {
                  if (x.second.size() != y.second.size())
                      return x.second.size() < y.second.size();
                  return x.first < y.first;
              });
    for (std::size_t i = 1; i < keyed.size(); ++i)
        if (keyed[i].first == keyed[i - 1].first)
            throw validity_error("class members " + std::to_string(i - 1) +
                                 " and " + std::to_string(i) +
                                 " are isomorphic");
    StructureClass cls;
    cls.sig = std::move(sig);
    cls.source_bound = source_bound;
    cls.target_bound = target_bound;
    for (auto& [key, m] : keyed) cls.members.push_back(std::move(m));
    return cls;
}

namespace {

std::vector<int> subset_from_mask(unsigned mask) {
    std::vector<int> out;
    for (int v = 0; mask; ++v, mask >>= 1)
        if (mask & 1) out.push_back(v);
    return out;
}

std::string describe(const FiniteStructure& s) { return s.serialize(); }

} // namespace

// ------------------------------------------------------- class properties

std::optional<AmalgamWitness> find_amalgam(const StructureClass& cls,
                                           const FiniteStructure& a,
                                           const FiniteStructure& b,
                                           const FiniteStructure& c,
                                           const Embedding& f,
                                           const Embedding& g) {
    for (std::size_t di = 0; di < cls.members.size(); ++di) {
        const FiniteStructure& d = cls.members[di];
        if (d.size() > cls.target_bound) continue;
        if (d.size() < b.size() || d.size() < c.size()) continue;
        for (const Embedding& fp : enumerate_embeddings(b, d)) {
            // g' is forced on g(A); search the rest
            std::vector<int> partial(c.size(), -1);
            bool ok = true;
            for (int v = 0; v < a.size(); ++v) {
                int cv = g.map[v];
                int want = fp.map[f.map[v]];
                if (partial[cv] >= 0 && partial[cv] != want) { ok = false; break; }
                partial[cv] = want;
            }
            if (!ok) continue;
            if (auto gp = first_embedding(c, d, partial))
                return AmalgamWitness{static_cast<int>(di), fp, *gp};
        }
    }
    return std::nullopt;
}

namespace {

// WAP body for a fixed start structure: find (T, e) such that every span of
// T over small structures amalgamates compatibly over the image of e.
struct WapOutcome {
    bool holds = false;
    std::string detail;
};

WapOutcome wap_clause(const StructureClass& cls, const FiniteStructure& s) {
    std::string first_failure;
    for (const FiniteStructure& t : cls.members) {
        if (t.size() > cls.target_bound || t.size() < s.size()) continue;
        for (const Embedding& e : enumerate_embeddings(s, t)) {
            bool body_ok = true;
            std::string failure;
            for (const FiniteStructure& t0 : cls.members) {
                if (!body_ok) break;
                if (t0.size() > cls.source_bound) continue;
                for (const FiniteStructure& t1 : cls.members) {
                    if (!body_ok) break;
                    if (t1.size() > cls.source_bound) continue;
                    for (const Embedding& f : enumerate_embeddings(t, t0)) {
                        if (!body_ok) break;
                        for (const Embedding& g : enumerate_embeddings(t, t1)) {
                            // need U, r, s' with r.f.e == s'.g.e on s
                            bool found = false;
                            for (const FiniteStructure& u : cls.members) {
                                if (u.size() > cls.target_bound) continue;
                                for (const Embedding& r :
                                     enumerate_embeddings(t0, u)) {
                                    std::vector<int> partial(t1.size(), -1);
                                    bool ok = true;
                                    for (int v = 0; v < s.size(); ++v) {
                                        int key = g.map[e.map[v]];
                                        int want = r.map[f.map[e.map[v]]];
                                        if (partial[key] >= 0 &&
                                            partial[key] != want) {
                                            ok = false;
                                            break;
                                        }
                                        partial[key] = want;
                                    }
                                    if (!ok) continue;
                                    if (first_embedding(t1, u, partial)) {
                                        found = true;
                                        break;
                                    }
                                }
                                if (found) break;
                            }
                            if (!found) {
                                body_ok = false;
                                failure = "span " + describe(t0) + " <- " +
                                          describe(t) + " -> " + describe(t1) +
                                          " has no compatible amalgam over the "
                                          "start image";
                                break;
                            }
                        }
                    }
                }
            }
            if (body_ok) return {true, "start " + describe(s) + " extends to " +
                                           describe(t)};
            if (first_failure.empty()) first_failure = failure;
        }
    }
    return {false, "start " + describe(s) + ": " + first_failure};
}

} // namespace

PropertyResult check_class_property(const StructureClass& cls,
                                    ClassProperty prop) {
    PropertyResult res;
    res.source_bound = cls.source_bound;
    res.target_bound = cls.target_bound;

    switch (prop) {
        case ClassProperty::hp: {
            std::set<std::string> keys;
            for (const FiniteStructure& m : cls.members)
                keys.insert(m.canonical_key());
            for (const FiniteStructure& m : cls.members) {
                for (unsigned mask = 1; mask < (1u << m.size()); ++mask) {
                    FiniteStructure sub = m.induced(subset_from_mask(mask));
                    if (!keys.count(sub.canonical_key())) {
                        res.holds = false;
                        res.detail = "substructure " + describe(sub) + " of " +
                                     describe(m) + " is not in the class";
                        res.witness_structures = {sub, m};
                        return res;
                    }
                }
            }
            res.holds = true;
            res.detail = "every induced substructure of a member is a member";
            return res;
        }

        case ClassProperty::jep: {
            for (const FiniteStructure& a : cls.members) {
                if (a.size() > cls.source_bound) continue;
                for (const FiniteStructure& b : cls.members) {
                    if (b.size() > cls.source_bound) continue;
                    bool found = false;
                    for (const FiniteStructure& c : cls.members) {
                        if (c.size() > cls.target_bound) continue;
                        if (first_embedding(a, c) && first_embedding(b, c)) {
                            found = true;
                            break;
                        }
                    }
                    if (!found) {
                        res.holds = false;
                        res.detail = "no member jointly embeds " + describe(a) +
                                     " and " + describe(b);
                        res.witness_structures = {a, b};
                        return res;
                    }
                }
            }
            res.holds = true;
            res.detail = "all pairs of small members jointly embed";
            return res;
        }

        case ClassProperty::ap: {
            for (const FiniteStructure& a : cls.members) {
                if (a.size() > cls.source_bound) continue;
                for (const FiniteStructure& b : cls.members) {
                    if (b.size() > cls.source_bound) continue;
                    for (const FiniteStructure& c : cls.members) {
                        if (c.size() > cls.source_bound) continue;
                        for (const Embedding& f : enumerate_embeddings(a, b)) {
                            for (const Embedding& g :
                                 enumerate_embeddings(a, c)) {
                                if (!find_amalgam(cls, a, b, c, f, g)) {
                                    res.holds = false;
                                    res.detail =
                                        "span " + describe(b) + " <- " +
                                        describe(a) + " -> " + describe(c) +
                                        " has no amalgam in the class";
                                    res.witness_structures = {a, b, c};
                                    res.witness_embeddings = {f, g};
                                    return res;
                                }
                            }
                        }
                    }
                }
            }
            res.holds = true;
            res.detail = "every span of small members amalgamates";
            return res;
        }

        case ClassProperty::wap: {
            for (const FiniteStructure& s : cls.members) {
                if (s.size() > cls.source_bound) continue;
                WapOutcome o = wap_clause(cls, s);
                if (!o.holds) {
                    res.holds = false;
                    res.detail = o.detail;
                    res.witness_structures = {s};
                    return res;
                }
            }
            res.holds = true;
            res.detail = "every small member has a weak-amalgamation extension";
            return res;
        }

        case ClassProperty::local_wap: {
            std::map<std::string, WapOutcome> cache;
            auto clause = [&](const FiniteStructure& b) -> const WapOutcome& {
                std::string key = b.serialize();
                auto it = cache.find(key);
                if (it == cache.end())
                    it = cache.emplace(key, wap_clause(cls, b)).first;
                return it->second;
            };
            std::string first_detail;
            for (const FiniteStructure& a : cls.members) {
                bool all = true;
                for (const FiniteStructure& b : cls.members) {
                    if (b.size() > cls.source_bound) continue;
                    if (!first_embedding(a, b)) continue;
                    const WapOutcome& o = clause(b);
                    if (!o.holds) {
                        if (first_detail.empty())
                            first_detail = "anchor " + describe(a) +
                                           " fails at " + o.detail;
                        all = false;
                        break;
                    }
                }
                if (all) {
                    res.holds = true;
                    res.detail = "anchor " + describe(a) +
                                 " satisfies the weak amalgamation clause on "
                                 "every member it embeds into";
                    res.witness_structures = {a};
                    return res;
                }
            }
            res.holds = false;
            res.detail = first_detail.empty() ? "no anchor works" : first_detail;
            return res;
        }
    }
    return res;
}

// ------------------------------------------------------------- pair class

std::vector<PartialIsoPair> build_pair_class(const StructureClass& cls) {
    std::vector<std::pair<std::string, PartialIsoPair>> keyed;
    std::set<std::string> seen;
    for (const FiniteStructure& m : cls.members) {
        if (m.size() > cls.target_bound) continue;
        const unsigned full = 1u << m.size();
        for (unsigned bmask = 0; bmask < full; ++bmask) {
            std::vector<int> domain = subset_from_mask(bmask);
            for (unsigned cmask = 0; cmask < full; ++cmask) {
                if (__builtin_popcount(cmask) !=
                    __builtin_popcount(bmask))
                    continue;
                std::vector<int> cod_base = subset_from_mask(cmask);
                std::vector<int> codomain = cod_base;
                std::sort(codomain.begin(), codomain.end());
                do {
                    PartialIsoPair p;
                    try {
                        p = make_pair(m, domain, codomain);
                    } catch (const ill_formed_pair_error&) {
                        continue;
                    }
                    std::string key = p.canonical_key();
                    if (seen.insert(key).second)
                        keyed.emplace_back(std::move(key), std::move(p));
                } while (std::next_permutation(codomain.begin(),
                                               codomain.end()));
            }
        }
    }
    std::sort(keyed.begin(), keyed.end(), [](const auto& x, const auto& y) {
        if (x.second.ambient.size() != y.second.ambient.size())
            return x.second.ambient.size() < y.second.ambient.size();
        return x.first < y.first;
    });
    std::vector<PartialIsoPair> out;
    for (auto& [k, p] : keyed) out.push_back(std::move(p));
    return out;
}

namespace {

// The joint pair for JEP over F_p: psi'' on f(B) u f'(B') must be a
// well-defined induced isomorphism.
bool joint_pair_ok(const FiniteStructure& amb, const PartialIsoPair& s,
                   const Embedding& f, const PartialIsoPair& s2,
                   const Embedding& f2) {
    std::map<int, int> psi;
    auto add = [&](int key, int val) {
        auto it = psi.find(key);
        if (it != psi.end()) return it->second == val;
        psi[key] = val;
        return true;
    };
    for (std::size_t i = 0; i < s.domain.size(); ++i)
        if (!add(f.map[s.domain[i]], f.map[s.codomain[i]])) return false;
    for (std::size_t i = 0; i < s2.domain.size(); ++i)
        if (!add(f2.map[s2.domain[i]], f2.map[s2.codomain[i]])) return false;
    std::set<int> values;
    for (const auto& [k, v] : psi)
        if (!values.insert(v).second) return false;
    // induced isomorphism check on the joined map
    std::vector<int> dom, cod;
    for (const auto& [k, v] : psi) dom.push_back(k);
    std::sort(dom.begin(), dom.end());
    for (int k : dom) cod.push_back(psi[k]);
    std::vector<int> cod_sorted = cod;
    std::sort(cod_sorted.begin(), cod_sorted.end());
    FiniteStructure di = amb.induced(dom);
    FiniteStructure ci = amb.induced(cod_sorted);
    std::vector<int> emb(dom.size());
    for (std::size_t i = 0; i < dom.size(); ++i)
        emb[i] = static_cast<int>(
            std::lower_bound(cod_sorted.begin(), cod_sorted.end(), cod[i]) -
            cod_sorted.begin());
    return is_induced_embedding(di, ci, Embedding{emb});
}

WapOutcome pair_wap_clause(const StructureClass& cls,
                           const std::vector<PartialIsoPair>& pairs,
                           const PartialIsoPair& s) {
    std::string first_failure;
    for (const PartialIsoPair& t : pairs) {
        if (t.ambient.size() > cls.target_bound ||
            t.ambient.size() < s.ambient.size())
            continue;
        for (const Embedding& e : enumerate_pair_embeddings(s, t)) {
            bool body_ok = true;
            std::string failure;
            for (const PartialIsoPair& t0 : pairs) {
                if (!body_ok) break;
                if (t0.ambient.size() > cls.source_bound) continue;
                for (const PartialIsoPair& t1 : pairs) {
                    if (!body_ok) break;
                    if (t1.ambient.size() > cls.source_bound) continue;
                    for (const Embedding& f : enumerate_pair_embeddings(t, t0)) {
                        if (!body_ok) break;
                        for (const Embedding& g :
                             enumerate_pair_embeddings(t, t1)) {
                            bool found = false;
                            for (const PartialIsoPair& u : pairs) {
                                if (u.ambient.size() > cls.target_bound)
                                    continue;
                                for (const Embedding& r :
                                     enumerate_pair_embeddings(t0, u)) {
                                    for (const Embedding& sp :
                                         enumerate_pair_embeddings(t1, u)) {
                                        bool same = true;
                                        for (int v = 0;
                                             v < s.ambient.size(); ++v) {
                                            if (r.map[f.map[e.map[v]]] !=
                                                sp.map[g.map[e.map[v]]]) {
                                                same = false;
                                                break;
                                            }
                                        }
                                        if (same) { found = true; break; }
                                    }
                                    if (found) break;
                                }
                                if (found) break;
                            }
                            if (!found) {
                                body_ok = false;
                                failure = "pair span from " + t.serialize() +
                                          " fails";
                                break;
                            }
                        }
                    }
                }
            }
            if (body_ok)
                return {true, "pair " + s.serialize() + " extends to " +
                                  t.serialize()};
            if (first_failure.empty()) first_failure = failure;
        }
    }
    return {false, "pair " + s.serialize() + ": " + first_failure};
}

} // namespace

PropertyResult check_pair_property(const StructureClass& cls,
                                   PairProperty prop) {
    PropertyResult res;
    res.source_bound = cls.source_bound;
    res.target_bound = cls.target_bound;
    std::vector<PartialIsoPair> pairs = build_pair_class(cls);

    switch (prop) {
        case PairProperty::jep_fp: {
            for (const PartialIsoPair& s : pairs) {
                if (s.ambient.size() > cls.source_bound) continue;
                for (const PartialIsoPair& s2 : pairs) {
                    if (s2.ambient.size() > cls.source_bound) continue;
                    bool found = false;
                    for (const FiniteStructure& amb : cls.members) {
                        if (amb.size() > cls.target_bound) continue;
                        for (const Embedding& f :
                             enumerate_embeddings(s.ambient, amb)) {
                            for (const Embedding& f2 :
                                 enumerate_embeddings(s2.ambient, amb)) {
                                if (joint_pair_ok(amb, s, f, s2, f2)) {
                                    found = true;
                                    break;
                                }
                            }
                            if (found) break;
                        }
                        if (found) break;
                    }
                    if (!found) {
                        res.holds = false;
                        res.detail = "pairs " + s.serialize() + " and " +
                                     s2.serialize() +
                                     " have no joint embedding";
                        res.witness_pairs = {s, s2};
                        return res;
                    }
                }
            }
            res.holds = true;
            res.detail = "all small pairs jointly embed";
            return res;
        }

        case PairProperty::wap_fp: {
            for (const PartialIsoPair& s : pairs) {
                if (s.ambient.size() > cls.source_bound) continue;
                WapOutcome o = pair_wap_clause(cls, pairs, s);
                if (!o.holds) {
                    res.holds = false;
                    res.detail = o.detail;
                    res.witness_pairs = {s};
                    return res;
                }
            }
            res.holds = true;
            res.detail = "every small pair has a weak-amalgamation extension";
            return res;
        }

        case PairProperty::local_wap_fp: {
            std::map<std::string, WapOutcome> cache;
            auto clause = [&](const PartialIsoPair& b) -> const WapOutcome& {
                std::string key = b.serialize();
                auto it = cache.find(key);
                if (it == cache.end())
                    it = cache.emplace(key, pair_wap_clause(cls, pairs, b)).first;
                return it->second;
            };
            std::string first_detail;
            for (const PartialIsoPair& a : pairs) {
                bool all = true;
                for (const PartialIsoPair& b : pairs) {
                    if (b.ambient.size() > cls.source_bound) continue;
                    if (!pair_embeds(a, b)) continue;
                    const WapOutcome& o = clause(b);
                    if (!o.holds) {
                        if (first_detail.empty())
                            first_detail = "anchor " + a.serialize() +
                                           " fails at " + o.detail;
                        all = false;
                        break;
                    }
                }
                if (all) {
                    res.holds = true;
                    res.detail = "anchor " + a.serialize() + " works";
                    res.witness_pairs = {a};
                    return res;
                }
            }
            res.holds = false;
            res.detail = first_detail.empty() ? "no anchor works" : first_detail;
            return res;
        }
    }
    return res;
}

// ------------------------------------------------------------------ chain

namespace {

constexpr int kScheduleHorizon = 3;       // schedule tasks from stages < this
constexpr std::size_t kMaxTasks = 96;
constexpr int kRealizationsPerStep = 16;

FiniteStructure disjoint_union(const FiniteStructure& a,
                               const FiniteStructure& b) {
    std::vector<TupleList> tuples;
    for (std::size_t r = 0; r < a.signature().relations.size(); ++r) {
        TupleList ts = a.tuples(static_cast<int>(r));
        for (std::vector<int> t : b.tuples(static_cast<int>(r))) {
            for (int& v : t) v += a.size();
            ts.push_back(std::move(t));
        }
        tuples.push_back(std::move(ts));
    }
    return FiniteStructure(a.signature(), a.size() + b.size(),
                           std::move(tuples));
}

// Glue `ext` onto `base`: anchor[i] in base is identified with
// anchor_into_ext.map[i] in ext; other ext vertices become new.
struct FreeAmalgam {
    FiniteStructure result;
    Embedding base_embedding;
    std::vector<int> ext_vertex_map;  // ext vertex -> result vertex
};

FreeAmalgam free_amalgam(const FiniteStructure& base,
                         const FiniteStructure& ext,
                         const std::vector<int>& anchor,
                         const Embedding& anchor_into_ext) {
    std::vector<int> ext_map(ext.size(), -1);
    for (std::size_t i = 0; i < anchor.size(); ++i)
        ext_map[anchor_into_ext.map[i]] = anchor[i];
    int next = base.size();
    for (int v = 0; v < ext.size(); ++v)
        if (ext_map[v] < 0) ext_map[v] = next++;
    std::vector<TupleList> tuples;
    for (std::size_t r = 0; r < base.signature().relations.size(); ++r) {
        TupleList ts = base.tuples(static_cast<int>(r));
        for (const std::vector<int>& t : ext.tuples(static_cast<int>(r)))
            ts.push_back(apply_map(ext_map, t));
        tuples.push_back(std::move(ts));
    }
    FreeAmalgam out{FiniteStructure(base.signature(), next, std::move(tuples)),
                    Embedding{}, ext_map};
    out.base_embedding.map.resize(base.size());
    std::iota(out.base_embedding.map.begin(), out.base_embedding.map.end(), 0);
    return out;
}

void schedule_tasks(const StructureClass& cls, const FiniteStructure& stage,
                    int stage_index, std::vector<ChainTask>& ledger) {
    // one-point extensions over small substructures
    for (unsigned mask = 1; mask < (1u << std::min(stage.size(), 20)); ++mask) {
        if (ledger.size() >= kMaxTasks) return;
        std::vector<int> anchor = subset_from_mask(mask);
        if (static_cast<int>(anchor.size()) > cls.source_bound) continue;
        FiniteStructure a0 = stage.induced(anchor);
        for (const FiniteStructure& e : cls.members) {
            if (e.size() != a0.size() + 1) continue;
            for (const Embedding& iota : enumerate_embeddings(a0, e)) {
                if (ledger.size() >= kMaxTasks) return;
                ChainTask task;
                task.kind = "one-point-extension";
                task.scheduled_at = stage_index;
                task.description = "extend " + a0.serialize() + " at [" +
                                   [&] {
                                       std::string s;
                                       for (std::size_t i = 0; i < anchor.size(); ++i)
                                           s += (i ? "," : "") +
                                                std::to_string(anchor[i]);
                                       return s;
                                   }() +
                                   "] to " + e.serialize();
                task.anchor = anchor;
                task.extension = e;
                task.anchor_into_extension = iota;
                ledger.push_back(std::move(task));
            }
        }
    }
    // partial isomorphisms between substructures, extended by one point
    for (unsigned dmask = 1; dmask < (1u << std::min(stage.size(), 20)); ++dmask) {
        if (ledger.size() >= kMaxTasks) return;
        std::vector<int> dom = subset_from_mask(dmask);
        if (static_cast<int>(dom.size()) > cls.source_bound) continue;
        if (static_cast<int>(dom.size()) >= stage.size()) continue;
        // one extra point outside the domain
        int z = 0;
        while (std::find(dom.begin(), dom.end(), z) != dom.end()) ++z;
        if (z >= stage.size()) continue;
        std::vector<int> dom_z = dom;
        dom_z.push_back(z);
        std::sort(dom_z.begin(), dom_z.end());
        FiniteStructure a0 = stage.induced(dom);
        FiniteStructure ext = stage.induced(dom_z);
        // iota: a0 -> ext via positions of dom inside dom_z
        Embedding iota;
        for (int v : dom)
            iota.map.push_back(static_cast<int>(
                std::lower_bound(dom_z.begin(), dom_z.end(), v) -
                dom_z.begin()));
        for (unsigned cmask = 1; cmask < (1u << std::min(stage.size(), 20));
             ++cmask) {
            if (__builtin_popcount(cmask) != static_cast<int>(dom.size()))
                continue;
            std::vector<int> cod = subset_from_mask(cmask);
            FiniteStructure c0 = stage.induced(cod);
            for (const Embedding& phi : enumerate_embeddings(a0, c0)) {
                if (ledger.size() >= kMaxTasks) return;
                // task: find an extension of the image of phi matching ext
                std::vector<int> image;
                for (std::size_t i = 0; i < dom.size(); ++i)
                    image.push_back(cod[phi.map[i]]);
                ChainTask task;
                task.kind = "partial-iso-extension";
                task.scheduled_at = stage_index;
                task.description =
                    "extend the isomorphic image of " + a0.serialize() +
                    " by one point matching " + ext.serialize();
                task.anchor = image;  // anchored at the codomain side
                task.extension = ext;
                task.anchor_into_extension = iota;
                ledger.push_back(std::move(task));
            }
        }
    }
}

} // namespace

ChainResult fraisse_chain(const StructureClass& cls, int steps) {
    if (steps < 0) throw precondition_error("steps must be >= 0");
    if (cls.members.empty()) throw precondition_error("empty class");
    PropertyResult hp = check_class_property(cls, ClassProperty::hp);
    if (!hp.holds)
        throw precondition_error("class fails the hereditary property: " +
                                 hp.detail);
    PropertyResult jep = check_class_property(cls, ClassProperty::jep);
    if (!jep.holds)
        throw precondition_error("class fails joint embedding: " + jep.detail);
    bool ap_holds = check_class_property(cls, ClassProperty::ap).holds;

    ChainResult result;
    result.stages.push_back(cls.members[0]);
    if (ap_holds)
        schedule_tasks(cls, result.stages[0], 0, result.ledger);

    for (int m = 1; m <= steps; ++m) {
        const FiniteStructure& prev = result.stages.back();
        const FiniteStructure& next_member =
            cls.members[(m - 1) % cls.members.size()];

        FiniteStructure stage = prev;
        Embedding into_stage;
        into_stage.map.resize(prev.size());
        std::iota(into_stage.map.begin(), into_stage.map.end(), 0);

        // joint embedding with the next enumerated member
        bool joined = false;
        for (const FiniteStructure& c : cls.members) {
            if (c.size() > cls.target_bound) continue;
            auto e1 = first_embedding(prev, c);
            if (!e1) continue;
            if (!first_embedding(next_member, c)) continue;
            stage = c;
            into_stage = *e1;
            joined = true;
            break;
        }
        if (!joined && !first_embedding(next_member, prev)) {
            FiniteStructure u = disjoint_union(prev, next_member);
            stage = u;
            // inclusion of prev
            into_stage.map.resize(prev.size());
            std::iota(into_stage.map.begin(), into_stage.map.end(), 0);
        }

        // track pending anchors through the new embedding
        auto track = [&](ChainTask& t) {
            if (t.realized_at >= 0) return;
            for (int& v : t.anchor) v = into_stage.map[v];
        };
        for (ChainTask& t : result.ledger) track(t);

        // realize pending tasks
        int done = 0;
        for (ChainTask& t : result.ledger) {
            if (t.realized_at >= 0 || done >= kRealizationsPerStep) continue;
            std::vector<int> partial(t.extension.size(), -1);
            for (std::size_t i = 0; i < t.anchor.size(); ++i)
                partial[t.anchor_into_extension.map[i]] = t.anchor[i];
            if (first_embedding(t.extension, stage, partial)) {
                t.realized_at = m;
                t.mode = "in-place";
                ++done;
                continue;
            }
            // member amalgam of (stage, extension) over the anchor
            FiniteStructure a0 = stage.induced(t.anchor);
            // re-express iota relative to sorted anchor
            std::vector<int> sorted_anchor = t.anchor;
            std::sort(sorted_anchor.begin(), sorted_anchor.end());
            Embedding iota;
            iota.map.resize(t.anchor.size());
            Embedding g0;
            g0.map.resize(t.anchor.size());
            for (std::size_t i = 0; i < sorted_anchor.size(); ++i) {
                auto at = std::find(t.anchor.begin(), t.anchor.end(),
                                    sorted_anchor[i]) -
                          t.anchor.begin();
                iota.map[i] = t.anchor_into_extension.map[at];
                g0.map[i] = sorted_anchor[i];
            }
            FiniteStructure a0s = stage.induced(sorted_anchor);
            bool amalgamated = false;
            if (auto w = find_amalgam(cls, a0s, t.extension, stage, iota, g0)) {
                const FiniteStructure& d = cls.members[w->member_index];
                for (ChainTask& t2 : result.ledger)
                    if (t2.realized_at < 0)
                        for (int& v : t2.anchor) v = w->into_c.map[v];
                for (int& v : into_stage.map) v = w->into_c.map[v];
                stage = d;
                t.realized_at = m;
                t.mode = "member-amalgam";
                amalgamated = true;
            }
            if (!amalgamated) {
                FreeAmalgam fa =
                    free_amalgam(stage, t.extension, sorted_anchor, iota);
                stage = fa.result;
                t.realized_at = m;
                t.mode = "free-amalgam";
            }
            ++done;
        }

        if (ap_holds && m < kScheduleHorizon)
            schedule_tasks(cls, stage, m, result.ledger);

        result.chain.push_back(into_stage);
        result.stages.push_back(stage);
    }
    return result;
}

// -------------------------------------------------------------- fraissefy

FraissefyResult fraissefy(const FiniteStructure& k,
                          const std::vector<std::vector<int>>& generators,
                          int max_size) {
    if (k.size() > max_size)
        throw resource_error("fraissefication limited to universes of size " +
                             std::to_string(max_size));
    const int n = k.size();
    for (std::size_t gi = 0; gi < generators.size(); ++gi) {
        const std::vector<int>& g = generators[gi];
        if (static_cast<int>(g.size()) != n)
            throw not_automorphism_error("permutation length mismatch",
                                         static_cast<int>(gi));
        std::vector<bool> seen(n, false);
        for (int v : g) {
            if (v < 0 || v >= n || seen[v])
                throw not_automorphism_error("not a permutation",
                                             static_cast<int>(gi));
            seen[v] = true;
        }
        if (!is_induced_embedding(k, k, Embedding{g}))
            throw not_automorphism_error("does not preserve the relations",
                                         static_cast<int>(gi));
    }

    // close under composition
    std::vector<int> ident(n);
    std::iota(ident.begin(), ident.end(), 0);
    std::set<std::vector<int>> group{ident};
    std::vector<std::vector<int>> frontier{ident};
    while (!frontier.empty()) {
        std::vector<std::vector<int>> next;
        for (const std::vector<int>& g : frontier) {
            for (const std::vector<int>& h : generators) {
                std::vector<int> gh(n);
                for (int v = 0; v < n; ++v) gh[v] = h[g[v]];
                if (group.insert(gh).second) next.push_back(std::move(gh));
            }
        }
        frontier = std::move(next);
    }

    // orbit relations for every arity up to |K|
    Signature sig = k.signature();
    std::vector<TupleList> tuples;
    for (std::size_t r = 0; r < sig.relations.size(); ++r)
        tuples.push_back(k.tuples(static_cast<int>(r)));

    for (int arity = 1; arity <= n; ++arity) {
        std::size_t total = 1;
        for (int i = 0; i < arity; ++i) total *= static_cast<std::size_t>(n);
        std::set<std::vector<int>> assigned;
        int orbit_index = 0;
        std::vector<int> tuple(arity, 0);
        for (std::size_t count = 0; count < total; ++count) {
            if (!assigned.count(tuple)) {
                TupleList orbit;
                for (const std::vector<int>& g : group) {
                    std::vector<int> img = apply_map(g, tuple);
                    if (assigned.insert(img).second) orbit.push_back(img);
                }
                std::sort(orbit.begin(), orbit.end());
                sig.relations.push_back(
                    {"orb" + std::to_string(arity) + "_" +
                         std::to_string(orbit_index),
                     arity});
                tuples.push_back(std::move(orbit));
                ++orbit_index;
            }
            // next tuple, lexicographic
            for (int i = arity - 1; i >= 0; --i) {
                if (++tuple[i] < n) break;
                tuple[i] = 0;
            }
        }
    }

    FraissefyResult result{FiniteStructure(sig, n, std::move(tuples)),
                           std::vector<std::vector<int>>(group.begin(),
                                                         group.end())};
    return result;
}

UltrahomogeneityResult check_ultrahomogeneous(const FiniteStructure& k,
                                              int max_size) {
    if (k.size() > max_size)
        throw resource_error("ultrahomogeneity check limited to size " +
                             std::to_string(max_size));
    std::vector<std::vector<int>> autos = automorphisms(k);
    const unsigned full = 1u << k.size();
    for (unsigned dmask = 1; dmask < full; ++dmask) {
        std::vector<int> dom = subset_from_mask(dmask);
        FiniteStructure di = k.induced(dom);
        for (unsigned cmask = 1; cmask < full; ++cmask) {
            if (__builtin_popcount(cmask) != __builtin_popcount(dmask))
                continue;
            std::vector<int> cod = subset_from_mask(cmask);
            FiniteStructure ci = k.induced(cod);
            for (const Embedding& phi : enumerate_embeddings(di, ci)) {
                bool extendable = false;
                for (const std::vector<int>& h : autos) {
                    bool match = true;
                    for (std::size_t i = 0; i < dom.size(); ++i)
                        if (h[dom[i]] != cod[phi.map[i]]) {
                            match = false;
                            break;
                        }
                    if (match) { extendable = true; break; }
                }
                if (!extendable) {
                    UltrahomogeneityResult r;
                    r.ultrahomogeneous = false;
                    r.witness_domain = dom;
                    for (std::size_t i = 0; i < dom.size(); ++i)
                        r.witness_codomain.push_back(cod[phi.map[i]]);
                    return r;
                }
            }
        }
    }
    return UltrahomogeneityResult{true, {}, {}};
}

// ------------------------------------------------------------ text formats

namespace {

using ordered_json = nlohmann::ordered_json;

ordered_json structure_json(const FiniteStructure& s) {
    ordered_json rels = ordered_json::object();
    for (std::size_t r = 0; r < s.signature().relations.size(); ++r) {
        ordered_json ts = ordered_json::array();
        for (const std::vector<int>& t : s.tuples(static_cast<int>(r)))
            ts.push_back(t);
        rels[s.signature().relations[r].name] = ts;
    }
    return ordered_json{{"size", s.size()}, {"relations", rels}};
}

Signature signature_from_json(const ordered_json& j, int max_arity = 4) {
    Signature sig;
    std::set<std::string> names;
    for (const auto& r : j) {
        Relation rel{r.at("name").get<std::string>(), r.at("arity").get<int>()};
        if (rel.arity < 1 || rel.arity > max_arity)
            throw validity_error("relation " + rel.name +
                                 " has arity outside 1.." +
                                 std::to_string(max_arity));
        if (!names.insert(rel.name).second)
            throw validity_error("duplicate relation name " + rel.name);
        sig.relations.push_back(std::move(rel));
    }
    return sig;
}

ordered_json signature_json(const Signature& sig) {
    ordered_json out = ordered_json::array();
    for (const Relation& r : sig.relations)
        out.push_back(ordered_json{{"name", r.name}, {"arity", r.arity}});
    return out;
}

FiniteStructure structure_from_json(const Signature& sig,
                                    const ordered_json& j) {
    int size = j.at("size").get<int>();
    if (size < 0 || size > 32) throw validity_error("structure size out of range");
    std::vector<TupleList> tuples(sig.relations.size());
    if (j.contains("relations")) {
        for (const auto& [name, ts] : j.at("relations").items()) {
            int r = sig.index_of(name);
            if (r < 0) throw validity_error("unknown relation " + name);
            for (const auto& t : ts)
                tuples[r].push_back(t.get<std::vector<int>>());
        }
    }
    return FiniteStructure(sig, size, std::move(tuples));
}

} // namespace

std::string class_to_text(const StructureClass& cls) {
    ordered_json j;
    j["signature"] = signature_json(cls.sig);
    j["bounds"] = ordered_json{{"source", cls.source_bound},
                               {"target", cls.target_bound}};
    ordered_json structs = ordered_json::array();
    for (const FiniteStructure& m : cls.members)
        structs.push_back(structure_json(m));
    j["structures"] = structs;
    return j.dump(2) + "\n";
}

StructureClass class_from_text(const std::string& text) {
    ordered_json j;
    try {
        j = ordered_json::parse(text);
    } catch (const ordered_json::parse_error& e) {
        throw syntax_error(e.what(), 1, 1);
    }
    try {
        Signature sig = signature_from_json(j.at("signature"));
        int sb = j.at("bounds").at("source").get<int>();
        int tb = j.at("bounds").at("target").get<int>();
        std::vector<FiniteStructure> members;
        for (const auto& s : j.at("structures"))
            members.push_back(structure_from_json(sig, s));
        return make_class(std::move(sig), std::move(members), sb, tb);
    } catch (const ordered_json::exception& e) {
        throw validity_error(std::string("malformed class file: ") + e.what());
    }
}

std::string structure_to_text(const FiniteStructure& s) {
    ordered_json j;
    j["signature"] = signature_json(s.signature());
    j["structure"] = structure_json(s);
    return j.dump(2) + "\n";
}

FiniteStructure structure_from_text(const std::string& text) {
    ordered_json j;
    try {
        j = ordered_json::parse(text);
    } catch (const ordered_json::parse_error& e) {
        throw syntax_error(e.what(), 1, 1);
    }
    try {
        Signature sig = signature_from_json(j.at("signature"),
                                            /*max_arity=*/32);
        return structure_from_json(sig, j.at("structure"));
    } catch (const ordered_json::exception& e) {
        throw validity_error(std::string("malformed structure file: ") +
                             e.what());
    }
}

std::vector<std::vector<int>> permutations_from_text(const std::string& text) {
    ordered_json j;
    try {
        j = ordered_json::parse(text);
    } catch (const ordered_json::parse_error& e) {
        throw syntax_error(e.what(), 1, 1);
    }
    try {
        std::vector<std::vector<int>> out;
        for (const auto& g : j.at("generators"))
            out.push_back(g.get<std::vector<int>>());
        return out;
    } catch (const ordered_json::exception& e) {
        throw validity_error(std::string("malformed permutation file: ") +
                             e.what());
    }
}

} // namespace bigmcg
