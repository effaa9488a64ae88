#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace bigmcg {

struct Relation {
    std::string name;
    int arity = 1;
    bool operator==(const Relation& o) const {
        return name == o.name && arity == o.arity;
    }
};

struct Signature {
    std::vector<Relation> relations;
    bool operator==(const Signature& o) const {
        return relations == o.relations;
    }
    int index_of(const std::string& name) const;
};

// Finite relational structure with universe {0, ..., size-1}. Tuple sets are
// stored sorted and deduplicated, so equal structures compare equal.
class FiniteStructure {
public:
    FiniteStructure() = default;
    FiniteStructure(Signature sig, int size,
                    std::vector<std::vector<std::vector<int>>> tuples);

    const Signature& signature() const { return sig_; }
    int size() const { return size_; }
    const std::vector<std::vector<int>>& tuples(int rel) const {
        return tuples_[rel];
    }
    bool has_tuple(int rel, const std::vector<int>& t) const;

    // Substructure induced on `subset` (ascending), relabelled to 0..k-1.
    FiniteStructure induced(const std::vector<int>& subset) const;
    FiniteStructure relabelled(const std::vector<int>& perm) const;

    // Lexicographically minimal serialization over all permutations of the
    // universe; equal keys <=> isomorphic.
    std::string canonical_key() const;
    std::string serialize() const;

    bool operator==(const FiniteStructure& o) const;

private:
    Signature sig_;
    int size_ = 0;
    std::vector<std::vector<std::vector<int>>> tuples_;
};

// Injective relation-preserving map onto an induced substructure; map[v] is
// the image of source vertex v.
struct Embedding {
    std::vector<int> map;
    bool operator==(const Embedding& o) const { return map == o.map; }
};

bool is_induced_embedding(const FiniteStructure& a, const FiniteStructure& b,
                          const Embedding& e);

// Complete, lexicographically ordered relative to the map vector. `partial`
// can pre-assign images (-1 for free vertices).
std::vector<Embedding> enumerate_embeddings(const FiniteStructure& a,
                                            const FiniteStructure& b,
                                            const std::vector<int>& partial = {});
std::optional<Embedding> first_embedding(const FiniteStructure& a,
                                         const FiniteStructure& b,
                                         const std::vector<int>& partial = {});
std::optional<Embedding> is_isomorphic(const FiniteStructure& a,
                                       const FiniteStructure& b);

std::vector<std::vector<int>> automorphisms(const FiniteStructure& k);

// <A, psi: B -> C>: psi maps domain[i] to codomain[i] and is an isomorphism
// of the induced substructures.
struct PartialIsoPair {
    FiniteStructure ambient;
    std::vector<int> domain;    // ascending
    std::vector<int> codomain;  // psi images, aligned with domain
    std::optional<int> psi(int v) const;
    std::string serialize() const;
    std::string canonical_key() const;
};

// Validates the pair and throws ill_formed_pair_error if psi is not an
// induced isomorphism.
PartialIsoPair make_pair(FiniteStructure ambient, std::vector<int> domain,
                         std::vector<int> codomain);

// Embedding of pairs: f embeds ambient into ambient', f(B) within B',
// f(C) within C', and psi' extends f . psi . f^-1 on the image of B.
std::vector<Embedding> enumerate_pair_embeddings(const PartialIsoPair& s,
                                                 const PartialIsoPair& t);
std::optional<Embedding> pair_embeds(const PartialIsoPair& s,
                                     const PartialIsoPair& t);

struct StructureClass {
    Signature sig;
    std::vector<FiniteStructure> members;  // canonical order, pairwise non-iso
    int source_bound = 2;
    int target_bound = 4;
};

// Canonicalizes member order and rejects isomorphic duplicates.
StructureClass make_class(Signature sig, std::vector<FiniteStructure> members,
                          int source_bound, int target_bound);

enum class ClassProperty { hp, jep, ap, wap, local_wap };
enum class PairProperty { jep_fp, wap_fp, local_wap_fp };

struct PropertyResult {
    bool holds = false;
    int source_bound = 0;
    int target_bound = 0;
    std::string detail;  // witness description or a summary of the search
    std::vector<FiniteStructure> witness_structures;
    std::vector<Embedding> witness_embeddings;
    std::vector<PartialIsoPair> witness_pairs;
};

PropertyResult check_class_property(const StructureClass& cls,
                                    ClassProperty prop);
PropertyResult check_pair_property(const StructureClass& cls,
                                   PairProperty prop);

// Amalgamation search for the span f: A -> B, g: A -> C. Searches members
// smallest-first; the witness maps are lexicographically least.
struct AmalgamWitness {
    int member_index = -1;
    Embedding into_b;  // B -> D
    Embedding into_c;  // C -> D
};
std::optional<AmalgamWitness> find_amalgam(const StructureClass& cls,
                                           const FiniteStructure& a,
                                           const FiniteStructure& b,
                                           const FiniteStructure& c,
                                           const Embedding& f,
                                           const Embedding& g);

// Pairs <A, psi> with ambient a class member, enumerated up to
// pair-isomorphism in a deterministic order.
std::vector<PartialIsoPair> build_pair_class(const StructureClass& cls);

struct ChainTask {
    std::string kind;         // "one-point-extension" | "partial-iso-extension"
    int scheduled_at = 0;
    std::string description;
    int realized_at = -1;     // -1: pending
    std::string mode;         // "in-place" | "member-amalgam" | "free-amalgam"
    std::vector<int> anchor;  // tracked vertex ids in the newest stage
    FiniteStructure extension;
    Embedding anchor_into_extension;
};

struct ChainResult {
    std::vector<FiniteStructure> stages;
    std::vector<Embedding> chain;  // stage t -> stage t+1
    std::vector<ChainTask> ledger;
};

ChainResult fraisse_chain(const StructureClass& cls, int steps);

struct FraissefyResult {
    FiniteStructure enriched;
    std::vector<std::vector<int>> group;  // sorted permutations
};

// Enrich K with one relation per orbit of n-tuples (n <= |K|) under the
// group generated by the given automorphisms.
FraissefyResult fraissefy(const FiniteStructure& k,
                          const std::vector<std::vector<int>>& generators,
                          int max_size = 7);

struct UltrahomogeneityResult {
    bool ultrahomogeneous = false;
    std::vector<int> witness_domain;    // non-extendable partial iso, if any
    std::vector<int> witness_codomain;
};

UltrahomogeneityResult check_ultrahomogeneous(const FiniteStructure& k,
                                              int max_size = 7);

// --- text formats (canonical JSON records) ---

std::string class_to_text(const StructureClass& cls);
StructureClass class_from_text(const std::string& text);
std::string structure_to_text(const FiniteStructure& s);
FiniteStructure structure_from_text(const std::string& text);
std::vector<std::vector<int>> permutations_from_text(const std::string& text);

} // namespace bigmcg
