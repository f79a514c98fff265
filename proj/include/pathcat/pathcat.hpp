// Truncated path 2-categories of a finite base category.
//
// A 1-cell A -> B is a composable chain of arrows of length <= maxlen; a
// 2-cell s -> t is a monotone-map witness u with u . s = t under the
// cosimplicial action: the j-th arrow of u . s is the ordered composite of
// the arrows in the interval preimage of j (the identity of the chain vertex
// at the cumulative position when the preimage is empty). Chains compose by
// concatenation, witnesses by ordinal sum; the empty chain is a strict unit.
#pragma once

#include "pathcat/bicat.hpp"
#include "pathcat/simplex.hpp"

namespace pathcat {

struct Chain {
  Id src;               // source object (meaningful when seq is empty)
  std::vector<Id> seq;  // arrow ids, first applied first

  int length() const { return (int)seq.size(); }
  bool operator==(const Chain &o) const = default;
};

// "[@A]" for the empty chain at A, else "[f,g,...]".
Id chain_id(const Chain &c);
Id witness_id(const Chain &s, const DeltaMap &u);

// Endpoint bookkeeping; throws EndpointMismatch on a non-composable seq.
void check_chain(const FinCategory &C, const Chain &c);
Id chain_target(const FinCategory &C, const Chain &c);
Id chain_vertex(const FinCategory &C, const Chain &c, int k);

// Concatenation t after s (s's arrows first). Throws EndpointMismatch if
// src(t) != dst(s), TruncationExceeded past maxlen (maxlen < 0 disables).
Chain concat_chains(const FinCategory &C, int maxlen, const Chain &s,
                    const Chain &t);

// The cosimplicial action u . s for u with domain |s|.
Chain apply_delta(const FinCategory &C, const Chain &s, const DeltaMap &u);

struct PathHom {
  std::vector<Chain> chains;  // ordered by (length, id)
  std::map<IdPair, std::vector<DeltaMap>> witnesses;  // (s,t) -> all u
};

struct Path2Category {
  FinCategory base;
  int maxlen = 0;
  std::map<IdPair, PathHom> homs;  // (A,B)

  const PathHom &hom(const Id &A, const Id &B) const;
  const Chain &chain_by_id(const Id &A, const Id &B, const Id &cid) const;
};

// Enumerates every chain of length <= maxlen and the full witness set of
// every ordered chain pair. The base must validate first.
Path2Category build_path_category(const FinCategory &C, int maxlen);

// The witness set between two chains (empty when unrelated). Order relation
// s <= t is nonemptiness; the identification below keeps the full sets.
std::vector<DeltaMap> hom_witness(const Path2Category &P, const Id &A,
                                  const Id &B, const Chain &s, const Chain &t);

// hom(A,B) materialized as a category: objects chain ids, arrows witnesses.
FinCategory hom_category(const Path2Category &P, const Id &A, const Id &B);

// The whole path 2-category as a truncated FinBicategory (partial tensor
// tables, strict coherence cells).
FinBicategory as_bicategory(const Path2Category &P);

// The truncation of the monotone-map category: objects 0..N, arrows all
// monotone maps, composition of maps.
FinCategory delta_category(int N);

// For a base with one object and one (identity) arrow, the endo-hom of the
// path category is isomorphic to the truncated monotone-map category. Builds
// both sides and the isomorphism, validates it, and tabulates witness
// counts. Errors: ShapeMismatch if the base is not of that form, IsoFailure
// if the comparison fails.
struct DeltaIdentification {
  FinCategory delta_cat;
  FinCategory hom_cat;
  FinFunctor to_delta, from_delta;
  std::map<std::pair<int, int>, int> counts;  // (n,m) -> #witnesses n -> m
};
DeltaIdentification delta_identification(const Path2Category &P);

// The degree-<=1 embedding (objects and single-arrow chains) and the
// compression functor (fold a chain to its composite). The embedding is an
// arrow assignment, not a functor; compression is a genuine functor on the
// partial underlying category, and compression after embedding is the
// identity. All three facts are checked.
struct EmbedCompress {
  std::map<Id, Id> embed_ob, embed_ar;  // base object/arrow -> chain id
  std::map<Id, Id> compress;            // chain id -> base arrow id
};
EmbedCompress embed_and_compress(const Path2Category &P);

// Functoriality of path formation: chains and witnesses map along F
// componentwise. Packaged as a strict colax morphism between the truncated
// path bicategories; validate with validate_colax.
ColaxMorphism path_functor(const Path2Category &PC, const Path2Category &PD,
                           const FinFunctor &F);

// The three structural identifications of path categories, checked
// exhaustively at the given truncation: paths in a disjoint union split,
// paths in the opposite reverse, and each hom is the category of elements
// of its chain diagram over the monotone-map category. Throws IsoFailure.
struct StructuralIsoReport {
  int coproduct_homs_checked = 0;
  int opposite_homs_checked = 0;
  int elements_homs_checked = 0;
};
StructuralIsoReport structural_isos(const FinCategory &C, const FinCategory &D,
                                    int maxlen);

} // namespace pathcat
