// Finite categories presented by explicit composition tables, functors and
// natural transformations between them, and the standard constructions:
// coarse (chaotic) categories, finite linear orders, nerve levels, categories
// of elements, products / coproducts / opposites, and the invertible core.
#pragma once

#include "pathcat/util.hpp"

#include <functional>
#include <optional>

namespace pathcat {

struct Arrow {
  Id id, src, dst;
  bool operator==(const Arrow &o) const = default;
};

// A finite category. Identities are real arrows: constructions either
// declare them (e.g. the unique loop of a coarse category) or let
// `finalize` synthesize one per object with id "id(A)". The composition
// table is total over composable pairs once finalized, identities included.
struct FinCategory {
  Id name;
  std::vector<Id> objects;
  std::vector<Arrow> arrows;
  std::map<Id, Id> identity;   // object -> identity arrow id
  std::map<IdPair, Id> comp;   // (g, f) -> g.f  (f applied first)

  bool has_object(const Id &A) const;
  bool has_arrow(const Id &f) const;
  const Arrow &arrow(const Id &f) const;
  Id id_of(const Id &A) const;            // identity arrow of A
  bool is_identity(const Id &f) const;
  Id compose(const Id &g, const Id &f) const;  // throws MissingComposite
  std::vector<Id> hom(const Id &A, const Id &B) const;  // declaration order
  std::vector<Id> nonidentity_arrows() const;
  bool is_posetal() const;     // every hom set has at most one arrow

  // Synthesizes missing identities and extends comp with unit composites.
  // Safe to call repeatedly. Construction helpers below return finalized
  // categories; hand-built ones must call this before use.
  void finalize();
};

// Full validation: unique ids, endpoint sanity, totality of composition,
// identity laws, associativity. Failures are reported deterministically
// (lexicographically smallest witness first). Error codes: DuplicateName,
// UnknownObject, MissingComposite, DomainMismatch, IdentityViolation,
// AssociativityViolation.
void validate_category(const FinCategory &C);

// Chaotic category on a nonempty id set: exactly one arrow c(A,B) per
// ordered pair, the loops serving as identities. Throws EmptySet.
FinCategory coarse(const std::vector<Id> &objs);

// The linear order 0 < 1 < ... < n as a category; arrows le(i,j) for i < j.
FinCategory interval(int n);

// All length-k composable chains from A to B, identities included, each
// chain listed first-arrow-first. k = 0 yields one empty chain iff A == B.
std::vector<std::vector<Id>> nerve_level(const FinCategory &C, int k,
                                         const Id &A, const Id &B);

// A finite Set-valued diagram on C: element sets and a covariant action.
struct SetValuedDiagram {
  FinCategory base;
  std::map<Id, std::vector<Id>> sets;            // object -> elements
  std::map<Id, std::map<Id, Id>> action;         // arrow -> element map
};

// Category of elements: objects (A|x), arrows (f|x) : (A|x) -> (B|f.x).
// Validates functoriality of the action first (NonFunctorialAction).
FinCategory elements(const SetValuedDiagram &X);

enum class DeriveKind { Product, Coproduct, Opposite };

// Product ids are pair_id(c, d); coproduct ids are pair_id("inl"/"inr", x);
// opposite keeps ids and reverses arrows. Product and coproduct take two
// categories; opposite ignores the second argument.
FinCategory derive(DeriveKind kind, const FinCategory &C,
                   const FinCategory *D = nullptr);

// The invertible core: same objects, only the arrows with a two-sided
// inverse. Always a groupoid.
FinCategory interior(const FinCategory &C);

// An object/arrow assignment between categories. Context categories are
// passed explicitly to operations; the struct stores only the maps.
struct FinFunctor {
  Id name;
  std::map<Id, Id> omap;
  std::map<Id, Id> amap;   // total on arrows once validated (identities may
                           // be omitted on input; validation fills them)

  Id ob(const Id &A) const { return map_at(omap, A, "UnknownObject", A); }
  Id ar(const Id &f) const { return map_at(amap, f, "UnknownObject", f); }
};

// Checks totality, endpoint compatibility, preservation of identities and
// composition. Mutates nothing; returns a copy of F with identity images
// filled in. Error codes: UnknownObject, DomainMismatch,
// IdentityNotPreserved, CompositionNotPreserved.
FinFunctor validate_functor(const FinCategory &C, const FinCategory &D,
                            const FinFunctor &F);

FinFunctor identity_functor(const FinCategory &C);
FinFunctor compose_functor(const FinCategory &C, const FinCategory &D,
                           const FinCategory &E, const FinFunctor &G,
                           const FinFunctor &F);  // G after F
bool functor_equal(const FinCategory &C, const FinFunctor &F,
                   const FinFunctor &G);
bool functor_is_iso(const FinCategory &C, const FinCategory &D,
                    const FinFunctor &F);

// Two-sided inverse of f if it exists.
std::optional<Id> inverse_of(const FinCategory &C, const Id &f);

// Every functor C -> D, enumerated deterministically by backtracking over
// object images then arrow images. Intended for small test targets.
std::vector<FinFunctor> enumerate_functors(const FinCategory &C,
                                           const FinCategory &D);

// A natural transformation F => G given by its components.
struct NatTrans {
  Id name;
  std::map<Id, Id> components;  // object of C -> arrow of D
};

// Naturality: eta_B . F(f) = G(f) . eta_A for every arrow. Error code
// NonFunctorialAction with the offending arrow as location.
void validate_nat(const FinCategory &C, const FinCategory &D,
                  const FinFunctor &F, const FinFunctor &G,
                  const NatTrans &eta);

} // namespace pathcat
