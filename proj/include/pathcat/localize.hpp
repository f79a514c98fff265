// Localization of finite categories by a calculus of spans, with the
// product-localization law, the currying adjunction for functors out of a
// binary product, hom-wise localization of a bicategory at a wide class of
// 2-cells, and reduction of coherence data along that localization.
//
// An arrow of a localized category is an equivalence class of spans
// (s, f) with s : X -> A drawn from the inverted class and f : X -> B; the
// class is the formal composite "f after s-backwards". Where the span
// calculus is unavailable but the category is posetal, the localization is
// computed instead as the preorder generated by the original arrows plus
// the reversals of the inverted ones. Both paths record, for every arrow
// of the result, a zig-zag word through original arrows that evaluates to
// it under any functor inverting the class; factorizations through the
// localization are forced by folding those words.
#pragma once

#include "pathcat/enrichment.hpp"

#include <set>

namespace pathcat {

// A category together with a class of arrows to invert and the outcome of
// the four span-calculus checks. `bound` caps the number of spans examined
// per hom during localization.
struct FractionSystem {
  FinCategory C;
  std::set<Id> S;
  bool identities_ok = false;  // every identity arrow lies in S
  bool closure_ok = false;     // S is closed under composition
  bool ore_ok = false;         // every cospan (f, s in S) completes to a
                               // square with the S-leg opposite s
  bool cancel_ok = false;      // arrows equalized by an S-postcomposition
                               // are equalized by an S-precomposition
  std::size_t bound = 100000;

  bool all_ok() const {
    return identities_ok && closure_ok && ore_ok && cancel_ok;
  }
};

// Runs the four exhaustive checks and returns the flags; never throws for a
// failed check (the flags carry the outcome). Arrows of S must belong to C.
FractionSystem check_fractions(const FinCategory &C, const std::set<Id> &S);

// The localized category together with the data needed to factor functors
// through it. `classes` lists the member spans of every arrow (empty on the
// posetal path); `words` gives, per arrow, an application-ordered zig-zag
// of original arrows, `true` marking a leg traversed backwards (such legs
// always lie in S).
struct LocalizedCategory {
  FinCategory cat;  // objects of C, arrows "frac(s;f)" or "zig(A,B)"
  FinFunctor L;     // the localization functor C -> cat
  std::map<Id, std::vector<IdPair>> classes;
  std::map<Id, std::vector<std::pair<Id, bool>>> words;
  bool posetal_path = false;
};

// Localizes sys.C at sys.S. With all flags set, arrows are span classes,
// composition fills the lexicographically first completion square, and
// every S-arrow acquires a two-sided inverse. With failing flags the
// posetal fallback applies when sys.C is posetal; otherwise the request
// would need unbounded zig-zag saturation and is refused
// (SaturationBoundExceeded). A hom whose span count exceeds sys.bound is
// refused the same way. When test targets are supplied, the universal
// property is verified against them before returning.
// Errors: OreViolation (a required completion square is missing, e.g. when
// flags were asserted rather than checked), SaturationBoundExceeded,
// FactorizationMissing, FactorizationNotUnique.
LocalizedCategory localize_fractions(const FractionSystem &sys,
                                     const std::vector<FinCategory> &targets = {});

// Verifies the universal property of loc against finite test targets: every
// functor C -> T inverting S must factor through loc.L as exactly one
// functor, established by exhaustive enumeration of the functor space
// loc.cat -> T and cross-checked against the word-forced candidate.
// Returns the number of factorizations verified. Errors:
// FactorizationMissing(F), FactorizationNotUnique(F).
int verify_universal_property(const FinCategory &C, const std::set<Id> &S,
                              const LocalizedCategory &loc,
                              const std::vector<FinCategory> &targets);

// The unique factorization of F : C -> T through loc (F must invert S),
// built by folding the recorded words and then validated. Errors:
// FactorizationMissing(F) when F does not invert S or the forced candidate
// fails functoriality.
FinFunctor factor_through(const FinCategory &C, const LocalizedCategory &loc,
                          const FinCategory &T, const FinFunctor &F);

// The curried form of a functor F : A x B -> E on the product built by
// derive(Product): per-object partial functors F(a,-) and per-arrow natural
// transformations F(h,-).
struct CurriedFunctor {
  Id name;
  std::map<Id, FinFunctor> at;   // a -> F(a,-) : B -> E
  std::map<Id, NatTrans> arrow;  // h : a -> a' -> components b -> F(h, id_b)
};

// Currying: validates F, builds the curried form, checks every component
// functor and the naturality of every transformation, and confirms the
// round trip uncurry(curry(F)) = F exactly.
CurriedFunctor curry_adjunction(const FinCategory &A, const FinCategory &B,
                                const FinCategory &E, const FinFunctor &F);

// Inverse of currying: (f, g) is sent to the diagonal of the naturality
// square, the composite of G.arrow[f] at the target with G.at[src](g).
FinFunctor uncurry(const FinCategory &A, const FinCategory &B,
                   const FinCategory &E, const CurriedFunctor &G);

// Outcome of the product-localization verification: L_S x L_T is checked to
// be a localization of C x D at the arrow class S x T, against the supplied
// finite targets, and the factorization of a product functor F x G is
// checked to equal the product of the factorizations computed separately.
struct ProductLocalizationReport {
  Id name;
  int functors_checked = 0;  // universal-property instances on C x D
  int pairs_checked = 0;     // product-factorization identities verified
  std::string scope;         // states the finite-target scope of the claim
};

// Errors: OreViolation (identities missing from S or T),
// FactorizationMissing(F), FactorizationNotUnique(F), plus anything raised
// by the two component localizations.
ProductLocalizationReport product_localization_check(
    const FinCategory &C, const std::set<Id> &S, const FinCategory &D,
    const std::set<Id> &T, const std::vector<FinCategory> &targets);

// Hom-wise localization of a bicategory at a wide class W of 2-cells. The
// result keeps the objects and 1-cells; each hom becomes its localization
// at the W-cells it contains, horizontal composition is induced square by
// square (the composition functors of the localized bicategory are its
// tensor tables), and the structural cells are the images of the original
// ones. L is the canonical strict homomorphism.
struct SecondaryLocalization {
  FinBicategory locM;
  ColaxMorphism L;  // M -> locM, identity on objects and 1-cells
  std::map<IdPair, LocalizedCategory> homs;
};

// Validates M and W first (so base defects such as a horizontally unclosed
// W surface with their own codes), localizes every hom, induces the tensor
// tables, validates the result as a bicategory and L as a colax morphism,
// confirms every W-cell becomes invertible, and recomputes both legs of the
// two induced-composition factorization identities on every object
// quadruple (the slot-by-slot localized image of the doubly-composed cell
// against the two-step application of the induced tensors).
// Errors: HomNotLocalizable(U,V) when a hom admits neither the span
// calculus nor the posetal fallback; otherwise those of the pieces.
SecondaryLocalization secondary_localization(const FinBicategory &M,
                                             const BaseW &W);

// Reduction of a coherent point: P must pass check_path_object over its own
// base; the result composes P's realization with the localization of its
// target at that base and is verified to be strictly coherent (Segal over
// the invertible base) before being returned.
PathObject reduce_point(const PathObject &P);

} // namespace pathcat
