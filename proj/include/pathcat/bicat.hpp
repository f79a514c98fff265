// Finite (possibly weak) 2-categories with explicit composition tables,
// monoidal categories and their one-object suspension, wide 2-cell classes
// ("bases"), and colax morphisms / transformations / modifications.
//
// Hom categories are FinCategory values: their objects are 1-cells, their
// arrows 2-cells, their composition the vertical one. Horizontal composition
// lives in per-cospan tensor tables. A bicategory may be `truncated`, in
// which case tensor tables are allowed to be partial (the situation of
// length-capped path 2-categories); coherence is then checked over defined
// composites only.
#pragma once

#include "pathcat/fincat.hpp"

namespace pathcat {

struct FinBicategory {
  Id name;
  std::vector<Id> objects;
  std::map<IdPair, FinCategory> homs;   // (U,V) -> hom category
  std::map<Id, Id> unit;                // U -> unit 1-cell in hom(U,U)

  struct Tensor {
    std::map<IdPair, Id> ob;  // (t, s) -> t.s  for t: V->W, s: U->V
    std::map<IdPair, Id> ar;  // (beta, alpha) -> beta.alpha
  };
  std::map<IdTriple, Tensor> comp;      // (U,V,W) -> tables

  // Structural 2-cells. A missing entry means the identity 2-cell, which is
  // well-typed only when the two bracketings evaluate to the same 1-cell;
  // strict inputs therefore need no entries at all.
  std::map<IdQuad, std::map<IdTriple, Id>> assoc;  // (U,V,W,X): (h,g,f) -> cell
  std::map<IdPair, std::map<Id, Id>> lunit;        // (U,V): f -> cell I.f -> f
  std::map<IdPair, std::map<Id, Id>> runit;        // (U,V): f -> cell f.I -> f

  bool truncated = false;   // tensor tables may be partial

  const FinCategory &hom(const Id &U, const Id &V) const;
  FinCategory &hom_mut(const Id &U, const Id &V);
  Id unit_of(const Id &U) const;

  bool has_ob(const Id &U, const Id &V, const Id &W, const Id &t,
              const Id &s) const;
  Id tensor_ob(const Id &U, const Id &V, const Id &W, const Id &t,
               const Id &s) const;
  Id tensor_ar(const Id &U, const Id &V, const Id &W, const Id &beta,
               const Id &alpha) const;

  // Structural cells with the identity default.
  Id assoc_cell(const Id &U, const Id &V, const Id &W, const Id &X,
                const Id &h, const Id &g, const Id &f) const;
  Id lunit_cell(const Id &U, const Id &V, const Id &f) const;
  Id runit_cell(const Id &U, const Id &V, const Id &f) const;

  // Vertical composition / identities inside hom(U,V).
  Id vcomp(const Id &U, const Id &V, const Id &g, const Id &f) const;
  Id id2(const Id &U, const Id &V, const Id &t) const;

  // Endpoint 1-cells of a 2-cell.
  IdPair boundary(const Id &U, const Id &V, const Id &cell) const;
};

// Full coherence validation. Checks, in order: hom categories, units,
// tensor-table typing and (unless truncated) totality, bifunctoriality
// (identities and interchange), invertibility and naturality of the
// structural cells, pentagon, triangle. Deterministic first failure.
// Error codes: MissingComposite, DomainMismatch, NonFunctorialAction,
// MissingInvertible, NonNaturalAssociator, PentagonViolation(k,h,g,f),
// TriangleViolation(g,f).
void validate_bicategory(const FinBicategory &M);

// A monoidal category presented on top of a FinCategory. Structural
// components default to identities (strict case).
struct MonoidalCategory {
  Id name;
  FinCategory base;
  Id unit_ob;
  std::map<IdPair, Id> tensor_ob;
  std::map<IdPair, Id> tensor_ar;
  std::map<IdTriple, Id> assoc;
  std::map<Id, Id> lunit, runit;
};

// One-object suspension: hom(pt,pt) = base, horizontal composition = tensor.
// Basic totality defects raise MonoidalAxiomViolation; coherence defects
// surface through validate_bicategory on the result.
FinBicategory suspend_monoidal(const MonoidalCategory &M);

// Inverse of the suspension for one-object bicategories (exact roundtrip).
MonoidalCategory extract_monoidal(const FinBicategory &B);

// A wide class of 2-cells: every invertible cell, everything, or an explicit
// per-hom selection.
struct BaseW {
  enum class Kind { Iso, All, Explicit } kind = Kind::Iso;
  std::map<IdPair, std::set<Id>> cells;  // used when Explicit

  static BaseW iso() { return {Kind::Iso, {}}; }
  static BaseW all() { return {Kind::All, {}}; }
};

bool in_base(const FinBicategory &M, const BaseW &W, const Id &U, const Id &V,
             const Id &cell);

// Base axioms: contains every invertible 2-cell (MissingInvertible), is
// closed under 3-for-2 in each hom (ThreeForTwoViolation), and is stable
// under horizontal composition (HorizontalClosureViolation).
void validate_base(const FinBicategory &M, const BaseW &W);

// The two canonical bases on any bicategory, smallest and largest: the
// invertible 2-cells and all 2-cells. Both are validated before return.
std::pair<BaseW, BaseW> canonical_bases(const FinBicategory &M);

// A colax morphism F : M -> N. omap sends objects to objects; hmap[(A,B)]
// is a functor hom_M(A,B) -> hom_N(FA,FB); coh[(A,B,C)][(t,s)] is the
// colaxity 2-cell F(t.s) -> Ft.Fs; unit_coh[A] : F(I_A) -> I_FA.
struct ColaxMorphism {
  Id name;
  std::map<Id, Id> omap;
  std::map<IdPair, FinFunctor> hmap;
  std::map<IdTriple, std::map<IdPair, Id>> coh;
  std::map<Id, Id> unit_coh;

  Id ob(const Id &A) const { return map_at(omap, A, "UnknownObject", A); }
  const FinFunctor &hf(const Id &A, const Id &B) const {
    return map_at(hmap, IdPair{A, B}, "UnknownObject", "hom(" + A + "," + B + ")");
  }
  Id coh_cell(const Id &A, const Id &B, const Id &C, const Id &t,
              const Id &s) const;
  Id unit_cell(const Id &A) const {
    return map_at(unit_coh, A, "UnknownObject", A);
  }
};

// Checks F is a well-formed colax morphism: hom functors valid, colaxity
// cells well-typed and total over defined composites, then the coherence
// axioms in this order: composition hexagon (M1Violation), unit squares
// (M2Violation), naturality of the colaxity cells (NonNaturalColaxity).
// Truncated sources quantify over defined composites only.
void validate_colax(const FinBicategory &M, const FinBicategory &N,
                    const ColaxMorphism &F);

// Composite colax morphism G.F with the pasted colaxity cells.
ColaxMorphism compose_colax(const FinBicategory &M, const FinBicategory &N,
                            const FinBicategory &P, const ColaxMorphism &G,
                            const ColaxMorphism &F);

ColaxMorphism identity_colax(const FinBicategory &M);

// A colax transformation sigma : F => G for F, G : M -> N. comp1[A] is a
// 1-cell FA -> GA; comp2[(A,B)][t] is a 2-cell sigma_B . Ft -> Gt . sigma_A.
struct ColaxTransformation {
  Id name;
  std::map<Id, Id> comp1;
  std::map<IdPair, std::map<Id, Id>> comp2;
};

// Axioms, in order: typing, naturality in 2-cells, compatibility with
// composition (TransformationAxiomViolation(t,s)) and with units
// (UnitAxiomViolation(A)).
void validate_transformation(const FinBicategory &M, const FinBicategory &N,
                             const ColaxMorphism &F, const ColaxMorphism &G,
                             const ColaxTransformation &sigma);

// A modification Gamma : sigma1 -> sigma2: one 2-cell per object, compatible
// with the transformation 2-cells (ModificationAxiomViolation(t)).
struct Modification {
  Id name;
  std::map<Id, Id> cells;  // A -> 2-cell sigma1_A -> sigma2_A
};

void validate_modification(const FinBicategory &M, const FinBicategory &N,
                           const ColaxMorphism &F, const ColaxMorphism &G,
                           const ColaxTransformation &s1,
                             const ColaxTransformation &s2,
                           const Modification &gamma);

// 2-cell inversion inside a hom category; throws MissingInvertible.
Id invert_cell(const FinBicategory &M, const Id &U, const Id &V,
               const Id &cell);

} // namespace pathcat
