// Path objects (colax morphisms out of a truncated path 2-category together
// with a wide 2-cell class), enriched categories over a bicategory, the exact
// round trip between the two on coarse shapes, graded one-object views,
// the correspondence with truncated simplicial data, cocycles, quantales and
// metric enrichments.
#pragma once

#include "pathcat/pathcat.hpp"

namespace pathcat {

// A length-truncated weak family over `shape` valued in `target`: the colax
// morphism `functor` from the truncated path 2-category of the shape, with
// every colaxity cell expected to land in the 2-cell class `base`.
struct PathObject {
  Id name;
  FinCategory shape;
  int maxlen = 4;
  FinBicategory target;
  BaseW base;
  ColaxMorphism functor;
};

struct PathObjectCheck {
  Path2Category paths;
  FinBicategory path_bicat;
};

// Full validation: shape category, target bicategory, base axioms, colax
// axioms, and the locality condition that every colaxity cell (including the
// unit cells) lies in the base class; violations of the last raise
// NonSegalCell. Returns the materialized path data for further use.
PathObjectCheck check_path_object(const PathObject &P);

// A category enriched in a bicategory: objects lie over base objects, homs
// are 1-cells, composition and units are 2-cells.
struct EnrichedCategory {
  Id name;
  FinBicategory base;
  std::vector<Id> objects;
  std::map<Id, Id> over;        // object -> base object
  std::map<IdPair, Id> hom;     // (A,B) -> 1-cell over(A) -> over(B)
  std::map<IdTriple, Id> comp;  // (A,B,C) -> 2-cell hom(B,C).hom(A,B) -> hom(A,C)
  std::map<Id, Id> unit;        // A -> 2-cell I_over(A) -> hom(A,A)
};

// Typing plus the associativity pentagon-free axioms: reuses
// AssociativityViolation and IdentityViolation.
void validate_enriched(const EnrichedCategory &E);

// The path object of an enriched category on the coarse shape over its
// objects: chains go to iterated tensors (front parenthesized), single
// generators go to whiskered composition/unit cells, general relabellings
// are factored into generators, and the colaxity cells are the canonical
// reparenthesization isomorphisms. Strict bases yield a strict result.
PathObject enriched_to_path(const EnrichedCategory &E, int maxlen,
                            const BaseW &W);

// Inverse direction for coarse shapes (ShapeMismatch otherwise): reads homs
// off single-arrow chains and extracts composition/units by inverting the
// colaxity cells (NonInvertibleColaxity when impossible). Exact inverse of
// enriched_to_path on its image.
EnrichedCategory strict_to_enriched(const PathObject &P);

// Graded view of a path object over the one-object, one-arrow shape
// (BaseNotTerminal otherwise): the 1-cell of each length with the binary and
// nullary colaxity cells; `strict` records whether all of them are
// identities.
struct HomotopyMonoidView {
  std::vector<Id> graded;                 // index n: image of the length-n chain
  std::map<std::pair<int, int>, Id> mult; // (m,n) -> cell F(m+n) -> F(m).F(n)
  Id unit_cell;                           // F(0) -> I
  bool strict = true;
};
HomotopyMonoidView homotopy_monoid_view(const PathObject &P);

// A premorphism between path objects over the same target: a functor of
// shapes together with a colax transformation from the first structure to
// the second one restricted along it. Validation returns true when the
// transformation's 1-cell components are all units (a strict morphism).
struct PathPremorphism {
  Id name;
  FinFunctor shape_map;
  ColaxTransformation sigma;
};
bool validate_premorphism(const PathObject &P1, const PathObject &P2,
                          const PathPremorphism &T);

// Push a path object forward along a colax morphism of targets. The 2-cell
// class must be preserved (WNotPreserved otherwise).
PathObject base_change(const PathObject &P, const FinBicategory &N,
                       const BaseW &WN, const ColaxMorphism &Phi);

// Pull a path object back along a functor into its shape.
PathObject restrict_shape(const PathObject &P, const FinCategory &newShape,
                          const FinFunctor &J);

// Split a path object into its connected shape components (EmptyLeaf when
// the shape has no objects).
std::vector<PathObject> foliation(const PathObject &P);

// --- correspondence with truncated simplicial data ---------------------

// Levels 0..N with a contravariant action of every weakly monotone map
// theta : {0..j} -> {0..k}, keyed by (k, image list of theta).
struct SimplicialTruncation {
  int N = 0;
  std::map<int, std::vector<Id>> levels;
  std::map<std::pair<int, std::vector<int>>, std::map<Id, Id>> action;
};

// Levels 0..N with a covariant action of the monotone reindexing maps and a
// binary splitting into blocks.
struct SetPathMonoid {
  int N = 0;
  std::map<int, std::vector<Id>> levels;
  std::map<DeltaMap, std::map<Id, Id>> action;
  std::map<std::pair<int, int>, std::map<Id, IdPair>> split;
};

// Axioms. Simplicial: totality, functoriality, singleton bottom level
// (ShapeNotTerminal). Path monoid: functorial action, total splits
// (NotCartesianTarget), canonical unit splits (M2Violation), split
// coassociativity (M1Violation), naturality of splitting against block
// sums (NonNaturalColaxity), singleton level 0 (ShapeNotTerminal).
void validate_simplicial(const SimplicialTruncation &X);
void validate_pathmonoid(const SetPathMonoid &Y);

// The two mutually inverse constructions.
SimplicialTruncation pathmonoid_to_simplicial(const SetPathMonoid &Y);
SetPathMonoid simplicial_to_pathmonoid(const SimplicialTruncation &X);

// Words in a one-object category (a monoid) with block multiplication and
// block splitting: the motivating example; its simplicial side is the nerve.
SetPathMonoid monoid_pathmonoid(const FinCategory &BS, int N);

// --- cocycles -----------------------------------------------------------

// A consistent transition assignment on a point set valued in a one-object
// category G: f(a,a) must be the identity (UnitViolation) and
// f(a,b) * f(b,c) = f(a,c) (CocycleViolation), multiplication written in
// diagram order. Packages the data as a functor from the coarse category
// and as a path object over the one-object 2-category whose 1-cells are the
// elements of G composed in reverse.
struct CocycleReport {
  FinFunctor transition;
  PathObject associated;
};
CocycleReport cocycle_check(const std::vector<Id> &points,
                            const FinCategory &G,
                            const std::map<IdPair, Id> &f, int maxlen);

// --- quantales and metrics ----------------------------------------------

// The poset {0,...,K,inf} with an arrow x -> y exactly when x >= y, tensor
// x + y capped at K (inf absorbing), unit 0.
MonoidalCategory quantale_monoidal(int K);

// Same hom poset on every ordered pair of the given objects.
FinBicategory quantale_bicategory(const std::vector<Id> &objects, int K);

// Capped addition on element names ("inf" absorbing).
Id quantale_add(int K, const Id &x, const Id &y);

struct MetricSpace {
  Id name;
  int K = 5;
  std::vector<Id> points;
  std::map<IdPair, Id> d;  // values "0".."K" or "inf"
};

// The enriched category of a metric: ZeroDiagonalViolation when d(x,x) != 0,
// TriangleViolation when d(x,z) exceeds d(x,y) + d(y,z).
EnrichedCategory metric_enrichment(const MetricSpace &X);

// Nonexpansiveness of a point map (ExpansionViolation).
void check_nonexpansive(const MetricSpace &X, const MetricSpace &Y,
                        const std::map<Id, Id> &map);

} // namespace pathcat
