// Rigid bridges between two categories, the terminal (thin) bridge, the
// exact correspondence with distributors (set-valued profunctor tables with
// commuting actions), and bimodules: path objects over a bridge satisfying
// boundary conditions on both sides, with their extracted action maps.
#pragma once

#include "pathcat/enrichment.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace pathcat {

// A category on Ob(C) ⊔ Ob(D) restricting to C and D, with cross arrows in
// one direction only (from the C side to the D side).  The embeddings carry
// any renaming needed to keep object and arrow ids globally unique.
struct RigidBridge {
  std::string name;
  FinCategory left;    // C
  FinCategory right;   // D
  FinCategory total;   // E
  FinFunctor fromC;    // embedding C -> E
  FinFunctor fromD;    // embedding D -> E
};

// Checks the bridge invariants: left/right/total are valid categories, the
// embeddings are injective on objects and fully faithful (IsoFailure),
// the total object set is exactly the disjoint union of the two images
// (ShapeMismatch), and no arrow runs from the D side to the C side
// (DomainMismatch).
void validate_bridge(const RigidBridge &B);

// The terminal rigid bridge C ≺ D: hom(A,B) is a single arrow "x(A,B)" for
// A on the C side and B on the D side, with constant cross-composition.
// When C and D share object or arrow ids, all names from C are prefixed
// "L:" and all names from D "R:".
RigidBridge thin_bridge(const FinCategory &C, const FinCategory &D);

// A set-valued profunctor table X(D)(A) with a contravariant action of
// C-arrows and a covariant action of D-arrows.  Element ids are global:
// they become the cross-arrow ids of the associated bridge verbatim.
struct Distributor {
  std::string name;
  FinCategory left;   // C
  FinCategory right;  // D
  // (A, D) -> elements of X(D)(A), in declaration order
  std::map<IdPair, std::vector<Id>> table;
  // non-identity C-arrow f: A -> A'  =>  lact[f]: X(D)(A') -> X(D)(A)
  std::map<Id, std::map<Id, Id>> lact;
  // non-identity D-arrow g: D -> D'  =>  ract[g]: X(D)(A) -> X(D')(A)
  std::map<Id, std::map<Id, Id>> ract;
};

// Checks table totality (UnknownObject), global uniqueness of element ids
// against each other and against both categories (DuplicateName), action
// totality and typing (UnknownObject / DomainMismatch), functoriality of
// each action (NonFunctorialAction), and the mixed commuting square
// (ActionAssociativityViolation).
void validate_distributor(const Distributor &X);

// The bridge with E(A,D) := X(D)(A) and composition by the two action
// rules; element ids become cross-arrow ids.  Associativity of the
// assembled category is guarded: a failure surfaces as
// ActionAssociativityViolation (unreachable for a valid distributor).
RigidBridge bridge_of_distributor(const Distributor &X);

// The functor of points X(D)(A) := E(A,D), with actions by pre- and
// post-composition in E.  Exact inverse of bridge_of_distributor on
// normalized representations.
Distributor distributor_of_bridge(const RigidBridge &E);

// All bridge morphisms E -> G over the same (C, D): functors commuting
// with both embeddings.  Enumerated by assigning each cross arrow of E to
// a parallel cross arrow of G and keeping the functorial assignments.
std::vector<FinFunctor> bridge_morphisms(const RigidBridge &E,
                                         const RigidBridge &G);

// A path object over a bridge whose restrictions to the two sides equal the
// given boundary points.
struct Bimodule {
  RigidBridge shape;
  PathObject psi;         // the bimodule itself, over shape.total
  PathObject leftPoint;   // F, over shape.left
  PathObject rightPoint;  // G, over shape.right
};

// Runs check_path_object on psi, restricts it along both embeddings, and
// compares the restrictions with F and G componentwise (object images,
// chain images, witness images, colaxity cells) up to the common
// truncation depth.  A discrepancy is a BoundaryMismatch whose location
// names the side and the first differing component.
Bimodule validate_bimodule(const RigidBridge &E, const PathObject &psi,
                           const PathObject &F, const PathObject &G);

// A morphism of bimodules over the same bridge: a transformation theta
// from b1.psi to b2.psi with identity shape map that induces the identity
// on both boundary points (unit components and identity cells on both
// sides); other components are unconstrained beyond the transformation
// axioms.  Boundary-identity failures are BoundaryMismatch.
void validate_bimodule_morphism(const Bimodule &b1, const Bimodule &b2,
                                const ColaxTransformation &theta);

// The classical action maps extracted from a bimodule over coarse shapes:
//   left[(P,Q,R)]  : Psi(Q,R) ⊗ F(P,Q) -> Psi(P,R)   (P,Q on C, R on D)
//   right[(Q,R,S)] : G(R,S) ⊗ Psi(Q,R) -> Psi(Q,S)   (Q on C, R,S on D)
// in the same factor order as every other composition here (the later leg
// on the left of the tensor).
struct BimoduleActions {
  std::map<IdTriple, Id> left;
  std::map<IdTriple, Id> right;
};

// Extracts both action families from the single-arrow chains of psi
// (inverting the colaxity cells; NonInvertibleColaxity if one is not
// invertible) and checks associativity of each action, their mutual
// compatibility (ActionAssociativityViolation), and unit compatibility
// with both boundary monoid structures (IdentityViolation), exhaustively
// over objects.  Requires all shapes coarse (ShapeMismatch) and
// psi.maxlen >= 2 so binary composites exist (TruncationExceeded).
BimoduleActions extract_actions(const Bimodule &b);

} // namespace pathcat
