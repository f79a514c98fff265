// Line-oriented text format for authoring finite categorical data: blocks
// (category | monoidal | bicategory | base | pathobject | distributor |
// metric | cocycle | functor) made of keyword declarations, with an include
// directive for file composition.  Parsing keeps raw declarations with
// source locations; lowering resolves references against the document and
// builds the corresponding library values, applying the documented default
// rules (implicit identities, forced images into thin homs, strict
// coherence cells, unit actions).
#pragma once

#include "pathcat/bridge.hpp"
#include "pathcat/localize.hpp"

#include <string>
#include <vector>

namespace pathcat {

struct SpecDecl {
  Id key;                 // declaration keyword
  std::vector<Id> args;   // tokens after the keyword ("=" removed)
  int line = 0;
  int col = 0;
};

struct SpecBlock {
  Id kind;   // category | monoidal | bicategory | base | pathobject |
             // distributor | metric | cocycle | functor
  Id name;
  std::vector<SpecDecl> decls;
  int line = 0;
};

struct SpecDocument {
  std::vector<SpecBlock> blocks;  // in declaration order, includes inlined
  std::string source;             // name of the root file or buffer

  const SpecBlock *find(const Id &kind, const Id &name) const;
  const SpecBlock &get(const Id &kind, const Id &name) const;  // throws
  // The unique block of a kind (UnresolvedReference when absent or
  // ambiguous); used by commands that take a file and infer the block.
  const SpecBlock &only(const Id &kind) const;
};

// Parse a file (resolving include directives relative to the file's
// directory) or an in-memory buffer.  Errors: ParseError("src:line:col"),
// DuplicateName(kind/name) for repeated block names of one kind.
SpecDocument parse_spec(const std::string &path);
SpecDocument parse_spec_text(const std::string &text, const std::string &srcname);

// --- lowering ------------------------------------------------------------
// All lowerings throw UnresolvedReference for dangling names, ParseError
// (with the declaration's recorded location) for malformed declarations,
// and pass through the validators' own errors.

// Category blocks; also resolves the builtin names "One", "interval(n)"
// and "coarse(a,b,...)" when no block of that name exists.
FinCategory lower_category(const SpecDocument &doc, const Id &name);

MonoidalCategory lower_monoidal(const SpecDocument &doc, const Id &name);

// A bicategory block, or the suspension of a monoidal block of the same
// name.  Undeclared hom pairs become empty categories; unit tensor entries
// and identity-pair cell entries are filled in; cells into thin homs are
// forced by their endpoints.
FinBicategory lower_bicategory(const SpecDocument &doc, const Id &name);

// A base block (requiring the bicategory it will guard), or the builtin
// names "iso" / "all".  One-argument wcell lines are resolved against the
// bicategory's unique hom pair.
BaseW lower_base(const SpecDocument &doc, const Id &name, const FinBicategory &M);

// Path-object blocks.  Defaults: the single target object when unique;
// empty chains to units; single-arrow chains forced when the target hom
// has exactly one 1-cell; longer chains to front-parenthesized tensor
// folds; witness images forced into thin homs (identity when source and
// target images agree); colaxity and unit cells identity unless declared.
// default_maxlen applies when the block has no maxlen line.
PathObject lower_pathobject(const SpecDocument &doc, const Id &name,
                            int default_maxlen);

Distributor lower_distributor(const SpecDocument &doc, const Id &name);

MetricSpace lower_metric(const SpecDocument &doc, const Id &name);

// Cocycle blocks: points, a one-object group category, and the transition
// entries (diagonal entries default to the group identity).  Lowering runs
// cocycle_check at the given truncation.
CocycleReport lower_cocycle(const SpecDocument &doc, const Id &name, int maxlen);

struct LoweredFunctor {
  Id from, to;   // category names as written (may be "prod(A,B)")
  FinCategory dom, cod;
  FinFunctor F;  // validated
};

// Functor blocks: `from`/`to` name category blocks or builtins, including
// the product form "prod(A,B)"; `map-obj a = b` and `map-arr f = g` lines,
// identities implicit.
LoweredFunctor lower_functor(const SpecDocument &doc, const Id &name);

}  // namespace pathcat
