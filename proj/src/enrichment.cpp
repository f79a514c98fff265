#include "pathcat/enrichment.hpp"

#include <algorithm>
#include <set>

namespace pathcat {

// ---------------------------------------------------------------------------
// path objects
// ---------------------------------------------------------------------------

PathObjectCheck check_path_object(const PathObject &P) {
  validate_category(P.shape);
  PathObjectCheck R;
  R.paths = build_path_category(P.shape, P.maxlen);
  R.path_bicat = as_bicategory(R.paths);
  validate_bicategory(P.target);
  validate_base(P.target, P.base);
  validate_colax(R.path_bicat, P.target, P.functor);

  // Locality: every colaxity cell lies in the chosen 2-cell class.
  for (const auto &[A, cell] : P.functor.unit_coh) {
    Id U = P.functor.ob(A);
    if (!in_base(P.target, P.base, U, U, cell))
      throw Error("NonSegalCell", "phi(" + A + ")", cell);
  }
  for (const auto &[tri, table] : P.functor.coh) {
    Id U = P.functor.ob(std::get<0>(tri));
    Id W = P.functor.ob(std::get<2>(tri));
    for (const auto &[ts, cell] : table)
      if (!in_base(P.target, P.base, U, W, cell))
        throw Error("NonSegalCell", "phi(" + ts.first + "," + ts.second + ")",
                    cell);
  }
  return R;
}

// ---------------------------------------------------------------------------
// enriched categories
// ---------------------------------------------------------------------------

void validate_enriched(const EnrichedCategory &E) {
  validate_bicategory(E.base);
  std::set<Id> seen;
  for (const Id &A : E.objects)
    if (!seen.insert(A).second) throw Error("DuplicateName", A);
  auto eob = [&](const Id &A) -> Id {
    Id U = map_at(E.over, A, "UnknownObject", "over(" + A + ")");
    if (std::find(E.base.objects.begin(), E.base.objects.end(), U) ==
        E.base.objects.end())
      throw Error("UnknownObject", "over(" + A + ")", U);
    return U;
  };
  auto homof = [&](const Id &A, const Id &B) -> Id {
    Id h = map_at(E.hom, IdPair{A, B}, "UnknownObject",
                  "hom(" + A + "," + B + ")");
    if (!E.base.hom(eob(A), eob(B)).has_object(h))
      throw Error("DomainMismatch", "hom(" + A + "," + B + ")", h);
    return h;
  };
  for (const Id &A : E.objects) eob(A);
  for (const Id &A : E.objects)
    for (const Id &B : E.objects) homof(A, B);

  auto check_cell = [&](const Id &U, const Id &V, const Id &cell,
                        const Id &dom, const Id &cod, const std::string &loc) {
    const FinCategory &H = E.base.hom(U, V);
    if (!H.has_arrow(cell)) throw Error("UnknownObject", loc, cell);
    const Arrow &a = H.arrow(cell);
    if (a.src != dom || a.dst != cod) throw Error("DomainMismatch", loc, cell);
  };

  for (const Id &A : E.objects)
    for (const Id &B : E.objects)
      for (const Id &C : E.objects) {
        std::string loc = "comp(" + A + "," + B + "," + C + ")";
        Id cell = map_at(E.comp, IdTriple{A, B, C}, "UnknownObject", loc);
        Id dom = E.base.tensor_ob(eob(A), eob(B), eob(C), homof(B, C),
                                  homof(A, B));
        check_cell(eob(A), eob(C), cell, dom, homof(A, C), loc);
      }
  for (const Id &A : E.objects) {
    std::string loc = "unit(" + A + ")";
    Id cell = map_at(E.unit, A, "UnknownObject", loc);
    check_cell(eob(A), eob(A), cell, E.base.unit_of(eob(A)), homof(A, A), loc);
  }

  const FinBicategory &M = E.base;
  // associativity square on each quadruple
  for (const Id &A : E.objects)
    for (const Id &B : E.objects)
      for (const Id &C : E.objects)
        for (const Id &D : E.objects) {
          Id eA = eob(A), eB = eob(B), eC = eob(C), eD = eob(D);
          Id hAB = homof(A, B), hBC = homof(B, C), hCD = homof(C, D);
          Id lhs = M.vcomp(
              eA, eD, E.comp.at({A, B, D}),
              M.tensor_ar(eA, eB, eD, E.comp.at({B, C, D}),
                          M.id2(eA, eB, hAB)));
          Id a = M.assoc_cell(eA, eB, eC, eD, hCD, hBC, hAB);
          Id rhs = M.vcomp(
              eA, eD, E.comp.at({A, C, D}),
              M.vcomp(eA, eD,
                      M.tensor_ar(eA, eC, eD, M.id2(eC, eD, hCD),
                                  E.comp.at({A, B, C})),
                      a));
          if (lhs != rhs)
            throw Error("AssociativityViolation",
                        "(" + A + "," + B + "," + C + "," + D + ")",
                        lhs + " != " + rhs);
        }
  // unit triangles
  for (const Id &A : E.objects)
    for (const Id &B : E.objects) {
      Id eA = eob(A), eB = eob(B);
      Id hAB = homof(A, B);
      Id left = M.vcomp(eA, eB, E.comp.at({A, B, B}),
                        M.tensor_ar(eA, eB, eB, E.unit.at(B),
                                    M.id2(eA, eB, hAB)));
      if (left != M.lunit_cell(eA, eB, hAB))
        throw Error("IdentityViolation", "left(" + A + "," + B + ")", left);
      Id right = M.vcomp(eA, eB, E.comp.at({A, A, B}),
                         M.tensor_ar(eA, eA, eB, M.id2(eA, eB, hAB),
                                     E.unit.at(A)));
      if (right != M.runit_cell(eA, eB, hAB))
        throw Error("IdentityViolation", "right(" + A + "," + B + ")", right);
    }
}

// ---------------------------------------------------------------------------
// bracketing trees over 1-cells
// ---------------------------------------------------------------------------

namespace {

// Binary bracketings of a composable 1-cell string. The left child of a node
// is the later factor. Nodes live in an arena so subtree handles stay valid.
struct TreeArena {
  const FinBicategory *M = nullptr;
  struct Node {
    int l = -1, r = -1;
    Id src, dst, val;
  };
  std::vector<Node> nodes;

  int leaf(const Id &src, const Id &dst, const Id &cell) {
    nodes.push_back({-1, -1, src, dst, cell});
    return (int)nodes.size() - 1;
  }
  int join(int l, int r) {
    Node n;
    n.l = l;
    n.r = r;
    n.src = nodes[(size_t)r].src;
    n.dst = nodes[(size_t)l].dst;
    n.val = M->tensor_ob(nodes[(size_t)r].src, nodes[(size_t)r].dst,
                         nodes[(size_t)l].dst, nodes[(size_t)l].val,
                         nodes[(size_t)r].val);
    nodes.push_back(n);
    return (int)nodes.size() - 1;
  }
  const Node &at(int t) const { return nodes[(size_t)t]; }
  bool is_leaf(int t) const { return at(t).l < 0; }
  Id id2(int t) const { return M->id2(at(t).src, at(t).dst, at(t).val); }
};

int build_comb(TreeArena &A, const std::vector<int> &units) {
  int acc = units[0];
  for (size_t k = 1; k < units.size(); ++k) acc = A.join(acc, units[k]);
  return acc;
}

std::pair<int, Id> tree_normalize(TreeArena &A, int t);

// Fold a tree r into an existing left comb c, returning the comb over the
// concatenated leaves and the structural 2-cell val(c.r) -> val(result).
std::pair<int, Id> tree_absorb(TreeArena &A, int c, int r) {
  const FinBicategory &M = *A.M;
  if (A.is_leaf(r)) {
    int t = A.join(c, r);
    return {t, A.id2(t)};
  }
  int r1 = A.at(r).l, r2 = A.at(r).r;
  Id U = A.at(r2).src, X = A.at(c).dst;
  Id a = M.assoc_cell(U, A.at(r2).dst, A.at(r1).dst, X, A.at(c).val,
                      A.at(r1).val, A.at(r2).val);
  Id a_inv = invert_cell(M, U, X, a);  // val(c.(r1.r2)) -> val((c.r1).r2)
  auto [c1, cell1] = tree_absorb(A, c, r1);
  Id w = M.tensor_ar(A.at(r2).src, A.at(r2).dst, X, cell1, A.id2(r2));
  auto [c2, cell2] = tree_absorb(A, c1, r2);
  return {c2, M.vcomp(U, X, cell2, M.vcomp(U, X, w, a_inv))};
}

// Left-comb normal form together with the structural 2-cell into it.
std::pair<int, Id> tree_normalize(TreeArena &A, int t) {
  if (A.is_leaf(t)) return {t, A.id2(t)};
  const FinBicategory &M = *A.M;
  int l = A.at(t).l, r = A.at(t).r;
  auto [cl, cell_l] = tree_normalize(A, l);
  Id w = M.tensor_ar(A.at(r).src, A.at(r).dst, A.at(l).dst, cell_l, A.id2(r));
  auto [res, cell_a] = tree_absorb(A, cl, r);
  return {res, M.vcomp(A.at(t).src, A.at(t).dst, cell_a, w)};
}

// The canonical structural 2-cell between two bracketings of the same string.
Id tree_iso(TreeArena &A, int p, int q) {
  const FinBicategory &M = *A.M;
  auto [cp, np] = tree_normalize(A, p);
  auto [cq, nq] = tree_normalize(A, q);
  (void)cp;
  (void)cq;
  Id nq_inv = invert_cell(M, A.at(q).src, A.at(q).dst, nq);
  return M.vcomp(A.at(p).src, A.at(p).dst, nq_inv, np);
}

// Lift a 2-cell at one unit of a comb through the surrounding comb.
Id whisker_at_unit(TreeArena &A, const std::vector<int> &units, size_t p,
                   const Id &cell) {
  const FinBicategory &M = *A.M;
  if (units.size() == 1) return cell;
  std::vector<int> prefix(units.size());
  prefix[0] = units[0];
  for (size_t k = 1; k < units.size(); ++k)
    prefix[k] = A.join(prefix[k - 1], units[k]);
  Id cur = cell;
  if (p > 0)
    cur = M.tensor_ar(A.at(units[p]).src, A.at(units[p]).dst,
                      A.at(prefix[p - 1]).dst, A.id2(prefix[p - 1]), cur);
  for (size_t k = p + 1; k < units.size(); ++k)
    cur = M.tensor_ar(A.at(units[k]).src, A.at(units[k]).dst,
                      A.at(prefix[k - 1]).dst, cur, A.id2(units[k]));
  return cur;
}

// Leaves of a chain, leftmost leaf = last arrow of the chain.
std::vector<int> chain_leaves(TreeArena &A, const EnrichedCategory &E,
                              const FinCategory &sh, const Chain &s) {
  std::vector<int> leaves;
  int n = s.length();
  for (int l = 0; l < n; ++l) {
    int p = n - 1 - l;
    Id X = chain_vertex(sh, s, p), Y = chain_vertex(sh, s, p + 1);
    leaves.push_back(A.leaf(E.over.at(X), E.over.at(Y), E.hom.at({X, Y})));
  }
  return leaves;
}

Id chain_value(const EnrichedCategory &E, const FinCategory &sh,
               const Chain &s) {
  if (s.length() == 0) return E.base.unit_of(E.over.at(s.src));
  TreeArena A{&E.base, {}};
  auto leaves = chain_leaves(A, E, sh, s);
  return A.at(build_comb(A, leaves)).val;
}

// Image of the witness that composes the arrows at positions i, i+1.
Id merge_image(const EnrichedCategory &E, const FinCategory &sh,
               const Chain &s, int i) {
  const FinBicategory &M = E.base;
  int n = s.length();
  TreeArena A{&M, {}};
  auto leaves = chain_leaves(A, E, sh, s);
  int j = n - 2 - i;  // leaf index of the later arrow of the pair
  std::vector<int> units;
  for (int l = 0; l < n; ++l) {
    if (l == j) {
      units.push_back(A.join(leaves[(size_t)l], leaves[(size_t)l + 1]));
      ++l;
    } else {
      units.push_back(leaves[(size_t)l]);
    }
  }
  int comb = build_comb(A, leaves);
  int grouped = build_comb(A, units);
  Id step1 = tree_iso(A, comb, grouped);
  Id X = chain_vertex(sh, s, i), Y = chain_vertex(sh, s, i + 1),
     Z = chain_vertex(sh, s, i + 2);
  Id step2 = whisker_at_unit(A, units, (size_t)j, E.comp.at({X, Y, Z}));
  return M.vcomp(A.at(comb).src, A.at(comb).dst, step2, step1);
}

// Image of the witness that inserts the loop at vertex i.
Id insert_image(const EnrichedCategory &E, const FinCategory &sh,
                const Chain &s, int i) {
  const FinBicategory &M = E.base;
  int n = s.length();
  Id V = chain_vertex(sh, s, i);
  Id eV = E.over.at(V);
  Id ucell = E.unit.at(V);
  Id homVV = E.hom.at({V, V});
  if (n == 0) return ucell;

  TreeArena A{&M, {}};
  auto leaves = chain_leaves(A, E, sh, s);
  int comb = build_comb(A, leaves);
  Id csrc = A.at(comb).src, cdst = A.at(comb).dst, cval = A.at(comb).val;

  if (i == 0) {
    Id r = M.runit_cell(csrc, cdst, cval);
    Id rinv = invert_cell(M, csrc, cdst, r);
    Id w = M.tensor_ar(eV, eV, cdst, A.id2(comb), ucell);
    return M.vcomp(csrc, cdst, w, rinv);  // node(comb, new) is already a comb
  }
  if (i == n) {
    Id l = M.lunit_cell(csrc, cdst, cval);
    Id linv = invert_cell(M, csrc, cdst, l);
    Id w = M.tensor_ar(csrc, cdst, eV, ucell, A.id2(comb));
    int nl = A.leaf(eV, eV, homVV);
    int t1 = A.join(nl, comb);
    std::vector<int> leaves2 = {nl};
    leaves2.insert(leaves2.end(), leaves.begin(), leaves.end());
    Id step = tree_iso(A, t1, build_comb(A, leaves2));
    return M.vcomp(csrc, cdst, step, M.vcomp(csrc, cdst, w, linv));
  }
  // interior insertion: split the comb around the insertion point
  std::vector<int> lb(leaves.begin(), leaves.begin() + (n - i));
  std::vector<int> rb(leaves.begin() + (n - i), leaves.end());
  int L = build_comb(A, lb), R = build_comb(A, rb);
  int split = A.join(L, R);
  Id step1 = tree_iso(A, comb, split);
  Id lR = M.lunit_cell(A.at(R).src, eV, A.at(R).val);
  Id lRinv = invert_cell(M, A.at(R).src, eV, lR);
  Id w1 = M.tensor_ar(A.at(R).src, eV, eV, ucell, A.id2(R));
  Id inner = M.vcomp(A.at(R).src, eV, w1, lRinv);
  Id step2 = M.tensor_ar(A.at(R).src, A.at(R).dst, A.at(L).dst, A.id2(L),
                         inner);
  int nl = A.leaf(eV, eV, homVV);
  int t2 = A.join(L, A.join(nl, R));
  std::vector<int> leaves2 = lb;
  leaves2.push_back(nl);
  leaves2.insert(leaves2.end(), rb.begin(), rb.end());
  Id step3 = tree_iso(A, t2, build_comb(A, leaves2));
  return M.vcomp(csrc, cdst, step3, M.vcomp(csrc, cdst, step2, step1));
}

// General witness image via the canonical generator factorization.
Id witness_image(const EnrichedCategory &E, const FinCategory &sh,
                 const Chain &s, const DeltaMap &u) {
  const FinBicategory &M = E.base;
  Id eU = E.over.at(s.src), eV = E.over.at(chain_target(sh, s));
  Id total = M.id2(eU, eV, chain_value(E, sh, s));
  Chain cur = s;
  for (const DeltaMap &g : factorize_generators(u)) {
    Id step;
    if (g.cod == g.dom - 1) {
      int i = 0;
      while (g.img[(size_t)i] != g.img[(size_t)i + 1]) ++i;
      step = merge_image(E, sh, cur, i);
    } else {
      int i = 0;
      while (i < g.dom && g.img[(size_t)i] == i) ++i;
      step = insert_image(E, sh, cur, i);
    }
    total = M.vcomp(eU, eV, step, total);
    cur = apply_delta(sh, cur, g);
  }
  return total;
}

// Colaxity cell F(t.s) -> F(t).F(s): a pure rebracketing (unitors when one
// side is the empty chain).
Id phi_cell(const EnrichedCategory &E, const FinCategory &sh, int maxlen,
            const Chain &t, const Chain &s) {
  const FinBicategory &M = E.base;
  if (s.length() == 0 && t.length() == 0) {
    Id eA = E.over.at(s.src);
    Id I = M.unit_of(eA);
    return invert_cell(M, eA, eA, M.runit_cell(eA, eA, I));
  }
  if (s.length() == 0) {
    Id eA = E.over.at(s.src), eC = E.over.at(chain_target(sh, t));
    Id ft = chain_value(E, sh, t);
    return invert_cell(M, eA, eC, M.runit_cell(eA, eC, ft));
  }
  if (t.length() == 0) {
    Id eA = E.over.at(s.src), eC = E.over.at(t.src);
    Id fs = chain_value(E, sh, s);
    return invert_cell(M, eA, eC, M.lunit_cell(eA, eC, fs));
  }
  TreeArena A{&M, {}};
  Chain c = concat_chains(sh, maxlen, s, t);
  auto leaves = chain_leaves(A, E, sh, c);
  int comb = build_comb(A, leaves);
  std::vector<int> tl(leaves.begin(), leaves.begin() + t.length());
  std::vector<int> sl(leaves.begin() + t.length(), leaves.end());
  int split = A.join(build_comb(A, tl), build_comb(A, sl));
  return tree_iso(A, comb, split);
}

}  // namespace

PathObject enriched_to_path(const EnrichedCategory &E, int maxlen,
                            const BaseW &W) {
  validate_enriched(E);
  PathObject P;
  P.name = "paths(" + E.name + ")";
  P.shape = coarse(E.objects);
  P.maxlen = maxlen;
  P.target = E.base;
  P.base = W;

  Path2Category PC = build_path_category(P.shape, maxlen);
  ColaxMorphism F;
  F.name = P.name;
  for (const Id &A : E.objects) F.omap[A] = E.over.at(A);
  for (const Id &A : E.objects)
    for (const Id &B : E.objects) {
      const PathHom &H = PC.hom(A, B);
      FinFunctor HF;
      HF.name = "W(" + A + "," + B + ")";
      for (const Chain &c : H.chains)
        HF.omap[chain_id(c)] = chain_value(E, P.shape, c);
      for (const auto &[st, wits] : H.witnesses) {
        const Chain &s = PC.chain_by_id(A, B, st.first);
        for (const DeltaMap &u : wits)
          HF.amap[witness_id(s, u)] = witness_image(E, P.shape, s, u);
      }
      F.hmap[{A, B}] = HF;
    }
  for (const Id &A : E.objects)
    for (const Id &B : E.objects)
      for (const Id &C : E.objects) {
        auto &table = F.coh[{A, B, C}];
        for (const Chain &s : PC.hom(A, B).chains)
          for (const Chain &t : PC.hom(B, C).chains) {
            if (s.length() + t.length() > maxlen) continue;
            table[{chain_id(t), chain_id(s)}] =
                phi_cell(E, P.shape, maxlen, t, s);
          }
      }
  for (const Id &A : E.objects) {
    Id eA = E.over.at(A);
    F.unit_coh[A] = E.base.id2(eA, eA, E.base.unit_of(eA));
  }
  P.functor = F;
  return P;
}

EnrichedCategory strict_to_enriched(const PathObject &P) {
  validate_category(P.shape);
  for (const Id &A : P.shape.objects)
    for (const Id &B : P.shape.objects)
      if (P.shape.hom(A, B).size() != 1)
        throw Error("ShapeMismatch", "hom(" + A + "," + B + ")",
                    "coarse shape expected");
  const FinBicategory &M = P.target;
  const ColaxMorphism &F = P.functor;

  EnrichedCategory E;
  E.name = "enr(" + P.name + ")";
  E.base = M;
  E.objects = P.shape.objects;
  for (const Id &A : E.objects) E.over[A] = F.ob(A);

  auto the_arrow = [&](const Id &A, const Id &B) {
    return P.shape.hom(A, B)[0];
  };
  auto invert_or_throw = [&](const Id &U, const Id &V, const Id &cell,
                             const std::string &loc) -> Id {
    auto inv = inverse_of(M.hom(U, V), cell);
    if (!inv) throw Error("NonInvertibleColaxity", loc, cell);
    return *inv;
  };

  for (const Id &A : E.objects)
    for (const Id &B : E.objects) {
      Chain one{A, {the_arrow(A, B)}};
      E.hom[{A, B}] = F.hf(A, B).ob(chain_id(one));
    }
  for (const Id &A : E.objects) {
    Id eA = F.ob(A);
    Chain empty{A, {}};
    Id w0 = F.hf(A, A).ar(witness_id(empty, insert_generator(0, 0)));
    Id inv = invert_or_throw(eA, eA, F.unit_cell(A), "phi(" + A + ")");
    E.unit[A] = M.vcomp(eA, eA, w0, inv);
  }
  for (const Id &A : E.objects)
    for (const Id &B : E.objects)
      for (const Id &C : E.objects) {
        Id eA = F.ob(A), eC = F.ob(C);
        Chain s{A, {the_arrow(A, B)}}, t{B, {the_arrow(B, C)}};
        Chain two{A, {the_arrow(A, B), the_arrow(B, C)}};
        Id w = F.hf(A, C).ar(witness_id(two, merge_generator(1, 0)));
        Id phi = F.coh_cell(A, B, C, chain_id(t), chain_id(s));
        Id inv = invert_or_throw(
            eA, eC, phi, "phi(" + chain_id(t) + "," + chain_id(s) + ")");
        E.comp[{A, B, C}] = M.vcomp(eA, eC, w, inv);
      }
  validate_enriched(E);
  return E;
}

// ---------------------------------------------------------------------------
// graded one-object view
// ---------------------------------------------------------------------------

HomotopyMonoidView homotopy_monoid_view(const PathObject &P) {
  if (P.shape.objects.size() != 1 || P.shape.arrows.size() != 1)
    throw Error("BaseNotTerminal", P.shape.name);
  Id A = P.shape.objects[0];
  Id loop = P.shape.arrows[0].id;
  Id eA = P.functor.ob(A);
  const FinBicategory &M = P.target;

  auto cid = [&](int n) {
    return chain_id(Chain{A, std::vector<Id>((size_t)n, loop)});
  };
  HomotopyMonoidView V;
  const FinFunctor &HF = P.functor.hf(A, A);
  for (int n = 0; n <= P.maxlen; ++n) V.graded.push_back(HF.ob(cid(n)));
  auto is_id = [&](const Id &cell) {
    IdPair bd = M.boundary(eA, eA, cell);
    return bd.first == bd.second && cell == M.id2(eA, eA, bd.first);
  };
  for (int m = 0; m <= P.maxlen; ++m)
    for (int n = 0; n + m <= P.maxlen; ++n) {
      Id cell = P.functor.coh_cell(A, A, A, cid(m), cid(n));
      V.mult[{m, n}] = cell;
      if (!is_id(cell)) V.strict = false;
    }
  V.unit_cell = P.functor.unit_cell(A);
  if (!is_id(V.unit_cell)) V.strict = false;
  return V;
}

// ---------------------------------------------------------------------------
// premorphisms, base change, restriction, foliation
// ---------------------------------------------------------------------------

bool validate_premorphism(const PathObject &P1, const PathObject &P2,
                          const PathPremorphism &T) {
  if (P2.maxlen < P1.maxlen)
    throw Error("TruncationExceeded", T.name,
                "target truncation is shorter than the source one");
  FinFunctor J = validate_functor(P1.shape, P2.shape, T.shape_map);
  Path2Category PC1 = build_path_category(P1.shape, P1.maxlen);
  Path2Category PC2 = build_path_category(P2.shape, P2.maxlen);
  FinBicategory B1 = as_bicategory(PC1), B2 = as_bicategory(PC2);
  ColaxMorphism PJ = path_functor(PC1, PC2, J);
  ColaxMorphism G = compose_colax(B1, B2, P2.target, P2.functor, PJ);
  validate_transformation(B1, P1.target, P1.functor, G, T.sigma);
  bool strict = true;
  for (const Id &A : P1.shape.objects)
    strict = strict && (map_at(T.sigma.comp1, A, "UnknownObject", A) ==
                        P1.target.unit_of(P1.functor.ob(A)));
  return strict;
}

PathObject base_change(const PathObject &P, const FinBicategory &N,
                       const BaseW &WN, const ColaxMorphism &Phi) {
  validate_base(P.target, P.base);
  validate_base(N, WN);
  validate_colax(P.target, N, Phi);
  for (const auto &[UV, H] : P.target.homs) {
    FinFunctor HF = validate_functor(
        H, N.hom(Phi.ob(UV.first), Phi.ob(UV.second)), Phi.hf(UV.first, UV.second));
    for (const Arrow &cell : H.arrows)
      if (in_base(P.target, P.base, UV.first, UV.second, cell.id) &&
          !in_base(N, WN, Phi.ob(UV.first), Phi.ob(UV.second),
                   HF.ar(cell.id)))
        throw Error("WNotPreserved",
                    "(" + UV.first + "," + UV.second + ")", cell.id);
  }
  Path2Category PC = build_path_category(P.shape, P.maxlen);
  FinBicategory B = as_bicategory(PC);
  PathObject Q;
  Q.name = Phi.name + "(" + P.name + ")";
  Q.shape = P.shape;
  Q.maxlen = P.maxlen;
  Q.target = N;
  Q.base = WN;
  Q.functor = compose_colax(B, P.target, N, Phi, P.functor);
  return Q;
}

PathObject restrict_shape(const PathObject &P, const FinCategory &newShape,
                          const FinFunctor &J) {
  FinFunctor JJ = validate_functor(newShape, P.shape, J);
  Path2Category PD = build_path_category(newShape, P.maxlen);
  Path2Category PC = build_path_category(P.shape, P.maxlen);
  ColaxMorphism PJ = path_functor(PD, PC, JJ);
  PathObject Q;
  Q.name = P.name + "|" + newShape.name;
  Q.shape = newShape;
  Q.maxlen = P.maxlen;
  Q.target = P.target;
  Q.base = P.base;
  Q.functor = compose_colax(as_bicategory(PD), as_bicategory(PC), P.target,
                            P.functor, PJ);
  return Q;
}

std::vector<PathObject> foliation(const PathObject &P) {
  const FinCategory &C = P.shape;
  if (C.objects.empty()) throw Error("EmptyLeaf", C.name);
  std::map<Id, Id> parent;
  for (const Id &A : C.objects) parent[A] = A;
  std::function<Id(const Id &)> find = [&](const Id &A) -> Id {
    if (parent[A] == A) return A;
    return parent[A] = find(parent[A]);
  };
  for (const Arrow &f : C.arrows) parent[find(f.src)] = find(f.dst);

  std::vector<Id> roots;
  for (const Id &A : C.objects)
    if (std::find(roots.begin(), roots.end(), find(A)) == roots.end())
      roots.push_back(find(A));

  std::vector<PathObject> out;
  for (size_t k = 0; k < roots.size(); ++k) {
    FinCategory S;
    S.name = C.name + "#" + std::to_string(k);
    for (const Id &A : C.objects)
      if (find(A) == roots[k]) S.objects.push_back(A);
    auto keep = [&](const Id &A) {
      return std::find(S.objects.begin(), S.objects.end(), A) !=
             S.objects.end();
    };
    for (const Arrow &f : C.arrows)
      if (keep(f.src) && keep(f.dst)) S.arrows.push_back(f);
    for (const auto &[A, i] : C.identity)
      if (keep(A)) S.identity[A] = i;
    for (const auto &[gf, h] : C.comp)
      if (S.has_arrow(gf.first) && S.has_arrow(gf.second)) S.comp[gf] = h;
    FinFunctor J;
    J.name = "leaf" + std::to_string(k);
    for (const Id &A : S.objects) J.omap[A] = A;
    for (const Arrow &f : S.arrows) J.amap[f.id] = f.id;
    out.push_back(restrict_shape(P, S, J));
  }
  return out;
}

// ---------------------------------------------------------------------------
// truncated simplicial data
// ---------------------------------------------------------------------------

namespace {

using Theta = std::vector<int>;

std::string theta_str(int k, const Theta &t) {
  std::vector<std::string> parts;
  for (int v : t) parts.push_back(std::to_string(v));
  return std::to_string(k) + ":[" + join(parts, ",") + "]";
}

std::vector<Theta> monotone_maps(int j, int k) {
  std::vector<Theta> out;
  for (const DeltaMap &u : enumerate_hom(j + 1, k + 1)) out.push_back(u.img);
  return out;
}

Theta compose_theta(const Theta &theta, const Theta &psi) {
  Theta r(psi.size());
  for (size_t p = 0; p < psi.size(); ++p) r[p] = theta[(size_t)psi[p]];
  return r;
}

void check_levels(const std::map<int, std::vector<Id>> &levels, int N) {
  if (N < 0) throw Error("DomainMismatch", "N", "negative truncation");
  for (int k = 0; k <= N; ++k) {
    auto it = levels.find(k);
    if (it == levels.end())
      throw Error("UnknownObject", "level " + std::to_string(k));
    std::set<Id> seen;
    for (const Id &x : it->second)
      if (!seen.insert(x).second)
        throw Error("DuplicateName", "level " + std::to_string(k), x);
  }
  if (levels.at(0).size() != 1) throw Error("ShapeNotTerminal", "level 0");
}

const Id &apply_map(const std::map<Id, Id> &m, const Id &x,
                    const std::string &loc) {
  auto it = m.find(x);
  if (it == m.end()) throw Error("NonFunctorialAction", loc, x);
  return it->second;
}

bool elem_of(const std::vector<Id> &v, const Id &x) {
  return std::find(v.begin(), v.end(), x) != v.end();
}

}  // namespace

void validate_simplicial(const SimplicialTruncation &X) {
  check_levels(X.levels, X.N);
  for (int j = 0; j <= X.N; ++j)
    for (int k = 0; k <= X.N; ++k)
      for (const Theta &t : monotone_maps(j, k)) {
        std::string loc = theta_str(k, t);
        auto it = X.action.find({k, t});
        if (it == X.action.end())
          throw Error("NonFunctorialAction", loc, "missing action");
        for (const Id &x : X.levels.at(k))
          if (!elem_of(X.levels.at(j), apply_map(it->second, x, loc)))
            throw Error("NonFunctorialAction", loc, x);
      }
  for (int k = 0; k <= X.N; ++k) {
    Theta idk;
    for (int v = 0; v <= k; ++v) idk.push_back(v);
    const auto &act = X.action.at({k, idk});
    for (const Id &x : X.levels.at(k))
      if (act.at(x) != x)
        throw Error("NonFunctorialAction", theta_str(k, idk), x);
  }
  for (int i = 0; i <= X.N; ++i)
    for (int j = 0; j <= X.N; ++j)
      for (int k = 0; k <= X.N; ++k)
        for (const Theta &psi : monotone_maps(i, j))
          for (const Theta &theta : monotone_maps(j, k)) {
            const auto &big = X.action.at({k, compose_theta(theta, psi)});
            const auto &at = X.action.at({k, theta});
            const auto &ap = X.action.at({j, psi});
            for (const Id &x : X.levels.at(k))
              if (big.at(x) != ap.at(at.at(x)))
                throw Error("NonFunctorialAction",
                            theta_str(k, theta) + " . " + theta_str(j, psi),
                            x);
          }
}

void validate_pathmonoid(const SetPathMonoid &Y) {
  check_levels(Y.levels, Y.N);
  for (int n = 0; n <= Y.N; ++n)
    for (int m = 0; m <= Y.N; ++m)
      for (const DeltaMap &u : enumerate_hom(n, m)) {
        auto it = Y.action.find(u);
        if (it == Y.action.end())
          throw Error("NonFunctorialAction", u.str(), "missing action");
        for (const Id &x : Y.levels.at(n))
          if (!elem_of(Y.levels.at(m), apply_map(it->second, x, u.str())))
            throw Error("NonFunctorialAction", u.str(), x);
      }
  for (int n = 0; n <= Y.N; ++n) {
    const auto &act = Y.action.at(delta_identity(n));
    for (const Id &x : Y.levels.at(n))
      if (act.at(x) != x)
        throw Error("NonFunctorialAction", delta_identity(n).str(), x);
  }
  for (int n = 0; n <= Y.N; ++n)
    for (int m = 0; m <= Y.N; ++m)
      for (int k = 0; k <= Y.N; ++k)
        for (const DeltaMap &u : enumerate_hom(n, m))
          for (const DeltaMap &v : enumerate_hom(m, k)) {
            const auto &big = Y.action.at(compose_delta(v, u));
            const auto &au = Y.action.at(u);
            const auto &av = Y.action.at(v);
            for (const Id &x : Y.levels.at(n))
              if (big.at(x) != av.at(au.at(x)))
                throw Error("NonFunctorialAction", v.str() + " . " + u.str(),
                            x);
          }
  // splits: totality and typing
  auto split_loc = [](int m, int n) {
    return "xi(" + std::to_string(m) + "," + std::to_string(n) + ")";
  };
  for (int m = 0; m <= Y.N; ++m)
    for (int n = 0; m + n <= Y.N; ++n) {
      auto it = Y.split.find({m, n});
      if (it == Y.split.end())
        throw Error("NotCartesianTarget", split_loc(m, n), "missing split");
      for (const Id &x : Y.levels.at(m + n)) {
        auto jt = it->second.find(x);
        if (jt == it->second.end())
          throw Error("NotCartesianTarget", split_loc(m, n), x);
        if (!elem_of(Y.levels.at(m), jt->second.first) ||
            !elem_of(Y.levels.at(n), jt->second.second))
          throw Error("NotCartesianTarget", split_loc(m, n), x);
      }
    }
  // unit splits are the canonical ones
  Id e0 = Y.levels.at(0)[0];
  for (int n = 0; n <= Y.N; ++n)
    for (const Id &x : Y.levels.at(n)) {
      auto a = Y.split.at({0, n}).at(x);
      if (a.first != e0 || a.second != x)
        throw Error("M2Violation", split_loc(0, n), x);
      auto b = Y.split.at({n, 0}).at(x);
      if (b.first != x || b.second != e0)
        throw Error("M2Violation", split_loc(n, 0), x);
    }
  // coassociativity of the splitting
  for (int m = 0; m <= Y.N; ++m)
    for (int n = 0; m + n <= Y.N; ++n)
      for (int r = 0; m + n + r <= Y.N; ++r)
        for (const Id &x : Y.levels.at(m + n + r)) {
          auto [ab, c] = Y.split.at({m + n, r}).at(x);
          auto [a1, b1] = Y.split.at({m, n}).at(ab);
          auto [a2, bc] = Y.split.at({m, n + r}).at(x);
          auto [b2, c2] = Y.split.at({n, r}).at(bc);
          if (a1 != a2 || b1 != b2 || c != c2)
            throw Error("M1Violation",
                        split_loc(m, n) + "/" + split_loc(n, r), x);
        }
  // naturality of the splitting against block sums
  for (int m = 0; m <= Y.N; ++m)
    for (int n = 0; m + n <= Y.N; ++n)
      for (int m2 = 0; m2 <= Y.N; ++m2)
        for (int n2 = 0; m2 + n2 <= Y.N; ++n2)
          for (const DeltaMap &u : enumerate_hom(m, m2))
            for (const DeltaMap &v : enumerate_hom(n, n2)) {
              const auto &sum = Y.action.at(ordinal_sum(u, v));
              for (const Id &x : Y.levels.at(m + n)) {
                auto ab = Y.split.at({m, n}).at(x);
                auto cd = Y.split.at({m2, n2}).at(sum.at(x));
                if (cd.first != Y.action.at(u).at(ab.first) ||
                    cd.second != Y.action.at(v).at(ab.second))
                  throw Error("NonNaturalColaxity",
                              split_loc(m, n) + " @ " + u.str() + "+" +
                                  v.str(),
                              x);
              }
            }
}

SimplicialTruncation pathmonoid_to_simplicial(const SetPathMonoid &Y) {
  validate_pathmonoid(Y);
  SimplicialTruncation X;
  X.N = Y.N;
  X.levels = Y.levels;
  for (int j = 0; j <= Y.N; ++j)
    for (int k = 0; k <= Y.N; ++k)
      for (const Theta &t : monotone_maps(j, k)) {
        int p = t[0];
        int q = t[(size_t)j] - p;
        int r = k - t[(size_t)j];
        Theta t0(t.size());
        for (size_t z = 0; z < t.size(); ++z) t0[z] = t[z] - p;
        DeltaMap u = ep_to_delta(t0, q, j);
        std::map<Id, Id> act;
        for (const Id &x : Y.levels.at(k)) {
          const Id &bc = Y.split.at({p, q + r}).at(x).second;
          const Id &b = Y.split.at({q, r}).at(bc).first;
          act[x] = Y.action.at(u).at(b);
        }
        X.action[{k, t}] = std::move(act);
      }
  return X;
}

SetPathMonoid simplicial_to_pathmonoid(const SimplicialTruncation &X) {
  validate_simplicial(X);
  SetPathMonoid Y;
  Y.N = X.N;
  Y.levels = X.levels;
  for (int n = 0; n <= X.N; ++n)
    for (int m = 0; m <= X.N; ++m)
      for (const DeltaMap &u : enumerate_hom(n, m))
        Y.action[u] = X.action.at({n, ep_dual(u)});
  for (int m = 0; m <= X.N; ++m)
    for (int n = 0; m + n <= X.N; ++n) {
      Theta front, back;
      for (int z = 0; z <= m; ++z) front.push_back(z);
      for (int z = 0; z <= n; ++z) back.push_back(m + z);
      const auto &af = X.action.at({m + n, front});
      const auto &ab = X.action.at({m + n, back});
      std::map<Id, IdPair> sp;
      for (const Id &x : X.levels.at(m + n)) sp[x] = {af.at(x), ab.at(x)};
      Y.split[{m, n}] = std::move(sp);
    }
  return Y;
}

SetPathMonoid monoid_pathmonoid(const FinCategory &BS, int N) {
  validate_category(BS);
  if (BS.objects.size() != 1)
    throw Error("ShapeMismatch", BS.name, "one object expected");
  Id pt = BS.objects[0];
  std::vector<Id> letters;
  for (const Arrow &f : BS.arrows) letters.push_back(f.id);

  auto word_id = [](const std::vector<Id> &w) {
    return "w(" + join(w, "|") + ")";
  };
  std::vector<std::vector<std::vector<Id>>> words((size_t)N + 1);
  words[0] = {{}};
  for (int n = 1; n <= N; ++n)
    for (const auto &w : words[(size_t)n - 1])
      for (const Id &a : letters) {
        std::vector<Id> w2 = w;
        w2.push_back(a);
        words[(size_t)n].push_back(w2);
      }

  SetPathMonoid Y;
  Y.N = N;
  for (int n = 0; n <= N; ++n)
    for (const auto &w : words[(size_t)n]) Y.levels[n].push_back(word_id(w));
  for (int n = 0; n <= N; ++n)
    for (int m = 0; m <= N; ++m)
      for (const DeltaMap &u : enumerate_hom(n, m)) {
        std::map<Id, Id> act;
        for (const auto &w : words[(size_t)n])
          act[word_id(w)] = word_id(apply_delta(BS, Chain{pt, w}, u).seq);
        Y.action[u] = std::move(act);
      }
  for (int m = 0; m <= N; ++m)
    for (int n = 0; m + n <= N; ++n) {
      std::map<Id, IdPair> sp;
      for (const auto &w : words[(size_t)(m + n)]) {
        std::vector<Id> a(w.begin(), w.begin() + m);
        std::vector<Id> b(w.begin() + m, w.end());
        sp[word_id(w)] = {word_id(a), word_id(b)};
      }
      Y.split[{m, n}] = std::move(sp);
    }
  return Y;
}

// ---------------------------------------------------------------------------
// cocycles
// ---------------------------------------------------------------------------

CocycleReport cocycle_check(const std::vector<Id> &points,
                            const FinCategory &G,
                            const std::map<IdPair, Id> &f, int maxlen) {
  validate_category(G);
  if (G.objects.size() != 1)
    throw Error("ShapeMismatch", G.name, "one object expected");
  Id pt = G.objects[0];
  Id e = G.id_of(pt);

  auto fat = [&](const Id &a, const Id &b) -> Id {
    return map_at(f, IdPair{a, b}, "UnknownObject", "f(" + a + "," + b + ")");
  };
  for (const Id &a : points)
    if (fat(a, a) != e) throw Error("UnitViolation", "f(" + a + "," + a + ")",
                                    fat(a, a));
  for (const Id &a : points)
    for (const Id &b : points)
      for (const Id &c : points)
        if (G.compose(fat(b, c), fat(a, b)) != fat(a, c))
          throw Error("CocycleViolation", "(" + a + "," + b + "," + c + ")",
                      G.compose(fat(b, c), fat(a, b)) + " != " + fat(a, c));

  CocycleReport R;
  FinCategory sh = coarse(points);
  FinFunctor W;
  W.name = "transition";
  for (const Id &a : points) W.omap[a] = pt;
  for (const Id &a : points)
    for (const Id &b : points) W.amap["c(" + a + "," + b + ")"] = fat(a, b);
  R.transition = validate_functor(sh, G, W);

  // one-object 2-category: 1-cells the elements of G in diagram order,
  // 2-cells only identities
  FinBicategory S;
  S.name = "B(" + G.name + ")";
  S.objects = {"pt"};
  FinCategory H;
  H.name = "cells(" + G.name + ")";
  for (const Arrow &g : G.arrows) H.objects.push_back(g.id);
  H.finalize();
  S.homs[{"pt", "pt"}] = H;
  S.unit["pt"] = e;
  FinBicategory::Tensor T;
  for (const Arrow &t : G.arrows)
    for (const Arrow &s : G.arrows) {
      Id ts = G.compose(t.id, s.id);
      T.ob[{t.id, s.id}] = ts;
      T.ar[{H.id_of(t.id), H.id_of(s.id)}] = H.id_of(ts);
    }
  S.comp[{"pt", "pt", "pt"}] = T;

  PathObject P;
  P.name = "cocycle(" + G.name + ")";
  P.shape = sh;
  P.maxlen = maxlen;
  P.target = S;
  P.base = BaseW::iso();
  ColaxMorphism F;
  F.name = P.name;
  Path2Category PC = build_path_category(sh, maxlen);
  auto transport = [&](const Chain &c) {
    Id v = e;
    for (const Id &arrow : c.seq) v = G.compose(R.transition.ar(arrow), v);
    return v;
  };
  for (const Id &a : points) F.omap[a] = "pt";
  for (const Id &a : points)
    for (const Id &b : points) {
      const PathHom &HM = PC.hom(a, b);
      FinFunctor HF;
      HF.name = "T(" + a + "," + b + ")";
      for (const Chain &c : HM.chains) HF.omap[chain_id(c)] = transport(c);
      for (const auto &[st, wits] : HM.witnesses) {
        const Chain &s = PC.chain_by_id(a, b, st.first);
        for (const DeltaMap &u : wits)
          HF.amap[witness_id(s, u)] = H.id_of(transport(s));
      }
      F.hmap[{a, b}] = HF;
    }
  for (const Id &a : points)
    for (const Id &b : points)
      for (const Id &c : points) {
        auto &table = F.coh[{a, b, c}];
        for (const Chain &s : PC.hom(a, b).chains)
          for (const Chain &t : PC.hom(b, c).chains) {
            if (s.length() + t.length() > maxlen) continue;
            table[{chain_id(t), chain_id(s)}] =
                H.id_of(transport(concat_chains(sh, maxlen, s, t)));
          }
      }
  for (const Id &a : points) F.unit_coh[a] = H.id_of(e);
  P.functor = F;
  R.associated = P;
  check_path_object(R.associated);
  return R;
}

// ---------------------------------------------------------------------------
// quantales and metrics
// ---------------------------------------------------------------------------

namespace {

long qnum(const Id &x) {
  if (x == "inf") return -1;  // encoded infinity
  if (x.empty() || x.find_first_not_of("0123456789") != std::string::npos ||
      x.size() > 9)
    throw Error("DomainMismatch", "quantale value", x);
  return std::stol(x);
}

bool qle(const Id &x, const Id &y) {  // x <= y as extended naturals
  if (y == "inf") return true;
  if (x == "inf") return false;
  return qnum(x) <= qnum(y);
}

Id quantale_arrow(const FinCategory &Q, const Id &x, const Id &y) {
  if (x == y) return Q.id_of(x);
  return "ge(" + x + "," + y + ")";
}

}  // namespace

Id quantale_add(int K, const Id &x, const Id &y) {
  if (x == "inf" || y == "inf") return "inf";
  long v = qnum(x) + qnum(y);
  if (v > K) return "inf";
  return std::to_string(v);
}

MonoidalCategory quantale_monoidal(int K) {
  if (K < 0) throw Error("DomainMismatch", "K", "negative cap");
  FinCategory C;
  C.name = "Q" + std::to_string(K);
  for (int v = 0; v <= K; ++v) C.objects.push_back(std::to_string(v));
  C.objects.push_back("inf");
  // arrows downward: x -> y exactly when x >= y
  for (const Id &x : C.objects)
    for (const Id &y : C.objects)
      if (x != y && qle(y, x)) C.arrows.push_back({"ge(" + x + "," + y + ")", x, y});
  for (const Id &x : C.objects)
    for (const Id &y : C.objects)
      for (const Id &z : C.objects)
        if (x != y && y != z && qle(y, x) && qle(z, y))
          C.comp[{"ge(" + y + "," + z + ")", "ge(" + x + "," + y + ")"}] =
              quantale_arrow(C, x, z);
  C.finalize();

  MonoidalCategory M;
  M.name = C.name;
  M.base = C;
  M.unit_ob = "0";
  for (const Id &x : C.objects)
    for (const Id &y : C.objects) M.tensor_ob[{x, y}] = quantale_add(K, x, y);
  for (const Arrow &a : C.arrows)
    for (const Arrow &b : C.arrows)
      M.tensor_ar[{a.id, b.id}] = quantale_arrow(
          C, quantale_add(K, a.src, b.src), quantale_add(K, a.dst, b.dst));
  return M;
}

FinBicategory quantale_bicategory(const std::vector<Id> &objects, int K) {
  if (objects.empty()) throw Error("EmptySet", "objects");
  MonoidalCategory Q = quantale_monoidal(K);
  FinBicategory B;
  B.name = "Q" + std::to_string(K) + "-bicat";
  B.objects = objects;
  FinBicategory::Tensor T;
  T.ob = Q.tensor_ob;
  T.ar = Q.tensor_ar;
  for (const Id &U : objects)
    for (const Id &V : objects) B.homs[{U, V}] = Q.base;
  for (const Id &U : objects) B.unit[U] = Q.unit_ob;
  for (const Id &U : objects)
    for (const Id &V : objects)
      for (const Id &W : objects) B.comp[{U, V, W}] = T;
  return B;
}

EnrichedCategory metric_enrichment(const MetricSpace &X) {
  if (X.points.empty()) throw Error("EmptySet", X.name);
  auto dat = [&](const Id &x, const Id &y) -> Id {
    Id v = map_at(X.d, IdPair{x, y}, "UnknownObject",
                  "d(" + x + "," + y + ")");
    if (v != "inf" && (qnum(v) < 0 || qnum(v) > X.K))
      throw Error("DomainMismatch", "d(" + x + "," + y + ")", v);
    return v;
  };
  for (const Id &x : X.points)
    if (dat(x, x) != "0")
      throw Error("ZeroDiagonalViolation", "d(" + x + "," + x + ")",
                  dat(x, x));
  for (const Id &x : X.points)
    for (const Id &y : X.points)
      for (const Id &z : X.points)
        if (!qle(dat(x, z), quantale_add(X.K, dat(x, y), dat(y, z))))
          throw Error("TriangleViolation",
                      "(" + x + "," + y + "," + z + ")",
                      dat(x, z) + " > " + dat(x, y) + "+" + dat(y, z));

  EnrichedCategory E;
  E.name = X.name;
  E.base = quantale_bicategory({"pt"}, X.K);
  const FinCategory &Q = E.base.hom("pt", "pt");
  E.objects = X.points;
  for (const Id &x : X.points) E.over[x] = "pt";
  for (const Id &x : X.points)
    for (const Id &y : X.points) E.hom[{x, y}] = dat(x, y);
  for (const Id &x : X.points)
    for (const Id &y : X.points)
      for (const Id &z : X.points)
        E.comp[{x, y, z}] = quantale_arrow(
            Q, quantale_add(X.K, dat(y, z), dat(x, y)), dat(x, z));
  for (const Id &x : X.points) E.unit[x] = Q.id_of("0");
  validate_enriched(E);
  return E;
}

void check_nonexpansive(const MetricSpace &X, const MetricSpace &Y,
                        const std::map<Id, Id> &map) {
  auto img = [&](const Id &x) -> Id {
    Id y = map_at(map, x, "UnknownObject", x);
    if (std::find(Y.points.begin(), Y.points.end(), y) == Y.points.end())
      throw Error("UnknownObject", x, y);
    return y;
  };
  for (const Id &x : X.points)
    for (const Id &y : X.points) {
      Id dx = map_at(X.d, IdPair{x, y}, "UnknownObject",
                     "d(" + x + "," + y + ")");
      Id dy = map_at(Y.d, IdPair{img(x), img(y)}, "UnknownObject",
                     "d(" + img(x) + "," + img(y) + ")");
      if (!qle(dy, dx))
        throw Error("ExpansionViolation", "(" + x + "," + y + ")",
                    dy + " > " + dx);
    }
}

} // namespace pathcat
