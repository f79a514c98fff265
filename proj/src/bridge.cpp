// Rigid bridges, the thin bridge, the distributor correspondence, and
// bimodules with boundary conditions.
#include "pathcat/bridge.hpp"

#include <algorithm>
#include <functional>
#include <set>

namespace pathcat {

namespace {

// Renaming applied to the two halves of a bridge when their object or
// arrow ids collide: everything from the left gets "L:", from the right
// "R:".  Identity renames otherwise.
struct SideNames {
  std::map<Id, Id> obC, arC, obD, arD;
};

SideNames merge_names(const FinCategory &C, const FinCategory &D) {
  bool clash = false;
  std::set<Id> obs(C.objects.begin(), C.objects.end());
  for (const Id &o : D.objects)
    if (obs.count(o)) clash = true;
  std::set<Id> ars;
  for (const Arrow &a : C.arrows) ars.insert(a.id);
  for (const Arrow &a : D.arrows)
    if (ars.count(a.id)) clash = true;
  SideNames N;
  auto fill = [&](const FinCategory &S, const std::string &prefix,
                  std::map<Id, Id> &ob, std::map<Id, Id> &ar) {
    for (const Id &o : S.objects) ob[o] = clash ? prefix + o : o;
    for (const Arrow &a : S.arrows) ar[a.id] = clash ? prefix + a.id : a.id;
  };
  fill(C, "L:", N.obC, N.arC);
  fill(D, "R:", N.obD, N.arD);
  return N;
}

// Copies the objects, arrows, identities, and composition table of S into
// E under the given renaming.
void copy_side(FinCategory &E, const FinCategory &S,
               const std::map<Id, Id> &ob, const std::map<Id, Id> &ar) {
  for (const Id &o : S.objects) E.objects.push_back(ob.at(o));
  for (const Arrow &a : S.arrows)
    E.arrows.push_back({ar.at(a.id), ob.at(a.src), ob.at(a.dst)});
  for (const auto &[o, i] : S.identity) E.identity[ob.at(o)] = ar.at(i);
  for (const auto &[gf, h] : S.comp)
    E.comp[{ar.at(gf.first), ar.at(gf.second)}] = ar.at(h);
}

FinFunctor side_embedding(const std::string &name, const FinCategory &S,
                          const std::map<Id, Id> &ob,
                          const std::map<Id, Id> &ar) {
  FinFunctor F;
  F.name = name;
  F.omap = ob;
  F.amap = ar;
  (void)S;
  return F;
}

bool same_shape(const FinCategory &A, const FinCategory &B) {
  if (A.objects != B.objects || A.arrows.size() != B.arrows.size())
    return false;
  for (std::size_t i = 0; i < A.arrows.size(); ++i)
    if (A.arrows[i].id != B.arrows[i].id ||
        A.arrows[i].src != B.arrows[i].src ||
        A.arrows[i].dst != B.arrows[i].dst)
      return false;
  return true;
}

} // namespace

void validate_bridge(const RigidBridge &B) {
  validate_category(B.left);
  validate_category(B.right);
  validate_category(B.total);
  FinFunctor fc = validate_functor(B.left, B.total, B.fromC);
  FinFunctor fd = validate_functor(B.right, B.total, B.fromD);

  // rigidity: every total object is hit exactly once by the two embeddings
  std::map<Id, int> hits;
  for (const Id &o : B.total.objects) hits[o] = 0;
  for (const Id &o : B.left.objects) ++hits[fc.ob(o)];
  for (const Id &o : B.right.objects) ++hits[fd.ob(o)];
  for (const auto &[o, n] : hits)
    if (n != 1)
      throw Error("ShapeMismatch", "Ob(E)",
                  o + (n == 0 ? " outside both images" : " hit twice"));

  // full faithfulness of both embeddings
  auto faithful = [&](const FinCategory &S, const FinFunctor &F) {
    for (const Id &A : S.objects)
      for (const Id &B2 : S.objects) {
        std::set<Id> img;
        for (const Id &f : S.hom(A, B2)) img.insert(F.ar(f));
        std::vector<Id> eh = B.total.hom(F.ob(A), F.ob(B2));
        if (img.size() != S.hom(A, B2).size() ||
            img != std::set<Id>(eh.begin(), eh.end()))
          throw Error("IsoFailure", "hom(" + A + "," + B2 + ")",
                      "embedding is not fully faithful");
      }
  };
  faithful(B.left, fc);
  faithful(B.right, fd);

  // orientation: nothing runs from the D side back to the C side
  for (const Id &Bo : B.right.objects)
    for (const Id &Ao : B.left.objects)
      if (!B.total.hom(fd.ob(Bo), fc.ob(Ao)).empty())
        throw Error("DomainMismatch", "hom(" + Bo + "," + Ao + ")",
                    "bridge orientation violated");
}

RigidBridge thin_bridge(const FinCategory &C, const FinCategory &D) {
  validate_category(C);
  validate_category(D);
  SideNames N = merge_names(C, D);
  FinCategory E;
  E.name = C.name + "<" + D.name;
  copy_side(E, C, N.obC, N.arC);
  copy_side(E, D, N.obD, N.arD);

  std::set<Id> used;
  for (const Arrow &a : E.arrows) used.insert(a.id);
  auto cross = [&](const Id &a, const Id &b) {
    return "x(" + a + "," + b + ")";
  };
  for (const Id &A : C.objects)
    for (const Id &B : D.objects) {
      Id x = cross(N.obC.at(A), N.obD.at(B));
      if (used.count(x)) throw Error("DuplicateName", x);
      E.arrows.push_back({x, N.obC.at(A), N.obD.at(B)});
    }
  // constant cross-composition: [f, (A,B)] -> (dom f, B) and
  // [(A,B), g] -> (A, cod g)
  for (const Id &A : C.objects)
    for (const Id &B : D.objects) {
      Id x = cross(N.obC.at(A), N.obD.at(B));
      for (const Arrow &f : C.arrows)
        if (f.dst == A)
          E.comp[{x, N.arC.at(f.id)}] = cross(N.obC.at(f.src), N.obD.at(B));
      for (const Arrow &g : D.arrows)
        if (g.src == B)
          E.comp[{N.arD.at(g.id), x}] = cross(N.obC.at(A), N.obD.at(g.dst));
    }
  E.finalize();
  validate_category(E);

  RigidBridge B;
  B.name = E.name;
  B.left = C;
  B.right = D;
  B.total = E;
  B.fromC = side_embedding("left(" + E.name + ")", C, N.obC, N.arC);
  B.fromD = side_embedding("right(" + E.name + ")", D, N.obD, N.arD);
  validate_bridge(B);
  return B;
}

void validate_distributor(const Distributor &X) {
  validate_category(X.left);
  validate_category(X.right);

  std::set<Id> used;
  for (const Arrow &a : X.left.arrows) used.insert(a.id);
  for (const Arrow &a : X.right.arrows) used.insert(a.id);
  std::map<Id, IdPair> loc; // element -> (A, D) it lives over
  for (const Id &A : X.left.objects)
    for (const Id &Dd : X.right.objects) {
      auto it = X.table.find({A, Dd});
      if (it == X.table.end())
        throw Error("UnknownObject", "X(" + Dd + ")(" + A + ")",
                    "missing table entry");
      for (const Id &a : it->second) {
        if (used.count(a) || loc.count(a)) throw Error("DuplicateName", a);
        loc[a] = {A, Dd};
      }
    }

  auto elems = [&](const Id &A, const Id &Dd) -> const std::vector<Id> & {
    return X.table.at({A, Dd});
  };
  // totality and typing of the two actions
  for (const Arrow &f : X.left.arrows) {
    if (X.left.is_identity(f.id)) continue;
    for (const Id &Dd : X.right.objects)
      for (const Id &a : elems(f.dst, Dd)) {
        auto it = X.lact.find(f.id);
        if (it == X.lact.end() || !it->second.count(a))
          throw Error("UnknownObject", "X(" + f.id + ")", a);
        const Id &v = it->second.at(a);
        if (!loc.count(v) || loc.at(v) != IdPair{f.src, Dd})
          throw Error("DomainMismatch", "X(" + f.id + ")(" + a + ")", v);
      }
  }
  for (const Arrow &g : X.right.arrows) {
    if (X.right.is_identity(g.id)) continue;
    for (const Id &A : X.left.objects)
      for (const Id &a : elems(A, g.src)) {
        auto it = X.ract.find(g.id);
        if (it == X.ract.end() || !it->second.count(a))
          throw Error("UnknownObject", "X(" + g.id + ")", a);
        const Id &v = it->second.at(a);
        if (!loc.count(v) || loc.at(v) != IdPair{A, g.dst})
          throw Error("DomainMismatch", "X(" + g.id + ")(" + a + ")", v);
      }
  }

  auto actL = [&](const Id &f, const Id &a) {
    return X.left.is_identity(f) ? a : X.lact.at(f).at(a);
  };
  auto actR = [&](const Id &g, const Id &a) {
    return X.right.is_identity(g) ? a : X.ract.at(g).at(a);
  };
  // contravariant functoriality in C: X(f2 . f1) = X(f1) after X(f2)
  for (const Arrow &f1 : X.left.arrows)
    for (const Arrow &f2 : X.left.arrows) {
      if (f2.src != f1.dst) continue;
      Id c = X.left.compose(f2.id, f1.id);
      for (const Id &Dd : X.right.objects)
        for (const Id &a : elems(f2.dst, Dd))
          if (actL(c, a) != actL(f1.id, actL(f2.id, a)))
            throw Error("NonFunctorialAction",
                        "X(" + f2.id + " . " + f1.id + ")", a);
    }
  // covariant functoriality in D
  for (const Arrow &g1 : X.right.arrows)
    for (const Arrow &g2 : X.right.arrows) {
      if (g2.src != g1.dst) continue;
      Id c = X.right.compose(g2.id, g1.id);
      for (const Id &A : X.left.objects)
        for (const Id &a : elems(A, g1.src))
          if (actR(c, a) != actR(g2.id, actR(g1.id, a)))
            throw Error("NonFunctorialAction",
                        "X(" + g2.id + " . " + g1.id + ")", a);
    }
  // the two actions commute
  for (const Arrow &f : X.left.arrows)
    for (const Arrow &g : X.right.arrows)
      for (const Id &a : elems(f.dst, g.src))
        if (actR(g.id, actL(f.id, a)) != actL(f.id, actR(g.id, a)))
          throw Error("ActionAssociativityViolation",
                      "(" + f.id + "," + g.id + ")", a);
}

RigidBridge bridge_of_distributor(const Distributor &X) {
  validate_distributor(X);
  SideNames N = merge_names(X.left, X.right);
  FinCategory E;
  E.name = "E(" + X.name + ")";
  copy_side(E, X.left, N.obC, N.arC);
  copy_side(E, X.right, N.obD, N.arD);

  std::set<Id> used;
  for (const Arrow &a : E.arrows) used.insert(a.id);
  for (const Id &A : X.left.objects)
    for (const Id &Dd : X.right.objects)
      for (const Id &a : X.table.at({A, Dd})) {
        if (used.count(a)) throw Error("DuplicateName", a);
        E.arrows.push_back({a, N.obC.at(A), N.obD.at(Dd)});
      }
  for (const Arrow &f : X.left.arrows) {
    if (X.left.is_identity(f.id)) continue;
    for (const Id &Dd : X.right.objects)
      for (const Id &a : X.table.at({f.dst, Dd}))
        E.comp[{a, N.arC.at(f.id)}] = X.lact.at(f.id).at(a);
  }
  for (const Arrow &g : X.right.arrows) {
    if (X.right.is_identity(g.id)) continue;
    for (const Id &A : X.left.objects)
      for (const Id &a : X.table.at({A, g.src}))
        E.comp[{N.arD.at(g.id), a}] = X.ract.at(g.id).at(a);
  }
  E.finalize();
  try {
    validate_category(E);
  } catch (const Error &e) {
    if (e.code() == "AssociativityViolation")
      throw Error("ActionAssociativityViolation", "composition in E",
                  e.what());
    throw;
  }

  RigidBridge B;
  B.name = E.name;
  B.left = X.left;
  B.right = X.right;
  B.total = E;
  B.fromC = side_embedding("left(" + E.name + ")", X.left, N.obC, N.arC);
  B.fromD = side_embedding("right(" + E.name + ")", X.right, N.obD, N.arD);
  validate_bridge(B);
  return B;
}

Distributor distributor_of_bridge(const RigidBridge &E) {
  validate_bridge(E);
  FinFunctor fc = validate_functor(E.left, E.total, E.fromC);
  FinFunctor fd = validate_functor(E.right, E.total, E.fromD);
  Distributor X;
  X.name = "X(" + E.name + ")";
  X.left = E.left;
  X.right = E.right;
  for (const Id &A : E.left.objects)
    for (const Id &Dd : E.right.objects)
      X.table[{A, Dd}] = E.total.hom(fc.ob(A), fd.ob(Dd));
  for (const Arrow &f : E.left.arrows) {
    if (E.left.is_identity(f.id)) continue;
    for (const Id &Dd : E.right.objects)
      for (const Id &a : X.table.at({f.dst, Dd}))
        X.lact[f.id][a] = E.total.compose(a, fc.ar(f.id));
  }
  for (const Arrow &g : E.right.arrows) {
    if (E.right.is_identity(g.id)) continue;
    for (const Id &A : E.left.objects)
      for (const Id &a : X.table.at({A, g.src}))
        X.ract[g.id][a] = E.total.compose(fd.ar(g.id), a);
  }
  validate_distributor(X);
  return X;
}

std::vector<FinFunctor> bridge_morphisms(const RigidBridge &E,
                                         const RigidBridge &G) {
  validate_bridge(E);
  validate_bridge(G);
  if (!same_shape(E.left, G.left) || !same_shape(E.right, G.right))
    throw Error("ShapeMismatch", "bridge sides",
                "morphisms need the same C and D");
  FinFunctor fcE = validate_functor(E.left, E.total, E.fromC);
  FinFunctor fdE = validate_functor(E.right, E.total, E.fromD);
  FinFunctor fcG = validate_functor(G.left, G.total, G.fromC);
  FinFunctor fdG = validate_functor(G.right, G.total, G.fromD);

  FinFunctor base;
  for (const Id &A : E.left.objects) base.omap[fcE.ob(A)] = fcG.ob(A);
  for (const Id &B : E.right.objects) base.omap[fdE.ob(B)] = fdG.ob(B);
  for (const Arrow &f : E.left.arrows) base.amap[fcE.ar(f.id)] = fcG.ar(f.id);
  for (const Arrow &g : E.right.arrows) base.amap[fdE.ar(g.id)] = fdG.ar(g.id);

  std::vector<Id> crossE;
  for (const Arrow &a : E.total.arrows)
    if (!base.amap.count(a.id)) crossE.push_back(a.id);

  std::vector<FinFunctor> found;
  std::vector<Id> chosen(crossE.size());
  auto assemble = [&]() {
    FinFunctor beta = base;
    beta.name = "beta" + std::to_string(found.size());
    for (std::size_t i = 0; i < crossE.size(); ++i)
      beta.amap[crossE[i]] = chosen[i];
    try {
      found.push_back(validate_functor(E.total, G.total, beta));
    } catch (const Error &) {
    }
  };
  std::function<void(std::size_t)> rec = [&](std::size_t i) {
    if (i == crossE.size()) {
      assemble();
      return;
    }
    const Arrow &a = E.total.arrow(crossE[i]);
    for (const Id &cand : G.total.hom(base.omap.at(a.src),
                                      base.omap.at(a.dst))) {
      chosen[i] = cand;
      rec(i + 1);
    }
  };
  rec(0);
  return found;
}

namespace {

// Componentwise comparison of a restricted path functor with a declared
// boundary, up to the given chain depth.
void compare_boundary(const std::string &side, const PathObject &restricted,
                      const PathObject &given, int depth) {
  Path2Category PC = build_path_category(given.shape, depth);
  auto fail = [&](const std::string &what) {
    throw Error("BoundaryMismatch", side, what);
  };
  for (const Id &A : given.shape.objects) {
    if (!restricted.functor.omap.count(A) || !given.functor.omap.count(A) ||
        restricted.functor.omap.at(A) != given.functor.omap.at(A))
      fail("ob(" + A + ")");
  }
  for (const Id &A : given.shape.objects)
    for (const Id &B : given.shape.objects) {
      const PathHom &H = PC.hom(A, B);
      auto rf = restricted.functor.hmap.find({A, B});
      auto gf = given.functor.hmap.find({A, B});
      if (rf == restricted.functor.hmap.end() ||
          gf == given.functor.hmap.end())
        fail("hom(" + A + "," + B + ")");
      for (const Chain &c : H.chains) {
        Id cid = chain_id(c);
        if (!rf->second.omap.count(cid) || !gf->second.omap.count(cid) ||
            rf->second.omap.at(cid) != gf->second.omap.at(cid))
          fail(cid);
      }
      for (const auto &[st, wits] : H.witnesses) {
        const Chain &s = PC.chain_by_id(A, B, st.first);
        for (const DeltaMap &u : wits) {
          Id wid = witness_id(s, u);
          if (!rf->second.amap.count(wid) || !gf->second.amap.count(wid) ||
              rf->second.amap.at(wid) != gf->second.amap.at(wid))
            fail(wid);
        }
      }
    }
  for (const Id &A : given.shape.objects)
    for (const Id &B : given.shape.objects)
      for (const Id &C : given.shape.objects)
        for (const Chain &s : PC.hom(A, B).chains)
          for (const Chain &t : PC.hom(B, C).chains) {
            if (s.length() + t.length() > depth) continue;
            IdPair key{chain_id(t), chain_id(s)};
            auto rt = restricted.functor.coh.find({A, B, C});
            auto gt = given.functor.coh.find({A, B, C});
            bool rhas = rt != restricted.functor.coh.end() &&
                        rt->second.count(key);
            bool ghas = gt != given.functor.coh.end() &&
                        gt->second.count(key);
            if (!rhas || !ghas) {
              if (rhas != ghas)
                fail("phi(" + key.first + "," + key.second + ")");
              continue;
            }
            if (rt->second.at(key) != gt->second.at(key))
              fail("phi(" + key.first + "," + key.second + ")");
          }
  for (const Id &A : given.shape.objects) {
    bool rhas = restricted.functor.unit_coh.count(A);
    bool ghas = given.functor.unit_coh.count(A);
    if (rhas != ghas ||
        (rhas && restricted.functor.unit_coh.at(A) !=
                     given.functor.unit_coh.at(A)))
      fail("phi(" + A + ")");
  }
}

} // namespace

Bimodule validate_bimodule(const RigidBridge &E, const PathObject &psi,
                           const PathObject &F, const PathObject &G) {
  validate_bridge(E);
  if (!same_shape(psi.shape, E.total))
    throw Error("ShapeMismatch", "psi", "shape must equal the bridge total");
  if (!same_shape(F.shape, E.left))
    throw Error("ShapeMismatch", "F", "shape must equal the C side");
  if (!same_shape(G.shape, E.right))
    throw Error("ShapeMismatch", "G", "shape must equal the D side");
  check_path_object(psi);
  PathObject RC = restrict_shape(psi, E.left, E.fromC);
  compare_boundary("C", RC, F, std::min(psi.maxlen, F.maxlen));
  PathObject RD = restrict_shape(psi, E.right, E.fromD);
  compare_boundary("D", RD, G, std::min(psi.maxlen, G.maxlen));
  Bimodule b;
  b.shape = E;
  b.psi = psi;
  b.leftPoint = F;
  b.rightPoint = G;
  return b;
}

void validate_bimodule_morphism(const Bimodule &b1, const Bimodule &b2,
                                const ColaxTransformation &theta) {
  if (!same_shape(b1.shape.total, b2.shape.total))
    throw Error("ShapeMismatch", "bimodule shapes",
                "morphisms need the same bridge");
  PathPremorphism T;
  T.name = theta.name;
  T.shape_map = identity_functor(b1.shape.total);
  T.sigma = theta;
  validate_premorphism(b1.psi, b2.psi, T);

  const FinBicategory &M = b1.psi.target;
  // the restriction to each side must be the identity transformation
  auto side_identity = [&](const std::string &side, const FinCategory &S,
                           const FinFunctor &emb) {
    FinFunctor f = validate_functor(S, b1.shape.total, emb);
    for (const Id &A : S.objects) {
      Id tA = f.ob(A);
      Id unit = M.unit_of(b1.psi.functor.ob(tA));
      if (!theta.comp1.count(tA) || theta.comp1.at(tA) != unit)
        throw Error("BoundaryMismatch", side, "sigma(" + A + ")");
    }
    Path2Category PS = build_path_category(S, b1.psi.maxlen);
    for (const Id &A : S.objects)
      for (const Id &B : S.objects) {
        Id tA = f.ob(A), tB = f.ob(B);
        const FinCategory &H = M.hom(b1.psi.functor.ob(tA),
                                     b1.psi.functor.ob(tB));
        auto tab = theta.comp2.find({tA, tB});
        for (const Chain &c : PS.hom(A, B).chains) {
          Chain mapped;
          mapped.src = tA;
          for (const Id &ar : c.seq) mapped.seq.push_back(f.ar(ar));
          Id cid = chain_id(mapped);
          if (tab == theta.comp2.end() || !tab->second.count(cid) ||
              !H.is_identity(tab->second.at(cid)))
            throw Error("BoundaryMismatch", side, "sigma(" + cid + ")");
        }
      }
  };
  side_identity("C", b1.shape.left, b1.shape.fromC);
  side_identity("D", b1.shape.right, b1.shape.fromD);
}

BimoduleActions extract_actions(const Bimodule &b) {
  const RigidBridge &E = b.shape;
  auto thin_homs = [](const FinCategory &S) {
    for (const Id &A : S.objects)
      for (const Id &B : S.objects)
        if (S.hom(A, B).size() > 1) return false;
    return true;
  };
  if (!thin_homs(E.left) || !thin_homs(E.right))
    throw Error("ShapeMismatch", "extract_actions",
                "coarse boundary shapes expected");
  FinFunctor fc = validate_functor(E.left, E.total, E.fromC);
  FinFunctor fd = validate_functor(E.right, E.total, E.fromD);
  for (const Id &A : E.left.objects)
    for (const Id &B : E.right.objects)
      if (E.total.hom(fc.ob(A), fd.ob(B)).size() != 1)
        throw Error("ShapeMismatch", "extract_actions",
                    "thin cross homs expected");
  if (b.psi.maxlen < 2)
    throw Error("TruncationExceeded", "extract_actions",
                "need chains of length 2");
  const FinBicategory &M = b.psi.target;
  const ColaxMorphism &Psi = b.psi.functor;

  // the composite of two single-arrow chains, as a 2-cell of M obtained by
  // undoing the colaxity cell and applying the merge witness
  auto binary_cell = [&](const Id &tA, const Id &tB, const Id &tC) {
    Id f = b.psi.shape.hom(tA, tB).at(0);
    Id g = b.psi.shape.hom(tB, tC).at(0);
    Chain s{tA, {f}}, t{tB, {g}};
    Chain c2{tA, {f, g}};
    Id w = Psi.hf(tA, tC).ar(witness_id(c2, merge_generator(1, 0)));
    Id phi = Psi.coh_cell(tA, tB, tC, chain_id(t), chain_id(s));
    Id U = Psi.ob(tA), W = Psi.ob(tC);
    auto inv = inverse_of(M.hom(U, W), phi);
    if (!inv)
      throw Error("NonInvertibleColaxity",
                  "phi(" + chain_id(t) + "," + chain_id(s) + ")", phi);
    return M.vcomp(U, W, w, *inv);
  };

  BimoduleActions acts;
  for (const Id &P : E.left.objects)
    for (const Id &Q : E.left.objects)
      for (const Id &R : E.right.objects)
        acts.left[{P, Q, R}] = binary_cell(fc.ob(P), fc.ob(Q), fd.ob(R));
  for (const Id &Q : E.left.objects)
    for (const Id &R : E.right.objects)
      for (const Id &S : E.right.objects)
        acts.right[{Q, R, S}] = binary_cell(fc.ob(Q), fd.ob(R), fd.ob(S));

  EnrichedCategory EF = strict_to_enriched(b.leftPoint);
  EnrichedCategory EG = strict_to_enriched(b.rightPoint);

  // 1-cell legs and base objects, by side
  auto mob = [&](const Id &o, bool leftSide) {
    return Psi.ob(leftSide ? fc.ob(o) : fd.ob(o));
  };
  auto leg = [&](const Id &a, bool aLeft, const Id &c, bool cLeft) {
    Id tA = aLeft ? fc.ob(a) : fd.ob(a);
    Id tC = cLeft ? fc.ob(c) : fd.ob(c);
    Id ar = b.psi.shape.hom(tA, tC).at(0);
    return Psi.hf(tA, tC).ob(chain_id(Chain{tA, {ar}}));
  };

  // one associativity square, in the same shape as the enriched check
  auto assoc_square = [&](const Id &A, bool al, const Id &B, bool bl,
                          const Id &C, bool cl, const Id &D, bool dl,
                          const Id &cABC, const Id &cABD, const Id &cACD,
                          const Id &cBCD) {
    Id eA = mob(A, al), eB = mob(B, bl), eC = mob(C, cl), eD = mob(D, dl);
    Id hAB = leg(A, al, B, bl), hBC = leg(B, bl, C, cl),
       hCD = leg(C, cl, D, dl);
    Id lhs = M.vcomp(eA, eD, cABD,
                     M.tensor_ar(eA, eB, eD, cBCD, M.id2(eA, eB, hAB)));
    Id a = M.assoc_cell(eA, eB, eC, eD, hCD, hBC, hAB);
    Id rhs = M.vcomp(
        eA, eD, cACD,
        M.vcomp(eA, eD,
                M.tensor_ar(eA, eC, eD, M.id2(eC, eD, hCD), cABC), a));
    if (lhs != rhs)
      throw Error("ActionAssociativityViolation",
                  "(" + A + "," + B + "," + C + "," + D + ")",
                  lhs + " != " + rhs);
  };

  for (const Id &O : E.left.objects)
    for (const Id &P : E.left.objects)
      for (const Id &Q : E.left.objects)
        for (const Id &R : E.right.objects)
          assoc_square(O, true, P, true, Q, true, R, false,
                       EF.comp.at({O, P, Q}), acts.left.at({O, P, R}),
                       acts.left.at({O, Q, R}), acts.left.at({P, Q, R}));
  for (const Id &P : E.left.objects)
    for (const Id &Q : E.left.objects)
      for (const Id &R : E.right.objects)
        for (const Id &S : E.right.objects)
          assoc_square(P, true, Q, true, R, false, S, false,
                       acts.left.at({P, Q, R}), acts.left.at({P, Q, S}),
                       acts.right.at({P, R, S}), acts.right.at({Q, R, S}));
  for (const Id &Q : E.left.objects)
    for (const Id &R : E.right.objects)
      for (const Id &S : E.right.objects)
        for (const Id &T : E.right.objects)
          assoc_square(Q, true, R, false, S, false, T, false,
                       acts.right.at({Q, R, S}), acts.right.at({Q, R, T}),
                       acts.right.at({Q, S, T}), EG.comp.at({R, S, T}));

  // unit compatibility with both boundary units
  for (const Id &P : E.left.objects)
    for (const Id &R : E.right.objects) {
      Id eP = mob(P, true), eR = mob(R, false);
      Id hPR = leg(P, true, R, false);
      Id right = M.vcomp(eP, eR, acts.left.at({P, P, R}),
                         M.tensor_ar(eP, eP, eR, M.id2(eP, eR, hPR),
                                     EF.unit.at(P)));
      if (right != M.runit_cell(eP, eR, hPR))
        throw Error("IdentityViolation", "right(" + P + "," + R + ")", right);
      Id left = M.vcomp(eP, eR, acts.right.at({P, R, R}),
                        M.tensor_ar(eP, eR, eR, EG.unit.at(R),
                                    M.id2(eP, eR, hPR)));
      if (left != M.lunit_cell(eP, eR, hPR))
        throw Error("IdentityViolation", "left(" + P + "," + R + ")", left);
    }
  return acts;
}

} // namespace pathcat
