#include "pathcat/fincat.hpp"

#include <algorithm>

namespace pathcat {

namespace {
std::vector<Id> sorted(std::vector<Id> v) {
  std::sort(v.begin(), v.end());
  return v;
}
} // namespace

bool FinCategory::has_object(const Id &A) const {
  return std::find(objects.begin(), objects.end(), A) != objects.end();
}

bool FinCategory::has_arrow(const Id &f) const {
  for (const auto &a : arrows)
    if (a.id == f) return true;
  return false;
}

const Arrow &FinCategory::arrow(const Id &f) const {
  for (const auto &a : arrows)
    if (a.id == f) return a;
  throw Error("UnknownObject", f, "no such arrow in " + name);
}

Id FinCategory::id_of(const Id &A) const {
  return map_at(identity, A, "UnknownObject", A);
}

bool FinCategory::is_identity(const Id &f) const {
  for (const auto &[obj, idarr] : identity)
    if (idarr == f) return true;
  return false;
}

Id FinCategory::compose(const Id &g, const Id &f) const {
  return map_at(comp, IdPair{g, f}, "MissingComposite",
                "(" + g + "," + f + ")");
}

std::vector<Id> FinCategory::hom(const Id &A, const Id &B) const {
  std::vector<Id> out;
  for (const auto &a : arrows)
    if (a.src == A && a.dst == B) out.push_back(a.id);
  return out;
}

std::vector<Id> FinCategory::nonidentity_arrows() const {
  std::vector<Id> out;
  for (const auto &a : arrows)
    if (!is_identity(a.id)) out.push_back(a.id);
  return out;
}

bool FinCategory::is_posetal() const {
  for (const auto &A : objects)
    for (const auto &B : objects)
      if (hom(A, B).size() > 1) return false;
  return true;
}

void FinCategory::finalize() {
  for (const auto &A : objects) {
    if (identity.count(A)) continue;
    Id iid = "id(" + A + ")";
    if (!has_arrow(iid)) arrows.push_back({iid, A, A});
    identity[A] = iid;
  }
  for (const auto &a : arrows) {
    if (!has_object(a.src) || !has_object(a.dst)) continue;
    const Id &il = identity.at(a.dst), &ir = identity.at(a.src);
    comp.emplace(IdPair{il, a.id}, a.id);
    comp.emplace(IdPair{a.id, ir}, a.id);
  }
}

void validate_category(const FinCategory &C) {
  // ids unique and endpoints known
  {
    std::set<Id> seen;
    for (const auto &A : sorted(C.objects))
      if (!seen.insert(A).second) throw Error("DuplicateName", A);
  }
  {
    std::set<Id> seen;
    std::vector<Arrow> as = C.arrows;
    std::sort(as.begin(), as.end(),
              [](const Arrow &x, const Arrow &y) { return x.id < y.id; });
    for (const auto &a : as) {
      if (!seen.insert(a.id).second) throw Error("DuplicateName", a.id);
      if (!C.has_object(a.src)) throw Error("UnknownObject", a.src);
      if (!C.has_object(a.dst)) throw Error("UnknownObject", a.dst);
    }
  }
  // identities present
  for (const auto &A : sorted(C.objects)) {
    auto it = C.identity.find(A);
    if (it == C.identity.end() || !C.has_arrow(it->second))
      throw Error("IdentityViolation", A, "no identity arrow");
    const Arrow &ia = C.arrow(it->second);
    if (ia.src != A || ia.dst != A)
      throw Error("IdentityViolation", A, "identity endpoints wrong");
  }
  // composition total with correct endpoints
  std::vector<Id> arrow_ids;
  for (const auto &a : C.arrows) arrow_ids.push_back(a.id);
  arrow_ids = sorted(arrow_ids);
  for (const auto &g : arrow_ids)
    for (const auto &f : arrow_ids) {
      const Arrow &af = C.arrow(f), &ag = C.arrow(g);
      if (af.dst != ag.src) {
        if (C.comp.count({g, f}))
          throw Error("DomainMismatch", "(" + g + "," + f + ")",
                      "composite of non-composable pair");
        continue;
      }
      auto it = C.comp.find({g, f});
      if (it == C.comp.end())
        throw Error("MissingComposite", "(" + g + "," + f + ")");
      if (!C.has_arrow(it->second))
        throw Error("UnknownObject", it->second);
      const Arrow &ah = C.arrow(it->second);
      if (ah.src != af.src || ah.dst != ag.dst)
        throw Error("DomainMismatch", "(" + g + "," + f + ")",
                    "composite endpoints wrong");
    }
  // identity laws
  for (const auto &f : arrow_ids) {
    const Arrow &af = C.arrow(f);
    if (C.compose(C.id_of(af.dst), f) != f)
      throw Error("IdentityViolation", af.dst, "left unit fails at " + f);
    if (C.compose(f, C.id_of(af.src)) != f)
      throw Error("IdentityViolation", af.src, "right unit fails at " + f);
  }
  // associativity
  for (const auto &h : arrow_ids)
    for (const auto &g : arrow_ids) {
      if (C.arrow(g).dst != C.arrow(h).src) continue;
      for (const auto &f : arrow_ids) {
        if (C.arrow(f).dst != C.arrow(g).src) continue;
        if (C.compose(C.compose(h, g), f) != C.compose(h, C.compose(g, f)))
          throw Error("AssociativityViolation",
                      "(" + h + "," + g + "," + f + ")");
      }
    }
}

FinCategory coarse(const std::vector<Id> &objs) {
  if (objs.empty()) throw Error("EmptySet", "coarse");
  FinCategory C;
  C.name = "coarse";
  C.objects = objs;
  for (const auto &A : objs)
    for (const auto &B : objs)
      C.arrows.push_back({"c(" + A + "," + B + ")", A, B});
  for (const auto &A : objs) C.identity[A] = "c(" + A + "," + A + ")";
  for (const auto &A : objs)
    for (const auto &B : objs)
      for (const auto &X : objs)
        C.comp[{"c(" + B + "," + X + ")", "c(" + A + "," + B + ")"}] =
            "c(" + A + "," + X + ")";
  C.finalize();
  return C;
}

FinCategory interval(int n) {
  FinCategory C;
  C.name = "interval" + std::to_string(n);
  for (int i = 0; i <= n; ++i) C.objects.push_back(std::to_string(i));
  auto le = [](int i, int j) {
    return "le(" + std::to_string(i) + "," + std::to_string(j) + ")";
  };
  for (int i = 0; i <= n; ++i)
    for (int j = i + 1; j <= n; ++j)
      C.arrows.push_back({le(i, j), std::to_string(i), std::to_string(j)});
  C.finalize();
  auto arrow_name = [&](int i, int j) {
    return i == j ? C.identity.at(std::to_string(i)) : le(i, j);
  };
  for (int i = 0; i <= n; ++i)
    for (int j = i; j <= n; ++j)
      for (int k = j; k <= n; ++k)
        C.comp[{arrow_name(j, k), arrow_name(i, j)}] = arrow_name(i, k);
  return C;
}

std::vector<std::vector<Id>> nerve_level(const FinCategory &C, int k,
                                         const Id &A, const Id &B) {
  std::vector<std::vector<Id>> out;
  std::vector<Id> cur;
  std::function<void(const Id &)> walk = [&](const Id &at) {
    if ((int)cur.size() == k) {
      if (at == B) out.push_back(cur);
      return;
    }
    for (const auto &a : C.arrows) {
      if (a.src != at) continue;
      cur.push_back(a.id);
      walk(a.dst);
      cur.pop_back();
    }
  };
  if (!C.has_object(A) || !C.has_object(B))
    throw Error("UnknownObject", C.has_object(A) ? B : A);
  walk(A);
  return out;
}

FinCategory elements(const SetValuedDiagram &X) {
  validate_category(X.base);
  // action sanity and functoriality
  auto act = [&](const Id &f, const Id &x) -> Id {
    auto fit = X.action.find(f);
    if (fit == X.action.end())
      throw Error("NonFunctorialAction", f, "no action for arrow");
    auto xit = fit->second.find(x);
    if (xit == fit->second.end())
      throw Error("NonFunctorialAction", f, "element " + x + " unmapped");
    return xit->second;
  };
  auto set_of = [&](const Id &A) -> const std::vector<Id> & {
    auto it = X.sets.find(A);
    if (it == X.sets.end())
      throw Error("NonFunctorialAction", A, "no element set for object");
    return it->second;
  };
  for (const auto &a : X.base.arrows) {
    const auto &dstset = set_of(a.dst);
    for (const auto &x : set_of(a.src)) {
      Id y = act(a.id, x);
      if (std::find(dstset.begin(), dstset.end(), y) == dstset.end())
        throw Error("NonFunctorialAction", a.id,
                    "value " + y + " not in target set");
    }
  }
  for (const auto &A : X.base.objects)
    for (const auto &x : set_of(A))
      if (act(X.base.id_of(A), x) != x)
        throw Error("NonFunctorialAction", X.base.id_of(A),
                    "identity acts nontrivially on " + x);
  for (const auto &[pair, h] : X.base.comp) {
    const auto &[g, f] = pair;
    for (const auto &x : set_of(X.base.arrow(f).src))
      if (act(g, act(f, x)) != act(h, x))
        throw Error("NonFunctorialAction", "(" + g + "," + f + ")",
                    "action not functorial at " + x);
  }

  FinCategory E;
  E.name = "el(" + X.base.name + ")";
  for (const auto &A : X.base.objects)
    for (const auto &x : set_of(A)) E.objects.push_back(pair_id(A, x));
  for (const auto &a : X.base.arrows)
    for (const auto &x : set_of(a.src))
      E.arrows.push_back(
          {pair_id(a.id, x), pair_id(a.src, x), pair_id(a.dst, act(a.id, x))});
  for (const auto &A : X.base.objects)
    for (const auto &x : set_of(A))
      E.identity[pair_id(A, x)] = pair_id(X.base.id_of(A), x);
  for (const auto &[pair, h] : X.base.comp) {
    const auto &[g, f] = pair;
    for (const auto &x : set_of(X.base.arrow(f).src))
      E.comp[{pair_id(g, act(f, x)), pair_id(f, x)}] = pair_id(h, x);
  }
  E.finalize();
  return E;
}

FinCategory derive(DeriveKind kind, const FinCategory &C,
                   const FinCategory *D) {
  FinCategory E;
  switch (kind) {
  case DeriveKind::Product: {
    if (!D) throw Error("MissingArgument", "derive-product");
    E.name = "prod(" + C.name + "," + D->name + ")";
    for (const auto &A : C.objects)
      for (const auto &X : D->objects) E.objects.push_back(pair_id(A, X));
    for (const auto &a : C.arrows)
      for (const auto &u : D->arrows)
        E.arrows.push_back({pair_id(a.id, u.id), pair_id(a.src, u.src),
                            pair_id(a.dst, u.dst)});
    for (const auto &A : C.objects)
      for (const auto &X : D->objects)
        E.identity[pair_id(A, X)] = pair_id(C.id_of(A), D->id_of(X));
    for (const auto &[pc, hc] : C.comp)
      for (const auto &[pd, hd] : D->comp)
        E.comp[{pair_id(pc.first, pd.first), pair_id(pc.second, pd.second)}] =
            pair_id(hc, hd);
    break;
  }
  case DeriveKind::Coproduct: {
    if (!D) throw Error("MissingArgument", "derive-coproduct");
    E.name = "sum(" + C.name + "," + D->name + ")";
    auto add = [&](const FinCategory &S, const Id &tag) {
      for (const auto &A : S.objects) E.objects.push_back(pair_id(tag, A));
      for (const auto &a : S.arrows)
        E.arrows.push_back(
            {pair_id(tag, a.id), pair_id(tag, a.src), pair_id(tag, a.dst)});
      for (const auto &[A, i] : S.identity)
        E.identity[pair_id(tag, A)] = pair_id(tag, i);
      for (const auto &[p, h] : S.comp)
        E.comp[{pair_id(tag, p.first), pair_id(tag, p.second)}] =
            pair_id(tag, h);
    };
    add(C, "inl");
    add(*D, "inr");
    break;
  }
  case DeriveKind::Opposite: {
    E.name = "op(" + C.name + ")";
    E.objects = C.objects;
    for (const auto &a : C.arrows) E.arrows.push_back({a.id, a.dst, a.src});
    E.identity = C.identity;
    for (const auto &[p, h] : C.comp) E.comp[{p.second, p.first}] = h;
    break;
  }
  }
  E.finalize();
  return E;
}

std::optional<Id> inverse_of(const FinCategory &C, const Id &f) {
  const Arrow &af = C.arrow(f);
  for (const auto &g : C.hom(af.dst, af.src)) {
    if (C.comp.count({g, f}) && C.comp.count({f, g}) &&
        C.compose(g, f) == C.id_of(af.src) &&
        C.compose(f, g) == C.id_of(af.dst))
      return g;
  }
  return std::nullopt;
}

FinCategory interior(const FinCategory &C) {
  FinCategory E;
  E.name = "core(" + C.name + ")";
  E.objects = C.objects;
  std::set<Id> keep;
  for (const auto &a : C.arrows)
    if (inverse_of(C, a.id)) {
      keep.insert(a.id);
      E.arrows.push_back(a);
    }
  E.identity = C.identity;
  for (const auto &[p, h] : C.comp)
    if (keep.count(p.first) && keep.count(p.second)) E.comp[p] = h;
  return E;
}

FinFunctor validate_functor(const FinCategory &C, const FinCategory &D,
                            const FinFunctor &F) {
  FinFunctor G = F;
  for (const auto &A : C.objects) {
    auto it = G.omap.find(A);
    if (it == G.omap.end()) throw Error("UnknownObject", A, "object unmapped");
    if (!D.has_object(it->second))
      throw Error("UnknownObject", it->second, "image object missing");
  }
  // fill identity images, then demand totality
  for (const auto &A : C.objects) {
    const Id &ia = C.id_of(A);
    Id want = D.id_of(G.omap.at(A));
    auto it = G.amap.find(ia);
    if (it == G.amap.end())
      G.amap[ia] = want;
    else if (it->second != want)
      throw Error("IdentityNotPreserved", A);
  }
  for (const auto &a : C.arrows) {
    auto it = G.amap.find(a.id);
    if (it == G.amap.end())
      throw Error("UnknownObject", a.id, "arrow unmapped");
    if (!D.has_arrow(it->second))
      throw Error("UnknownObject", it->second, "image arrow missing");
    const Arrow &b = D.arrow(it->second);
    if (b.src != G.omap.at(a.src) || b.dst != G.omap.at(a.dst))
      throw Error("DomainMismatch", a.id, "image endpoints wrong");
  }
  std::vector<IdPair> pairs;
  for (const auto &[p, h] : C.comp) pairs.push_back(p);
  std::sort(pairs.begin(), pairs.end());
  for (const auto &[g, f] : pairs) {
    Id lhs = G.amap.at(C.compose(g, f));
    Id rhs = D.compose(G.amap.at(g), G.amap.at(f));
    if (lhs != rhs)
      throw Error("CompositionNotPreserved", "(" + g + "," + f + ")");
  }
  return G;
}

FinFunctor identity_functor(const FinCategory &C) {
  FinFunctor F;
  F.name = "Id(" + C.name + ")";
  for (const auto &A : C.objects) F.omap[A] = A;
  for (const auto &a : C.arrows) F.amap[a.id] = a.id;
  return F;
}

// Arrow image under F : C -> D with implicit identity images resolved.
static Id arrow_image(const FinCategory &C, const FinCategory &D,
                      const FinFunctor &F, const Id &f) {
  auto it = F.amap.find(f);
  if (it != F.amap.end()) return it->second;
  if (C.is_identity(f)) return D.id_of(F.ob(C.arrow(f).src));
  throw Error("UnknownObject", f, "arrow unmapped");
}

FinFunctor compose_functor(const FinCategory &C, const FinCategory &D,
                           const FinCategory &E, const FinFunctor &G,
                           const FinFunctor &F) {
  FinFunctor H;
  H.name = G.name + "." + F.name;
  for (const auto &A : C.objects) H.omap[A] = G.ob(F.ob(A));
  for (const auto &a : C.arrows)
    H.amap[a.id] = arrow_image(D, E, G, arrow_image(C, D, F, a.id));
  return H;
}

bool functor_equal(const FinCategory &C, const FinFunctor &F,
                   const FinFunctor &G) {
  for (const auto &A : C.objects)
    if (F.ob(A) != G.ob(A)) return false;
  for (const auto &a : C.arrows) {
    if (C.is_identity(a.id)) continue;  // forced by the object images
    if (F.ar(a.id) != G.ar(a.id)) return false;
  }
  return true;
}

bool functor_is_iso(const FinCategory &C, const FinCategory &D,
                    const FinFunctor &F) {
  std::set<Id> obs, ars;
  for (const auto &A : C.objects)
    if (!obs.insert(F.ob(A)).second) return false;
  if (obs.size() != D.objects.size()) return false;
  for (const auto &a : C.arrows)
    if (!ars.insert(arrow_image(C, D, F, a.id)).second) return false;
  return ars.size() == D.arrows.size();
}

std::vector<FinFunctor> enumerate_functors(const FinCategory &C,
                                           const FinCategory &D) {
  std::vector<FinFunctor> out;
  std::vector<Id> cobs = C.objects;
  std::vector<Id> cars = C.nonidentity_arrows();
  std::sort(cars.begin(), cars.end());

  FinFunctor F;
  // all pairs whose composite we must respect, precomputed
  std::vector<std::pair<IdPair, Id>> laws(C.comp.begin(), C.comp.end());

  std::function<void(std::size_t)> arrows_from = [&](std::size_t k) {
    if (k == cars.size()) {
      FinFunctor G = F;
      for (const auto &A : C.objects) G.amap[C.id_of(A)] = D.id_of(G.ob(A));
      // final functoriality filter
      for (const auto &[p, h] : laws) {
        Id lg = C.is_identity(p.first) ? D.id_of(G.ob(C.arrow(p.first).src))
                                       : G.amap.at(p.first);
        Id lf = C.is_identity(p.second) ? D.id_of(G.ob(C.arrow(p.second).src))
                                        : G.amap.at(p.second);
        if (!D.comp.count({lg, lf})) return;
        Id lh = C.is_identity(h) ? D.id_of(G.ob(C.arrow(h).src)) : G.amap.at(h);
        if (D.compose(lg, lf) != lh) return;
      }
      G.name = "F" + std::to_string(out.size());
      out.push_back(G);
      return;
    }
    const Arrow &a = C.arrow(cars[k]);
    for (const auto &cand : D.hom(F.omap.at(a.src), F.omap.at(a.dst))) {
      F.amap[a.id] = cand;
      // partial pruning: any law fully assigned must hold
      bool ok = true;
      for (const auto &[p, h] : laws) {
        auto img = [&](const Id &x) -> std::optional<Id> {
          if (C.is_identity(x)) return D.id_of(F.omap.at(C.arrow(x).src));
          auto it = F.amap.find(x);
          if (it == F.amap.end()) return std::nullopt;
          return it->second;
        };
        auto lg = img(p.first), lf = img(p.second), lh = img(h);
        if (lg && lf && lh) {
          if (!D.comp.count({*lg, *lf}) || D.compose(*lg, *lf) != *lh) {
            ok = false;
            break;
          }
        }
      }
      if (ok) arrows_from(k + 1);
      F.amap.erase(a.id);
    }
  };

  std::function<void(std::size_t)> objects_from = [&](std::size_t k) {
    if (k == cobs.size()) {
      arrows_from(0);
      return;
    }
    for (const auto &X : D.objects) {
      F.omap[cobs[k]] = X;
      objects_from(k + 1);
      F.omap.erase(cobs[k]);
    }
  };
  objects_from(0);
  return out;
}

void validate_nat(const FinCategory &C, const FinCategory &D,
                  const FinFunctor &F, const FinFunctor &G,
                  const NatTrans &eta) {
  for (const auto &A : C.objects) {
    auto it = eta.components.find(A);
    if (it == eta.components.end())
      throw Error("NonFunctorialAction", A, "missing component");
    const Arrow &c = D.arrow(it->second);
    if (c.src != F.ob(A) || c.dst != G.ob(A))
      throw Error("DomainMismatch", A, "component endpoints wrong");
  }
  // resolve arrow images, allowing identity images to be implicit
  auto img = [&](const FinFunctor &H, const Arrow &a) -> Id {
    auto it = H.amap.find(a.id);
    if (it != H.amap.end()) return it->second;
    if (C.is_identity(a.id)) return D.id_of(H.ob(a.src));
    throw Error("UnknownObject", a.id, "arrow unmapped");
  };
  for (const auto &a : C.arrows) {
    Id lhs = D.compose(eta.components.at(a.dst), img(F, a));
    Id rhs = D.compose(img(G, a), eta.components.at(a.src));
    if (lhs != rhs)
      throw Error("NonFunctorialAction", a.id, "naturality square fails");
  }
}

} // namespace pathcat
