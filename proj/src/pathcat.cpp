#include "pathcat/pathcat.hpp"

#include <algorithm>
#include <functional>

namespace pathcat {

Id chain_id(const Chain &c) {
  if (c.seq.empty()) return "[@" + c.src + "]";
  return "[" + join(c.seq, ",") + "]";
}

Id witness_id(const Chain &s, const DeltaMap &u) {
  return "w(" + chain_id(s) + ";" + u.str() + ")";
}

void check_chain(const FinCategory &C, const Chain &c) {
  if (!C.has_object(c.src)) throw Error("UnknownObject", c.src);
  Id at = c.src;
  for (const auto &f : c.seq) {
    const Arrow &a = C.arrow(f);
    if (a.src != at)
      throw Error("EndpointMismatch", chain_id(c),
                  "arrow " + f + " does not start at " + at);
    at = a.dst;
  }
}

Id chain_target(const FinCategory &C, const Chain &c) {
  return c.seq.empty() ? c.src : C.arrow(c.seq.back()).dst;
}

Id chain_vertex(const FinCategory &C, const Chain &c, int k) {
  if (k == 0) return c.src;
  return C.arrow(c.seq[k - 1]).dst;
}

Chain concat_chains(const FinCategory &C, int maxlen, const Chain &s,
                    const Chain &t) {
  if (t.src != chain_target(C, s))
    throw Error("EndpointMismatch", chain_id(s) + ";" + chain_id(t));
  if (maxlen >= 0 && s.length() + t.length() > maxlen)
    throw Error("TruncationExceeded", chain_id(s) + ";" + chain_id(t));
  Chain r{s.src, s.seq};
  r.seq.insert(r.seq.end(), t.seq.begin(), t.seq.end());
  return r;
}

Chain apply_delta(const FinCategory &C, const Chain &s, const DeltaMap &u) {
  check_delta(u);
  if (u.dom != s.length())
    throw Error("DomainMismatch", witness_id(s, u),
                "map domain differs from chain length");
  Chain t{s.src, {}};
  for (int j = 0; j < u.cod; ++j) {
    auto [lo, hi] = interval_preimage(u, j);
    if (lo == hi) {
      Id v = chain_vertex(C, s, cumulative_position(u, j));
      t.seq.push_back(C.id_of(v));
    } else {
      Id acc = s.seq[lo];
      for (int i = lo + 1; i < hi; ++i) acc = C.compose(s.seq[i], acc);
      t.seq.push_back(acc);
    }
  }
  return t;
}

const PathHom &Path2Category::hom(const Id &A, const Id &B) const {
  return map_at(homs, IdPair{A, B}, "UnknownObject",
                "hom(" + A + "," + B + ")");
}

const Chain &Path2Category::chain_by_id(const Id &A, const Id &B,
                                        const Id &cid) const {
  for (const auto &c : hom(A, B).chains)
    if (chain_id(c) == cid) return c;
  throw Error("UnknownObject", cid, "no such chain");
}

Path2Category build_path_category(const FinCategory &C, int maxlen) {
  Path2Category P;
  P.base = C;
  P.maxlen = maxlen;

  std::vector<Id> arrow_ids;
  for (const auto &a : C.arrows) arrow_ids.push_back(a.id);
  std::sort(arrow_ids.begin(), arrow_ids.end());

  for (const auto &A : C.objects)
    for (const auto &B : C.objects) {
      PathHom H;
      // enumerate chains by DFS in sorted arrow order; grouped by length
      for (int len = 0; len <= maxlen; ++len) {
        std::vector<Chain> found;
        Chain cur{A, {}};
        std::function<void(const Id &)> walk = [&](const Id &at) {
          if (cur.length() == len) {
            if (at == B) found.push_back(cur);
            return;
          }
          for (const auto &f : arrow_ids) {
            const Arrow &a = C.arrow(f);
            if (a.src != at) continue;
            cur.seq.push_back(f);
            walk(a.dst);
            cur.seq.pop_back();
          }
        };
        walk(A);
        for (auto &c : found) H.chains.push_back(std::move(c));
      }
      // full witness sets
      for (const auto &s : H.chains)
        for (const auto &t : H.chains) {
          std::vector<DeltaMap> ws;
          for (const auto &u : enumerate_hom(s.length(), t.length()))
            if (apply_delta(C, s, u) == t) ws.push_back(u);
          if (!ws.empty()) H.witnesses[{chain_id(s), chain_id(t)}] = ws;
        }
      P.homs[{A, B}] = std::move(H);
    }
  return P;
}

std::vector<DeltaMap> hom_witness(const Path2Category &P, const Id &A,
                                  const Id &B, const Chain &s,
                                  const Chain &t) {
  const PathHom &H = P.hom(A, B);
  auto it = H.witnesses.find({chain_id(s), chain_id(t)});
  if (it == H.witnesses.end()) return {};
  return it->second;
}

FinCategory hom_category(const Path2Category &P, const Id &A, const Id &B) {
  const PathHom &H = P.hom(A, B);
  FinCategory h;
  h.name = "paths(" + A + "," + B + ")";
  std::map<Id, const Chain *> by_id;
  for (const auto &c : H.chains) {
    h.objects.push_back(chain_id(c));
    by_id[chain_id(c)] = &c;
  }
  for (const auto &[pair, ws] : H.witnesses) {
    const Chain &s = *by_id.at(pair.first);
    for (const auto &u : ws)
      h.arrows.push_back({witness_id(s, u), pair.first, pair.second});
  }
  for (const auto &c : H.chains)
    h.identity[chain_id(c)] = witness_id(c, delta_identity(c.length()));
  // composition = composition of monotone maps
  for (const auto &[pair, ws] : H.witnesses) {
    const Chain &s = *by_id.at(pair.first);
    const Chain &t = *by_id.at(pair.second);
    auto it = H.witnesses.lower_bound({pair.second, Id{}});
    for (; it != H.witnesses.end() && it->first.first == pair.second; ++it) {
      for (const auto &u : ws)
        for (const auto &v : it->second)
          h.comp[{witness_id(t, v), witness_id(s, u)}] =
              witness_id(s, compose_delta(v, u));
    }
  }
  h.finalize();
  return h;
}

FinBicategory as_bicategory(const Path2Category &P) {
  FinBicategory M;
  M.name = "P(" + P.base.name + ")";
  M.objects = P.base.objects;
  M.truncated = true;
  for (const auto &A : P.base.objects)
    for (const auto &B : P.base.objects)
      M.homs[{A, B}] = hom_category(P, A, B);
  for (const auto &A : P.base.objects)
    M.unit[A] = chain_id(Chain{A, {}});
  for (const auto &U : P.base.objects)
    for (const auto &V : P.base.objects)
      for (const auto &W : P.base.objects) {
        FinBicategory::Tensor T;
        const PathHom &HU = P.hom(U, V), &HV = P.hom(V, W);
        for (const auto &t : HV.chains)
          for (const auto &s : HU.chains) {
            if (s.length() + t.length() > P.maxlen) continue;
            Chain c = concat_chains(P.base, P.maxlen, s, t);
            T.ob[{chain_id(t), chain_id(s)}] = chain_id(c);
          }
        for (const auto &[pt, wst] : HV.witnesses) {
          const Chain &t = P.chain_by_id(V, W, pt.first);
          const Chain &t2 = P.chain_by_id(V, W, pt.second);
          for (const auto &[ps, wss] : HU.witnesses) {
            const Chain &s = P.chain_by_id(U, V, ps.first);
            const Chain &s2 = P.chain_by_id(U, V, ps.second);
            if (s.length() + t.length() > P.maxlen ||
                s2.length() + t2.length() > P.maxlen)
              continue;
            Chain c = concat_chains(P.base, P.maxlen, s, t);
            for (const auto &v : wst)
              for (const auto &u : wss)
                T.ar[{witness_id(t, v), witness_id(s, u)}] =
                    witness_id(c, ordinal_sum(u, v));
          }
        }
        M.comp[IdTriple{U, V, W}] = std::move(T);
      }
  return M;
}

FinCategory delta_category(int N) {
  FinCategory D;
  D.name = "delta" + std::to_string(N);
  for (int n = 0; n <= N; ++n) D.objects.push_back(std::to_string(n));
  for (int n = 0; n <= N; ++n)
    for (int m = 0; m <= N; ++m)
      for (const auto &u : enumerate_hom(n, m))
        D.arrows.push_back({u.str(), std::to_string(n), std::to_string(m)});
  for (int n = 0; n <= N; ++n)
    D.identity[std::to_string(n)] = delta_identity(n).str();
  for (int n = 0; n <= N; ++n)
    for (int m = 0; m <= N; ++m)
      for (int k = 0; k <= N; ++k)
        for (const auto &u : enumerate_hom(n, m))
          for (const auto &v : enumerate_hom(m, k))
            D.comp[{v.str(), u.str()}] = compose_delta(v, u).str();
  return D;
}

DeltaIdentification delta_identification(const Path2Category &P) {
  if (P.base.objects.size() != 1 || P.base.arrows.size() != 1)
    throw Error("ShapeMismatch", P.base.name,
                "base must have one object and one arrow");
  const Id &pt = P.base.objects.front();

  DeltaIdentification R;
  R.delta_cat = delta_category(P.maxlen);
  R.hom_cat = hom_category(P, pt, pt);

  const PathHom &H = P.hom(pt, pt);
  std::map<Id, const Chain *> by_id;
  for (const auto &c : H.chains) by_id[chain_id(c)] = &c;

  for (const auto &c : H.chains)
    R.to_delta.omap[chain_id(c)] = std::to_string(c.length());
  for (int n = 0; n <= P.maxlen; ++n)
    for (int m = 0; m <= P.maxlen; ++m) R.counts[{n, m}] = 0;
  for (const auto &[pair, ws] : H.witnesses) {
    const Chain &s = *by_id.at(pair.first);
    const Chain &t = *by_id.at(pair.second);
    R.counts[{s.length(), t.length()}] += (int)ws.size();
    for (const auto &u : ws) R.to_delta.amap[witness_id(s, u)] = u.str();
  }
  for (int n = 0; n <= P.maxlen; ++n) {
    // the unique chain of each length: the n-fold identity chain
    bool found = false;
    for (const auto &c : H.chains)
      if (c.length() == n) {
        if (found)
          throw Error("IsoFailure", chain_id(c),
                      "length does not determine the chain");
        R.from_delta.omap[std::to_string(n)] = chain_id(c);
        found = true;
      }
    if (!found)
      throw Error("IsoFailure", std::to_string(n), "no chain of this length");
  }
  for (int n = 0; n <= P.maxlen; ++n)
    for (int m = 0; m <= P.maxlen; ++m)
      for (const auto &u : enumerate_hom(n, m)) {
        const Chain &s = *by_id.at(R.from_delta.omap.at(std::to_string(n)));
        R.from_delta.amap[u.str()] = witness_id(s, u);
      }

  R.to_delta.name = "paths-to-delta";
  R.from_delta.name = "delta-to-paths";
  R.to_delta = validate_functor(R.hom_cat, R.delta_cat, R.to_delta);
  R.from_delta = validate_functor(R.delta_cat, R.hom_cat, R.from_delta);
  if (!functor_is_iso(R.hom_cat, R.delta_cat, R.to_delta) ||
      !functor_is_iso(R.delta_cat, R.hom_cat, R.from_delta))
    throw Error("IsoFailure", "delta-identification", "not bijective");
  FinFunctor rt = compose_functor(R.hom_cat, R.delta_cat, R.hom_cat,
                                  R.from_delta, R.to_delta);
  if (!functor_equal(R.hom_cat, rt, identity_functor(R.hom_cat)))
    throw Error("IsoFailure", "delta-identification", "roundtrip not identity");
  return R;
}

EmbedCompress embed_and_compress(const Path2Category &P) {
  EmbedCompress R;
  const FinCategory &C = P.base;
  for (const auto &A : C.objects) R.embed_ob[A] = chain_id(Chain{A, {}});
  for (const auto &a : C.arrows)
    R.embed_ar[a.id] = C.is_identity(a.id)
                           ? chain_id(Chain{a.src, {}})
                           : chain_id(Chain{a.src, {a.id}});

  // compression: fold each chain to its composite in the base
  for (const auto &[pair, H] : P.homs) {
    for (const auto &c : H.chains) {
      Id value;
      if (c.seq.empty())
        value = C.id_of(c.src);
      else {
        value = c.seq[0];
        for (std::size_t i = 1; i < c.seq.size(); ++i)
          value = C.compose(c.seq[i], value);
      }
      R.compress[chain_id(c)] = value;
    }
  }

  // compression is functorial on defined concatenations
  for (const auto &[pairAB, HAB] : P.homs) {
    const auto &[A, B] = pairAB;
    for (const auto &C2 : C.objects) {
      const PathHom &HBC = P.hom(B, C2);
      for (const auto &s : HAB.chains)
        for (const auto &t : HBC.chains) {
          if (s.length() + t.length() > P.maxlen) continue;
          Chain c = concat_chains(C, P.maxlen, s, t);
          Id lhs = R.compress.at(chain_id(c));
          Id rhs = C.compose(R.compress.at(chain_id(t)),
                             R.compress.at(chain_id(s)));
          if (lhs != rhs)
            throw Error("CompositionNotPreserved",
                        "(" + chain_id(t) + "," + chain_id(s) + ")");
        }
    }
    // witnesses collapse: related chains have equal composites
    for (const auto &[pr, ws] : HAB.witnesses) {
      if (R.compress.at(pr.first) != R.compress.at(pr.second))
        throw Error("CompositionNotPreserved",
                    "(" + pr.first + "," + pr.second + ")",
                    "witness relates chains with distinct composites");
    }
  }

  // compression after embedding is the identity
  for (const auto &a : C.arrows)
    if (R.compress.at(R.embed_ar.at(a.id)) != a.id)
      throw Error("IdentityNotPreserved", a.id,
                  "compress after embed is not the identity");
  return R;
}

ColaxMorphism path_functor(const Path2Category &PC, const Path2Category &PD,
                           const FinFunctor &F) {
  ColaxMorphism P;
  P.name = "paths(" + F.name + ")";
  const FinCategory &C = PC.base, &D = PD.base;
  auto tchain = [&](const Chain &c) {
    Chain r{F.ob(c.src), {}};
    for (const auto &f : c.seq) r.seq.push_back(F.ar(f));
    return r;
  };
  for (const auto &A : C.objects) P.omap[A] = F.ob(A);
  for (const auto &A : C.objects)
    for (const auto &B : C.objects) {
      const PathHom &H = PC.hom(A, B);
      FinFunctor Hf;
      Hf.name = "paths(" + F.name + ")@(" + A + "," + B + ")";
      for (const auto &c : H.chains) Hf.omap[chain_id(c)] = chain_id(tchain(c));
      for (const auto &[pair, ws] : H.witnesses) {
        const Chain &s = PC.chain_by_id(A, B, pair.first);
        for (const auto &u : ws)
          Hf.amap[witness_id(s, u)] = witness_id(tchain(s), u);
      }
      P.hmap[{A, B}] = Hf;
    }
  for (const auto &A : C.objects)
    for (const auto &B : C.objects)
      for (const auto &C2 : C.objects) {
        auto &table = P.coh[IdTriple{A, B, C2}];
        const PathHom &HAB = PC.hom(A, B), &HBC = PC.hom(B, C2);
        for (const auto &t : HBC.chains)
          for (const auto &s : HAB.chains) {
            if (s.length() + t.length() > PC.maxlen) continue;
            Chain c = concat_chains(C, PC.maxlen, s, t);
            Chain fc = tchain(c);
            table[{chain_id(t), chain_id(s)}] =
                witness_id(fc, delta_identity(fc.length()));
          }
      }
  for (const auto &A : C.objects) {
    Chain e{F.ob(A), {}};
    P.unit_coh[A] = witness_id(e, delta_identity(0));
  }
  (void)D;
  return P;
}

namespace {

DeltaMap reverse_map(const DeltaMap &u) {
  DeltaMap r{u.dom, u.cod, {}};
  r.img.resize(u.dom);
  for (int i = 0; i < u.dom; ++i) r.img[i] = u.cod - 1 - u.img[u.dom - 1 - i];
  return r;
}

void check_hom_equal(const PathHom &X, const PathHom &Y, const std::string &at) {
  if (X.chains.size() != Y.chains.size())
    throw Error("IsoFailure", at, "chain counts differ");
  std::set<Id> xs, ys;
  for (const auto &c : X.chains) xs.insert(chain_id(c));
  for (const auto &c : Y.chains) ys.insert(chain_id(c));
  if (xs != ys) throw Error("IsoFailure", at, "chain sets differ");
  if (X.witnesses != Y.witnesses)
    throw Error("IsoFailure", at, "witness sets differ");
}

} // namespace

StructuralIsoReport structural_isos(const FinCategory &C, const FinCategory &D,
                                    int maxlen) {
  StructuralIsoReport R;

  // 1. paths in a disjoint union split into tagged copies
  FinCategory E = derive(DeriveKind::Coproduct, C, &D);
  Path2Category PE = build_path_category(E, maxlen);
  auto check_component = [&](const FinCategory &S, const Id &tag) {
    Path2Category PS = build_path_category(S, maxlen);
    for (const auto &A : S.objects)
      for (const auto &B : S.objects) {
        // translate PS hom into tagged ids and compare with PE
        const PathHom &H = PS.hom(A, B);
        PathHom T;
        for (const auto &c : H.chains) {
          Chain tc{pair_id(tag, c.src), {}};
          for (const auto &f : c.seq) tc.seq.push_back(pair_id(tag, f));
          T.chains.push_back(tc);
        }
        for (const auto &[pair, ws] : H.witnesses) {
          const Chain &s = PS.chain_by_id(A, B, pair.first);
          Chain ts{pair_id(tag, s.src), {}};
          for (const auto &f : s.seq) ts.seq.push_back(pair_id(tag, f));
          const Chain &t = PS.chain_by_id(A, B, pair.second);
          Chain tt{pair_id(tag, t.src), {}};
          for (const auto &f : t.seq) tt.seq.push_back(pair_id(tag, f));
          T.witnesses[{chain_id(ts), chain_id(tt)}] = ws;
        }
        check_hom_equal(T, PE.hom(pair_id(tag, A), pair_id(tag, B)),
                        "sum@(" + A + "," + B + ")");
        ++R.coproduct_homs_checked;
      }
  };
  check_component(C, "inl");
  check_component(D, "inr");
  for (const auto &A : C.objects)
    for (const auto &B : D.objects) {
      if (!PE.hom(pair_id("inl", A), pair_id("inr", B)).chains.empty() ||
          !PE.hom(pair_id("inr", B), pair_id("inl", A)).chains.empty())
        throw Error("IsoFailure", "sum@cross(" + A + "," + B + ")",
                    "cross hom not empty");
    }

  // 2. paths in the opposite are reversed paths
  for (const FinCategory *S : {&C, &D}) {
    FinCategory Sop = derive(DeriveKind::Opposite, *S);
    Path2Category P = build_path_category(*S, maxlen);
    Path2Category Pop = build_path_category(Sop, maxlen);
    for (const auto &A : S->objects)
      for (const auto &B : S->objects) {
        const PathHom &HO = Pop.hom(A, B);
        // reverse every chain and witness; expect exactly hom_P(B,A)
        PathHom T;
        std::map<Id, Chain> rev;
        for (const auto &c : HO.chains) {
          Chain rc{B, {}};
          for (auto it = c.seq.rbegin(); it != c.seq.rend(); ++it)
            rc.seq.push_back(*it);
          T.chains.push_back(rc);
          rev[chain_id(c)] = rc;
        }
        std::sort(T.chains.begin(), T.chains.end(),
                  [](const Chain &x, const Chain &y) {
                    return std::pair{x.length(), chain_id(x)} <
                           std::pair{y.length(), chain_id(y)};
                  });
        for (const auto &[pair, ws] : HO.witnesses) {
          std::vector<DeltaMap> rws;
          for (const auto &u : ws) rws.push_back(reverse_map(u));
          std::sort(rws.begin(), rws.end());
          T.witnesses[{chain_id(rev.at(pair.first)),
                       chain_id(rev.at(pair.second))}] = rws;
        }
        check_hom_equal(T, P.hom(B, A), "op@(" + A + "," + B + ")");
        ++R.opposite_homs_checked;
      }
  }

  // 3. each hom is the category of elements of its chain diagram
  for (const FinCategory *S : {&C, &D}) {
    Path2Category P = build_path_category(*S, maxlen);
    FinCategory DN = delta_category(maxlen);
    for (const auto &A : S->objects)
      for (const auto &B : S->objects) {
        const PathHom &H = P.hom(A, B);
        SetValuedDiagram X;
        X.base = DN;
        for (int n = 0; n <= maxlen; ++n)
          X.sets[std::to_string(n)] = {};
        for (const auto &c : H.chains)
          X.sets[std::to_string(c.length())].push_back(chain_id(c));
        for (const auto &a : DN.arrows) X.action[a.id] = {};
        for (int n = 0; n <= maxlen; ++n)
          for (int m = 0; m <= maxlen; ++m)
            for (const auto &u : enumerate_hom(n, m))
              for (const auto &c : H.chains)
                if (c.length() == n)
                  X.action[u.str()][chain_id(c)] =
                      chain_id(apply_delta(*S, c, u));
        FinCategory EL = elements(X);
        FinCategory HC = hom_category(P, A, B);
        // explicit iso: (n|chain) -> chain, (u|chain) -> witness
        FinFunctor G;
        G.name = "el-to-hom";
        for (const auto &ob : EL.objects)
          G.omap[ob] = split_pair_id(ob).second;
        for (const auto &ar : EL.arrows) {
          if (EL.is_identity(ar.id)) continue;
          auto [uid, cid] = split_pair_id(ar.id);
          const Chain &s = P.chain_by_id(A, B, cid);
          // reparse the monotone map from its id
          DeltaMap u;
          bool found = false;
          for (int m = 0; m <= maxlen && !found; ++m)
            for (const auto &cand : enumerate_hom(s.length(), m))
              if (cand.str() == uid) {
                u = cand;
                found = true;
                break;
              }
          if (!found) throw Error("IsoFailure", ar.id, "unparseable witness");
          G.amap[ar.id] = witness_id(s, u);
        }
        G = validate_functor(EL, HC, G);
        if (!functor_is_iso(EL, HC, G))
          throw Error("IsoFailure", "elements@(" + A + "," + B + ")",
                      "comparison functor is not an isomorphism");
        ++R.elements_homs_checked;
      }
  }
  return R;
}

} // namespace pathcat
