#include "pathcat/commands.hpp"

#include <algorithm>
#include <chrono>
#include <functional>
#include <optional>
#include <set>
#include <sstream>

namespace pathcat {

namespace {

// --- small helpers -----------------------------------------------------------

std::string need(const CommandRequest &req, const std::string &key) {
  auto it = req.opts.find(key);
  if (it == req.opts.end() || it->second.empty())
    throw Error("MissingArgument", "--" + key,
                "required by " + req.command);
  return it->second;
}

std::optional<std::string> opt(const CommandRequest &req,
                               const std::string &key) {
  auto it = req.opts.find(key);
  if (it == req.opts.end() || it->second.empty()) return std::nullopt;
  return it->second;
}

std::vector<std::string> split_list(const std::string &s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(item);
  return out;
}

FinCategory resolve_category(const std::optional<SpecDocument> &doc,
                             const Id &name) {
  if (doc) return lower_category(*doc, name);
  SpecDocument empty;
  empty.source = "<builtin>";
  return lower_category(empty, name);
}

std::set<Id> arrow_class(const FinCategory &C, const std::string &spec) {
  std::set<Id> S;
  for (const Arrow &a : C.arrows)
    if (C.is_identity(a.id)) S.insert(a.id);
  if (spec == "ids") return S;
  if (spec == "all") {
    for (const Arrow &a : C.arrows) S.insert(a.id);
    return S;
  }
  for (const std::string &f : split_list(spec)) {
    if (!C.has_arrow(f))
      throw Error("UnresolvedReference", "--invert", f);
    S.insert(f);
  }
  return S;
}

void stat(Report &R, const std::string &key, const std::string &value) {
  R.stats.push_back(key + " = " + value);
}
void stat(Report &R, const std::string &key, long value) {
  stat(R, key, std::to_string(value));
}

long long binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  long long r = 1;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

// The identity colax transformation F => F for a strictly unital codomain.
ColaxTransformation identity_sigma(const FinBicategory &dom,
                                   const FinBicategory &N,
                                   const ColaxMorphism &F) {
  ColaxTransformation s;
  s.name = "id(" + F.name + ")";
  for (const Id &U : dom.objects) s.comp1[U] = N.unit_of(F.ob(U));
  for (const auto &[uv, h] : dom.homs)
    for (const Id &t : h.objects) {
      Id FU = F.ob(uv.first), FV = F.ob(uv.second);
      Id Ft = F.hf(uv.first, uv.second).ob(t);
      s.comp2[uv][t] =
          N.id2(FU, FV, N.tensor_ob(FU, FV, FV, N.unit_of(FV), Ft));
    }
  return s;
}

// One-object 2-category on a one-object category: 1-cells its arrows in
// diagram order, 2-cells only identities.
FinBicategory one_object_bicat(const FinCategory &G) {
  validate_category(G);
  if (G.objects.size() != 1)
    throw Error("ShapeMismatch", G.name, "one object expected");
  Id e = G.id_of(G.objects[0]);
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
  validate_bicategory(S);
  return S;
}

// Same-name inclusion of a subcategory into a total category.
FinFunctor inclusion_functor(const FinCategory &sub, const FinCategory &tot) {
  FinFunctor J;
  J.name = "incl(" + sub.name + ")";
  for (const Id &A : sub.objects) J.omap[A] = A;
  for (const Id &f : sub.nonidentity_arrows()) J.amap[f] = f;
  return validate_functor(sub, tot, J);
}

using Handler = std::function<void(const CommandRequest &,
                                   const std::optional<SpecDocument> &,
                                   Report &)>;

// --- validate ---------------------------------------------------------------

void validate_category_block(const SpecDocument &doc, const Id &name,
                             Report &R) {
  FinCategory C = lower_category(doc, name);
  R.checks.push_back("category " + name);
  stat(R, "category " + name + " objects", (long)C.objects.size());
  stat(R, "category " + name + " arrows", (long)C.arrows.size());
  FinCategory OP = derive(DeriveKind::Opposite, C);
  FinCategory OP2 = derive(DeriveKind::Opposite, OP);
  FinFunctor I = validate_functor(C, OP2, identity_functor(C));
  if (!functor_is_iso(C, OP2, I))
    throw Error("IsoFailure", "category " + name,
                "opposite is not an involution");
  R.checks.push_back("category " + name + " opposite involution");
  FinCategory core = interior(C);
  stat(R, "category " + name + " invertible arrows",
       (long)core.arrows.size());
  long two = 0;
  for (const Id &A : C.objects)
    for (const Id &B : C.objects)
      two += (long)nerve_level(C, 2, A, B).size();
  stat(R, "category " + name + " two-chains", two);
}

void validate_monoidal_block(const SpecDocument &doc, const Id &name,
                             Report &R) {
  MonoidalCategory M = lower_monoidal(doc, name);
  R.checks.push_back("monoidal " + name);
  FinBicategory S = suspend_monoidal(M);
  MonoidalCategory M2 = extract_monoidal(S);
  if (M2.tensor_ob != M.tensor_ob || M2.unit_ob != M.unit_ob)
    throw Error("IsoFailure", "monoidal " + name,
                "suspension round trip changed the tensor");
  R.checks.push_back("monoidal " + name + " suspension round trip");
  stat(R, "monoidal " + name + " objects", (long)M.base.objects.size());
}

void validate_bicategory_block(const SpecDocument &doc, const Id &name,
                               Report &R) {
  FinBicategory B = lower_bicategory(doc, name);
  R.checks.push_back("bicategory " + name);
  auto [iso, all] = canonical_bases(B);
  validate_base(B, iso);
  validate_base(B, all);
  R.checks.push_back("bicategory " + name + " canonical bases");
  long idcells = 0;
  for (const auto &[uv, h] : B.homs)
    for (const Id &t : h.objects) {
      if (!in_base(B, iso, uv.first, uv.second, h.id_of(t)))
        throw Error("MissingInvertible", "bicategory " + name,
                    "identity cell outside the invertible class");
      if (invert_cell(B, uv.first, uv.second, h.id_of(t)) != h.id_of(t))
        throw Error("IsoFailure", "bicategory " + name,
                    "identity cell not self-inverse");
      ++idcells;
    }
  stat(R, "bicategory " + name + " identity cells", idcells);
  ColaxMorphism I = identity_colax(B);
  validate_colax(B, B, I);
  ColaxMorphism II = compose_colax(B, B, B, I, I);
  if (II.omap != I.omap || II.coh != I.coh)
    throw Error("IsoFailure", "bicategory " + name,
                "identity colax composition is not idempotent");
  R.checks.push_back("bicategory " + name + " identity colax");
  ColaxTransformation s0 = identity_sigma(B, B, I);
  validate_transformation(B, B, I, I, s0);
  Modification m0;
  m0.name = "id";
  for (const Id &U : B.objects)
    m0.cells[U] = B.id2(U, U, B.unit_of(U));
  validate_modification(B, B, I, I, s0, s0, m0);
  R.checks.push_back("bicategory " + name + " identity transformation");
}

void validate_base_block(const SpecDocument &doc, const SpecBlock &b,
                         Report &R) {
  Id target;
  for (const SpecDecl &d : b.decls)
    if (d.key == "target" && d.args.size() == 1) target = d.args[0];
  if (target.empty())
    throw Error("UnresolvedReference", "base " + b.name,
                "no target line naming the guarded bicategory");
  FinBicategory M = lower_bicategory(doc, target);
  BaseW W = lower_base(doc, b.name, M);
  validate_base(M, W);
  R.checks.push_back("base " + b.name);
  long cells = 0;
  for (const auto &[uv, set] : W.cells) cells += (long)set.size();
  stat(R, "base " + b.name + " cells", cells);
}

void do_validate(const SpecDocument &doc, int maxlen, Report &R) {
  for (const SpecBlock &b : doc.blocks) {
    if (b.kind == "category") {
      validate_category_block(doc, b.name, R);
    } else if (b.kind == "monoidal") {
      validate_monoidal_block(doc, b.name, R);
    } else if (b.kind == "bicategory") {
      validate_bicategory_block(doc, b.name, R);
    } else if (b.kind == "base") {
      validate_base_block(doc, b, R);
    } else if (b.kind == "pathobject") {
      PathObject P = lower_pathobject(doc, b.name, maxlen);
      check_path_object(P);
      R.checks.push_back("pathobject " + b.name + " coherent");
      stat(R, "pathobject " + b.name + " maxlen", P.maxlen);
    } else if (b.kind == "distributor") {
      Distributor X = lower_distributor(doc, b.name);
      R.checks.push_back("distributor " + b.name);
      long elems = 0;
      for (const auto &[ad, fib] : X.table) elems += (long)fib.size();
      stat(R, "distributor " + b.name + " elements", elems);
    } else if (b.kind == "metric") {
      MetricSpace X = lower_metric(doc, b.name);
      EnrichedCategory E = metric_enrichment(X);
      validate_enriched(E);
      R.checks.push_back("metric " + b.name);
      stat(R, "metric " + b.name + " points", (long)X.points.size());
      stat(R, "metric " + b.name + " cap", X.K);
    } else if (b.kind == "cocycle") {
      lower_cocycle(doc, b.name, maxlen);
      R.checks.push_back("cocycle " + b.name);
      long entries = 0;
      for (const SpecDecl &d : b.decls)
        if (d.key == "entry") ++entries;
      stat(R, "cocycle " + b.name + " entries", entries);
    } else if (b.kind == "functor") {
      LoweredFunctor L = lower_functor(doc, b.name);
      R.checks.push_back("functor " + b.name);
      stat(R, "functor " + b.name, L.from + " -> " + L.to);
    }
  }
}

void cmd_validate(const CommandRequest &req,
                  const std::optional<SpecDocument> &doc, Report &R) {
  if (!doc) throw Error("MissingArgument", "--spec", "validate needs a file");
  do_validate(*doc, req.maxlen, R);
}

// --- path --------------------------------------------------------------------

void check_delta_ops(int N, Report &R) {
  long maps = 0;
  for (int n = 0; n <= N; ++n)
    for (int m = 0; m <= N; ++m) {
      auto all = enumerate_hom(m, n);
      if (n >= 1 && (long long)all.size() != binomial(n + m - 1, m))
        throw Error("IsoFailure", "delta(" + std::to_string(m) + "," +
                                      std::to_string(n) + ")",
                    "count disagrees with the binomial oracle");
      for (const DeltaMap &u : all) {
        check_delta(u);
        // factorization rebuilds the map exactly
        DeltaMap acc = delta_identity(u.dom);
        for (const DeltaMap &f : factorize_generators(u))
          acc = compose_delta(f, acc);
        if (!(acc == u))
          throw Error("IsoFailure", "factorize " + u.str(),
                      "generator factorization does not recompose");
        // endpoint-preserving duality is involutive
        if (!(ep_to_delta(ep_dual(u), u.dom, u.cod) == u))
          throw Error("IsoFailure", "ep-dual " + u.str(),
                      "duality round trip changed the map");
        // preimage intervals tile the domain at cumulative positions
        int covered = 0;
        for (int j = 0; j < u.cod; ++j) {
          auto [lo, hi] = interval_preimage(u, j);
          if (lo != cumulative_position(u, j))
            throw Error("IsoFailure", "interval " + u.str(),
                        "interval start disagrees with cumulative position");
          covered += hi - lo;
        }
        if (covered != u.dom)
          throw Error("IsoFailure", "interval " + u.str(),
                      "preimage intervals do not tile the domain");
        ++maps;
      }
    }
  for (int n = 1; n <= N; ++n)
    for (int i = 0; i < n; ++i)
      if (!is_delta_identity(
              compose_delta(merge_generator(n, i), insert_generator(n, i))))
        throw Error("IsoFailure", "generators(" + std::to_string(n) + "," +
                                      std::to_string(i) + ")",
                    "merge after insert is not the identity");
  for (int a = 0; a <= N; ++a)
    for (int b = 0; b <= N; ++b)
      if (!is_delta_identity(
              ordinal_sum(delta_identity(a), delta_identity(b))))
        throw Error("IsoFailure", "ordinal-sum identities",
                    "block sum of identities is not the identity");
  R.checks.push_back("monotone-map calculus vs oracle counts");
  stat(R, "monotone maps checked", maps);
}

void cmd_path(const CommandRequest &req,
              const std::optional<SpecDocument> &doc, Report &R) {
  FinCategory C = resolve_category(doc, opt(req, "category").value_or("One"));
  Path2Category PC = build_path_category(C, req.maxlen);
  long chains = 0, wits = 0, wits2 = 0;
  for (const Id &A : C.objects)
    for (const Id &Bo : C.objects) {
      const PathHom &H = PC.hom(A, Bo);
      chains += (long)H.chains.size();
      for (const auto &[st, v] : H.witnesses) wits += (long)v.size();
      for (const Chain &s : H.chains)
        for (const Chain &t : H.chains)
          wits2 += (long)hom_witness(PC, A, Bo, s, t).size();
    }
  if (wits != wits2)
    throw Error("IsoFailure", "witness tables",
                "per-pair recount disagrees with the stored tables");
  R.checks.push_back("witness tables consistent");
  stat(R, "chains", chains);
  stat(R, "witnesses", wits);
  stat(R, "loop hom arrows",
       (long)hom_category(PC, C.objects[0], C.objects[0]).arrows.size());

  std::string check = opt(req, "check").value_or("delta-iso");
  if (check == "delta-iso") {
    DeltaIdentification DI = delta_identification(PC);
    R.checks.push_back("delta identification bijective");
    stat(R, "delta category arrows", (long)DI.delta_cat.arrows.size());
    for (const auto &[mn, k] : DI.counts)
      stat(R,
           "delta(" + std::to_string(mn.first) + "," +
               std::to_string(mn.second) + ")",
           k);
  } else if (check == "delta-ops") {
    check_delta_ops(req.maxlen, R);
  } else if (check == "structural") {
    FinCategory D =
        resolve_category(doc, opt(req, "with").value_or("interval(1)"));
    StructuralIsoReport SR = structural_isos(C, D, req.maxlen);
    R.checks.push_back("structural identifications");
    stat(R, "coproduct homs checked", SR.coproduct_homs_checked);
    stat(R, "opposite homs checked", SR.opposite_homs_checked);
    stat(R, "elements homs checked", SR.elements_homs_checked);
  } else if (check == "embed") {
    EmbedCompress EC = embed_and_compress(PC);
    R.checks.push_back("embed and compress");
    stat(R, "embedded objects", (long)EC.embed_ob.size());
    stat(R, "embedded arrows", (long)EC.embed_ar.size());
  } else if (check == "functor") {
    if (!doc)
      throw Error("MissingArgument", "--spec", "check functor needs a file");
    LoweredFunctor L = lower_functor(*doc, need(req, "functor"));
    Path2Category PD = build_path_category(L.dom, req.maxlen);
    Path2Category PE = build_path_category(L.cod, req.maxlen);
    ColaxMorphism CM = path_functor(PD, PE, L.F);
    validate_colax(as_bicategory(PD), as_bicategory(PE), CM);
    R.checks.push_back("path functor colax");
    stat(R, "functor", L.from + " -> " + L.to);
  } else {
    throw Error("MissingArgument", "--check", "unknown check " + check);
  }
}

// --- segal-check ---------------------------------------------------------------

void cmd_segal(const CommandRequest &req,
               const std::optional<SpecDocument> &, Report &R) {
  SpecDocument doc = parse_spec(need(req, "pathobject"));
  Id name =
      opt(req, "name").value_or(Id());
  const SpecBlock &blk =
      name.empty() ? doc.only("pathobject") : doc.get("pathobject", name);
  PathObject P = lower_pathobject(doc, blk.name, req.maxlen);
  if (auto b = opt(req, "base")) P.base = lower_base(doc, *b, P.target);
  R.maxlen = P.maxlen;
  validate_base(P.target, P.base);
  R.checks.push_back("base axioms");
  check_path_object(P);
  R.checks.push_back("locality over base");
  long chains = 0;
  Path2Category PC = build_path_category(P.shape, P.maxlen);
  for (const Id &A : P.shape.objects)
    for (const Id &B : P.shape.objects)
      chains += (long)PC.hom(A, B).chains.size();
  stat(R, "chains", chains);
  stat(R, "leaves", (long)foliation(P).size());
  if (P.base.kind == BaseW::Kind::Iso) {
    long inverted = 0;
    for (const auto &[A, cell] : P.functor.unit_coh) {
      invert_cell(P.target, P.functor.ob(A), P.functor.ob(A), cell);
      ++inverted;
    }
    stat(R, "unit cells inverted", inverted);
  }
}

// --- roundtrip ------------------------------------------------------------------

void cmd_roundtrip(const CommandRequest &req,
                   const std::optional<SpecDocument> &, Report &R) {
  SpecDocument doc = parse_spec(need(req, "enriched"));
  const SpecBlock *metric = nullptr, *pathobj = nullptr;
  for (const SpecBlock &b : doc.blocks) {
    if (b.kind == "metric" && !metric) metric = &b;
    if (b.kind == "pathobject" && !pathobj) pathobj = &b;
  }
  if (metric) {
    MetricSpace X = lower_metric(doc, metric->name);
    EnrichedCategory E = metric_enrichment(X);
    validate_enriched(E);
    R.checks.push_back("metric enrichment valid");
    PathObject P = enriched_to_path(E, req.maxlen, BaseW::all());
    EnrichedCategory E2 = strict_to_enriched(P);
    if (E2.hom != E.hom || E2.unit != E.unit || E2.comp != E.comp ||
        E2.over != E.over)
      throw Error("IsoFailure", "metric " + metric->name,
                  "round trip changed the enrichment");
    R.checks.push_back("round trip identity on hom, unit, composition");
    stat(R, "points", (long)X.points.size());
    stat(R, "hom entries", (long)E.hom.size());
    std::map<Id, Id> idmap;
    for (const Id &p : X.points) idmap[p] = p;
    check_nonexpansive(X, X, idmap);
    R.checks.push_back("identity map nonexpansive");
  } else if (pathobj) {
    PathObject P = lower_pathobject(doc, pathobj->name, req.maxlen);
    R.maxlen = P.maxlen;
    EnrichedCategory E = strict_to_enriched(P);
    validate_enriched(E);
    PathObject P2 = enriched_to_path(E, P.maxlen, P.base);
    for (const auto &[uv, HF] : P.functor.hmap)
      if (P2.functor.hmap.at(uv).omap != HF.omap)
        throw Error("IsoFailure", "pathobject " + pathobj->name,
                    "round trip changed hom(" + uv.first + "," + uv.second +
                        ")");
    R.checks.push_back("round trip identity on chain images");
    stat(R, "hom entries", (long)E.hom.size());
  } else {
    throw Error("UnresolvedReference", "--enriched",
                "no metric or pathobject block in the file");
  }
}

// --- monoid / simplicial ------------------------------------------------------------

void pathmonoid_roundtrip(const FinCategory &C, int N, Report &R) {
  SetPathMonoid Y = monoid_pathmonoid(C, N);
  validate_pathmonoid(Y);
  R.checks.push_back("path monoid axioms");
  SimplicialTruncation X = pathmonoid_to_simplicial(Y);
  validate_simplicial(X);
  R.checks.push_back("simplicial axioms");
  SetPathMonoid Y2 = simplicial_to_pathmonoid(X);
  if (Y2.levels != Y.levels || Y2.split != Y.split)
    throw Error("IsoFailure", "pathmonoid " + C.name,
                "round trip changed the levels");
  for (const auto &[u, act] : Y.action)
    if (!Y2.action.count(u) || Y2.action.at(u) != act)
      throw Error("IsoFailure", "pathmonoid " + C.name,
                  "round trip changed the action of " + u.str());
  R.checks.push_back("correspondence round trip");
  Id o = C.objects[0];
  for (int k = 0; k <= N; ++k) {
    long lv = (long)Y.levels.at(k).size();
    if (lv != (long)nerve_level(C, k, o, o).size())
      throw Error("IsoFailure", "level " + std::to_string(k),
                  "level cardinality disagrees with the nerve");
    stat(R, "level " + std::to_string(k), lv);
  }
  R.checks.push_back("levels match nerve counts");
}

void cmd_monoid(const CommandRequest &req,
                const std::optional<SpecDocument> &doc, Report &R) {
  bool any = false;
  if (auto c = opt(req, "category")) {
    pathmonoid_roundtrip(resolve_category(doc, *c), req.maxlen, R);
    any = true;
  }
  if (auto p = opt(req, "pathobject")) {
    if (!doc)
      throw Error("MissingArgument", "--spec",
                  "monoid --pathobject needs a file");
    PathObject P = lower_pathobject(*doc, *p, req.maxlen);
    R.maxlen = P.maxlen;
    HomotopyMonoidView V = homotopy_monoid_view(P);
    R.checks.push_back("graded multiplication extracted");
    for (size_t n = 0; n < V.graded.size(); ++n)
      stat(R, "graded " + std::to_string(n), V.graded[n]);
    stat(R, "strict", V.strict ? "true" : "false");
    any = true;
  }
  if (!any)
    throw Error("MissingArgument", "--category",
                "monoid needs --category or --pathobject");
}

void cmd_simplicial(const CommandRequest &req,
                    const std::optional<SpecDocument> &doc, Report &R) {
  pathmonoid_roundtrip(resolve_category(doc, need(req, "category")),
                       req.maxlen, R);
}

// --- bridge ----------------------------------------------------------------------

void cmd_bridge(const CommandRequest &req,
                const std::optional<SpecDocument> &doc, Report &R) {
  if (!doc) throw Error("MissingArgument", "--spec", "bridge needs a file");
  Id name = opt(req, "name").value_or(Id());
  const SpecBlock *blk = nullptr;
  if (!name.empty())
    blk = &doc->get("distributor", name);
  else
    for (const SpecBlock &b : doc->blocks)
      if (b.kind == "distributor" && !blk) blk = &b;
  if (!blk)
    throw Error("UnresolvedReference", "--spec",
                "no distributor block in the file");
  Distributor X = lower_distributor(*doc, blk->name);
  R.checks.push_back("distributor actions functorial");
  RigidBridge E = bridge_of_distributor(X);
  validate_bridge(E);
  R.checks.push_back("collage is a rigid bridge");
  Distributor X2 = distributor_of_bridge(E);
  if (X2.table != X.table || X2.lact != X.lact || X2.ract != X.ract)
    throw Error("IsoFailure", "distributor " + blk->name,
                "collage round trip changed the data");
  R.checks.push_back("distributor round trip");
  long elems = 0;
  for (const auto &[ad, fib] : X.table) elems += (long)fib.size();
  stat(R, "elements", elems);
  RigidBridge T = thin_bridge(X.left, X.right);
  validate_bridge(T);
  auto ms = bridge_morphisms(E, T);
  stat(R, "morphisms to thin bridge", (long)ms.size());
  if (ms.empty())
    throw Error("FactorizationMissing", "thin bridge",
                "no morphism to the thin bridge");
  if (ms.size() > 1)
    throw Error("FactorizationNotUnique", "thin bridge",
                std::to_string(ms.size()) + " morphisms to the thin bridge");
  R.checks.push_back("thin bridge terminal");
}

// --- bimodule ---------------------------------------------------------------------

void cmd_bimodule(const CommandRequest &req,
                  const std::optional<SpecDocument> &doc, Report &R) {
  if (!doc) throw Error("MissingArgument", "--spec", "bimodule needs a file");
  FinCategory C = lower_category(*doc, need(req, "left"));
  FinCategory D = lower_category(*doc, need(req, "right"));
  FinCategory Tt = lower_category(*doc, need(req, "total"));
  RigidBridge E;
  E.name = "bridge(" + C.name + "," + D.name + ")";
  E.left = C;
  E.right = D;
  E.total = Tt;
  E.fromC = inclusion_functor(C, Tt);
  E.fromD = inclusion_functor(D, Tt);
  validate_bridge(E);
  R.checks.push_back("declared bridge valid");
  PathObject psi =
      lower_pathobject(*doc, opt(req, "psi").value_or("psi"), req.maxlen);
  PathObject F =
      lower_pathobject(*doc, opt(req, "leftpoint").value_or("F"), req.maxlen);
  PathObject G = lower_pathobject(*doc, opt(req, "rightpoint").value_or("G"),
                                  req.maxlen);
  R.maxlen = psi.maxlen;
  Bimodule b = validate_bimodule(E, psi, F, G);
  R.checks.push_back("boundary points match");
  PathObject RL = restrict_shape(psi, C, E.fromC);
  long rc = 0;
  for (const auto &[uv, HF] : RL.functor.hmap) rc += (long)HF.omap.size();
  stat(R, "left restriction chains", rc);
  BimoduleActions acts = extract_actions(b);
  R.checks.push_back("actions associative and compatible");
  stat(R, "left actions", (long)acts.left.size());
  stat(R, "right actions", (long)acts.right.size());
  Path2Category PC = build_path_category(Tt, psi.maxlen);
  FinBicategory PB = as_bicategory(PC);
  ColaxTransformation theta = identity_sigma(PB, psi.target, psi.functor);
  validate_bimodule_morphism(b, b, theta);
  R.checks.push_back("identity endomorphism valid");
}

// --- localize ---------------------------------------------------------------------

std::vector<FinCategory> resolve_targets(
    const std::optional<SpecDocument> &doc, const CommandRequest &req) {
  std::vector<FinCategory> out;
  for (const std::string &t :
       split_list(opt(req, "targets").value_or("interval(1)")))
    out.push_back(resolve_category(doc, t));
  return out;
}

void cmd_localize(const CommandRequest &req,
                  const std::optional<SpecDocument> &doc, Report &R) {
  if (auto bn = opt(req, "bicategory")) {
    if (!doc)
      throw Error("MissingArgument", "--spec",
                  "localize --bicategory needs a file");
    FinBicategory M = lower_bicategory(*doc, *bn);
    BaseW W = lower_base(*doc, opt(req, "base").value_or("all"), M);
    validate_base(M, W);
    R.checks.push_back("cell class axioms");
    SecondaryLocalization sec = secondary_localization(M, W);
    validate_bicategory(sec.locM);
    R.checks.push_back("hom-wise localization is a bicategory");
    validate_colax(M, sec.locM, sec.L);
    R.checks.push_back("comparison morphism colax");
    long arrows = 0;
    for (const auto &[uv, h] : sec.locM.homs) arrows += (long)h.arrows.size();
    stat(R, "localized 2-cells", arrows);
    return;
  }
  if (auto cu = opt(req, "curry")) {
    if (!doc)
      throw Error("MissingArgument", "--spec",
                  "localize --curry needs a file");
    LoweredFunctor L = lower_functor(*doc, *cu);
    auto parts = L.from.substr(0, 5) == "prod("
                     ? split_list(L.from.substr(5, L.from.size() - 6))
                     : std::vector<std::string>{};
    if (parts.size() != 2)
      throw Error("UnresolvedReference", "functor " + *cu,
                  "currying needs a from line of the form prod(A,B)");
    FinCategory A = lower_category(*doc, parts[0]);
    FinCategory B = lower_category(*doc, parts[1]);
    CurriedFunctor G = curry_adjunction(A, B, L.cod, L.F);
    for (const auto &[h, nat] : G.arrow) {
      const Arrow &ah = A.arrow(h);
      validate_nat(B, L.cod, G.at.at(ah.src), G.at.at(ah.dst), nat);
    }
    R.checks.push_back("curried components natural");
    FinFunctor F2 = uncurry(A, B, L.cod, G);
    if (!functor_equal(L.dom, F2, L.F))
      throw Error("IsoFailure", "functor " + *cu,
                  "uncurrying did not restore the functor");
    R.checks.push_back("curry round trip");
    stat(R, "partial functors", (long)G.at.size());
    return;
  }
  FinCategory C = resolve_category(doc, need(req, "category"));
  std::set<Id> S = arrow_class(C, need(req, "invert"));
  std::vector<FinCategory> targets = resolve_targets(doc, req);
  if (auto pr = opt(req, "product")) {
    FinCategory D = resolve_category(doc, *pr);
    std::set<Id> T = arrow_class(D, opt(req, "pinvert").value_or("ids"));
    ProductLocalizationReport rep =
        product_localization_check(C, S, D, T, targets);
    R.checks.push_back("componentwise localization of the product");
    stat(R, "functors checked", rep.functors_checked);
    stat(R, "pairs checked", rep.pairs_checked);
    stat(R, "scope", rep.scope);
    return;
  }
  FractionSystem sys = check_fractions(C, S);
  stat(R, "identities closed", sys.identities_ok ? "true" : "false");
  stat(R, "composition closed", sys.closure_ok ? "true" : "false");
  stat(R, "squares complete", sys.ore_ok ? "true" : "false");
  stat(R, "cancellation", sys.cancel_ok ? "true" : "false");
  LocalizedCategory loc = localize_fractions(sys, targets);
  R.checks.push_back("localization built");
  stat(R, "localized arrows", (long)loc.cat.arrows.size());
  stat(R, "inverted arrows", (long)S.size());
  int up = verify_universal_property(C, S, loc, targets);
  R.checks.push_back("universal property on finite targets");
  stat(R, "functors factored", up);
  long direct = 0;
  if (!targets.empty()) {
    const FinCategory &T0 = targets.front();
    for (const FinFunctor &F : enumerate_functors(C, T0)) {
      bool inverts = true;
      for (const Id &s : S)
        if (!inverse_of(T0, F.ar(s))) {
          inverts = false;
          break;
        }
      if (!inverts) continue;
      FinFunctor H = factor_through(C, loc, T0, F);
      if (!functor_equal(C, compose_functor(C, loc.cat, T0, H, loc.L), F))
        throw Error("FactorizationMissing", "factor " + F.name,
                    "composite through the localization differs");
      ++direct;
    }
    R.checks.push_back("direct factorizations recompose");
  }
  stat(R, "direct factorizations", direct);
}

// --- reduce -----------------------------------------------------------------------

void cmd_reduce(const CommandRequest &req,
                const std::optional<SpecDocument> &, Report &R) {
  SpecDocument doc = parse_spec(need(req, "spec"));
  const SpecBlock *metric = nullptr, *pathobj = nullptr;
  for (const SpecBlock &b : doc.blocks) {
    if (b.kind == "metric" && !metric) metric = &b;
    if (b.kind == "pathobject" && !pathobj) pathobj = &b;
  }
  PathObject P;
  if (metric) {
    MetricSpace X = lower_metric(doc, metric->name);
    P = enriched_to_path(metric_enrichment(X), req.maxlen, BaseW::all());
  } else if (pathobj) {
    P = lower_pathobject(doc, pathobj->name, req.maxlen);
  } else {
    throw Error("UnresolvedReference", "--spec",
                "no metric or pathobject block in the file");
  }
  R.maxlen = P.maxlen;
  long before = 0;
  for (const auto &[uv, h] : P.target.homs) before += (long)h.arrows.size();
  stat(R, "target 2-cells before", before);
  PathObject Rp = reduce_point(P);
  R.checks.push_back("coherence cells inverted");
  check_path_object(Rp);
  R.checks.push_back("reduced point coherent over the invertible class");
  long after = 0;
  for (const auto &[uv, h] : Rp.target.homs) after += (long)h.arrows.size();
  stat(R, "target 2-cells after", after);
}

// --- report -----------------------------------------------------------------------

void cmd_report(const CommandRequest &req,
                const std::optional<SpecDocument> &doc, Report &R) {
  if (!doc) throw Error("MissingArgument", "--spec", "report needs a file");
  do_validate(*doc, req.maxlen, R);
  // identity premorphism on every declared path object
  for (const SpecBlock &b : doc->blocks) {
    if (b.kind != "pathobject") continue;
    PathObject P = lower_pathobject(*doc, b.name, req.maxlen);
    Path2Category PC = build_path_category(P.shape, P.maxlen);
    FinBicategory PB = as_bicategory(PC);
    PathPremorphism T;
    T.name = "id(" + b.name + ")";
    T.shape_map = identity_functor(P.shape);
    T.sigma = identity_sigma(PB, P.target, P.functor);
    if (!validate_premorphism(P, P, T))
      throw Error("IsoFailure", "pathobject " + b.name,
                  "identity premorphism is not strict");
    R.checks.push_back("pathobject " + b.name + " identity premorphism");
  }
  if (auto tr = opt(req, "transport")) {
    const SpecBlock &cb = doc->only("cocycle");
    CocycleReport CR = lower_cocycle(*doc, cb.name, req.maxlen);
    LoweredFunctor L = lower_functor(*doc, *tr);
    FinBicategory BG = one_object_bicat(L.dom);
    FinBicategory BH = one_object_bicat(L.cod);
    ColaxMorphism Phi;
    Phi.name = *tr;
    Phi.omap["pt"] = "pt";
    FinFunctor h;
    h.name = *tr + "(pt,pt)";
    for (const Arrow &g : L.dom.arrows) h.omap[g.id] = L.F.ar(g.id);
    Phi.hmap[{"pt", "pt"}] =
        validate_functor(BG.hom("pt", "pt"), BH.hom("pt", "pt"), h);
    auto &table = Phi.coh[{"pt", "pt", "pt"}];
    const FinCategory &HH = BH.hom("pt", "pt");
    for (const Arrow &t : L.dom.arrows)
      for (const Arrow &s : L.dom.arrows)
        table[{t.id, s.id}] = HH.id_of(L.F.ar(L.dom.compose(t.id, s.id)));
    Phi.unit_coh["pt"] = HH.id_of(L.F.ar(L.dom.id_of(L.dom.objects[0])));
    validate_colax(BG, BH, Phi);
    R.checks.push_back("transport morphism colax");
    PathObject P2 = base_change(CR.associated, BH, BaseW::iso(), Phi);
    R.checks.push_back("cocycle base change");
    const std::vector<Id> &points = CR.associated.shape.objects;
    std::map<IdPair, Id> f2;
    for (const Id &a : points)
      for (const Id &b2 : points)
        f2[{a, b2}] = a == b2
                          ? L.cod.id_of(L.cod.objects[0])
                          : L.F.ar(CR.transition.ar("c(" + a + "," + b2 +
                                                    ")"));
    CocycleReport CR2 = cocycle_check(points, L.cod, f2, req.maxlen);
    R.checks.push_back("transported cocycle valid");
    for (const auto &[uv, HF] : CR2.associated.functor.hmap) {
      if (P2.functor.hmap.at(uv).omap != HF.omap)
        throw Error("IsoFailure", "transport hom(" + uv.first + "," +
                                      uv.second + ")",
                    "base change and re-association disagree on chains");
    }
    if (P2.functor.coh != CR2.associated.functor.coh)
      throw Error("IsoFailure", "transport",
                  "base change and re-association disagree on colaxity");
    R.checks.push_back("transport routes agree");
    stat(R, "transported entries", (long)f2.size());
  }
}

// --- dispatch ----------------------------------------------------------------------

const std::map<Id, Handler> &dispatch() {
  static const std::map<Id, Handler> table = {
      {"validate", cmd_validate},   {"path", cmd_path},
      {"segal-check", cmd_segal},   {"roundtrip", cmd_roundtrip},
      {"monoid", cmd_monoid},       {"simplicial", cmd_simplicial},
      {"bridge", cmd_bridge},       {"bimodule", cmd_bimodule},
      {"localize", cmd_localize},   {"reduce", cmd_reduce},
      {"report", cmd_report},
  };
  return table;
}

}  // namespace

std::string Report::machine() const {
  std::string out = "command " + command + "\n";
  out += "truncation maxlen=" + std::to_string(maxlen) + "\n";
  for (const std::string &c : checks) out += "PASS " + c + "\n";
  for (const Finding &f : findings) {
    out += "FAIL " + f.code + " " + f.location;
    if (!f.detail.empty()) out += " " + f.detail;
    out += "\n";
  }
  for (const std::string &s : stats) out += "stat " + s + "\n";
  out += std::string("result ") + (pass() ? "pass" : "fail") + "\n";
  return out;
}

std::string Report::render() const {
  return machine() + "# runtime_ms " + std::to_string(runtime_ms) + "\n";
}

Report run_command(const CommandRequest &req) {
  auto it = dispatch().find(req.command);
  if (it == dispatch().end())
    throw Error("UnknownCommand", req.command,
                "known: " + join(command_names(), ", "));
  Report R;
  R.command = req.command;
  R.maxlen = req.maxlen;
  std::optional<SpecDocument> doc;
  if (auto s = opt(req, "spec")) doc = parse_spec(*s);
  auto t0 = std::chrono::steady_clock::now();
  try {
    it->second(req, doc, R);
  } catch (const Error &e) {
    if (is_input_error_code(e.code())) throw;
    R.findings.push_back({e.code(), e.location(), e.detail()});
  }
  R.runtime_ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                     std::chrono::steady_clock::now() - t0)
                     .count();
  return R;
}

std::vector<Id> command_names() {
  std::vector<Id> out;
  for (const auto &[k, v] : dispatch()) out.push_back(k);
  return out;
}

std::map<Id, std::vector<Id>> command_operations() {
  return {
      {"validate",
       {"parse_spec", "validate_category", "derive", "identity_functor",
        "validate_functor", "functor_is_iso", "interior", "nerve_level",
        "suspend_monoidal", "extract_monoidal", "validate_bicategory",
        "canonical_bases", "validate_base", "in_base", "invert_cell",
        "identity_colax", "validate_colax", "compose_colax",
        "validate_transformation", "validate_modification",
        "check_path_object", "validate_distributor", "metric_enrichment",
        "validate_enriched", "cocycle_check"}},
      {"path",
       {"build_path_category", "as_bicategory", "hom_category",
        "hom_witness", "delta_identification",
        "delta_category", "apply_delta", "enumerate_hom", "check_delta",
        "delta_identity", "is_delta_identity", "merge_generator",
        "insert_generator", "compose_delta", "ordinal_sum",
        "factorize_generators", "interval_preimage", "cumulative_position",
        "ep_dual", "ep_to_delta", "structural_isos", "elements",
        "embed_and_compress", "path_functor", "validate_colax", "coarse",
        "interval", "chain_id", "check_chain", "concat_chains",
        "chain_target", "chain_vertex", "witness_id"}},
      {"segal-check",
       {"parse_spec", "lower_pathobject", "build_path_category",
        "validate_base", "check_path_object", "foliation", "invert_cell"}},
      {"roundtrip",
       {"parse_spec", "metric_enrichment", "validate_enriched",
        "enriched_to_path", "strict_to_enriched", "check_nonexpansive",
        "quantale_monoidal", "quantale_bicategory", "quantale_add"}},
      {"monoid",
       {"monoid_pathmonoid", "validate_pathmonoid",
        "pathmonoid_to_simplicial", "validate_simplicial",
        "simplicial_to_pathmonoid", "nerve_level", "homotopy_monoid_view"}},
      {"simplicial",
       {"monoid_pathmonoid", "validate_pathmonoid",
        "pathmonoid_to_simplicial", "validate_simplicial",
        "simplicial_to_pathmonoid", "nerve_level"}},
      {"bridge",
       {"parse_spec", "validate_distributor", "bridge_of_distributor",
        "validate_bridge", "distributor_of_bridge", "thin_bridge",
        "bridge_morphisms"}},
      {"bimodule",
       {"parse_spec", "validate_bridge", "validate_bimodule",
        "restrict_shape", "extract_actions", "validate_bimodule_morphism",
        "check_path_object"}},
      {"localize",
       {"check_fractions", "localize_fractions",
        "verify_universal_property", "factor_through", "enumerate_functors",
        "inverse_of", "compose_functor", "functor_equal",
        "product_localization_check", "curry_adjunction", "uncurry",
        "validate_nat", "secondary_localization", "validate_base",
        "validate_colax"}},
      {"reduce",
       {"parse_spec", "reduce_point", "check_path_object",
        "enriched_to_path", "metric_enrichment", "secondary_localization"}},
      {"report",
       {"parse_spec", "validate_premorphism", "base_change", "cocycle_check",
        "validate_colax", "identity_functor", "one_object_suspension"}},
  };
}

}  // namespace pathcat
