// Enrichment layer: path objects and their locality check, enriched
// categories and the exact round trip with strict path objects, graded
// one-object views, premorphisms / base change / restriction / foliation,
// the correspondence with truncated simplicial data, cocycles, quantales,
// and metric enrichment. Oracles are independent computations (capped
// integer arithmetic, generator counting, block splitting of words).
#define PATHCAT_BICAT_FIXTURES
#include "test_helpers.hpp"
#include "pathcat/enrichment.hpp"

#include <set>

using namespace pathcat;
using testutil::expect_code;

namespace {

MetricSpace metric3() {
  MetricSpace X;
  X.name = "M3";
  X.K = 5;
  X.points = {"a", "b", "c"};
  auto set = [&](const Id &x, const Id &y, const Id &v) {
    X.d[{x, y}] = v;
    X.d[{y, x}] = v;
  };
  set("a", "a", "0");
  set("b", "b", "0");
  set("c", "c", "0");
  set("a", "b", "1");
  set("b", "c", "2");
  set("a", "c", "2");
  return X;
}

EnrichedCategory cyclic_enriched(int n, int c, int u) {
  auto r = [](int k) { return "r" + std::to_string(k); };
  EnrichedCategory E;
  E.name = "cyc" + std::to_string(n);
  E.base = testutil::cyclic_suspension(n);
  E.objects = {"X"};
  E.over["X"] = "pt";
  E.hom[{"X", "X"}] = "I";
  E.comp[{"X", "X", "X"}] = r(c);
  E.unit["X"] = r(u);
  return E;
}

// A path object with every chain sent to the same 1-cell and every colaxity
// cell equal to the given 2-cell of the cyclic suspension of order two.
PathObject constant_cyclic_path_object(const Id &phi) {
  PathObject P;
  P.name = "const(" + phi + ")";
  P.shape = coarse({"A"});
  P.maxlen = 4;
  P.target = testutil::cyclic_suspension(2);
  P.base = BaseW::iso();
  Path2Category PC = build_path_category(P.shape, P.maxlen);
  ColaxMorphism F;
  F.name = P.name;
  F.omap["A"] = "pt";
  FinFunctor HF;
  HF.name = "F(A,A)";
  const PathHom &H = PC.hom("A", "A");
  for (const Chain &c : H.chains) HF.omap[chain_id(c)] = "I";
  for (const auto &[st, wits] : H.witnesses) {
    const Chain &s = PC.chain_by_id("A", "A", st.first);
    for (const DeltaMap &u : wits) HF.amap[witness_id(s, u)] = "r0";
  }
  F.hmap[{"A", "A"}] = HF;
  auto &table = F.coh[{"A", "A", "A"}];
  for (const Chain &s : H.chains)
    for (const Chain &t : H.chains)
      if (s.length() + t.length() <= P.maxlen)
        table[{chain_id(t), chain_id(s)}] = phi;
  F.unit_coh["A"] = phi;
  P.functor = F;
  return P;
}

// Constant functor into a quantale: every chain goes to "inf", so the unit
// colaxity cell ge(inf,0) is forced to be non-invertible.
PathObject constant_inf_path_object() {
  PathObject P;
  P.name = "inf-point";
  P.shape = coarse({"A"});
  P.maxlen = 3;
  P.target = quantale_bicategory({"pt"}, 2);
  P.base = BaseW::iso();
  const FinCategory &Q = P.target.hom("pt", "pt");
  Path2Category PC = build_path_category(P.shape, P.maxlen);
  ColaxMorphism F;
  F.name = P.name;
  F.omap["A"] = "pt";
  FinFunctor HF;
  HF.name = "F(A,A)";
  const PathHom &H = PC.hom("A", "A");
  for (const Chain &c : H.chains) HF.omap[chain_id(c)] = "inf";
  for (const auto &[st, wits] : H.witnesses) {
    const Chain &s = PC.chain_by_id("A", "A", st.first);
    for (const DeltaMap &u : wits) HF.amap[witness_id(s, u)] = Q.id_of("inf");
  }
  F.hmap[{"A", "A"}] = HF;
  auto &table = F.coh[{"A", "A", "A"}];
  for (const Chain &s : H.chains)
    for (const Chain &t : H.chains)
      if (s.length() + t.length() <= P.maxlen)
        table[{chain_id(t), chain_id(s)}] = Q.id_of("inf");
  F.unit_coh["A"] = "ge(inf,0)";
  P.functor = F;
  return P;
}

// Constant-zero functor over a quantale point, usable on any shape.
PathObject constant_zero_path_object(const FinCategory &shape, int maxlen) {
  PathObject P;
  P.name = "zero(" + shape.name + ")";
  P.shape = shape;
  P.maxlen = maxlen;
  P.target = quantale_bicategory({"pt"}, 2);
  P.base = BaseW::iso();
  const FinCategory &Q = P.target.hom("pt", "pt");
  Path2Category PC = build_path_category(shape, maxlen);
  ColaxMorphism F;
  F.name = P.name;
  for (const Id &A : shape.objects) F.omap[A] = "pt";
  for (const Id &A : shape.objects)
    for (const Id &B : shape.objects) {
      const PathHom &H = PC.hom(A, B);
      FinFunctor HF;
      HF.name = "F(" + A + "," + B + ")";
      for (const Chain &c : H.chains) HF.omap[chain_id(c)] = "0";
      for (const auto &[st, wits] : H.witnesses) {
        const Chain &s = PC.chain_by_id(A, B, st.first);
        for (const DeltaMap &u : wits)
          HF.amap[witness_id(s, u)] = Q.id_of("0");
      }
      F.hmap[{A, B}] = HF;
    }
  for (const Id &A : shape.objects)
    for (const Id &B : shape.objects)
      for (const Id &C : shape.objects) {
        auto &table = F.coh[{A, B, C}];
        for (const Chain &s : PC.hom(A, B).chains)
          for (const Chain &t : PC.hom(B, C).chains)
            if (s.length() + t.length() <= maxlen)
              table[{chain_id(t), chain_id(s)}] = Q.id_of("0");
      }
  for (const Id &A : shape.objects) F.unit_coh[A] = Q.id_of("0");
  P.functor = F;
  return P;
}

// The two-letter monoid {e, s} with s absorbing, as a one-object category.
FinCategory absorbing_monoid() {
  FinCategory C;
  C.name = "absorb2";
  C.objects = {"m"};
  C.arrows = {{"e", "m", "m"}, {"s", "m", "m"}};
  C.identity["m"] = "e";
  C.comp[{"e", "e"}] = "e";
  C.comp[{"e", "s"}] = "s";
  C.comp[{"s", "e"}] = "s";
  C.comp[{"s", "s"}] = "s";
  return C;
}

// Capped integer oracle for the quantale: -1 encodes infinity.
long qoracle(const Id &x) { return x == "inf" ? -1 : std::stol(x); }
Id qadd_oracle(int K, const Id &x, const Id &y) {
  if (x == "inf" || y == "inf") return "inf";
  long v = qoracle(x) + qoracle(y);
  return v > K ? "inf" : std::to_string(v);
}

} // namespace

TEST_CASE("capped addition quantale") {
  MonoidalCategory Q = quantale_monoidal(3);
  validate_category(Q.base);
  CHECK(Q.base.is_posetal());
  CHECK(Q.base.objects == std::vector<Id>{"0", "1", "2", "3", "inf"});
  for (const Id &x : Q.base.objects)
    for (const Id &y : Q.base.objects) {
      CHECK(quantale_add(3, x, y) == qadd_oracle(3, x, y));
      CHECK(Q.tensor_ob.at({x, y}) == qadd_oracle(3, x, y));
      for (const Id &z : Q.base.objects)
        CHECK(quantale_add(3, quantale_add(3, x, y), z) ==
              quantale_add(3, x, quantale_add(3, y, z)));
    }
  for (const Id &x : Q.base.objects) {
    CHECK(quantale_add(3, "0", x) == x);
    CHECK(quantale_add(3, x, "0") == x);
  }
  FinBicategory B = quantale_bicategory({"u", "v"}, 3);
  validate_bicategory(B);
  CHECK(B.hom("u", "v").objects.size() == 5);
  CHECK(B.unit_of("u") == "0");
  expect_code("DomainMismatch", [] { quantale_add(3, "x7", "1"); });
  expect_code("EmptySet", [] { quantale_bicategory({}, 2); });
}

TEST_CASE("metric spaces become enriched categories") {
  MetricSpace X = metric3();
  EnrichedCategory E = metric_enrichment(X);
  CHECK(E.objects == X.points);
  CHECK(E.hom.at({"a", "b"}) == "1");
  CHECK(E.hom.at({"a", "c"}) == "2");
  CHECK(E.over.at("b") == "pt");
  // composition a -> b -> c: 2 + 1 = 3 >= d(a,c) = 2
  CHECK(E.comp.at({"a", "b", "c"}) == "ge(3,2)");
  CHECK(E.unit.at("a") == "id(0)");

  MetricSpace bad = metric3();
  bad.d[{"a", "a"}] = "1";
  expect_code("ZeroDiagonalViolation", [&] { metric_enrichment(bad); });
  bad = metric3();
  bad.d[{"a", "c"}] = "4";
  expect_code("TriangleViolation", [&] { metric_enrichment(bad); });
  bad = metric3();
  bad.d.erase({"b", "c"});
  expect_code("UnknownObject", [&] { metric_enrichment(bad); });
  bad = metric3();
  bad.d[{"a", "b"}] = "9";
  expect_code("DomainMismatch", [&] { metric_enrichment(bad); });

  MetricSpace Y = metric3();
  std::map<Id, Id> ident = {{"a", "a"}, {"b", "b"}, {"c", "c"}};
  check_nonexpansive(X, Y, ident);
  std::map<Id, Id> collapse = {{"a", "a"}, {"b", "a"}, {"c", "a"}};
  check_nonexpansive(X, Y, collapse);
  Y.d[{"a", "b"}] = "3";
  Y.d[{"b", "a"}] = "3";
  expect_code("ExpansionViolation", [&] { check_nonexpansive(X, Y, ident); });
  std::map<Id, Id> partial = {{"a", "a"}};
  expect_code("UnknownObject", [&] { check_nonexpansive(X, X, partial); });
}

TEST_CASE("enriched validation reports typing and axiom defects") {
  EnrichedCategory E = cyclic_enriched(4, 1, 3);
  validate_enriched(E);

  EnrichedCategory bad = E;
  bad.hom[{"X", "X"}] = "bogus";
  expect_code("DomainMismatch", [&] { validate_enriched(bad); });
  bad = E;
  bad.comp.erase({"X", "X", "X"});
  expect_code("UnknownObject", [&] { validate_enriched(bad); });
  bad = E;
  bad.unit["X"] = "r2";  // left unit becomes r1+r2 = r3 != identity
  expect_code("IdentityViolation", [&] { validate_enriched(bad); });

  // two objects over the cyclic suspension with one uneven composition cell
  EnrichedCategory F;
  F.name = "uneven";
  F.base = testutil::cyclic_suspension(4);
  F.objects = {"A", "B"};
  for (const Id &o : F.objects) {
    F.over[o] = "pt";
    F.unit[o] = "r0";
  }
  for (const Id &o : F.objects)
    for (const Id &p : F.objects) F.hom[{o, p}] = "I";
  for (const Id &o : F.objects)
    for (const Id &p : F.objects)
      for (const Id &q : F.objects) F.comp[{o, p, q}] = "r0";
  F.comp[{"A", "A", "A"}] = "r1";
  expect_code("AssociativityViolation", [&] { validate_enriched(F); });
}

TEST_CASE("the path object of a metric validates and round-trips") {
  EnrichedCategory E = metric_enrichment(metric3());
  PathObject P = enriched_to_path(E, 2, BaseW::iso());
  PathObjectCheck R = check_path_object(P);
  CHECK(R.paths.maxlen == 2);

  const ColaxMorphism &F = P.functor;
  CHECK(F.hf("a", "b").ob("[c(a,b)]") == "1");
  CHECK(F.hf("a", "a").ob("[@a]") == "0");
  CHECK(F.hf("a", "c").ob("[c(a,b),c(b,c)]") == "3");
  CHECK(F.hf("a", "c").ob("[c(a,c)]") == "2");
  // every colaxity cell of a quantale-valued path object is an identity
  const FinCategory &Q = P.target.hom("pt", "pt");
  for (const auto &[tri, table] : F.coh)
    for (const auto &[ts, cell] : table) CHECK(Q.is_identity(cell));

  EnrichedCategory E2 = strict_to_enriched(P);
  CHECK(E2.objects == E.objects);
  CHECK(E2.over == E.over);
  CHECK(E2.hom == E.hom);
  CHECK(E2.comp == E.comp);
  CHECK(E2.unit == E.unit);

  // deeper truncation: construction and round trip only
  PathObject P3 = enriched_to_path(E, 3, BaseW::iso());
  CHECK(P3.functor.hf("a", "a").ob("[c(a,b),c(b,c),c(c,a)]") == "5");
  EnrichedCategory E3 = strict_to_enriched(P3);
  CHECK(E3.hom == E.hom);
  CHECK(E3.comp == E.comp);

  PathObject notCoarse;
  notCoarse.shape = interval(1);
  expect_code("ShapeMismatch", [&] { strict_to_enriched(notCoarse); });
}

TEST_CASE("a polyad over two base objects round-trips") {
  EnrichedCategory E;
  E.name = "polyad";
  E.base = quantale_bicategory({"P", "Q"}, 5);
  E.objects = {"A", "B"};
  E.over["A"] = "P";
  E.over["B"] = "Q";
  E.hom[{"A", "A"}] = "0";
  E.hom[{"B", "B"}] = "0";
  E.hom[{"A", "B"}] = "1";
  E.hom[{"B", "A"}] = "2";
  const FinCategory &H = E.base.hom("P", "P");
  auto parrow = [&](const Id &x, const Id &y) {
    return x == y ? H.id_of(x) : "ge(" + x + "," + y + ")";
  };
  for (const Id &a : E.objects)
    for (const Id &b : E.objects)
      for (const Id &c : E.objects)
        E.comp[{a, b, c}] =
            parrow(quantale_add(5, E.hom.at({b, c}), E.hom.at({a, b})),
                   E.hom.at({a, c}));
  for (const Id &a : E.objects) E.unit[a] = H.id_of("0");
  validate_enriched(E);

  PathObject P = enriched_to_path(E, 2, BaseW::iso());
  check_path_object(P);
  CHECK(P.functor.ob("A") == "P");
  CHECK(P.functor.hf("A", "A").ob("[c(A,B),c(B,A)]") == "3");
  EnrichedCategory E2 = strict_to_enriched(P);
  CHECK(E2.over == E.over);
  CHECK(E2.hom == E.hom);
  CHECK(E2.comp == E.comp);
  CHECK(E2.unit == E.unit);
}

TEST_CASE("witness images over a cyclic target match the generator oracle") {
  EnrichedCategory E = cyclic_enriched(4, 1, 3);
  PathObject P = enriched_to_path(E, 4, BaseW::iso());
  PathObjectCheck R = check_path_object(P);  // includes full colax coherence

  // oracle: a witness factors into (n - j) merges and (m - j) insertions,
  // j the number of distinct image values; each merge contributes the
  // composition cell r1, each insertion the unit cell r3.
  int witnesses = 0;
  const PathHom &H = R.paths.hom("X", "X");
  for (const auto &[st, wits] : H.witnesses) {
    const Chain &s = R.paths.chain_by_id("X", "X", st.first);
    for (const DeltaMap &u : wits) {
      int j = (int)std::set<int>(u.img.begin(), u.img.end()).size();
      int parity = ((u.dom - j) + 3 * (u.cod - j)) % 4;
      CHECK(P.functor.hf("X", "X").ar(witness_id(s, u)) ==
            "r" + std::to_string(parity));
      ++witnesses;
    }
  }
  CHECK(witnesses == 126);  // sum over n,m <= 4 of |Delta(n,m)|

  HomotopyMonoidView V = homotopy_monoid_view(P);
  CHECK(V.strict);
  CHECK(V.graded == std::vector<Id>{"I", "I", "I", "I", "I"});

  EnrichedCategory E2 = strict_to_enriched(P);
  CHECK(E2.comp == E.comp);
  CHECK(E2.unit == E.unit);

  // perturbing one binary colaxity cell breaks the composition hexagon
  PathObject Pm = P;
  Pm.functor.coh[{"X", "X", "X"}][{"[c(X,X)]", "[c(X,X)]"}] = "r1";
  expect_code("M1Violation",
              [&] { validate_colax(R.path_bicat, Pm.target, Pm.functor); });
  // perturbing the unit cell breaks the unit square
  Pm = P;
  Pm.functor.unit_coh["X"] = "r2";
  expect_code("M2Violation",
              [&] { validate_colax(R.path_bicat, Pm.target, Pm.functor); });
}

TEST_CASE("a constant colaxity structure is valid and non-strict") {
  PathObject P = constant_cyclic_path_object("r1");
  PathObjectCheck R = check_path_object(P);
  HomotopyMonoidView V = homotopy_monoid_view(P);
  CHECK_FALSE(V.strict);
  CHECK(V.unit_cell == "r1");
  for (const auto &[mn, cell] : V.mult) CHECK(cell == "r1");
  CHECK(V.mult.size() == 15);
  CHECK(V.graded.size() == 5);

  // reverting a single cell to the identity breaks the hexagon
  PathObject Pm = P;
  Pm.functor.coh[{"A", "A", "A"}][{"[@A]", "[@A]"}] = "r0";
  expect_code("M1Violation",
              [&] { validate_colax(R.path_bicat, Pm.target, Pm.functor); });

  // the all-identity structure is strict and also valid
  PathObject P0 = constant_cyclic_path_object("r0");
  check_path_object(P0);
  CHECK(homotopy_monoid_view(P0).strict);

  expect_code("BaseNotTerminal", [&] {
    homotopy_monoid_view(constant_zero_path_object(coarse({"a", "b"}), 2));
  });
}

TEST_CASE("locality rejects colaxity cells outside the base class") {
  PathObject P = constant_inf_path_object();
  expect_code("NonSegalCell", [&] { check_path_object(P); });
  PathObject P2 = P;
  P2.base = BaseW::all();
  check_path_object(P2);  // the wide class accepts the same structure
}

TEST_CASE("premorphisms between path objects") {
  EnrichedCategory E = metric_enrichment(metric3());
  PathObject P = enriched_to_path(E, 2, BaseW::iso());
  const FinCategory &Q = P.target.hom("pt", "pt");
  Path2Category PC = build_path_category(P.shape, P.maxlen);

  auto make_translation = [&](const Id &shift) {
    PathPremorphism T;
    T.name = "shift" + shift;
    T.shape_map = identity_functor(P.shape);
    for (const Id &A : P.shape.objects) T.sigma.comp1[A] = shift;
    for (const Id &A : P.shape.objects)
      for (const Id &B : P.shape.objects) {
        auto &tab = T.sigma.comp2[{A, B}];
        for (const Chain &c : PC.hom(A, B).chains) {
          Id v = P.functor.hf(A, B).ob(chain_id(c));
          tab[chain_id(c)] = Q.id_of(quantale_add(5, shift, v));
        }
      }
    return T;
  };

  CHECK(validate_premorphism(P, P, make_translation("0")));
  CHECK_FALSE(validate_premorphism(P, P, make_translation("1")));

  PathPremorphism bad = make_translation("1");
  for (auto &[ab, tab] : bad.sigma.comp2)
    for (auto &[t, cell] : tab) cell = Q.id_of("0");
  expect_code("DomainMismatch", [&] { validate_premorphism(P, P, bad); });

  PathObject deeper = enriched_to_path(E, 3, BaseW::iso());
  expect_code("TruncationExceeded", [&] {
    validate_premorphism(deeper, P, make_translation("0"));
  });

  // inclusion of a sub-shape, with the restricted structure on the source
  FinCategory S = coarse({"a", "b"});
  FinFunctor J;
  J.name = "incl";
  J.omap = {{"a", "a"}, {"b", "b"}};
  J.amap = {{"c(a,b)", "c(a,b)"}, {"c(b,a)", "c(b,a)"}};
  PathObject Pab = restrict_shape(P, S, J);
  check_path_object(Pab);
  CHECK(Pab.functor.hf("a", "b").ob("[c(a,b)]") == "1");
  Path2Category PCS = build_path_category(S, P.maxlen);
  PathPremorphism incl;
  incl.name = "include";
  incl.shape_map = J;
  for (const Id &A : S.objects) incl.sigma.comp1[A] = "0";
  for (const Id &A : S.objects)
    for (const Id &B : S.objects) {
      auto &tab = incl.sigma.comp2[{A, B}];
      for (const Chain &c : PCS.hom(A, B).chains)
        tab[chain_id(c)] = Q.id_of(Pab.functor.hf(A, B).ob(chain_id(c)));
    }
  CHECK(validate_premorphism(Pab, P, incl));
}

TEST_CASE("base change along a quantale cap") {
  EnrichedCategory E = metric_enrichment(metric3());
  PathObject P = enriched_to_path(E, 2, BaseW::iso());
  FinBicategory N = quantale_bicategory({"pt"}, 2);
  const FinCategory &Q2 = N.hom("pt", "pt");
  const FinCategory &Q5 = P.target.hom("pt", "pt");
  auto cap = [](const Id &x) {
    if (x == "inf") return Id("inf");
    return std::stol(x) > 2 ? Id("inf") : x;
  };
  auto parrow = [&](const Id &x, const Id &y) {
    return x == y ? Q2.id_of(x) : "ge(" + x + "," + y + ")";
  };
  ColaxMorphism Phi;
  Phi.name = "cap2";
  Phi.omap["pt"] = "pt";
  FinFunctor HF;
  HF.name = "cap2(pt,pt)";
  for (const Id &x : Q5.objects) HF.omap[x] = cap(x);
  for (const Arrow &a : Q5.arrows)
    HF.amap[a.id] = parrow(cap(a.src), cap(a.dst));
  Phi.hmap[{"pt", "pt"}] = HF;
  auto &table = Phi.coh[{"pt", "pt", "pt"}];
  for (const Id &x : Q5.objects)
    for (const Id &y : Q5.objects)
      table[{x, y}] = Q2.id_of(cap(quantale_add(5, x, y)));
  Phi.unit_coh["pt"] = Q2.id_of("0");

  PathObject Pc = base_change(P, N, BaseW::iso(), Phi);
  check_path_object(Pc);
  CHECK(Pc.functor.hf("a", "c").ob("[c(a,b),c(b,c)]") == "inf");  // 3 capped
  CHECK(Pc.functor.hf("a", "b").ob("[c(a,b)]") == "1");

  // a wide source class cannot land in an identities-only target class
  PathObject Pall = P;
  Pall.base = BaseW::all();
  BaseW idsOnly;
  idsOnly.kind = BaseW::Kind::Explicit;
  for (const Id &x : Q2.objects)
    idsOnly.cells[{"pt", "pt"}].insert(Q2.id_of(x));
  expect_code("WNotPreserved",
              [&] { base_change(Pall, N, idsOnly, Phi); });
}

TEST_CASE("restriction and foliation") {
  EnrichedCategory E = metric_enrichment(metric3());
  PathObject P = enriched_to_path(E, 2, BaseW::iso());
  std::vector<PathObject> leaves = foliation(P);
  CHECK(leaves.size() == 1);  // the coarse shape is connected
  CHECK(leaves[0].shape.objects == P.shape.objects);
  check_path_object(leaves[0]);
  CHECK(leaves[0].functor.hf("a", "b").ob("[c(a,b)]") == "1");

  // a discrete two-object shape splits into two one-object leaves
  FinCategory D;
  D.name = "disc2";
  D.objects = {"x", "y"};
  D.finalize();
  PathObject Pd = constant_zero_path_object(D, 2);
  check_path_object(Pd);
  std::vector<PathObject> parts = foliation(Pd);
  CHECK(parts.size() == 2);
  CHECK(parts[0].shape.objects == std::vector<Id>{"x"});
  CHECK(parts[1].shape.objects == std::vector<Id>{"y"});
  CHECK(parts[0].shape.name == "disc2#0");
  check_path_object(parts[0]);
  check_path_object(parts[1]);

  PathObject empty;
  expect_code("EmptyLeaf", [&] { foliation(empty); });
}

TEST_CASE("monoid words and block multiplication") {
  FinCategory BS = absorbing_monoid();
  SetPathMonoid Y = monoid_pathmonoid(BS, 3);
  validate_pathmonoid(Y);
  for (int k = 0; k <= 3; ++k) {
    long long expected = 1;
    for (int i = 0; i < k; ++i) expected *= 2;
    CHECK((long long)Y.levels.at(k).size() == expected);
  }
  CHECK(Y.action.at(merge_generator(1, 0)).at("w(s|e)") == "w(s)");
  CHECK(Y.action.at(merge_generator(1, 0)).at("w(e|e)") == "w(e)");
  CHECK(Y.split.at({1, 2}).at("w(e|s|s)") == IdPair{"w(e)", "w(s|s)"});
  CHECK(Y.split.at({0, 1}).at("w(s)") == IdPair{"w()", "w(s)"});

  SimplicialTruncation X = pathmonoid_to_simplicial(Y);
  CHECK(X.levels == Y.levels);
  // the three faces of a 2-simplex and the degeneracy of a 1-simplex
  CHECK(X.action.at({2, {0, 1}}).at("w(e|s)") == "w(e)");
  CHECK(X.action.at({2, {0, 2}}).at("w(e|s)") == "w(s)");
  CHECK(X.action.at({2, {1, 2}}).at("w(e|s)") == "w(s)");
  CHECK(X.action.at({1, {0, 0, 1}}).at("w(s)") == "w(e|s)");

  SetPathMonoid Y2 = simplicial_to_pathmonoid(X);
  CHECK(Y2.levels == Y.levels);
  CHECK(Y2.action == Y.action);
  CHECK(Y2.split == Y.split);
  SimplicialTruncation X2 = pathmonoid_to_simplicial(Y2);
  CHECK(X2.levels == X.levels);
  CHECK(X2.action == X.action);

  // the group case: composite faces multiply in the group
  SetPathMonoid Z = monoid_pathmonoid(testutil::cyclic_group_category(2), 3);
  SimplicialTruncation NZ = pathmonoid_to_simplicial(Z);
  CHECK(NZ.action.at({2, {0, 2}}).at("w(g1|g1)") == "w(e)");
  CHECK(NZ.levels.at(3).size() == 8);

  expect_code("ShapeMismatch",
              [&] { monoid_pathmonoid(coarse({"a", "b"}), 2); });
}

TEST_CASE("simplicial and block-splitting defects are reported") {
  SetPathMonoid Y = monoid_pathmonoid(testutil::cyclic_group_category(2), 3);

  SetPathMonoid Ym = Y;
  Ym.action.at(merge_generator(1, 0)).at("w(e|g1)") = "w(e)";
  expect_code("NonFunctorialAction", [&] { validate_pathmonoid(Ym); });

  Ym = Y;
  Ym.split.erase({1, 1});
  expect_code("NotCartesianTarget", [&] { validate_pathmonoid(Ym); });

  Ym = Y;
  Ym.split.at({0, 1}).at("w(g1)") = {"w()", "w(e)"};
  expect_code("M2Violation", [&] { validate_pathmonoid(Ym); });

  // one scrambled interior split survives the unit laws but not
  // coassociativity
  Ym = Y;
  Ym.split.at({1, 1}).at("w(e|g1)") = {"w(g1)", "w(e)"};
  expect_code("M1Violation", [&] { validate_pathmonoid(Ym); });

  // flipping every binary split at depth two is coassociative at that depth
  // but fails naturality against block sums
  SetPathMonoid flip = monoid_pathmonoid(testutil::cyclic_group_category(2), 2);
  for (auto &[x, pr] : flip.split.at({1, 1})) std::swap(pr.first, pr.second);
  expect_code("NonNaturalColaxity", [&] { validate_pathmonoid(flip); });

  SimplicialTruncation X =
      pathmonoid_to_simplicial(monoid_pathmonoid(testutil::cyclic_group_category(2), 3));
  SimplicialTruncation Xm = X;
  Xm.levels[0].push_back("ghost");
  expect_code("ShapeNotTerminal", [&] { validate_simplicial(Xm); });
  Xm = X;
  Xm.action.at({2, {0, 1}}).at("w(e|g1)") = "w(g1)";
  expect_code("NonFunctorialAction", [&] { validate_simplicial(Xm); });
  Xm = X;
  Xm.action.erase({2, {0, 1}});
  expect_code("NonFunctorialAction", [&] { validate_simplicial(Xm); });
}

TEST_CASE("cocycle data produces a transition functor and a path object") {
  FinCategory G = testutil::cyclic_group_category(3);
  std::vector<Id> pts = {"p", "q", "r"};
  std::map<Id, int> v = {{"p", 0}, {"q", 1}, {"r", 2}};
  auto g = [](int k) { return k == 0 ? Id("e") : "g" + std::to_string(k); };
  std::map<IdPair, Id> f;
  for (const Id &x : pts)
    for (const Id &y : pts) f[{x, y}] = g(((v[y] - v[x]) % 3 + 3) % 3);

  CocycleReport R = cocycle_check(pts, G, f, 3);
  CHECK(R.transition.ar("c(p,q)") == "g1");
  CHECK(R.transition.ar("c(q,p)") == "g2");
  CHECK(R.associated.functor.hf("p", "r").ob("[c(p,q),c(q,r)]") == "g2");
  CHECK(R.associated.functor.hf("p", "p").ob("[@p]") == "e");
  CHECK(R.associated.target.hom("pt", "pt").objects.size() == 3);

  auto bad = f;
  bad[{"p", "p"}] = "g1";
  expect_code("UnitViolation", [&] { cocycle_check(pts, G, bad, 3); });
  bad = f;
  bad[{"p", "r"}] = "g1";
  expect_code("CocycleViolation", [&] { cocycle_check(pts, G, bad, 3); });
  bad = f;
  bad.erase({"q", "r"});
  expect_code("UnknownObject", [&] { cocycle_check(pts, G, bad, 3); });
  expect_code("ShapeMismatch",
              [&] { cocycle_check(pts, coarse({"a", "b"}), f, 2); });
}
