// Bridges, distributors, and bimodules: collage constructions, the
// distributor correspondence, boundary conditions, and extracted actions.
#define PATHCAT_BICAT_FIXTURES
#include "test_helpers.hpp"

#include "pathcat/bridge.hpp"

#include <set>

using namespace pathcat;

namespace {

bool same_category(const FinCategory &A, const FinCategory &B) {
  if (A.objects != B.objects || A.arrows.size() != B.arrows.size())
    return false;
  for (std::size_t i = 0; i < A.arrows.size(); ++i)
    if (A.arrows[i].id != B.arrows[i].id ||
        A.arrows[i].src != B.arrows[i].src ||
        A.arrows[i].dst != B.arrows[i].dst)
      return false;
  return A.identity == B.identity && A.comp == B.comp;
}

MetricSpace metric2() {
  MetricSpace X;
  X.name = "pair";
  X.K = 5;
  X.points = {"a", "b"};
  X.d[{"a", "a"}] = "0";
  X.d[{"b", "b"}] = "0";
  X.d[{"a", "b"}] = "1";
  X.d[{"b", "a"}] = "1";
  return X;
}

MetricSpace metric1() {
  MetricSpace X;
  X.name = "point";
  X.K = 5;
  X.points = {"p"};
  X.d[{"p", "p"}] = "0";
  return X;
}

// One-object enriched category over the two-element cyclic cell group,
// with composition r<c> and unit r<u>.
EnrichedCategory cyc_enr(const Id &ob, int c, int u) {
  EnrichedCategory E;
  E.name = "cyc(" + ob + ")";
  E.base = testutil::cyclic_suspension(2);
  E.objects = {ob};
  E.over[ob] = "pt";
  E.hom[{ob, ob}] = "I";
  E.comp[{ob, ob, ob}] = "r" + std::to_string(c);
  E.unit[ob] = "r" + std::to_string(u);
  return E;
}

// Module data over a bridge total shape into the two-element cyclic cell
// group: every chain maps to the unit 1-cell and a witness between chain
// lengths n and m maps to r_{k(n+m) mod 2}.
PathObject cyclic_bridge_module(const RigidBridge &E, int maxlen, int k) {
  PathObject P;
  P.name = "psi" + std::to_string(k);
  P.shape = E.total;
  P.maxlen = maxlen;
  P.target = testutil::cyclic_suspension(2);
  P.base = BaseW::iso();
  Path2Category PC = build_path_category(E.total, maxlen);
  ColaxMorphism F;
  F.name = P.name;
  for (const Id &A : E.total.objects) F.omap[A] = "pt";
  for (const Id &A : E.total.objects)
    for (const Id &B : E.total.objects) {
      const PathHom &H = PC.hom(A, B);
      FinFunctor HF;
      HF.name = "H(" + A + "," + B + ")";
      for (const Chain &c : H.chains) HF.omap[chain_id(c)] = "I";
      for (const auto &[st, wits] : H.witnesses) {
        const Chain &s = PC.chain_by_id(A, B, st.first);
        for (const DeltaMap &u : wits)
          HF.amap[witness_id(s, u)] =
              "r" + std::to_string((k * (u.dom + u.cod)) % 2);
      }
      F.hmap[{A, B}] = HF;
    }
  for (const Id &A : E.total.objects)
    for (const Id &B : E.total.objects)
      for (const Id &C : E.total.objects) {
        auto &table = F.coh[{A, B, C}];
        for (const Chain &s : PC.hom(A, B).chains)
          for (const Chain &t : PC.hom(B, C).chains) {
            if (s.length() + t.length() > maxlen) continue;
            table[{chain_id(t), chain_id(s)}] = "r0";
          }
      }
  for (const Id &A : E.total.objects) F.unit_coh[A] = "r0";
  P.functor = F;
  return P;
}

// Module data over a shape into the capped-addition quantale on one
// object: a chain maps to the capped sum of its arrow values.
PathObject quantale_sum_path_object(const FinCategory &shape, int maxlen,
                                    const std::map<Id, long> &vals,
                                    int K = 5) {
  auto num = [&](const Chain &c) {
    long s = 0;
    for (const Id &a : c.seq) s += vals.at(a);
    return s;
  };
  auto idOf = [&](long v) {
    return v > K ? Id("inf") : Id(std::to_string(v));
  };
  auto cell = [&](long u, long v) {
    Id x = idOf(u), y = idOf(v);
    return x == y ? "id(" + x + ")" : "ge(" + x + "," + y + ")";
  };
  PathObject P;
  P.name = "sum(" + shape.name + ")";
  P.shape = shape;
  P.maxlen = maxlen;
  P.target = quantale_bicategory({"pt"}, K);
  P.base = BaseW::iso();
  Path2Category PC = build_path_category(shape, maxlen);
  ColaxMorphism F;
  F.name = P.name;
  for (const Id &A : shape.objects) F.omap[A] = "pt";
  for (const Id &A : shape.objects)
    for (const Id &B : shape.objects) {
      const PathHom &H = PC.hom(A, B);
      FinFunctor HF;
      HF.name = "sum(" + A + "," + B + ")";
      for (const Chain &c : H.chains) HF.omap[chain_id(c)] = idOf(num(c));
      for (const auto &[st, wits] : H.witnesses) {
        const Chain &s = PC.chain_by_id(A, B, st.first);
        const Chain &t = PC.chain_by_id(A, B, st.second);
        for (const DeltaMap &u : wits)
          HF.amap[witness_id(s, u)] = cell(num(s), num(t));
      }
      F.hmap[{A, B}] = HF;
    }
  for (const Id &A : shape.objects)
    for (const Id &B : shape.objects)
      for (const Id &C : shape.objects) {
        auto &table = F.coh[{A, B, C}];
        for (const Chain &s : PC.hom(A, B).chains)
          for (const Chain &t : PC.hom(B, C).chains) {
            if (s.length() + t.length() > maxlen) continue;
            table[{chain_id(t), chain_id(s)}] =
                "id(" + idOf(num(s) + num(t)) + ")";
          }
      }
  for (const Id &A : shape.objects) F.unit_coh[A] = "id(0)";
  P.functor = F;
  return P;
}

// One object, one 1-cell, cell monoid {e, s} with s absorbing: s has no
// inverse, so colaxity cells equal to s are one-way.
FinBicategory absorbing_suspension() {
  FinCategory C;
  C.name = "abs";
  C.objects = {"I"};
  C.arrows = {{"e", "I", "I"}, {"s", "I", "I"}};
  C.identity["I"] = "e";
  C.comp[{"e", "e"}] = "e";
  C.comp[{"e", "s"}] = "s";
  C.comp[{"s", "e"}] = "s";
  C.comp[{"s", "s"}] = "s";
  MonoidalCategory Mo;
  Mo.name = "abs";
  Mo.base = C;
  Mo.unit_ob = "I";
  Mo.tensor_ob[{"I", "I"}] = "I";
  for (const Id x : {"e", "s"})
    for (const Id y : {"e", "s"})
      Mo.tensor_ar[{x, y}] = (x == "s" || y == "s") ? "s" : "e";
  return suspend_monoidal(Mo);
}

// Module data into the absorbing suspension whose colaxity cell is the
// one-way cell s exactly on triples with both steps non-degenerate.
PathObject absorbing_path_object(const FinCategory &shape, int maxlen) {
  PathObject P;
  P.name = "abs(" + shape.name + ")";
  P.shape = shape;
  P.maxlen = maxlen;
  P.target = absorbing_suspension();
  P.base = BaseW::all();
  Path2Category PC = build_path_category(shape, maxlen);
  ColaxMorphism F;
  F.name = P.name;
  for (const Id &A : shape.objects) F.omap[A] = "pt";
  for (const Id &A : shape.objects)
    for (const Id &B : shape.objects) {
      const PathHom &H = PC.hom(A, B);
      FinFunctor HF;
      HF.name = "abs(" + A + "," + B + ")";
      for (const Chain &c : H.chains) HF.omap[chain_id(c)] = "I";
      for (const auto &[st, wits] : H.witnesses) {
        const Chain &s = PC.chain_by_id(A, B, st.first);
        for (const DeltaMap &u : wits) HF.amap[witness_id(s, u)] = "e";
      }
      F.hmap[{A, B}] = HF;
    }
  for (const Id &A : shape.objects)
    for (const Id &B : shape.objects)
      for (const Id &C : shape.objects) {
        auto &table = F.coh[{A, B, C}];
        Id val = (A != B && B != C) ? "s" : "e";
        for (const Chain &s : PC.hom(A, B).chains)
          for (const Chain &t : PC.hom(B, C).chains) {
            if (s.length() + t.length() > maxlen) continue;
            table[{chain_id(t), chain_id(s)}] = val;
          }
      }
  for (const Id &A : shape.objects) F.unit_coh[A] = "e";
  P.functor = F;
  return P;
}

// The fiberwise-2 distributor over the walking arrow on both sides.
Distributor fiber_distributor() {
  Distributor X;
  X.name = "X22";
  X.left = interval(1);
  X.right = interval(1);
  X.table[{"0", "0"}] = {"m"};
  X.table[{"1", "0"}] = {};
  X.table[{"0", "1"}] = {"u", "v"};
  X.table[{"1", "1"}] = {"w"};
  X.lact["le(0,1)"] = {{"w", "u"}};
  X.ract["le(0,1)"] = {{"m", "v"}};
  return X;
}

} // namespace

TEST_CASE("thin bridge of two points is the walking arrow") {
  RigidBridge E = thin_bridge(coarse({"P"}), coarse({"R"}));
  CHECK(E.total.objects == std::vector<Id>{"P", "R"});
  CHECK(E.total.arrows.size() == 3);
  REQUIRE(E.total.has_arrow("x(P,R)"));
  CHECK(E.total.hom("P", "R") == std::vector<Id>{"x(P,R)"});
  CHECK(E.total.hom("R", "P").empty());
  CHECK(E.fromC.ob("P") == "P");
  CHECK(E.fromD.ob("R") == "R");

  FinCategory I1 = interval(1);
  FinFunctor F;
  F.name = "toI";
  F.omap = {{"P", "0"}, {"R", "1"}};
  F.amap = {{"c(P,P)", "id(0)"}, {"c(R,R)", "id(1)"}, {"x(P,R)", "le(0,1)"}};
  FinFunctor filled = validate_functor(E.total, I1, F);
  CHECK(functor_is_iso(E.total, I1, filled));
}

TEST_CASE("thin bridge prefixes colliding names") {
  FinCategory C2 = coarse({"A", "B"});
  RigidBridge E = thin_bridge(C2, C2);
  CHECK(E.total.has_object("L:A"));
  CHECK(E.total.has_object("R:B"));
  CHECK(E.fromC.ob("A") == "L:A");
  CHECK(E.fromD.ob("A") == "R:A");
  CHECK(E.fromC.ar("c(A,B)") == "L:c(A,B)");
  // 4 arrows per side plus one cross arrow per object pair
  CHECK(E.total.arrows.size() == 12);
  CHECK(E.total.hom("L:A", "R:B") == std::vector<Id>{"x(L:A,R:B)"});
  CHECK(E.total.hom("R:A", "L:B").empty());
  // cross composition follows both side actions
  CHECK(E.total.compose("x(L:B,R:A)", "L:c(A,B)") == "x(L:A,R:A)");
  CHECK(E.total.compose("R:c(A,B)", "x(L:A,R:A)") == "x(L:A,R:B)");
}

TEST_CASE("bridge validation rejects structural defects") {
  RigidBridge E = thin_bridge(coarse({"P"}), coarse({"R"}));

  SUBCASE("object outside both images") {
    RigidBridge B = E;
    B.total.objects.push_back("Z");
    B.total.arrows.push_back({"id(Z)", "Z", "Z"});
    B.total.identity["Z"] = "id(Z)";
    B.total.finalize();
    testutil::expect_code("ShapeMismatch", [&] { validate_bridge(B); });
  }
  SUBCASE("arrow against the orientation") {
    RigidBridge B = E;
    B.total.arrows.push_back({"back", "R", "P"});
    B.total.comp[{"back", "x(P,R)"}] = "c(P,P)";
    B.total.comp[{"x(P,R)", "back"}] = "c(R,R)";
    B.total.finalize();
    testutil::expect_code("DomainMismatch", [&] { validate_bridge(B); });
  }
  SUBCASE("embedding not fully faithful") {
    RigidBridge B = E;
    B.total.arrows.push_back({"extra", "P", "P"});
    B.total.comp[{"extra", "extra"}] = "extra";
    B.total.comp[{"x(P,R)", "extra"}] = "x(P,R)";
    B.total.finalize();
    testutil::expect_code("IsoFailure", [&] { validate_bridge(B); });
  }
}

TEST_CASE("distributor round trips through its collage") {
  Distributor X = fiber_distributor();
  CHECK_NOTHROW(validate_distributor(X));

  RigidBridge E = bridge_of_distributor(X);
  CHECK(E.total.has_object("L:0"));
  CHECK(E.total.has_object("R:1"));
  CHECK(E.total.hom("L:0", "R:1") == std::vector<Id>{"u", "v"});
  CHECK(E.total.hom("L:1", "R:0").empty());
  // action entries become composition against the embedded sides
  CHECK(E.total.compose("w", "L:le(0,1)") == "u");
  CHECK(E.total.compose("R:le(0,1)", "m") == "v");

  Distributor X2 = distributor_of_bridge(E);
  CHECK(X2.table == X.table);
  CHECK(X2.lact == X.lact);
  CHECK(X2.ract == X.ract);
  CHECK(same_category(X2.left, X.left));
  CHECK(same_category(X2.right, X.right));

  // and the other way around, starting from a bridge
  RigidBridge T = thin_bridge(coarse({"P"}), coarse({"R"}));
  RigidBridge T2 = bridge_of_distributor(distributor_of_bridge(T));
  CHECK(same_category(T2.total, T.total));
  CHECK(T2.fromC.omap == T.fromC.omap);
  CHECK(T2.fromD.omap == T.fromD.omap);
}

TEST_CASE("distributor validation rejects defects") {
  FinCategory C2 = coarse({"A", "B"});
  FinCategory D1 = coarse({"R"});
  Distributor X;
  X.name = "X";
  X.left = C2;
  X.right = D1;
  X.table[{"A", "R"}] = {"xa"};
  X.table[{"B", "R"}] = {"xb"};
  X.lact["c(A,B)"] = {{"xb", "xa"}};
  X.lact["c(B,A)"] = {{"xa", "xb"}};
  CHECK_NOTHROW(validate_distributor(X));

  SUBCASE("missing fiber") {
    Distributor Y = X;
    Y.table.erase({"B", "R"});
    testutil::expect_code("UnknownObject", [&] { validate_distributor(Y); });
  }
  SUBCASE("element name collides with an arrow") {
    Distributor Y = X;
    Y.table[{"A", "R"}] = {"c(A,B)"};
    testutil::expect_code("DuplicateName", [&] { validate_distributor(Y); });
  }
  SUBCASE("missing action entry") {
    Distributor Y = X;
    Y.lact.erase("c(A,B)");
    testutil::expect_code("UnknownObject", [&] { validate_distributor(Y); });
  }
  SUBCASE("action lands in the wrong fiber") {
    Distributor Y = X;
    Y.lact["c(A,B)"]["xb"] = "xb";
    testutil::expect_code("DomainMismatch", [&] { validate_distributor(Y); });
  }
  SUBCASE("non-functorial left action") {
    Distributor Y = X;
    Y.table[{"A", "R"}] = {"a0", "a1"};
    Y.table[{"B", "R"}] = {"b0", "b1"};
    Y.lact["c(A,B)"] = {{"b0", "a0"}, {"b1", "a1"}};
    Y.lact["c(B,A)"] = {{"a0", "b0"}, {"a1", "b0"}};
    testutil::expect_code("NonFunctorialAction",
                          [&] { validate_distributor(Y); });
  }
  SUBCASE("actions fail to commute") {
    Distributor Y;
    Y.name = "flip";
    Y.left = C2;
    Y.right = coarse({"R", "S"});
    for (const Id a : {"A", "B"})
      for (const Id d : {"R", "S"})
        Y.table[{a, d}] = {a + d + "0", a + d + "1"};
    auto bits = [&](const Id &from, const Id &to, bool flip) {
      std::map<Id, Id> m;
      m[from + "0"] = to + (flip ? "1" : "0");
      m[from + "1"] = to + (flip ? "0" : "1");
      return m;
    };
    // left action preserves the bit in both directions
    Y.lact["c(A,B)"] = bits("BR", "AR", false);
    Y.lact["c(A,B)"].merge(bits("BS", "AS", false));
    Y.lact["c(B,A)"] = bits("AR", "BR", false);
    Y.lact["c(B,A)"].merge(bits("AS", "BS", false));
    // right action preserves the bit over B but flips it over A, which
    // stays functorial on each side yet breaks the interchange
    Y.ract["c(R,S)"] = bits("AR", "AS", true);
    Y.ract["c(R,S)"].merge(bits("BR", "BS", false));
    Y.ract["c(S,R)"] = bits("AS", "AR", true);
    Y.ract["c(S,R)"].merge(bits("BS", "BR", false));
    testutil::expect_code("ActionAssociativityViolation",
                          [&] { validate_distributor(Y); });
  }
}

TEST_CASE("bridge morphisms are rigid and the thin bridge is terminal") {
  Distributor X = fiber_distributor();
  RigidBridge E = bridge_of_distributor(X);
  RigidBridge T = thin_bridge(interval(1), interval(1));

  std::vector<FinFunctor> toThin = bridge_morphisms(E, T);
  CHECK(toThin.size() == 1);

  // no morphism can exist into E because one of its cross fibers is empty
  CHECK(bridge_morphisms(T, E).empty());

  // E is rigid: composing with the side actions pins every cross arrow
  std::vector<FinFunctor> endos = bridge_morphisms(E, E);
  REQUIRE(endos.size() == 1);
  FinFunctor idE = validate_functor(E.total, E.total,
                                    identity_functor(E.total));
  CHECK(endos[0].omap == idE.omap);
  CHECK(endos[0].amap == idE.amap);

  std::vector<FinFunctor> thinEndos = bridge_morphisms(T, T);
  CHECK(thinEndos.size() == 1);

  RigidBridge P = thin_bridge(coarse({"P"}), coarse({"R"}));
  testutil::expect_code("ShapeMismatch", [&] { bridge_morphisms(P, T); });
}

TEST_CASE("cyclic bimodule over the walking arrow") {
  RigidBridge E = thin_bridge(coarse({"P"}), coarse({"R"}));
  PathObject psi = cyclic_bridge_module(E, 3, 1);
  CHECK_NOTHROW(check_path_object(psi));

  BaseW W = BaseW::iso();
  PathObject F = enriched_to_path(cyc_enr("P", 1, 1), 3, W);
  PathObject G = enriched_to_path(cyc_enr("R", 1, 1), 3, W);
  Bimodule b = validate_bimodule(E, psi, F, G);

  BimoduleActions acts = extract_actions(b);
  REQUIRE(acts.left.size() == 1);
  REQUIRE(acts.right.size() == 1);
  CHECK(acts.left.at({"P", "P", "R"}) == "r1");
  CHECK(acts.right.at({"P", "R", "R"}) == "r1");

  SUBCASE("boundary mismatch on the source side") {
    PathObject F0 = enriched_to_path(cyc_enr("P", 0, 0), 3, W);
    try {
      validate_bimodule(E, psi, F0, G);
      FAIL_CHECK("expected BoundaryMismatch");
    } catch (const Error &e) {
      CHECK(e.code() == "BoundaryMismatch");
      CHECK(e.location() == "C");
    }
  }
  SUBCASE("boundary mismatch on the target side") {
    PathObject G0 = enriched_to_path(cyc_enr("R", 0, 0), 3, W);
    try {
      validate_bimodule(E, psi, F, G0);
      FAIL_CHECK("expected BoundaryMismatch");
    } catch (const Error &e) {
      CHECK(e.code() == "BoundaryMismatch");
      CHECK(e.location() == "D");
    }
  }
  SUBCASE("wrong shapes are refused") {
    testutil::expect_code("ShapeMismatch",
                          [&] { validate_bimodule(E, F, F, G); });
    testutil::expect_code("ShapeMismatch",
                          [&] { validate_bimodule(E, psi, G, G); });
    testutil::expect_code("ShapeMismatch",
                          [&] { validate_bimodule(E, psi, F, F); });
  }
}

TEST_CASE("bimodule morphisms restrict to identities on both boundaries") {
  RigidBridge E = thin_bridge(coarse({"P"}), coarse({"R"}));
  PathObject psi = cyclic_bridge_module(E, 3, 1);
  BaseW W = BaseW::iso();
  PathObject F = enriched_to_path(cyc_enr("P", 1, 1), 3, W);
  PathObject G = enriched_to_path(cyc_enr("R", 1, 1), 3, W);
  Bimodule b = validate_bimodule(E, psi, F, G);

  Path2Category PC = build_path_category(E.total, 3);
  ColaxTransformation tid;
  tid.name = "theta0";
  for (const Id &A : E.total.objects) tid.comp1[A] = "I";
  for (const Id &A : E.total.objects)
    for (const Id &B : E.total.objects)
      for (const Chain &c : PC.hom(A, B).chains)
        tid.comp2[{A, B}][chain_id(c)] = "r0";
  CHECK_NOTHROW(validate_bimodule_morphism(b, b, tid));

  // twisting every cross chain by the nontrivial cell is still natural and
  // additive, giving a morphism that is not the identity
  ColaxTransformation tr1 = tid;
  tr1.name = "theta1";
  for (auto &[cid, cell] : tr1.comp2[{"P", "R"}]) {
    (void)cid;
    cell = "r1";
  }
  CHECK_NOTHROW(validate_bimodule_morphism(b, b, tr1));

  // twisting a single loop chain breaks naturality under witnesses
  ColaxTransformation bad = tid;
  bad.name = "theta-bad";
  bad.comp2[{"P", "P"}]["[c(P,P)]"] = "r1";
  testutil::expect_code("TransformationAxiomViolation",
                        [&] { validate_bimodule_morphism(b, b, bad); });
}

TEST_CASE("distance bimodule between metric boundaries") {
  RigidBridge E = thin_bridge(coarse({"a", "b"}), coarse({"p"}));
  std::map<Id, long> vals = {{"c(a,a)", 0}, {"c(b,b)", 0}, {"c(p,p)", 0},
                             {"c(a,b)", 1}, {"c(b,a)", 1}, {"x(a,p)", 1},
                             {"x(b,p)", 1}};
  PathObject psi = quantale_sum_path_object(E.total, 2, vals);
  CHECK_NOTHROW(check_path_object(psi));

  BaseW W = BaseW::iso();
  PathObject F = enriched_to_path(metric_enrichment(metric2()), 2, W);
  PathObject G = enriched_to_path(metric_enrichment(metric1()), 2, W);
  Bimodule b = validate_bimodule(E, psi, F, G);

  BimoduleActions acts = extract_actions(b);
  CHECK(acts.left.size() == 4);
  CHECK(acts.right.size() == 2);
  CHECK(acts.left.at({"a", "a", "p"}) == "id(1)");
  CHECK(acts.left.at({"a", "b", "p"}) == "ge(2,1)");
  CHECK(acts.left.at({"b", "a", "p"}) == "ge(2,1)");
  CHECK(acts.right.at({"a", "p", "p"}) == "id(1)");

  SUBCASE("cross values vary freely within the weight inequalities") {
    std::map<Id, long> far = vals;
    far["x(b,p)"] = 2; // x(b,p) <= d(b,a) + x(a,p) still holds
    PathObject psi2 = quantale_sum_path_object(E.total, 2, far);
    Bimodule b2 = validate_bimodule(E, psi2, F, G);
    BimoduleActions a2 = extract_actions(b2);
    CHECK(a2.left.at({"a", "b", "p"}) == "ge(3,1)");
    CHECK(a2.left.at({"b", "a", "p"}) == "id(2)");
    CHECK(a2.left.at({"b", "b", "p"}) == "id(2)");
  }
  SUBCASE("translation fails the boundary identity requirement") {
    ColaxTransformation ts;
    ts.name = "shift";
    Path2Category PC = build_path_category(E.total, 2);
    for (const Id &A : E.total.objects) ts.comp1[A] = "1";
    for (const Id &A : E.total.objects)
      for (const Id &B : E.total.objects)
        for (const Chain &c : PC.hom(A, B).chains) {
          long v = 0;
          for (const Id &ar : c.seq) v += vals.at(ar);
          ts.comp2[{A, B}][chain_id(c)] = "id(" + std::to_string(v + 1) + ")";
        }
    try {
      validate_bimodule_morphism(b, b, ts);
      FAIL_CHECK("expected BoundaryMismatch");
    } catch (const Error &e) {
      CHECK(e.code() == "BoundaryMismatch");
      CHECK(e.location() == "C");
    }
  }
}

TEST_CASE("action extraction guards its preconditions") {
  RigidBridge E = thin_bridge(coarse({"P"}), coarse({"R"}));
  BaseW W = BaseW::iso();
  PathObject F = enriched_to_path(cyc_enr("P", 1, 1), 3, W);
  PathObject G = enriched_to_path(cyc_enr("R", 1, 1), 3, W);

  SUBCASE("cross homs must be thin") {
    Bimodule fake;
    fake.shape = bridge_of_distributor(fiber_distributor());
    testutil::expect_code("ShapeMismatch", [&] { extract_actions(fake); });
  }
  SUBCASE("side homs must be thin") {
    FinCategory par;
    par.name = "par";
    par.objects = {"A", "B"};
    par.arrows = {{"f", "A", "B"}, {"g", "A", "B"}};
    par.finalize();
    Bimodule fake;
    fake.shape = thin_bridge(par, coarse({"R"}));
    testutil::expect_code("ShapeMismatch", [&] { extract_actions(fake); });
  }
  SUBCASE("binary composites must fit the truncation") {
    PathObject psi1 = cyclic_bridge_module(E, 1, 1);
    PathObject F1 = enriched_to_path(cyc_enr("P", 1, 1), 1, W);
    PathObject G1 = enriched_to_path(cyc_enr("R", 1, 1), 1, W);
    Bimodule b1 = validate_bimodule(E, psi1, F1, G1);
    testutil::expect_code("TruncationExceeded",
                          [&] { extract_actions(b1); });
  }
  SUBCASE("mismatched module data fails the mixed associativity square") {
    Bimodule fake;
    fake.shape = E;
    fake.psi = cyclic_bridge_module(E, 3, 0);
    fake.leftPoint = F;
    fake.rightPoint = G;
    testutil::expect_code("ActionAssociativityViolation",
                          [&] { extract_actions(fake); });
  }
}

TEST_CASE("one-way colax bimodule over the absorbing cell monoid") {
  RigidBridge E = thin_bridge(coarse({"a", "b"}), coarse({"p"}));
  PathObject psi = absorbing_path_object(E.total, 2);
  CHECK_NOTHROW(check_path_object(psi));

  PathObject F = absorbing_path_object(E.left, 2);
  PathObject G = absorbing_path_object(E.right, 2);
  Bimodule b = validate_bimodule(E, psi, F, G);

  // the colaxity cell on a genuine two-step composite is one-way, so no
  // action can be extracted
  testutil::expect_code("NonInvertibleColaxity", [&] { extract_actions(b); });

  // against the invertible base the same data fails the locality check
  PathObject strictPsi = psi;
  strictPsi.base = BaseW::iso();
  testutil::expect_code("NonSegalCell",
                        [&] { validate_bimodule(E, strictPsi, F, G); });
}
