// Localization: span-calculus flags, fraction and preorder localizations
// verified against exhaustively enumerated functor targets, currying off a
// binary product, the product-localization law checked by two independent
// routes, hom-wise localization of bicategories with thinness/endpoint
// oracles, and reduction of coherent points.
#define PATHCAT_BICAT_FIXTURES
#include "test_helpers.hpp"

#include "pathcat/localize.hpp"

#include <algorithm>
#include <set>
#include <string>
#include <vector>

using namespace pathcat;
using testutil::expect_code;

namespace {

std::set<Id> identity_class(const FinCategory& C) {
    std::set<Id> S;
    for (const Id& A : C.objects) S.insert(C.id_of(A));
    return S;
}

std::set<Id> every_arrow(const FinCategory& C) {
    std::set<Id> S;
    for (const Arrow& a : C.arrows) S.insert(a.id);
    return S;
}

// a -> b <- c with no zig-zag-free relation between a and c.
FinCategory disjoint_cospan() {
    FinCategory C;
    C.name = "cospan";
    C.objects = {"a", "b", "c"};
    C.arrows = {{"ab", "a", "b"}, {"cb", "c", "b"}};
    C.finalize();
    validate_category(C);
    return C;
}

// Parallel pair f,g : A -> B merged by s : B -> C (s.f = s.g = h).
FinCategory parallel_merger() {
    FinCategory C;
    C.name = "merger";
    C.objects = {"A", "B", "C"};
    C.arrows = {{"f", "A", "B"}, {"g", "A", "B"}, {"s", "B", "C"}, {"h", "A", "C"}};
    C.comp[{"s", "f"}] = "h";
    C.comp[{"s", "g"}] = "h";
    C.finalize();
    validate_category(C);
    return C;
}

// The poset a,b < x,y: four covering arrows, no other comparabilities. Its
// zig-zag localization at everything has a nontrivial loop, so the thin
// preorder closure is provably NOT its localization.
FinCategory bowtie() {
    FinCategory C;
    C.name = "bowtie";
    C.objects = {"a", "b", "x", "y"};
    C.arrows = {{"ax", "a", "x"}, {"ay", "a", "y"}, {"bx", "b", "x"}, {"by", "b", "y"}};
    C.finalize();
    validate_category(C);
    return C;
}

// a0 -> a1 -> a2 with the composite filled in.
FinCategory chain_hom() {
    FinCategory H;
    H.name = "chainhom";
    H.objects = {"a0", "a1", "a2"};
    H.arrows = {{"m01", "a0", "a1"}, {"m12", "a1", "a2"}, {"m02", "a0", "a2"}};
    H.comp[{"m12", "m01"}] = "m02";
    H.finalize();
    validate_category(H);
    return H;
}

// Two objects u, v with trivial endo-homs, the given category as hom(u,v),
// and strictly unital horizontal composition (units act as projections).
FinBicategory two_object_bicat(const FinCategory& huv) {
    FinBicategory M;
    M.name = "two(" + huv.name + ")";
    M.objects = {"u", "v"};
    FinCategory eu;
    eu.name = "end(u)";
    eu.objects = {"Iu"};
    eu.finalize();
    FinCategory ev;
    ev.name = "end(v)";
    ev.objects = {"Iv"};
    ev.finalize();
    FinCategory none;
    none.name = "empty(v,u)";
    M.homs[{"u", "u"}] = eu;
    M.homs[{"v", "v"}] = ev;
    M.homs[{"u", "v"}] = huv;
    M.homs[{"v", "u"}] = none;
    M.unit = {{"u", "Iu"}, {"v", "Iv"}};
    auto unit_table = [](const Id& I) {
        FinBicategory::Tensor T;
        T.ob[{I, I}] = I;
        T.ar[{"id(" + I + ")", "id(" + I + ")"}] = "id(" + I + ")";
        return T;
    };
    M.comp[{"u", "u", "u"}] = unit_table("Iu");
    M.comp[{"v", "v", "v"}] = unit_table("Iv");
    FinBicategory::Tensor right;  // hom(u,v) after end(u): (t, Iu) -> t
    FinBicategory::Tensor left;   // end(v) after hom(u,v): (Iv, t) -> t
    for (const Id& t : huv.objects) {
        right.ob[{t, "Iu"}] = t;
        left.ob[{"Iv", t}] = t;
    }
    for (const Arrow& c : huv.arrows) {
        right.ar[{c.id, "id(Iu)"}] = c.id;
        left.ar[{"id(Iv)", c.id}] = c.id;
    }
    M.comp[{"u", "u", "v"}] = right;
    M.comp[{"u", "v", "v"}] = left;
    validate_bicategory(M);
    return M;
}

// The two-element absorbing monoid {e, s} (s.s = s) as a one-object
// bicategory; s is not invertible.
FinBicategory absorbing_suspension() {
    FinCategory P;
    P.name = "absorb";
    P.objects = {"cell"};
    P.arrows = {{"e", "cell", "cell"}, {"s", "cell", "cell"}};
    P.identity["cell"] = "e";
    P.comp[{"e", "e"}] = "e";
    P.comp[{"e", "s"}] = "s";
    P.comp[{"s", "e"}] = "s";
    P.comp[{"s", "s"}] = "s";
    MonoidalCategory Mo;
    Mo.name = "absmon";
    Mo.base = P;
    Mo.unit_ob = "cell";
    Mo.tensor_ob[{"cell", "cell"}] = "cell";
    Mo.tensor_ar[{"e", "e"}] = "e";
    Mo.tensor_ar[{"e", "s"}] = "s";
    Mo.tensor_ar[{"s", "e"}] = "s";
    Mo.tensor_ar[{"s", "s"}] = "s";
    return suspend_monoidal(Mo);
}

// A weak point over a two-object codiscrete shape whose binary colaxity
// cells at genuine corners are the non-invertible element s. The colax
// axioms hold (in the truncation every length-3 stack has an empty chain),
// but no cell s lies in the invertible class.
PathObject absorbing_point(int maxlen) {
    PathObject P;
    P.name = "abspt";
    P.shape = coarse({"p", "q"});
    P.maxlen = maxlen;
    P.target = absorbing_suspension();
    P.base = BaseW::iso();
    Path2Category PC = build_path_category(P.shape, maxlen);
    ColaxMorphism F;
    F.name = "absF";
    for (const Id& A : P.shape.objects) F.omap[A] = "pt";
    for (const Id& A : P.shape.objects)
        for (const Id& B : P.shape.objects) {
            FinCategory H = hom_category(PC, A, B);
            FinFunctor G;
            G.name = "G(" + A + "," + B + ")";
            for (const Id& c : H.objects) G.omap[c] = "cell";
            for (const Arrow& w : H.arrows) G.amap[w.id] = "e";
            F.hmap[{A, B}] = G;
        }
    for (const Id& A : P.shape.objects)
        for (const Id& B : P.shape.objects)
            for (const Id& Co : P.shape.objects)
                for (const Chain& t : PC.hom(B, Co).chains)
                    for (const Chain& s : PC.hom(A, B).chains) {
                        if (t.length() + s.length() > maxlen) continue;
                        F.coh[{A, B, Co}][{chain_id(t), chain_id(s)}] =
                            (A != B && B != Co) ? "s" : "e";
                    }
    for (const Id& A : P.shape.objects) F.unit_coh[A] = "e";
    P.functor = F;
    return P;
}

MetricSpace two_point_metric() {
    MetricSpace X;
    X.name = "X2";
    X.K = 3;
    X.points = {"a", "b"};
    X.d[{"a", "a"}] = "0";
    X.d[{"b", "b"}] = "0";
    X.d[{"a", "b"}] = "1";
    X.d[{"b", "a"}] = "1";
    return X;
}

}  // namespace

TEST_CASE("span calculus flags are computed exhaustively") {
    FinCategory I2 = interval(2);

    SUBCASE("the identity class passes all four checks") {
        FractionSystem sys = check_fractions(I2, identity_class(I2));
        CHECK(sys.identities_ok);
        CHECK(sys.closure_ok);
        CHECK(sys.ore_ok);
        CHECK(sys.cancel_ok);
        CHECK(sys.all_ok());
    }

    SUBCASE("the full arrow class of a chain passes") {
        CHECK(check_fractions(I2, every_arrow(I2)).all_ok());
    }

    SUBCASE("a class missing the identities is flagged") {
        FractionSystem sys = check_fractions(I2, {"le(0,1)"});
        CHECK(!sys.identities_ok);
    }

    SUBCASE("a class not closed under composition is flagged") {
        std::set<Id> S = identity_class(I2);
        S.insert("le(0,1)");
        S.insert("le(1,2)");
        FractionSystem sys = check_fractions(I2, S);
        CHECK(sys.identities_ok);
        CHECK(!sys.closure_ok);
    }

    SUBCASE("a cospan with no completing square is flagged") {
        FinCategory C = disjoint_cospan();
        std::set<Id> S = identity_class(C);
        S.insert("cb");
        FractionSystem sys = check_fractions(C, S);
        CHECK(sys.identities_ok);
        CHECK(sys.closure_ok);
        CHECK(!sys.ore_ok);
        CHECK(sys.cancel_ok);
    }

    SUBCASE("arrows merged only after the class are flagged") {
        FinCategory C = parallel_merger();
        std::set<Id> S = identity_class(C);
        S.insert("s");
        FractionSystem sys = check_fractions(C, S);
        CHECK(sys.identities_ok);
        CHECK(sys.closure_ok);
        CHECK(sys.ore_ok);
        CHECK(!sys.cancel_ok);
    }

    SUBCASE("arrows outside the category are rejected") {
        expect_code("UnknownObject", [&] { check_fractions(I2, {"nope"}); });
    }
}

TEST_CASE("localizing at the identity class returns the category unchanged") {
    FinCategory C = interval(2);
    std::set<Id> S = identity_class(C);
    LocalizedCategory loc = localize_fractions(check_fractions(C, S));
    CHECK(!loc.posetal_path);
    CHECK(loc.cat.arrows.size() == C.arrows.size());
    CHECK(functor_is_iso(C, loc.cat, loc.L));
    // all 4 + 4 functors to the two targets factor uniquely
    int n = verify_universal_property(
        C, S, loc, {interval(1), testutil::cyclic_group_category(2)});
    CHECK(n == 8);
}

TEST_CASE("inverting the walking arrow identifies its endpoints") {
    FinCategory C = interval(1);
    std::set<Id> S = every_arrow(C);
    FractionSystem sys = check_fractions(C, S);
    CHECK(sys.all_ok());
    LocalizedCategory loc = localize_fractions(sys);
    CHECK(!loc.posetal_path);
    for (const Id& A : C.objects)
        for (const Id& B : C.objects) CHECK(loc.cat.hom(A, B).size() == 1);
    CHECK(inverse_of(loc.cat, loc.L.ar("le(0,1)")).has_value());

    // generic isomorphism onto the independently built codiscrete category
    FinCategory E = coarse({"0", "1"});
    FinFunctor J;
    J.name = "J";
    for (const Id& A : loc.cat.objects) J.omap[A] = A;
    for (const Arrow& a : loc.cat.arrows)
        J.amap[a.id] = E.hom(a.src, a.dst).front();
    CHECK(functor_is_iso(loc.cat, E, J));

    // the backward arrow is the class of the span with the inverted leg
    Id back = loc.cat.hom("1", "0").front();
    const std::vector<IdPair>& mem = loc.classes.at(back);
    CHECK(std::find(mem.begin(), mem.end(), IdPair{"le(0,1)", "id(0)"}) != mem.end());

    // 2 functors invert the arrow in each target; each factors once
    int n = verify_universal_property(
        C, S, loc, {interval(1), testutil::cyclic_group_category(2)});
    CHECK(n == 4);
}

TEST_CASE("inverting the top segment of a chain merges the top objects") {
    FinCategory C = interval(2);
    std::set<Id> S = identity_class(C);
    S.insert("le(1,2)");
    FractionSystem sys = check_fractions(C, S);
    CHECK(sys.all_ok());
    LocalizedCategory loc = localize_fractions(sys);
    CHECK(!loc.posetal_path);
    auto count = [&](const char* a, const char* b) {
        return loc.cat.hom(a, b).size();
    };
    CHECK(count("0", "0") == 1);
    CHECK(count("0", "1") == 1);
    CHECK(count("0", "2") == 1);
    CHECK(count("1", "0") == 0);
    CHECK(count("1", "1") == 1);
    CHECK(count("1", "2") == 1);
    CHECK(count("2", "0") == 0);
    CHECK(count("2", "1") == 1);
    CHECK(count("2", "2") == 1);
    CHECK(inverse_of(loc.cat, loc.L.ar("le(1,2)")).has_value());
    CHECK(!inverse_of(loc.cat, loc.L.ar("le(0,1)")).has_value());
    Id back = loc.cat.hom("2", "1").front();
    const std::vector<IdPair>& mem = loc.classes.at(back);
    CHECK(std::find(mem.begin(), mem.end(), IdPair{"le(1,2)", "id(1)"}) != mem.end());

    // 3 + 6 + 4 inverting functors across the three targets
    int n = verify_universal_property(
        C, S, loc, {interval(1), interval(2), testutil::cyclic_group_category(2)});
    CHECK(n == 13);
}

TEST_CASE("flags asserted without evidence surface as missing squares") {
    FinCategory C = disjoint_cospan();
    FractionSystem sys;
    sys.C = C;
    sys.S = identity_class(C);
    sys.S.insert("cb");
    sys.identities_ok = sys.closure_ok = sys.ore_ok = sys.cancel_ok = true;
    expect_code("OreViolation", [&] { localize_fractions(sys); });
}

TEST_CASE("localizations needing unbounded saturation are refused") {
    SUBCASE("failing checks on a category that is not posetal") {
        FinCategory C = parallel_merger();
        std::set<Id> S = identity_class(C);
        S.insert("s");
        FractionSystem sys = check_fractions(C, S);
        CHECK(!sys.all_ok());
        expect_code("SaturationBoundExceeded", [&] { localize_fractions(sys); });
    }
    SUBCASE("the per-hom span budget") {
        FinCategory C = interval(1);
        FractionSystem sys = check_fractions(C, every_arrow(C));
        sys.bound = 1;
        expect_code("SaturationBoundExceeded", [&] { localize_fractions(sys); });
    }
}

TEST_CASE("posetal categories localize through the generated preorder") {
    FinCategory C = disjoint_cospan();
    std::set<Id> S = identity_class(C);
    S.insert("cb");
    FractionSystem sys = check_fractions(C, S);
    CHECK(!sys.ore_ok);
    LocalizedCategory loc = localize_fractions(sys);
    CHECK(loc.posetal_path);
    CHECK(loc.cat.arrows.size() == 7);
    CHECK(loc.cat.hom("a", "c").size() == 1);
    CHECK(loc.cat.hom("b", "a").empty());
    CHECK(loc.cat.hom("c", "a").empty());
    // the recorded zig-zag: forward along ab, then backward along cb
    std::vector<std::pair<Id, bool>> expected = {{"ab", false}, {"cb", true}};
    CHECK(loc.words.at("zig(a,c)") == expected);
    CHECK(inverse_of(loc.cat, loc.L.ar("cb")).has_value());

    // 3 monotone and 4 group-valued inverting functors factor uniquely
    int n = verify_universal_property(
        C, S, loc, {interval(1), testutil::cyclic_group_category(2)});
    CHECK(n == 7);
}

TEST_CASE("the preorder route is only as strong as its universal property") {
    // The bowtie's genuine localization at everything has a nontrivial
    // fundamental loop; the thin closure cannot represent the functor that
    // sends the loop to the nonidentity group element, and the verifier
    // must say so rather than accept the thin answer.
    FinCategory B = bowtie();
    std::set<Id> S = every_arrow(B);
    LocalizedCategory loc = localize_fractions(check_fractions(B, S));
    CHECK(loc.posetal_path);
    CHECK(loc.cat.arrows.size() == 16);
    expect_code("FactorizationMissing", [&] {
        verify_universal_property(B, S, loc, {testutil::cyclic_group_category(2)});
    });
}

TEST_CASE("currying off a binary product and back") {
    FinCategory A = interval(1), B = interval(1), E = interval(1);
    FinCategory AxB = derive(DeriveKind::Product, A, &B);

    SUBCASE("the first projection curries to constant partials") {
        FinFunctor F;
        F.name = "pr1";
        for (const Id& a : A.objects)
            for (const Id& b : B.objects) F.omap[pair_id(a, b)] = a;
        for (const Arrow& f : A.arrows)
            for (const Arrow& g : B.arrows) F.amap[pair_id(f.id, g.id)] = f.id;
        CurriedFunctor G = curry_adjunction(A, B, E, F);
        CHECK(G.at.at("0").ob("1") == "0");
        CHECK(G.at.at("0").ar("le(0,1)") == "id(0)");
        CHECK(G.at.at("1").ar("le(0,1)") == "id(1)");
        CHECK(G.arrow.at("le(0,1)").components.at("0") == "le(0,1)");
        CHECK(G.arrow.at("le(0,1)").components.at("1") == "le(0,1)");
    }

    SUBCASE("the meet functor round-trips and its squares commute") {
        auto val = [](const Id& ob) { return ob == "1" ? 1 : 0; };
        auto arr = [&](int i, int j) -> Id {
            return i == j ? E.id_of(std::to_string(i)) : Id("le(0,1)");
        };
        FinFunctor F;
        F.name = "meet";
        for (const Id& a : A.objects)
            for (const Id& b : B.objects)
                F.omap[pair_id(a, b)] = std::to_string(std::min(val(a), val(b)));
        for (const Arrow& f : A.arrows)
            for (const Arrow& g : B.arrows)
                F.amap[pair_id(f.id, g.id)] = arr(std::min(val(f.src), val(g.src)),
                                                  std::min(val(f.dst), val(g.dst)));
        F = validate_functor(AxB, E, F);
        CurriedFunctor G = curry_adjunction(A, B, E, F);
        FinFunctor U = uncurry(A, B, E, G);
        CHECK(functor_equal(AxB, U, F));
        // both naturality-square diagonals recompute the original images
        for (const Arrow& h : A.arrows)
            for (const Arrow& f : B.arrows) {
                Id upper = E.compose(G.arrow.at(h.id).components.at(f.dst),
                                     G.at.at(h.src).ar(f.id));
                Id lower = E.compose(G.at.at(h.dst).ar(f.id),
                                     G.arrow.at(h.id).components.at(f.src));
                CHECK(upper == F.ar(pair_id(h.id, f.id)));
                CHECK(lower == F.ar(pair_id(h.id, f.id)));
            }
    }
}

TEST_CASE("componentwise localization of a product is a localization") {
    FinCategory C = interval(1), D = interval(1);
    std::set<Id> S = every_arrow(C), T = every_arrow(D);
    ProductLocalizationReport rep = product_localization_check(
        C, S, D, T, {interval(1), testutil::cyclic_group_category(2)});
    // 2 collapsing functors to the chain, 8 to the group
    CHECK(rep.functors_checked == 10);
    // 2x2 inverting pairs for each of the two targets
    CHECK(rep.pairs_checked == 8);
    CHECK(!rep.scope.empty());

    // independent route: localize the product directly and compare shape
    FinCategory CxD = derive(DeriveKind::Product, C, &D);
    FractionSystem sysP = check_fractions(CxD, every_arrow(CxD));
    CHECK(sysP.all_ok());
    LocalizedCategory locP = localize_fractions(sysP);
    for (const Id& X : CxD.objects)
        for (const Id& Y : CxD.objects) CHECK(locP.cat.hom(X, Y).size() == 1);
}

TEST_CASE("identity classes verify the product law on all functors") {
    FinCategory C = interval(1), D = interval(1);
    ProductLocalizationReport rep = product_localization_check(
        C, identity_class(C), D, identity_class(D),
        {interval(1), testutil::cyclic_group_category(2)});
    // 6 monotone square images + 8 group-valued functors
    CHECK(rep.functors_checked == 14);
    // 3x3 monotone pairs + 2x2 group pairs
    CHECK(rep.pairs_checked == 13);
}

TEST_CASE("a factor failing its universal property fails the product law") {
    FinCategory B = bowtie(), P = interval(0);
    expect_code("FactorizationMissing", [&] {
        product_localization_check(B, every_arrow(B), P, identity_class(P),
                                   {testutil::cyclic_group_category(2)});
    });
}

TEST_CASE("identity arrows must belong to both product classes") {
    FinCategory C = interval(1), D = interval(1);
    expect_code("OreViolation", [&] {
        product_localization_check(C, {"le(0,1)"}, D, identity_class(D), {});
    });
}

TEST_CASE("hom-wise localization at the invertible class is an isomorphism") {
    FinBicategory M = testutil::cyclic_suspension(2);
    SecondaryLocalization sec = secondary_localization(M, BaseW::iso());
    const FinCategory& LH = sec.locM.hom("pt", "pt");
    CHECK(LH.arrows.size() == 2);
    const LocalizedCategory& lc = sec.homs.at({"pt", "pt"});
    CHECK(!lc.posetal_path);
    CHECK(functor_is_iso(M.hom("pt", "pt"), LH, lc.L));
    // representatives: the identity class and the class of the twist
    CHECK(lc.L.ar("r0") == "frac(r0;r0)");
    CHECK(lc.L.ar("r1") == "frac(r0;r1)");
    // horizontal composition transports cell by cell
    for (const Id& a : {Id("r0"), Id("r1")})
        for (const Id& b : {Id("r0"), Id("r1")})
            CHECK(sec.locM.tensor_ar("pt", "pt", "pt", lc.L.ar(a), lc.L.ar(b)) ==
                  lc.L.ar(M.tensor_ar("pt", "pt", "pt", a, b)));
    // the group law survives: the twist squares to the identity
    CHECK(LH.compose(lc.L.ar("r1"), lc.L.ar("r1")) == LH.id_of("I"));
}

TEST_CASE("a quantale hom localized at everything becomes codiscrete") {
    const int K = 2;
    FinBicategory M = quantale_bicategory({"pt"}, K);
    SecondaryLocalization sec = secondary_localization(M, BaseW::all());
    const FinCategory& lh = sec.locM.hom("pt", "pt");
    const FinCategory& orig = M.hom("pt", "pt");

    // independent oracle: the equivalence closure of the thin hom graph has
    // one component, so every hom set of the localization must be a point
    std::map<Id, Id> parent;
    for (const Id& o : orig.objects) parent[o] = o;
    std::function<Id(Id)> find = [&](Id x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    for (const Arrow& a : orig.arrows) parent[find(a.src)] = find(a.dst);
    std::set<Id> roots;
    for (const Id& o : orig.objects) roots.insert(find(o));
    CHECK(roots.size() == 1);

    CHECK(!sec.homs.at({"pt", "pt"}).posetal_path);
    for (const Id& x : orig.objects)
        for (const Id& y : orig.objects) CHECK(lh.hom(x, y).size() == 1);

    // endpoint oracle: thinness forces the induced horizontal composite of
    // any two cells to be the unique arrow between the tensored endpoints
    for (const Arrow& x : lh.arrows)
        for (const Arrow& y : lh.arrows) {
            Id z = sec.locM.tensor_ar("pt", "pt", "pt", x.id, y.id);
            CHECK(lh.arrow(z).src == quantale_add(K, x.src, y.src));
            CHECK(lh.arrow(z).dst == quantale_add(K, x.dst, y.dst));
        }

    // every original cell is invertible after localization
    const FinFunctor& L = sec.homs.at({"pt", "pt"}).L;
    for (const Arrow& a : orig.arrows)
        CHECK(inverse_of(lh, L.ar(a.id)).has_value());
}

TEST_CASE("induced composition survives a base with a collapsed segment") {
    FinCategory huv = chain_hom();
    FinBicategory M = two_object_bicat(huv);
    BaseW W;
    W.kind = BaseW::Kind::Explicit;
    W.cells[{"u", "u"}] = {"id(Iu)"};
    W.cells[{"v", "v"}] = {"id(Iv)"};
    W.cells[{"u", "v"}] = {"id(a0)", "id(a1)", "id(a2)", "m12"};
    SecondaryLocalization sec = secondary_localization(M, W);
    const FinCategory& lh = sec.locM.hom("u", "v");
    CHECK(lh.arrows.size() == 7);
    CHECK(lh.hom("a1", "a2").size() == 1);
    CHECK(lh.hom("a2", "a1").size() == 1);
    CHECK(lh.hom("a1", "a0").empty());
    const FinFunctor& Luv = sec.homs.at({"u", "v"}).L;
    auto inv = inverse_of(lh, Luv.ar("m12"));
    REQUIRE(inv.has_value());
    // the forced fraction identity: m01 = m12^-1 . m02 after localization
    CHECK(lh.compose(*inv, Luv.ar("m02")) == Luv.ar("m01"));
    // units still act strictly on every localized cell
    for (const Arrow& c : lh.arrows) {
        CHECK(sec.locM.tensor_ar("u", "u", "v", c.id,
                                 sec.locM.id2("u", "u", "Iu")) == c.id);
        CHECK(sec.locM.tensor_ar("u", "v", "v", sec.locM.id2("v", "v", "Iv"),
                                 c.id) == c.id);
    }
    // the canonical morphism is strict: objects and 1-cells unchanged
    CHECK(sec.L.ob("u") == "u");
    CHECK(sec.L.hf("u", "v").ob("a1") == "a1");
}

TEST_CASE("homs outside both calculi are rejected hom by hom") {
    FinBicategory M = two_object_bicat(parallel_merger());
    expect_code("HomNotLocalizable", [&] {
        secondary_localization(M, BaseW::all());
    });
}

TEST_CASE("a horizontally unclosed cell class is rejected up front") {
    FinBicategory M = quantale_bicategory({"pt"}, 2);
    BaseW W;
    W.kind = BaseW::Kind::Explicit;
    W.cells[{"pt", "pt"}] = {"id(0)", "id(1)", "id(2)", "id(inf)", "ge(1,0)"};
    expect_code("HorizontalClosureViolation", [&] {
        secondary_localization(M, W);
    });
}

TEST_CASE("reducing a coherent point inverts every coherence cell") {
    MetricSpace X = two_point_metric();
    EnrichedCategory E = metric_enrichment(X);
    PathObject P = enriched_to_path(E, 2, BaseW::all());

    // the realization over a strict base is strict, so the non-invertible
    // content sits in the witness images: some merge witness lands on a
    // genuinely non-invertible triangle cell
    const FinCategory& PH = P.target.hom("pt", "pt");
    bool any_noninvertible = false;
    for (const auto& hf : P.functor.hmap)
        for (const auto& im : hf.second.amap)
            if (!inverse_of(PH, im.second).has_value()) any_noninvertible = true;
    CHECK(any_noninvertible);

    PathObject R = reduce_point(P);
    CHECK(R.base.kind == BaseW::Kind::Iso);
    CHECK(R.maxlen == P.maxlen);
    CHECK(R.shape.objects == P.shape.objects);
    // quantale objects 0..3 and inf, all merged into one component
    const FinCategory& RH = R.target.hom("pt", "pt");
    CHECK(RH.arrows.size() == 25);
    for (const auto& tri : R.functor.coh)
        for (const auto& cell : tri.second)
            CHECK(inverse_of(RH, cell.second).has_value());
    for (const auto& uc : R.functor.unit_coh)
        CHECK(inverse_of(RH, uc.second).has_value());
    // and every witness image has become invertible too
    for (const auto& hf : R.functor.hmap)
        for (const auto& im : hf.second.amap)
            CHECK(inverse_of(RH, im.second).has_value());
}

TEST_CASE("an already strict point reduces to an isomorphic presentation") {
    MetricSpace X;
    X.name = "Z0";
    X.K = 2;
    X.points = {"p", "q"};
    for (const Id& a : X.points)
        for (const Id& b : X.points) X.d[{a, b}] = "0";
    EnrichedCategory E = metric_enrichment(X);
    PathObject P = enriched_to_path(E, 2, BaseW::iso());
    PathObject R = reduce_point(P);
    // localizing at the invertible cells leaves the quantale hom intact
    CHECK(R.target.hom("pt", "pt").arrows.size() ==
          P.target.hom("pt", "pt").arrows.size());
    SecondaryLocalization sec = secondary_localization(P.target, BaseW::iso());
    CHECK(functor_is_iso(P.target.hom("pt", "pt"), sec.locM.hom("pt", "pt"),
                         sec.homs.at({"pt", "pt"}).L));
}

TEST_CASE("points with non-invertible coherence are rejected before reduction") {
    PathObject P = absorbing_point(2);
    expect_code("NonSegalCell", [&] { reduce_point(P); });
}
