#include "pathcat/bicat.hpp"

#include <algorithm>

namespace pathcat {

namespace {
std::vector<Id> sorted(std::vector<Id> v) {
  std::sort(v.begin(), v.end());
  return v;
}
std::string trip(const Id &a, const Id &b, const Id &c) {
  return "(" + a + "," + b + "," + c + ")";
}
} // namespace

const FinCategory &FinBicategory::hom(const Id &U, const Id &V) const {
  return map_at(homs, IdPair{U, V}, "UnknownObject",
                "hom(" + U + "," + V + ")");
}

FinCategory &FinBicategory::hom_mut(const Id &U, const Id &V) {
  return homs[{U, V}];
}

Id FinBicategory::unit_of(const Id &U) const {
  return map_at(unit, U, "UnknownObject", U);
}

bool FinBicategory::has_ob(const Id &U, const Id &V, const Id &W, const Id &t,
                           const Id &s) const {
  auto it = comp.find(IdTriple{U, V, W});
  return it != comp.end() && it->second.ob.count({t, s});
}

Id FinBicategory::tensor_ob(const Id &U, const Id &V, const Id &W, const Id &t,
                            const Id &s) const {
  auto it = comp.find(IdTriple{U, V, W});
  if (it == comp.end() || !it->second.ob.count({t, s})) {
    if (truncated)
      throw Error("TruncationExceeded", "(" + t + "," + s + ")");
    throw Error("MissingComposite", "(" + t + "," + s + ")");
  }
  return it->second.ob.at({t, s});
}

Id FinBicategory::tensor_ar(const Id &U, const Id &V, const Id &W,
                            const Id &beta, const Id &alpha) const {
  auto it = comp.find(IdTriple{U, V, W});
  if (it == comp.end() || !it->second.ar.count({beta, alpha})) {
    if (truncated)
      throw Error("TruncationExceeded", "(" + beta + "," + alpha + ")");
    throw Error("MissingComposite", "(" + beta + "," + alpha + ")");
  }
  return it->second.ar.at({beta, alpha});
}

Id FinBicategory::assoc_cell(const Id &U, const Id &V, const Id &W, const Id &X,
                             const Id &h, const Id &g, const Id &f) const {
  auto it = assoc.find(IdQuad{U, V, W, X});
  if (it != assoc.end()) {
    auto jt = it->second.find(IdTriple{h, g, f});
    if (jt != it->second.end()) return jt->second;
  }
  // identity default: both bracketings must agree
  Id left = tensor_ob(U, W, X, h, tensor_ob(U, V, W, g, f));
  // and the left-nested one:
  Id l2 = tensor_ob(U, V, X, tensor_ob(V, W, X, h, g), f);
  if (left != l2)
    throw Error("DomainMismatch", "a" + trip(h, g, f),
                "no associator between distinct bracketings");
  return hom(U, X).id_of(l2);
}

Id FinBicategory::lunit_cell(const Id &U, const Id &V, const Id &f) const {
  auto it = lunit.find(IdPair{U, V});
  if (it != lunit.end()) {
    auto jt = it->second.find(f);
    if (jt != it->second.end()) return jt->second;
  }
  Id src = tensor_ob(U, V, V, unit_of(V), f);
  if (src != f)
    throw Error("DomainMismatch", "l(" + f + ")",
                "no left unitor with unequal endpoints");
  return hom(U, V).id_of(f);
}

Id FinBicategory::runit_cell(const Id &U, const Id &V, const Id &f) const {
  auto it = runit.find(IdPair{U, V});
  if (it != runit.end()) {
    auto jt = it->second.find(f);
    if (jt != it->second.end()) return jt->second;
  }
  Id src = tensor_ob(U, U, V, f, unit_of(U));
  if (src != f)
    throw Error("DomainMismatch", "r(" + f + ")",
                "no right unitor with unequal endpoints");
  return hom(U, V).id_of(f);
}

Id FinBicategory::vcomp(const Id &U, const Id &V, const Id &g,
                        const Id &f) const {
  return hom(U, V).compose(g, f);
}

Id FinBicategory::id2(const Id &U, const Id &V, const Id &t) const {
  return hom(U, V).id_of(t);
}

IdPair FinBicategory::boundary(const Id &U, const Id &V, const Id &cell) const {
  const Arrow &a = hom(U, V).arrow(cell);
  return {a.src, a.dst};
}

void validate_bicategory(const FinBicategory &M) {
  // objects unique, homs present and valid
  {
    std::set<Id> seen;
    for (const auto &U : sorted(M.objects))
      if (!seen.insert(U).second) throw Error("DuplicateName", U);
  }
  for (const auto &U : M.objects)
    for (const auto &V : M.objects) {
      if (!M.homs.count({U, V}))
        throw Error("UnknownObject", "hom(" + U + "," + V + ")",
                    "hom category missing");
      validate_category(M.hom(U, V));
    }
  for (const auto &U : M.objects) {
    Id u = M.unit_of(U);
    if (!M.hom(U, U).has_object(u))
      throw Error("UnknownObject", u, "unit 1-cell missing in hom");
  }

  // tensor tables: typing, totality/consistency, bifunctoriality
  for (const auto &U : M.objects)
    for (const auto &V : M.objects)
      for (const auto &W : M.objects) {
        const FinCategory &hvw = M.hom(V, W), &huv = M.hom(U, V),
                          &huw = M.hom(U, W);
        auto it = M.comp.find(IdTriple{U, V, W});
        const FinBicategory::Tensor empty;
        const FinBicategory::Tensor &T = it == M.comp.end() ? empty
                                                            : it->second;
        for (const auto &[p, r] : T.ob) {
          if (!hvw.has_object(p.first) || !huv.has_object(p.second) ||
              !huw.has_object(r))
            throw Error("DomainMismatch", "(" + p.first + "," + p.second + ")",
                        "tensor table references unknown 1-cell");
        }
        if (!M.truncated) {
          for (const auto &t : sorted(hvw.objects))
            for (const auto &s : sorted(huv.objects))
              if (!T.ob.count({t, s}))
                throw Error("MissingComposite", "(" + t + "," + s + ")");
        }
        // 2-cell table: defined exactly when both boundary composites are
        for (const auto &tb : hvw.arrows)
          for (const auto &ta : huv.arrows) {
            bool want = T.ob.count({tb.src, ta.src}) &&
                        T.ob.count({tb.dst, ta.dst});
            auto jt = T.ar.find({tb.id, ta.id});
            if (!want) {
              if (jt != T.ar.end())
                throw Error("DomainMismatch",
                            "(" + tb.id + "," + ta.id + ")",
                            "2-cell tensor over undefined 1-cell tensor");
              continue;
            }
            if (jt == T.ar.end())
              throw Error("MissingComposite", "(" + tb.id + "," + ta.id + ")");
            const Arrow &r = huw.arrow(jt->second);
            if (r.src != T.ob.at({tb.src, ta.src}) ||
                r.dst != T.ob.at({tb.dst, ta.dst}))
              throw Error("DomainMismatch", "(" + tb.id + "," + ta.id + ")",
                          "tensored 2-cell has wrong boundary");
          }
        // identities
        for (const auto &[p, r] : T.ob) {
          Id lhs = T.ar.count({hvw.id_of(p.first), huv.id_of(p.second)})
                       ? T.ar.at({hvw.id_of(p.first), huv.id_of(p.second)})
                       : Id{};
          if (lhs != huw.id_of(r))
            throw Error("NonFunctorialAction",
                        "(" + p.first + "," + p.second + ")",
                        "identity tensor is not an identity");
        }
        // interchange
        for (const auto &[pb, rb] : hvw.comp)
          for (const auto &[pa, ra] : huv.comp) {
            // pb = (b2, b1) vertical pair in hom(V,W); pa likewise
            if (!T.ar.count({pb.second, pa.second}) ||
                !T.ar.count({pb.first, pa.first}))
              continue;
            if (!T.ar.count({rb, ra})) continue;
            Id lhs = T.ar.at({rb, ra});
            Id rhs = huw.compose(T.ar.at({pb.first, pa.first}),
                                 T.ar.at({pb.second, pa.second}));
            if (lhs != rhs)
              throw Error("NonFunctorialAction",
                          "(" + pb.first + "," + pa.first + ")|(" +
                              pb.second + "," + pa.second + ")",
                          "interchange fails");
          }
      }

  // structural cells: typing, invertibility, naturality
  for (const auto &U : M.objects)
    for (const auto &V : M.objects)
      for (const auto &W : M.objects)
        for (const auto &X : M.objects) {
          const FinCategory &hvw = M.hom(V, W), &huv = M.hom(U, V),
                            &hwx = M.hom(W, X);
          for (const auto &h : sorted(hwx.objects))
            for (const auto &g : sorted(hvw.objects))
              for (const auto &f : sorted(huv.objects)) {
                if (!M.has_ob(U, V, W, g, f) || !M.has_ob(V, W, X, h, g))
                  continue;
                Id gf = M.tensor_ob(U, V, W, g, f);
                Id hg = M.tensor_ob(V, W, X, h, g);
                if (!M.has_ob(U, W, X, h, gf) || !M.has_ob(U, V, X, hg, f))
                  continue;
                Id cell = M.assoc_cell(U, V, W, X, h, g, f);
                auto [src, dst] = M.boundary(U, X, cell);
                if (src != M.tensor_ob(U, V, X, hg, f) ||
                    dst != M.tensor_ob(U, W, X, h, gf))
                  throw Error("DomainMismatch", "a" + trip(h, g, f),
                              "associator boundary wrong");
                if (!inverse_of(M.hom(U, X), cell))
                  throw Error("MissingInvertible", "a" + trip(h, g, f));
              }
        }
  for (const auto &U : M.objects)
    for (const auto &V : M.objects) {
      const FinCategory &h = M.hom(U, V);
      for (const auto &f : sorted(h.objects)) {
        if (M.has_ob(U, V, V, M.unit_of(V), f)) {
          Id cell = M.lunit_cell(U, V, f);
          auto [src, dst] = M.boundary(U, V, cell);
          if (src != M.tensor_ob(U, V, V, M.unit_of(V), f) || dst != f)
            throw Error("DomainMismatch", "l(" + f + ")",
                        "left unitor boundary wrong");
          if (!inverse_of(h, cell))
            throw Error("MissingInvertible", "l(" + f + ")");
        }
        if (M.has_ob(U, U, V, f, M.unit_of(U))) {
          Id cell = M.runit_cell(U, V, f);
          auto [src, dst] = M.boundary(U, V, cell);
          if (src != M.tensor_ob(U, U, V, f, M.unit_of(U)) || dst != f)
            throw Error("DomainMismatch", "r(" + f + ")",
                        "right unitor boundary wrong");
          if (!inverse_of(h, cell))
            throw Error("MissingInvertible", "r(" + f + ")");
        }
      }
    }

  // naturality of the structural cells
  for (const auto &U : M.objects)
    for (const auto &V : M.objects)
      for (const auto &W : M.objects)
        for (const auto &X : M.objects) {
          const FinCategory &hvw = M.hom(V, W), &huv = M.hom(U, V),
                            &hwx = M.hom(W, X);
          // cc: h->h', cb: g->g', ca: f->f'.  Naturality in all three
          // slots at once follows from naturality in each slot separately
          // because the tensors are already known to be bifunctorial, so
          // only one slot at a time carries a non-identity cell.
          auto square = [&](const Arrow &cc, const Arrow &cb,
                            const Arrow &ca) {
            if (!M.has_ob(U, V, W, cb.src, ca.src) ||
                !M.has_ob(V, W, X, cc.src, cb.src) ||
                !M.has_ob(U, V, W, cb.dst, ca.dst) ||
                !M.has_ob(V, W, X, cc.dst, cb.dst))
              return;
            Id gf = M.tensor_ob(U, V, W, cb.src, ca.src);
            Id hg = M.tensor_ob(V, W, X, cc.src, cb.src);
            Id gf2 = M.tensor_ob(U, V, W, cb.dst, ca.dst);
            Id hg2 = M.tensor_ob(V, W, X, cc.dst, cb.dst);
            if (!M.has_ob(U, W, X, cc.src, gf) ||
                !M.has_ob(U, V, X, hg, ca.src) ||
                !M.has_ob(U, W, X, cc.dst, gf2) ||
                !M.has_ob(U, V, X, hg2, ca.dst))
              return;
            Id a1 = M.assoc_cell(U, V, W, X, cc.src, cb.src, ca.src);
            Id a2 = M.assoc_cell(U, V, W, X, cc.dst, cb.dst, ca.dst);
            Id lhs = M.vcomp(
                U, X, a2,
                M.tensor_ar(U, V, X,
                            M.tensor_ar(V, W, X, cc.id, cb.id), ca.id));
            Id rhs = M.vcomp(
                U, X,
                M.tensor_ar(U, W, X, cc.id,
                            M.tensor_ar(U, V, W, cb.id, ca.id)),
                a1);
            if (lhs != rhs)
              throw Error("NonNaturalAssociator",
                          trip(cc.id, cb.id, ca.id));
          };
          for (const auto &cc : hwx.arrows) {
            if (hwx.is_identity(cc.id)) continue;
            for (const auto &g : hvw.objects)
              for (const auto &f : huv.objects)
                square(cc, hvw.arrow(hvw.id_of(g)), huv.arrow(huv.id_of(f)));
          }
          for (const auto &cb : hvw.arrows) {
            if (hvw.is_identity(cb.id)) continue;
            for (const auto &h : hwx.objects)
              for (const auto &f : huv.objects)
                square(hwx.arrow(hwx.id_of(h)), cb, huv.arrow(huv.id_of(f)));
          }
          for (const auto &ca : huv.arrows) {
            if (huv.is_identity(ca.id)) continue;
            for (const auto &h : hwx.objects)
              for (const auto &g : hvw.objects)
                square(hwx.arrow(hwx.id_of(h)), hvw.arrow(hvw.id_of(g)), ca);
          }
        }
  for (const auto &U : M.objects)
    for (const auto &V : M.objects) {
      const FinCategory &h = M.hom(U, V);
      Id iu = M.unit_of(U), iv = M.unit_of(V);
      for (const auto &ca : h.arrows) {
        if (M.has_ob(U, V, V, iv, ca.src) && M.has_ob(U, V, V, iv, ca.dst)) {
          Id lhs = M.vcomp(U, V, M.lunit_cell(U, V, ca.dst),
                           M.tensor_ar(U, V, V, M.id2(V, V, iv), ca.id));
          Id rhs = M.vcomp(U, V, ca.id, M.lunit_cell(U, V, ca.src));
          if (lhs != rhs)
            throw Error("NonNaturalAssociator", "l(" + ca.id + ")");
        }
        if (M.has_ob(U, U, V, ca.src, iu) && M.has_ob(U, U, V, ca.dst, iu)) {
          Id lhs = M.vcomp(U, V, M.runit_cell(U, V, ca.dst),
                           M.tensor_ar(U, U, V, ca.id, M.id2(U, U, iu)));
          Id rhs = M.vcomp(U, V, ca.id, M.runit_cell(U, V, ca.src));
          if (lhs != rhs)
            throw Error("NonNaturalAssociator", "r(" + ca.id + ")");
        }
      }
    }

  // pentagon
  for (const auto &U : M.objects)
    for (const auto &V : M.objects)
      for (const auto &W : M.objects)
        for (const auto &X : M.objects)
          for (const auto &Y : M.objects) {
            const FinCategory &hxy = M.hom(X, Y), &hwx = M.hom(W, X),
                              &hvw = M.hom(V, W), &huv = M.hom(U, V);
            for (const auto &k : sorted(hxy.objects))
              for (const auto &h : sorted(hwx.objects))
                for (const auto &g : sorted(hvw.objects))
                  for (const auto &f : sorted(huv.objects)) {
                    if (!M.has_ob(V, W, X, h, g) || !M.has_ob(U, V, W, g, f) ||
                        !M.has_ob(W, X, Y, k, h))
                      continue;
                    Id hg = M.tensor_ob(V, W, X, h, g);
                    Id gf = M.tensor_ob(U, V, W, g, f);
                    Id kh = M.tensor_ob(W, X, Y, k, h);
                    if (!M.has_ob(U, V, X, hg, f) || !M.has_ob(U, W, X, h, gf))
                      continue;
                    Id hg_f = M.tensor_ob(U, V, X, hg, f);
                    Id h_gf = M.tensor_ob(U, W, X, h, gf);
                    if (!M.has_ob(U, X, Y, k, hg_f) ||
                        !M.has_ob(U, X, Y, k, h_gf) ||
                        !M.has_ob(V, X, Y, k, hg) ||
                        !M.has_ob(U, W, Y, kh, gf))
                      continue;
                    Id k_hg = M.tensor_ob(V, X, Y, k, hg);
                    if (!M.has_ob(U, V, Y, k_hg, f)) continue;
                    // LHS: (Id_k . a(h,g,f)) o a(k, hg, f) o (a(k,h,g) . Id_f)
                    Id step1 = M.tensor_ar(U, V, Y,
                                           M.assoc_cell(V, W, X, Y, k, h, g),
                                           M.id2(U, V, f));
                    Id step2 = M.assoc_cell(U, V, X, Y, k, hg, f);
                    Id step3 = M.tensor_ar(U, X, Y, M.id2(X, Y, k),
                                           M.assoc_cell(U, V, W, X, h, g, f));
                    Id lhs = M.vcomp(U, Y, step3, M.vcomp(U, Y, step2, step1));
                    // RHS: a(k, h, gf) o a(kh, g, f)
                    Id rhs = M.vcomp(U, Y, M.assoc_cell(U, W, X, Y, k, h, gf),
                                     M.assoc_cell(U, V, W, Y, kh, g, f));
                    if (lhs != rhs)
                      throw Error("PentagonViolation",
                                  "(" + k + "," + h + "," + g + "," + f + ")");
                  }
          }

  // triangle
  for (const auto &U : M.objects)
    for (const auto &V : M.objects)
      for (const auto &W : M.objects) {
        const FinCategory &hvw = M.hom(V, W), &huv = M.hom(U, V);
        Id iv = M.unit_of(V);
        for (const auto &g : sorted(hvw.objects))
          for (const auto &f : sorted(huv.objects)) {
            if (!M.has_ob(V, V, W, g, iv) || !M.has_ob(U, V, V, iv, f))
              continue;
            Id g_iv = M.tensor_ob(V, V, W, g, iv);
            Id iv_f = M.tensor_ob(U, V, V, iv, f);
            if (!M.has_ob(U, V, W, g_iv, f) || !M.has_ob(U, V, W, g, iv_f))
              continue;
            Id lhs = M.vcomp(
                U, W,
                M.tensor_ar(U, V, W, M.id2(V, W, g), M.lunit_cell(U, V, f)),
                M.assoc_cell(U, V, V, W, g, iv, f));
            Id rhs = M.tensor_ar(U, V, W, M.runit_cell(V, W, g),
                                 M.id2(U, V, f));
            if (lhs != rhs)
              throw Error("TriangleViolation", "(" + g + "," + f + ")");
          }
      }
}

FinBicategory suspend_monoidal(const MonoidalCategory &Mo) {
  if (!Mo.base.has_object(Mo.unit_ob))
    throw Error("MonoidalAxiomViolation", Mo.unit_ob, "unit object missing");
  for (const auto &a : Mo.base.objects)
    for (const auto &b : Mo.base.objects)
      if (!Mo.tensor_ob.count({a, b}))
        throw Error("MonoidalAxiomViolation", "(" + a + "," + b + ")",
                    "tensor not total on objects");
  FinBicategory B;
  B.name = "susp(" + Mo.name + ")";
  B.objects = {"pt"};
  B.homs[{"pt", "pt"}] = Mo.base;
  B.unit["pt"] = Mo.unit_ob;
  FinBicategory::Tensor T;
  T.ob.insert(Mo.tensor_ob.begin(), Mo.tensor_ob.end());
  for (const auto &fa : Mo.base.arrows)
    for (const auto &fb : Mo.base.arrows) {
      auto it = Mo.tensor_ar.find({fa.id, fb.id});
      if (it != Mo.tensor_ar.end()) {
        T.ar[{fa.id, fb.id}] = it->second;
        continue;
      }
      // synthesize tensors of identities when derivable
      if (Mo.base.is_identity(fa.id) && Mo.base.is_identity(fb.id)) {
        T.ar[{fa.id, fb.id}] =
            Mo.base.id_of(Mo.tensor_ob.at({fa.src, fb.src}));
        continue;
      }
      throw Error("MonoidalAxiomViolation", "(" + fa.id + "," + fb.id + ")",
                  "tensor not total on arrows");
    }
  B.comp[IdTriple{"pt", "pt", "pt"}] = T;
  if (!Mo.assoc.empty()) B.assoc[IdQuad{"pt", "pt", "pt", "pt"}] = Mo.assoc;
  if (!Mo.lunit.empty()) B.lunit[IdPair{"pt", "pt"}] = Mo.lunit;
  if (!Mo.runit.empty()) B.runit[IdPair{"pt", "pt"}] = Mo.runit;
  return B;
}

MonoidalCategory extract_monoidal(const FinBicategory &B) {
  if (B.objects.size() != 1)
    throw Error("ShapeMismatch", B.name, "not a one-object 2-category");
  const Id &pt = B.objects.front();
  MonoidalCategory Mo;
  Mo.name = "unsusp(" + B.name + ")";
  Mo.base = B.hom(pt, pt);
  Mo.unit_ob = B.unit_of(pt);
  auto it = B.comp.find(IdTriple{pt, pt, pt});
  if (it != B.comp.end()) {
    Mo.tensor_ob.insert(it->second.ob.begin(), it->second.ob.end());
    Mo.tensor_ar.insert(it->second.ar.begin(), it->second.ar.end());
  }
  auto ai = B.assoc.find(IdQuad{pt, pt, pt, pt});
  if (ai != B.assoc.end()) Mo.assoc = ai->second;
  auto li = B.lunit.find(IdPair{pt, pt});
  if (li != B.lunit.end()) Mo.lunit = li->second;
  auto ri = B.runit.find(IdPair{pt, pt});
  if (ri != B.runit.end()) Mo.runit = ri->second;
  return Mo;
}

bool in_base(const FinBicategory &M, const BaseW &W, const Id &U, const Id &V,
             const Id &cell) {
  switch (W.kind) {
  case BaseW::Kind::All:
    return M.hom(U, V).has_arrow(cell);
  case BaseW::Kind::Iso:
    return inverse_of(M.hom(U, V), cell).has_value();
  case BaseW::Kind::Explicit: {
    auto it = W.cells.find({U, V});
    return it != W.cells.end() && it->second.count(cell);
  }
  }
  return false;
}

void validate_base(const FinBicategory &M, const BaseW &W) {
  // every invertible 2-cell belongs to W
  for (const auto &U : M.objects)
    for (const auto &V : M.objects) {
      const FinCategory &h = M.hom(U, V);
      for (const auto &a : h.arrows)
        if (inverse_of(h, a.id) && !in_base(M, W, U, V, a.id))
          throw Error("MissingInvertible", a.id);
      // three-for-two on vertical composites
      for (const auto &[p, r] : h.comp) {
        const auto &[beta, alpha] = p;
        int c = (in_base(M, W, U, V, alpha) ? 1 : 0) +
                (in_base(M, W, U, V, beta) ? 1 : 0) +
                (in_base(M, W, U, V, r) ? 1 : 0);
        if (c == 2)
          throw Error("ThreeForTwoViolation",
                      "(" + alpha + "," + beta + ")");
      }
    }
  // horizontal stability
  for (const auto &[key, T] : M.comp) {
    const auto &[U, V, Wo] = key;
    for (const auto &[p, r] : T.ar) {
      const auto &[beta, alpha] = p;
      if (in_base(M, W, V, Wo, beta) && in_base(M, W, U, V, alpha) &&
          !in_base(M, W, U, Wo, r))
        throw Error("HorizontalClosureViolation",
                    "(" + alpha + "," + beta + ")");
    }
  }
}

std::pair<BaseW, BaseW> canonical_bases(const FinBicategory &M) {
  BaseW iso = BaseW::iso(), all = BaseW::all();
  validate_base(M, iso);
  validate_base(M, all);
  return {iso, all};
}

Id ColaxMorphism::coh_cell(const Id &A, const Id &B, const Id &C, const Id &t,
                           const Id &s) const {
  auto it = coh.find(IdTriple{A, B, C});
  if (it == coh.end())
    throw Error("MissingComposite", "phi(" + t + "," + s + ")",
                "no colaxity table for object triple");
  auto jt = it->second.find(IdPair{t, s});
  if (jt == it->second.end())
    throw Error("MissingComposite", "phi(" + t + "," + s + ")");
  return jt->second;
}

void validate_colax(const FinBicategory &M, const FinBicategory &N,
                    const ColaxMorphism &F) {
  // object map and hom functors
  for (const auto &A : M.objects) {
    Id FA = F.ob(A);
    if (std::find(N.objects.begin(), N.objects.end(), FA) == N.objects.end())
      throw Error("UnknownObject", FA, "image object missing");
  }
  for (const auto &A : M.objects)
    for (const auto &B : M.objects)
      validate_functor(M.hom(A, B), N.hom(F.ob(A), F.ob(B)), F.hf(A, B));

  auto fob = [&](const Id &A, const Id &B, const Id &t) {
    return F.hf(A, B).ob(t);
  };
  auto far = [&](const Id &A, const Id &B, const Id &c) {
    const FinFunctor &H = F.hf(A, B);
    auto it = H.amap.find(c);
    if (it != H.amap.end()) return it->second;
    // identity 2-cells may be omitted from the stored functor
    const FinCategory &h = M.hom(A, B);
    if (h.is_identity(c))
      return N.hom(F.ob(A), F.ob(B)).id_of(H.ob(h.arrow(c).src));
    throw Error("UnknownObject", c, "2-cell unmapped");
  };

  // colaxity cells: presence and typing over every defined composite
  for (const auto &A : M.objects)
    for (const auto &B : M.objects)
      for (const auto &C : M.objects) {
        for (const auto &t : M.hom(B, C).objects)
          for (const auto &s : M.hom(A, B).objects) {
            if (!M.has_ob(A, B, C, t, s)) continue;
            Id cell = F.coh_cell(A, B, C, t, s);
            Id FA = F.ob(A), FB = F.ob(B), FC = F.ob(C);
            auto [src, dst] = N.boundary(FA, FC, cell);
            if (src != fob(A, C, M.tensor_ob(A, B, C, t, s)) ||
                dst != N.tensor_ob(FA, FB, FC, fob(B, C, t), fob(A, B, s)))
              throw Error("DomainMismatch", "phi(" + t + "," + s + ")",
                          "colaxity cell boundary wrong");
          }
      }
  for (const auto &A : M.objects) {
    Id cell = F.unit_cell(A);
    Id FA = F.ob(A);
    auto [src, dst] = N.boundary(FA, FA, cell);
    if (src != fob(A, A, M.unit_of(A)) || dst != N.unit_of(FA))
      throw Error("DomainMismatch", "phi(" + A + ")",
                  "unit colaxity cell boundary wrong");
  }

  // composition hexagon
  for (const auto &A : M.objects)
    for (const auto &B : M.objects)
      for (const auto &C : M.objects)
        for (const auto &D : M.objects) {
          for (const auto &h : M.hom(C, D).objects)
            for (const auto &g : M.hom(B, C).objects)
              for (const auto &f : M.hom(A, B).objects) {
                if (!M.has_ob(B, C, D, h, g) || !M.has_ob(A, B, C, g, f))
                  continue;
                Id hg = M.tensor_ob(B, C, D, h, g);
                Id gf = M.tensor_ob(A, B, C, g, f);
                if (!M.has_ob(A, B, D, hg, f) || !M.has_ob(A, C, D, h, gf))
                  continue;
                Id FA = F.ob(A), FB = F.ob(B), FC = F.ob(C), FD = F.ob(D);
                Id Fh = fob(C, D, h), Fg = fob(B, C, g), Ff = fob(A, B, f);
                Id lhs = N.vcomp(
                    FA, FD,
                    N.assoc_cell(FA, FB, FC, FD, Fh, Fg, Ff),
                    N.vcomp(FA, FD,
                            N.tensor_ar(FA, FB, FD,
                                        F.coh_cell(B, C, D, h, g),
                                        N.id2(FA, FB, Ff)),
                            F.coh_cell(A, B, D, hg, f)));
                Id rhs = N.vcomp(
                    FA, FD,
                    N.tensor_ar(FA, FC, FD, N.id2(FC, FD, Fh),
                                F.coh_cell(A, B, C, g, f)),
                    N.vcomp(FA, FD, F.coh_cell(A, C, D, h, gf),
                            far(A, D, M.assoc_cell(A, B, C, D, h, g, f))));
                if (lhs != rhs)
                  throw Error("M1Violation", trip(h, g, f));
              }
        }

  // unit squares
  for (const auto &A : M.objects)
    for (const auto &B : M.objects) {
      Id FA = F.ob(A), FB = F.ob(B);
      for (const auto &f : M.hom(A, B).objects) {
        Id Ff = fob(A, B, f);
        if (M.has_ob(A, A, B, f, M.unit_of(A))) {
          Id lhs = N.vcomp(
              FA, FB, N.runit_cell(FA, FB, Ff),
              N.vcomp(FA, FB,
                      N.tensor_ar(FA, FA, FB, N.id2(FA, FB, Ff),
                                  F.unit_cell(A)),
                      F.coh_cell(A, A, B, f, M.unit_of(A))));
          Id rhs = far(A, B, M.runit_cell(A, B, f));
          if (lhs != rhs) throw Error("M2Violation", f);
        }
        if (M.has_ob(A, B, B, M.unit_of(B), f)) {
          Id lhs = N.vcomp(
              FA, FB, N.lunit_cell(FA, FB, Ff),
              N.vcomp(FA, FB,
                      N.tensor_ar(FA, FB, FB, F.unit_cell(B),
                                  N.id2(FA, FB, Ff)),
                      F.coh_cell(A, B, B, M.unit_of(B), f)));
          Id rhs = far(A, B, M.lunit_cell(A, B, f));
          if (lhs != rhs) throw Error("M2Violation", f);
        }
      }
    }

  // naturality of the colaxity cells
  for (const auto &A : M.objects)
    for (const auto &B : M.objects)
      for (const auto &C : M.objects) {
        Id FA = F.ob(A), FB = F.ob(B), FC = F.ob(C);
        for (const auto &cb : M.hom(B, C).arrows)
          for (const auto &ca : M.hom(A, B).arrows) {
            if (!M.has_ob(A, B, C, cb.src, ca.src) ||
                !M.has_ob(A, B, C, cb.dst, ca.dst))
              continue;
            Id lhs = N.vcomp(
                FA, FC,
                N.tensor_ar(FA, FB, FC, far(B, C, cb.id), far(A, B, ca.id)),
                F.coh_cell(A, B, C, cb.src, ca.src));
            Id rhs = N.vcomp(FA, FC, F.coh_cell(A, B, C, cb.dst, ca.dst),
                             far(A, C, M.tensor_ar(A, B, C, cb.id, ca.id)));
            if (lhs != rhs)
              throw Error("NonNaturalColaxity",
                          "(" + cb.id + "," + ca.id + ")");
          }
      }
}

ColaxMorphism compose_colax(const FinBicategory &M, const FinBicategory &N,
                            const FinBicategory &P, const ColaxMorphism &G,
                            const ColaxMorphism &F) {
  ColaxMorphism H;
  H.name = G.name + "." + F.name;
  for (const auto &A : M.objects) H.omap[A] = G.ob(F.ob(A));
  for (const auto &A : M.objects)
    for (const auto &B : M.objects) {
      const FinFunctor &Ff = F.hf(A, B);
      const FinFunctor &Gf = G.hf(F.ob(A), F.ob(B));
      FinFunctor Hf;
      Hf.name = Gf.name + "." + Ff.name;
      for (const auto &t : M.hom(A, B).objects) Hf.omap[t] = Gf.ob(Ff.ob(t));
      for (const auto &c : M.hom(A, B).arrows) {
        auto it = Ff.amap.find(c.id);
        Id mid = it != Ff.amap.end()
                     ? it->second
                     : N.hom(F.ob(A), F.ob(B)).id_of(Ff.ob(c.src));
        auto jt = Gf.amap.find(mid);
        Hf.amap[c.id] =
            jt != Gf.amap.end()
                ? jt->second
                : P.hom(H.omap[A], H.omap[B])
                      .id_of(Gf.ob(N.hom(F.ob(A), F.ob(B)).arrow(mid).src));
      }
      H.hmap[{A, B}] = Hf;
    }
  for (const auto &[key, table] : F.coh) {
    const auto &[A, B, C] = key;
    Id FA = F.ob(A), FB = F.ob(B), FC = F.ob(C);
    Id HA = H.omap[A], HC = H.omap[C];
    H.coh.try_emplace(key);
    for (const auto &[p, cell] : table) {
      const auto &[t, s] = p;
      // phi_GF = (phi_G at (Ft, Fs)) after G(phi_F)
      const FinFunctor &Gf = G.hf(FA, FC);
      auto it = Gf.amap.find(cell);
      Id gcell = it != Gf.amap.end()
                     ? it->second
                     : P.hom(HA, HC).id_of(
                           Gf.ob(N.hom(FA, FC).arrow(cell).src));
      Id ft = F.hf(B, C).ob(t), fs = F.hf(A, B).ob(s);
      H.coh[key][p] =
          P.vcomp(HA, HC, G.coh_cell(FA, FB, FC, ft, fs), gcell);
    }
  }
  for (const auto &A : M.objects) {
    Id FA = F.ob(A), HA = H.omap[A];
    const FinFunctor &Gf = G.hf(FA, FA);
    Id cell = F.unit_cell(A);
    auto it = Gf.amap.find(cell);
    Id gcell = it != Gf.amap.end()
                   ? it->second
                   : P.hom(HA, HA).id_of(
                         Gf.ob(N.hom(FA, FA).arrow(cell).src));
    H.unit_coh[A] = P.vcomp(HA, HA, G.unit_cell(FA), gcell);
  }
  return H;
}

ColaxMorphism identity_colax(const FinBicategory &M) {
  ColaxMorphism F;
  F.name = "Id(" + M.name + ")";
  for (const auto &A : M.objects) F.omap[A] = A;
  for (const auto &A : M.objects)
    for (const auto &B : M.objects)
      F.hmap[{A, B}] = identity_functor(M.hom(A, B));
  for (const auto &[key, T] : M.comp) {
    const auto &[A, B, C] = key;
    for (const auto &[p, r] : T.ob)
      F.coh[IdTriple{A, B, C}][p] = M.hom(A, C).id_of(r);
  }
  // make sure every object triple has a table, even an empty one
  for (const auto &A : M.objects)
    for (const auto &B : M.objects)
      for (const auto &C : M.objects)
        F.coh.try_emplace(IdTriple{A, B, C});
  for (const auto &A : M.objects)
    F.unit_coh[A] = M.hom(A, A).id_of(M.unit_of(A));
  return F;
}

void validate_transformation(const FinBicategory &M, const FinBicategory &N,
                             const ColaxMorphism &F, const ColaxMorphism &G,
                             const ColaxTransformation &sigma) {
  auto far = [&](const ColaxMorphism &H, const Id &A, const Id &B,
                 const Id &c) {
    const FinFunctor &Hf = H.hf(A, B);
    auto it = Hf.amap.find(c);
    if (it != Hf.amap.end()) return it->second;
    const FinCategory &h = M.hom(A, B);
    if (h.is_identity(c))
      return N.hom(H.ob(A), H.ob(B)).id_of(Hf.ob(h.arrow(c).src));
    throw Error("UnknownObject", c, "2-cell unmapped");
  };
  auto s1 = [&](const Id &A) {
    return map_at(sigma.comp1, A, "UnknownObject", A);
  };
  auto s2 = [&](const Id &A, const Id &B, const Id &t) -> Id {
    auto it = sigma.comp2.find(IdPair{A, B});
    if (it == sigma.comp2.end())
      throw Error("MissingComposite", "sigma(" + t + ")");
    return map_at(it->second, t, "MissingComposite", "sigma(" + t + ")");
  };

  // typing
  for (const auto &A : M.objects) {
    Id c = s1(A);
    if (!N.hom(F.ob(A), G.ob(A)).has_object(c))
      throw Error("DomainMismatch", A, "component 1-cell has wrong hom");
  }
  for (const auto &A : M.objects)
    for (const auto &B : M.objects) {
      Id FA = F.ob(A), FB = F.ob(B), GA = G.ob(A), GB = G.ob(B);
      for (const auto &t : M.hom(A, B).objects) {
        Id cell = s2(A, B, t);
        Id src = N.tensor_ob(FA, FB, GB, s1(B), F.hf(A, B).ob(t));
        Id dst = N.tensor_ob(FA, GA, GB, G.hf(A, B).ob(t), s1(A));
        auto [bs, bd] = N.boundary(FA, GB, cell);
        if (bs != src || bd != dst)
          throw Error("DomainMismatch", "sigma(" + t + ")",
                      "transformation 2-cell boundary wrong");
      }
    }

  // naturality in 2-cells
  for (const auto &A : M.objects)
    for (const auto &B : M.objects) {
      Id FA = F.ob(A), FB = F.ob(B), GA = G.ob(A), GB = G.ob(B);
      for (const auto &cb : M.hom(A, B).arrows) {
        Id lhs = N.vcomp(FA, GB, s2(A, B, cb.dst),
                         N.tensor_ar(FA, FB, GB, N.id2(FB, GB, s1(B)),
                                     far(F, A, B, cb.id)));
        Id rhs = N.vcomp(FA, GB,
                         N.tensor_ar(FA, GA, GB, far(G, A, B, cb.id),
                                     N.id2(FA, GA, s1(A))),
                         s2(A, B, cb.src));
        if (lhs != rhs)
          throw Error("TransformationAxiomViolation", "nat(" + cb.id + ")");
      }
    }

  // compatibility with composition
  for (const auto &A : M.objects)
    for (const auto &B : M.objects)
      for (const auto &C : M.objects) {
        Id FA = F.ob(A), FB = F.ob(B), FC = F.ob(C);
        Id GA = G.ob(A), GB = G.ob(B), GC = G.ob(C);
        for (const auto &t : M.hom(B, C).objects)
          for (const auto &s : M.hom(A, B).objects) {
            if (!M.has_ob(A, B, C, t, s)) continue;
            Id ts = M.tensor_ob(A, B, C, t, s);
            Id Ft = F.hf(B, C).ob(t), Fs = F.hf(A, B).ob(s);
            Id Gt = G.hf(B, C).ob(t), Gs = G.hf(A, B).ob(s);
            Id lhs = N.vcomp(FA, GC,
                             N.tensor_ar(FA, GA, GC,
                                         G.coh_cell(A, B, C, t, s),
                                         N.id2(FA, GA, s1(A))),
                             s2(A, C, ts));
            Id e1 = N.tensor_ar(FA, FC, GC, N.id2(FC, GC, s1(C)),
                                F.coh_cell(A, B, C, t, s));
            Id e2 = invert_cell(
                N, FA, GC, N.assoc_cell(FA, FB, FC, GC, s1(C), Ft, Fs));
            Id e3 = N.tensor_ar(FA, FB, GC, s2(B, C, t), N.id2(FA, FB, Fs));
            Id e4 = N.assoc_cell(FA, FB, GB, GC, Gt, s1(B), Fs);
            Id e5 = N.tensor_ar(FA, GB, GC, N.id2(GB, GC, Gt), s2(A, B, s));
            Id e6 = invert_cell(
                N, FA, GC, N.assoc_cell(FA, GA, GB, GC, Gt, Gs, s1(A)));
            Id rhs = N.vcomp(
                FA, GC, e6,
                N.vcomp(FA, GC, e5,
                        N.vcomp(FA, GC, e4,
                                N.vcomp(FA, GC, e3,
                                        N.vcomp(FA, GC, e2, e1)))));
            if (lhs != rhs)
              throw Error("TransformationAxiomViolation",
                          "(" + t + "," + s + ")");
          }
      }

  // compatibility with units
  for (const auto &A : M.objects) {
    Id FA = F.ob(A), GA = G.ob(A);
    Id lhs = N.vcomp(FA, GA,
                     N.tensor_ar(FA, GA, GA, G.unit_cell(A),
                                 N.id2(FA, GA, s1(A))),
                     s2(A, A, M.unit_of(A)));
    Id rhs = N.vcomp(
        FA, GA, invert_cell(N, FA, GA, N.lunit_cell(FA, GA, s1(A))),
        N.vcomp(FA, GA, N.runit_cell(FA, GA, s1(A)),
                N.tensor_ar(FA, FA, GA, N.id2(FA, GA, s1(A)),
                            F.unit_cell(A))));
    if (lhs != rhs) throw Error("UnitAxiomViolation", A);
  }
}

void validate_modification(const FinBicategory &M, const FinBicategory &N,
                           const ColaxMorphism &F, const ColaxMorphism &G,
                           const ColaxTransformation &s1,
                           const ColaxTransformation &s2,
                           const Modification &gamma) {
  auto cell = [&](const Id &A) {
    return map_at(gamma.cells, A, "UnknownObject", A);
  };
  for (const auto &A : M.objects) {
    Id FA = F.ob(A), GA = G.ob(A);
    auto [src, dst] = N.boundary(FA, GA, cell(A));
    if (src != s1.comp1.at(A) || dst != s2.comp1.at(A))
      throw Error("DomainMismatch", A, "modification cell boundary wrong");
  }
  for (const auto &A : M.objects)
    for (const auto &B : M.objects) {
      Id FA = F.ob(A), FB = F.ob(B), GA = G.ob(A), GB = G.ob(B);
      for (const auto &t : M.hom(A, B).objects) {
        Id Ft = F.hf(A, B).ob(t), Gt = G.hf(A, B).ob(t);
        Id lhs = N.vcomp(FA, GB, s2.comp2.at({A, B}).at(t),
                         N.tensor_ar(FA, FB, GB, cell(B),
                                     N.id2(FA, FB, Ft)));
        Id rhs = N.vcomp(FA, GB,
                         N.tensor_ar(FA, GA, GB, N.id2(GA, GB, Gt), cell(A)),
                         s1.comp2.at({A, B}).at(t));
        if (lhs != rhs) throw Error("ModificationAxiomViolation", t);
      }
    }
}

Id invert_cell(const FinBicategory &M, const Id &U, const Id &V,
               const Id &cell) {
  auto inv = inverse_of(M.hom(U, V), cell);
  if (!inv) throw Error("MissingInvertible", cell);
  return *inv;
}

} // namespace pathcat
