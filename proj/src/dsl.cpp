#include "pathcat/dsl.hpp"

#include <algorithm>
#include <cctype>
#include <filesystem>
#include <fstream>
#include <optional>
#include <set>
#include <sstream>

namespace pathcat {

namespace {

const std::set<Id> kBlockKinds = {"category",  "monoidal",   "bicategory",
                                  "base",      "pathobject", "distributor",
                                  "metric",    "cocycle",    "functor"};

const std::map<Id, std::set<Id>> kDeclKeys = {
    {"category", {"object", "arrow", "compose"}},
    {"monoidal", {"base", "unit", "tensor-obj", "tensor-arr"}},
    {"bicategory", {"object", "hom", "unit", "tensor-obj", "tensor-arr"}},
    {"base", {"kind", "target", "wcell"}},
    {"pathobject",
     {"shape", "target", "base", "maxlen", "point", "chain-image", "colax",
      "unit-colax"}},
    {"distributor", {"left", "right", "element", "lact", "ract"}},
    {"metric", {"cap", "point", "dist"}},
    {"cocycle", {"point", "group", "entry", "maxlen"}},
    {"functor", {"from", "to", "map-obj", "map-arr"}},
};

std::string loc_of(const std::string &src, int line, int col) {
  return src + ":" + std::to_string(line) + ":" + std::to_string(col);
}

[[noreturn]] void parse_fail(const std::string &src, int line, int col,
                             const std::string &detail) {
  throw Error("ParseError", loc_of(src, line, col), detail);
}

// Identifiers declared by the user must stay clear of the punctuation the
// library uses when it synthesizes ids (pairs, chains, witnesses).
void check_declared_id(const Id &id, const std::string &src, int line,
                       int col) {
  if (id.empty()) parse_fail(src, line, col, "empty identifier");
  for (char c : id)
    if (c == '(' || c == ')' || c == '|' || c == '[' || c == ']' ||
        c == ',' || c == '@' || c == ';' || c == '=' ||
        std::isspace(static_cast<unsigned char>(c)))
      parse_fail(src, line, col,
                 "identifier '" + id + "' contains reserved character '" +
                     std::string(1, c) + "'");
}

struct ParseCtx {
  SpecDocument *doc = nullptr;
  std::set<std::string> active;  // canonical paths on the include stack
  int depth = 0;
};

void parse_stream(ParseCtx &ctx, std::istream &in, const std::string &src,
                  const std::filesystem::path &dir);

void parse_file(ParseCtx &ctx, const std::string &path, int at_line,
                int at_col, const std::string &from) {
  if (ctx.depth > 32) parse_fail(from, at_line, at_col, "include too deep");
  std::error_code ec;
  auto canon = std::filesystem::weakly_canonical(path, ec);
  std::string key = ec ? path : canon.string();
  if (ctx.active.count(key))
    parse_fail(from, at_line, at_col, "include cycle through " + path);
  std::ifstream in(path);
  if (!in)
    parse_fail(from, at_line, at_col, "cannot open " + path);
  ctx.active.insert(key);
  ++ctx.depth;
  parse_stream(ctx, in, path, std::filesystem::path(path).parent_path());
  --ctx.depth;
  ctx.active.erase(key);
}

void parse_stream(ParseCtx &ctx, std::istream &in, const std::string &src,
                  const std::filesystem::path &dir) {
  std::string raw;
  int lineno = 0;
  SpecBlock *open = nullptr;
  auto reopen = [&]() { open = nullptr; };
  while (std::getline(in, raw)) {
    ++lineno;
    if (auto h = raw.find('#'); h != std::string::npos) raw.resize(h);
    // tokenize, tracking the column of each token
    std::vector<Id> toks;
    std::vector<int> cols;
    size_t i = 0;
    while (i < raw.size()) {
      if (std::isspace(static_cast<unsigned char>(raw[i]))) {
        ++i;
        continue;
      }
      size_t j = i;
      while (j < raw.size() &&
             !std::isspace(static_cast<unsigned char>(raw[j])))
        ++j;
      toks.push_back(raw.substr(i, j - i));
      cols.push_back(static_cast<int>(i) + 1);
      i = j;
    }
    if (toks.empty()) continue;
    const Id &head = toks[0];
    if (head == "include") {
      if (toks.size() != 2)
        parse_fail(src, lineno, cols[0], "include takes one path");
      reopen();
      std::filesystem::path p(toks[1]);
      if (p.is_relative()) p = dir / p;
      parse_file(ctx, p.string(), lineno, cols[1], src);
      continue;
    }
    if (kBlockKinds.count(head)) {
      if (toks.size() != 2)
        parse_fail(src, lineno, cols[0],
                   head + " block header takes one name");
      check_declared_id(toks[1], src, lineno, cols[1]);
      if (ctx.doc->find(head, toks[1]))
        throw Error("DuplicateName", head + " " + toks[1],
                    "redeclared at " + loc_of(src, lineno, cols[1]));
      SpecBlock b;
      b.kind = head;
      b.name = toks[1];
      b.line = lineno;
      ctx.doc->blocks.push_back(std::move(b));
      open = &ctx.doc->blocks.back();
      continue;
    }
    if (!open)
      parse_fail(src, lineno, cols[0],
                 "declaration '" + head + "' outside any block");
    if (!kDeclKeys.at(open->kind).count(head))
      parse_fail(src, lineno, cols[0],
                 "unknown declaration '" + head + "' in a " + open->kind +
                     " block");
    SpecDecl d;
    d.key = head;
    d.line = lineno;
    d.col = cols[0];
    for (size_t k = 1; k < toks.size(); ++k)
      if (toks[k] != "=") d.args.push_back(toks[k]);
    open->decls.push_back(std::move(d));
  }
}

// --- lowering helpers ------------------------------------------------------

[[noreturn]] void unresolved(const Id &name, const std::string &where,
                             const std::string &detail = "") {
  throw Error("UnresolvedReference", where,
              detail.empty() ? name : name + " — " + detail);
}

void need_args(const SpecDocument &doc, const SpecDecl &d, size_t n) {
  if (d.args.size() != n)
    parse_fail(doc.source, d.line, d.col,
               d.key + " takes " + std::to_string(n) + " arguments, got " +
                   std::to_string(d.args.size()));
}

int parse_int(const SpecDocument &doc, const SpecDecl &d, const Id &tok) {
  try {
    size_t pos = 0;
    int v = std::stoi(tok, &pos);
    if (pos != tok.size()) throw std::invalid_argument(tok);
    return v;
  } catch (const std::exception &) {
    parse_fail(doc.source, d.line, d.col, "expected an integer, got " + tok);
  }
}

// "interval(3)" / "coarse(a,b)" / "prod(A,B)" helpers for builtin references
std::optional<std::vector<Id>> builtin_args(const Id &name, const Id &fn) {
  if (name.size() <= fn.size() + 2 || name.compare(0, fn.size(), fn) != 0 ||
      name[fn.size()] != '(' || name.back() != ')')
    return std::nullopt;
  std::vector<Id> out;
  std::string inner = name.substr(fn.size() + 1, name.size() - fn.size() - 2);
  std::stringstream ss(inner);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(item);
  return out;
}

std::optional<FinCategory> builtin_category(const Id &name) {
  if (name == "One") {
    FinCategory C;
    C.name = "One";
    C.objects = {"o"};
    C.finalize();
    return C;
  }
  if (auto a = builtin_args(name, "interval")) {
    if (a->size() == 1 && !a->front().empty() &&
        a->front().find_first_not_of("0123456789") == std::string::npos)
      return interval(std::stoi(a->front()));
  }
  if (auto a = builtin_args(name, "coarse")) return coarse(*a);
  return std::nullopt;
}

// Chain token: "[@A]" is the empty chain at A, "[f,g]" lists arrows in
// application order. Returns the chain id after existence checks.
Id resolve_chain(const SpecDocument &doc, const SpecDecl &d,
                 const Path2Category &PC, const FinCategory &S,
                 const Id &tok) {
  if (tok.size() < 3 || tok.front() != '[' || tok.back() != ']')
    parse_fail(doc.source, d.line, d.col,
               "expected a chain like [f,g] or [@A], got " + tok);
  std::string inner = tok.substr(1, tok.size() - 2);
  Chain c;
  if (inner[0] == '@') {
    c.src = inner.substr(1);
    if (!S.has_object(c.src)) unresolved(c.src, "chain " + tok);
  } else {
    std::stringstream ss(inner);
    std::string item;
    while (std::getline(ss, item, ',')) {
      if (!S.has_arrow(item)) unresolved(item, "chain " + tok);
      c.seq.push_back(item);
    }
    c.src = S.arrow(c.seq.front()).src;
    check_chain(S, c);
  }
  if (c.length() > PC.maxlen)
    throw Error("TruncationExceeded", "chain " + tok,
                "length " + std::to_string(c.length()) + " > maxlen " +
                    std::to_string(PC.maxlen));
  return chain_id(c);
}

const FinCategory &hom_of(const FinBicategory &M, const Id &U, const Id &V) {
  return M.hom(U, V);
}

}  // namespace

// --- SpecDocument ----------------------------------------------------------

const SpecBlock *SpecDocument::find(const Id &kind, const Id &name) const {
  for (const SpecBlock &b : blocks)
    if (b.kind == kind && b.name == name) return &b;
  return nullptr;
}

const SpecBlock &SpecDocument::get(const Id &kind, const Id &name) const {
  const SpecBlock *b = find(kind, name);
  if (!b) unresolved(name, kind + " block");
  return *b;
}

const SpecBlock &SpecDocument::only(const Id &kind) const {
  const SpecBlock *hit = nullptr;
  for (const SpecBlock &b : blocks)
    if (b.kind == kind) {
      if (hit)
        unresolved(kind, "document " + source,
                   "several " + kind + " blocks; name one explicitly");
      hit = &b;
    }
  if (!hit) unresolved(kind, "document " + source, "no " + kind + " block");
  return *hit;
}

SpecDocument parse_spec(const std::string &path) {
  SpecDocument doc;
  doc.source = path;
  ParseCtx ctx;
  ctx.doc = &doc;
  parse_file(ctx, path, 0, 0, path);
  return doc;
}

SpecDocument parse_spec_text(const std::string &text,
                             const std::string &srcname) {
  SpecDocument doc;
  doc.source = srcname;
  ParseCtx ctx;
  ctx.doc = &doc;
  std::istringstream in(text);
  parse_stream(ctx, in, srcname, std::filesystem::current_path());
  return doc;
}

// --- category ---------------------------------------------------------------

FinCategory lower_category(const SpecDocument &doc, const Id &name) {
  const SpecBlock *b = doc.find("category", name);
  if (!b) {
    if (auto c = builtin_category(name)) return *c;
    unresolved(name, "category block");
  }
  FinCategory C;
  C.name = name;
  for (const SpecDecl &d : b->decls) {
    if (d.key == "object") {
      need_args(doc, d, 1);
      check_declared_id(d.args[0], doc.source, d.line, d.col);
      if (C.has_object(d.args[0]))
        throw Error("DuplicateName", "category " + name, d.args[0]);
      C.objects.push_back(d.args[0]);
    } else if (d.key == "arrow") {
      need_args(doc, d, 3);
      check_declared_id(d.args[0], doc.source, d.line, d.col);
      if (C.has_arrow(d.args[0]))
        throw Error("DuplicateName", "category " + name, d.args[0]);
      if (!C.has_object(d.args[1]))
        unresolved(d.args[1], "arrow " + d.args[0]);
      if (!C.has_object(d.args[2]))
        unresolved(d.args[2], "arrow " + d.args[0]);
      C.arrows.push_back({d.args[0], d.args[1], d.args[2]});
    } else {  // compose g f = h
      need_args(doc, d, 3);
      for (const Id &f : d.args)
        if (!C.has_arrow(f)) unresolved(f, "compose in category " + name);
      C.comp[{d.args[0], d.args[1]}] = d.args[2];
    }
  }
  C.finalize();
  validate_category(C);
  return C;
}

// --- monoidal ---------------------------------------------------------------

MonoidalCategory lower_monoidal(const SpecDocument &doc, const Id &name) {
  const SpecBlock &b = doc.get("monoidal", name);
  MonoidalCategory M;
  M.name = name;
  bool have_base = false;
  for (const SpecDecl &d : b.decls) {
    if (d.key == "base") {
      need_args(doc, d, 1);
      M.base = lower_category(doc, d.args[0]);
      have_base = true;
    } else if (d.key == "unit") {
      need_args(doc, d, 1);
      M.unit_ob = d.args[0];
    } else if (d.key == "tensor-obj") {
      need_args(doc, d, 3);
      M.tensor_ob[{d.args[0], d.args[1]}] = d.args[2];
    } else {  // tensor-arr f g = h
      need_args(doc, d, 3);
      M.tensor_ar[{d.args[0], d.args[1]}] = d.args[2];
    }
  }
  if (!have_base) unresolved("base", "monoidal " + name, "no base line");
  for (const auto &[p, r] : M.tensor_ob) {
    if (!M.base.has_object(p.first)) unresolved(p.first, "monoidal " + name);
    if (!M.base.has_object(p.second)) unresolved(p.second, "monoidal " + name);
    if (!M.base.has_object(r)) unresolved(r, "monoidal " + name);
  }
  if (!M.base.has_object(M.unit_ob))
    unresolved(M.unit_ob, "monoidal " + name, "unit object");
  // implicit cells: identity pairs always; anything whose target hom is thin
  for (const Id &a : M.base.objects)
    for (const Id &b2 : M.base.objects) {
      auto r = M.tensor_ob.find({a, b2});
      if (r == M.tensor_ob.end())
        unresolved("tensor-obj " + a + " " + b2, "monoidal " + name,
                   "tensor table is not total");
      M.tensor_ar.try_emplace({M.base.id_of(a), M.base.id_of(b2)},
                              M.base.id_of(r->second));
    }
  for (const Arrow &af : M.base.arrows)
    for (const Arrow &ag : M.base.arrows) {
      const Id &f = af.id;
      const Id &g = ag.id;
      if (M.tensor_ar.count({f, g})) continue;
      Id src = M.tensor_ob.at({af.src, ag.src});
      Id dst = M.tensor_ob.at({af.dst, ag.dst});
      auto cands = M.base.hom(src, dst);
      if (cands.size() == 1)
        M.tensor_ar[{f, g}] = cands[0];
      else
        unresolved("tensor-arr " + f + " " + g, "monoidal " + name,
                   "no unique candidate in a non-thin hom");
    }
  suspend_monoidal(M);  // validates totality and coherence
  return M;
}

// --- bicategory --------------------------------------------------------------

FinBicategory lower_bicategory(const SpecDocument &doc, const Id &name) {
  const SpecBlock *b = doc.find("bicategory", name);
  if (!b) {
    if (doc.find("monoidal", name))
      return suspend_monoidal(lower_monoidal(doc, name));
    unresolved(name, "bicategory block");
  }
  FinBicategory M;
  M.name = name;
  for (const SpecDecl &d : b->decls)
    if (d.key == "object") {
      need_args(doc, d, 1);
      check_declared_id(d.args[0], doc.source, d.line, d.col);
      M.objects.push_back(d.args[0]);
    }
  auto need_ob = [&](const Id &U, const SpecDecl &d) {
    if (std::find(M.objects.begin(), M.objects.end(), U) == M.objects.end())
      parse_fail(doc.source, d.line, d.col, "unknown object " + U);
  };
  for (const SpecDecl &d : b->decls) {
    if (d.key == "hom") {
      need_args(doc, d, 3);
      need_ob(d.args[0], d);
      need_ob(d.args[1], d);
      M.homs[{d.args[0], d.args[1]}] = lower_category(doc, d.args[2]);
    } else if (d.key == "unit") {
      need_args(doc, d, 2);
      need_ob(d.args[0], d);
      M.unit[d.args[0]] = d.args[1];
    } else if (d.key == "tensor-obj") {
      need_args(doc, d, 6);
      M.comp[{d.args[0], d.args[1], d.args[2]}].ob[{d.args[3], d.args[4]}] =
          d.args[5];
    } else if (d.key == "tensor-arr") {
      need_args(doc, d, 6);
      M.comp[{d.args[0], d.args[1], d.args[2]}].ar[{d.args[3], d.args[4]}] =
          d.args[5];
    }
  }
  for (const Id &U : M.objects)
    for (const Id &V : M.objects)
      if (!M.homs.count({U, V})) {
        FinCategory empty;
        empty.name = "empty(" + U + "," + V + ")";
        M.homs[{U, V}] = empty;
      }
  // strict-unit defaults and forced cells
  for (const Id &U : M.objects)
    for (const Id &V : M.objects)
      for (const Id &W : M.objects) {
        const FinCategory &hvw = M.homs.at({V, W});
        const FinCategory &huv = M.homs.at({U, V});
        const FinCategory &huw = M.homs.at({U, W});
        FinBicategory::Tensor &T = M.comp[{U, V, W}];
        for (const Id &t : hvw.objects)
          for (const Id &s : huv.objects) {
            if (!T.ob.count({t, s})) {
              if (U == V && M.unit.count(U) && s == M.unit.at(U))
                T.ob[{t, s}] = t;
              else if (V == W && M.unit.count(V) && t == M.unit.at(V))
                T.ob[{t, s}] = s;
            }
          }
        for (const Arrow &ab : hvw.arrows)
          for (const Arrow &aa : huv.arrows) {
            const Id &beta = ab.id;
            const Id &alpha = aa.id;
            if (T.ar.count({beta, alpha})) continue;
            if (!T.ob.count({ab.src, aa.src}) ||
                !T.ob.count({ab.dst, aa.dst}))
              continue;
            Id src = T.ob.at({ab.src, aa.src});
            Id dst = T.ob.at({ab.dst, aa.dst});
            if (hvw.is_identity(beta) && huv.is_identity(alpha))
              T.ar[{beta, alpha}] = huw.id_of(src);
            else if (auto c = huw.hom(src, dst); c.size() == 1)
              T.ar[{beta, alpha}] = c[0];
          }
      }
  validate_bicategory(M);
  return M;
}

// --- base ---------------------------------------------------------------------

BaseW lower_base(const SpecDocument &doc, const Id &name,
                 const FinBicategory &M) {
  if (name == "iso") return BaseW::iso();
  if (name == "all") return BaseW::all();
  const SpecBlock &b = doc.get("base", name);
  BaseW W;
  Id kind = "explicit";
  for (const SpecDecl &d : b.decls)
    if (d.key == "kind") {
      need_args(doc, d, 1);
      kind = d.args[0];
    }
  if (kind == "iso")
    W = BaseW::iso();
  else if (kind == "all")
    W = BaseW::all();
  else if (kind == "explicit")
    W.kind = BaseW::Kind::Explicit;
  else
    throw Error("ParseError", "base " + name, "unknown kind " + kind);
  for (const SpecDecl &d : b.decls) {
    if (d.key != "wcell") continue;
    if (W.kind != BaseW::Kind::Explicit)
      parse_fail(doc.source, d.line, d.col,
                 "wcell only makes sense with kind explicit");
    Id U, V, cell;
    if (d.args.size() == 3) {
      U = d.args[0];
      V = d.args[1];
      cell = d.args[2];
    } else if (d.args.size() == 1 && M.homs.size() == 1) {
      U = M.homs.begin()->first.first;
      V = M.homs.begin()->first.second;
      cell = d.args[0];
    } else {
      parse_fail(doc.source, d.line, d.col,
                 "wcell takes U V cell (or one cell over a single-hom "
                 "target)");
    }
    const FinCategory &h = hom_of(M, U, V);
    if (!h.has_arrow(cell)) unresolved(cell, "wcell in base " + name);
    W.cells[{U, V}].insert(cell);
  }
  // identities always belong to the class
  if (W.kind == BaseW::Kind::Explicit)
    for (const auto &[uv, h] : M.homs)
      for (const Id &t : h.objects) W.cells[uv].insert(h.id_of(t));
  return W;
}

// --- pathobject ------------------------------------------------------------------

PathObject lower_pathobject(const SpecDocument &doc, const Id &name,
                            int default_maxlen) {
  const SpecBlock &b = doc.get("pathobject", name);
  PathObject P;
  P.name = name;
  P.maxlen = default_maxlen;
  Id base_ref = "iso";
  bool have_shape = false, have_target = false;
  for (const SpecDecl &d : b.decls) {
    if (d.key == "shape") {
      need_args(doc, d, 1);
      P.shape = lower_category(doc, d.args[0]);
      have_shape = true;
    } else if (d.key == "target") {
      need_args(doc, d, 1);
      P.target = lower_bicategory(doc, d.args[0]);
      have_target = true;
    } else if (d.key == "base") {
      need_args(doc, d, 1);
      base_ref = d.args[0];
    } else if (d.key == "maxlen") {
      need_args(doc, d, 1);
      P.maxlen = parse_int(doc, d, d.args[0]);
    }
  }
  if (!have_shape) unresolved("shape", "pathobject " + name, "no shape line");
  if (!have_target)
    unresolved("target", "pathobject " + name, "no target line");
  P.base = lower_base(doc, base_ref, P.target);

  const FinBicategory &M = P.target;
  Path2Category PC = build_path_category(P.shape, P.maxlen);
  ColaxMorphism F;
  F.name = name;

  // object images: declared points, else the unique target object
  for (const SpecDecl &d : b.decls)
    if (d.key == "point") {
      need_args(doc, d, 2);
      if (!P.shape.has_object(d.args[0]))
        unresolved(d.args[0], "point in pathobject " + name);
      F.omap[d.args[0]] = d.args[1];
    }
  for (const Id &A : P.shape.objects) {
    if (F.omap.count(A)) continue;
    if (M.objects.size() == 1)
      F.omap[A] = M.objects.front();
    else
      unresolved("point " + A, "pathobject " + name,
                 "target has several objects; declare the image");
  }
  for (const auto &[A, X] : F.omap)
    if (std::find(M.objects.begin(), M.objects.end(), X) == M.objects.end())
      unresolved(X, "point " + A + " in pathobject " + name);

  // declared chain images and colaxity cells
  std::map<IdPair, std::map<Id, Id>> declared;  // (A,B) -> chain id -> 1-cell
  std::map<IdTriple, std::map<IdPair, Id>> coh_decl;
  std::map<Id, Id> unit_decl;
  for (const SpecDecl &d : b.decls) {
    if (d.key == "chain-image") {
      need_args(doc, d, 2);
      Id cid = resolve_chain(doc, d, PC, P.shape, d.args[0]);
      // recover endpoints from the token
      Chain c;
      std::string inner = d.args[0].substr(1, d.args[0].size() - 2);
      if (inner[0] == '@') {
        c.src = inner.substr(1);
      } else {
        std::stringstream ss(inner);
        std::string item;
        while (std::getline(ss, item, ',')) c.seq.push_back(item);
        c.src = P.shape.arrow(c.seq.front()).src;
      }
      declared[{c.src, chain_target(P.shape, c)}][cid] = d.args[1];
    } else if (d.key == "colax") {
      need_args(doc, d, 6);
      for (int k = 0; k < 3; ++k)
        if (!P.shape.has_object(d.args[(size_t)k]))
          unresolved(d.args[(size_t)k], "colax in pathobject " + name);
      Id A = d.args[0], B = d.args[1], C = d.args[2];
      Id t = resolve_chain(doc, d, PC, P.shape, d.args[3]);
      Id s = resolve_chain(doc, d, PC, P.shape, d.args[4]);
      coh_decl[{A, B, C}][{t, s}] = d.args[5];
    } else if (d.key == "unit-colax") {
      need_args(doc, d, 2);
      if (!P.shape.has_object(d.args[0]))
        unresolved(d.args[0], "unit-colax in pathobject " + name);
      unit_decl[d.args[0]] = d.args[1];
    }
  }

  // chain images: lengths 0 and 1 for every hom pair first, since longer
  // chains fold over single-arrow images between intermediate vertices
  std::map<IdPair, std::map<Id, Id>> images;
  for (const Id &A : P.shape.objects)
    for (const Id &B : P.shape.objects) {
      const FinCategory &tgt = hom_of(M, F.omap.at(A), F.omap.at(B));
      std::map<Id, Id> &img = images[{A, B}];
      auto decl_it = declared.find({A, B});
      for (const Chain &c : PC.hom(A, B).chains) {
        if (c.length() > 1) continue;
        Id cid = chain_id(c);
        if (decl_it != declared.end() && decl_it->second.count(cid)) {
          Id cell = decl_it->second.at(cid);
          if (!tgt.has_object(cell))
            unresolved(cell, "chain-image " + cid + " in pathobject " + name);
          img[cid] = cell;
        } else if (c.length() == 0) {
          img[cid] = M.unit_of(F.omap.at(A));
        } else if (tgt.objects.size() == 1) {
          img[cid] = tgt.objects.front();
        } else {
          unresolved("chain-image " + cid, "pathobject " + name,
                     "target hom is not single-object; declare the image");
        }
      }
    }
  for (const Id &A : P.shape.objects)
    for (const Id &B : P.shape.objects) {
      const FinCategory &tgt = hom_of(M, F.omap.at(A), F.omap.at(B));
      std::map<Id, Id> &img = images[{A, B}];
      auto decl_it = declared.find({A, B});
      for (const Chain &c : PC.hom(A, B).chains) {
        if (c.length() <= 1) continue;
        Id cid = chain_id(c);
        if (decl_it != declared.end() && decl_it->second.count(cid)) {
          Id cell = decl_it->second.at(cid);
          if (!tgt.has_object(cell))
            unresolved(cell, "chain-image " + cid + " in pathobject " + name);
          img[cid] = cell;
          continue;
        }
        // front-parenthesized fold, later factor on the left
        int n = c.length();
        auto one = [&](int k) {  // image of the single arrow at position k
          Chain u{chain_vertex(P.shape, c, k), {c.seq[(size_t)k]}};
          return images.at({u.src, chain_target(P.shape, u)})
              .at(chain_id(u));
        };
        Id acc = one(n - 1);
        for (int k = n - 2; k >= 0; --k) {
          Id u = chain_vertex(P.shape, c, k);
          Id v = chain_vertex(P.shape, c, k + 1);
          acc = M.tensor_ob(F.omap.at(u), F.omap.at(v), F.omap.at(B), acc,
                            one(k));
        }
        img[cid] = acc;
      }
    }
  for (const Id &A : P.shape.objects)
    for (const Id &B : P.shape.objects) {
      const PathHom &H = PC.hom(A, B);
      FinCategory homC = hom_category(PC, A, B);
      const FinCategory &tgt = hom_of(M, F.omap.at(A), F.omap.at(B));
      FinFunctor HF;
      HF.name = name + "(" + A + "," + B + ")";
      HF.omap = images.at({A, B});
      for (const auto &[st, wits] : H.witnesses) {
        Id si = HF.omap.at(st.first), ti = HF.omap.at(st.second);
        const Chain &s = PC.chain_by_id(A, B, st.first);
        for (const DeltaMap &u : wits) {
          Id wid = witness_id(s, u);
          if (si == ti) {
            HF.amap[wid] = tgt.id_of(si);
          } else if (auto cand = tgt.hom(si, ti); cand.size() == 1) {
            HF.amap[wid] = cand[0];
          } else {
            unresolved("witness " + wid, "pathobject " + name,
                       "no forced image " + si + " -> " + ti);
          }
        }
      }
      F.hmap[{A, B}] = validate_functor(homC, tgt, HF);
    }

  // colaxity cells: declared, else identity where the objects agree
  for (const Id &A : P.shape.objects)
    for (const Id &B : P.shape.objects)
      for (const Id &C : P.shape.objects) {
        auto &table = F.coh[{A, B, C}];
        const FinCategory &tgt = hom_of(M, F.omap.at(A), F.omap.at(C));
        auto dit = coh_decl.find({A, B, C});
        for (const Chain &t : PC.hom(B, C).chains)
          for (const Chain &s : PC.hom(A, B).chains) {
            if (t.length() + s.length() > P.maxlen) continue;
            Id tid = chain_id(t), sid = chain_id(s);
            if (dit != coh_decl.end() && dit->second.count({tid, sid})) {
              Id cell = dit->second.at({tid, sid});
              if (!tgt.has_arrow(cell))
                unresolved(cell, "colax cell in pathobject " + name);
              table[{tid, sid}] = cell;
              continue;
            }
            Chain ts = concat_chains(P.shape, P.maxlen, s, t);
            Id whole = images.at({A, C}).at(chain_id(ts));
            Id parts =
                M.tensor_ob(F.omap.at(A), F.omap.at(B), F.omap.at(C),
                            images.at({B, C}).at(tid),
                            images.at({A, B}).at(sid));
            if (whole == parts)
              table[{tid, sid}] = tgt.id_of(whole);
            else
              unresolved("colax (" + A + "," + B + "," + C + ") [" + tid +
                             "," + sid + "]",
                         "pathobject " + name,
                         "images " + whole + " vs " + parts +
                             " differ; declare the cell");
          }
      }
  for (const Id &A : P.shape.objects) {
    if (unit_decl.count(A)) {
      Id eA = F.omap.at(A);
      if (!hom_of(M, eA, eA).has_arrow(unit_decl.at(A)))
        unresolved(unit_decl.at(A), "unit-colax in pathobject " + name);
      F.unit_coh[A] = unit_decl.at(A);
      continue;
    }
    Id eA = F.omap.at(A);
    Chain empty{A, {}};
    Id whole = images.at({A, A}).at(chain_id(empty));
    if (whole == M.unit_of(eA))
      F.unit_coh[A] = M.id2(eA, eA, whole);
    else
      unresolved("unit-colax " + A, "pathobject " + name,
                 "empty-chain image " + whole + " is not the unit; declare "
                 "the cell");
  }
  P.functor = F;
  return P;
}

// --- distributor -----------------------------------------------------------------

Distributor lower_distributor(const SpecDocument &doc, const Id &name) {
  const SpecBlock &b = doc.get("distributor", name);
  Distributor X;
  X.name = name;
  bool have_l = false, have_r = false;
  for (const SpecDecl &d : b.decls) {
    if (d.key == "left") {
      need_args(doc, d, 1);
      X.left = lower_category(doc, d.args[0]);
      have_l = true;
    } else if (d.key == "right") {
      need_args(doc, d, 1);
      X.right = lower_category(doc, d.args[0]);
      have_r = true;
    }
  }
  if (!have_l) unresolved("left", "distributor " + name, "no left line");
  if (!have_r) unresolved("right", "distributor " + name, "no right line");
  std::map<Id, IdPair> fiber_of;  // element -> (A,D)
  for (const SpecDecl &d : b.decls) {
    if (d.key != "element") continue;
    need_args(doc, d, 3);
    check_declared_id(d.args[2], doc.source, d.line, d.col);
    if (!X.left.has_object(d.args[0]))
      unresolved(d.args[0], "element in distributor " + name);
    if (!X.right.has_object(d.args[1]))
      unresolved(d.args[1], "element in distributor " + name);
    if (fiber_of.count(d.args[2]))
      throw Error("DuplicateName", "distributor " + name, d.args[2]);
    fiber_of[d.args[2]] = {d.args[0], d.args[1]};
    X.table[{d.args[0], d.args[1]}].push_back(d.args[2]);
  }
  for (const SpecDecl &d : b.decls) {
    if (d.key != "lact" && d.key != "ract") continue;
    need_args(doc, d, 3);
    const FinCategory &side = d.key == "lact" ? X.left : X.right;
    if (!side.has_arrow(d.args[0]))
      unresolved(d.args[0], d.key + " in distributor " + name);
    if (!fiber_of.count(d.args[1]))
      unresolved(d.args[1], d.key + " in distributor " + name);
    if (!fiber_of.count(d.args[2]))
      unresolved(d.args[2], d.key + " in distributor " + name);
    auto &tbl = d.key == "lact" ? X.lact : X.ract;
    tbl[d.args[0]][d.args[1]] = d.args[2];
  }
  // forced actions into singleton fibers
  auto fiber = [&](const Id &A, const Id &D) -> const std::vector<Id> & {
    static const std::vector<Id> none;
    auto it = X.table.find({A, D});
    return it == X.table.end() ? none : it->second;
  };
  for (const Id &f : X.left.nonidentity_arrows()) {
    const Arrow &af = X.left.arrow(f);
    for (const Id &D : X.right.objects)
      for (const Id &x : fiber(af.dst, D)) {
        if (X.lact.count(f) && X.lact.at(f).count(x)) continue;
        const auto &tgt = fiber(af.src, D);
        if (tgt.size() == 1) X.lact[f][x] = tgt[0];
      }
  }
  for (const Id &g : X.right.nonidentity_arrows()) {
    const Arrow &ag = X.right.arrow(g);
    for (const Id &A : X.left.objects)
      for (const Id &x : fiber(A, ag.src)) {
        if (X.ract.count(g) && X.ract.at(g).count(x)) continue;
        const auto &tgt = fiber(A, ag.dst);
        if (tgt.size() == 1) X.ract[g][x] = tgt[0];
      }
  }
  validate_distributor(X);
  return X;
}

// --- metric ----------------------------------------------------------------------

MetricSpace lower_metric(const SpecDocument &doc, const Id &name) {
  const SpecBlock &b = doc.get("metric", name);
  MetricSpace X;
  X.name = name;
  for (const SpecDecl &d : b.decls) {
    if (d.key == "cap") {
      need_args(doc, d, 1);
      X.K = parse_int(doc, d, d.args[0]);
    } else if (d.key == "point") {
      need_args(doc, d, 1);
      check_declared_id(d.args[0], doc.source, d.line, d.col);
      X.points.push_back(d.args[0]);
    }
  }
  for (const SpecDecl &d : b.decls) {
    if (d.key != "dist") continue;
    need_args(doc, d, 3);
    for (int k = 0; k < 2; ++k)
      if (std::find(X.points.begin(), X.points.end(), d.args[(size_t)k]) ==
          X.points.end())
        unresolved(d.args[(size_t)k], "dist in metric " + name);
    X.d[{d.args[0], d.args[1]}] = d.args[2];
  }
  // defaults: zero on the diagonal, inf off it
  for (const Id &x : X.points)
    for (const Id &y : X.points)
      X.d.try_emplace({x, y}, x == y ? Id("0") : Id("inf"));
  return X;
}

// --- cocycle ---------------------------------------------------------------------

CocycleReport lower_cocycle(const SpecDocument &doc, const Id &name,
                            int maxlen) {
  const SpecBlock &b = doc.get("cocycle", name);
  std::vector<Id> points;
  FinCategory G;
  bool have_group = false;
  int N = maxlen;
  std::map<IdPair, Id> f;
  for (const SpecDecl &d : b.decls) {
    if (d.key == "point") {
      need_args(doc, d, 1);
      check_declared_id(d.args[0], doc.source, d.line, d.col);
      points.push_back(d.args[0]);
    } else if (d.key == "group") {
      need_args(doc, d, 1);
      G = lower_category(doc, d.args[0]);
      have_group = true;
    } else if (d.key == "maxlen") {
      need_args(doc, d, 1);
      N = parse_int(doc, d, d.args[0]);
    }
  }
  if (!have_group) unresolved("group", "cocycle " + name, "no group line");
  for (const SpecDecl &d : b.decls) {
    if (d.key != "entry") continue;
    need_args(doc, d, 3);
    for (int k = 0; k < 2; ++k)
      if (std::find(points.begin(), points.end(), d.args[(size_t)k]) ==
          points.end())
        unresolved(d.args[(size_t)k], "entry in cocycle " + name);
    if (!G.has_arrow(d.args[2]))
      unresolved(d.args[2], "entry in cocycle " + name);
    f[{d.args[0], d.args[1]}] = d.args[2];
  }
  if (G.objects.size() == 1)
    for (const Id &a : points) f.try_emplace({a, a}, G.id_of(G.objects[0]));
  return cocycle_check(points, G, f, N);
}

// --- functor ---------------------------------------------------------------------

namespace {
FinCategory resolve_functor_side(const SpecDocument &doc, const Id &ref) {
  if (auto a = builtin_args(ref, "prod")) {
    if (a->size() != 2)
      unresolved(ref, "functor side", "prod takes two categories");
    FinCategory L = lower_category(doc, a->at(0));
    FinCategory R = lower_category(doc, a->at(1));
    return derive(DeriveKind::Product, L, &R);
  }
  if (auto a = builtin_args(ref, "op"))
    if (a->size() == 1) {
      FinCategory C = lower_category(doc, a->at(0));
      return derive(DeriveKind::Opposite, C);
    }
  return lower_category(doc, ref);
}
}  // namespace

LoweredFunctor lower_functor(const SpecDocument &doc, const Id &name) {
  const SpecBlock &b = doc.get("functor", name);
  LoweredFunctor L;
  bool have_from = false, have_to = false;
  for (const SpecDecl &d : b.decls) {
    if (d.key == "from") {
      need_args(doc, d, 1);
      L.from = d.args[0];
      L.dom = resolve_functor_side(doc, d.args[0]);
      have_from = true;
    } else if (d.key == "to") {
      need_args(doc, d, 1);
      L.to = d.args[0];
      L.cod = resolve_functor_side(doc, d.args[0]);
      have_to = true;
    }
  }
  if (!have_from) unresolved("from", "functor " + name, "no from line");
  if (!have_to) unresolved("to", "functor " + name, "no to line");
  FinFunctor F;
  F.name = name;
  for (const SpecDecl &d : b.decls) {
    if (d.key == "map-obj") {
      need_args(doc, d, 2);
      if (!L.dom.has_object(d.args[0]))
        unresolved(d.args[0], "map-obj in functor " + name);
      if (!L.cod.has_object(d.args[1]))
        unresolved(d.args[1], "map-obj in functor " + name);
      F.omap[d.args[0]] = d.args[1];
    } else if (d.key == "map-arr") {
      need_args(doc, d, 2);
      if (!L.dom.has_arrow(d.args[0]))
        unresolved(d.args[0], "map-arr in functor " + name);
      if (!L.cod.has_arrow(d.args[1]))
        unresolved(d.args[1], "map-arr in functor " + name);
      F.amap[d.args[0]] = d.args[1];
    }
  }
  // same-name defaults, then identities via validation
  for (const Id &A : L.dom.objects)
    if (!F.omap.count(A) && L.cod.has_object(A)) F.omap[A] = A;
  for (const Id &f : L.dom.nonidentity_arrows())
    if (!F.amap.count(f) && L.cod.has_arrow(f)) F.amap[f] = f;
  L.F = validate_functor(L.dom, L.cod, F);
  return L;
}

}  // namespace pathcat
