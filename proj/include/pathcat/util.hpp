// Shared plumbing: diagnostic errors with stable codes, id helpers.
#pragma once

#include <map>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

namespace pathcat {

using Id = std::string;
using IdPair = std::pair<Id, Id>;
using IdTriple = std::tuple<Id, Id, Id>;
using IdQuad = std::tuple<Id, Id, Id, Id>;

// A verification or input failure with a machine-stable code and a location
// string naming the offending datum. Codes double as the FAIL tokens the CLI
// prints, so they must stay short and spaceless.
class Error : public std::runtime_error {
public:
  Error(std::string code, std::string location, std::string detail = "")
      : std::runtime_error(code + " " + location +
                           (detail.empty() ? "" : " — " + detail)),
        code_(std::move(code)), location_(std::move(location)),
        detail_(std::move(detail)) {}

  const std::string &code() const { return code_; }
  const std::string &location() const { return location_; }
  const std::string &detail() const { return detail_; }

private:
  std::string code_, location_, detail_;
};

// Codes that signal malformed *input* (CLI exit 2) rather than a failed
// verification (CLI exit 1).
inline bool is_input_error_code(const std::string &code) {
  static const std::set<std::string> input = {
      "ParseError",    "UnresolvedReference", "DuplicateName",
      "UnknownCommand", "MissingArgument",    "UnknownObject",
      "InternalError"};
  return input.count(code) > 0;
}

inline std::string join(const std::vector<std::string> &parts,
                        const std::string &sep) {
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i) out += sep;
    out += parts[i];
  }
  return out;
}

// Deterministic composite ids for derived structures (products, tagged
// sums, pairs of cells). User-facing ids may not contain '(', ')' or '|'
// — the DSL enforces that — so nested synthesized ids split unambiguously.
inline Id pair_id(const Id &a, const Id &b) { return "(" + a + "|" + b + ")"; }

inline IdPair split_pair_id(const Id &p) {
  if (p.size() < 3 || p.front() != '(' || p.back() != ')')
    throw Error("InternalError", p, "not a pair id");
  int depth = 0;
  for (std::size_t i = 1; i + 1 < p.size(); ++i) {
    if (p[i] == '(') ++depth;
    else if (p[i] == ')') --depth;
    else if (p[i] == '|' && depth == 0)
      return {p.substr(1, i - 1), p.substr(i + 1, p.size() - i - 2)};
  }
  throw Error("InternalError", p, "not a pair id");
}

template <typename K, typename V>
const V &map_at(const std::map<K, V> &m, const K &k, const std::string &code,
                const std::string &loc) {
  auto it = m.find(k);
  if (it == m.end()) throw Error(code, loc);
  return it->second;
}

} // namespace pathcat
