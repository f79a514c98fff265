// Finite ordinals and monotone maps: composition, ordinal sum, generator
// factorization, hom-set enumeration, and the endpoint-preserving duality.
//
// An ordinal n is the linear order {0, ..., n-1}; n = 0 is the empty ordinal.
// A map in Delta(m, n) is a weakly monotone function m -> n stored by its
// image list. Generator conventions used throughout the library:
//   merge_i  : n+1 -> n   sends i and i+1 to i            (surjective)
//   insert_i : n -> n+1   skips the value i               (injective)
#pragma once

#include "pathcat/util.hpp"

#include <cstdint>
#include <vector>

namespace pathcat {

struct DeltaMap {
  int dom = 0;               // source ordinal
  int cod = 0;               // target ordinal
  std::vector<int> img;      // img[i] = value at i; size == dom

  bool operator==(const DeltaMap &o) const = default;
  bool operator<(const DeltaMap &o) const {
    return std::tie(dom, cod, img) < std::tie(o.dom, o.cod, o.img);
  }

  std::string str() const;   // e.g. "3->2:[0,0,1]"
};

// Throws DomainMismatch if img is not a weakly monotone map dom -> cod.
void check_delta(const DeltaMap &u);

DeltaMap delta_identity(int n);
bool is_delta_identity(const DeltaMap &u);

DeltaMap merge_generator(int n, int i);   // n+1 -> n, collapses {i, i+1}
DeltaMap insert_generator(int n, int i);  // n -> n+1, skips value i

// g after f (f first); throws DomainMismatch unless f.cod == g.dom.
DeltaMap compose_delta(const DeltaMap &g, const DeltaMap &f);

// Block sum: (u + v)(x) = u(x) on the first block, u.cod + v(x - u.dom) on
// the second. Strictly functorial in both arguments.
DeltaMap ordinal_sum(const DeltaMap &u, const DeltaMap &v);

// Factors u into adjacent generators, surjective part first and injective
// part second (canonical epi-mono order). The list is in application order:
// composing left to right (earliest first) reproduces u exactly.
std::vector<DeltaMap> factorize_generators(const DeltaMap &u);

// All of Delta(m, n) in lexicographic order of image lists.
// |Delta(m, n)| = C(n+m-1, m) for n >= 1; empty for n = 0 < m.
std::vector<DeltaMap> enumerate_hom(int m, int n);

// Preimage interval {i : u(i) == j} returned as [lo, hi) bounds.
std::pair<int, int> interval_preimage(const DeltaMap &u, int j);

// Number of i with u(i) < j; the cumulative position of gap j.
int cumulative_position(const DeltaMap &u, int j);

// Endpoint-preserving duality. A map u in Delta(n, m) corresponds to the
// monotone theta : {0..m} -> {0..n} with theta(0) = 0, theta(m) = n given by
// theta(j) = #{i : u(i) < j}; the inverse sends theta to
// u(i) = max{r : theta(r) <= i}. Both directions are exact bijections.
std::vector<int> ep_dual(const DeltaMap &u);
DeltaMap ep_to_delta(const std::vector<int> &theta, int n, int m);

} // namespace pathcat
