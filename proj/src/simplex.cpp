#include "pathcat/simplex.hpp"

#include <algorithm>

namespace pathcat {

std::string DeltaMap::str() const {
  std::string s = std::to_string(dom) + "->" + std::to_string(cod) + ":[";
  for (std::size_t i = 0; i < img.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(img[i]);
  }
  return s + "]";
}

void check_delta(const DeltaMap &u) {
  if ((int)u.img.size() != u.dom)
    throw Error("DomainMismatch", u.str(), "image list size != domain");
  for (int i = 0; i < u.dom; ++i) {
    if (u.img[i] < 0 || u.img[i] >= u.cod)
      throw Error("DomainMismatch", u.str(), "value out of codomain");
    if (i && u.img[i - 1] > u.img[i])
      throw Error("DomainMismatch", u.str(), "not monotone");
  }
}

DeltaMap delta_identity(int n) {
  DeltaMap u{n, n, {}};
  u.img.resize(n);
  for (int i = 0; i < n; ++i) u.img[i] = i;
  return u;
}

bool is_delta_identity(const DeltaMap &u) {
  if (u.dom != u.cod) return false;
  for (int i = 0; i < u.dom; ++i)
    if (u.img[i] != i) return false;
  return true;
}

DeltaMap merge_generator(int n, int i) {
  DeltaMap u{n + 1, n, {}};
  u.img.resize(n + 1);
  for (int j = 0; j <= n; ++j) u.img[j] = j <= i ? j : j - 1;
  return u;
}

DeltaMap insert_generator(int n, int i) {
  DeltaMap u{n, n + 1, {}};
  u.img.resize(n);
  for (int j = 0; j < n; ++j) u.img[j] = j < i ? j : j + 1;
  return u;
}

DeltaMap compose_delta(const DeltaMap &g, const DeltaMap &f) {
  if (f.cod != g.dom)
    throw Error("DomainMismatch", f.str() + " ; " + g.str(),
                "codomain/domain mismatch in composition");
  DeltaMap r{f.dom, g.cod, {}};
  r.img.resize(f.dom);
  for (int i = 0; i < f.dom; ++i) r.img[i] = g.img[f.img[i]];
  return r;
}

DeltaMap ordinal_sum(const DeltaMap &u, const DeltaMap &v) {
  DeltaMap r{u.dom + v.dom, u.cod + v.cod, {}};
  r.img.resize(r.dom);
  for (int i = 0; i < u.dom; ++i) r.img[i] = u.img[i];
  for (int i = 0; i < v.dom; ++i) r.img[u.dom + i] = u.cod + v.img[i];
  return r;
}

std::vector<DeltaMap> factorize_generators(const DeltaMap &u) {
  check_delta(u);
  std::vector<DeltaMap> out;

  // Surjective part: collapse duplicates with adjacent merges, lowest
  // position first. `cur` tracks the residual still to be factored.
  std::vector<int> cur = u.img;
  int dom = u.dom;
  for (;;) {
    int at = -1;
    for (int i = 0; i + 1 < (int)cur.size(); ++i)
      if (cur[i] == cur[i + 1]) { at = i; break; }
    if (at < 0) break;
    out.push_back(merge_generator(dom - 1, at));
    cur.erase(cur.begin() + at);
    --dom;
  }

  // Injective part: insert the missing values in increasing order. After
  // inserting gap m_s the intermediate codomain grows by one, so the s-th
  // missing value is inserted into an ordinal that already contains all
  // smaller ones.
  int have = (int)cur.size();
  std::vector<int> missing;
  {
    std::size_t k = 0;
    for (int v = 0; v < u.cod; ++v) {
      if (k < cur.size() && cur[k] == v) { ++k; continue; }
      missing.push_back(v);
    }
  }
  for (std::size_t s = 0; s < missing.size(); ++s) {
    out.push_back(insert_generator(have + (int)s, missing[s]));
  }
  return out;
}

std::vector<DeltaMap> enumerate_hom(int m, int n) {
  std::vector<DeltaMap> out;
  if (m == 0) {
    out.push_back(DeltaMap{0, n, {}});
    return out;
  }
  if (n == 0) return out;
  std::vector<int> img(m, 0);
  for (;;) {
    DeltaMap u{m, n, img};
    out.push_back(u);
    // advance to the next weakly increasing sequence
    int i = m - 1;
    while (i >= 0 && img[i] == n - 1) --i;
    if (i < 0) break;
    int v = img[i] + 1;
    for (int j = i; j < m; ++j) img[j] = v;
  }
  return out;
}

std::pair<int, int> interval_preimage(const DeltaMap &u, int j) {
  int lo = (int)(std::lower_bound(u.img.begin(), u.img.end(), j) -
                 u.img.begin());
  int hi = (int)(std::upper_bound(u.img.begin(), u.img.end(), j) -
                 u.img.begin());
  return {lo, hi};
}

int cumulative_position(const DeltaMap &u, int j) {
  return (int)(std::lower_bound(u.img.begin(), u.img.end(), j) -
               u.img.begin());
}

std::vector<int> ep_dual(const DeltaMap &u) {
  std::vector<int> theta(u.cod + 1);
  for (int j = 0; j <= u.cod; ++j) theta[j] = cumulative_position(u, j);
  return theta;
}

DeltaMap ep_to_delta(const std::vector<int> &theta, int n, int m) {
  if ((int)theta.size() != m + 1 || theta[0] != 0 || theta[m] != n)
    throw Error("DomainMismatch", "ep-map", "not endpoint-preserving");
  for (int j = 1; j <= m; ++j)
    if (theta[j - 1] > theta[j])
      throw Error("DomainMismatch", "ep-map", "not monotone");
  DeltaMap u{n, m, {}};
  u.img.resize(n);
  for (int i = 0; i < n; ++i) {
    int r = 0;
    for (int k = 0; k <= m; ++k)
      if (theta[k] <= i) r = k;
    u.img[i] = r;
  }
  return u;
}

} // namespace pathcat
