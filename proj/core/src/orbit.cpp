#include "hypercorr/orbit.hpp"

#include <algorithm>
#include <string>
#include <vector>

#include "hypercorr/errors.hpp"

namespace hypercorr {

std::uint64_t OrbitProfile::count(std::uint64_t k) const {
  auto it = counts.find(k);
  return it == counts.end() ? 0 : it->second;
}

std::uint64_t OrbitProfile::total_edges() const {
  std::uint64_t total = 0;
  for (const auto& [k, nk] : counts) total += k * nk;
  return total;
}

HyperedgeIndex apply_to_edge(const Permutation& pi, const HyperedgeIndex& e) {
  if (e.vertices.back() > pi.size()) {
    throw ParameterError("hyperedge labels exceed the permutation's domain");
  }
  HyperedgeIndex out;
  out.vertices.resize(e.vertices.size());
  for (std::size_t i = 0; i < e.vertices.size(); ++i) out.vertices[i] = pi.apply(e.vertices[i]);
  std::sort(out.vertices.begin(), out.vertices.end());
  return out;
}

OrbitProfile orbit_profile(const Permutation& pi, int m) {
  const int n = pi.size();
  EdgeSpace space(n, m);
  const std::uint64_t edge_count = space.count();
  std::vector<bool> visited(edge_count, false);

  // Work on 0-based sorted tuples to avoid HyperedgeIndex churn in the loop.
  std::vector<int> cur(m), next(m);
  OrbitProfile profile;
  for (std::uint64_t start = 0; start < edge_count; ++start) {
    if (visited[start]) continue;
    HyperedgeIndex e = space.unrank(start);
    cur = e.vertices;
    std::uint64_t len = 0;
    std::uint64_t r = start;
    do {
      visited[r] = true;
      ++len;
      for (int i = 0; i < m; ++i) next[i] = pi.apply(cur[i]);
      std::sort(next.begin(), next.end());
      cur.swap(next);
      HyperedgeIndex img;
      img.vertices = cur;
      r = space.rank(img);
    } while (r != start);
    ++profile.counts[len];
  }
  return profile;
}

namespace {

// Recurses over cycle lengths k = 1..m choosing j_k whole k-cycles with
// remaining vertex budget; multiplies C(n_k, j_k) along the way.
std::uint64_t fixed_edge_sum(const CycleType& ct, int k, int budget) {
  if (budget == 0) return 1;
  if (k > budget) return 0;
  std::uint64_t total = 0;
  const std::uint64_t nk = ct.count(k);
  for (int j = 0; k * j <= budget; ++j) {
    if (static_cast<std::uint64_t>(j) > nk) break;
    const std::uint64_t ways = binomial(static_cast<int>(nk), j);
    if (ways == 0) break;
    total += ways * fixed_edge_sum(ct, k + 1, budget - k * j);
  }
  return total;
}

}  // namespace

std::uint64_t fixed_edge_count_closed_form(const CycleType& ct, int m) {
  if (m < 1) throw ParameterError("uniformity m must be >= 1");
  if (ct.n() < m) {
    throw ParameterError("cycle type covers n=" + std::to_string(ct.n()) +
                         " labels, fewer than m=" + std::to_string(m));
  }
  return fixed_edge_sum(ct, 1, m);
}

}  // namespace hypercorr
