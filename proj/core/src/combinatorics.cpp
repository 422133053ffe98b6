#include "hypercorr/combinatorics.hpp"

#include <limits>
#include <string>

#include "hypercorr/errors.hpp"

namespace hypercorr {

std::uint64_t binomial(int n, int k) {
  if (n < 0) throw ParameterError("binomial: n must be non-negative, got " + std::to_string(n));
  if (k < 0 || k > n) return 0;
  if (k > n - k) k = n - k;
  unsigned __int128 r = 1;
  for (int i = 1; i <= k; ++i) {
    // Multiplying k consecutive integers keeps r * (n-k+i) divisible by i.
    r = r * static_cast<unsigned>(n - k + i) / static_cast<unsigned>(i);
    if (r > std::numeric_limits<std::uint64_t>::max()) {
      throw ParameterError("binomial(" + std::to_string(n) + "," + std::to_string(k) +
                           ") exceeds 64 bits");
    }
  }
  return static_cast<std::uint64_t>(r);
}

HyperedgeIndex::HyperedgeIndex(std::vector<int> v) : vertices(std::move(v)) {
  if (vertices.empty()) throw ParameterError("hyperedge must contain at least one vertex");
  int prev = 0;
  for (int x : vertices) {
    if (x <= prev) {
      throw ParameterError("hyperedge vertices must be strictly increasing labels >= 1");
    }
    prev = x;
  }
}

EdgeSpace::EdgeSpace(int n, int m) : n_(n), m_(m) {
  if (m < 1 || m > n) {
    throw ParameterError("edge space requires 1 <= m <= n, got n=" + std::to_string(n) +
                         " m=" + std::to_string(m));
  }
  table_.assign(static_cast<std::size_t>(n + 1) * (m + 1), 0);
  for (int x = 0; x <= n; ++x) {
    for (int y = 0; y <= m; ++y) {
      table_[static_cast<std::size_t>(x) * (m + 1) + y] = binomial(x, y);
    }
  }
  count_ = choose(n, m);
}

std::uint64_t EdgeSpace::rank(const HyperedgeIndex& e) const {
  if (e.size() != m_ || e.vertices.back() > n_) {
    throw ParameterError("hyperedge does not belong to this edge space");
  }
  // Lexicographic rank of the 0-based combination a_0 < ... < a_{m-1}:
  // sum over positions of the number of combinations that branch off below
  // a_i, i.e. C(n-1-prev, m-i) - C(n-a_i, m-i).
  std::uint64_t r = 0;
  int prev = -1;
  for (int i = 0; i < m_; ++i) {
    const int a = e.vertices[i] - 1;
    r += choose(n_ - 1 - prev, m_ - i) - choose(n_ - a, m_ - i);
    prev = a;
  }
  return r;
}

HyperedgeIndex EdgeSpace::unrank(std::uint64_t r) const {
  if (r >= count_) throw ParameterError("edge rank out of range: " + std::to_string(r));
  HyperedgeIndex e;
  e.vertices.resize(m_);
  int prev = -1;
  for (int i = 0; i < m_; ++i) {
    int a = prev + 1;
    for (;;) {
      const std::uint64_t block = choose(n_ - 1 - a, m_ - 1 - i);
      if (r < block) break;
      r -= block;
      ++a;
    }
    e.vertices[i] = a + 1;
    prev = a;
  }
  return e;
}

std::vector<HyperedgeIndex> enumerate_hyperedges(int n, int m) {
  EdgeSpace space(n, m);
  std::vector<HyperedgeIndex> edges;
  edges.reserve(space.count());
  for (std::uint64_t r = 0; r < space.count(); ++r) edges.push_back(space.unrank(r));
  return edges;
}

}  // namespace hypercorr
