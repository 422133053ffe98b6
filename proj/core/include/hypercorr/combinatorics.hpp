#pragma once

#include <cstdint>
#include <vector>

namespace hypercorr {

// Exact binomial coefficient; throws ParameterError if the result would not
// fit in 64 bits. k outside [0, n] yields 0.
std::uint64_t binomial(int n, int k);

// One hyperedge of an m-uniform hypergraph on vertices {1..n}: a strictly
// increasing tuple of m vertex labels.
struct HyperedgeIndex {
  std::vector<int> vertices;

  HyperedgeIndex() = default;
  // Validates: non-empty, strictly increasing, all labels >= 1.
  explicit HyperedgeIndex(std::vector<int> v);

  int size() const { return static_cast<int>(vertices.size()); }
  bool operator==(const HyperedgeIndex&) const = default;
};

// Dense lexicographic indexing of the m-subsets of {1..n}: every hyperedge
// has a rank in [0, C(n,m)), assigned in lexicographic order of its sorted
// vertex tuple. rank/unrank are exact inverses.
class EdgeSpace {
 public:
  EdgeSpace(int n, int m);  // requires 1 <= m <= n

  int n() const { return n_; }
  int m() const { return m_; }
  std::uint64_t count() const { return count_; }

  std::uint64_t rank(const HyperedgeIndex& e) const;
  HyperedgeIndex unrank(std::uint64_t r) const;

  // choose(x, y) for 0 <= x <= n, 0 <= y <= m, from a precomputed table.
  std::uint64_t choose(int x, int y) const { return table_[static_cast<std::size_t>(x) * (m_ + 1) + y]; }

 private:
  int n_, m_;
  std::uint64_t count_;
  std::vector<std::uint64_t> table_;
};

// All C(n,m) hyperedges in lexicographic (= rank) order.
std::vector<HyperedgeIndex> enumerate_hyperedges(int n, int m);

}  // namespace hypercorr
