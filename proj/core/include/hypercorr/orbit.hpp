#pragma once

#include <cstdint>
#include <map>

#include "hypercorr/combinatorics.hpp"
#include "hypercorr/permutation.hpp"

namespace hypercorr {

// A node permutation acts on hyperedges by relabeling every vertex; the edge
// set of the complete m-uniform hypergraph splits into orbits under that
// action. counts[k] is the number of orbits of length k.
struct OrbitProfile {
  std::map<std::uint64_t, std::uint64_t> counts;

  std::uint64_t count(std::uint64_t k) const;
  // Sum of k * counts[k]; always equals C(n,m).
  std::uint64_t total_edges() const;
  bool operator==(const OrbitProfile&) const = default;
};

// Image of one hyperedge under the node permutation, re-sorted to canonical
// (strictly increasing) form.
HyperedgeIndex apply_to_edge(const Permutation& pi, const HyperedgeIndex& e);

// Orbit-length histogram by explicit traversal: walk each unvisited edge
// forward until it returns to itself, marking ranks in a visited bitmap.
// Memory is one bit per edge; requires m <= n.
OrbitProfile orbit_profile(const Permutation& pi, int m);

// Number of fixed hyperedges (orbits of length 1) directly from the cycle
// type: an edge is fixed iff it is a union of whole cycles, so
// N1 = sum over (j_1..j_m) with sum k*j_k = m of prod_k C(n_k, j_k).
// For m=3 this collapses to C(n_1,3) + n_1*n_2 + n_3.
std::uint64_t fixed_edge_count_closed_form(const CycleType& ct, int m);

}  // namespace hypercorr
