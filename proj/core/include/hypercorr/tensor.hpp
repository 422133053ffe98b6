#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <utility>
#include <vector>

#include "hypercorr/combinatorics.hpp"
#include "hypercorr/permutation.hpp"

namespace hypercorr {

// Symmetric m-uniform edge-value map on {1..n}: one value per sorted
// m-subset, stored densely by hyperedge rank. Real-valued for weighted
// hypergraphs, {0,1}-valued for unweighted ones. Repeated-index entries
// (self loops) do not exist in this representation.
class AdjacencyTensor {
 public:
  AdjacencyTensor(int n, int m);  // zero-filled
  AdjacencyTensor(int n, int m, std::vector<double> values);

  int n() const { return space_.n(); }
  int m() const { return space_.m(); }
  const EdgeSpace& edges() const { return space_; }
  std::uint64_t edge_count() const { return space_.count(); }

  double operator[](std::uint64_t rank) const { return values_[rank]; }
  double& operator[](std::uint64_t rank) { return values_[rank]; }
  double at_edge(const HyperedgeIndex& e) const { return values_[space_.rank(e)]; }
  const std::vector<double>& values() const { return values_; }

  // True iff every entry is exactly 0.0 or 1.0.
  bool is_binary() const;

  // Tensor B with B_{tau(e)} = A_e for every edge e.
  AdjacencyTensor relabeled(const Permutation& tau) const;

  bool operator==(const AdjacencyTensor&) const;

 private:
  EdgeSpace space_;
  std::vector<double> values_;
};

// Provenance carried in the serialized form's JSON header line.
struct TensorHeader {
  int n = 0;
  int m = 0;
  std::string model;       // "gaussian" | "er" | freeform
  std::string hypothesis;  // "h0" | "h1"
  std::uint64_t seed = 0;

  bool operator==(const TensorHeader&) const = default;
};

// On-disk format (stable):
//   line 1: "# " + JSON header {"hypothesis","m","model","n","seed"}
//   line 2: "rank,value"
//   then one "rank,value" row per edge, ranks ascending 0..C(n,m)-1,
//   values printed as shortest round-trip decimals.
void write_tensor_csv(const AdjacencyTensor& a, const TensorHeader& header,
                      const std::filesystem::path& path);
std::pair<AdjacencyTensor, TensorHeader> read_tensor_csv(const std::filesystem::path& path);

}  // namespace hypercorr
