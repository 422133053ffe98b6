#include "hypercorr/tensor.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "hypercorr/errors.hpp"
#include "hypercorr/format.hpp"
#include "hypercorr/orbit.hpp"

namespace hypercorr {

AdjacencyTensor::AdjacencyTensor(int n, int m) : space_(n, m), values_(space_.count(), 0.0) {}

AdjacencyTensor::AdjacencyTensor(int n, int m, std::vector<double> values)
    : space_(n, m), values_(std::move(values)) {
  if (values_.size() != space_.count()) {
    throw ParameterError("tensor needs exactly " + std::to_string(space_.count()) +
                         " values, got " + std::to_string(values_.size()));
  }
}

bool AdjacencyTensor::is_binary() const {
  for (double v : values_) {
    if (v != 0.0 && v != 1.0) return false;
  }
  return true;
}

AdjacencyTensor AdjacencyTensor::relabeled(const Permutation& tau) const {
  if (tau.size() != n()) {
    throw ParameterError("relabeling permutation size does not match tensor n");
  }
  AdjacencyTensor out(n(), m());
  for (std::uint64_t r = 0; r < edge_count(); ++r) {
    HyperedgeIndex img = apply_to_edge(tau, space_.unrank(r));
    out.values_[space_.rank(img)] = values_[r];
  }
  return out;
}

bool AdjacencyTensor::operator==(const AdjacencyTensor& other) const {
  return n() == other.n() && m() == other.m() && values_ == other.values_;
}

void write_tensor_csv(const AdjacencyTensor& a, const TensorHeader& header,
                      const std::filesystem::path& path) {
  nlohmann::json j;
  j["n"] = header.n;
  j["m"] = header.m;
  j["model"] = header.model;
  j["hypothesis"] = header.hypothesis;
  j["seed"] = header.seed;

  std::ofstream out(path);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  out << "# " << j.dump() << "\n";
  out << "rank,value\n";
  for (std::uint64_t r = 0; r < a.edge_count(); ++r) {
    out << r << ',' << format_double(a[r]) << '\n';
  }
  if (!out) throw IoError("failed while writing " + path.string());
}

std::pair<AdjacencyTensor, TensorHeader> read_tensor_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path.string() + " for reading");

  std::string line;
  if (!std::getline(in, line) || line.rfind("# ", 0) != 0) {
    throw ParameterError("tensor file " + path.string() + ": missing '# {json}' header line");
  }
  nlohmann::json j = nlohmann::json::parse(line.substr(2), nullptr, false);
  if (j.is_discarded()) {
    throw ParameterError("tensor file " + path.string() + ": malformed JSON header");
  }
  TensorHeader header;
  try {
    header.n = j.at("n").get<int>();
    header.m = j.at("m").get<int>();
    header.model = j.at("model").get<std::string>();
    header.hypothesis = j.at("hypothesis").get<std::string>();
    header.seed = j.at("seed").get<std::uint64_t>();
  } catch (const nlohmann::json::exception& e) {
    throw ParameterError("tensor file " + path.string() + ": bad header field: " + e.what());
  }

  if (!std::getline(in, line) || line != "rank,value") {
    throw ParameterError("tensor file " + path.string() + ": expected 'rank,value' column line");
  }

  AdjacencyTensor a(header.n, header.m);
  std::uint64_t expected = 0;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto comma = line.find(',');
    if (comma == std::string::npos) {
      throw ParameterError("tensor file " + path.string() + ": bad row \"" + line + "\"");
    }
    std::uint64_t rank = 0;
    try {
      rank = std::stoull(line.substr(0, comma));
    } catch (const std::exception&) {
      throw ParameterError("tensor file " + path.string() + ": bad rank in \"" + line + "\"");
    }
    if (rank != expected || rank >= a.edge_count()) {
      throw ParameterError("tensor file " + path.string() + ": ranks must run 0.." +
                           std::to_string(a.edge_count() - 1) + " in order");
    }
    a[rank] = parse_double(line.substr(comma + 1));
    ++expected;
  }
  if (expected != a.edge_count()) {
    throw ParameterError("tensor file " + path.string() + ": expected " +
                         std::to_string(a.edge_count()) + " rows, got " +
                         std::to_string(expected));
  }
  return {std::move(a), header};
}

}  // namespace hypercorr
