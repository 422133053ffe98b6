#include "hypercorr/permutation.hpp"

#include <algorithm>
#include <cctype>

#include "hypercorr/errors.hpp"

namespace hypercorr {

Permutation::Permutation(std::vector<int> image) : image_(std::move(image)) {
  const int n = static_cast<int>(image_.size());
  if (n == 0) throw ParameterError("permutation must act on at least one label");
  std::vector<bool> seen(n, false);
  for (int v : image_) {
    if (v < 1 || v > n || seen[v - 1]) {
      throw ParameterError("permutation image is not a bijection on {1..n}");
    }
    seen[v - 1] = true;
  }
}

Permutation Permutation::identity(int n) {
  std::vector<int> img(n);
  for (int i = 0; i < n; ++i) img[i] = i + 1;
  return Permutation(std::move(img));
}

Permutation Permutation::compose(const Permutation& sigma) const {
  if (size() != sigma.size()) {
    throw ParameterError("cannot compose permutations of different sizes");
  }
  std::vector<int> img(image_.size());
  for (int v = 1; v <= size(); ++v) img[v - 1] = apply(sigma.apply(v));
  return Permutation(std::move(img));
}

Permutation Permutation::inverse() const {
  std::vector<int> img(image_.size());
  for (int v = 1; v <= size(); ++v) img[image_[v - 1] - 1] = v;
  return Permutation(std::move(img));
}

CycleType::CycleType(std::map<int, std::uint64_t> c) : counts(std::move(c)) {
  for (const auto& [k, cnt] : counts) {
    if (k < 1) throw ParameterError("cycle length must be >= 1");
    (void)cnt;
  }
}

int CycleType::n() const {
  std::uint64_t total = 0;
  for (const auto& [k, cnt] : counts) total += static_cast<std::uint64_t>(k) * cnt;
  return static_cast<int>(total);
}

std::uint64_t CycleType::count(int k) const {
  auto it = counts.find(k);
  return it == counts.end() ? 0 : it->second;
}

std::pair<std::vector<std::vector<int>>, CycleType> cycle_decomposition(const Permutation& pi) {
  const int n = pi.size();
  std::vector<bool> seen(n, false);
  std::vector<std::vector<int>> cycles;
  std::map<int, std::uint64_t> counts;
  for (int start = 1; start <= n; ++start) {
    if (seen[start - 1]) continue;
    std::vector<int> cycle;
    int v = start;
    do {
      seen[v - 1] = true;
      cycle.push_back(v);
      v = pi.apply(v);
    } while (v != start);
    ++counts[static_cast<int>(cycle.size())];
    cycles.push_back(std::move(cycle));
  }
  return {std::move(cycles), CycleType(std::move(counts))};
}

Permutation representative_of_cycle_type(const CycleType& ct) {
  const int n = ct.n();
  if (n < 1) throw ParameterError("cycle type must cover at least one label");
  std::vector<int> img(n);
  int base = 0;
  for (const auto& [k, cnt] : ct.counts) {
    for (std::uint64_t c = 0; c < cnt; ++c) {
      // One k-cycle on labels base+1 .. base+k.
      for (int i = 0; i < k - 1; ++i) img[base + i] = base + i + 2;
      img[base + k - 1] = base + 1;
      base += k;
    }
  }
  return Permutation(std::move(img));
}

Permutation uniform_random_permutation(int n, RngStream& rng) {
  std::vector<int> img(n);
  for (int i = 0; i < n; ++i) img[i] = i + 1;
  for (int i = n - 1; i > 0; --i) {
    const auto j = static_cast<int>(rng.next_below(static_cast<std::uint64_t>(i) + 1));
    std::swap(img[i], img[j]);
  }
  return Permutation(std::move(img));
}

std::string format_cycles(const Permutation& pi) {
  auto [cycles, ct] = cycle_decomposition(pi);
  std::string out;
  for (const auto& cycle : cycles) {
    if (cycle.size() == 1) continue;
    out += '(';
    for (std::size_t i = 0; i < cycle.size(); ++i) {
      if (i > 0) out += ' ';
      out += std::to_string(cycle[i]);
    }
    out += ')';
  }
  if (out.empty()) out = "()";
  return out;
}

Permutation parse_cycles(const std::string& text, int n) {
  if (n < 1) throw ParameterError("permutation size must be >= 1");
  std::vector<int> img(n);
  for (int i = 0; i < n; ++i) img[i] = i + 1;

  std::size_t pos = 0;
  auto skip_ws = [&] {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
  };
  skip_ws();
  if (text.compare(pos, 2, "id") == 0) return Permutation(std::move(img));

  bool any = false;
  while (pos < text.size()) {
    skip_ws();
    if (pos >= text.size()) break;
    if (text[pos] != '(') {
      throw ParameterError("cycle notation: expected '(' in \"" + text + "\"");
    }
    ++pos;
    std::vector<int> cycle;
    for (;;) {
      skip_ws();
      if (pos < text.size() && text[pos] == ')') {
        ++pos;
        break;
      }
      if (pos < text.size() && text[pos] == ',') {
        ++pos;
        continue;
      }
      std::size_t digits = 0;
      int v = 0;
      while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) {
        v = v * 10 + (text[pos] - '0');
        ++pos;
        ++digits;
      }
      if (digits == 0) {
        throw ParameterError("cycle notation: expected label or ')' in \"" + text + "\"");
      }
      if (v < 1 || v > n) {
        throw ParameterError("cycle notation: label " + std::to_string(v) +
                             " outside 1.." + std::to_string(n));
      }
      cycle.push_back(v);
    }
    any = true;
    // (a b c) sends a->b, b->c, c->a.
    for (std::size_t i = 0; i < cycle.size(); ++i) {
      const int from = cycle[i];
      const int to = cycle[(i + 1) % cycle.size()];
      if (img[from - 1] != from) {
        throw ParameterError("cycle notation: label " + std::to_string(from) +
                             " appears in two cycles");
      }
      img[from - 1] = to;
    }
  }
  if (!any && text.find('(') == std::string::npos) {
    throw ParameterError("cycle notation: cannot parse \"" + text + "\"");
  }
  return Permutation(std::move(img));
}

}  // namespace hypercorr
