#include "ogp/partition.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "ogp/error.hpp"

namespace ogp {

Partition::Partition(std::vector<Label> labels, std::size_t k) : labels_(std::move(labels)), k_(k) {
  if (k_ == 0) throw ParameterError("partition needs k >= 1");
  for (std::size_t u = 0; u < labels_.size(); ++u) {
    if (labels_[u] >= k_) {
      throw ParameterError("label " + std::to_string(labels_[u]) + " of node " + std::to_string(u) +
                           " is not below k=" + std::to_string(k_));
    }
  }
}

std::vector<std::size_t> Partition::part_sizes() const {
  std::vector<std::size_t> sizes(k_, 0);
  for (Label l : labels_) ++sizes[l];
  return sizes;
}

std::size_t Partition::nonempty_parts() const {
  const auto sizes = part_sizes();
  return static_cast<std::size_t>(std::count_if(sizes.begin(), sizes.end(), [](std::size_t s) { return s > 0; }));
}

void Partition::set(std::size_t u, Label label) {
  if (u >= labels_.size()) throw ParameterError("node " + std::to_string(u) + " out of range");
  if (label >= k_) throw ParameterError("label " + std::to_string(label) + " out of range");
  labels_[u] = label;
}

std::vector<std::pair<std::size_t, std::size_t>> planted_block_ranges(std::size_t n, std::size_t k) {
  if (k == 0 || n < k) throw ParameterError("planted partition needs n >= k >= 1");
  std::vector<std::pair<std::size_t, std::size_t>> ranges;
  ranges.reserve(k);
  const std::size_t base = n / k;
  const std::size_t extra = n % k;
  std::size_t begin = 0;
  for (std::size_t j = 0; j < k; ++j) {
    const std::size_t size = base + (j < extra ? 1 : 0);
    ranges.emplace_back(begin, begin + size);
    begin += size;
  }
  return ranges;
}

Partition planted_partition(std::size_t n, std::size_t k) {
  std::vector<Label> labels(n);
  const auto ranges = planted_block_ranges(n, k);
  for (std::size_t j = 0; j < k; ++j) {
    std::fill(labels.begin() + static_cast<std::ptrdiff_t>(ranges[j].first),
              labels.begin() + static_cast<std::ptrdiff_t>(ranges[j].second), static_cast<Label>(j));
  }
  return Partition(std::move(labels), k);
}

void save_partition(const Partition& part, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot open " + path + " for writing");
  for (Label l : part.labels()) out << l << '\n';
  if (!out) throw IoError("write failed: " + path);
}

Partition load_partition(const std::string& path, std::size_t k) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path);
  std::vector<Label> labels;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    std::istringstream ls(line);
    long long value = -1;
    std::string rest;
    if (!(ls >> value) || (ls >> rest) || value < 0) throw ParseError("malformed label '" + line + "'", lineno);
    if (static_cast<unsigned long long>(value) >= k) {
      throw ParseError("label " + std::to_string(value) + " not below k=" + std::to_string(k), lineno);
    }
    labels.push_back(static_cast<Label>(value));
  }
  return Partition(std::move(labels), k);
}

}  // namespace ogp
