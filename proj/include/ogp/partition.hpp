#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace ogp {

using Node = std::uint32_t;
using Label = std::uint32_t;

// Assignment of n nodes to at most k labelled parts. Parts may be empty.
class Partition {
 public:
  Partition() = default;
  Partition(std::vector<Label> labels, std::size_t k);

  std::size_t n() const noexcept { return labels_.size(); }
  std::size_t k() const noexcept { return k_; }
  Label operator[](std::size_t u) const { return labels_[u]; }
  std::span<const Label> labels() const noexcept { return labels_; }

  std::vector<std::size_t> part_sizes() const;
  std::size_t nonempty_parts() const;

  // Relabel node u. Throws on out-of-range node or label.
  void set(std::size_t u, Label label);

  bool operator==(const Partition&) const = default;

 private:
  std::vector<Label> labels_;
  std::size_t k_ = 0;
};

// Contiguous planted blocks; the first n mod k blocks get the extra node.
Partition planted_partition(std::size_t n, std::size_t k);

// Half-open node ranges [begin, end) of the planted blocks.
std::vector<std::pair<std::size_t, std::size_t>> planted_block_ranges(std::size_t n, std::size_t k);

// One integer label per line, n lines.
void save_partition(const Partition& part, const std::string& path);
Partition load_partition(const std::string& path, std::size_t k);

}  // namespace ogp
