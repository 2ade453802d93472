#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "ogp/partition.hpp"

namespace ogp {

// Stochastic block model parameters. Edge probabilities are p = omega*a/n
// inside a block and q = omega*b/n between blocks.
struct BlockModelParams {
  std::size_t n = 0;
  std::size_t k = 2;
  double a = 1.0;
  double b = 0.5;
  double omega = 1.0;

  double p() const { return omega * a / static_cast<double>(n); }
  double q() const { return omega * b / static_cast<double>(n); }

  // (a-b)/(a+(k-1)b), the scale between g(X)/k^2 and modularity.
  double prefactor() const { return (a - b) / (a + static_cast<double>(k - 1) * b); }

  // Throws ParameterError unless a > b >= 0, k >= 2, n >= k, omega > 0, p <= 1.
  void validate() const;

  // Parameters reproducing the given probabilities exactly (omega = n).
  static BlockModelParams from_probabilities(std::size_t n, std::size_t k, double p, double q);
};

using Edge = std::pair<Node, Node>;

// Simple undirected graph in compressed adjacency form. Immutable.
class Graph {
 public:
  Graph() = default;
  // Edges are normalized to u < v and sorted. Self-loops and duplicates throw.
  Graph(std::size_t n, std::vector<Edge> edges);

  std::size_t n() const noexcept { return degree_.size(); }
  std::size_t m() const noexcept { return edges_.size(); }
  double volume() const noexcept { return 2.0 * static_cast<double>(edges_.size()); }

  std::size_t degree(Node u) const { return degree_[u]; }
  std::span<const std::uint32_t> degrees() const noexcept { return degree_; }
  std::span<const Node> neighbors(Node u) const {
    return {adjacency_.data() + offset_[u], adjacency_.data() + offset_[u + 1]};
  }
  std::span<const Edge> edges() const noexcept { return edges_; }

  bool operator==(const Graph& other) const {
    return n() == other.n() && edges_ == other.edges_;
  }

 private:
  std::vector<Edge> edges_;
  std::vector<std::uint32_t> degree_;
  std::vector<std::size_t> offset_;
  std::vector<Node> adjacency_;
};

struct SbmInstance {
  Graph graph;
  Partition planted;
};

// Samples G(n, k, p, q). Pairs are drawn per block pair with geometric
// skipping, so the cost is O(m + k^2). Throws DegenerateGraphError if the
// sample has no edges.
SbmInstance generate_sbm(const BlockModelParams& params, std::uint64_t seed);

// Quadratic Bernoulli-per-pair sampler with the same law; used as a
// statistical reference for the skipping sampler.
SbmInstance generate_sbm_dense(const BlockModelParams& params, std::uint64_t seed);

// Deterministic mean-field weights: w_uv = p within a planted block, q
// between blocks, w_uu = 0. Requires k | n.
class WeightedBlockGraph {
 public:
  explicit WeightedBlockGraph(const BlockModelParams& params);

  const BlockModelParams& params() const noexcept { return params_; }
  const Partition& planted() const noexcept { return planted_; }
  std::size_t n() const noexcept { return params_.n; }

  double weight(Node u, Node v) const;
  // Weighted degree; the same for every node.
  double degree() const noexcept { return degree_; }
  double volume() const noexcept { return degree_ * static_cast<double>(params_.n); }

  // e_w(S) = sum of w over unordered pairs inside S; vol_w(S) = |S| d^(w).
  double intra_weight(std::span<const Node> nodes) const;
  double volume(std::span<const Node> nodes) const;

 private:
  BlockModelParams params_;
  Partition planted_;
  std::size_t block_size_;
  double degree_;
};

// Edge list text format: header "n m", then one "u v" line per edge, u < v.
void save_graph(const Graph& graph, const std::string& path);
Graph load_graph(const std::string& path);
void write_graph(const Graph& graph, std::ostream& out);
Graph read_graph(std::istream& in);

}  // namespace ogp
