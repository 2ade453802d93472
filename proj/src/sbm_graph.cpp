#include "ogp/sbm_graph.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "ogp/error.hpp"
#include "ogp/rng.hpp"

namespace ogp {

void BlockModelParams::validate() const {
  if (k < 2) throw ParameterError("k must be at least 2");
  if (n < k) throw ParameterError("n must be at least k");
  if (!(b >= 0.0)) throw ParameterError("b must be non-negative");
  if (!(a > b)) throw ParameterError("a must exceed b");
  if (!(omega > 0.0)) throw ParameterError("omega must be positive");
  if (!(p() <= 1.0)) throw ParameterError("derived p = omega*a/n exceeds 1");
}

BlockModelParams BlockModelParams::from_probabilities(std::size_t n, std::size_t k, double p, double q) {
  BlockModelParams params{n, k, p, q, static_cast<double>(n)};
  params.validate();
  return params;
}

Graph::Graph(std::size_t n, std::vector<Edge> edges) : edges_(std::move(edges)), degree_(n, 0) {
  for (auto& [u, v] : edges_) {
    if (u >= n || v >= n) throw ParameterError("edge endpoint out of range");
    if (u == v) throw ParameterError("self-loop at node " + std::to_string(u));
    if (u > v) std::swap(u, v);
  }
  std::sort(edges_.begin(), edges_.end());
  if (auto dup = std::adjacent_find(edges_.begin(), edges_.end()); dup != edges_.end()) {
    throw ParameterError("duplicate edge " + std::to_string(dup->first) + " " + std::to_string(dup->second));
  }
  for (const auto& [u, v] : edges_) {
    ++degree_[u];
    ++degree_[v];
  }
  offset_.assign(n + 1, 0);
  for (std::size_t u = 0; u < n; ++u) offset_[u + 1] = offset_[u] + degree_[u];
  adjacency_.resize(offset_[n]);
  std::vector<std::size_t> fill(offset_.begin(), offset_.end() - 1);
  for (const auto& [u, v] : edges_) {
    adjacency_[fill[u]++] = v;
    adjacency_[fill[v]++] = u;
  }
}

namespace {

void check_nonempty(const std::vector<Edge>& edges) {
  if (edges.empty()) throw DegenerateGraphError("sampled graph has no edges; modularity is undefined");
}

// Pairs (u, v), u < v, inside the block starting at `begin` of size `size`.
void sample_within(std::size_t begin, std::size_t size, double p, Rng& rng, std::vector<Edge>& out) {
  if (size < 2 || p <= 0.0) return;
  const double log1m = std::log1p(-p);
  std::size_t u = 0;
  std::size_t v = 1;
  std::uint64_t skip = rng.geometric_skip(log1m);
  // Walk the lower triangle row by row: v = 1.., u = 0..v-1.
  while (true) {
    std::uint64_t advance = skip;
    while (advance > 0 && v < size) {
      const std::uint64_t room = v - u;
      if (advance < room) {
        u += advance;
        advance = 0;
      } else {
        advance -= room;
        ++v;
        u = 0;
      }
    }
    if (v >= size) return;
    out.emplace_back(static_cast<Node>(begin + u), static_cast<Node>(begin + v));
    skip = rng.geometric_skip(log1m);
    if (skip == UINT64_MAX) return;
    ++skip;
  }
}

void sample_between(std::size_t begin_a, std::size_t size_a, std::size_t begin_b, std::size_t size_b, double p,
                    Rng& rng, std::vector<Edge>& out) {
  if (size_a == 0 || size_b == 0 || p <= 0.0) return;
  const double log1m = std::log1p(-p);
  const std::uint64_t total = static_cast<std::uint64_t>(size_a) * size_b;
  std::uint64_t idx = rng.geometric_skip(log1m);
  while (idx < total) {
    out.emplace_back(static_cast<Node>(begin_a + idx / size_b), static_cast<Node>(begin_b + idx % size_b));
    const std::uint64_t step = rng.geometric_skip(log1m);
    if (step >= total) break;
    idx += step + 1;
  }
}

}  // namespace

SbmInstance generate_sbm(const BlockModelParams& params, std::uint64_t seed) {
  params.validate();
  const auto ranges = planted_block_ranges(params.n, params.k);
  const double p = params.p();
  const double q = params.q();
  std::vector<Edge> edges;
  const double expected = 0.5 * static_cast<double>(params.n) * static_cast<double>(params.n) *
                          (p / static_cast<double>(params.k) + q);
  edges.reserve(static_cast<std::size_t>(expected * 1.1) + 16);
  // One stream per block pair keeps samples independent of traversal order.
  std::uint64_t stream = 0;
  for (std::size_t i = 0; i < params.k; ++i) {
    for (std::size_t j = i; j < params.k; ++j, ++stream) {
      Rng rng(seed, stream);
      const auto [bi, ei] = ranges[i];
      const auto [bj, ej] = ranges[j];
      if (i == j) {
        sample_within(bi, ei - bi, p, rng, edges);
      } else {
        sample_between(bi, ei - bi, bj, ej - bj, q, rng, edges);
      }
    }
  }
  check_nonempty(edges);
  return {Graph(params.n, std::move(edges)), planted_partition(params.n, params.k)};
}

SbmInstance generate_sbm_dense(const BlockModelParams& params, std::uint64_t seed) {
  params.validate();
  Partition planted = planted_partition(params.n, params.k);
  const double p = params.p();
  const double q = params.q();
  Rng rng(seed);
  std::vector<Edge> edges;
  for (std::size_t u = 0; u < params.n; ++u) {
    for (std::size_t v = u + 1; v < params.n; ++v) {
      const double prob = planted[u] == planted[v] ? p : q;
      if (rng.uniform() < prob) edges.emplace_back(static_cast<Node>(u), static_cast<Node>(v));
    }
  }
  check_nonempty(edges);
  return {Graph(params.n, std::move(edges)), std::move(planted)};
}

WeightedBlockGraph::WeightedBlockGraph(const BlockModelParams& params) : params_(params) {
  params_.validate();
  if (params_.n % params_.k != 0) {
    throw ParameterError("weighted block graph requires n divisible by k");
  }
  planted_ = planted_partition(params_.n, params_.k);
  block_size_ = params_.n / params_.k;
  const double p = params_.p();
  const double q = params_.q();
  degree_ = static_cast<double>(params_.n - 1) * q + static_cast<double>(block_size_ - 1) * (p - q);
}

double WeightedBlockGraph::weight(Node u, Node v) const {
  if (u == v) return 0.0;
  return planted_[u] == planted_[v] ? params_.p() : params_.q();
}

double WeightedBlockGraph::intra_weight(std::span<const Node> nodes) const {
  std::vector<double> per_block(params_.k, 0.0);
  for (Node u : nodes) per_block[planted_[u]] += 1.0;
  const double s = static_cast<double>(nodes.size());
  double within = 0.0;
  for (double c : per_block) within += 0.5 * c * (c - 1.0);
  return params_.q() * 0.5 * s * (s - 1.0) + (params_.p() - params_.q()) * within;
}

double WeightedBlockGraph::volume(std::span<const Node> nodes) const {
  return degree_ * static_cast<double>(nodes.size());
}

void write_graph(const Graph& graph, std::ostream& out) {
  out << graph.n() << ' ' << graph.m() << '\n';
  for (const auto& [u, v] : graph.edges()) out << u << ' ' << v << '\n';
}

Graph read_graph(std::istream& in) {
  std::string line;
  std::size_t lineno = 0;
  auto next_line = [&]() -> bool {
    while (std::getline(in, line)) {
      ++lineno;
      if (!line.empty()) return true;
    }
    return false;
  };
  if (!next_line()) throw ParseError("missing header line", lineno + 1);
  long long n = -1;
  long long m = -1;
  {
    std::istringstream hs(line);
    std::string rest;
    if (!(hs >> n >> m) || (hs >> rest) || n < 0 || m < 0) throw ParseError("malformed header '" + line + "'", lineno);
  }
  std::vector<Edge> edges;
  edges.reserve(static_cast<std::size_t>(m));
  std::vector<std::pair<Edge, std::size_t>> seen;
  seen.reserve(static_cast<std::size_t>(m));
  while (next_line()) {
    std::istringstream ls(line);
    long long u = -1;
    long long v = -1;
    std::string rest;
    if (!(ls >> u >> v) || (ls >> rest)) throw ParseError("malformed edge line '" + line + "'", lineno);
    if (u < 0 || v < 0 || u >= n || v >= n) throw ParseError("node id out of range in '" + line + "'", lineno);
    if (u == v) throw ParseError("self-loop '" + line + "'", lineno);
    if (u > v) std::swap(u, v);
    Edge e{static_cast<Node>(u), static_cast<Node>(v)};
    edges.push_back(e);
    seen.emplace_back(e, lineno);
  }
  std::sort(seen.begin(), seen.end());
  for (std::size_t i = 1; i < seen.size(); ++i) {
    if (seen[i].first == seen[i - 1].first) {
      throw ParseError("duplicate edge " + std::to_string(seen[i].first.first) + " " +
                           std::to_string(seen[i].first.second),
                       std::max(seen[i].second, seen[i - 1].second));
    }
  }
  if (static_cast<long long>(edges.size()) != m) {
    throw ParseError("header declares " + std::to_string(m) + " edges, found " + std::to_string(edges.size()), lineno);
  }
  return Graph(static_cast<std::size_t>(n), std::move(edges));
}

void save_graph(const Graph& graph, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot open " + path + " for writing");
  write_graph(graph, out);
  if (!out) throw IoError("write failed: " + path);
}

Graph load_graph(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path);
  return read_graph(in);
}

}  // namespace ogp
