#include "ogp/modularity.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "ogp/error.hpp"
#include "ogp/landscape.hpp"

namespace ogp {

ModularityBreakdown modularity(const Graph& graph, const Partition& part) {
  if (graph.m() == 0) throw DegenerateGraphError("modularity is undefined for a graph without edges");
  if (graph.n() != part.n()) throw ParameterError("partition size does not match graph");
  const std::size_t k = part.k();
  std::vector<double> internal(k, 0.0);
  std::vector<double> volume(k, 0.0);
  for (const auto& [u, v] : graph.edges())
    if (part[u] == part[v]) internal[part[u]] += 1.0;
  for (std::size_t u = 0; u < graph.n(); ++u) volume[part[u]] += static_cast<double>(graph.degree(static_cast<Node>(u)));
  const double m = static_cast<double>(graph.m());
  const double vol = graph.volume();
  ModularityBreakdown out;
  for (std::size_t c = 0; c < k; ++c) {
    out.coverage += internal[c] / m;
    const double frac = volume[c] / vol;
    out.degree_tax += frac * frac;
  }
  out.score = out.coverage - out.degree_tax;
  return out;
}

ModularityBreakdown weighted_modularity(const WeightedBlockGraph& wgraph, const CountMatrix& counts) {
  const auto& params = wgraph.params();
  const std::size_t k = params.k;
  if (counts.k() != k) throw ParameterError("overlap counts do not match k");
  const double p = params.p();
  const double q = params.q();
  const double total_weight = 0.5 * wgraph.volume();
  if (!(total_weight > 0.0)) throw ParameterError("weight function is identically zero");
  const double n = static_cast<double>(params.n);
  ModularityBreakdown out;
  for (std::size_t i = 0; i < k; ++i) {
    const double size = static_cast<double>(counts.row_sum(i));
    double within = 0.0;
    for (std::size_t j = 0; j < k; ++j) {
      const double c = static_cast<double>(counts(i, j));
      within += 0.5 * c * (c - 1.0);
    }
    const double e = q * 0.5 * size * (size - 1.0) + (p - q) * within;
    out.coverage += e / total_weight;
    // Constant weighted degree: vol_w(A)/vol_w(V) = |A|/n.
    out.degree_tax += (size / n) * (size / n);
  }
  out.score = out.coverage - out.degree_tax;
  return out;
}

ModularityBreakdown weighted_modularity(const WeightedBlockGraph& wgraph, const Partition& part) {
  return weighted_modularity(wgraph, overlap_counts(part, wgraph.planted()));
}

double mean_field_prediction(const BlockModelParams& params, const Signature& sig) {
  const double k = static_cast<double>(sig.k());
  return params.prefactor() * g_of_signature(sig) / (k * k);
}

MoveState::MoveState(const Graph& graph, Partition start) : graph_(&graph), part_(std::move(start)) {
  if (graph.m() == 0) throw DegenerateGraphError("modularity is undefined for a graph without edges");
  if (graph.n() != part_.n()) throw ParameterError("partition size does not match graph");
  const std::size_t k = part_.k();
  volume_.assign(k, 0);
  internal_.assign(k, 0);
  neighbor_counts_.assign(graph.n() * k, 0);
  for (std::size_t u = 0; u < graph.n(); ++u) {
    const auto node = static_cast<Node>(u);
    volume_[part_[u]] += static_cast<long long>(graph.degree(node));
    for (Node v : graph.neighbors(node)) ++neighbor_counts_[u * k + part_[v]];
  }
  for (const auto& [u, v] : graph.edges())
    if (part_[u] == part_[v]) ++internal_[part_[u]];
  four_m_ = 4 * static_cast<long long>(graph.m());
  const double m = static_cast<double>(graph.m());
  inv_four_m2_ = 1.0 / (4.0 * m * m);
}

ModularityBreakdown MoveState::breakdown() const {
  long long edges = 0;
  long long squares = 0;
  for (std::size_t c = 0; c < k(); ++c) {
    edges += internal_[c];
    squares += volume_[c] * volume_[c];
  }
  const double m = static_cast<double>(graph_->m());
  ModularityBreakdown out;
  out.coverage = static_cast<double>(edges) / m;
  out.degree_tax = static_cast<double>(squares) * inv_four_m2_;
  out.score = static_cast<double>(four_m_ * edges - squares) * inv_four_m2_;
  return out;
}

double MoveState::score() const { return breakdown().score; }

void MoveState::check_move(Node u, Label to) const {
  if (u >= n()) throw ParameterError("node " + std::to_string(u) + " out of range");
  if (to >= k()) throw ParameterError("label " + std::to_string(to) + " out of range");
}

double MoveState::move_delta(Node u, Label to) const {
  check_move(u, to);
  return static_cast<double>(delta_numerator(u, to)) * inv_four_m2_;
}

void MoveState::apply_move(Node u, Label to) {
  check_move(u, to);
  const Label from = part_[u];
  if (from == to) return;
  const std::size_t kk = k();
  const long long d = graph_->degree(u);
  internal_[from] -= neighbor_counts_[u * kk + from];
  internal_[to] += neighbor_counts_[u * kk + to];
  volume_[from] -= d;
  volume_[to] += d;
  for (Node v : graph_->neighbors(u)) {
    --neighbor_counts_[static_cast<std::size_t>(v) * kk + from];
    ++neighbor_counts_[static_cast<std::size_t>(v) * kk + to];
  }
  part_.set(u, to);
}

void MoveState::verify() const {
  const MoveState fresh(*graph_, part_);
  if (fresh.volume_ != volume_ || fresh.internal_ != internal_ || fresh.neighbor_counts_ != neighbor_counts_) {
    throw InvariantError("move-state caches diverged from recount");
  }
}

AmalgamationResult amalgamate_eta_fat(const Graph& graph, const Partition& part, double eta) {
  if (!(eta > 0.0 && eta <= 1.0)) throw ParameterError("eta must lie in (0, 1]");
  const double before = modularity(graph, part).score;
  const std::size_t k = part.k();
  const double vol = graph.volume();
  std::vector<double> volume(k, 0.0);
  for (std::size_t u = 0; u < part.n(); ++u) volume[part[u]] += static_cast<double>(graph.degree(static_cast<Node>(u)));
  const auto sizes = part.part_sizes();

  // target[c]: label that original part c ends up in.
  std::vector<Label> target(k);
  std::iota(target.begin(), target.end(), Label{0});
  std::vector<std::size_t> alive;
  for (std::size_t c = 0; c < k; ++c)
    if (sizes[c] > 0) alive.push_back(c);
  const auto is_small = [&](std::size_t c) { return volume[c] < eta * vol; };

  double zeta = 0.0;
  for (std::size_t c : alive)
    if (is_small(c)) zeta += volume[c] / vol;

  const auto by_volume = [&](std::size_t x, std::size_t y) {
    return volume[x] != volume[y] ? volume[x] < volume[y] : x < y;
  };
  while (alive.size() > 1) {
    std::sort(alive.begin(), alive.end(), by_volume);
    const std::size_t small_count =
        static_cast<std::size_t>(std::count_if(alive.begin(), alive.end(), is_small));
    if (small_count == 0) break;
    // With a single small part left, alive[1] is the smallest fat part.
    const std::size_t from = alive[0];
    const std::size_t into = alive[1];
    volume[into] += volume[from];
    volume[from] = 0.0;
    for (auto& t : target)
      if (t == from) t = static_cast<Label>(into);
    alive.erase(alive.begin());
  }

  std::vector<Label> labels(part.n());
  for (std::size_t u = 0; u < part.n(); ++u) labels[u] = target[part[u]];
  Partition merged(std::move(labels), k);
  const double after = modularity(graph, merged).score;
  const double drop = before - after;
  if (!(drop < 2.0 * eta)) {
    throw InvariantError("amalgamation dropped modularity by " + std::to_string(drop) + " >= 2 eta");
  }
  if (!(drop <= 2.0 * zeta + 1e-12)) {
    throw InvariantError("amalgamation dropped modularity by " + std::to_string(drop) + " > 2 zeta");
  }
  return {std::move(merged), {eta, zeta}, drop};
}

RobustnessGap robustness_gap(const Graph& graph, const Partition& part, std::span<const Edge> removed) {
  if (removed.empty()) throw ParameterError("removal set must be nonempty");
  std::vector<Edge> drop(removed.begin(), removed.end());
  for (auto& [u, v] : drop)
    if (u > v) std::swap(u, v);
  std::sort(drop.begin(), drop.end());
  if (std::adjacent_find(drop.begin(), drop.end()) != drop.end()) throw ParameterError("removal set has duplicates");
  std::vector<Edge> kept;
  kept.reserve(graph.m());
  std::size_t matched = 0;
  for (const Edge& e : graph.edges()) {
    if (std::binary_search(drop.begin(), drop.end(), e)) {
      ++matched;
    } else {
      kept.push_back(e);
    }
  }
  if (matched != drop.size()) throw ParameterError("removal set contains edges not in the graph");
  if (kept.empty()) throw ParameterError("removal set must be a proper subset of the edges");
  const Graph reduced(graph.n(), std::move(kept));
  RobustnessGap gap;
  gap.delta = std::abs(modularity(graph, part).score - modularity(reduced, part).score);
  gap.bound = 2.0 * static_cast<double>(drop.size()) / static_cast<double>(graph.m());
  if (!(gap.delta < gap.bound)) {
    throw InvariantError("edge removal changed modularity by " + std::to_string(gap.delta) +
                         ", not below the bound " + std::to_string(gap.bound));
  }
  return gap;
}

}  // namespace ogp
