#pragma once

#include <span>
#include <vector>

#include "ogp/partition.hpp"
#include "ogp/partition_algebra.hpp"
#include "ogp/sbm_graph.hpp"

namespace ogp {

// q = coverage - degree_tax, with coverage = sum_A e(A)/m and
// degree_tax = sum_A (vol(A)/vol(V))^2.
struct ModularityBreakdown {
  double score = 0.0;
  double coverage = 0.0;
  double degree_tax = 0.0;
};

// Full recomputation, O(n + m). Throws DegenerateGraphError when m = 0.
ModularityBreakdown modularity(const Graph& graph, const Partition& part);

// Modularity on the mean-field weights, evaluated in O(k^2) from the overlap
// counts against the planted blocks (exact, not the large-n limit).
ModularityBreakdown weighted_modularity(const WeightedBlockGraph& wgraph, const Partition& part);
ModularityBreakdown weighted_modularity(const WeightedBlockGraph& wgraph, const CountMatrix& counts);

// Large-n limit prefactor * g(X) / k^2 of the modularity of any partition
// with signature X.
double mean_field_prediction(const BlockModelParams& params, const Signature& sig);

// Cached per-part volumes, intra-part edge counts and per-node neighbor counts
// supporting O(1) move deltas and O(deg + k) moves. Single owner; the graph
// must outlive the state.
class MoveState {
 public:
  MoveState(const Graph& graph, Partition start);

  const Graph& graph() const noexcept { return *graph_; }
  const Partition& partition() const noexcept { return part_; }
  std::size_t n() const noexcept { return part_.n(); }
  std::size_t k() const noexcept { return part_.k(); }
  Label label(Node u) const { return part_[u]; }

  ModularityBreakdown breakdown() const;
  double score() const;

  // 4 m^2 (q_after - q_before) for relabeling u to `to`; exact in integers.
  long long delta_numerator(Node u, Label to) const {
    const Label from = part_[u];
    if (from == to) return 0;
    const long long d = graph_->degree(u);
    const long long* counts = &neighbor_counts_[static_cast<std::size_t>(u) * k()];
    return (counts[to] - counts[from]) * four_m_ - 2 * d * (volume_[to] - volume_[from] + d);
  }
  double delta_scale() const noexcept { return inv_four_m2_; }

  // q_after - q_before, without mutating.
  double move_delta(Node u, Label to) const;
  void apply_move(Node u, Label to);

  long long part_volume(Label c) const { return volume_[c]; }
  long long part_edges(Label c) const { return internal_[c]; }
  long long neighbors_in(Node u, Label c) const { return neighbor_counts_[static_cast<std::size_t>(u) * k() + c]; }

  // Compares every cache against a recount; throws InvariantError on mismatch.
  void verify() const;

 private:
  void check_move(Node u, Label to) const;

  const Graph* graph_;
  Partition part_;
  std::vector<long long> volume_;
  std::vector<long long> internal_;
  std::vector<long long> neighbor_counts_;
  long long four_m_;
  double inv_four_m2_;
};

struct FatteningParams {
  double eta = 0.0;
  // Volume fraction of the eta-small parts of the input.
  double zeta = 0.0;
};

struct AmalgamationResult {
  Partition partition;
  FatteningParams params;
  double modularity_drop = 0.0;
};

// Merges eta-small parts until every nonempty part has volume at least
// eta * vol(V): the smallest small part is merged into the next smallest part,
// and a last remaining small part into the smallest fat part. Asserts that
// the modularity drop is below 2 eta and at most 2 zeta.
AmalgamationResult amalgamate_eta_fat(const Graph& graph, const Partition& part, double eta);

struct RobustnessGap {
  double delta = 0.0;
  double bound = 0.0;
};

// |q_A(H) - q_A(H - E0)| against the bound 2|E0|/|E|; asserts delta < bound.
// E0 must be a nonempty proper subset of the edges of H.
RobustnessGap robustness_gap(const Graph& graph, const Partition& part, std::span<const Edge> removed);

}  // namespace ogp
