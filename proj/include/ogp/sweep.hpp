#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ogp/partition.hpp"
#include "ogp/sbm_graph.hpp"

namespace ogp {

struct LandscapePoint {
  double d = 0.0;
  double t = 0.0;
  double g_max_theory = 0.0;
  double h_value = 0.0;
  double modularity_theory = 0.0;
  // Best modularity found in the distance band; a lower bound on H(d).
  std::optional<double> H_empirical;
  std::string best_start;
  std::uint64_t search_steps = 0;
};

// Theory columns only: t = dk, the closed-form g maximum, h(d) and
// prefactor * h(d).
LandscapePoint theory_point(const BlockModelParams& model, double d);

struct BandSearchResult {
  Partition partition;
  double modularity = 0.0;
  double distance = 0.0;
  std::uint64_t steps = 0;
};

// Best-improvement single-node moves, rejecting any move whose result leaves
// the distance band [lo, hi]. Stops after `budget` moves or at a band-local
// maximum.
BandSearchResult band_local_search(const Graph& graph, const Partition& planted, const Partition& start, double lo,
                                   double hi, std::uint64_t budget);

struct SweepOptions {
  std::vector<double> d_values;
  // Half-width of the distance band; 1/sqrt(n) when not set.
  std::optional<double> band;
  // Moves per start; ceil(sqrt(n)) when not set, enough to cross the band
  // half-width once.
  std::optional<std::uint64_t> search_budget;
};

// For each d: the k(k-1) interpolated optimizer partitions at t = dk, each
// followed by a band-constrained local search; H_empirical is the best score.
std::vector<LandscapePoint> empirical_H_sweep(const Graph& graph, const Partition& planted,
                                              const BlockModelParams& model, const SweepOptions& opts);

// Exact max of q over all k^n labelings with distance in [d - band, d + band];
// tiny graphs only. Empty when no labeling lies in the band.
std::optional<double> exhaustive_H(const Graph& graph, const Partition& planted, double d, double band);

}  // namespace ogp
