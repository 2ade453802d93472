#include "ogp/sweep.hpp"

#include <algorithm>
#include <cmath>

#include "ogp/dynamics.hpp"
#include "ogp/error.hpp"
#include "ogp/landscape.hpp"
#include "ogp/modularity.hpp"
#include "ogp/parallel.hpp"
#include "ogp/partition_algebra.hpp"

namespace ogp {

LandscapePoint theory_point(const BlockModelParams& model, double d) {
  const std::size_t k = model.k;
  LandscapePoint pt;
  pt.d = d;
  pt.t = d * static_cast<double>(k);
  pt.h_value = h_curve(d, k);
  pt.g_max_theory = max_g_closed_form(k, std::min(1.0, pt.t)).value;
  pt.modularity_theory = model.prefactor() * pt.h_value;
  return pt;
}

BandSearchResult band_local_search(const Graph& graph, const Partition& planted, const Partition& start, double lo,
                                   double hi, std::uint64_t budget) {
  if (!(lo <= hi)) throw ParameterError("empty distance band");
  MoveState state(graph, start);
  DistanceTracker tracker(start, planted);
  const double n = static_cast<double>(start.n());
  // d in [lo, hi] <=> aligned overlap in [amin, amax].
  const auto amin = static_cast<long long>(std::ceil((1.0 - hi) * n - 1e-9));
  const auto amax = static_cast<long long>(std::floor((1.0 - lo) * n + 1e-9));

  struct Cand {
    long long num;
    Node u;
    Label l;
  };
  std::vector<Cand> cands;
  std::uint64_t steps = 0;
  while (steps < budget) {
    cands.clear();
    for (std::size_t u = 0; u < state.n(); ++u) {
      const auto node = static_cast<Node>(u);
      for (Label l = 0; l < state.k(); ++l) {
        const long long num = state.delta_numerator(node, l);
        if (num > 0) cands.push_back({num, node, l});
      }
    }
    std::sort(cands.begin(), cands.end(), [](const Cand& a, const Cand& b) {
      if (a.num != b.num) return a.num > b.num;
      return a.u != b.u ? a.u < b.u : a.l < b.l;
    });
    bool moved = false;
    for (const Cand& c : cands) {
      const Label from = state.label(c.u);
      const std::size_t block = planted[c.u];
      auto [blo, bhi] = tracker.aligned_bounds_after(block, from, c.l);
      if (bhi < amin || blo > amax) continue;
      if (blo < amin || bhi > amax) {
        const double after = tracker.distance_after(block, from, c.l);
        const long long aligned = std::llround((1.0 - after) * n);
        if (aligned < amin || aligned > amax) continue;
      }
      state.apply_move(c.u, c.l);
      tracker.move(block, from, c.l);
      moved = true;
      break;
    }
    if (!moved) break;
    ++steps;
  }
  return {state.partition(), state.score(), tracker.distance(), steps};
}

std::vector<LandscapePoint> empirical_H_sweep(const Graph& graph, const Partition& planted,
                                              const BlockModelParams& model, const SweepOptions& opts) {
  const std::size_t k = planted.k();
  const double root_n = std::sqrt(static_cast<double>(planted.n()));
  const double band = opts.band.value_or(1.0 / root_n);
  const std::uint64_t budget = opts.search_budget.value_or(static_cast<std::uint64_t>(std::ceil(root_n)));
  if (!(band >= 0.0)) throw ParameterError("band must be non-negative");
  for (double d : opts.d_values)
    if (!(d >= 0.0 && d <= 1.0 / static_cast<double>(k) + 1e-12)) throw ParameterError("d values must lie in [0, 1/k]");

  std::vector<LandscapePoint> out(opts.d_values.size());
  parallel_for(opts.d_values.size(), [&](std::size_t idx) {
    const double d = std::min(opts.d_values[idx], 1.0 / static_cast<double>(k));
    LandscapePoint pt = theory_point(model, d);
    double best = -INFINITY;
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t j = 0; j < k; ++j) {
        if (i == j) continue;
        const Partition start = interpolated_partition(planted, i, j, pt.t);
        const BandSearchResult r = band_local_search(graph, planted, start, d - band, d + band, budget);
        pt.search_steps += r.steps;
        if (r.modularity > best) {
          best = r.modularity;
          pt.best_start = "interp(" + std::to_string(i) + "," + std::to_string(j) + ")";
        }
      }
    pt.H_empirical = best;
    out[idx] = std::move(pt);
  });
  return out;
}

std::optional<double> exhaustive_H(const Graph& graph, const Partition& planted, double d, double band) {
  const GibbsTable table = exact_gibbs(graph, planted, 0.0);
  std::optional<double> best;
  for (std::size_t s = 0; s < table.modularity.size(); ++s) {
    if (table.distance[s] < d - band - 1e-12 || table.distance[s] > d + band + 1e-12) continue;
    if (!best || table.modularity[s] > *best) best = table.modularity[s];
  }
  return best;
}

}  // namespace ogp
