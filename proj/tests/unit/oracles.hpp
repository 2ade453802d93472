#pragma once

// Brute-force references used only by the tests. Deliberately written from
// the definitions, without the library's caches or solvers.

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include "ogp/partition.hpp"
#include "ogp/sbm_graph.hpp"

namespace oracle {

// 1 - max over all k! alignments of the matched overlap, divided by n.
inline double distance(const ogp::Partition& a, const ogp::Partition& p) {
  const std::size_t k = a.k();
  std::vector<std::size_t> perm(k);
  std::iota(perm.begin(), perm.end(), std::size_t{0});
  long long best = -1;
  do {
    long long s = 0;
    for (std::size_t u = 0; u < a.n(); ++u) s += a[u] == perm[p[u]];
    best = std::max(best, s);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return 1.0 - static_cast<double>(best) / static_cast<double>(a.n());
}

// Pairwise form: (1/2m) sum_{u,v} (A_uv - d_u d_v / 2m) [same part].
inline double modularity(const ogp::Graph& g, const ogp::Partition& a) {
  const std::size_t n = g.n();
  std::vector<std::vector<char>> adj(n, std::vector<char>(n, 0));
  for (const auto& [u, v] : g.edges()) adj[u][v] = adj[v][u] = 1;
  const double two_m = 2.0 * static_cast<double>(g.m());
  double s = 0.0;
  for (std::size_t u = 0; u < n; ++u)
    for (std::size_t v = 0; v < n; ++v)
      if (a[u] == a[v])
        s += adj[u][v] - static_cast<double>(g.degree(static_cast<ogp::Node>(u))) *
                             static_cast<double>(g.degree(static_cast<ogp::Node>(v))) / two_m;
  return s / two_m;
}

// Weighted modularity straight from the O(n^2) weight sums.
inline double weighted_modularity(const ogp::WeightedBlockGraph& w, const ogp::Partition& a) {
  const std::size_t n = w.n();
  double total = 0.0;
  std::vector<double> vol(a.k(), 0.0);
  std::vector<double> inside(a.k(), 0.0);
  for (std::size_t u = 0; u < n; ++u)
    for (std::size_t v = 0; v < n; ++v) {
      if (u == v) continue;
      const double x = w.weight(static_cast<ogp::Node>(u), static_cast<ogp::Node>(v));
      total += x;
      vol[a[u]] += x;
      if (a[u] == a[v]) inside[a[u]] += x;
    }
  double q = 0.0;
  for (std::size_t c = 0; c < a.k(); ++c) q += inside[c] / total - (vol[c] / total) * (vol[c] / total);
  return q;
}

// g(X) = sum_i sum_{j<j'} (x_ij - x_ij')^2 on a plain row-major array.
inline double g(const std::vector<std::vector<double>>& x) {
  double s = 0.0;
  for (const auto& row : x)
    for (std::size_t j = 0; j < row.size(); ++j)
      for (std::size_t jj = j + 1; jj < row.size(); ++jj) s += (row[j] - row[jj]) * (row[j] - row[jj]);
  return s;
}

}  // namespace oracle
