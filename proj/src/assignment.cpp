#include "ogp/assignment.hpp"

#include <limits>

namespace ogp {

namespace {

// Minimum-cost assignment of rows to columns for a dense cost table,
// potentials formulation. Returns row_of_col (0-based) and the total cost.
std::pair<std::vector<std::size_t>, long long> hungarian_min(const std::vector<std::vector<long long>>& cost) {
  const std::size_t k = cost.size();
  if (k == 0) return {{}, 0};
  constexpr long long inf = std::numeric_limits<long long>::max() / 4;
  // 1-based: u over rows, v over columns, p[col] = matched row.
  std::vector<long long> u(k + 1, 0), v(k + 1, 0);
  std::vector<std::size_t> p(k + 1, 0), way(k + 1, 0);
  for (std::size_t row = 1; row <= k; ++row) {
    p[0] = row;
    std::size_t j0 = 0;
    std::vector<long long> minv(k + 1, inf);
    std::vector<char> used(k + 1, 0);
    do {
      used[j0] = 1;
      const std::size_t i0 = p[j0];
      long long delta = inf;
      std::size_t j1 = 0;
      for (std::size_t j = 1; j <= k; ++j) {
        if (used[j]) continue;
        const long long cur = cost[i0 - 1][j - 1] - u[i0] - v[j];
        if (cur < minv[j]) {
          minv[j] = cur;
          way[j] = j0;
        }
        if (minv[j] < delta) {
          delta = minv[j];
          j1 = j;
        }
      }
      for (std::size_t j = 0; j <= k; ++j) {
        if (used[j]) {
          u[p[j]] += delta;
          v[j] -= delta;
        } else {
          minv[j] -= delta;
        }
      }
      j0 = j1;
    } while (p[j0] != 0);
    do {
      const std::size_t j1 = way[j0];
      p[j0] = p[j1];
      j0 = j1;
    } while (j0 != 0);
  }
  std::vector<std::size_t> row_of_col(k);
  long long total = 0;
  for (std::size_t j = 1; j <= k; ++j) {
    row_of_col[j - 1] = p[j] - 1;
    total += cost[p[j] - 1][j - 1];
  }
  return {row_of_col, total};
}

long long best_value(const CountMatrix& w, const std::vector<std::size_t>& rows, const std::vector<std::size_t>& cols) {
  std::vector<std::vector<long long>> cost(rows.size(), std::vector<long long>(cols.size()));
  for (std::size_t a = 0; a < rows.size(); ++a)
    for (std::size_t b = 0; b < cols.size(); ++b) cost[a][b] = -w(rows[a], cols[b]);
  return -hungarian_min(cost).second;
}

}  // namespace

Assignment max_assignment(const CountMatrix& weights) {
  const std::size_t k = weights.k();
  std::vector<std::vector<long long>> cost(k, std::vector<long long>(k));
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j) cost[i][j] = -weights(i, j);
  auto [perm, total] = hungarian_min(cost);
  return {std::move(perm), -total};
}

Assignment max_assignment_lex(const CountMatrix& weights) {
  const std::size_t k = weights.k();
  const long long optimum = max_assignment(weights).value;
  std::vector<std::size_t> perm(k);
  std::vector<char> taken(k, 0);
  long long prefix = 0;
  for (std::size_t j = 0; j < k; ++j) {
    std::vector<std::size_t> cols;
    for (std::size_t c = j + 1; c < k; ++c) cols.push_back(c);
    for (std::size_t a = 0; a < k; ++a) {
      if (taken[a]) continue;
      std::vector<std::size_t> rows;
      for (std::size_t r = 0; r < k; ++r)
        if (!taken[r] && r != a) rows.push_back(r);
      if (prefix + weights(a, j) + best_value(weights, rows, cols) == optimum) {
        perm[j] = a;
        taken[a] = 1;
        prefix += weights(a, j);
        break;
      }
    }
  }
  return {std::move(perm), optimum};
}

}  // namespace ogp
