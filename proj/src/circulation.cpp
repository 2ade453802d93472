#include "ogp/circulation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "ogp/error.hpp"
#include "ogp/landscape.hpp"

namespace ogp {

namespace {

constexpr double kZero = 1e-12;

bool doubly_stochastic(const RealMatrix& x, double tol) {
  for (std::size_t i = 0; i < x.k(); ++i)
    if (std::abs(x.row_sum(i) - 1.0) > tol || std::abs(x.col_sum(i) - 1.0) > tol) return false;
  return true;
}

}  // namespace

Circulation::Circulation(RealMatrix b, double tol) : b_(std::move(b)) {
  const std::size_t k = b_.k();
  for (std::size_t i = 0; i < k; ++i) {
    if (b_(i, i) != 0.0) throw ParameterError("circulation diagonal must be zero");
    for (std::size_t j = 0; j < k; ++j)
      if (!(b_(i, j) >= 0.0)) throw ParameterError("circulation entries must be non-negative");
  }
  for (std::size_t i = 0; i < k; ++i) {
    if (std::abs(b_.row_sum(i) - b_.col_sum(i)) > tol) {
      throw ParameterError("flow conservation fails at node " + std::to_string(i));
    }
  }
}

Circulation Circulation::from_off_diagonal(const RealMatrix& x, double tol) {
  RealMatrix b = x;
  for (std::size_t i = 0; i < b.k(); ++i) b(i, i) = 0.0;
  return Circulation(std::move(b), tol);
}

std::size_t Circulation::support_size() const {
  std::size_t s = 0;
  for (std::size_t i = 0; i < k(); ++i)
    for (std::size_t j = 0; j < k(); ++j)
      if (b_(i, j) > 0.0) ++s;
  return s;
}

RealMatrix CycleDecomposition::reconstruct(std::size_t k) const {
  RealMatrix b(k, 0.0);
  for (std::size_t l = 0; l < cycles.size(); ++l) {
    const auto& c = cycles[l];
    for (std::size_t s = 0; s < c.size(); ++s) b(c[s], c[(s + 1) % c.size()]) += weights[l];
  }
  return b;
}

CycleDecomposition cycle_decompose(const Circulation& c) {
  const std::size_t k = c.k();
  RealMatrix b = c.flow();
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j)
      if (b(i, j) <= kZero) b(i, j) = 0.0;

  const auto next_of = [&](std::size_t u) {
    for (std::size_t v = 0; v < k; ++v)
      if (b(u, v) > 0.0) return v;
    return k;
  };

  CycleDecomposition out;
  std::vector<std::size_t> pos(k);
  for (std::size_t start = 0; start < k; ++start) {
    while (next_of(start) < k) {
      std::vector<std::size_t> path{start};
      std::fill(pos.begin(), pos.end(), k);
      pos[start] = 0;
      std::size_t u = start;
      std::size_t v = next_of(u);
      while (true) {
        if (v == k) {
          // Dead end: only possible when the residual flow into u is rounding noise.
          const std::size_t prev = path[path.size() - 2];
          if (b(prev, u) > 1e-9) throw InvariantError("cycle walk hit a node without out-flow");
          b(prev, u) = 0.0;
          break;
        }
        if (pos[v] != k) {
          std::vector<std::size_t> cycle(path.begin() + static_cast<std::ptrdiff_t>(pos[v]), path.end());
          double w = std::numeric_limits<double>::infinity();
          for (std::size_t s = 0; s < cycle.size(); ++s) w = std::min(w, b(cycle[s], cycle[(s + 1) % cycle.size()]));
          for (std::size_t s = 0; s < cycle.size(); ++s) {
            double& e = b(cycle[s], cycle[(s + 1) % cycle.size()]);
            e = (e == w || e - w <= kZero) ? 0.0 : e - w;
          }
          out.cycles.push_back(std::move(cycle));
          out.weights.push_back(w);
          break;
        }
        pos[v] = path.size();
        path.push_back(v);
        u = v;
        v = next_of(u);
      }
    }
  }
  return out;
}

Signature transfer_move(const Signature& sig, const std::vector<std::size_t>& cycle, double eps) {
  const std::size_t k = sig.k();
  const RealMatrix& x = sig.matrix();
  if (!doubly_stochastic(x, 1e-9)) throw ParameterError("transfer moves need a doubly stochastic signature");
  if (cycle.size() < 2) throw ParameterError("a cycle needs at least two nodes");
  std::vector<bool> seen(k, false);
  for (std::size_t v : cycle) {
    if (v >= k) throw ParameterError("cycle node out of range");
    if (seen[v]) throw ParameterError("cycle must be simple");
    seen[v] = true;
  }
  if (!(eps > 0.0)) throw ParameterError("eps must be positive");
  double bottleneck = std::numeric_limits<double>::infinity();
  for (std::size_t s = 0; s < cycle.size(); ++s) bottleneck = std::min(bottleneck, x(cycle[s], cycle[(s + 1) % cycle.size()]));
  if (eps > bottleneck + 1e-15) throw ParameterError("eps exceeds a cycle-edge entry");

  RealMatrix y = x;
  for (std::size_t s = 0; s < cycle.size(); ++s) {
    const std::size_t i = cycle[s];
    const std::size_t j = cycle[(s + 1) % cycle.size()];
    y(i, i) += eps;
    y(i, j) = y(i, j) - eps <= 1e-15 ? 0.0 : y(i, j) - eps;
  }
  Signature out(std::move(y));
  const double before = g_of_matrix(x);
  const double after = g_of_matrix(out.matrix());
  if (!(after > before)) {
    throw InvariantError("transfer move did not increase g (" + std::to_string(before) + " -> " + std::to_string(after) + ")");
  }
  return out;
}

Signature balanced_max_descent(const Signature& sig, double t1) {
  if (!(t1 >= 0.0)) throw ParameterError("target off-diagonal mass must be non-negative");
  const RealMatrix& x = sig.matrix();
  if (!doubly_stochastic(x, 1e-9)) throw ParameterError("descent needs a doubly stochastic signature");
  const double t2 = x.off_diagonal_sum();
  if (t1 > t2 + 1e-12) throw ParameterError("descent needs t1 <= t2");
  if (t2 - t1 <= 1e-12) return sig;

  const CycleDecomposition dec = cycle_decompose(Circulation::from_off_diagonal(x));
  Signature cur = sig;
  double remaining = t2 - t1;
  for (std::size_t l = 0; l < dec.cycles.size() && remaining > 1e-15; ++l) {
    const auto& cycle = dec.cycles[l];
    const double len = static_cast<double>(cycle.size());
    double eps = std::min(dec.weights[l], remaining / len);
    double bottleneck = std::numeric_limits<double>::infinity();
    for (std::size_t s = 0; s < cycle.size(); ++s)
      bottleneck = std::min(bottleneck, cur.matrix()(cycle[s], cycle[(s + 1) % cycle.size()]));
    eps = std::min(eps, bottleneck);
    if (!(eps > 0.0)) continue;
    cur = transfer_move(cur, cycle, eps);
    remaining -= eps * len;
  }
  const double reached = cur.matrix().off_diagonal_sum();
  if (std::abs(reached - t1) > 1e-9) {
    throw InvariantError("descent reached off-diagonal mass " + std::to_string(reached) + " instead of " + std::to_string(t1));
  }
  if (!(g_of_matrix(cur.matrix()) > g_of_matrix(x))) throw InvariantError("descent did not increase g");
  return cur;
}

}  // namespace ogp
