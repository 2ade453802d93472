#pragma once

#include <vector>

#include "ogp/matrix.hpp"
#include "ogp/partition_algebra.hpp"

namespace ogp {

// Non-negative k x k flow with zero diagonal and equal in- and out-flow at
// every node.
class Circulation {
 public:
  // Validates the shape; conservation must hold within `tol` per node.
  explicit Circulation(RealMatrix b, double tol = 1e-12);

  // Off-diagonal part of a doubly stochastic matrix.
  static Circulation from_off_diagonal(const RealMatrix& x, double tol = 1e-9);

  std::size_t k() const noexcept { return b_.k(); }
  const RealMatrix& flow() const noexcept { return b_; }
  std::size_t support_size() const;

 private:
  RealMatrix b_;
};

// cycles[l] lists the nodes v0 -> v1 -> ... -> v0 of a simple directed cycle.
struct CycleDecomposition {
  std::vector<std::vector<std::size_t>> cycles;
  std::vector<double> weights;

  RealMatrix reconstruct(std::size_t k) const;
};

// Repeatedly walks positive entries from a node until one repeats, then
// peels the cycle off with its bottleneck weight. Each peel zeroes at least
// one entry, so there are at most support_size() cycles.
CycleDecomposition cycle_decompose(const Circulation& c);

// Shifts eps along the cycle onto the diagonal: x_ii += eps for i on the
// cycle, x_ij -= eps for each cycle edge. Requires a doubly stochastic input
// and 0 < eps <= the smallest cycle-edge entry. Asserts that g increases.
Signature transfer_move(const Signature& sig, const std::vector<std::size_t>& cycle, double eps);

// Lowers the off-diagonal mass of a doubly stochastic signature from t2 to
// t1 with a prefix of transfer moves along its cycle decomposition. Asserts
// the final mass and a strict increase of g when t1 < t2.
Signature balanced_max_descent(const Signature& sig, double t1);

}  // namespace ogp
