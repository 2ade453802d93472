#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "ogp/matrix.hpp"
#include "ogp/partition.hpp"

namespace ogp {

// k x k overlap fractions x_ij = |A_i ∩ P_j| / |P_j| of a partition A against
// the planted partition P. Every column sums to one.
class Signature {
 public:
  Signature() = default;
  // Validates non-negativity and unit column sums (within 1e-9).
  explicit Signature(RealMatrix x);

  std::size_t k() const noexcept { return x_.k(); }
  double operator()(std::size_t i, std::size_t j) const { return x_(i, j); }
  const RealMatrix& matrix() const noexcept { return x_; }

  // Y^P: identity.
  static Signature planted(std::size_t k);
  // X^(ij)_k(t): x_ij = t, x_jj = 1 - t, other diagonal entries 1.
  static Signature transfer_optimizer(std::size_t k, std::size_t i, std::size_t j, double t);
  // All entries 1/k.
  static Signature uniform(std::size_t k);

 private:
  RealMatrix x_;
};

// c(i, j) = |A_i ∩ P_j|. Both partitions must have the same n and k.
CountMatrix overlap_counts(const Partition& part, const Partition& planted);

Signature signature(const Partition& part, const Partition& planted);

struct DistanceReport {
  double distance = 0.0;
  // best_permutation[j] = part of A aligned with planted block j
  std::vector<std::size_t> best_permutation;
  long long aligned_overlap = 0;
};

// d(A, P) = 1 - max_sigma sum_j |A_sigma(j) ∩ P_j| / n, solved exactly as a
// linear assignment on the overlap counts. Ties report the lexicographically
// smallest permutation.
DistanceReport distance(const Partition& part, const Partition& planted);
DistanceReport distance_from_counts(const CountMatrix& counts, std::size_t n);

// Planted blocks i and j merged into part i; part j left empty.
Partition decoy(const Partition& planted, std::size_t i, std::size_t j);

// Moves round(t |P_j|) nodes of block j into part i. Without a seed the
// lowest-indexed nodes of P_j move; with a seed a uniform subset moves.
Partition interpolated_partition(const Partition& planted, std::size_t i, std::size_t j, double t,
                                 std::optional<std::uint64_t> seed = std::nullopt);

// Uniform random assignment with part sizes differing by at most one.
Partition balanced_random_partition(std::size_t n, std::size_t k, std::uint64_t seed);

// Splits every planted block into k equal slices and sends slice i to part i,
// so every signature entry is 1/k. Requires k | |P_j| for all j.
Partition uniform_signature_partition(const Partition& planted);

// Incrementally maintained overlap counts and distance to the planted
// partition along a sequence of single-node moves.
class DistanceTracker {
 public:
  DistanceTracker(const Partition& start, const Partition& planted);

  double distance() const noexcept { return 1.0 - static_cast<double>(aligned_) / static_cast<double>(n_); }
  long long aligned_overlap() const noexcept { return aligned_; }
  const CountMatrix& counts() const noexcept { return counts_; }

  // Node u in planted block `block` moves from part `from` to part `to`.
  void move(std::size_t block, Label from, Label to);

  // Distance the tracker would report after the move, without applying it.
  double distance_after(std::size_t block, Label from, Label to) const;

  // Cheap bounds [lo, hi] on the aligned overlap after the move: the current
  // alignment's new value and the old optimum plus one.
  std::pair<long long, long long> aligned_bounds_after(std::size_t block, Label from, Label to) const;

  // Recounts from labels and re-solves; throws InvariantError if the
  // incrementally maintained state disagrees.
  void verify(const Partition& current, const Partition& planted) const;

  std::size_t resolves() const noexcept { return resolves_; }

 private:
  long long perm_value(const std::vector<std::size_t>& perm) const;

  CountMatrix counts_;
  std::vector<std::size_t> perm_;
  long long aligned_ = 0;
  std::size_t n_ = 0;
  std::size_t resolves_ = 0;
};

}  // namespace ogp
