#include "ogp/partition_algebra.hpp"

#include <cmath>
#include <numeric>

#include "ogp/assignment.hpp"
#include "ogp/error.hpp"
#include "ogp/rng.hpp"

namespace ogp {

Signature::Signature(RealMatrix x) : x_(std::move(x)) {
  const std::size_t k = x_.k();
  for (std::size_t j = 0; j < k; ++j) {
    for (std::size_t i = 0; i < k; ++i) {
      if (!(x_(i, j) >= 0.0)) throw ParameterError("signature entries must be non-negative");
    }
    if (std::abs(x_.col_sum(j) - 1.0) > 1e-9) {
      throw ParameterError("signature column " + std::to_string(j) + " does not sum to 1");
    }
  }
}

Signature Signature::planted(std::size_t k) { return Signature(RealMatrix::identity(k)); }

Signature Signature::transfer_optimizer(std::size_t k, std::size_t i, std::size_t j, double t) {
  if (i == j || i >= k || j >= k) throw ParameterError("transfer optimizer needs distinct block indices below k");
  if (!(t >= 0.0 && t <= 1.0)) throw ParameterError("transfer optimizer needs t in [0, 1]");
  RealMatrix x = RealMatrix::identity(k);
  x(i, j) = t;
  x(j, j) = 1.0 - t;
  return Signature(std::move(x));
}

Signature Signature::uniform(std::size_t k) {
  return Signature(RealMatrix(k, 1.0 / static_cast<double>(k)));
}

CountMatrix overlap_counts(const Partition& part, const Partition& planted) {
  if (part.n() != planted.n()) throw ParameterError("partitions differ in node count");
  if (part.k() != planted.k()) throw ParameterError("partitions differ in k");
  CountMatrix c(part.k(), 0);
  for (std::size_t u = 0; u < part.n(); ++u) ++c(part[u], planted[u]);
  return c;
}

Signature signature(const Partition& part, const Partition& planted) {
  const CountMatrix c = overlap_counts(part, planted);
  const std::size_t k = c.k();
  RealMatrix x(k);
  for (std::size_t j = 0; j < k; ++j) {
    const long long size = c.col_sum(j);
    if (size == 0) throw ParameterError("planted block " + std::to_string(j) + " is empty");
    for (std::size_t i = 0; i < k; ++i) x(i, j) = static_cast<double>(c(i, j)) / static_cast<double>(size);
  }
  return Signature(std::move(x));
}

DistanceReport distance_from_counts(const CountMatrix& counts, std::size_t n) {
  if (n == 0) throw ParameterError("distance needs n >= 1");
  Assignment best = max_assignment_lex(counts);
  return {1.0 - static_cast<double>(best.value) / static_cast<double>(n), std::move(best.perm), best.value};
}

DistanceReport distance(const Partition& part, const Partition& planted) {
  return distance_from_counts(overlap_counts(part, planted), part.n());
}

Partition decoy(const Partition& planted, std::size_t i, std::size_t j) {
  const std::size_t k = planted.k();
  if (i == j) throw ParameterError("decoy needs two distinct blocks");
  if (i >= k || j >= k) throw ParameterError("decoy block index out of range");
  std::vector<Label> labels(planted.labels().begin(), planted.labels().end());
  for (auto& l : labels)
    if (l == j) l = static_cast<Label>(i);
  return Partition(std::move(labels), k);
}

Partition interpolated_partition(const Partition& planted, std::size_t i, std::size_t j, double t,
                                 std::optional<std::uint64_t> seed) {
  const std::size_t k = planted.k();
  if (i == j) throw ParameterError("interpolation needs two distinct blocks");
  if (i >= k || j >= k) throw ParameterError("interpolation block index out of range");
  if (!(t >= 0.0 && t <= 1.0)) throw ParameterError("interpolation needs t in [0, 1]");
  std::vector<std::size_t> members;
  for (std::size_t u = 0; u < planted.n(); ++u)
    if (planted[u] == j) members.push_back(u);
  const auto moved = static_cast<std::size_t>(std::llround(t * static_cast<double>(members.size())));
  if (seed) {
    Rng rng(*seed);
    shuffle(members.begin(), members.end(), rng);
  }
  std::vector<Label> labels(planted.labels().begin(), planted.labels().end());
  for (std::size_t r = 0; r < moved; ++r) labels[members[r]] = static_cast<Label>(i);
  return Partition(std::move(labels), k);
}

Partition balanced_random_partition(std::size_t n, std::size_t k, std::uint64_t seed) {
  if (k == 0 || n < k) throw ParameterError("balanced partition needs n >= k >= 1");
  std::vector<Label> labels(n);
  for (std::size_t u = 0; u < n; ++u) labels[u] = static_cast<Label>(u % k);
  Rng rng(seed);
  shuffle(labels.begin(), labels.end(), rng);
  return Partition(std::move(labels), k);
}

Partition uniform_signature_partition(const Partition& planted) {
  const std::size_t k = planted.k();
  const auto sizes = planted.part_sizes();
  for (std::size_t j = 0; j < k; ++j) {
    if (sizes[j] % k != 0) throw ParameterError("uniform signature needs every block size divisible by k");
  }
  std::vector<std::size_t> seen(k, 0);
  std::vector<Label> labels(planted.n());
  for (std::size_t u = 0; u < planted.n(); ++u) {
    const Label j = planted[u];
    labels[u] = static_cast<Label>(seen[j]++ / (sizes[j] / k));
  }
  return Partition(std::move(labels), k);
}

DistanceTracker::DistanceTracker(const Partition& start, const Partition& planted)
    : counts_(overlap_counts(start, planted)), n_(start.n()) {
  if (n_ == 0) throw ParameterError("distance tracker needs n >= 1");
  Assignment best = max_assignment(counts_);
  perm_ = std::move(best.perm);
  aligned_ = best.value;
  ++resolves_;
}

long long DistanceTracker::perm_value(const std::vector<std::size_t>& perm) const {
  long long s = 0;
  for (std::size_t j = 0; j < perm.size(); ++j) s += counts_(perm[j], j);
  return s;
}

void DistanceTracker::move(std::size_t block, Label from, Label to) {
  if (from == to) return;
  --counts_(from, block);
  ++counts_(to, block);
  // One move changes every permutation's value by at most one, so the
  // optimum rises by at most one. If the current alignment gained, it is
  // still optimal; otherwise re-solve.
  const long long current = perm_value(perm_);
  if (current == aligned_ + 1) {
    aligned_ = current;
    return;
  }
  Assignment best = max_assignment(counts_);
  perm_ = std::move(best.perm);
  aligned_ = best.value;
  ++resolves_;
}

std::pair<long long, long long> DistanceTracker::aligned_bounds_after(std::size_t block, Label from,
                                                                      Label to) const {
  if (from == to) return {aligned_, aligned_};
  const std::size_t row = perm_[block];
  const long long lo = aligned_ + (to == row ? 1 : 0) - (from == row ? 1 : 0);
  return {lo, aligned_ + 1};
}

double DistanceTracker::distance_after(std::size_t block, Label from, Label to) const {
  if (from == to) return distance();
  const auto [lo, hi] = aligned_bounds_after(block, from, to);
  if (lo == hi) return 1.0 - static_cast<double>(lo) / static_cast<double>(n_);
  CountMatrix c = counts_;
  --c(from, block);
  ++c(to, block);
  return 1.0 - static_cast<double>(max_assignment(c).value) / static_cast<double>(n_);
}

void DistanceTracker::verify(const Partition& current, const Partition& planted) const {
  const CountMatrix fresh = overlap_counts(current, planted);
  if (!(fresh == counts_)) throw InvariantError("tracked overlap counts diverged from recount");
  const long long solved = max_assignment_lex(fresh).value;
  if (solved != aligned_) {
    throw InvariantError("tracked aligned overlap " + std::to_string(aligned_) + " differs from re-solve " +
                         std::to_string(solved));
  }
}

}  // namespace ogp
