#include "doctest.h"

#include <filesystem>

#include "ogp/assignment.hpp"
#include "ogp/error.hpp"
#include "ogp/partition_algebra.hpp"
#include "ogp/rng.hpp"
#include "oracles.hpp"

using namespace ogp;

namespace {

Partition random_partition(std::size_t n, std::size_t k, Rng& rng) {
  std::vector<Label> labels(n);
  for (auto& l : labels) l = static_cast<Label>(rng.below(k));
  return Partition(std::move(labels), k);
}

}  // namespace

TEST_CASE("signature examples") {
  const Partition p = planted_partition(9, 3);
  CHECK(signature(p, p).matrix() == RealMatrix::identity(3));

  const Partition all_zero(std::vector<Label>(9, 0), 3);
  const Signature s = signature(all_zero, p);
  for (std::size_t j = 0; j < 3; ++j) {
    CHECK(s(0, j) == 1.0);
    CHECK(s(1, j) == 0.0);
    CHECK(s(2, j) == 0.0);
  }

  // Blocks are {0,1,2}, {3,4,5}, {6,7,8}; node 3 of P_1 goes to A_2.
  std::vector<Label> labels(p.labels().begin(), p.labels().end());
  labels[3] = 2;
  const Signature moved = signature(Partition(labels, 3), p);
  CHECK(moved(2, 2) == 1.0);
  CHECK(moved(1, 1) == doctest::Approx(2.0 / 3.0));
  CHECK(moved(2, 1) == doctest::Approx(1.0 / 3.0));
}

TEST_CASE("signature columns sum to one for uneven blocks") {
  Rng rng(3);
  const Partition p = planted_partition(10, 3);
  for (int trial = 0; trial < 20; ++trial) {
    const Signature s = signature(random_partition(10, 3, rng), p);
    for (std::size_t j = 0; j < 3; ++j) CHECK(s.matrix().col_sum(j) == doctest::Approx(1.0));
  }
}

TEST_CASE("distance examples") {
  const Partition p = planted_partition(12, 3);
  CHECK(distance(p, p).distance == 0.0);
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j)
      if (i != j) CHECK(distance(decoy(p, i, j), p).distance == doctest::Approx(1.0 / 3.0));
  const Partition p27 = planted_partition(27, 3);
  CHECK(distance(uniform_signature_partition(p27), p27).distance == doctest::Approx(2.0 / 3.0));
}

TEST_CASE("assignment distance matches k! enumeration") {
  Rng rng(17);
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t k = 2 + rng.below(5);
    const std::size_t n = k + rng.below(40);
    const Partition p = planted_partition(n, k);
    const Partition a = random_partition(n, k, rng);
    CHECK(distance(a, p).distance == doctest::Approx(oracle::distance(a, p)).epsilon(1e-15));
  }
}

TEST_CASE("ties report the lexicographically smallest permutation") {
  CountMatrix c(3, 1);
  CHECK(max_assignment_lex(c).perm == std::vector<std::size_t>{0, 1, 2});
  CountMatrix d(3, 0);
  d(1, 0) = 2;
  d(0, 1) = 2;
  d(2, 2) = 1;
  d(0, 2) = 1;
  d(2, 0) = 2;
  d(1, 2) = 1;
  // Optimum 5 is reached by (1,0,2) and (2,0,1).
  const Assignment a = max_assignment_lex(d);
  CHECK(a.value == 5);
  CHECK(a.perm == std::vector<std::size_t>{1, 0, 2});
}

TEST_CASE("decoy and interpolated partitions") {
  const Partition p = planted_partition(8, 4);
  const Partition d = decoy(p, 0, 1);
  CHECK(std::vector<Label>(d.labels().begin(), d.labels().end()) == std::vector<Label>{0, 0, 0, 0, 2, 2, 3, 3});
  CHECK(d.nonempty_parts() == 3);
  CHECK(signature(d, p).matrix() == Signature::transfer_optimizer(4, 0, 1, 1.0).matrix());

  const Partition big = planted_partition(300, 3);
  CHECK(interpolated_partition(big, 1, 2, 0.0) == big);
  CHECK(interpolated_partition(big, 1, 2, 1.0) == decoy(big, 1, 2));
  CHECK(distance(interpolated_partition(big, 0, 1, 0.5), big).distance == doctest::Approx(1.0 / 6.0));
  const Partition seeded = interpolated_partition(big, 0, 1, 0.5, 5);
  CHECK(distance(seeded, big).distance == doctest::Approx(1.0 / 6.0));
  CHECK_FALSE(seeded == interpolated_partition(big, 0, 1, 0.5));
  CHECK_THROWS_AS(decoy(p, 1, 1), ParameterError);
  CHECK_THROWS_AS(interpolated_partition(p, 0, 1, 1.5), ParameterError);
}

TEST_CASE("balanced random partitions") {
  CHECK(balanced_random_partition(10, 3, 1).part_sizes() == std::vector<std::size_t>{4, 3, 3});
  CHECK_FALSE(balanced_random_partition(100, 3, 1) == balanced_random_partition(100, 3, 2));
  const Partition p = planted_partition(3000, 3);
  double mean = 0.0;
  for (std::uint64_t s = 0; s < 5; ++s) mean += distance(balanced_random_partition(3000, 3, s), p).distance / 5.0;
  CHECK(std::abs(mean - 2.0 / 3.0) <= 0.05);
}

TEST_CASE("fewer nonempty parts count as empty parts") {
  const Partition p = planted_partition(6, 3);
  const Partition one(std::vector<Label>(6, 1), 3);
  CHECK(distance(one, p).distance == doctest::Approx(2.0 / 3.0));
}

TEST_CASE("distance tracker follows random moves") {
  Rng rng(23);
  const std::size_t n = 90;
  const std::size_t k = 4;
  const Partition p = planted_partition(n, k);
  Partition a = random_partition(n, k, rng);
  DistanceTracker tracker(a, p);
  for (int step = 0; step < 2000; ++step) {
    const std::size_t u = rng.below(n);
    const auto to = static_cast<Label>(rng.below(k));
    const Label from = a[u];
    const double predicted = tracker.distance_after(p[u], from, to);
    const auto [lo, hi] = tracker.aligned_bounds_after(p[u], from, to);
    tracker.move(p[u], from, to);
    a.set(u, to);
    const double truth = oracle::distance(a, p);
    CHECK(tracker.distance() == doctest::Approx(truth).epsilon(1e-15));
    CHECK(predicted == doctest::Approx(truth).epsilon(1e-15));
    const double aligned = (1.0 - truth) * static_cast<double>(n);
    CHECK(aligned >= static_cast<double>(lo) - 1e-9);
    CHECK(aligned <= static_cast<double>(hi) + 1e-9);
  }
  tracker.verify(a, p);
}

TEST_CASE("partition file round trip") {
  const auto path = (std::filesystem::temp_directory_path() / "ogp_partition.txt").string();
  const Partition a = balanced_random_partition(25, 4, 9);
  save_partition(a, path);
  CHECK(load_partition(path, 4) == a);
  CHECK_THROWS(load_partition(path, 2));
  std::filesystem::remove(path);
}
