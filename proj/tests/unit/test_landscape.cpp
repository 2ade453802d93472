#include "doctest.h"

#include <cmath>

#include "ogp/error.hpp"
#include "ogp/landscape.hpp"
#include "ogp/rng.hpp"
#include "oracles.hpp"

using namespace ogp;

namespace {

std::vector<std::vector<double>> rows(const RealMatrix& x) {
  std::vector<std::vector<double>> r(x.k(), std::vector<double>(x.k()));
  for (std::size_t i = 0; i < x.k(); ++i)
    for (std::size_t j = 0; j < x.k(); ++j) r[i][j] = x(i, j);
  return r;
}

// Random doubly stochastic matrix: convex mix of permutation matrices.
RealMatrix random_doubly_stochastic(std::size_t k, Rng& rng) {
  RealMatrix x(k, 0.0);
  double left = 1.0;
  for (int r = 0; r < 4; ++r) {
    std::vector<std::size_t> perm(k);
    for (std::size_t i = 0; i < k; ++i) perm[i] = i;
    shuffle(perm.begin(), perm.end(), rng);
    const double w = r == 3 ? left : left * rng.uniform();
    left -= w;
    for (std::size_t j = 0; j < k; ++j) x(perm[j], j) += w;
  }
  return x;
}

}  // namespace

TEST_CASE("g examples") {
  CHECK(g_of_signature(Signature::planted(3)) == doctest::Approx(6.0));
  CHECK(g_of_signature(Signature::uniform(3)) == doctest::Approx(0.0));
  CHECK(g_of_signature(Signature::transfer_optimizer(3, 1, 2, 1.0)) == doctest::Approx(4.0));
}

TEST_CASE("pairwise and Frobenius forms of g agree on row-stochastic input") {
  Rng rng(2);
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t k = 2 + rng.below(5);
    const RealMatrix x = random_doubly_stochastic(k, rng);
    CHECK(g_of_matrix(x) == doctest::Approx(oracle::g(rows(x))).epsilon(1e-12));
    CHECK(g_frobenius(x) == doctest::Approx(g_of_matrix(x)).epsilon(1e-12));
  }
}

TEST_CASE("h curve values") {
  for (std::size_t k : {3u, 4u, 5u}) {
    const double kk = static_cast<double>(k);
    CHECK(h_curve(0.0, k) == doctest::Approx(1.0 - 1.0 / kk));
    CHECK(h_curve(1.0 / kk, k) == doctest::Approx(1.0 - 1.0 / kk - 2.0 / (kk * kk)));
    CHECK(h_curve(1.0 / (2.0 * (kk - 1.0)), k) == doctest::Approx(1.0 - 1.0 / kk - 1.0 / (2.0 * (kk - 1.0))));
  }
  CHECK(h_curve(0.25, 4) == doctest::Approx(0.625));
  CHECK(h_curve(1.0 / 6.0, 4) == doctest::Approx(7.0 / 12.0));
  CHECK_THROWS_AS(h_curve(0.5, 3), ParameterError);
}

TEST_CASE("closed-form maximum") {
  const auto t0 = max_g_closed_form(3, 0.0);
  CHECK(t0.value == doctest::Approx(6.0));
  REQUIRE(t0.optimizers.size() == 1);
  CHECK(t0.optimizers[0].matrix() == RealMatrix::identity(3));
  CHECK(max_g_closed_form(3, 0.5).value == doctest::Approx(4.0));
  CHECK(max_g_closed_form(4, 1.0).value == doctest::Approx(10.0));
  const auto mid = max_g_closed_form(4, 0.3);
  CHECK(mid.optimizers.size() == 12);
  for (const auto& s : mid.optimizers) CHECK(g_of_signature(s) == doctest::Approx(mid.value));
  CHECK_THROWS_AS(max_g_closed_form(3, 1.5), ParameterError);
  CHECK(far_bound(3) == 4.0);
  CHECK(far_bound(4) == 10.0);
}

TEST_CASE("grid oracle examples") {
  for (std::size_t n : {2u, 4u, 6u}) {
    const auto r = grid_max_g({3, 0.0, false}, n);
    CHECK(r.value == doctest::Approx(6.0));
    CHECK(r.maximizer == RealMatrix::identity(3));
  }
  const auto decoy = grid_max_g({3, 1.0, false}, 4);
  CHECK(decoy.value == doctest::Approx(4.0));
  CHECK(decoy.maximizer.off_diagonal_sum() == doctest::Approx(1.0));
  CHECK(grid_max_g({3, 1.5, false}, 4).value < 4.0);
  CHECK(grid_max_g({3, 1.25, false}, 8).value < 4.0);
  CHECK_THROWS_AS(grid_max_g({3, 0.3, false}, 8), ParameterError);
  CHECK_THROWS_AS(grid_max_g({5, 0.0, false}, 4), ParameterError);
}

TEST_CASE("grid oracle agrees with an independent brute force at k = 2") {
  // k = 2, N = 6: enumerate column-stochastic 2x2 grids directly.
  const int n = 6;
  for (int units = 0; units <= n; ++units) {
    double best = -1.0;
    for (int a = 0; a <= n; ++a)
      for (int b = 0; b <= n; ++b) {
        // x00 = a/N, x10 = 1 - a/N, x11 = b/N, x01 = 1 - b/N
        const int off = (n - a) + (n - b);
        if (off != units || a + b < (n - a) + (n - b)) continue;
        const std::vector<std::vector<double>> x{{a / 6.0, 1.0 - b / 6.0}, {1.0 - a / 6.0, b / 6.0}};
        best = std::max(best, oracle::g(x));
      }
    const auto r = grid_max_g({2, units / 6.0, false}, n);
    CHECK(r.value == doctest::Approx(best));
  }
}

TEST_CASE("scaled closed form and alignment") {
  CHECK(closed_form_scaled(3, 4, 8) == 256);
  CHECK(closed_form_scaled(3, 0, 8) == 384);
  CountMatrix c(3, 0);
  c(0, 0) = 5;
  c(1, 1) = 5;
  c(2, 2) = 5;
  CHECK(diagonal_alignment_optimal(c));
  c(0, 1) = 9;
  c(1, 0) = 9;
  CHECK_FALSE(diagonal_alignment_optimal(c));
}

TEST_CASE("near-optimal distance inverts the h drop") {
  for (std::size_t k : {3u, 4u, 6u}) {
    const double kk = static_cast<double>(k);
    const double pref = 0.4;
    for (double frac : {0.05, 0.3, 0.9}) {
      const double delta = frac * 2.0 * pref / (kk * kk);
      const double dp = near_optimal_distance(delta, pref, k);
      CHECK(dp > 0.0);
      CHECK(dp < 1.0 / (kk * (kk - 1.0)));
      CHECK(pref * 2.0 * dp * (1.0 - dp * (kk - 1.0)) == doctest::Approx(delta).epsilon(1e-12));
    }
  }
}

TEST_CASE("mirror point") {
  for (std::size_t k : {3u, 4u, 5u}) {
    const double kk = static_cast<double>(k);
    for (double d : {0.0, 0.05, 1.0 / (2.0 * (kk - 1.0))}) {
      const double m = h_mirror(d, k);
      CHECK(m + d == doctest::Approx(1.0 / (kk - 1.0)));
      if (m <= 1.0 / kk) CHECK(h_curve(m, k) == doctest::Approx(h_curve(d, k)));
    }
  }
}
