#include "doctest.h"

#include <cmath>
#include <map>

#include "ogp/dynamics.hpp"
#include "ogp/error.hpp"
#include "ogp/landscape.hpp"
#include "oracles.hpp"

using namespace ogp;

namespace {

// Labeling index sum_u label_u k^u -> partition.
Partition decode(std::size_t index, std::size_t n, std::size_t k) {
  std::vector<Label> l(n);
  for (std::size_t u = 0; u < n; ++u) {
    l[u] = static_cast<Label>(index % k);
    index /= k;
  }
  return Partition(l, k);
}

SbmInstance small_instance() {
  return generate_sbm(BlockModelParams::from_probabilities(8, 2, 0.9, 0.05), 1);
}

}  // namespace

TEST_CASE("regions") {
  CHECK(classify(0.1, 0.2, 0.3) == Region::close);
  CHECK(classify(0.2, 0.2, 0.3) == Region::close);
  CHECK(classify(0.25, 0.2, 0.3) == Region::between);
  CHECK(classify(0.3, 0.2, 0.3) == Region::far);
  CHECK(std::string(region_name(Region::between)) == "between");
}

TEST_CASE("greedy ascent") {
  const auto clean = generate_sbm(BlockModelParams::from_probabilities(30, 3, 1.0, 0.0), 3);
  const auto trace = greedy_run(clean.graph, clean.planted, clean.planted);
  CHECK(trace.steps == 0);
  CHECK(trace.terminal == clean.planted);

  const auto inst = generate_sbm({300, 3, 3.0, 1.0, 30.0}, 5);
  const auto a = greedy_run(inst.graph, inst.planted, balanced_random_partition(300, 3, 1));
  const auto b = greedy_run(inst.graph, inst.planted, balanced_random_partition(300, 3, 1));
  CHECK(a.terminal == b.terminal);
  CHECK(a.steps == b.steps);
  // No single move improves the terminal partition.
  MoveState s(inst.graph, a.terminal);
  for (Node u = 0; u < 300; ++u)
    for (Label c = 0; c < 3; ++c) CHECK(s.delta_numerator(u, c) <= 0);
  for (std::size_t i = 1; i < a.samples.size(); ++i) CHECK(a.samples[i].modularity > a.samples[i - 1].modularity);
}

TEST_CASE("kernel probabilities") {
  const auto inst = small_instance();
  const MoveState state(inst.graph, inst.planted);
  const auto uniform = kernel_probabilities(state, 0.0);
  REQUIRE(uniform.size() == 8);
  for (double p : uniform) CHECK(p == doctest::Approx(1.0 / 8.0));

  // Direct instantiation: weight exp(beta n q_B) for every neighbor B.
  const double beta = 2.0;
  const auto probs = kernel_probabilities(state, beta);
  std::vector<double> w;
  for (std::size_t r = 0; r < probs.size(); ++r) {
    const Move mv = decode_neighbor(state, r);
    CHECK(mv.from == state.label(mv.node));
    CHECK(mv.to != mv.from);
    Partition b = state.partition();
    b.set(mv.node, mv.to);
    w.push_back(std::exp(beta * 8.0 * oracle::modularity(inst.graph, b)));
  }
  const double z = std::accumulate(w.begin(), w.end(), 0.0);
  for (std::size_t r = 0; r < probs.size(); ++r) CHECK(probs[r] == doctest::Approx(w[r] / z).epsilon(1e-12));
}

TEST_CASE("two-neighbor toy kernel") {
  const Graph g(2, {{0, 1}});
  const MoveState s(g, Partition({0, 0}, 2));
  const auto probs = kernel_probabilities(s, 1.5);
  REQUIRE(probs.size() == 2);
  // Both neighbors split the edge: q = 0 - 1/2 each.
  CHECK(probs[0] == doctest::Approx(0.5));
  CHECK(probs[1] == doctest::Approx(0.5));
}

TEST_CASE("neighbor sampling frequencies") {
  const auto inst = small_instance();
  const MoveState state(inst.graph, balanced_random_partition(8, 2, 4));
  const auto probs = kernel_probabilities(state, 2.0);
  Rng rng(77);
  std::vector<double> scratch;
  std::vector<int> hits(probs.size(), 0);
  const int draws = 100000;
  for (int i = 0; i < draws; ++i) ++hits[sample_neighbor(state, 2.0, rng, scratch)];
  for (std::size_t r = 0; r < probs.size(); ++r) {
    const double sigma = std::sqrt(probs[r] * (1 - probs[r]) / draws);
    CHECK(std::abs(hits[r] / static_cast<double>(draws) - probs[r]) <= 4.0 * sigma);
  }
}

TEST_CASE("exact Gibbs table") {
  const auto inst = small_instance();
  const auto uniform = exact_gibbs(inst.graph, inst.planted, 0.0);
  REQUIRE(uniform.probability.size() == 256);
  for (double p : uniform.probability) CHECK(p == doctest::Approx(1.0 / 256.0));

  const auto table = exact_gibbs(inst.graph, inst.planted, 2.0);
  CHECK(std::accumulate(table.probability.begin(), table.probability.end(), 0.0) == doctest::Approx(1.0).epsilon(1e-10));
  double z = 0.0;
  for (std::size_t s = 0; s < 256; ++s) {
    const Partition a = decode(s, 8, 2);
    CHECK(table.modularity[s] == doctest::Approx(oracle::modularity(inst.graph, a)).epsilon(1e-12));
    CHECK(table.distance[s] == doctest::Approx(oracle::distance(a, inst.planted)));
    z += std::exp(2.0 * 8.0 * table.modularity[s]);
  }
  CHECK(table.z() == doctest::Approx(z).epsilon(1e-10));
}

TEST_CASE("kernel stationary law solves pi P = pi") {
  const auto inst = small_instance();
  const double beta = 2.0;
  const auto table = exact_gibbs(inst.graph, inst.planted, beta);
  std::vector<double> next(256, 0.0);
  for (std::size_t s = 0; s < 256; ++s) {
    const MoveState state(inst.graph, decode(s, 8, 2));
    const auto probs = kernel_probabilities(state, beta);
    for (std::size_t r = 0; r < probs.size(); ++r) {
      const Move mv = decode_neighbor(state, r);
      const std::size_t t = s ^ (std::size_t{1} << mv.node);  // k = 2 flips one bit
      next[t] += table.kernel_stationary[s] * probs[r];
    }
  }
  for (std::size_t s = 0; s < 256; ++s) CHECK(next[s] == doctest::Approx(table.kernel_stationary[s]).epsilon(1e-10));
}

TEST_CASE("Metropolis chain samples the Gibbs law") {
  const auto inst = small_instance();
  const auto table = exact_gibbs(inst.graph, inst.planted, 1.0);
  ChainConfig cfg;
  cfg.beta = 1.0;
  cfg.max_steps = 400000;
  cfg.seed = 9;
  cfg.nu2 = 0.5;
  cfg.kernel = KernelKind::metropolis;
  CHECK(total_variation(chain_occupation(inst.graph, inst.planted, cfg), table.probability) < 0.05);
}

TEST_CASE("chain bookkeeping") {
  const auto inst = generate_sbm({150, 3, 3.0, 1.0, 20.0}, 2);
  ChainConfig cfg;
  cfg.beta = 5.0;
  cfg.max_steps = 3000;
  cfg.sample_every = 500;
  cfg.seed = 1;
  cfg.nu1 = 0.1;
  cfg.nu2 = 0.3;
  cfg.verify_every = 100;
  const auto t = mcmc_run(inst.graph, inst.planted, inst.planted, cfg);
  REQUIRE(t.tau);
  CHECK(*t.tau == 0);
  CHECK(t.steps == 3000);
  CHECK(t.samples.front().step == 0);
  CHECK(t.samples.back().step == 3000);
  const auto again = mcmc_run(inst.graph, inst.planted, inst.planted, cfg);
  CHECK(again.terminal == t.terminal);
  ChainConfig bad = cfg;
  bad.nu1 = 0.5;
  CHECK_THROWS_AS(mcmc_run(inst.graph, inst.planted, inst.planted, bad), ParameterError);
}

TEST_CASE("beta rule") {
  CHECK(beta_rule(0.1, 3) == doctest::Approx((std::log(3.0) + 1.0) / 0.1));
  CHECK(beta_rule(std::log(2.0) + 1.0, 2) == doctest::Approx(1.0));
  CHECK(beta_rule(0.2, 3) < beta_rule(0.1, 3));
  CHECK_THROWS_AS(beta_rule(0.0, 3), ParameterError);
}

TEST_CASE("default overlap gap parameters") {
  const BlockModelParams m{2000, 3, 3.0, 1.0, 50.0};
  const auto p = default_ogp_params(m, 0.3);
  CHECK(p.nu_prime == doctest::Approx(0.2 + 1.0 / 9.0));
  CHECK(p.mu == doctest::Approx(0.4 * (h_curve(0.0, 3) - h_curve(p.nu_prime, 3))));
  CHECK(p.nu1 == doctest::Approx(0.25));
  CHECK(p.nu2 == 0.3);
  CHECK(h_curve(p.nu_mirror, 3) == doctest::Approx(h_curve(p.nu_prime, 3)));
  CHECK(p.nu_mirror < 0.25);
  CHECK_THROWS_AS(default_ogp_params(m, 0.2), ParameterError);
  CHECK_THROWS_AS(default_ogp_params({100, 2, 3.0, 1.0, 5.0}, 0.4), ParameterError);
}

TEST_CASE("certificate on a strong-signal instance") {
  const BlockModelParams m{2000, 3, 3.0, 1.0, 50.0};
  const auto inst = generate_sbm(m, 2);
  const auto params = default_ogp_params(m, 0.3);
  ProbeOptions po;
  for (int i = 0; i <= 10; ++i) po.d_grid.push_back(i / 30.0);
  po.random_starts = 1;
  po.seed = 2;
  const auto rep = ogp_certificate(inst.graph, inst.planted, m, params, standard_probes(inst.graph, inst.planted, po));
  REQUIRE(rep.witness);
  CHECK(rep.witness->distance >= 1.0 / 3.0 - 1e-12);
  for (const auto& p : rep.probes) {
    if (p.name.rfind("decoy", 0) == 0) CHECK(p.above_threshold);
    // Probes at the bottom of the h curve sit well below threshold.
    if (p.name.find("d=0.25") != std::string::npos || p.name.find("d=0.266667") != std::string::npos)
      CHECK_FALSE(p.above_threshold);
  }
  REQUIRE(rep.c2);
  CHECK(*rep.c2 > 0.0);
}
