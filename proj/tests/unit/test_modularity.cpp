#include "doctest.h"

#include "ogp/error.hpp"
#include "ogp/modularity.hpp"
#include "ogp/rng.hpp"
#include "oracles.hpp"

using namespace ogp;

namespace {

Graph two_triangles() { return Graph(6, {{0, 1}, {1, 2}, {0, 2}, {3, 4}, {4, 5}, {3, 5}}); }

}  // namespace

TEST_CASE("modularity examples") {
  const Graph g = two_triangles();
  const auto whole = modularity(g, Partition(std::vector<Label>(6, 0), 1));
  CHECK(whole.coverage == doctest::Approx(1.0));
  CHECK(whole.degree_tax == doctest::Approx(1.0));
  CHECK(whole.score == doctest::Approx(0.0));

  const auto split = modularity(g, Partition({0, 0, 0, 1, 1, 1}, 2));
  CHECK(split.coverage == doctest::Approx(1.0));
  CHECK(split.degree_tax == doctest::Approx(0.5));
  CHECK(split.score == doctest::Approx(0.5));

  CHECK(modularity(g, Partition(std::vector<Label>(6, 1), 2)).score == doctest::Approx(0.0));
  CHECK_THROWS_AS(modularity(Graph(3, {}), Partition({0, 0, 0}, 1)), DegenerateGraphError);
}

TEST_CASE("modularity matches the pairwise definition") {
  Rng rng(31);
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    const auto inst = generate_sbm({60, 3, 3.0, 1.0, 8.0}, seed);
    std::vector<Label> labels(60);
    for (auto& l : labels) l = static_cast<Label>(rng.below(4));
    const Partition a(labels, 4);
    CHECK(modularity(inst.graph, a).score == doctest::Approx(oracle::modularity(inst.graph, a)).epsilon(1e-12));
  }
}

TEST_CASE("weighted modularity matches direct weight sums") {
  const BlockModelParams m{30, 3, 3.0, 1.0, 6.0};
  const WeightedBlockGraph w(m);
  Rng rng(5);
  for (int trial = 0; trial < 10; ++trial) {
    std::vector<Label> labels(30);
    for (auto& l : labels) l = static_cast<Label>(rng.below(3));
    const Partition a(labels, 3);
    CHECK(weighted_modularity(w, a).score == doctest::Approx(oracle::weighted_modularity(w, a)).epsilon(1e-12));
  }
}

TEST_CASE("weighted modularity near the mean-field value") {
  const BlockModelParams m{300, 3, 3.0, 1.0, 50.0};
  const WeightedBlockGraph w(m);
  const double pref = (m.p() - m.q()) / (m.p() + 2 * m.q());
  CHECK(weighted_modularity(w, w.planted()).score == doctest::Approx(pref * 2.0 / 3.0).epsilon(0.02));
  CHECK(weighted_modularity(w, decoy(w.planted(), 0, 1)).score == doctest::Approx(pref * 4.0 / 9.0).epsilon(0.02));

  // Homogeneous weights: only the O(1/n) self-pair correction remains,
  // -(n^2 - sum |A|^2) / (n^2 (n - 1)), which vanishes as n grows.
  const WeightedBlockGraph flat(BlockModelParams{30, 3, 1.0, 1.0 - 1e-13, 6.0});
  const double n = 30.0;
  CHECK(weighted_modularity(flat, balanced_random_partition(30, 3, 4)).score ==
        doctest::Approx(-(n * n - 300.0) / (n * n * (n - 1.0))).epsilon(1e-9));
}

TEST_CASE("mean-field prediction") {
  const BlockModelParams m{300, 3, 3.0, 1.0, 50.0};
  CHECK(mean_field_prediction(m, Signature::planted(3)) == doctest::Approx(4.0 / 15.0));
  CHECK(mean_field_prediction(m, Signature::uniform(3)) == doctest::Approx(0.0));
  for (std::size_t k : {2u, 4u, 6u}) {
    const BlockModelParams mk{600, k, 4.0, 1.0, 10.0};
    CHECK(mean_field_prediction(mk, Signature::planted(k)) ==
          doctest::Approx(mk.prefactor() * (1.0 - 1.0 / static_cast<double>(k))));
  }
}

TEST_CASE("move state deltas are exact") {
  const auto inst = generate_sbm({200, 4, 3.0, 1.0, 12.0}, 2);
  MoveState state(inst.graph, balanced_random_partition(200, 4, 2));
  Rng rng(8);
  CHECK(state.move_delta(5, state.label(5)) == 0.0);
  for (int step = 0; step < 500; ++step) {
    const auto u = static_cast<Node>(rng.below(200));
    const auto to = static_cast<Label>(rng.below(4));
    const double before = state.score();
    const double delta = state.move_delta(u, to);
    const Label from = state.label(u);
    state.apply_move(u, to);
    CHECK(state.score() - before == doctest::Approx(delta).epsilon(1e-12));
    CHECK(state.score() == doctest::Approx(oracle::modularity(inst.graph, state.partition())).epsilon(1e-12));
    state.apply_move(u, from);
    CHECK(std::abs(state.score() - before) <= 1e-12);
    state.apply_move(u, to);
  }
  state.verify();
  CHECK_THROWS_AS(state.apply_move(200, 0), ParameterError);
  CHECK_THROWS_AS(state.apply_move(0, 4), ParameterError);
}

TEST_CASE("amalgamation") {
  const Graph g = two_triangles();
  const Partition fat({0, 0, 0, 1, 1, 1}, 3);
  const auto same = amalgamate_eta_fat(g, fat, 0.2);
  CHECK(same.partition == fat);
  CHECK(same.params.zeta == 0.0);
  CHECK(same.modularity_drop == doctest::Approx(0.0));

  const auto inst = generate_sbm({120, 3, 3.0, 1.0, 20.0}, 4);
  std::vector<Label> labels(inst.planted.labels().begin(), inst.planted.labels().end());
  labels[0] = 3;  // singleton part
  const auto res = amalgamate_eta_fat(inst.graph, Partition(labels, 4), 0.1);
  CHECK(res.partition.nonempty_parts() == 3);
  std::vector<double> vol(4, 0.0);
  for (std::size_t u = 0; u < 120; ++u) vol[res.partition[u]] += static_cast<double>(inst.graph.degree(static_cast<Node>(u)));
  for (double v : vol)
    if (v > 0.0) CHECK(v >= 0.1 * inst.graph.volume());

  Rng rng(12);
  for (int trial = 0; trial < 100; ++trial) {
    const auto sbm = generate_sbm({80, 3, 3.0, 1.0, 10.0}, 100 + trial);
    std::vector<Label> l(80);
    const std::size_t parts = 1 + rng.below(8);
    for (auto& x : l) x = static_cast<Label>(rng.below(parts));
    const double eta = 0.01 + 0.4 * rng.uniform();
    const auto r = amalgamate_eta_fat(sbm.graph, Partition(l, parts), eta);
    CHECK(r.modularity_drop < 2.0 * eta);
  }
}

TEST_CASE("edge removal robustness") {
  std::vector<Edge> edges;
  for (Node u = 0; u < 100; ++u) edges.push_back({u, static_cast<Node>(u + 100)});
  const Graph matching(200, edges);
  const Partition pairs = [] {
    std::vector<Label> l(200);
    for (std::size_t u = 0; u < 200; ++u) l[u] = static_cast<Label>((u % 100) % 5);
    return Partition(l, 5);
  }();
  const Edge one[] = {{0, 100}};
  const auto gap = robustness_gap(matching, pairs, one);
  CHECK(gap.bound == doctest::Approx(0.02));
  CHECK(gap.delta < 0.02);

  // Perfect clustering: two triangles, drop an internal edge.
  const Edge internal[] = {{0, 1}};
  const auto g2 = robustness_gap(two_triangles(), Partition({0, 0, 0, 1, 1, 1}, 2), internal);
  CHECK(g2.delta < g2.bound);

  const Graph g = two_triangles();
  std::vector<Edge> all_but_one(g.edges().begin() + 1, g.edges().end());
  const auto loose = robustness_gap(g, Partition({0, 0, 0, 1, 1, 1}, 2), all_but_one);
  CHECK(loose.bound == doctest::Approx(2.0 * 5.0 / 6.0));
  std::vector<Edge> all(g.edges().begin(), g.edges().end());
  CHECK_THROWS_AS(robustness_gap(g, Partition({0, 0, 0, 1, 1, 1}, 2), all), ParameterError);
  const Edge missing[] = {{0, 5}};
  CHECK_THROWS_AS(robustness_gap(g, Partition({0, 0, 0, 1, 1, 1}, 2), missing), ParameterError);
}
