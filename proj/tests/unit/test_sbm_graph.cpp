#include "doctest.h"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

#include "ogp/error.hpp"
#include "ogp/sbm_graph.hpp"
#include "oracles.hpp"

using namespace ogp;

TEST_CASE("p = 1, q = 0 gives disjoint intra-block cliques") {
  const auto inst = generate_sbm(BlockModelParams::from_probabilities(6, 3, 1.0, 0.0), 99);
  REQUIRE(inst.graph.m() == 3);
  for (const auto& [u, v] : inst.graph.edges()) CHECK(inst.planted[u] == inst.planted[v]);
}

TEST_CASE("planted block sizes") {
  CHECK(planted_partition(9, 3).part_sizes() == std::vector<std::size_t>{3, 3, 3});
  CHECK(planted_partition(10, 3).part_sizes() == std::vector<std::size_t>{4, 3, 3});
  const auto inst = generate_sbm({10, 3, 3.0, 1.0, 3.0}, 1);
  CHECK(inst.planted.part_sizes() == std::vector<std::size_t>{4, 3, 3});
}

TEST_CASE("generated graphs are simple with consistent degrees") {
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    const auto inst = generate_sbm({200, 4, 4.0, 1.0, 10.0}, seed);
    const Graph& g = inst.graph;
    std::size_t degree_sum = 0;
    for (std::size_t u = 0; u < g.n(); ++u) degree_sum += g.degree(static_cast<Node>(u));
    CHECK(degree_sum == 2 * g.m());
    std::set<Edge> seen;
    for (const auto& [u, v] : g.edges()) {
      CHECK(u < v);
      CHECK(seen.insert({u, v}).second);
    }
  }
}

TEST_CASE("same seed, same graph; different seed, different graph") {
  const BlockModelParams m{300, 3, 3.0, 1.0, 20.0};
  CHECK(generate_sbm(m, 7).graph == generate_sbm(m, 7).graph);
  CHECK_FALSE(generate_sbm(m, 7).graph == generate_sbm(m, 8).graph);
}

TEST_CASE("intra-block density within 3 sigma of p") {
  const BlockModelParams m{2000, 3, 3.0, 1.0, 50.0};
  const auto inst = generate_sbm(m, 11);
  double pairs = 0.0;
  for (auto s : inst.planted.part_sizes()) pairs += 0.5 * static_cast<double>(s) * static_cast<double>(s - 1);
  double inside = 0.0;
  for (const auto& [u, v] : inst.graph.edges()) inside += inst.planted[u] == inst.planted[v];
  const double p = m.p();
  CHECK(std::abs(inside / pairs - p) <= 3.0 * std::sqrt(p * (1.0 - p) / pairs));
}

TEST_CASE("skipping sampler agrees in law with the per-pair sampler") {
  // Mean edge counts over 40 seeds each; the two should agree within a few
  // standard errors of their difference.
  const BlockModelParams m{120, 3, 3.0, 1.0, 8.0};
  double a = 0.0;
  double b = 0.0;
  const int reps = 40;
  for (int s = 0; s < reps; ++s) {
    a += static_cast<double>(generate_sbm(m, 1000 + s).graph.m());
    b += static_cast<double>(generate_sbm_dense(m, 5000 + s).graph.m());
  }
  a /= reps;
  b /= reps;
  const double n = 120.0;
  const double inside = 3 * (40.0 * 39.0 / 2.0);
  const double across = n * (n - 1.0) / 2.0 - inside;
  const double var = inside * m.p() * (1 - m.p()) + across * m.q() * (1 - m.q());
  CHECK(std::abs(a - b) <= 4.0 * std::sqrt(2.0 * var / reps));
  const double mean = inside * m.p() + across * m.q();
  CHECK(std::abs(a - mean) <= 4.0 * std::sqrt(var / reps));
}

TEST_CASE("invalid parameters are rejected") {
  CHECK_THROWS_AS(generate_sbm({10, 3, 1.0, 3.0, 1.0}, 1), ParameterError);  // a < b
  CHECK_THROWS_AS(generate_sbm({2, 3, 3.0, 1.0, 1.0}, 1), ParameterError);   // n < k
  CHECK_THROWS_AS(generate_sbm({10, 2, 3.0, 1.0, 10.0}, 1), ParameterError); // p > 1
  CHECK_THROWS_AS(generate_sbm(BlockModelParams::from_probabilities(6, 3, 0.0, 0.0), 1), ParameterError);
}

TEST_CASE("weighted block graph degrees and masses") {
  const auto m = BlockModelParams::from_probabilities(6, 3, 0.7, 0.2);
  const WeightedBlockGraph w(m);
  const double expect = 5 * 0.2 + (0.7 - 0.2);
  for (Node u = 0; u < 6; ++u) {
    double d = 0.0;
    for (Node v = 0; v < 6; ++v)
      if (u != v) d += w.weight(u, v);
    CHECK(d == doctest::Approx(expect).epsilon(1e-14));
    CHECK(w.weight(u, u) == 0.0);
  }
  CHECK(w.degree() == doctest::Approx(expect));
  CHECK(w.volume() == doctest::Approx(6 * expect));

  const auto big = BlockModelParams{300, 3, 3.0, 1.0, 30.0};
  const WeightedBlockGraph wb(big);
  std::vector<Node> block(100);
  for (Node u = 0; u < 100; ++u) block[u] = u;
  CHECK(wb.intra_weight(block) == doctest::Approx(big.p() * 100 * 99 / 2.0));

  const WeightedBlockGraph flat(BlockModelParams::from_probabilities(9, 3, 0.4, 0.4 - 1e-12));
  const std::vector<Node> some{0, 4, 5, 8};
  CHECK(flat.intra_weight(some) == doctest::Approx(0.4 * 4 * 3 / 2.0));
  CHECK_THROWS_AS(WeightedBlockGraph(BlockModelParams{10, 3, 3.0, 1.0, 1.0}), ParameterError);
}

TEST_CASE("edge list format") {
  const Graph tri(3, {{1, 2}, {0, 1}, {2, 0}});
  std::ostringstream out;
  write_graph(tri, out);
  CHECK(out.str() == "3 3\n0 1\n0 2\n1 2\n");

  for (std::uint64_t seed = 1; seed <= 3; ++seed) {
    const Graph g = generate_sbm({60, 3, 3.0, 1.0, 6.0}, seed).graph;
    std::ostringstream s;
    write_graph(g, s);
    std::istringstream in(s.str());
    CHECK(read_graph(in) == g);
  }

  const auto path = std::filesystem::temp_directory_path() / "ogp_graph_roundtrip.txt";
  save_graph(tri, path.string());
  CHECK(load_graph(path.string()) == tri);
  std::filesystem::remove(path);
}

TEST_CASE("edge list parse errors carry the line number") {
  const auto parse = [](const std::string& text) {
    std::istringstream in(text);
    return read_graph(in);
  };
  try {
    parse("3 3\n0 1\n1 2\n0 1\n");
    FAIL("duplicate edge accepted");
  } catch (const ParseError& e) {
    CHECK(e.line() == 4);
  }
  CHECK_THROWS_AS(parse("3 1\n0 3\n"), ParseError);
  CHECK_THROWS_AS(parse("3 1\n0 x\n"), ParseError);
  CHECK_THROWS_AS(parse("3 1\n1 1\n"), ParseError);
  CHECK_THROWS_AS(parse("3 2\n0 1\n"), ParseError);
  CHECK_THROWS_AS(load_graph("/nonexistent/dir/graph.txt"), IoError);
}
