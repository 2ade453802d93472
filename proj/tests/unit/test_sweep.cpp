#include "doctest.h"

#include <cmath>

#include "ogp/landscape.hpp"
#include "ogp/modularity.hpp"
#include "ogp/sweep.hpp"
#include "oracles.hpp"

using namespace ogp;

TEST_CASE("theory columns") {
  const BlockModelParams m{2000, 3, 3.0, 1.0, 50.0};
  const auto p0 = theory_point(m, 0.0);
  CHECK(p0.t == 0.0);
  CHECK(p0.g_max_theory == doctest::Approx(6.0));
  CHECK(p0.modularity_theory == doctest::Approx(0.4 * 2.0 / 3.0));
  const auto p1 = theory_point(m, 1.0 / 3.0);
  CHECK(p1.t == doctest::Approx(1.0));
  CHECK(p1.modularity_theory == doctest::Approx(0.4 * 4.0 / 9.0));
  CHECK(p1.g_max_theory / 9.0 == doctest::Approx(p1.h_value));
}

TEST_CASE("band search never leaves the band and never loses modularity") {
  const auto inst = generate_sbm({300, 3, 3.0, 1.0, 30.0}, 4);
  const Partition start = interpolated_partition(inst.planted, 0, 1, 0.6);
  const double d0 = distance(start, inst.planted).distance;
  const auto r = band_local_search(inst.graph, inst.planted, start, d0 - 0.03, d0 + 0.03, 200);
  CHECK(r.distance >= d0 - 0.03 - 1e-12);
  CHECK(r.distance <= d0 + 0.03 + 1e-12);
  CHECK(r.distance == doctest::Approx(oracle::distance(r.partition, inst.planted)));
  CHECK(r.modularity >= modularity(inst.graph, start).score);
  CHECK(r.modularity == doctest::Approx(oracle::modularity(inst.graph, r.partition)).epsilon(1e-12));
}

TEST_CASE("sweep ends match planted and decoy scores") {
  const BlockModelParams m{2000, 3, 3.0, 1.0, 50.0};
  const auto inst = generate_sbm(m, 1);
  SweepOptions opts;
  opts.d_values = {0.0, 1.0 / 3.0};
  const auto pts = empirical_H_sweep(inst.graph, inst.planted, m, opts);
  REQUIRE(pts.size() == 2);
  CHECK(*pts[0].H_empirical >= modularity(inst.graph, inst.planted).score - 1e-12);
  CHECK(std::abs(*pts[0].H_empirical - 0.4 * 2.0 / 3.0) <= 0.05);
  CHECK(std::abs(*pts[1].H_empirical - 0.4 * 4.0 / 9.0) <= 0.05);
}

TEST_CASE("band search is a lower bound on the exhaustive band maximum") {
  const auto inst = generate_sbm(BlockModelParams::from_probabilities(9, 3, 0.8, 0.1), 3);
  for (double d : {0.0, 1.0 / 9.0, 2.0 / 9.0, 1.0 / 3.0}) {
    const auto exact = exhaustive_H(inst.graph, inst.planted, d, 0.05);
    REQUIRE(exact);
    SweepOptions opts;
    opts.d_values = {d};
    opts.band = 0.05;
    const BlockModelParams m = BlockModelParams::from_probabilities(9, 3, 0.8, 0.1);
    const auto pts = empirical_H_sweep(inst.graph, inst.planted, m, opts);
    CHECK(*pts[0].H_empirical <= *exact + 1e-12);
  }
}
