#pragma once

#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "ogp/modularity.hpp"
#include "ogp/partition.hpp"
#include "ogp/rng.hpp"
#include "ogp/sbm_graph.hpp"

namespace ogp {

enum class Region { close, between, far };

// close: d <= nu1, far: d >= nu2, between: the open interval.
Region classify(double distance, double nu1, double nu2);
const char* region_name(Region r);

enum class KernelKind {
  // Heat bath over all n(k-1) single-node relabelings, weights exp(beta n q).
  exact,
  // Uniform neighbor proposal accepted with min(1, exp(beta n dq)).
  metropolis,
};

struct ChainConfig {
  double beta = 0.0;
  std::uint64_t max_steps = 0;
  std::uint64_t sample_every = 1000;
  std::uint64_t seed = 0;
  double nu1 = 0.0;
  double nu2 = 1.0;
  KernelKind kernel = KernelKind::exact;
  bool stop_on_hit = false;
  // Full recount of the move state and distance re-solve every this many steps.
  std::uint64_t verify_every = 1024;

  void validate(std::size_t k) const;
};

struct TraceSample {
  std::uint64_t step = 0;
  double modularity = 0.0;
  double distance = 0.0;
  Region region = Region::far;
};

struct ChainTrace {
  std::vector<TraceSample> samples;
  // First step in E_close; empty when never reached.
  std::optional<std::uint64_t> tau;
  // First step outside E_close; empty when the chain never left it.
  std::optional<std::uint64_t> first_exit_close;
  Partition terminal;
  std::uint64_t seed = 0;
  std::uint64_t steps = 0;
  std::uint64_t moves = 0;
  double min_distance = 1.0;
  double max_distance = 0.0;
  double wall_seconds = 0.0;
};

struct GreedyOptions {
  std::uint64_t sample_every = 1;
  std::uint64_t max_steps = std::numeric_limits<std::uint64_t>::max();
  double nu1 = 0.0;
  double nu2 = 1.0;
};

// Best-improvement ascent: each step applies the single relabeling with the
// largest modularity gain (ties by smallest (node, label)) until no move
// improves. Deterministic given the start.
ChainTrace greedy_run(const Graph& graph, const Partition& planted, const Partition& start,
                      const GreedyOptions& opts = {});

struct Move {
  Node node = 0;
  Label from = 0;
  Label to = 0;
};

// Neighbor index r in [0, n(k-1)) maps to node r / (k-1) and the
// (r % (k-1))-th label other than the node's current one.
Move decode_neighbor(const MoveState& state, std::size_t index);

// Exact kernel probabilities over the n(k-1) neighbors, indexed as above.
std::vector<double> kernel_probabilities(const MoveState& state, double beta);

// Draws a neighbor index from the heat-bath kernel. Weights below e^-45 of
// the largest are treated as zero (total neglected mass < n k e^-45).
std::size_t sample_neighbor(const MoveState& state, double beta, Rng& rng, std::vector<double>& scratch);

// One transition of the configured kernel. Returns the applied move; for a
// rejected Metropolis proposal from == to.
Move mcmc_step(MoveState& state, const ChainConfig& cfg, Rng& rng, std::vector<double>& scratch);

// Runs up to max_steps transitions from `start`, tracking the distance to
// the planted partition after every step.
ChainTrace mcmc_run(const Graph& graph, const Partition& planted, const Partition& start, const ChainConfig& cfg);

// Visit frequencies of A_1..A_T over labelings indexed by sum_u label_u k^u.
std::vector<double> chain_occupation(const Graph& graph, const Partition& start, const ChainConfig& cfg);

// Exact Gibbs law exp(beta n q_A)/Z over all k^n labelings.
struct GibbsTable {
  std::size_t n = 0;
  std::size_t k = 0;
  double beta = 0.0;
  double log_z = 0.0;
  std::vector<double> modularity;
  std::vector<double> distance;
  std::vector<double> probability;
  // Stationary law of the heat-bath kernel, proportional to
  // exp(beta n q_A) * sum over neighbors B of exp(beta n q_B).
  std::vector<double> kernel_stationary;

  double z() const;
  // Gibbs mass on {d <= zeta}.
  double mass_close(double zeta) const;
};

inline constexpr std::size_t kGibbsStateBudget = 1'000'000;

GibbsTable exact_gibbs(const Graph& graph, const Partition& planted, double beta);

double total_variation(const std::vector<double>& p, const std::vector<double>& q);

// (ln k + 1) / x: the smallest beta with ln k - beta x <= -1.
double beta_rule(double x, std::size_t k);

struct OgpParams {
  double nu = 0.0;
  double nu_prime = 0.0;
  double mu = 0.0;
  // Certificate band (nu1, nu2) = (1/(2(k-1)), nu).
  double nu1 = 0.0;
  double nu2 = 0.0;
  // Left solution of h(x) = h(nu'); default close-region boundary for chains.
  double nu_mirror = 0.0;
  double delta = 0.0;
  double delta_prime = 0.0;
};

// nu' = 2 nu / 3 + 1/(3k), mu = prefactor (h(0) - h(nu')), band
// (1/(2(k-1)), nu), delta = prefactor / k^2.
OgpParams default_ogp_params(const BlockModelParams& params, double nu);

struct Probe {
  std::string name;
  Partition partition;
};

struct ProbeResult {
  std::string name;
  double distance = 0.0;
  double modularity = 0.0;
  bool above_threshold = false;
  Region region = Region::far;
};

struct OgpReport {
  double threshold = 0.0;
  double q_star = 0.0;
  std::vector<ProbeResult> probes;
  std::size_t band_violations = 0;
  std::optional<ProbeResult> witness;
  // q* - best far probe, and best far probe - best between probe.
  std::optional<double> c1;
  std::optional<double> c2;
  // Largest distance among probes with q > q* - delta.
  double near_optimal_max_distance = 0.0;
};

// Probes with q >= q* - mu count as near-optimal, q* being the best probe
// score (a lower bound on the true optimum, so the threshold errs low and
// admits more probes into the check).
OgpReport ogp_certificate(const Graph& graph, const Partition& planted, const BlockModelParams& model,
                          const OgpParams& params, const std::vector<Probe>& probes);

struct ProbeOptions {
  std::vector<double> d_grid;
  std::size_t random_starts = 3;
  std::uint64_t seed = 0;
};

// Interpolated partitions for every ordered block pair and grid distance,
// the decoys, and greedy endpoints from the planted, the decoys and
// balanced random starts.
std::vector<Probe> standard_probes(const Graph& graph, const Partition& planted, const ProbeOptions& opts);

}  // namespace ogp
