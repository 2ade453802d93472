#include "ogp/dynamics.hpp"

#include <algorithm>
#include <chrono>
#include <climits>
#include <cmath>
#include <cstdio>

#include "ogp/assignment.hpp"
#include "ogp/error.hpp"
#include "ogp/landscape.hpp"
#include "ogp/partition_algebra.hpp"

namespace ogp {

Region classify(double distance, double nu1, double nu2) {
  if (distance <= nu1) return Region::close;
  if (distance >= nu2) return Region::far;
  return Region::between;
}

const char* region_name(Region r) {
  switch (r) {
    case Region::close:
      return "close";
    case Region::between:
      return "between";
    case Region::far:
      return "far";
  }
  return "?";
}

void ChainConfig::validate(std::size_t k) const {
  if (!(beta >= 0.0) || !std::isfinite(beta)) throw ParameterError("beta must be a finite non-negative number");
  if (sample_every == 0) throw ParameterError("sample_every must be positive");
  if (verify_every == 0) throw ParameterError("verify_every must be positive");
  const double top = 1.0 - 1.0 / static_cast<double>(k);
  if (!(nu1 >= 0.0 && nu1 < nu2 && nu2 <= top + 1e-12)) throw ParameterError("need 0 <= nu1 < nu2 <= 1 - 1/k");
}

namespace {

using Clock = std::chrono::steady_clock;

class Recorder {
 public:
  Recorder(ChainTrace& trace, double nu1, double nu2, std::uint64_t sample_every)
      : trace_(trace), nu1_(nu1), nu2_(nu2), every_(sample_every) {}

  void observe(std::uint64_t step, double distance) {
    trace_.min_distance = std::min(trace_.min_distance, distance);
    trace_.max_distance = std::max(trace_.max_distance, distance);
    if (distance <= nu1_) {
      if (!trace_.tau) trace_.tau = step;
    } else if (!trace_.first_exit_close) {
      trace_.first_exit_close = step;
    }
  }

  void maybe_sample(std::uint64_t step, const MoveState& state, double distance, bool force = false) {
    if (!force && step % every_ != 0) return;
    if (!trace_.samples.empty() && trace_.samples.back().step == step) return;
    trace_.samples.push_back({step, state.score(), distance, classify(distance, nu1_, nu2_)});
  }

 private:
  ChainTrace& trace_;
  double nu1_;
  double nu2_;
  std::uint64_t every_;
};

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

}  // namespace

ChainTrace greedy_run(const Graph& graph, const Partition& planted, const Partition& start,
                      const GreedyOptions& opts) {
  if (opts.sample_every == 0) throw ParameterError("sample_every must be positive");
  const auto t0 = Clock::now();
  MoveState state(graph, start);
  DistanceTracker tracker(start, planted);
  ChainTrace trace;
  Recorder rec(trace, opts.nu1, opts.nu2, opts.sample_every);
  rec.observe(0, tracker.distance());
  rec.maybe_sample(0, state, tracker.distance(), true);

  const std::size_t n = state.n();
  const std::size_t k = state.k();
  std::uint64_t step = 0;
  while (step < opts.max_steps) {
    long long best = 0;
    Node best_u = 0;
    Label best_l = 0;
    for (std::size_t u = 0; u < n; ++u) {
      const auto node = static_cast<Node>(u);
      for (Label l = 0; l < k; ++l) {
        const long long num = state.delta_numerator(node, l);
        if (num > best) {
          best = num;
          best_u = node;
          best_l = l;
        }
      }
    }
    if (best <= 0) break;
    const Label from = state.label(best_u);
    state.apply_move(best_u, best_l);
    tracker.move(planted[best_u], from, best_l);
    ++step;
    rec.observe(step, tracker.distance());
    rec.maybe_sample(step, state, tracker.distance());
  }
  rec.maybe_sample(step, state, tracker.distance(), true);
  trace.steps = step;
  trace.moves = step;
  trace.terminal = state.partition();
  trace.wall_seconds = seconds_since(t0);
  return trace;
}

Move decode_neighbor(const MoveState& state, std::size_t index) {
  const std::size_t k = state.k();
  if (k < 2 || index >= state.n() * (k - 1)) throw ParameterError("neighbor index out of range");
  const auto u = static_cast<Node>(index / (k - 1));
  const auto r = static_cast<Label>(index % (k - 1));
  const Label from = state.label(u);
  return {u, from, r < from ? r : r + 1};
}

namespace {

// Fills scratch with the integer delta numerators of all neighbors and
// returns the largest.
long long neighbor_numerators(const MoveState& state, std::vector<double>& scratch) {
  const std::size_t n = state.n();
  const std::size_t k = state.k();
  scratch.resize(n * (k - 1));
  long long best = LLONG_MIN;
  std::size_t idx = 0;
  for (std::size_t u = 0; u < n; ++u) {
    const auto node = static_cast<Node>(u);
    const Label cur = state.label(node);
    for (Label l = 0; l < k; ++l) {
      if (l == cur) continue;
      const long long num = state.delta_numerator(node, l);
      best = std::max(best, num);
      scratch[idx++] = static_cast<double>(num);
    }
  }
  return best;
}

double exponent_scale(const MoveState& state, double beta) {
  return beta * static_cast<double>(state.n()) * state.delta_scale();
}

}  // namespace

std::vector<double> kernel_probabilities(const MoveState& state, double beta) {
  if (state.k() < 2) throw ParameterError("the kernel needs k >= 2");
  std::vector<double> p;
  const double top = static_cast<double>(neighbor_numerators(state, p));
  const double scale = exponent_scale(state, beta);
  double total = 0.0;
  for (double& x : p) {
    x = std::exp(scale * (x - top));
    total += x;
  }
  for (double& x : p) x /= total;
  return p;
}

std::size_t sample_neighbor(const MoveState& state, double beta, Rng& rng, std::vector<double>& scratch) {
  if (state.k() < 2) throw ParameterError("the kernel needs k >= 2");
  const double top = static_cast<double>(neighbor_numerators(state, scratch));
  const double scale = exponent_scale(state, beta);
  // Numerators below `floor` contribute less than e^-45 relative weight.
  const double floor = scale > 0.0 ? top - 45.0 / scale : -INFINITY;
  double total = 0.0;
  for (double& x : scratch) {
    if (x > floor) total += std::exp(scale * (x - top));
    x = total;
  }
  const double r = rng.uniform() * total;
  const auto it = std::upper_bound(scratch.begin(), scratch.end(), r);
  const auto idx = static_cast<std::size_t>(it - scratch.begin());
  return std::min(idx, scratch.size() - 1);
}

Move mcmc_step(MoveState& state, const ChainConfig& cfg, Rng& rng, std::vector<double>& scratch) {
  Move mv;
  if (cfg.kernel == KernelKind::exact) {
    mv = decode_neighbor(state, sample_neighbor(state, cfg.beta, rng, scratch));
  } else {
    const std::size_t count = state.n() * (state.k() - 1);
    mv = decode_neighbor(state, static_cast<std::size_t>(rng.below(count)));
    const long long num = state.delta_numerator(mv.node, mv.to);
    if (num < 0 && !(rng.uniform() < std::exp(exponent_scale(state, cfg.beta) * static_cast<double>(num)))) {
      mv.to = mv.from;
      return mv;
    }
  }
  state.apply_move(mv.node, mv.to);
  return mv;
}

ChainTrace mcmc_run(const Graph& graph, const Partition& planted, const Partition& start, const ChainConfig& cfg) {
  cfg.validate(start.k());
  const auto t0 = Clock::now();
  MoveState state(graph, start);
  DistanceTracker tracker(start, planted);
  Rng rng(cfg.seed);
  std::vector<double> scratch;
  ChainTrace trace;
  trace.seed = cfg.seed;
  Recorder rec(trace, cfg.nu1, cfg.nu2, cfg.sample_every);
  rec.observe(0, tracker.distance());
  rec.maybe_sample(0, state, tracker.distance(), true);

  std::uint64_t step = 0;
  if (!(cfg.stop_on_hit && trace.tau)) {
    while (step < cfg.max_steps) {
      const Move mv = mcmc_step(state, cfg, rng, scratch);
      ++step;
      if (mv.from != mv.to) {
        tracker.move(planted[mv.node], mv.from, mv.to);
        ++trace.moves;
      }
      rec.observe(step, tracker.distance());
      if (step % cfg.verify_every == 0) {
        state.verify();
        tracker.verify(state.partition(), planted);
      }
      rec.maybe_sample(step, state, tracker.distance());
      if (cfg.stop_on_hit && trace.tau) break;
    }
  }
  rec.maybe_sample(step, state, tracker.distance(), true);
  trace.steps = step;
  trace.terminal = state.partition();
  trace.wall_seconds = seconds_since(t0);
  return trace;
}

namespace {

std::size_t state_count(std::size_t n, std::size_t k) {
  double count = 1.0;
  for (std::size_t u = 0; u < n; ++u) {
    count *= static_cast<double>(k);
    if (count > static_cast<double>(kGibbsStateBudget)) {
      throw ParameterError("k^n exceeds the enumeration budget of " + std::to_string(kGibbsStateBudget));
    }
  }
  return static_cast<std::size_t>(count);
}

std::size_t labeling_index(const Partition& part) {
  std::size_t idx = 0;
  for (std::size_t u = part.n(); u-- > 0;) idx = idx * part.k() + part[u];
  return idx;
}

}  // namespace

std::vector<double> chain_occupation(const Graph& graph, const Partition& start, const ChainConfig& cfg) {
  cfg.validate(start.k());
  const std::size_t k = start.k();
  const std::size_t states = state_count(start.n(), k);
  std::vector<std::size_t> place(start.n(), 1);
  for (std::size_t u = 1; u < start.n(); ++u) place[u] = place[u - 1] * k;
  MoveState state(graph, start);
  Rng rng(cfg.seed);
  std::vector<double> scratch;
  std::vector<std::uint64_t> visits(states, 0);
  std::size_t idx = labeling_index(start);
  for (std::uint64_t step = 0; step < cfg.max_steps; ++step) {
    const Move mv = mcmc_step(state, cfg, rng, scratch);
    idx = idx + place[mv.node] * mv.to - place[mv.node] * mv.from;
    ++visits[idx];
  }
  std::vector<double> freq(states, 0.0);
  if (cfg.max_steps == 0) return freq;
  for (std::size_t s = 0; s < states; ++s) freq[s] = static_cast<double>(visits[s]) / static_cast<double>(cfg.max_steps);
  return freq;
}

double GibbsTable::z() const { return std::exp(log_z); }

double GibbsTable::mass_close(double zeta) const {
  double mass = 0.0;
  for (std::size_t s = 0; s < probability.size(); ++s)
    if (distance[s] <= zeta + 1e-12) mass += probability[s];
  return mass;
}

GibbsTable exact_gibbs(const Graph& graph, const Partition& planted, double beta) {
  if (!(beta >= 0.0) || !std::isfinite(beta)) throw ParameterError("beta must be a finite non-negative number");
  const std::size_t n = graph.n();
  const std::size_t k = planted.k();
  if (planted.n() != n) throw ParameterError("planted partition size does not match graph");
  if (k < 2) throw ParameterError("enumeration needs k >= 2");
  const std::size_t states = state_count(n, k);

  GibbsTable table;
  table.n = n;
  table.k = k;
  table.beta = beta;
  table.modularity.resize(states);
  table.distance.resize(states);

  std::vector<Label> labels(n, 0);
  MoveState state(graph, Partition(labels, k));
  CountMatrix counts(k, 0);
  for (std::size_t u = 0; u < n; ++u) ++counts(0, planted[u]);
  for (std::size_t s = 0; s < states; ++s) {
    table.modularity[s] = state.score();
    table.distance[s] = 1.0 - static_cast<double>(max_assignment(counts).value) / static_cast<double>(n);
    if (s + 1 == states) break;
    std::size_t u = 0;
    while (labels[u] == k - 1) {
      --counts(labels[u], planted[u]);
      ++counts(0, planted[u]);
      labels[u] = 0;
      state.apply_move(static_cast<Node>(u), 0);
      ++u;
    }
    --counts(labels[u], planted[u]);
    ++labels[u];
    ++counts(labels[u], planted[u]);
    state.apply_move(static_cast<Node>(u), labels[u]);
  }

  const double scale = beta * static_cast<double>(n);
  double top = -INFINITY;
  for (double q : table.modularity) top = std::max(top, scale * q);
  std::vector<double> w(states);
  double total = 0.0;
  for (std::size_t s = 0; s < states; ++s) {
    w[s] = std::exp(scale * table.modularity[s] - top);
    total += w[s];
  }
  table.log_z = top + std::log(total);
  table.probability.resize(states);
  for (std::size_t s = 0; s < states; ++s) table.probability[s] = w[s] / total;

  std::vector<std::size_t> place(n, 1);
  for (std::size_t u = 1; u < n; ++u) place[u] = place[u - 1] * k;
  table.kernel_stationary.resize(states);
  double stat_total = 0.0;
  for (std::size_t s = 0; s < states; ++s) {
    double around = 0.0;
    for (std::size_t u = 0; u < n; ++u) {
      const std::size_t digit = (s / place[u]) % k;
      for (std::size_t l = 0; l < k; ++l)
        if (l != digit) around += w[s - digit * place[u] + l * place[u]];
    }
    table.kernel_stationary[s] = w[s] * around;
    stat_total += table.kernel_stationary[s];
  }
  for (double& x : table.kernel_stationary) x /= stat_total;
  return table;
}

double total_variation(const std::vector<double>& p, const std::vector<double>& q) {
  if (p.size() != q.size()) throw ParameterError("distributions differ in support size");
  double s = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) s += std::abs(p[i] - q[i]);
  return 0.5 * s;
}

double beta_rule(double x, std::size_t k) {
  if (!(x > 0.0)) throw ParameterError("beta rule needs a positive argument");
  if (k < 2) throw ParameterError("beta rule needs k >= 2");
  return (std::log(static_cast<double>(k)) + 1.0) / x;
}

OgpParams default_ogp_params(const BlockModelParams& params, double nu) {
  const std::size_t k = params.k;
  if (k < 3) throw ParameterError("the overlap gap construction needs k >= 3");
  const double kk = static_cast<double>(k);
  const double lo = 1.0 / (2.0 * (kk - 1.0));
  const double hi = 1.0 / kk;
  if (!(nu > lo && nu < hi)) throw ParameterError("nu must lie in (1/(2(k-1)), 1/k)");
  const double pref = params.prefactor();
  OgpParams out;
  out.nu = nu;
  out.nu_prime = 2.0 * nu / 3.0 + 1.0 / (3.0 * kk);
  out.mu = pref * (h_curve(0.0, k) - h_curve(out.nu_prime, k));
  out.nu1 = lo;
  out.nu2 = nu;
  out.nu_mirror = h_mirror(out.nu_prime, k);
  out.delta = pref / (kk * kk);
  out.delta_prime = near_optimal_distance(out.delta, pref, k);
  return out;
}

OgpReport ogp_certificate(const Graph& graph, const Partition& planted, const BlockModelParams& model,
                          const OgpParams& params, const std::vector<Probe>& probes) {
  if (probes.empty()) throw ParameterError("certificate needs at least one probe");
  if (!(params.mu > 0.0)) throw ParameterError("mu must be positive");
  if (!(params.nu1 >= 0.0 && params.nu1 < params.nu2)) throw ParameterError("need 0 <= nu1 < nu2");
  if (model.k != planted.k()) throw ParameterError("model k does not match the planted partition");
  OgpReport rep;
  rep.q_star = -INFINITY;
  for (const Probe& p : probes) {
    ProbeResult r;
    r.name = p.name;
    r.distance = distance(p.partition, planted).distance;
    r.modularity = modularity(graph, p.partition).score;
    r.region = classify(r.distance, params.nu1, params.nu2);
    rep.q_star = std::max(rep.q_star, r.modularity);
    rep.probes.push_back(std::move(r));
  }
  rep.threshold = rep.q_star - params.mu;
  double best_far = -INFINITY;
  double best_btw = -INFINITY;
  for (ProbeResult& r : rep.probes) {
    r.above_threshold = r.modularity >= rep.threshold;
    if (r.region == Region::far) best_far = std::max(best_far, r.modularity);
    if (r.region == Region::between) best_btw = std::max(best_btw, r.modularity);
    if (r.above_threshold && r.region == Region::between) ++rep.band_violations;
    if (r.above_threshold && r.region == Region::far && (!rep.witness || r.modularity > rep.witness->modularity)) {
      rep.witness = r;
    }
    if (r.modularity > rep.q_star - params.delta)
      rep.near_optimal_max_distance = std::max(rep.near_optimal_max_distance, r.distance);
  }
  if (std::isfinite(best_far)) {
    rep.c1 = rep.q_star - best_far;
    if (std::isfinite(best_btw)) rep.c2 = best_far - best_btw;
  }
  return rep;
}

namespace {

std::string fmt_d(double d) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", d);
  return buf;
}

}  // namespace

std::vector<Probe> standard_probes(const Graph& graph, const Partition& planted, const ProbeOptions& opts) {
  const std::size_t k = planted.k();
  const double kk = static_cast<double>(k);
  std::vector<Probe> out;
  for (double d : opts.d_grid) {
    if (!(d >= 0.0 && d <= 1.0 / kk + 1e-12)) throw ParameterError("probe distances must lie in [0, 1/k]");
    const double t = std::min(1.0, d * kk);
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t j = 0; j < k; ++j)
        if (i != j) {
          out.push_back({"interp(" + std::to_string(i) + "," + std::to_string(j) + ",d=" + fmt_d(d) + ")",
                         interpolated_partition(planted, i, j, t)});
        }
  }
  std::vector<Probe> starts;
  starts.push_back({"planted", planted});
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = i + 1; j < k; ++j)
      starts.push_back({"decoy(" + std::to_string(i) + "," + std::to_string(j) + ")", decoy(planted, i, j)});
  for (std::size_t r = 0; r < opts.random_starts; ++r) {
    starts.push_back({"random" + std::to_string(r), balanced_random_partition(planted.n(), k, derive_seed(opts.seed, r))});
  }
  for (const Probe& s : starts) {
    if (s.name != "planted" && s.name.rfind("random", 0) != 0) out.push_back(s);
    GreedyOptions g;
    g.sample_every = std::numeric_limits<std::uint64_t>::max();
    out.push_back({"greedy:" + s.name, greedy_run(graph, planted, s.partition, g).terminal});
  }
  return out;
}

}  // namespace ogp
