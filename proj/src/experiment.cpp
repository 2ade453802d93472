#include "ogp/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <sstream>

#include "ogp/dynamics.hpp"
#include "ogp/landscape.hpp"
#include "ogp/modularity.hpp"
#include "ogp/parallel.hpp"
#include "ogp/partition_algebra.hpp"
#include "ogp/sweep.hpp"
#include "ogp/verify.hpp"

namespace ogp {

using nlohmann::json;

namespace {

constexpr const char* kVersion = OGP_VERSION;

struct KindName {
  ExperimentKind kind;
  const char* name;
};

constexpr KindName kKinds[] = {
    {ExperimentKind::generate, "generate"},   {ExperimentKind::score, "score"},
    {ExperimentKind::landscape, "landscape"}, {ExperimentKind::oracle, "oracle"},
    {ExperimentKind::greedy, "greedy"},       {ExperimentKind::mcmc, "mcmc"},
    {ExperimentKind::gibbs_oracle, "gibbs-oracle"}, {ExperimentKind::ogp_cert, "ogp-cert"},
    {ExperimentKind::verify, "verify"},
};

bool needs_model(ExperimentKind kind) {
  return kind != ExperimentKind::oracle && kind != ExperimentKind::verify && kind != ExperimentKind::score;
}

bool needs_seeds(ExperimentKind kind) {
  return kind != ExperimentKind::oracle && kind != ExperimentKind::verify && kind != ExperimentKind::score;
}

// Typed lookup in the options object; errors name the field.
template <class T>
T opt(const json& options, const std::string& key, T fallback) {
  const auto it = options.find(key);
  if (it == options.end() || it->is_null()) return fallback;
  try {
    return it->get<T>();
  } catch (const json::exception&) {
    throw ParameterError("options." + key + ": wrong type");
  }
}

std::string num(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.10g", x);
  return buf;
}

json model_json(const BlockModelParams& m) {
  return {{"n", m.n}, {"k", m.k}, {"a", m.a}, {"b", m.b}, {"omega", m.omega}, {"p", m.p()}, {"q", m.q()}};
}

class Run {
 public:
  Run(const ExperimentConfig& config, std::ostream& log) : config_(config), log_(log), hash_(config_hash(config)) {
    std::error_code ec;
    std::filesystem::create_directories(config.output_dir, ec);
    if (ec) throw IoError("cannot create output directory " + config.output_dir + ": " + ec.message());
  }

  std::string path(const std::string& name) const { return (std::filesystem::path(config_.output_dir) / name).string(); }

  // CSV with a leading comment line carrying the provenance fields.
  void write_csv(const std::string& name, const std::string& header, const std::vector<std::string>& rows,
                 const std::string& seeds) {
    std::ostringstream body;
    body << "# ogp-modlab " << kVersion << " config_hash=" << hash_ << " seeds=" << seeds << "\n" << header << "\n";
    for (const auto& r : rows) body << r << "\n";
    write_file(name, body.str());
  }

  void write_json(const std::string& name, json meta) {
    meta["config_hash"] = hash_;
    meta["version"] = kVersion;
    meta["kind"] = kind_name(config_.kind);
    if (config_.model) meta["params"] = model_json(*config_.model);
    write_file(name, meta.dump(2) + "\n");
  }

  void record(const std::string& p) { artifacts_.push_back(p); }

  RunResult finish(ExitCode code, json summary) {
    return {code, std::move(artifacts_), std::move(summary)};
  }

  const ExperimentConfig& config() const { return config_; }
  std::ostream& log() { return log_; }

 private:
  void write_file(const std::string& name, const std::string& content) {
    const std::string p = path(name);
    std::ofstream out(p, std::ios::binary);
    if (!out) throw IoError("cannot open " + p + " for writing");
    out << content;
    if (!out) throw IoError("write failed for " + p);
    artifacts_.push_back(p);
  }

  const ExperimentConfig& config_;
  std::ostream& log_;
  std::string hash_;
  std::vector<std::string> artifacts_;
};

std::string seed_tag(std::uint64_t s) { return "seed" + std::to_string(s); }

std::vector<double> d_grid(const json& options, std::size_t k) {
  if (options.contains("d_grid")) {
    const auto grid = opt<std::vector<double>>(options, "d_grid", {});
    if (grid.empty()) throw ParameterError("options.d_grid: must be nonempty");
    for (double d : grid)
      if (!(d >= 0.0 && d <= 1.0 / static_cast<double>(k) + 1e-12))
        throw ParameterError("options.d_grid: values must lie in [0, 1/k]");
    return grid;
  }
  const auto points = opt<std::size_t>(options, "d_points", 11);
  if (points < 2) throw ParameterError("options.d_points: need at least 2");
  std::vector<double> grid(points);
  for (std::size_t i = 0; i < points; ++i)
    grid[i] = static_cast<double>(i) / (static_cast<double>(points - 1) * static_cast<double>(k));
  return grid;
}

Partition start_partition(const json& options, const Partition& planted, std::uint64_t seed) {
  const auto start = opt<std::string>(options, "start", "decoy");
  if (start == "planted") return planted;
  if (start == "decoy") return decoy(planted, opt<std::size_t>(options, "decoy_i", 0), opt<std::size_t>(options, "decoy_j", 1));
  if (start == "random") return balanced_random_partition(planted.n(), planted.k(), derive_seed(seed, 1));
  throw ParameterError("options.start: expected planted, decoy or random");
}

std::vector<std::string> trace_rows(const ChainTrace& trace) {
  std::vector<std::string> rows;
  rows.reserve(trace.samples.size());
  for (const auto& s : trace.samples)
    rows.push_back(std::to_string(s.step) + "," + num(s.modularity) + "," + num(s.distance) + "," + region_name(s.region));
  return rows;
}

json opt_json(const std::optional<std::uint64_t>& v) { return v ? json(*v) : json(nullptr); }
json opt_json(const std::optional<double>& v) { return v ? json(*v) : json(nullptr); }

RunResult run_generate(Run& run) {
  const auto& cfg = run.config();
  for (std::uint64_t seed : cfg.seeds) {
    const SbmInstance inst = generate_sbm(*cfg.model, seed);
    save_graph(inst.graph, run.path("graph_" + seed_tag(seed) + ".txt"));
    run.record(run.path("graph_" + seed_tag(seed) + ".txt"));
    save_partition(inst.planted, run.path("planted_" + seed_tag(seed) + ".txt"));
    run.record(run.path("planted_" + seed_tag(seed) + ".txt"));
    run.write_json("generate_" + seed_tag(seed) + ".json",
                   {{"seed", seed}, {"m", inst.graph.m()}, {"graph", "graph_" + seed_tag(seed) + ".txt"},
                    {"planted", "planted_" + seed_tag(seed) + ".txt"}});
    run.log() << "seed " << seed << ": n=" << inst.graph.n() << " m=" << inst.graph.m() << "\n";
  }
  return run.finish(ExitCode::ok, {{"seeds", cfg.seeds}});
}

RunResult run_score(Run& run) {
  const auto& cfg = run.config();
  const auto graph_path = opt<std::string>(cfg.options, "graph", "");
  const auto part_path = opt<std::string>(cfg.options, "partition", "");
  if (graph_path.empty()) throw ParameterError("options.graph: required");
  if (part_path.empty()) throw ParameterError("options.partition: required");
  const Graph graph = load_graph(graph_path);
  std::size_t k = cfg.model ? cfg.model->k : opt<std::size_t>(cfg.options, "k", 0);
  if (k == 0) throw ParameterError("k: required (top level or options.k)");
  const Partition part = load_partition(part_path, k);
  if (part.n() != graph.n()) throw ParameterError("options.partition: node count does not match the graph");
  const auto planted_path = opt<std::string>(cfg.options, "planted", "");
  const Partition planted = planted_path.empty() ? planted_partition(graph.n(), k) : load_partition(planted_path, k);
  const ModularityBreakdown q = modularity(graph, part);
  const DistanceReport d = distance(part, planted);
  json out{{"score", q.score},         {"coverage", q.coverage},       {"degree_tax", q.degree_tax},
           {"distance", d.distance},   {"permutation", d.best_permutation}, {"overlap", d.aligned_overlap}};
  out["mean_field_prediction"] =
      cfg.model ? json(mean_field_prediction(*cfg.model, signature(part, planted))) : json(nullptr);
  run.log() << out.dump() << "\n";
  run.write_json("score.json", out);
  return run.finish(ExitCode::ok, out);
}

RunResult run_landscape(Run& run) {
  const auto& cfg = run.config();
  const BlockModelParams& model = *cfg.model;
  SweepOptions opts;
  opts.d_values = d_grid(cfg.options, model.k);
  if (cfg.options.contains("band")) opts.band = opt<double>(cfg.options, "band", 0.0);
  if (cfg.options.contains("search_budget")) opts.search_budget = opt<std::uint64_t>(cfg.options, "search_budget", 0);
  std::vector<std::vector<LandscapePoint>> sweeps(cfg.seeds.size());
  parallel_for(cfg.seeds.size(), [&](std::size_t i) {
    const SbmInstance inst = generate_sbm(model, cfg.seeds[i]);
    sweeps[i] = empirical_H_sweep(inst.graph, inst.planted, model, opts);
  });
  std::vector<std::string> rows;
  for (std::size_t i = 0; i < cfg.seeds.size(); ++i)
    for (const auto& p : sweeps[i])
      rows.push_back(num(p.d) + "," + num(p.t) + "," + num(p.h_value) + "," + num(p.modularity_theory) + "," +
                     (p.H_empirical ? num(*p.H_empirical) : std::string("nan")) + "," + std::to_string(cfg.seeds[i]));
  std::string seeds;
  for (std::size_t i = 0; i < cfg.seeds.size(); ++i) seeds += (i ? ";" : "") + std::to_string(cfg.seeds[i]);
  run.write_csv("landscape.csv", "d,t,h,modularity_theory,H_empirical,seed", rows, seeds);
  json meta{{"seeds", cfg.seeds}, {"d_grid", opts.d_values}, {"rows", rows.size()}};
  run.write_json("landscape.json", meta);
  run.log() << "landscape: " << rows.size() << " rows\n";
  return run.finish(ExitCode::ok, meta);
}

RunResult run_oracle(Run& run) {
  const auto& cfg = run.config();
  const std::size_t k = cfg.model ? cfg.model->k : opt<std::size_t>(cfg.options, "k", 3);
  const auto resolution = opt<std::size_t>(cfg.options, "N", 8);
  const bool balanced = opt<bool>(cfg.options, "balanced", false);
  std::vector<double> ts;
  if (cfg.options.contains("t") && cfg.options["t"].is_array()) {
    ts = opt<std::vector<double>>(cfg.options, "t", {});
  } else {
    ts.push_back(opt<double>(cfg.options, "t", 0.5));
  }
  if (ts.empty()) throw ParameterError("options.t: must be nonempty");
  json comparisons = json::array();
  bool ok = true;
  for (double t : ts) {
    const GridMaxResult r = grid_max_g({k, t, balanced}, resolution);
    json c{{"t", t}, {"grid_max", r.value}, {"grid_max_scaled", r.scaled_value}, {"candidates", r.candidates}};
    if (t <= 1.0) {
      const double closed = max_g_closed_form(k, t).value;
      c["closed_form"] = closed;
      c["gap"] = closed - r.value;
      // Balanced maxima may sit below the unconstrained closed form.
      ok = ok && r.value <= closed + 1e-12 && (balanced || std::abs(closed - r.value) <= 1e-12);
    } else {
      c["closed_form"] = nullptr;
      c["far_bound"] = far_bound(k);
      c["gap"] = far_bound(k) - r.value;
      ok = ok && r.value < far_bound(k);
    }
    comparisons.push_back(c);
  }
  json out{{"k", k}, {"N", resolution}, {"balanced", balanced}, {"comparisons", comparisons}, {"seed", nullptr}};
  if (comparisons.size() == 1)
    for (const char* key : {"closed_form", "grid_max", "gap"}) out[key] = comparisons[0][key];
  run.write_json("oracle.json", out);
  run.log() << comparisons.dump() << "\n";
  return run.finish(ok ? ExitCode::ok : ExitCode::invariant, out);
}

RunResult run_greedy(Run& run) {
  const auto& cfg = run.config();
  const BlockModelParams& model = *cfg.model;
  GreedyOptions g;
  g.sample_every = opt<std::uint64_t>(cfg.options, "sample_every", 1);
  if (g.sample_every == 0) throw ParameterError("options.sample_every: must be positive");
  g.max_steps = opt<std::uint64_t>(cfg.options, "max_steps", g.max_steps);
  g.nu1 = opt<double>(cfg.options, "nu1", 1.0 / (2.0 * static_cast<double>(model.k - 1)));
  g.nu2 = opt<double>(cfg.options, "nu2", 1.0 / static_cast<double>(model.k) - 1e-9);
  std::vector<ChainTrace> traces(cfg.seeds.size());
  std::vector<Partition> planted(cfg.seeds.size());
  parallel_for(cfg.seeds.size(), [&](std::size_t i) {
    const SbmInstance inst = generate_sbm(model, cfg.seeds[i]);
    planted[i] = inst.planted;
    traces[i] = greedy_run(inst.graph, inst.planted, start_partition(cfg.options, inst.planted, cfg.seeds[i]), g);
  });
  json runs = json::array();
  for (std::size_t i = 0; i < cfg.seeds.size(); ++i) {
    const std::uint64_t seed = cfg.seeds[i];
    const ChainTrace& t = traces[i];
    run.write_csv("greedy_" + seed_tag(seed) + ".csv", "step,modularity,distance,region", trace_rows(t),
                  std::to_string(seed));
    const double d_end = distance(t.terminal, planted[i]).distance;
    json meta{{"seed", seed},     {"beta", nullptr},      {"nu1", g.nu1},
              {"nu2", g.nu2},     {"tau", opt_json(t.tau)}, {"steps", t.steps},
              {"terminal_distance", d_end}, {"start", opt<std::string>(cfg.options, "start", "decoy")}};
    run.write_json("greedy_" + seed_tag(seed) + ".json", meta);
    run.log() << "seed " << seed << ": " << t.steps << " steps, terminal distance " << d_end << "\n";
    runs.push_back(meta);
  }
  return run.finish(ExitCode::ok, {{"runs", runs}});
}

OgpParams ogp_params_from(const ExperimentConfig& cfg) {
  const double kk = static_cast<double>(cfg.model->k);
  // Default nu: midpoint of (1/(2(k-1)), 1/k), 0.29 at k = 3; options.nu overrides.
  return default_ogp_params(*cfg.model, opt<double>(cfg.options, "nu", 0.5 * (1.0 / (2.0 * (kk - 1.0)) + 1.0 / kk)));
}

std::vector<Probe> probes_for(const ExperimentConfig& cfg, const SbmInstance& inst, std::uint64_t seed) {
  ProbeOptions po;
  po.d_grid = d_grid(cfg.options, cfg.model->k);
  po.random_starts = opt<std::size_t>(cfg.options, "random_starts", 3);
  po.seed = seed;
  return standard_probes(inst.graph, inst.planted, po);
}

RunResult run_mcmc(Run& run) {
  const auto& cfg = run.config();
  const BlockModelParams& model = *cfg.model;
  const bool auto_beta = !cfg.options.contains("beta") || cfg.options["beta"] == "auto";
  std::optional<OgpParams> ogp;
  if (model.k >= 3) ogp = ogp_params_from(cfg);
  if (auto_beta && !ogp) throw ParameterError("options.beta: required when k < 3");
  ChainConfig base;
  if (!auto_beta) base.beta = opt<double>(cfg.options, "beta", 0.0);
  base.max_steps = opt<std::uint64_t>(cfg.options, "max_steps", 100000);
  base.sample_every = opt<std::uint64_t>(cfg.options, "sample_every", 1000);
  base.nu1 = opt<double>(cfg.options, "nu1", ogp ? ogp->nu_mirror : 0.0);
  base.nu2 = opt<double>(cfg.options, "nu2", ogp ? ogp->nu2 : 1.0 - 1.0 / static_cast<double>(model.k));
  base.stop_on_hit = opt<bool>(cfg.options, "stop_on_hit", false);
  const auto kernel = opt<std::string>(cfg.options, "kernel", "exact");
  if (kernel == "exact") {
    base.kernel = KernelKind::exact;
  } else if (kernel == "metropolis") {
    base.kernel = KernelKind::metropolis;
  } else {
    throw ParameterError("options.kernel: expected exact or metropolis");
  }
  if (!auto_beta) base.validate(model.k);

  struct Out {
    ChainTrace trace;
    double beta = 0.0;
    std::optional<double> c2;
  };
  std::vector<Out> outs(cfg.seeds.size());
  parallel_for(cfg.seeds.size(), [&](std::size_t i) {
    const std::uint64_t seed = cfg.seeds[i];
    const SbmInstance inst = generate_sbm(model, seed);
    ChainConfig c = base;
    if (auto_beta) {
      const OgpReport rep = ogp_certificate(inst.graph, inst.planted, model, *ogp, probes_for(cfg, inst, seed));
      if (!rep.c2 || !(*rep.c2 > 0.0)) throw InvariantError("measured c2 is not positive; set options.beta");
      outs[i].c2 = rep.c2;
      c.beta = beta_rule(*rep.c2, model.k);
    }
    c.seed = derive_seed(seed, 2);
    c.validate(model.k);
    outs[i].beta = c.beta;
    outs[i].trace = mcmc_run(inst.graph, inst.planted, start_partition(cfg.options, inst.planted, seed), c);
  });
  json runs = json::array();
  for (std::size_t i = 0; i < cfg.seeds.size(); ++i) {
    const std::uint64_t seed = cfg.seeds[i];
    const ChainTrace& t = outs[i].trace;
    run.write_csv("mcmc_" + seed_tag(seed) + ".csv", "step,modularity,distance,region", trace_rows(t),
                  std::to_string(seed));
    json meta{{"seed", seed},
              {"beta", outs[i].beta},
              {"c2", opt_json(outs[i].c2)},
              {"nu1", base.nu1},
              {"nu2", base.nu2},
              {"tau", opt_json(t.tau)},
              {"first_exit_close", opt_json(t.first_exit_close)},
              {"steps", t.steps},
              {"moves", t.moves},
              {"kernel", kernel},
              {"min_distance", t.min_distance},
              {"max_distance", t.max_distance}};
    run.write_json("mcmc_" + seed_tag(seed) + ".json", meta);
    run.log() << "seed " << seed << ": beta " << outs[i].beta << ", tau "
              << (t.tau ? std::to_string(*t.tau) : std::string("none")) << " after " << t.steps << " steps\n";
    runs.push_back(meta);
  }
  return run.finish(ExitCode::ok, {{"runs", runs}});
}

RunResult run_gibbs(Run& run) {
  const auto& cfg = run.config();
  const BlockModelParams& model = *cfg.model;
  ChainConfig base;
  base.beta = opt<double>(cfg.options, "beta", 1.0);
  base.max_steps = opt<std::uint64_t>(cfg.options, "steps", 1000000);
  base.nu2 = 1.0 - 1.0 / static_cast<double>(model.k);
  const auto kernel = opt<std::string>(cfg.options, "kernel", "exact");
  if (kernel != "exact" && kernel != "metropolis") throw ParameterError("options.kernel: expected exact or metropolis");
  base.kernel = kernel == "exact" ? KernelKind::exact : KernelKind::metropolis;
  base.validate(model.k);
  json runs = json::array();
  for (std::uint64_t seed : cfg.seeds) {
    const SbmInstance inst = generate_sbm(model, seed);
    const GibbsTable table = exact_gibbs(inst.graph, inst.planted, base.beta);
    ChainConfig c = base;
    c.seed = derive_seed(seed, 3);
    const std::vector<double> occ = chain_occupation(inst.graph, inst.planted, c);
    std::vector<std::string> rows;
    rows.reserve(occ.size());
    for (std::size_t s = 0; s < occ.size(); ++s)
      rows.push_back(std::to_string(s) + "," + num(table.modularity[s]) + "," + num(table.distance[s]) + "," +
                     num(table.probability[s]) + "," + num(table.kernel_stationary[s]) + "," + num(occ[s]));
    run.write_csv("gibbs_" + seed_tag(seed) + ".csv", "state,modularity,distance,gibbs,kernel_stationary,empirical",
                  rows, std::to_string(seed));
    json meta{{"seed", seed},
              {"beta", base.beta},
              {"steps", base.max_steps},
              {"kernel", kernel},
              {"log_z", table.log_z},
              {"tv_gibbs", total_variation(occ, table.probability)},
              {"tv_kernel_stationary", total_variation(occ, table.kernel_stationary)},
              {"nu1", nullptr},
              {"nu2", nullptr},
              {"tau", nullptr}};
    run.write_json("gibbs_" + seed_tag(seed) + ".json", meta);
    run.log() << "seed " << seed << ": TV to Gibbs " << meta["tv_gibbs"].get<double>() << "\n";
    runs.push_back(meta);
  }
  return run.finish(ExitCode::ok, {{"runs", runs}});
}

RunResult run_ogp(Run& run) {
  const auto& cfg = run.config();
  const BlockModelParams& model = *cfg.model;
  const OgpParams params = ogp_params_from(cfg);
  std::vector<OgpReport> reports(cfg.seeds.size());
  parallel_for(cfg.seeds.size(), [&](std::size_t i) {
    const SbmInstance inst = generate_sbm(model, cfg.seeds[i]);
    reports[i] = ogp_certificate(inst.graph, inst.planted, model, params, probes_for(cfg, inst, cfg.seeds[i]));
  });
  std::size_t violations = 0;
  json runs = json::array();
  for (std::size_t i = 0; i < cfg.seeds.size(); ++i) {
    const std::uint64_t seed = cfg.seeds[i];
    const OgpReport& r = reports[i];
    std::vector<std::string> rows;
    for (const auto& p : r.probes)
      rows.push_back(p.name + "," + num(p.distance) + "," + num(p.modularity) + "," +
                     (p.above_threshold ? "1" : "0") + "," + region_name(p.region));
    run.write_csv("ogp_" + seed_tag(seed) + ".csv", "probe,distance,modularity,above_threshold,region", rows,
                  std::to_string(seed));
    json meta{{"seed", seed},
              {"nu", params.nu},
              {"nu_prime", params.nu_prime},
              {"nu1", params.nu1},
              {"nu2", params.nu2},
              {"mu", params.mu},
              {"delta", params.delta},
              {"delta_prime", params.delta_prime},
              {"threshold", r.threshold},
              {"q_star", r.q_star},
              {"band_violations", r.band_violations},
              {"witness", r.witness ? json(r.witness->name) : json(nullptr)},
              {"c1", opt_json(r.c1)},
              {"c2", opt_json(r.c2)},
              {"near_optimal_max_distance", r.near_optimal_max_distance},
              {"beta", nullptr},
              {"tau", nullptr}};
    run.write_json("ogp_" + seed_tag(seed) + ".json", meta);
    run.log() << "seed " << seed << ": threshold " << r.threshold << ", " << r.band_violations << " band violations\n";
    violations += r.band_violations;
    runs.push_back(meta);
  }
  return run.finish(violations == 0 ? ExitCode::ok : ExitCode::invariant, {{"runs", runs}});
}

RunResult run_verify(Run& run) {
  const auto& cfg = run.config();
  const auto level_name = opt<std::string>(cfg.options, "level", "quick");
  if (level_name != "quick" && level_name != "full") throw ParameterError("options.level: expected quick or full");
  const auto only = opt<std::vector<int>>(cfg.options, "criteria", {});
  const auto results =
      verify_suite(level_name == "full" ? VerifyLevel::full : VerifyLevel::quick, run.log(), only);
  json rows = json::array();
  bool ok = true;
  for (const auto& r : results) {
    ok = ok && r.passed;
    rows.push_back({{"id", r.id}, {"title", r.title}, {"passed", r.passed}, {"summary", r.summary}});
  }
  json out{{"level", level_name}, {"criteria", rows}, {"seed", nullptr}};
  run.write_json("verify.json", out);
  return run.finish(ok ? ExitCode::ok : ExitCode::invariant, out);
}

}  // namespace

const char* kind_name(ExperimentKind kind) {
  for (const auto& k : kKinds)
    if (k.kind == kind) return k.name;
  return "unknown";
}

ExperimentKind parse_kind(const std::string& name) {
  for (const auto& k : kKinds)
    if (name == k.name) return k.kind;
  throw ParameterError("kind: unknown experiment '" + name + "'");
}

void ExperimentConfig::validate() const {
  if (needs_model(kind) && !model) throw ParameterError("n: model parameters (n, k, a, b, omega) are required");
  if (model) model->validate();
  if (needs_seeds(kind) && seeds.empty()) throw ParameterError("seeds: must be a nonempty list");
  if (output_dir.empty()) throw ParameterError("output_dir: must be nonempty");
  if (!options.is_object()) throw ParameterError("options: must be an object");
}

bool ExperimentConfig::operator==(const ExperimentConfig& other) const {
  return to_json(*this) == to_json(other);
}

json to_json(const ExperimentConfig& config) {
  json j{{"kind", kind_name(config.kind)}, {"seeds", config.seeds}, {"output_dir", config.output_dir},
         {"options", config.options}};
  if (config.model) {
    j["n"] = config.model->n;
    j["k"] = config.model->k;
    j["a"] = config.model->a;
    j["b"] = config.model->b;
    j["omega"] = config.model->omega;
  }
  return j;
}

ExperimentConfig config_from_json(const json& j, std::optional<ExperimentKind> default_kind) {
  if (!j.is_object()) throw ParameterError("config: top level must be a JSON object");
  static const char* known[] = {"kind", "n", "k", "a", "b", "omega", "p", "q", "seed", "seeds", "output_dir", "options"};
  for (const auto& [key, _] : j.items())
    if (std::find_if(std::begin(known), std::end(known), [&](const char* k) { return key == k; }) == std::end(known))
      throw ParameterError(key + ": unknown config field");
  ExperimentConfig c;
  const auto field = [&](const char* key, auto fallback) {
    using T = decltype(fallback);
    if (!j.contains(key)) return fallback;
    try {
      return j.at(key).get<T>();
    } catch (const json::exception&) {
      throw ParameterError(std::string(key) + ": wrong type");
    }
  };
  if (j.contains("kind")) {
    c.kind = parse_kind(field("kind", std::string()));
  } else if (default_kind) {
    c.kind = *default_kind;
  } else {
    throw ParameterError("kind: required");
  }
  if (j.contains("n")) {
    const auto n = field("n", std::size_t{0});
    const auto k = field("k", std::size_t{2});
    if (j.contains("p") || j.contains("q")) {
      if (j.contains("a") || j.contains("omega")) throw ParameterError("p: give either (a, b, omega) or (p, q)");
      c.model = BlockModelParams::from_probabilities(n, k, field("p", 0.0), field("q", 0.0));
    } else {
      c.model = BlockModelParams{n, k, field("a", 0.0), field("b", 0.0), field("omega", 0.0)};
    }
  } else {
    for (const char* key : {"k", "a", "b", "omega", "p", "q"})
      if (j.contains(key) && c.kind != ExperimentKind::oracle && c.kind != ExperimentKind::score)
        throw ParameterError(std::string("n: required when ") + key + " is given");
  }
  if (j.contains("seeds")) {
    c.seeds = field("seeds", std::vector<std::uint64_t>{});
    if (j.contains("seed")) throw ParameterError("seed: give either seed or seeds");
  } else if (j.contains("seed")) {
    c.seeds = {field("seed", std::uint64_t{0})};
  }
  c.output_dir = field("output_dir", std::string("out"));
  if (j.contains("options")) c.options = j.at("options");
  if (!c.model && j.contains("k")) {
    const auto k = field("k", std::size_t{3});
    if (c.options.contains("k") && c.options["k"] != k) throw ParameterError("k: conflicts with options.k");
    c.options["k"] = k;
  }
  c.validate();
  return c;
}

ExperimentConfig load_config(const std::string& path, std::optional<ExperimentKind> default_kind) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open config " + path);
  json j;
  try {
    j = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ParameterError(std::string("config: ") + e.what());
  }
  return config_from_json(j, default_kind);
}

std::string config_hash(const ExperimentConfig& config) {
  // Where artifacts land is not part of the experiment's identity.
  json j = to_json(config);
  j.erase("output_dir");
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : j.dump()) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

RunResult run_experiment(const ExperimentConfig& config, std::ostream& log) {
  config.validate();
  Run run(config, log);
  switch (config.kind) {
    case ExperimentKind::generate: return run_generate(run);
    case ExperimentKind::score: return run_score(run);
    case ExperimentKind::landscape: return run_landscape(run);
    case ExperimentKind::oracle: return run_oracle(run);
    case ExperimentKind::greedy: return run_greedy(run);
    case ExperimentKind::mcmc: return run_mcmc(run);
    case ExperimentKind::gibbs_oracle: return run_gibbs(run);
    case ExperimentKind::ogp_cert: return run_ogp(run);
    case ExperimentKind::verify: return run_verify(run);
  }
  throw ParameterError("kind: unsupported");
}

}  // namespace ogp
