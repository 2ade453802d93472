#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "ogp/circulation.hpp"
#include "ogp/dynamics.hpp"
#include "ogp/experiment.hpp"
#include "ogp/landscape.hpp"
#include "ogp/modularity.hpp"
#include "ogp/partition_algebra.hpp"
#include "ogp/sbm_graph.hpp"
#include "ogp/sweep.hpp"
#include "ogp/verify.hpp"

namespace py = pybind11;
using namespace ogp;

namespace {

using Rows = std::vector<std::vector<double>>;

Rows to_rows(const RealMatrix& x) {
  Rows r(x.k(), std::vector<double>(x.k()));
  for (std::size_t i = 0; i < x.k(); ++i)
    for (std::size_t j = 0; j < x.k(); ++j) r[i][j] = x(i, j);
  return r;
}

RealMatrix from_rows(const Rows& rows) {
  RealMatrix x(rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != rows.size()) throw ParameterError("matrix must be square");
    for (std::size_t j = 0; j < rows.size(); ++j) x(i, j) = rows[i][j];
  }
  return x;
}

py::dict trace_dict(const ChainTrace& t) {
  py::list samples;
  for (const auto& s : t.samples)
    samples.append(py::dict(py::arg("step") = s.step, py::arg("modularity") = s.modularity,
                            py::arg("distance") = s.distance, py::arg("region") = region_name(s.region)));
  return py::dict(py::arg("samples") = samples, py::arg("tau") = t.tau,
                  py::arg("first_exit_close") = t.first_exit_close, py::arg("terminal") = t.terminal,
                  py::arg("steps") = t.steps, py::arg("moves") = t.moves, py::arg("min_distance") = t.min_distance,
                  py::arg("max_distance") = t.max_distance);
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Modularity landscapes and overlap-gap experiments on the stochastic block model";
  m.attr("__version__") = OGP_VERSION;

  static py::exception<Error> base_error(m, "OgpError", PyExc_RuntimeError);
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const ParameterError& e) {
      PyErr_SetString(PyExc_ValueError, e.what());
    } catch (const Error& e) {
      base_error(e.what());
    }
  });

  py::class_<BlockModelParams>(m, "BlockModelParams")
      .def(py::init([](std::size_t n, std::size_t k, double a, double b, double omega) {
             BlockModelParams p{n, k, a, b, omega};
             p.validate();
             return p;
           }),
           py::arg("n"), py::arg("k"), py::arg("a"), py::arg("b"), py::arg("omega"))
      .def_static("from_probabilities", &BlockModelParams::from_probabilities, py::arg("n"), py::arg("k"),
                  py::arg("p"), py::arg("q"))
      .def_readonly("n", &BlockModelParams::n)
      .def_readonly("k", &BlockModelParams::k)
      .def_readonly("a", &BlockModelParams::a)
      .def_readonly("b", &BlockModelParams::b)
      .def_readonly("omega", &BlockModelParams::omega)
      .def_property_readonly("p", &BlockModelParams::p)
      .def_property_readonly("q", &BlockModelParams::q)
      .def_property_readonly("prefactor", &BlockModelParams::prefactor)
      .def("__repr__", [](const BlockModelParams& p) {
        std::ostringstream s;
        s << "BlockModelParams(n=" << p.n << ", k=" << p.k << ", a=" << p.a << ", b=" << p.b << ", omega=" << p.omega
          << ")";
        return s.str();
      });

  py::class_<Graph>(m, "Graph")
      .def(py::init<std::size_t, std::vector<Edge>>(), py::arg("n"), py::arg("edges"))
      .def_property_readonly("n", &Graph::n)
      .def_property_readonly("m", &Graph::m)
      .def_property_readonly("edges", [](const Graph& g) { return std::vector<Edge>(g.edges().begin(), g.edges().end()); })
      .def("degree", &Graph::degree)
      .def("neighbors", [](const Graph& g, Node u) {
        if (u >= g.n()) throw ParameterError("node out of range");
        return std::vector<Node>(g.neighbors(u).begin(), g.neighbors(u).end());
      })
      .def("__eq__", &Graph::operator==)
      .def("save", [](const Graph& g, const std::string& path) { save_graph(g, path); })
      .def_static("load", &load_graph);

  py::class_<Partition>(m, "Partition")
      .def(py::init<std::vector<Label>, std::size_t>(), py::arg("labels"), py::arg("k"))
      .def_property_readonly("n", &Partition::n)
      .def_property_readonly("k", &Partition::k)
      .def_property_readonly("labels",
                             [](const Partition& p) { return std::vector<Label>(p.labels().begin(), p.labels().end()); })
      .def("part_sizes", &Partition::part_sizes)
      .def("nonempty_parts", &Partition::nonempty_parts)
      .def("__len__", &Partition::n)
      .def("__getitem__", [](const Partition& p, std::size_t u) {
        if (u >= p.n()) throw py::index_error();
        return p[u];
      })
      .def("__eq__", &Partition::operator==);

  m.def("generate_sbm", [](const BlockModelParams& p, std::uint64_t seed) {
    SbmInstance inst = generate_sbm(p, seed);
    return py::make_tuple(std::move(inst.graph), std::move(inst.planted));
  }, py::arg("params"), py::arg("seed"), "Sample G(n, k, p, q); returns (graph, planted partition).");
  m.def("planted_partition", &planted_partition, py::arg("n"), py::arg("k"));
  m.def("decoy", &decoy, py::arg("planted"), py::arg("i"), py::arg("j"));
  m.def("interpolated_partition", &interpolated_partition, py::arg("planted"), py::arg("i"), py::arg("j"),
        py::arg("t"), py::arg("seed") = py::none());
  m.def("balanced_random_partition", &balanced_random_partition, py::arg("n"), py::arg("k"), py::arg("seed"));

  m.def("modularity", [](const Graph& g, const Partition& a) {
    const auto q = modularity(g, a);
    return py::dict(py::arg("score") = q.score, py::arg("coverage") = q.coverage, py::arg("degree_tax") = q.degree_tax);
  }, py::arg("graph"), py::arg("partition"));
  m.def("weighted_modularity", [](const BlockModelParams& p, const Partition& a) {
    return weighted_modularity(WeightedBlockGraph(p), a).score;
  }, py::arg("params"), py::arg("partition"));
  m.def("mean_field_prediction", [](const BlockModelParams& p, const Rows& x) {
    return mean_field_prediction(p, Signature(from_rows(x)));
  }, py::arg("params"), py::arg("signature"));
  m.def("distance", [](const Partition& a, const Partition& planted) {
    const auto d = distance(a, planted);
    return py::dict(py::arg("distance") = d.distance, py::arg("permutation") = d.best_permutation,
                    py::arg("overlap") = d.aligned_overlap);
  }, py::arg("partition"), py::arg("planted"));
  m.def("signature", [](const Partition& a, const Partition& planted) { return to_rows(signature(a, planted).matrix()); },
        py::arg("partition"), py::arg("planted"));

  m.def("g", [](const Rows& x) { return g_of_matrix(from_rows(x)); }, py::arg("matrix"));
  m.def("h_curve", &h_curve, py::arg("d"), py::arg("k"));
  m.def("max_g_closed_form", [](std::size_t k, double t) { return max_g_closed_form(k, t).value; }, py::arg("k"),
        py::arg("t"));
  m.def("far_bound", &far_bound, py::arg("k"));
  m.def("grid_max_g", [](std::size_t k, double t, std::size_t resolution, bool balanced) {
    const auto r = grid_max_g({k, t, balanced}, resolution);
    return py::dict(py::arg("value") = r.value, py::arg("scaled_value") = r.scaled_value,
                    py::arg("maximizer") = to_rows(r.maximizer), py::arg("candidates") = r.candidates);
  }, py::arg("k"), py::arg("t"), py::arg("resolution"), py::arg("balanced") = false);
  m.def("near_optimal_distance", &near_optimal_distance, py::arg("delta"), py::arg("prefactor"), py::arg("k"));

  m.def("cycle_decompose", [](const Rows& b) {
    const auto dec = cycle_decompose(Circulation(from_rows(b)));
    return py::make_tuple(dec.cycles, dec.weights);
  }, py::arg("flow"), "Returns (cycles, weights) of a circulation.");
  m.def("balanced_max_descent", [](const Rows& x, double t1) {
    return to_rows(balanced_max_descent(Signature(from_rows(x)), t1).matrix());
  }, py::arg("signature"), py::arg("t1"));

  m.def("theory_point", [](const BlockModelParams& p, double d) {
    const auto pt = theory_point(p, d);
    return py::dict(py::arg("d") = pt.d, py::arg("t") = pt.t, py::arg("h") = pt.h_value,
                    py::arg("modularity_theory") = pt.modularity_theory);
  }, py::arg("params"), py::arg("d"));
  m.def("empirical_H_sweep", [](const Graph& g, const Partition& planted, const BlockModelParams& p,
                                std::vector<double> d_values) {
    SweepOptions opts;
    opts.d_values = std::move(d_values);
    py::list out;
    for (const auto& pt : empirical_H_sweep(g, planted, p, opts))
      out.append(py::dict(py::arg("d") = pt.d, py::arg("h") = pt.h_value,
                          py::arg("modularity_theory") = pt.modularity_theory, py::arg("H_empirical") = pt.H_empirical,
                          py::arg("best_start") = pt.best_start));
    return out;
  }, py::arg("graph"), py::arg("planted"), py::arg("params"), py::arg("d_values"));

  m.def("greedy_run", [](const Graph& g, const Partition& planted, const Partition& start) {
    GreedyOptions opts;
    opts.sample_every = 1;
    return trace_dict(greedy_run(g, planted, start, opts));
  }, py::arg("graph"), py::arg("planted"), py::arg("start"));
  m.def("mcmc_run", [](const Graph& g, const Partition& planted, const Partition& start, double beta,
                       std::uint64_t max_steps, std::uint64_t seed, double nu1, double nu2, const std::string& kernel,
                       std::uint64_t sample_every, bool stop_on_hit) {
    ChainConfig cfg;
    cfg.beta = beta;
    cfg.max_steps = max_steps;
    cfg.seed = seed;
    cfg.nu1 = nu1;
    cfg.nu2 = nu2;
    cfg.sample_every = sample_every;
    cfg.stop_on_hit = stop_on_hit;
    if (kernel == "exact") {
      cfg.kernel = KernelKind::exact;
    } else if (kernel == "metropolis") {
      cfg.kernel = KernelKind::metropolis;
    } else {
      throw ParameterError("kernel must be 'exact' or 'metropolis'");
    }
    py::gil_scoped_release release;
    ChainTrace t = mcmc_run(g, planted, start, cfg);
    py::gil_scoped_acquire acquire;
    return trace_dict(t);
  }, py::arg("graph"), py::arg("planted"), py::arg("start"), py::arg("beta"), py::arg("max_steps"), py::arg("seed"),
     py::arg("nu1"), py::arg("nu2"), py::arg("kernel") = "exact", py::arg("sample_every") = 1000,
     py::arg("stop_on_hit") = false);
  m.def("exact_gibbs", [](const Graph& g, const Partition& planted, double beta) {
    const auto t = exact_gibbs(g, planted, beta);
    return py::dict(py::arg("log_z") = t.log_z, py::arg("modularity") = t.modularity,
                    py::arg("distance") = t.distance, py::arg("probability") = t.probability,
                    py::arg("kernel_stationary") = t.kernel_stationary);
  }, py::arg("graph"), py::arg("planted"), py::arg("beta"));
  m.def("total_variation", &total_variation, py::arg("p"), py::arg("q"));
  m.def("beta_rule", &beta_rule, py::arg("x"), py::arg("k"));

  m.def("default_ogp_params", [](const BlockModelParams& p, double nu) {
    const auto o = default_ogp_params(p, nu);
    return py::dict(py::arg("nu") = o.nu, py::arg("nu_prime") = o.nu_prime, py::arg("mu") = o.mu,
                    py::arg("nu1") = o.nu1, py::arg("nu2") = o.nu2, py::arg("nu_mirror") = o.nu_mirror,
                    py::arg("delta") = o.delta, py::arg("delta_prime") = o.delta_prime);
  }, py::arg("params"), py::arg("nu"));
  m.def("ogp_certificate", [](const Graph& g, const Partition& planted, const BlockModelParams& p, double nu,
                              std::vector<double> d_grid, std::size_t random_starts, std::uint64_t seed) {
    ProbeOptions po{std::move(d_grid), random_starts, seed};
    const auto rep = ogp_certificate(g, planted, p, default_ogp_params(p, nu), standard_probes(g, planted, po));
    py::list probes;
    for (const auto& r : rep.probes)
      probes.append(py::dict(py::arg("name") = r.name, py::arg("distance") = r.distance,
                             py::arg("modularity") = r.modularity, py::arg("above_threshold") = r.above_threshold,
                             py::arg("region") = region_name(r.region)));
    return py::dict(py::arg("threshold") = rep.threshold, py::arg("q_star") = rep.q_star,
                    py::arg("band_violations") = rep.band_violations, py::arg("c1") = rep.c1, py::arg("c2") = rep.c2,
                    py::arg("probes") = probes);
  }, py::arg("graph"), py::arg("planted"), py::arg("params"), py::arg("nu"), py::arg("d_grid"),
     py::arg("random_starts") = 3, py::arg("seed") = 0);

  m.def("run_experiment", [](const std::string& config_json) {
    const ExperimentConfig cfg = config_from_json(nlohmann::json::parse(config_json));
    std::ostringstream log;
    const RunResult r = run_experiment(cfg, log);
    return py::make_tuple(static_cast<int>(r.code), r.artifacts, r.summary.dump(), log.str());
  }, py::arg("config_json"),
     "Runs an experiment from a JSON config string; returns (exit_code, artifacts, summary_json, log).");
  m.def("verify", [](const std::string& level, std::vector<int> only) {
    std::ostringstream out;
    const auto results = verify_suite(level == "full" ? VerifyLevel::full : VerifyLevel::quick, out, only);
    py::list rows;
    for (const auto& r : results)
      rows.append(py::dict(py::arg("id") = r.id, py::arg("title") = r.title, py::arg("passed") = r.passed,
                           py::arg("summary") = r.summary));
    return py::make_tuple(rows, out.str());
  }, py::arg("level") = "quick", py::arg("only") = std::vector<int>{});
}
