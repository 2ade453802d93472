// ogp-modlab <verb> --config <file.json> [--seed S] [--out DIR] [--level quick|full]
#include <CLI11.hpp>

#include <iostream>
#include <optional>
#include <string>

#include "ogp/error.hpp"
#include "ogp/experiment.hpp"

namespace {

struct Verb {
  const char* name;
  const char* help;
};

constexpr Verb kVerbs[] = {
    {"generate", "sample SBM graphs and planted partitions"},
    {"score", "modularity and distance of a partition"},
    {"landscape", "empirical H(d) against the theoretical curve"},
    {"oracle", "closed-form landscape maximum against grid search"},
    {"greedy", "greedy ascent from a decoy, planted or random start"},
    {"mcmc", "heat-bath or Metropolis chain with hitting times"},
    {"gibbs-oracle", "small-n chain against exact enumeration"},
    {"ogp-cert", "overlap-gap certificate over a probe family"},
    {"verify", "run the built-in criterion suite"},
};

int exit_code(ogp::ExitCode c) { return static_cast<int>(c); }

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Modularity landscape and overlap-gap experiments on the stochastic block model", "ogp-modlab"};
  app.set_version_flag("--version", OGP_VERSION);
  app.require_subcommand(1, 1);

  std::string config_path;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> out_dir;
  std::optional<std::string> level;
  for (const Verb& v : kVerbs) {
    const std::string verb = v.name;
    CLI::App* sub = app.add_subcommand(verb, v.help);
    sub->add_option("--config", config_path, "experiment config (JSON)");
    sub->add_option("--seed", seed, "run this single seed instead of the config's seed list");
    sub->add_option("--out", out_dir, "output directory");
    if (verb == "verify") {
      sub->add_option("--level", level, "quick or full")->check(CLI::IsMember({"quick", "full"}));
    } else {
      sub->get_option("--config")->required();
    }
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : exit_code(ogp::ExitCode::usage);
  }

  const std::string verb = app.get_subcommands().front()->get_name();
  try {
    ogp::ExperimentConfig config;
    if (!config_path.empty()) {
      config = ogp::load_config(config_path, ogp::parse_kind(verb));
      if (ogp::kind_name(config.kind) != verb) {
        throw ogp::ParameterError(std::string("kind: config is for '") + ogp::kind_name(config.kind) + "'");
      }
    } else {
      config.kind = ogp::parse_kind(verb);
    }
    if (seed) config.seeds = {*seed};
    if (out_dir) config.output_dir = *out_dir;
    if (level) config.options["level"] = *level;
    const ogp::RunResult result = ogp::run_experiment(config, std::cout);
    for (const auto& a : result.artifacts) std::cerr << "wrote " << a << "\n";
    return exit_code(result.code);
  } catch (const ogp::Error& e) {
    std::cerr << "ogp-modlab " << verb << ": " << e.what() << "\n";
    return exit_code(e.code());
  } catch (const std::exception& e) {
    std::cerr << "ogp-modlab " << verb << ": " << e.what() << "\n";
    return exit_code(ogp::ExitCode::invariant);
  }
}
