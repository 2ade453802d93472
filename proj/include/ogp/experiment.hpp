#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "ogp/error.hpp"
#include "ogp/sbm_graph.hpp"

namespace ogp {

enum class ExperimentKind { generate, score, landscape, oracle, greedy, mcmc, gibbs_oracle, ogp_cert, verify };

const char* kind_name(ExperimentKind kind);
// Throws ParameterError naming the field for an unknown verb.
ExperimentKind parse_kind(const std::string& name);

// One reproducible run. The model comes from top-level n, k, a, b, omega
// (or p, q); all randomness is derived from the seed list.
struct ExperimentConfig {
  ExperimentKind kind = ExperimentKind::landscape;
  std::optional<BlockModelParams> model;
  std::vector<std::uint64_t> seeds;
  std::string output_dir = "out";
  nlohmann::json options = nlohmann::json::object();

  // Per-kind checks; throws ParameterError with the offending field name.
  void validate() const;
  bool operator==(const ExperimentConfig& other) const;
};

nlohmann::json to_json(const ExperimentConfig& config);
// `default_kind` applies when the JSON has no "kind" field.
ExperimentConfig config_from_json(const nlohmann::json& j, std::optional<ExperimentKind> default_kind = std::nullopt);
ExperimentConfig load_config(const std::string& path, std::optional<ExperimentKind> default_kind = std::nullopt);

// FNV-1a of the canonical JSON dump without output_dir, as 16 hex digits.
std::string config_hash(const ExperimentConfig& config);

struct RunResult {
  ExitCode code = ExitCode::ok;
  std::vector<std::string> artifacts;
  // Verb-specific summary; also written into the metadata file.
  nlohmann::json summary;
};

// Executes the configured verb, writing CSV series and JSON metadata into
// output_dir. Library errors propagate as ogp::Error with their exit codes.
RunResult run_experiment(const ExperimentConfig& config, std::ostream& log);

}  // namespace ogp
