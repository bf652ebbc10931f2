// JSON documents used by the command-line front end: run configuration,
// synthetic-data spec and the metrics report.
//
// Run configuration keys (all optional, unknown keys rejected):
//   k, beta (1.0), lambda (0.1, number or square array), window (1),
//   rho (1.0), admm_tol_abs (1e-6), admm_tol_rel (1e-5), admm_max_iter (1000),
//   em_max_iter (100), seed (0), min_cluster_size (0 = n*window + 1),
//   pca_dims (null), length_norm (false for cluster, forced on for baseline),
//   method ("cosine-kmeans"), kmeans_max_iter (100), file_id (features stem),
//   features, times, out_rttm, out_metrics, ref

#ifndef TIC_RUN_CONFIG_HPP_
#define TIC_RUN_CONFIG_HPP_

#include <optional>
#include <string>

#include <json.hpp>

#include "tic/core.hpp"
#include "tic/em.hpp"
#include "tic/scoring.hpp"
#include "tic/synth.hpp"

namespace tic {

struct RunConfig {
  TicConfig tic;
  std::optional<int> pca_dims;
  bool length_norm = false;
  std::string method = "cosine-kmeans";
  int kmeans_max_iter = 100;
  std::optional<std::string> file_id;
  std::optional<std::string> features;
  std::optional<std::string> times;
  std::optional<std::string> out_rttm;
  std::optional<std::string> out_metrics;
  std::optional<std::string> ref;

  int window() const { return tic.w; }
};

/// Apply the keys of `doc` on top of `base`. Throws ConfigError.
RunConfig parse_run_config(const nlohmann::json& doc, RunConfig base = {});
nlohmann::json to_json(const RunConfig& cfg);

SynthSpec parse_synth_spec(const nlohmann::json& doc, SynthSpec base = {});
nlohmann::json to_json(const SynthSpec& spec);

nlohmann::json der_json(const DerBreakdown& der);

/// Parse a JSON file, mapping I/O failures to DataError and syntax errors
/// to ConfigError.
nlohmann::json read_json_file(const std::string& path);
void write_json_file(const nlohmann::json& doc, const std::string& path);

}  // namespace tic

#endif  // TIC_RUN_CONFIG_HPP_
