// tic: Toeplitz inverse covariance clustering of embedding sequences.
//
//   tic synth    --out-dir D [--spec S.json]
//   tic cluster  --features F [--times T] --k K [--config C.json]
//                --out-rttm O [--out-metrics M] [--ref R]
//   tic baseline --features F --k K --method cosine-kmeans --out-rttm O ...
//   tic score    --ref R --hyp H [--out M]
//
// Flags override keys of the JSON config.

#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "commands.hpp"

namespace {

struct RunFlags {
  std::optional<std::string> config, features, times, out_rttm, out_metrics, ref, method, file_id;
  std::optional<int> k, window, pca_dims, em_max_iter;
  std::optional<double> beta, lambda;
  std::optional<std::uint64_t> seed;
  bool length_norm = false;

  void attach(CLI::App* app, bool with_method) {
    app->add_option("--config", config, "JSON run configuration");
    app->add_option("--features", features, "feature CSV (one vector per row)");
    app->add_option("--times", times, "times CSV sidecar (start,end per row)");
    app->add_option("--k", k, "number of clusters");
    app->add_option("--out-rttm", out_rttm, "output RTTM");
    app->add_option("--out-metrics", out_metrics, "output metrics JSON");
    app->add_option("--ref", ref, "reference RTTM; adds DER to the metrics");
    app->add_option("--file-id", file_id, "RTTM file id (default: features file stem)");
    app->add_option("--beta", beta, "switching penalty");
    app->add_option("--lambda", lambda, "off-diagonal l1 penalty");
    app->add_option("--window", window, "frames per window (block-Toeplitz order)");
    app->add_option("--pca-dims", pca_dims, "keep this many principal components");
    app->add_option("--em-max-iter", em_max_iter, "EM iteration cap");
    app->add_option("--seed", seed, "random seed");
    app->add_flag("--length-norm", length_norm, "length-normalise rows");
    if (with_method) app->add_option("--method", method, "baseline method (cosine-kmeans)");
  }

  nlohmann::json overrides() const {
    nlohmann::json o = nlohmann::json::object();
    auto put = [&](const char* key, const auto& v) {
      if (v) o[key] = *v;
    };
    put("features", features);
    put("times", times);
    put("k", k);
    put("out_rttm", out_rttm);
    put("out_metrics", out_metrics);
    put("ref", ref);
    put("file_id", file_id);
    put("beta", beta);
    put("lambda", lambda);
    put("window", window);
    put("pca_dims", pca_dims);
    put("em_max_iter", em_max_iter);
    put("seed", seed);
    put("method", method);
    if (length_norm) o["length_norm"] = true;
    return o;
  }
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Toeplitz inverse covariance clustering for embedding sequences"};
  app.require_subcommand(1);

  RunFlags cluster_flags, baseline_flags;
  auto* cluster = app.add_subcommand("cluster", "cluster a feature sequence with TIC + EM");
  cluster_flags.attach(cluster, false);
  auto* baseline = app.add_subcommand("baseline", "cosine K-means baseline");
  baseline_flags.attach(baseline, true);

  std::string ref, hyp;
  std::optional<std::string> score_out;
  auto* score = app.add_subcommand("score", "diarization error rate of a hypothesis RTTM");
  score->add_option("--ref", ref, "reference RTTM")->required();
  score->add_option("--hyp", hyp, "hypothesis RTTM")->required();
  score->add_option("--out", score_out, "output JSON");

  std::optional<std::string> spec;
  std::string out_dir;
  auto* synth = app.add_subcommand("synth", "generate a labelled synthetic sequence");
  synth->add_option("--spec", spec, "JSON synthetic spec");
  synth->add_option("--out-dir", out_dir, "output directory")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return tic::cli::kExitConfig;
  }

  if (*cluster) return tic::cli::cmd_cluster(cluster_flags.config, cluster_flags.overrides(), std::cout, std::cerr);
  if (*baseline)
    return tic::cli::cmd_baseline(baseline_flags.config, baseline_flags.overrides(), std::cout, std::cerr);
  if (*score) return tic::cli::cmd_score(ref, hyp, score_out, std::cout, std::cerr);
  if (*synth) return tic::cli::cmd_synth(spec, out_dir, std::cout, std::cerr);
  return tic::cli::kExitConfig;
}
