#include "commands.hpp"

#include <cstdio>
#include <filesystem>
#include <ostream>

#include "tic/cosine_kmeans.hpp"
#include "tic/em.hpp"
#include "tic/io.hpp"
#include "tic/preprocess.hpp"
#include "tic/run_config.hpp"
#include "tic/scoring.hpp"
#include "tic/synth.hpp"

namespace tic::cli {

using nlohmann::json;
namespace fs = std::filesystem;

namespace {

// Config file problems of any kind are configuration errors.
RunConfig load_run_config(const std::optional<std::string>& config_path, const json& overrides,
                          RunConfig base) {
  if (config_path) {
    json doc;
    try {
      doc = read_json_file(*config_path);
    } catch (const DataError& e) {
      throw ConfigError(e.what());
    }
    base = parse_run_config(doc, std::move(base));
  }
  return parse_run_config(overrides, std::move(base));
}

bool sets_k(const std::optional<std::string>& config_path, const json& overrides) {
  if (overrides.contains("k")) return true;
  if (!config_path) return false;
  try {
    return read_json_file(*config_path).contains("k");
  } catch (const std::exception&) {
    return false;
  }
}

struct Prepared {
  RunConfig cfg;
  FeatureSequence raw;
  FeatureSequence rows;
  std::string file_id;
};

Prepared prepare(const RunConfig& cfg, bool length_norm) {
  if (!cfg.features) throw ConfigError("no features file given (--features)");
  if (!cfg.out_rttm) throw ConfigError("no output RTTM path given (--out-rttm)");
  auto raw = load_features(*cfg.features,
                           cfg.times ? std::optional<fs::path>(*cfg.times) : std::nullopt);
  PreprocessOptions opts{cfg.pca_dims, length_norm, cfg.window()};
  if (cfg.window() > static_cast<int>(raw.length())) {
    throw DataError("window " + std::to_string(cfg.window()) + " exceeds " +
                    std::to_string(raw.length()) + " feature rows");
  }
  auto rows = preprocess(raw, opts);
  if (rows.length() < static_cast<std::size_t>(cfg.tic.k)) {
    throw DataError("K = " + std::to_string(cfg.tic.k) + " exceeds the " +
                    std::to_string(rows.length()) + " feature rows available");
  }
  std::string file_id = cfg.file_id ? *cfg.file_id : fs::path(*cfg.features).stem().string();
  if (file_id.empty()) file_id = "session";
  return {cfg, std::move(raw), std::move(rows), std::move(file_id)};
}

void add_reference_scores(const RunConfig& cfg, const Timeline& hyp, json& metrics) {
  if (!cfg.ref) return;
  const json der = der_json(score_der(load_timeline_rttm(*cfg.ref), hyp));
  for (const auto& [k, v] : der.items()) metrics[k] = v;
}

template <typename Body>
int guarded(std::ostream& err, const char* cmd, Body&& body) {
  try {
    return body();
  } catch (const ConfigError& e) {
    err << cmd << ": configuration error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const std::exception& e) {
    err << cmd << ": error: " << e.what() << '\n';
    return kExitData;
  }
}

}  // namespace

int cmd_cluster(const std::optional<std::string>& config_path, const json& overrides,
                std::ostream& out, std::ostream& err) {
  return guarded(err, "cluster", [&] {
    if (!sets_k(config_path, overrides)) throw ConfigError("number of clusters not given (--k)");
    const auto cfg = load_run_config(config_path, overrides, RunConfig{});
    const auto p = prepare(cfg, cfg.length_norm);
    const auto res = run_em(p.rows, cfg.tic);
    for (const auto& w : res.warnings) err << "cluster: warning: " << w << '\n';

    const auto hyp = labels_to_timeline(res.path, p.raw.extents(), cfg.window(), p.file_id);
    write_timeline_rttm(hyp, *cfg.out_rttm);
    json metrics{{"iterations", res.iterations},
                 {"converged", res.converged},
                 {"objective_trace", res.objective_trace}};
    add_reference_scores(cfg, hyp, metrics);
    if (cfg.out_metrics) write_json_file(metrics, *cfg.out_metrics);
    out << "clustered " << p.rows.length() << " rows into " << cfg.tic.k << " clusters in "
        << res.iterations << " iterations" << (res.converged ? "" : " (not converged)") << '\n';
    return kExitOk;
  });
}

int cmd_baseline(const std::optional<std::string>& config_path, const json& overrides,
                 std::ostream& out, std::ostream& err) {
  return guarded(err, "baseline", [&] {
    if (!sets_k(config_path, overrides)) throw ConfigError("number of clusters not given (--k)");
    const auto cfg = load_run_config(config_path, overrides, RunConfig{});
    if (cfg.method != "cosine-kmeans")
      throw ConfigError("unsupported method '" + cfg.method + "' (supported: cosine-kmeans)");
    const auto p = prepare(cfg, true);
    const auto km = cosine_kmeans(p.rows, cfg.tic.k, cfg.tic.seed, cfg.kmeans_max_iter);

    const auto hyp = labels_to_timeline(km.labels, p.raw.extents(), cfg.window(), p.file_id);
    write_timeline_rttm(hyp, *cfg.out_rttm);
    json metrics{{"iterations", km.iterations},
                 {"converged", km.converged},
                 {"objective_trace", km.objective_trace}};
    add_reference_scores(cfg, hyp, metrics);
    if (cfg.out_metrics) write_json_file(metrics, *cfg.out_metrics);
    out << "cosine k-means: " << p.rows.length() << " rows, " << cfg.tic.k << " clusters, "
        << km.iterations << " iterations\n";
    return kExitOk;
  });
}

int cmd_score(const std::string& ref_path, const std::string& hyp_path,
              const std::optional<std::string>& out_path, std::ostream& out, std::ostream& err) {
  return guarded(err, "score", [&] {
    const auto ref = load_timeline_rttm(ref_path);
    const auto hyp = load_timeline_rttm(hyp_path);
    const auto der = score_der(ref, hyp);
    if (out_path) write_json_file(der_json(der), *out_path);
    char line[64];
    std::snprintf(line, sizeof(line), "DER: %.2f%%", 100.0 * der.der);
    out << line << '\n';
    return kExitOk;
  });
}

int cmd_synth(const std::optional<std::string>& spec_path, const std::string& out_dir,
              std::ostream& out, std::ostream& err) {
  return guarded(err, "synth", [&] {
    SynthSpec spec;
    if (spec_path) {
      json doc;
      try {
        doc = read_json_file(*spec_path);
      } catch (const DataError& e) {
        throw ConfigError(e.what());
      }
      spec = parse_synth_spec(doc);
    }
    spec.validate();
    const auto models = gen_models(spec);
    const auto data = gen_sequence(spec, models);

    const fs::path dir(out_dir);
    fs::create_directories(dir);
    save_features(data.features.data(), dir / "features.csv");
    save_times(*data.features.times(), dir / "times.csv");
    std::vector<std::string> labels(data.labels.size());
    for (std::size_t t = 0; t < labels.size(); ++t) labels[t] = "spk" + std::to_string(data.labels[t]);
    write_timeline_rttm(labels_to_timeline(labels, *data.features.times(), "features"),
                        dir / "reference.rttm");
    write_json_file(to_json(spec), (dir / "spec.json").string());
    out << "wrote " << spec.t_len << " rows to " << dir.string() << '\n';
    return kExitOk;
  });
}

}  // namespace tic::cli
