#include "tic/run_config.hpp"

#include <fstream>
#include <set>

namespace tic {

using nlohmann::json;

namespace {

void reject_unknown(const json& doc, const std::set<std::string>& known, const char* what) {
  if (!doc.is_object()) throw ConfigError(std::string(what) + " must be a JSON object");
  for (const auto& [key, _] : doc.items()) {
    if (!known.count(key)) throw ConfigError(std::string(what) + ": unknown key '" + key + "'");
  }
}

template <typename T>
T get_as(const json& doc, const std::string& key) {
  try {
    return doc.at(key).get<T>();
  } catch (const json::exception&) {
    throw ConfigError("config key '" + key + "' has the wrong type");
  }
}

int get_int(const json& doc, const std::string& key) {
  const auto& v = doc.at(key);
  if (!v.is_number_integer()) throw ConfigError("config key '" + key + "' must be an integer");
  return v.get<int>();
}

std::optional<std::string> get_path(const json& doc, const std::string& key) {
  if (doc.at(key).is_null()) return std::nullopt;
  return get_as<std::string>(doc, key);
}

Lambda parse_lambda(const json& v) {
  if (v.is_number()) return Lambda(v.get<double>());
  if (!v.is_array() || v.empty()) throw ConfigError("lambda must be a number or a square array");
  const auto d = static_cast<Eigen::Index>(v.size());
  Matrix m(d, d);
  for (Eigen::Index i = 0; i < d; ++i) {
    const auto& row = v[static_cast<std::size_t>(i)];
    if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != d)
      throw ConfigError("lambda must be a square array");
    for (Eigen::Index j = 0; j < d; ++j) {
      if (!row[static_cast<std::size_t>(j)].is_number()) throw ConfigError("lambda entries must be numbers");
      m(i, j) = row[static_cast<std::size_t>(j)].get<double>();
    }
  }
  return Lambda(std::move(m));
}

}  // namespace

RunConfig parse_run_config(const json& doc, RunConfig cfg) {
  static const std::set<std::string> known = {
      "k", "beta", "lambda", "window", "rho", "admm_tol_abs", "admm_tol_rel", "admm_max_iter",
      "em_max_iter", "seed", "min_cluster_size", "pca_dims", "length_norm", "method",
      "kmeans_max_iter", "file_id", "features", "times", "out_rttm", "out_metrics", "ref"};
  reject_unknown(doc, known, "run config");
  auto& t = cfg.tic;
  if (doc.contains("k")) t.k = get_int(doc, "k");
  if (doc.contains("beta")) t.beta = get_as<double>(doc, "beta");
  if (doc.contains("lambda")) t.lambda = parse_lambda(doc.at("lambda"));
  if (doc.contains("window")) t.w = get_int(doc, "window");
  if (doc.contains("rho")) t.rho = get_as<double>(doc, "rho");
  if (doc.contains("admm_tol_abs")) t.admm_tol_abs = get_as<double>(doc, "admm_tol_abs");
  if (doc.contains("admm_tol_rel")) t.admm_tol_rel = get_as<double>(doc, "admm_tol_rel");
  if (doc.contains("admm_max_iter")) t.admm_max_iter = get_int(doc, "admm_max_iter");
  if (doc.contains("em_max_iter")) t.em_max_iter = get_int(doc, "em_max_iter");
  if (doc.contains("seed")) {
    const auto& v = doc.at("seed");
    if (!v.is_number_unsigned()) throw ConfigError("config key 'seed' must be a nonnegative integer");
    t.seed = v.get<std::uint64_t>();
  }
  if (doc.contains("min_cluster_size")) t.min_cluster_size = get_int(doc, "min_cluster_size");
  if (doc.contains("pca_dims")) {
    if (doc.at("pca_dims").is_null()) {
      cfg.pca_dims.reset();
    } else {
      cfg.pca_dims = get_int(doc, "pca_dims");
      if (*cfg.pca_dims < 1) throw ConfigError("pca_dims must be >= 1");
    }
  }
  if (doc.contains("length_norm")) cfg.length_norm = get_as<bool>(doc, "length_norm");
  if (doc.contains("method")) cfg.method = get_as<std::string>(doc, "method");
  if (doc.contains("kmeans_max_iter")) {
    cfg.kmeans_max_iter = get_int(doc, "kmeans_max_iter");
    if (cfg.kmeans_max_iter < 1) throw ConfigError("kmeans_max_iter must be >= 1");
  }
  if (doc.contains("file_id")) cfg.file_id = get_path(doc, "file_id");
  if (doc.contains("features")) cfg.features = get_path(doc, "features");
  if (doc.contains("times")) cfg.times = get_path(doc, "times");
  if (doc.contains("out_rttm")) cfg.out_rttm = get_path(doc, "out_rttm");
  if (doc.contains("out_metrics")) cfg.out_metrics = get_path(doc, "out_metrics");
  if (doc.contains("ref")) cfg.ref = get_path(doc, "ref");
  t.validate();
  return cfg;
}

json to_json(const RunConfig& cfg) {
  const auto& t = cfg.tic;
  json lam;
  if (t.lambda.is_scalar()) {
    lam = t.lambda.scalar();
  } else {
    const Matrix& m = *t.lambda.full();
    lam = json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
      json row = json::array();
      for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
      lam.push_back(row);
    }
  }
  auto opt = [](const std::optional<std::string>& s) { return s ? json(*s) : json(nullptr); };
  return json{{"k", t.k},
              {"beta", t.beta},
              {"lambda", lam},
              {"window", t.w},
              {"rho", t.rho},
              {"admm_tol_abs", t.admm_tol_abs},
              {"admm_tol_rel", t.admm_tol_rel},
              {"admm_max_iter", t.admm_max_iter},
              {"em_max_iter", t.em_max_iter},
              {"seed", t.seed},
              {"min_cluster_size", t.min_cluster_size},
              {"pca_dims", cfg.pca_dims ? json(*cfg.pca_dims) : json(nullptr)},
              {"length_norm", cfg.length_norm},
              {"method", cfg.method},
              {"kmeans_max_iter", cfg.kmeans_max_iter},
              {"file_id", opt(cfg.file_id)},
              {"features", opt(cfg.features)},
              {"times", opt(cfg.times)},
              {"out_rttm", opt(cfg.out_rttm)},
              {"out_metrics", opt(cfg.out_metrics)},
              {"ref", opt(cfg.ref)}};
}

SynthSpec parse_synth_spec(const json& doc, SynthSpec spec) {
  static const std::set<std::string> known = {"k", "n", "w", "t_len", "stay_prob",
                                              "sparsity", "separation", "seed"};
  reject_unknown(doc, known, "synth spec");
  if (doc.contains("k")) spec.k = get_int(doc, "k");
  if (doc.contains("n")) spec.n = get_int(doc, "n");
  if (doc.contains("w")) spec.w = get_int(doc, "w");
  if (doc.contains("t_len")) spec.t_len = get_int(doc, "t_len");
  if (doc.contains("stay_prob")) spec.stay_prob = get_as<double>(doc, "stay_prob");
  if (doc.contains("sparsity")) spec.sparsity = get_as<double>(doc, "sparsity");
  if (doc.contains("separation")) spec.separation = get_as<double>(doc, "separation");
  if (doc.contains("seed")) {
    const auto& v = doc.at("seed");
    if (!v.is_number_unsigned()) throw ConfigError("synth spec 'seed' must be a nonnegative integer");
    spec.seed = v.get<std::uint64_t>();
  }
  spec.validate();
  return spec;
}

json to_json(const SynthSpec& s) {
  return json{{"k", s.k},         {"n", s.n},
              {"w", s.w},         {"t_len", s.t_len},
              {"stay_prob", s.stay_prob}, {"sparsity", s.sparsity},
              {"separation", s.separation}, {"seed", s.seed}};
}

json der_json(const DerBreakdown& d) {
  return json{{"der", d.der},
              {"alpha_total", d.alpha_total},
              {"alpha_fa", d.alpha_fa},
              {"alpha_miss", d.alpha_miss},
              {"alpha_err", d.alpha_err}};
}

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open " + path);
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConfigError(path + ": " + e.what());
  }
}

void write_json_file(const json& doc, const std::string& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << doc.dump(2) << '\n';
  if (!out) throw std::runtime_error("write failed: " + path);
}

}  // namespace tic
