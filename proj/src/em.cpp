#include "tic/em.hpp"

#include <algorithm>
#include <future>
#include <optional>
#include <string>

#include "tic/cosine_kmeans.hpp"
#include "tic/gaussian.hpp"
#include "tic/random.hpp"
#include "tic/tglasso.hpp"

namespace tic {
namespace {

AssignmentPath contiguous_blocks(std::size_t t_len, int k, std::uint64_t seed) {
  std::vector<int> order(static_cast<std::size_t>(k));
  for (int j = 0; j < k; ++j) order[static_cast<std::size_t>(j)] = j;
  Rng rng(seed);
  for (std::size_t i = order.size(); i > 1; --i) {
    std::swap(order[i - 1], order[rng.index(i)]);
  }
  std::vector<int> labels(t_len);
  for (std::size_t t = 0; t < t_len; ++t) {
    labels[t] = order[t * static_cast<std::size_t>(k) / t_len];
  }
  return AssignmentPath(std::move(labels), k);
}

double penalty(const Matrix& lambda, const ClusterModel& m) {
  return 0.5 * lambda.cwiseProduct(m.theta().cwiseAbs()).sum();
}

// Cluster objective on its member rows: summed NLL plus its penalty share.
double cluster_objective(const Matrix& rows, const std::vector<std::size_t>& members,
                         const ClusterModel& m, const Matrix& lambda) {
  double acc = 0.0;
  for (auto t : members) acc += gaussian_nll(rows.row(static_cast<Eigen::Index>(t)).transpose(), m);
  return acc + penalty(lambda, m);
}

struct ClusterFit {
  ClusterModel model;
  std::string warning;
};

ClusterFit fit_cluster(const Matrix& rows, const std::vector<std::size_t>& members,
                       const Matrix& lambda, const TicConfig& cfg,
                       const std::optional<ClusterModel>& previous) {
  const auto stats = empirical_stats(rows, members);
  auto sol = solve_toeplitz_glasso(stats, lambda, cfg.w, cfg);
  if (previous && cluster_objective(rows, members, *previous, lambda) <
                      cluster_objective(rows, members, sol.model, lambda)) {
    return {*previous, sol.warning};
  }
  return {std::move(sol.model), std::move(sol.warning)};
}

}  // namespace

AssignmentPath initialize(const FeatureSequence& features, const TicConfig& cfg) {
  const std::size_t t_len = features.length();
  if (t_len < static_cast<std::size_t>(cfg.k)) {
    throw DataError("cannot form " + std::to_string(cfg.k) + " clusters from " +
                    std::to_string(t_len) + " rows");
  }
  if (cfg.k == 1) return AssignmentPath(std::vector<int>(t_len, 0), 1);
  try {
    auto km = cosine_kmeans(features, cfg.k, cfg.seed);
    const auto counts = km.labels.counts();
    if (std::all_of(counts.begin(), counts.end(), [](std::size_t c) { return c > 0; }))
      return km.labels;
  } catch (const DataError&) {
    // zero rows after mean subtraction; fall through
  }
  return contiguous_blocks(t_len, cfg.k, cfg.seed);
}

AssignmentPath reseed_empty_cluster(const AssignmentPath& path, const NllMatrix& nll,
                                    int cluster, int min_size) {
  const std::size_t t_len = path.size();
  const int k = path.num_clusters();
  if (cluster < 0 || cluster >= k) throw std::invalid_argument("reseed: cluster out of range");
  if (nll.rows() != t_len) throw std::invalid_argument("reseed: NLL rows do not match path");
  const auto counts = path.counts();
  const auto need = static_cast<std::size_t>(std::max(1, min_size));
  if (counts[static_cast<std::size_t>(cluster)] >= need) return path;
  const std::size_t len = std::min(need, t_len);

  std::vector<double> cost(t_len);
  for (std::size_t t = 0; t < t_len; ++t) cost[t] = nll(t, path[t]);

  std::optional<std::size_t> best_ok, best_any;
  double best_ok_sum = 0.0, best_any_sum = 0.0;
  for (std::size_t s = 0; s + len <= t_len; ++s) {
    double sum = 0.0;
    std::vector<std::size_t> taken(static_cast<std::size_t>(k), 0);
    for (std::size_t t = s; t < s + len; ++t) {
      sum += cost[t];
      ++taken[static_cast<std::size_t>(path[t])];
    }
    bool ok = true;
    for (int c = 0; c < k; ++c) {
      const auto cc = static_cast<std::size_t>(c);
      if (c != cluster && counts[cc] >= need && counts[cc] - taken[cc] < need) ok = false;
    }
    if (!best_any || sum > best_any_sum) {
      best_any = s;
      best_any_sum = sum;
    }
    if (ok && (!best_ok || sum > best_ok_sum)) {
      best_ok = s;
      best_ok_sum = sum;
    }
  }
  const std::size_t start = best_ok ? *best_ok : *best_any;
  auto labels = path.labels();
  for (std::size_t t = start; t < start + len; ++t) labels[t] = cluster;
  return AssignmentPath(std::move(labels), k);
}

NllMatrix nll_matrix(const Matrix& rows, const std::vector<ClusterModel>& models) {
  Matrix m(rows.rows(), static_cast<Eigen::Index>(models.size()));
  for (std::size_t j = 0; j < models.size(); ++j) {
    m.col(static_cast<Eigen::Index>(j)) = gaussian_nll_rows(rows, models[j]);
  }
  return NllMatrix(std::move(m));
}

double joint_objective(const NllMatrix& nll, const AssignmentPath& path, double beta,
                       const std::vector<ClusterModel>& models, const Matrix& lambda) {
  double j = path_cost(nll, beta, path);
  for (const auto& m : models) j += penalty(lambda, m);
  return j;
}

EmResult run_em(const FeatureSequence& features, const TicConfig& cfg) {
  cfg.validate();
  const Matrix& rows = features.data();
  const auto t_len = features.length();
  const auto dim = static_cast<int>(features.dim());
  if (dim % cfg.w != 0) {
    throw DataError("feature dimension " + std::to_string(dim) + " is not a multiple of window " +
                    std::to_string(cfg.w) + "; stack windows before clustering");
  }
  if (t_len < static_cast<std::size_t>(cfg.k)) {
    throw DataError("cannot form " + std::to_string(cfg.k) + " clusters from " +
                    std::to_string(t_len) + " rows");
  }
  const Matrix lambda = cfg.lambda.expand(dim);
  const int min_size = std::max<int>(
      1, std::min<int>(cfg.resolved_min_cluster_size(dim), static_cast<int>(t_len) / cfg.k));
  const int k = cfg.k;

  EmResult res;
  AssignmentPath path = initialize(features, cfg);
  std::optional<NllMatrix> nll;
  std::vector<std::optional<ClusterModel>> previous(static_cast<std::size_t>(k));

  for (int it = 1; it <= cfg.em_max_iter; ++it) {
    res.iterations = it;

    AssignmentPath fit_path = path;
    const NllMatrix reseed_nll = nll ? *nll : NllMatrix(Matrix::Zero(static_cast<Eigen::Index>(t_len), k));
    bool reseeded = false;
    for (int c = 0; c < k; ++c) {
      if (fit_path.counts()[static_cast<std::size_t>(c)] < static_cast<std::size_t>(min_size)) {
        fit_path = reseed_empty_cluster(fit_path, reseed_nll, c, min_size);
        reseeded = true;
      }
    }
    if (reseeded) ++res.reseed_events;

    std::vector<std::vector<std::size_t>> members(static_cast<std::size_t>(k));
    for (int c = 0; c < k; ++c) members[static_cast<std::size_t>(c)] = fit_path.members(c);

    std::vector<ClusterFit> fits;
    fits.reserve(static_cast<std::size_t>(k));
    if (cfg.parallel && k > 1) {
      std::vector<std::future<ClusterFit>> jobs;
      for (int c = 0; c < k; ++c) {
        const auto cc = static_cast<std::size_t>(c);
        jobs.push_back(std::async(std::launch::async, [&, cc] {
          return fit_cluster(rows, members[cc], lambda, cfg, previous[cc]);
        }));
      }
      for (auto& j : jobs) fits.push_back(j.get());
    } else {
      for (int c = 0; c < k; ++c) {
        const auto cc = static_cast<std::size_t>(c);
        fits.push_back(fit_cluster(rows, members[cc], lambda, cfg, previous[cc]));
      }
    }

    std::vector<ClusterModel> models;
    models.reserve(fits.size());
    for (int c = 0; c < k; ++c) {
      auto& f = fits[static_cast<std::size_t>(c)];
      if (!f.warning.empty()) {
        res.warnings.push_back("iteration " + std::to_string(it) + ", cluster " +
                               std::to_string(c) + ": " + f.warning);
      }
      models.push_back(f.model);
      previous[static_cast<std::size_t>(c)] = f.model;
    }

    nll = nll_matrix(rows, models);
    AssignmentPath next = assign_clusters(*nll, cfg.beta);
    res.objective_trace.push_back(joint_objective(*nll, next, cfg.beta, models, lambda));
    res.models = std::move(models);
    const bool same = next == path;
    path = std::move(next);
    if (same) {
      res.converged = true;
      break;
    }
  }
  res.path = std::move(path);
  return res;
}

}  // namespace tic
