#include "tic/cosine_kmeans.hpp"

#include <string>

#include "tic/preprocess.hpp"
#include "tic/random.hpp"

namespace tic {
namespace {

std::vector<int> nearest(const Matrix& x, const Matrix& centroids) {
  const Matrix sim = x * centroids.transpose();
  std::vector<int> labels(static_cast<std::size_t>(x.rows()));
  for (Eigen::Index t = 0; t < x.rows(); ++t) {
    Eigen::Index best = 0;
    for (Eigen::Index j = 1; j < sim.cols(); ++j) {
      if (sim(t, j) > sim(t, best)) best = j;
    }
    labels[static_cast<std::size_t>(t)] = static_cast<int>(best);
  }
  return labels;
}

Matrix seed_centroids(const Matrix& x, int k, Rng& rng) {
  const auto t_len = static_cast<std::uint64_t>(x.rows());
  Matrix c(k, x.cols());
  std::vector<bool> taken(t_len, false);
  auto first = rng.index(t_len);
  c.row(0) = x.row(static_cast<Eigen::Index>(first));
  taken[first] = true;
  Vector dist = (1.0 - (x * c.row(0).transpose()).array()).max(0.0).matrix();
  for (int j = 1; j < k; ++j) {
    const Vector w = dist.array().square();
    const double total = w.sum();
    std::uint64_t pick = 0;
    if (total > 0.0) {
      double r = rng.uniform() * total;
      pick = t_len - 1;
      for (std::uint64_t t = 0; t < t_len; ++t) {
        r -= w(static_cast<Eigen::Index>(t));
        if (r < 0.0 && w(static_cast<Eigen::Index>(t)) > 0.0) {
          pick = t;
          break;
        }
      }
    } else {
      // All rows coincide with a chosen centroid; take any unused row.
      std::vector<std::uint64_t> free;
      for (std::uint64_t t = 0; t < t_len; ++t) {
        if (!taken[t]) free.push_back(t);
      }
      pick = free[rng.index(free.size())];
    }
    taken[pick] = true;
    c.row(j) = x.row(static_cast<Eigen::Index>(pick));
    const Vector d = (1.0 - (x * c.row(j).transpose()).array()).max(0.0).matrix();
    dist = dist.cwiseMin(d);
  }
  return c;
}

// Moves the farthest row of a multi-member cluster into each empty cluster.
void reseed_empty(const Matrix& x, Matrix& centroids, std::vector<int>& labels) {
  const int k = static_cast<int>(centroids.rows());
  for (int c = 0; c < k; ++c) {
    std::vector<std::size_t> count(static_cast<std::size_t>(k), 0);
    for (int l : labels) ++count[static_cast<std::size_t>(l)];
    if (count[static_cast<std::size_t>(c)] > 0) continue;
    Eigen::Index far = -1;
    double far_dist = -1.0;
    for (Eigen::Index t = 0; t < x.rows(); ++t) {
      const int l = labels[static_cast<std::size_t>(t)];
      if (count[static_cast<std::size_t>(l)] < 2) continue;
      const double dist = 1.0 - x.row(t).dot(centroids.row(l));
      if (dist > far_dist) {
        far_dist = dist;
        far = t;
      }
    }
    if (far < 0) continue;
    labels[static_cast<std::size_t>(far)] = c;
    centroids.row(c) = x.row(far);
  }
}

void update_centroids(const Matrix& x, Matrix& centroids, const std::vector<int>& labels) {
  Matrix sums = Matrix::Zero(centroids.rows(), centroids.cols());
  for (Eigen::Index t = 0; t < x.rows(); ++t) sums.row(labels[static_cast<std::size_t>(t)]) += x.row(t);
  for (Eigen::Index c = 0; c < centroids.rows(); ++c) {
    const double norm = sums.row(c).norm();
    if (norm > 0.0) centroids.row(c) = sums.row(c) / norm;
  }
}

}  // namespace

double cosine_objective(const Matrix& x, const Matrix& centroids, const AssignmentPath& labels) {
  double obj = 0.0;
  for (Eigen::Index t = 0; t < x.rows(); ++t) {
    obj += 1.0 - x.row(t).dot(centroids.row(labels[static_cast<std::size_t>(t)]));
  }
  return obj;
}

SphericalModel cosine_kmeans(const FeatureSequence& features, int k, std::uint64_t seed,
                             int max_iter) {
  if (k < 1) throw ConfigError("k must be >= 1");
  if (max_iter < 1) throw ConfigError("max_iter must be >= 1");
  if (features.length() < static_cast<std::size_t>(k)) {
    throw DataError("cannot form " + std::to_string(k) + " clusters from " +
                    std::to_string(features.length()) + " rows");
  }
  const Matrix x = length_normalize(features).data();
  Rng rng(seed);

  SphericalModel out;
  out.centroids = seed_centroids(x, k, rng);
  std::vector<int> labels = nearest(x, out.centroids);
  for (int it = 1; it <= max_iter; ++it) {
    out.iterations = it;
    reseed_empty(x, out.centroids, labels);
    update_centroids(x, out.centroids, labels);
    out.objective_trace.push_back(cosine_objective(x, out.centroids, AssignmentPath(labels, k)));
    auto next = nearest(x, out.centroids);
    if (next == labels) {
      out.converged = true;
      break;
    }
    if (it == max_iter) break;
    labels = std::move(next);
  }
  out.labels = AssignmentPath(std::move(labels), k);
  out.objective = out.objective_trace.back();
  return out;
}

}  // namespace tic
