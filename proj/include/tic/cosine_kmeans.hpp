// Cosine (spherical) K-means baseline. Centroids are re-projected to the
// unit sphere after every update, and distance is 1 - <x, c>.

#ifndef TIC_COSINE_KMEANS_HPP_
#define TIC_COSINE_KMEANS_HPP_

#include <cstdint>
#include <vector>

#include "tic/core.hpp"

namespace tic {

struct SphericalModel {
  Matrix centroids;  // k x d, unit rows
  AssignmentPath labels;
  double objective = 0.0;  // sum of cosine distances to assigned centroids
  std::vector<double> objective_trace;
  int iterations = 0;
  bool converged = false;
};

/// Rows are length-normalised first (zero rows throw DataError). Seeding is
/// k-means++ on squared cosine distance. An emptied cluster is reseeded with
/// the row farthest from its centroid.
SphericalModel cosine_kmeans(const FeatureSequence& features, int k, std::uint64_t seed,
                             int max_iter = 100);

/// Sum of 1 - <x_t, c_label(t)> over rows of unit-norm `x`.
double cosine_objective(const Matrix& x, const Matrix& centroids, const AssignmentPath& labels);

}  // namespace tic

#endif  // TIC_COSINE_KMEANS_HPP_
