// Alternating minimisation of
//
//   J = sum_t NLL(X_t | cluster(t)) + beta * switches + 0.5 * sum_i ||lambda o Theta_i||_1
//
// E-step: dynamic-programming assignment with the models fixed.
// M-step: one Toeplitz graphical lasso per cluster with the path fixed.
// Stops when the E-step returns the same path twice in a row.

#ifndef TIC_EM_HPP_
#define TIC_EM_HPP_

#include <string>
#include <vector>

#include "tic/assign.hpp"
#include "tic/core.hpp"

namespace tic {

struct EmResult {
  std::vector<ClusterModel> models;
  AssignmentPath path;
  std::vector<double> objective_trace;
  int iterations = 0;
  bool converged = false;
  /// Iterations whose M-step had to reassign rows to an undersized cluster.
  int reseed_events = 0;
  std::vector<std::string> warnings;
};

/// Cosine K-means on the rows, falling back to equal contiguous blocks in
/// a seeded random label order if K-means cannot produce K non-empty
/// clusters. Throws DataError when T < K.
AssignmentPath initialize(const FeatureSequence& features, const TicConfig& cfg);

/// Give `cluster` a contiguous run of `min_size` rows: the run whose rows
/// have the highest summed NLL under their current labels. Runs that would
/// push another cluster below `min_size` are skipped when any other run
/// exists. Earliest run wins ties. Identity if the cluster is large enough.
AssignmentPath reseed_empty_cluster(const AssignmentPath& path, const NllMatrix& nll,
                                    int cluster, int min_size);

/// NLL of every row under every model.
NllMatrix nll_matrix(const Matrix& rows, const std::vector<ClusterModel>& models);

/// J for a given path and model set; `lambda` is the raw penalty matrix.
double joint_objective(const NllMatrix& nll, const AssignmentPath& path, double beta,
                       const std::vector<ClusterModel>& models, const Matrix& lambda);

/// `features` must already be preprocessed and, when cfg.w > 1, windowed
/// (row dimension n*w).
EmResult run_em(const FeatureSequence& features, const TicConfig& cfg);

}  // namespace tic

#endif  // TIC_EM_HPP_
