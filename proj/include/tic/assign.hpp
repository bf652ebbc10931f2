// E-step: label each row with a cluster so that the summed negative
// log-likelihood plus beta per label switch is minimal.
//
// Ties are broken identically by the dynamic program and the exhaustive
// search: reading the path backwards from the last row, the last label is
// the lowest-index optimum, and each earlier label prefers staying in the
// current cluster, then the lowest cluster index.

#ifndef TIC_ASSIGN_HPP_
#define TIC_ASSIGN_HPP_

#include "tic/core.hpp"

namespace tic {

/// T x K matrix, entry (t, j) = NLL of row t under cluster j.
class NllMatrix {
 public:
  explicit NllMatrix(Matrix values);

  const Matrix& values() const { return values_; }
  std::size_t rows() const { return static_cast<std::size_t>(values_.rows()); }
  int clusters() const { return static_cast<int>(values_.cols()); }
  double operator()(std::size_t t, int j) const {
    return values_(static_cast<Eigen::Index>(t), j);
  }

 private:
  Matrix values_;
};

/// Viterbi-style O(T*K) dynamic program.
AssignmentPath assign_clusters(const NllMatrix& nll, double beta);

/// Exhaustive search over all K^T paths; refuses more than 1e6 paths.
AssignmentPath brute_force_assign(const NllMatrix& nll, double beta);

/// Summed NLL along `path` plus beta per switch, accumulated left to right
/// in the same order the dynamic program uses.
double path_cost(const NllMatrix& nll, double beta, const AssignmentPath& path);

}  // namespace tic

#endif  // TIC_ASSIGN_HPP_
