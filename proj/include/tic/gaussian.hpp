#ifndef TIC_GAUSSIAN_HPP_
#define TIC_GAUSSIAN_HPP_

#include <span>

#include "tic/core.hpp"

namespace tic {

/// Sufficient statistics of one cluster's member rows.
struct EmpiricalStats {
  std::size_t count = 0;
  Vector mean;
  Matrix cov;  // biased (divisor |C|)
};

/// 0.5 (x-mu)' Theta (x-mu) - 0.5 logdet Theta + (d/2) ln 2pi.
double gaussian_nll(const Eigen::Ref<const Vector>& x, const ClusterModel& model);

/// NLL of every row of `rows` under `model`.
Vector gaussian_nll_rows(const Matrix& rows, const ClusterModel& model);

EmpiricalStats empirical_stats(const FeatureSequence& features,
                               std::span<const std::size_t> members);
EmpiricalStats empirical_stats(const Matrix& rows, std::span<const std::size_t> members);

}  // namespace tic

#endif  // TIC_GAUSSIAN_HPP_
