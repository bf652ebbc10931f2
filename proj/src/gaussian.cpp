#include "tic/gaussian.hpp"

#include <cmath>
#include <numbers>
#include <string>

namespace tic {

double gaussian_nll(const Eigen::Ref<const Vector>& x, const ClusterModel& model) {
  if (x.size() != model.dim()) {
    throw std::invalid_argument("gaussian_nll: vector has dimension " + std::to_string(x.size()) +
                                ", model has " + std::to_string(model.dim()));
  }
  const Vector diff = x - model.mean();
  const double quad = diff.dot(model.theta() * diff);
  return 0.5 * quad - 0.5 * model.logdet_theta() +
         0.5 * static_cast<double>(model.dim()) * std::log(2.0 * std::numbers::pi);
}

Vector gaussian_nll_rows(const Matrix& rows, const ClusterModel& model) {
  if (rows.cols() != model.dim()) {
    throw std::invalid_argument("gaussian_nll_rows: rows have dimension " +
                                std::to_string(rows.cols()) + ", model has " +
                                std::to_string(model.dim()));
  }
  const Matrix diff = rows.rowwise() - model.mean().transpose();
  const Vector quad = (diff * model.theta()).cwiseProduct(diff).rowwise().sum();
  const double offset = -0.5 * model.logdet_theta() +
                        0.5 * static_cast<double>(model.dim()) * std::log(2.0 * std::numbers::pi);
  return (0.5 * quad).array() + offset;
}

EmpiricalStats empirical_stats(const Matrix& rows, std::span<const std::size_t> members) {
  if (members.empty()) throw std::invalid_argument("empirical_stats: no members");
  const auto d = rows.cols();
  EmpiricalStats s;
  s.count = members.size();
  s.mean = Vector::Zero(d);
  for (auto t : members) {
    if (t >= static_cast<std::size_t>(rows.rows()))
      throw std::out_of_range("empirical_stats: member index " + std::to_string(t));
    s.mean += rows.row(static_cast<Eigen::Index>(t)).transpose();
  }
  s.mean /= static_cast<double>(s.count);
  Matrix centered(static_cast<Eigen::Index>(s.count), d);
  for (std::size_t i = 0; i < members.size(); ++i) {
    centered.row(static_cast<Eigen::Index>(i)) =
        rows.row(static_cast<Eigen::Index>(members[i])) - s.mean.transpose();
  }
  s.cov = centered.transpose() * centered / static_cast<double>(s.count);
  s.cov = 0.5 * (s.cov + s.cov.transpose()).eval();
  return s;
}

EmpiricalStats empirical_stats(const FeatureSequence& features,
                               std::span<const std::size_t> members) {
  return empirical_stats(features.data(), members);
}

}  // namespace tic
