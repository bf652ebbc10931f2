#include "tic/core.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <string>
#include <tuple>
#include <utility>

namespace tic {

FeatureSequence::FeatureSequence(Matrix data,
                                 std::optional<std::vector<TimeSpan>> times)
    : data_(std::move(data)), times_(std::move(times)) {
  if (data_.rows() < 1) throw DataError("no feature rows");
  if (data_.cols() < 1) throw DataError("feature rows have zero columns");
  if (!data_.allFinite()) {
    for (Eigen::Index t = 0; t < data_.rows(); ++t) {
      if (!data_.row(t).allFinite())
        throw DataError("non-finite value in feature row " + std::to_string(t));
    }
  }
  if (times_) {
    const auto& ts = *times_;
    if (ts.size() != static_cast<std::size_t>(data_.rows())) {
      throw DataError("times has " + std::to_string(ts.size()) +
                      " rows but features have " + std::to_string(data_.rows()));
    }
    for (std::size_t t = 0; t < ts.size(); ++t) {
      if (!std::isfinite(ts[t].start) || !std::isfinite(ts[t].end) ||
          !(ts[t].end > ts[t].start)) {
        throw DataError("time row " + std::to_string(t) + " has end <= start");
      }
      if (t > 0 && ts[t].start < ts[t - 1].end) {
        throw DataError("time row " + std::to_string(t) +
                        " overlaps or precedes the previous row");
      }
    }
  }
}

std::vector<TimeSpan> FeatureSequence::extents() const {
  if (times_) return *times_;
  std::vector<TimeSpan> out(length());
  for (std::size_t t = 0; t < out.size(); ++t) {
    out[t] = {static_cast<double>(t), static_cast<double>(t + 1)};
  }
  return out;
}

FeatureSequence FeatureSequence::with_data(Matrix data) const {
  if (times_ && data.rows() != data_.rows()) return FeatureSequence(std::move(data));
  return FeatureSequence(std::move(data), times_);
}

ToeplitzClass toeplitz_class(int i, int j, int n) {
  int br = i / n, bc = j / n;
  int p = i % n, q = j % n;
  int lag = bc - br;
  if (lag < 0) {
    lag = -lag;
    std::swap(p, q);
  }
  if (lag == 0 && p > q) std::swap(p, q);
  return {lag, p, q};
}

namespace {

struct ClassKeyLess {
  bool operator()(const ToeplitzClass& a, const ToeplitzClass& b) const {
    return std::tie(a.lag, a.row, a.col) < std::tie(b.lag, b.row, b.col);
  }
};

}  // namespace

double toeplitz_deviation(const Matrix& m, int w) {
  const int d = static_cast<int>(m.rows());
  if (w < 1 || d % w != 0) throw std::invalid_argument("dimension not divisible by window");
  const int n = d / w;
  std::map<ToeplitzClass, std::pair<double, int>, ClassKeyLess> sums;
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j < d; ++j) {
      auto& s = sums[toeplitz_class(i, j, n)];
      s.first += m(i, j);
      s.second += 1;
    }
  }
  double worst = 0.0;
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j < d; ++j) {
      const auto& s = sums[toeplitz_class(i, j, n)];
      worst = std::max(worst, std::abs(m(i, j) - s.first / s.second));
    }
  }
  return worst;
}

ClusterModel::ClusterModel(Vector mean, Matrix theta, int w)
    : mean_(std::move(mean)), theta_(std::move(theta)), w_(w) {
  const auto d = mean_.size();
  if (w_ < 1) throw std::invalid_argument("ClusterModel: window must be >= 1");
  if (d < 1 || d % w_ != 0)
    throw std::invalid_argument("ClusterModel: mean dimension not a multiple of window");
  if (theta_.rows() != d || theta_.cols() != d)
    throw std::invalid_argument("ClusterModel: precision shape does not match mean");
  if (!mean_.allFinite() || !theta_.allFinite())
    throw std::invalid_argument("ClusterModel: non-finite parameters");
  const double scale = std::max(1.0, theta_.cwiseAbs().maxCoeff());
  if ((theta_ - theta_.transpose()).cwiseAbs().maxCoeff() > 1e-9 * scale)
    throw std::invalid_argument("ClusterModel: precision is not symmetric");
  theta_ = 0.5 * (theta_ + theta_.transpose()).eval();
  if (toeplitz_deviation(theta_, w_) > 1e-8 * scale)
    throw std::invalid_argument("ClusterModel: precision is not block-Toeplitz");
  Eigen::LLT<Matrix> llt(theta_);
  if (llt.info() != Eigen::Success)
    throw std::invalid_argument("ClusterModel: precision is not positive definite");
  logdet_ = 2.0 * llt.matrixLLT().diagonal().array().log().sum();
}

AssignmentPath::AssignmentPath(std::vector<int> labels, int k)
    : labels_(std::move(labels)), k_(k) {
  if (k_ < 1) throw std::invalid_argument("AssignmentPath: k must be >= 1");
  for (std::size_t t = 0; t < labels_.size(); ++t) {
    if (labels_[t] < 0 || labels_[t] >= k_) {
      throw std::invalid_argument("AssignmentPath: label out of range at row " +
                                  std::to_string(t));
    }
  }
}

std::vector<std::size_t> AssignmentPath::counts() const {
  std::vector<std::size_t> c(static_cast<std::size_t>(k_), 0);
  for (int l : labels_) ++c[static_cast<std::size_t>(l)];
  return c;
}

std::vector<std::size_t> AssignmentPath::members(int cluster) const {
  std::vector<std::size_t> out;
  for (std::size_t t = 0; t < labels_.size(); ++t) {
    if (labels_[t] == cluster) out.push_back(t);
  }
  return out;
}

std::size_t AssignmentPath::switches() const {
  std::size_t s = 0;
  for (std::size_t t = 1; t < labels_.size(); ++t) s += labels_[t] != labels_[t - 1];
  return s;
}

Timeline::Timeline(std::vector<Segment> segments, std::string file_id)
    : segments_(std::move(segments)), file_id_(std::move(file_id)) {
  if (file_id_.empty()) throw DataError("timeline file id is empty");
  for (std::size_t i = 0; i < segments_.size(); ++i) {
    const auto& s = segments_[i];
    if (!std::isfinite(s.start) || !std::isfinite(s.end) || !(s.end > s.start)) {
      throw DataError("segment " + std::to_string(i) + " has end <= start");
    }
    if (s.label.empty()) throw DataError("segment " + std::to_string(i) + " has an empty label");
  }
  std::stable_sort(segments_.begin(), segments_.end(),
                   [](const Segment& a, const Segment& b) { return a.start < b.start; });
}

Lambda::Lambda(double scalar) : scalar_(scalar) {
  if (!std::isfinite(scalar) || scalar < 0.0) throw ConfigError("lambda must be finite and >= 0");
}

Lambda::Lambda(Matrix full) : scalar_(0.0), full_(std::move(full)) {
  const Matrix& m = *full_;
  if (m.rows() != m.cols() || m.rows() == 0) throw ConfigError("lambda matrix must be square");
  if (!m.allFinite() || m.minCoeff() < 0.0) throw ConfigError("lambda matrix must be finite and >= 0");
  if ((m - m.transpose()).cwiseAbs().maxCoeff() > 1e-12)
    throw ConfigError("lambda matrix must be symmetric");
}

Matrix Lambda::expand(int d) const {
  if (full_) {
    if (full_->rows() != d) {
      throw ConfigError("lambda matrix is " + std::to_string(full_->rows()) + "x" +
                        std::to_string(full_->cols()) + " but the model dimension is " +
                        std::to_string(d));
    }
    return *full_;
  }
  Matrix m = Matrix::Constant(d, d, scalar_);
  m.diagonal().setZero();
  return m;
}

void TicConfig::validate() const {
  if (k < 1) throw ConfigError("k must be >= 1");
  if (!std::isfinite(beta) || beta < 0.0) throw ConfigError("beta must be finite and >= 0");
  if (w < 1) throw ConfigError("window must be >= 1");
  if (!std::isfinite(rho) || rho <= 0.0) throw ConfigError("rho must be > 0");
  if (!(admm_tol_abs > 0.0) || !(admm_tol_rel >= 0.0)) throw ConfigError("ADMM tolerances must be positive");
  if (admm_max_iter < 1) throw ConfigError("admm_max_iter must be >= 1");
  if (em_max_iter < 1) throw ConfigError("em_max_iter must be >= 1");
  if (min_cluster_size < 0) throw ConfigError("min_cluster_size must be >= 0");
}

int TicConfig::resolved_min_cluster_size(int dim) const {
  return min_cluster_size > 0 ? min_cluster_size : dim + 1;
}

}  // namespace tic
