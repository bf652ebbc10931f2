// Domain types shared by every stage of the clustering pipeline.
//
// All types validate their invariants on construction and are immutable
// afterwards, so they may be shared read-only between threads.

#ifndef TIC_CORE_HPP_
#define TIC_CORE_HPP_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace tic {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

/// Malformed or inconsistent input data (files, feature matrices, timelines).
class DataError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Invalid solver or pipeline configuration.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct TimeSpan {
  double start = 0.0;
  double end = 0.0;

  double duration() const { return end - start; }
  bool operator==(const TimeSpan&) const = default;
};

/// T time-ordered feature vectors of dimension n, row t being X_t.
class FeatureSequence {
 public:
  explicit FeatureSequence(Matrix data,
                           std::optional<std::vector<TimeSpan>> times = {});

  const Matrix& data() const { return data_; }
  const std::optional<std::vector<TimeSpan>>& times() const { return times_; }
  std::size_t length() const { return static_cast<std::size_t>(data_.rows()); }
  std::size_t dim() const { return static_cast<std::size_t>(data_.cols()); }

  /// Per-row extents, falling back to unit durations [t, t+1) when no
  /// times were attached.
  std::vector<TimeSpan> extents() const;

  /// New data with the same times; the times are dropped when the row
  /// count changes.
  FeatureSequence with_data(Matrix data) const;

 private:
  Matrix data_;
  std::optional<std::vector<TimeSpan>> times_;
};

/// Equivalence class of a (n*w)x(n*w) block-Toeplitz symmetric matrix
/// entry: the block lag and the within-block coordinates, canonicalised so
/// that lag >= 0 and, for lag 0, row <= col.
struct ToeplitzClass {
  int lag = 0;
  int row = 0;
  int col = 0;
  bool operator==(const ToeplitzClass&) const = default;
};

ToeplitzClass toeplitz_class(int i, int j, int n);

/// Largest deviation of any entry from the mean of its Toeplitz class.
double toeplitz_deviation(const Matrix& m, int w);

/// One cluster: mean and block-Toeplitz SPD precision over windows of w
/// stacked n-dimensional frames.
class ClusterModel {
 public:
  ClusterModel(Vector mean, Matrix theta, int w);

  const Vector& mean() const { return mean_; }
  const Matrix& theta() const { return theta_; }
  double logdet_theta() const { return logdet_; }
  int window() const { return w_; }
  int frame_dim() const { return static_cast<int>(mean_.size()) / w_; }
  int dim() const { return static_cast<int>(mean_.size()); }

 private:
  Vector mean_;
  Matrix theta_;
  double logdet_ = 0.0;
  int w_ = 1;
};

/// Cluster index per (windowed) feature row.
class AssignmentPath {
 public:
  AssignmentPath() = default;
  AssignmentPath(std::vector<int> labels, int k);

  const std::vector<int>& labels() const { return labels_; }
  int num_clusters() const { return k_; }
  std::size_t size() const { return labels_.size(); }
  int operator[](std::size_t t) const { return labels_[t]; }

  std::vector<std::size_t> counts() const;
  std::vector<std::size_t> members(int cluster) const;
  std::size_t switches() const;

  bool operator==(const AssignmentPath&) const = default;

 private:
  std::vector<int> labels_;
  int k_ = 0;
};

struct Segment {
  double start = 0.0;
  double end = 0.0;
  std::string label;
  bool operator==(const Segment&) const = default;
};

/// Labelled speech segments for a single recording, sorted by start.
class Timeline {
 public:
  Timeline() = default;
  explicit Timeline(std::vector<Segment> segments, std::string file_id = "session");

  const std::vector<Segment>& segments() const { return segments_; }
  const std::string& file_id() const { return file_id_; }
  bool empty() const { return segments_.empty(); }

  bool operator==(const Timeline&) const = default;

 private:
  std::vector<Segment> segments_;
  std::string file_id_ = "session";
};

/// Penalty weights for the l1 term: either a scalar applied off the main
/// diagonal, or a full symmetric nonnegative matrix.
class Lambda {
 public:
  Lambda(double scalar = 0.1);  // NOLINT(google-explicit-constructor)
  explicit Lambda(Matrix full);

  /// Expand to a d x d matrix. Throws ConfigError on a size mismatch.
  Matrix expand(int d) const;
  bool is_scalar() const { return !full_.has_value(); }
  double scalar() const { return scalar_; }
  const std::optional<Matrix>& full() const { return full_; }

 private:
  double scalar_ = 0.1;
  std::optional<Matrix> full_;
};

struct TicConfig {
  int k = 2;
  double beta = 1.0;
  Lambda lambda{0.1};
  int w = 1;
  double rho = 1.0;
  double admm_tol_abs = 1e-6;
  double admm_tol_rel = 1e-5;
  int admm_max_iter = 1000;
  int em_max_iter = 100;
  std::uint64_t seed = 0;
  /// 0 selects the default n*w + 1.
  int min_cluster_size = 0;
  /// Solve the per-cluster M-step problems concurrently.
  bool parallel = true;

  /// Throws ConfigError when an invariant is violated.
  void validate() const;
  int resolved_min_cluster_size(int dim) const;
};

}  // namespace tic

#endif  // TIC_CORE_HPP_
