#include "tic/preprocess.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace tic {

Matrix PcaModel::transform(const Matrix& data) const {
  return (data.rowwise() - mean.transpose()) * components.transpose();
}

Matrix PcaModel::inverse_transform(const Matrix& projected) const {
  return (projected * components).rowwise() + mean.transpose();
}

FeatureSequence mean_subtract(const FeatureSequence& seq) {
  const Matrix& x = seq.data();
  const Eigen::RowVectorXd mu = x.colwise().mean();
  return seq.with_data(x.rowwise() - mu);
}

std::pair<PcaModel, FeatureSequence> pca_fit_transform(const FeatureSequence& seq, int d) {
  const auto t = static_cast<int>(seq.length());
  const auto n = static_cast<int>(seq.dim());
  if (d < 1 || d > n || d > t - 1) {
    throw ConfigError("PCA dimension " + std::to_string(d) + " outside [1, min(T-1, n)] = [1, " +
                      std::to_string(std::min(t - 1, n)) + "]");
  }
  const Matrix& x = seq.data();
  PcaModel model;
  model.mean = x.colwise().mean().transpose();
  const Matrix centered = x.rowwise() - model.mean.transpose();
  const Matrix cov = centered.transpose() * centered / static_cast<double>(t - 1);

  Eigen::SelfAdjointEigenSolver<Matrix> eig(cov);
  if (eig.info() != Eigen::Success) throw std::runtime_error("PCA eigendecomposition failed");
  // Eigen returns ascending eigenvalues.
  model.components.resize(d, n);
  model.explained_variance.resize(d);
  for (int j = 0; j < d; ++j) {
    const int src = n - 1 - j;
    Vector v = eig.eigenvectors().col(src);
    Eigen::Index arg = 0;
    for (Eigen::Index i = 1; i < v.size(); ++i) {
      if (std::abs(v(i)) > std::abs(v(arg))) arg = i;
    }
    if (v(arg) < 0) v = -v;
    model.components.row(j) = v.transpose();
    model.explained_variance(j) = std::max(0.0, eig.eigenvalues()(src));
  }
  Matrix projected = centered * model.components.transpose();
  return {std::move(model), seq.with_data(std::move(projected))};
}

FeatureSequence length_normalize(const FeatureSequence& seq) {
  Matrix x = seq.data();
  for (Eigen::Index t = 0; t < x.rows(); ++t) {
    const double norm = x.row(t).norm();
    if (norm == 0.0) throw DataError("cannot length-normalise zero row " + std::to_string(t));
    x.row(t) /= norm;
  }
  return seq.with_data(std::move(x));
}

FeatureSequence stack_windows(const FeatureSequence& seq, int w) {
  const auto t = static_cast<int>(seq.length());
  const auto n = static_cast<int>(seq.dim());
  if (w < 1) throw ConfigError("window must be >= 1");
  if (w > t) {
    throw DataError("window " + std::to_string(w) + " exceeds sequence length " +
                    std::to_string(t));
  }
  if (w == 1) return seq;
  const Matrix& x = seq.data();
  Matrix out(t - w + 1, n * w);
  for (int r = 0; r < t - w + 1; ++r) {
    for (int k = 0; k < w; ++k) out.block(r, k * n, 1, n) = x.row(r + k);
  }
  return FeatureSequence(std::move(out));
}

FeatureSequence preprocess(const FeatureSequence& seq, const PreprocessOptions& opts) {
  FeatureSequence out = mean_subtract(seq);
  if (opts.pca_dims) out = pca_fit_transform(out, *opts.pca_dims).second;
  if (opts.length_norm) out = length_normalize(out);
  if (opts.window > 1) out = stack_windows(out, opts.window);
  return out;
}

}  // namespace tic
