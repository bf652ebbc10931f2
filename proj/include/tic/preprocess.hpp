// Post-processing applied to embeddings before clustering:
// mean subtraction -> PCA -> length normalisation -> window stacking.

#ifndef TIC_PREPROCESS_HPP_
#define TIC_PREPROCESS_HPP_

#include <optional>
#include <utility>

#include "tic/core.hpp"

namespace tic {

struct PcaModel {
  Vector mean;                // n
  Matrix components;          // d x n, orthonormal rows
  Vector explained_variance;  // d, non-increasing

  /// Project rows of `data` (T x n) onto the components.
  Matrix transform(const Matrix& data) const;
  /// Map projected rows (T x d) back to the input space, mean included.
  Matrix inverse_transform(const Matrix& projected) const;
};

FeatureSequence mean_subtract(const FeatureSequence& seq);

/// PCA by eigendecomposition of the sample covariance (divisor T-1). Each
/// component is sign-fixed so its largest-magnitude entry is positive
/// (lowest index wins ties). Requires 1 <= d <= min(T-1, n).
std::pair<PcaModel, FeatureSequence> pca_fit_transform(const FeatureSequence& seq, int d);

/// Scale every row to unit Euclidean norm. Throws DataError on a zero row.
FeatureSequence length_normalize(const FeatureSequence& seq);

/// Row t of the output is rows t..t+w-1 of the input concatenated, giving
/// (T-w+1) x (n*w). Per-row times are dropped since stacked windows overlap.
FeatureSequence stack_windows(const FeatureSequence& seq, int w);

struct PreprocessOptions {
  std::optional<int> pca_dims;
  bool length_norm = false;
  int window = 1;
};

/// Full chain in the fixed order above. Mean subtraction always runs.
FeatureSequence preprocess(const FeatureSequence& seq, const PreprocessOptions& opts);

}  // namespace tic

#endif  // TIC_PREPROCESS_HPP_
