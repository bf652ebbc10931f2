// Ground-truth-labelled sequences drawn from K block-Toeplitz Gaussian MRFs.
//
// Models are drawn from an Rng seeded with `seed`; sequences from an Rng
// seeded with `seed ^ kSequenceStream`, so regenerating either part alone is
// reproducible. Normals come from Box-Muller (see random.hpp).

#ifndef TIC_SYNTH_HPP_
#define TIC_SYNTH_HPP_

#include <cstdint>
#include <vector>

#include "tic/core.hpp"

namespace tic {

inline constexpr std::uint64_t kSequenceStream = 0x9E3779B97F4A7C15ULL;

struct SynthSpec {
  int k = 3;
  int n = 8;
  int w = 1;
  int t_len = 300;
  double stay_prob = 0.95;
  /// Probability that an off-diagonal Toeplitz class of the precision is zero.
  double sparsity = 0.8;
  /// Minimum pairwise distance between the per-frame cluster means.
  double separation = 4.0;
  std::uint64_t seed = 1;

  void validate() const;  // throws ConfigError
};

struct SynthData {
  FeatureSequence features;  // t_len x n, unit-duration times attached
  std::vector<int> labels;
};

/// Precisions: each off-diagonal class is nonzero with probability
/// 1 - sparsity, magnitude uniform in [0.2, 0.6] with random sign; the
/// diagonal is the largest off-diagonal absolute row sum + 1, which makes
/// every precision strictly diagonally dominant. Means repeat one n-vector
/// across the w blocks.
std::vector<ClusterModel> gen_models(const SynthSpec& spec);

/// First-order stay/switch label process. With w = 1 every frame is an
/// independent draw mu + L z with L L' = Theta^-1. With w > 1 each frame is
/// drawn from the labelled model's Gaussian conditioned on the previous
/// min(t, w-1) frames, so consecutive frames are correlated.
SynthData gen_sequence(const SynthSpec& spec, const std::vector<ClusterModel>& models);

}  // namespace tic

#endif  // TIC_SYNTH_HPP_
