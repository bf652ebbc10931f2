#include "tic/synth.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "tic/random.hpp"

namespace tic {

void SynthSpec::validate() const {
  if (k < 1) throw ConfigError("synth: k must be >= 1");
  if (n < 1) throw ConfigError("synth: n must be >= 1");
  if (w < 1) throw ConfigError("synth: w must be >= 1");
  if (t_len < 1) throw ConfigError("synth: t_len must be >= 1");
  if (!(stay_prob > 0.0 && stay_prob <= 1.0))
    throw ConfigError("synth: stay_prob must be in (0, 1]");
  if (!(sparsity >= 0.0 && sparsity <= 1.0)) throw ConfigError("synth: sparsity must be in [0, 1]");
  if (!(separation > 0.0) || !std::isfinite(separation))
    throw ConfigError("synth: separation must be > 0");
}

namespace {

Matrix random_precision(const SynthSpec& spec, Rng& rng) {
  const int n = spec.n, w = spec.w, d = n * w;
  // values[lag][p][q], lag-0 only for p < q
  std::vector<double> value(static_cast<std::size_t>(w) * n * n, 0.0);
  auto at = [&](int lag, int p, int q) -> double& {
    return value[(static_cast<std::size_t>(lag) * n + p) * n + q];
  };
  for (int lag = 0; lag < w; ++lag) {
    for (int p = 0; p < n; ++p) {
      for (int q = (lag == 0 ? p + 1 : 0); q < n; ++q) {
        // Always consume the same draws so sparsity does not shift the stream.
        const double keep = rng.uniform();
        const double mag = rng.uniform(0.2, 0.6);
        const double sign = rng.uniform() < 0.5 ? -1.0 : 1.0;
        if (keep >= spec.sparsity) at(lag, p, q) = sign * mag;
      }
    }
  }
  Matrix theta = Matrix::Zero(d, d);
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j < d; ++j) {
      if (i == j) continue;
      const auto c = toeplitz_class(i, j, n);
      if (c.lag == 0 && c.row == c.col) continue;  // within-frame diagonal
      theta(i, j) = at(c.lag, c.row, c.col);
    }
  }
  // Same diagonal value for feature p in every block keeps the pattern.
  Vector diag = Vector::Zero(n);
  for (int i = 0; i < d; ++i) {
    diag(i % n) = std::max(diag(i % n), theta.row(i).cwiseAbs().sum());
  }
  for (int i = 0; i < d; ++i) theta(i, i) = diag(i % n) + 1.0;
  return theta;
}

std::vector<Vector> random_means(const SynthSpec& spec, Rng& rng) {
  double scale = spec.separation;
  for (;;) {
    for (int attempt = 0; attempt < 1000; ++attempt) {
      std::vector<Vector> means;
      for (int c = 0; c < spec.k; ++c) {
        Vector m(spec.n);
        for (int i = 0; i < spec.n; ++i) m(i) = scale * rng.normal();
        means.push_back(std::move(m));
      }
      bool ok = true;
      for (int a = 0; a < spec.k && ok; ++a) {
        for (int b = a + 1; b < spec.k && ok; ++b) ok = (means[a] - means[b]).norm() >= spec.separation;
      }
      if (ok) return means;
    }
    scale *= 1.5;
  }
}

// Conditional law of the newest frame given `h` previous ones.
struct Conditional {
  Matrix gain;      // n x (h n)
  Matrix chol;      // n x n lower
  Vector mean_new;  // n
  Vector mean_hist; // h n
};

Conditional conditional(const ClusterModel& model, int h) {
  const int n = model.frame_dim(), w = model.window();
  const Matrix sigma = model.theta().inverse();
  const int a0 = (w - 1) * n, b0 = (w - 1 - h) * n, hb = h * n;
  Conditional c;
  c.mean_new = model.mean().segment(a0, n);
  c.mean_hist = model.mean().segment(b0, hb);
  Matrix cov = sigma.block(a0, a0, n, n);
  if (h > 0) {
    const Matrix s_ab = sigma.block(a0, b0, n, hb);
    const Matrix s_bb = sigma.block(b0, b0, hb, hb);
    c.gain = s_bb.llt().solve(s_ab.transpose()).transpose();
    cov -= c.gain * s_ab.transpose();
  } else {
    c.gain = Matrix::Zero(n, 0);
  }
  cov = 0.5 * (cov + cov.transpose()).eval();
  c.chol = cov.llt().matrixL();
  return c;
}

}  // namespace

std::vector<ClusterModel> gen_models(const SynthSpec& spec) {
  spec.validate();
  Rng rng(spec.seed);
  std::vector<ClusterModel> models;
  std::vector<Matrix> thetas;
  for (int c = 0; c < spec.k; ++c) thetas.push_back(random_precision(spec, rng));
  const auto means = random_means(spec, rng);
  for (int c = 0; c < spec.k; ++c) {
    models.emplace_back(means[static_cast<std::size_t>(c)].replicate(spec.w, 1),
                        thetas[static_cast<std::size_t>(c)], spec.w);
  }
  return models;
}

SynthData gen_sequence(const SynthSpec& spec, const std::vector<ClusterModel>& models) {
  spec.validate();
  if (models.size() != static_cast<std::size_t>(spec.k))
    throw std::invalid_argument("gen_sequence: expected " + std::to_string(spec.k) + " models");
  for (const auto& m : models) {
    if (m.frame_dim() != spec.n || m.window() != spec.w)
      throw std::invalid_argument("gen_sequence: model shape does not match spec");
  }
  Rng rng(spec.seed ^ kSequenceStream);
  const auto t_len = static_cast<std::size_t>(spec.t_len);
  const int n = spec.n, w = spec.w;

  std::vector<int> labels(t_len);
  labels[0] = static_cast<int>(rng.index(static_cast<std::uint64_t>(spec.k)));
  for (std::size_t t = 1; t < t_len; ++t) {
    const double u = rng.uniform();
    if (spec.k == 1 || u < spec.stay_prob) {
      labels[t] = labels[t - 1];
    } else {
      const auto j = static_cast<int>(rng.index(static_cast<std::uint64_t>(spec.k - 1)));
      labels[t] = j < labels[t - 1] ? j : j + 1;
    }
  }

  std::vector<std::vector<Conditional>> cond(models.size());
  for (std::size_t c = 0; c < models.size(); ++c) {
    for (int h = 0; h < w; ++h) cond[c].push_back(conditional(models[c], h));
  }

  Matrix x(static_cast<Eigen::Index>(t_len), n);
  std::vector<TimeSpan> times(t_len);
  Vector z(n);
  for (std::size_t t = 0; t < t_len; ++t) {
    const int h = static_cast<int>(std::min<std::size_t>(t, static_cast<std::size_t>(w - 1)));
    const auto& c = cond[static_cast<std::size_t>(labels[t])][static_cast<std::size_t>(h)];
    Vector mu = c.mean_new;
    if (h > 0) {
      Vector hist(h * n);
      for (int i = 0; i < h; ++i) {
        hist.segment(i * n, n) = x.row(static_cast<Eigen::Index>(t) - h + i).transpose();
      }
      mu += c.gain * (hist - c.mean_hist);
    }
    for (int i = 0; i < n; ++i) z(i) = rng.normal();
    x.row(static_cast<Eigen::Index>(t)) = (mu + c.chol * z).transpose();
    times[t] = {static_cast<double>(t), static_cast<double>(t + 1)};
  }
  return SynthData{FeatureSequence(std::move(x), std::move(times)), std::move(labels)};
}

}  // namespace tic
