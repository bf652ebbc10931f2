#include <doctest.h>

#include <cmath>

#include "tic/gaussian.hpp"
#include "tic/synth.hpp"
#include "tic/tglasso.hpp"

using namespace tic;

namespace {

// Independent checker for the model invariants: symmetry, block-Toeplitz
// ties by direct block comparison, and SPD via Cholesky.
bool valid_precision(const Matrix& th, int n, int w) {
  if ((th - th.transpose()).cwiseAbs().maxCoeff() > 1e-12) return false;
  for (int r = 0; r < w; ++r)
    for (int c = 0; c < w; ++c)
      if (r + 1 < w && c + 1 < w &&
          (th.block(r * n, c * n, n, n) - th.block((r + 1) * n, (c + 1) * n, n, n)).cwiseAbs().maxCoeff() > 1e-12)
        return false;
  return Eigen::LLT<Matrix>(th).info() == Eigen::Success;
}

SynthSpec single_model(int n, std::size_t t_len, std::uint64_t seed) {
  SynthSpec s;
  s.k = 1;
  s.n = n;
  s.t_len = static_cast<int>(t_len);
  s.stay_prob = 1.0;
  s.sparsity = 0.5;
  s.seed = seed;
  return s;
}

}  // namespace

TEST_CASE("sparsity 1 gives diagonal precisions") {
  SynthSpec s;
  s.sparsity = 1.0;
  s.w = 2;
  for (const auto& m : gen_models(s)) {
    Matrix off = m.theta();
    off.diagonal().setZero();
    CHECK(off.isZero(0.0));
    CHECK(m.theta().diagonal().isConstant(1.0));
  }
}

TEST_CASE("generated models satisfy the invariants for 100 seeds") {
  double zeros = 0, classes = 0;
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    SynthSpec s;
    s.seed = seed;
    s.n = 3 + static_cast<int>(seed % 3);
    s.w = 1 + static_cast<int>(seed % 3);
    s.k = 2 + static_cast<int>(seed % 2);
    const auto models = gen_models(s);
    REQUIRE(models.size() == static_cast<std::size_t>(s.k));
    for (std::size_t i = 0; i < models.size(); ++i) {
      const auto& th = models[i].theta();
      CHECK(valid_precision(th, s.n, s.w));
      for (int r = 0; r < th.rows(); ++r) {
        double off = 0.0;
        for (int c = 0; c < th.cols(); ++c)
          if (c != r) off += std::abs(th(r, c));
        CHECK(th(r, r) > off);
      }
      // Count independent off-diagonal classes from the first block row.
      const int n = s.n;
      for (int lag = 0; lag < s.w; ++lag)
        for (int a = 0; a < n; ++a)
          for (int b = (lag == 0 ? a + 1 : 0); b < n; ++b) {
            classes += 1;
            zeros += th(a, lag * n + b) == 0.0;
          }
      for (std::size_t j = 0; j < i; ++j) {
        const Vector da = models[i].mean().head(s.n) - models[j].mean().head(s.n);
        CHECK(da.norm() >= s.separation - 1e-12);
      }
      for (int b = 1; b < s.w; ++b) CHECK(models[i].mean().segment(b * s.n, s.n) == models[i].mean().head(s.n));
    }
  }
  CHECK(zeros / classes == doctest::Approx(0.8).epsilon(0.05));
}

TEST_CASE("determinism") {
  SynthSpec s;
  s.w = 2;
  s.seed = 99;
  const auto a = gen_models(s);
  const auto b = gen_models(s);
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(a[i].theta() == b[i].theta());
    CHECK(a[i].mean() == b[i].mean());
  }
  const auto da = gen_sequence(s, a);
  const auto db = gen_sequence(s, b);
  CHECK(da.features.data() == db.features.data());
  CHECK(da.labels == db.labels);
  s.seed = 100;
  CHECK_FALSE(gen_sequence(s, gen_models(s)).features.data() == da.features.data());
}

TEST_CASE("stay_prob 1 gives constant labels") {
  SynthSpec s;
  s.stay_prob = 1.0;
  const auto d = gen_sequence(s, gen_models(s));
  for (int l : d.labels) CHECK(l == d.labels[0]);
  REQUIRE(d.features.times());
  CHECK(d.features.times()->at(5) == TimeSpan{5, 6});
  CHECK(d.features.length() == static_cast<std::size_t>(s.t_len));
}

TEST_CASE("switch count concentrates around its expectation") {
  SynthSpec s;
  s.stay_prob = 0.9;
  s.t_len = 200;
  s.n = 2;
  double total = 0.0;
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    s.seed = seed;
    const auto d = gen_sequence(s, gen_models(s));
    for (std::size_t t = 1; t < d.labels.size(); ++t) total += d.labels[t] != d.labels[t - 1];
  }
  const double trials = 50.0 * (s.t_len - 1), p = 1 - s.stay_prob;
  CHECK(std::abs(total - trials * p) <= 4 * std::sqrt(trials * p * (1 - p)));
}

TEST_CASE("sample covariance matches the model covariance") {
  const auto s = single_model(4, 5000, 7);
  const auto models = gen_models(s);
  const auto d = gen_sequence(s, models);
  std::vector<std::size_t> all(d.features.length());
  for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
  const auto st = empirical_stats(d.features, all);
  const Matrix truth = models[0].theta().inverse();
  CHECK((st.cov - truth).norm() / truth.norm() < 0.1);
  CHECK((st.mean - models[0].mean()).norm() < 0.1);
}

TEST_CASE("refit with lambda 0 recovers the precision") {
  for (std::uint64_t seed : {3u, 4u, 5u}) {
    const auto s = single_model(5, 5000, seed);
    const auto models = gen_models(s);
    const auto d = gen_sequence(s, models);
    std::vector<std::size_t> all(d.features.length());
    for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
    TicConfig cfg;
    const auto sol = solve_toeplitz_glasso(empirical_stats(d.features, all), Matrix::Zero(5, 5), 1, cfg);
    const Matrix& truth = models[0].theta();
    CHECK((sol.model.theta() - truth).norm() / truth.norm() < 0.3);
  }
}

TEST_CASE("windowed sequences have correlated consecutive frames") {
  SynthSpec s;
  s.k = 1;
  s.n = 1;
  s.w = 2;
  s.t_len = 4000;
  s.stay_prob = 1.0;
  s.sparsity = 0.0;
  const auto models = gen_models(s);
  const double off = models[0].theta()(0, 1);
  REQUIRE(off != 0.0);
  const auto d = gen_sequence(s, models);
  const Vector x = d.features.data().col(0).array() - d.features.data().col(0).mean();
  const double lag1 = x.head(x.size() - 1).dot(x.tail(x.size() - 1)) / x.squaredNorm();
  // Negative off-diagonal precision means positive correlation and vice versa.
  CHECK(lag1 * off < 0.0);
  CHECK(std::abs(lag1) > 0.05);
}

TEST_CASE("spec validation") {
  auto bad = [](auto mutate) {
    SynthSpec s;
    mutate(s);
    CHECK_THROWS_AS(s.validate(), ConfigError);
  };
  bad([](SynthSpec& s) { s.stay_prob = 1.5; });
  bad([](SynthSpec& s) { s.stay_prob = 0.0; });
  bad([](SynthSpec& s) { s.sparsity = -0.1; });
  bad([](SynthSpec& s) { s.k = 0; });
  bad([](SynthSpec& s) { s.n = 0; });
  bad([](SynthSpec& s) { s.w = 0; });
  bad([](SynthSpec& s) { s.t_len = 0; });
  bad([](SynthSpec& s) { s.separation = 0.0; });
  CHECK_NOTHROW(SynthSpec{}.validate());
}
