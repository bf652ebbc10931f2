#include <doctest.h>

#include <cmath>

#include "test_util.hpp"
#include "tic/preprocess.hpp"

using namespace tic;

namespace {

FeatureSequence seq_of(const Matrix& m) { return FeatureSequence(m); }

Matrix centered(const Matrix& m) { return m.rowwise() - m.colwise().mean(); }

}  // namespace

TEST_CASE("mean_subtract") {
  CHECK(mean_subtract(seq_of(Matrix::Constant(4, 2, 3.5))).data().isZero(0.0));

  Matrix two(2, 2);
  two << 0, 0, 2, 2;
  const Matrix out = mean_subtract(seq_of(two)).data();
  CHECK(out(0, 0) == -1.0);
  CHECK(out(1, 1) == 1.0);

  Rng rng(1);
  const Matrix r = test::random_matrix(rng, 100, 5, -10, 10);
  const Matrix c = mean_subtract(seq_of(r)).data();
  for (int j = 0; j < 5; ++j) {
    double sum = 0.0;
    for (int i = 0; i < 100; ++i) sum += c(i, j);
    CHECK(std::abs(sum / 100) < 1e-10);
  }
  CHECK((mean_subtract(mean_subtract(seq_of(r))).data() - c).cwiseAbs().maxCoeff() < 1e-12);

  const FeatureSequence timed(Matrix::Ones(2, 1), std::vector<TimeSpan>{{0, 1}, {1, 3}});
  CHECK(mean_subtract(timed).times() == timed.times());
}

TEST_CASE("PCA on rank-one data") {
  Matrix line(4, 2);
  line << 1, 1, -1, -1, 2, 2, -2, -2;
  const auto [model, proj] = pca_fit_transform(seq_of(line), 1);
  const double total_var = (centered(line).array().square().sum()) / 3.0;
  CHECK(model.explained_variance(0) == doctest::Approx(total_var).epsilon(1e-8));
  CHECK(proj.data()(0, 0) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-12));
  CHECK(proj.data()(3, 0) == doctest::Approx(-2 * std::sqrt(2.0)).epsilon(1e-12));
  CHECK(model.components(0, 0) > 0.0);
}

TEST_CASE("PCA with d = n is a rotation and inverts exactly") {
  Rng rng(2);
  const Matrix x = test::random_gaussian(rng, 50, 4) * 3.0;
  const auto [model, proj] = pca_fit_transform(seq_of(x), 4);
  const Matrix& y = proj.data();
  for (int i = 0; i < 50; i += 7)
    for (int j = i + 1; j < 50; j += 5)
      CHECK(std::abs((y.row(i) - y.row(j)).norm() - (x.row(i) - x.row(j)).norm()) < 1e-8);
  CHECK((model.inverse_transform(y) - x).cwiseAbs().maxCoeff() < 1e-8);
  CHECK((model.transform(x) - y).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("PCA reconstruction error matches the SVD oracle") {
  Rng rng(3);
  for (int rep = 0; rep < 5; ++rep) {
    const Matrix x = test::random_gaussian(rng, 200, 6) * test::random_gaussian(rng, 6, 6);
    const auto [model, proj] = pca_fit_transform(seq_of(x), 3);
    const Matrix xc = centered(x);
    Eigen::JacobiSVD<Matrix> svd(xc);
    const Vector sv = svd.singularValues();
    const double dropped = sv.tail(3).squaredNorm();
    const double err = (model.inverse_transform(proj.data()) - x).squaredNorm();
    CHECK(err == doctest::Approx(dropped).epsilon(1e-6));
    for (int j = 0; j < 3; ++j) CHECK(model.explained_variance(j) == doctest::Approx(sv(j) * sv(j) / 199).epsilon(1e-8));
  }
}

TEST_CASE("PCA output covariance is diagonal with the explained variances") {
  Rng rng(4);
  const Matrix x = test::random_gaussian(rng, 120, 5) * test::random_gaussian(rng, 5, 5);
  const auto [model, proj] = pca_fit_transform(seq_of(x), 4);
  const Matrix y = centered(proj.data());
  const Matrix cov = y.transpose() * y / 119.0;
  for (int i = 0; i < 4; ++i) {
    CHECK(std::abs(cov(i, i) - model.explained_variance(i)) < 1e-8 * std::max(1.0, cov(i, i)));
    for (int j = 0; j < 4; ++j)
      if (i != j) CHECK(std::abs(cov(i, j)) < 1e-8 * std::max(1.0, cov(0, 0)));
  }
  CHECK((model.components * model.components.transpose() - Matrix::Identity(4, 4)).cwiseAbs().maxCoeff() < 1e-8);
  for (int i = 1; i < 4; ++i) CHECK(model.explained_variance(i) <= model.explained_variance(i - 1));
  for (int i = 0; i < 4; ++i) {
    Eigen::Index arg;
    model.components.row(i).cwiseAbs().maxCoeff(&arg);
    CHECK(model.components(i, arg) > 0.0);
  }
}

TEST_CASE("PCA rejects out-of-range dimensions") {
  Rng rng(5);
  const auto s = seq_of(test::random_gaussian(rng, 4, 6));
  CHECK_THROWS_AS(pca_fit_transform(s, 0), ConfigError);
  CHECK_THROWS_AS(pca_fit_transform(s, 4), ConfigError);
  CHECK_NOTHROW(pca_fit_transform(s, 3));
}

TEST_CASE("length_normalize") {
  Matrix m(1, 2);
  m << 3, 4;
  const Matrix out = length_normalize(seq_of(m)).data();
  CHECK(out(0, 0) == doctest::Approx(0.6).epsilon(1e-15));
  CHECK(out(0, 1) == doctest::Approx(0.8).epsilon(1e-15));

  Rng rng(6);
  const auto once = length_normalize(seq_of(test::random_gaussian(rng, 30, 4)));
  for (int i = 0; i < 30; ++i) CHECK(std::abs(once.data().row(i).norm() - 1.0) < 1e-12);
  CHECK((length_normalize(once).data() - once.data()).cwiseAbs().maxCoeff() < 1e-12);

  Matrix z = Matrix::Ones(3, 2);
  z.row(1).setZero();
  try {
    length_normalize(seq_of(z));
    FAIL("expected DataError");
  } catch (const DataError& e) {
    CHECK(std::string(e.what()).find("row 1") != std::string::npos);
  }
}

TEST_CASE("stack_windows") {
  Matrix abc(3, 1);
  abc << 1, 2, 3;
  const Matrix s = stack_windows(seq_of(abc), 2).data();
  REQUIRE(s.rows() == 2);
  CHECK(s(0, 0) == 1);
  CHECK(s(0, 1) == 2);
  CHECK(s(1, 0) == 2);
  CHECK(s(1, 1) == 3);
  CHECK(stack_windows(seq_of(abc), 1).data() == abc);
  CHECK_THROWS_AS(stack_windows(seq_of(abc), 4), DataError);
  CHECK_THROWS_AS(stack_windows(seq_of(abc), 0), ConfigError);

  Rng rng(7);
  const Matrix r = test::random_gaussian(rng, 10, 3);
  const Matrix w = stack_windows(seq_of(r), 3).data();
  REQUIRE(w.rows() == 8);
  REQUIRE(w.cols() == 9);
  for (int t = 0; t < 8; ++t)
    for (int k = 0; k < 3; ++k)
      for (int j = 0; j < 3; ++j) CHECK(w(t, k * 3 + j) == r(t + k, j));
}

TEST_CASE("preprocess chain order") {
  Rng rng(8);
  const Matrix x = test::random_gaussian(rng, 40, 5) + Matrix::Constant(40, 5, 4.0);
  const auto out = preprocess(seq_of(x), PreprocessOptions{3, true, 2});
  CHECK(out.length() == 39);
  CHECK(out.dim() == 6);
  // Each stacked half is a unit vector because normalisation precedes stacking.
  for (int t = 0; t < 39; ++t) {
    CHECK(std::abs(out.data().row(t).head(3).norm() - 1.0) < 1e-12);
    CHECK(std::abs(out.data().row(t).tail(3).norm() - 1.0) < 1e-12);
  }
  const auto plain = preprocess(seq_of(x), PreprocessOptions{});
  CHECK((plain.data() - centered(x)).cwiseAbs().maxCoeff() < 1e-12);
}
