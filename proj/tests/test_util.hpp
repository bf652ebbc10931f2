#ifndef TIC_TESTS_TEST_UTIL_HPP_
#define TIC_TESTS_TEST_UTIL_HPP_

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "tic/core.hpp"
#include "tic/random.hpp"

namespace tic::test {

inline Matrix random_matrix(Rng& rng, int rows, int cols, double lo = -1.0, double hi = 1.0) {
  Matrix m(rows, cols);
  for (int j = 0; j < cols; ++j)
    for (int i = 0; i < rows; ++i) m(i, j) = rng.uniform(lo, hi);
  return m;
}

inline Matrix random_gaussian(Rng& rng, int rows, int cols) {
  Matrix m(rows, cols);
  for (int j = 0; j < cols; ++j)
    for (int i = 0; i < rows; ++i) m(i, j) = rng.normal();
  return m;
}

/// Well-conditioned SPD matrix: A A' / d + I.
inline Matrix random_spd(Rng& rng, int d) {
  const Matrix a = random_gaussian(rng, d, d);
  return a * a.transpose() / d + Matrix::Identity(d, d);
}

inline Matrix random_symmetric(Rng& rng, int d, double scale = 1.0) {
  const Matrix a = random_gaussian(rng, d, d) * scale;
  return 0.5 * (a + a.transpose());
}

inline Matrix random_orthogonal(Rng& rng, int d) {
  Eigen::HouseholderQR<Matrix> qr(random_gaussian(rng, d, d));
  return qr.householderQ();
}

/// Fresh scratch directory under the system temp dir.
inline std::filesystem::path scratch_dir(const std::string& name) {
  auto dir = std::filesystem::temp_directory_path() / ("tic_test_" + name);
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir;
}

inline void write_text(const std::filesystem::path& p, const std::string& text) {
  std::ofstream(p, std::ios::binary) << text;
}

inline std::string read_text(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

}  // namespace tic::test

#endif  // TIC_TESTS_TEST_UTIL_HPP_
