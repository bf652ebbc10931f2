#include "tic/tglasso.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

namespace tic {
namespace {

void require_symmetric(const Matrix& m, const char* what) {
  if (m.rows() != m.cols()) throw std::invalid_argument(std::string(what) + " is not square");
  const double scale = std::max(1.0, m.cwiseAbs().maxCoeff());
  if ((m - m.transpose()).cwiseAbs().maxCoeff() > 1e-10 * scale)
    throw std::invalid_argument(std::string(what) + " is not symmetric");
}

// Class id for each entry of a d x d matrix with d = n * w; ids are dense
// in [0, w * n * n) though lag-0 ids with row > col are never used.
std::vector<int> class_ids(int d, int w) {
  const int n = d / w;
  std::vector<int> ids(static_cast<std::size_t>(d) * d);
  for (int j = 0; j < d; ++j) {
    for (int i = 0; i < d; ++i) {
      const auto c = toeplitz_class(i, j, n);
      ids[static_cast<std::size_t>(j) * d + i] = (c.lag * n + c.row) * n + c.col;
    }
  }
  return ids;
}

// Restore positive definiteness of a symmetric block-Toeplitz matrix with a
// diagonal shift, which keeps the Toeplitz pattern intact.
Matrix shift_to_pd(const Matrix& m, double floor) {
  Eigen::SelfAdjointEigenSolver<Matrix> eig(m, Eigen::EigenvaluesOnly);
  const double lo = eig.eigenvalues().minCoeff();
  if (lo >= floor) return m;
  Matrix out = m;
  out.diagonal().array() += floor - lo;
  return out;
}

}  // namespace

double soft_threshold(double a, double kappa) {
  if (a > kappa) return a - kappa;
  if (a < -kappa) return a + kappa;
  return 0.0;
}

Matrix admm_theta_update(const Matrix& z, const Matrix& u, const Matrix& s, double rho_eff) {
  if (!(rho_eff > 0.0)) throw std::invalid_argument("rho_eff must be > 0");
  Matrix a = rho_eff * (z - u) - s;
  a = 0.5 * (a + a.transpose()).eval();
  Eigen::SelfAdjointEigenSolver<Matrix> eig(a);
  if (eig.info() != Eigen::Success) throw std::runtime_error("theta update: eigendecomposition failed");
  const Vector& dvals = eig.eigenvalues();
  Vector theta_vals(dvals.size());
  for (Eigen::Index j = 0; j < dvals.size(); ++j) {
    const double dj = dvals(j);
    // Two algebraically equal forms; the second avoids cancellation when
    // dj is large and negative.
    const double root = std::sqrt(dj * dj + 4.0 * rho_eff);
    theta_vals(j) = dj >= 0.0 ? (dj + root) / (2.0 * rho_eff) : 2.0 / (root - dj);
  }
  const Matrix& q = eig.eigenvectors();
  Matrix theta = q * theta_vals.asDiagonal() * q.transpose();
  return 0.5 * (theta + theta.transpose());
}

Matrix admm_z_update(const Matrix& theta_plus_u, const Matrix& lambda, double rho_eff, int w) {
  const auto d = static_cast<int>(theta_plus_u.rows());
  if (theta_plus_u.cols() != d || lambda.rows() != d || lambda.cols() != d)
    throw std::invalid_argument("z update: shape mismatch");
  if (w < 1 || d % w != 0) throw std::invalid_argument("z update: dimension not divisible by window");
  if (!(rho_eff > 0.0)) throw std::invalid_argument("rho_eff must be > 0");
  const int n = d / w;
  const auto ids = class_ids(d, w);
  const std::size_t classes = static_cast<std::size_t>(w) * n * n;
  std::vector<double> sum(classes, 0.0), lam(classes, 0.0);
  std::vector<int> count(classes, 0);
  for (int j = 0; j < d; ++j) {
    for (int i = 0; i < d; ++i) {
      const int c = ids[static_cast<std::size_t>(j) * d + i];
      sum[c] += theta_plus_u(i, j);
      lam[c] += lambda(i, j);
      ++count[c];
    }
  }
  std::vector<double> value(classes, 0.0);
  for (std::size_t c = 0; c < classes; ++c) {
    if (count[c] == 0) continue;
    const double m = count[c];
    value[c] = soft_threshold(sum[c] / m, lam[c] / (rho_eff * m));
  }
  Matrix z(d, d);
  for (int j = 0; j < d; ++j) {
    for (int i = 0; i < d; ++i) z(i, j) = value[ids[static_cast<std::size_t>(j) * d + i]];
  }
  return z;
}

double glasso_objective(const Matrix& theta, const Matrix& s, const Matrix& lambda) {
  Eigen::LLT<Matrix> llt(theta);
  if (llt.info() != Eigen::Success) return std::numeric_limits<double>::infinity();
  const double logdet = 2.0 * llt.matrixLLT().diagonal().array().log().sum();
  return -logdet + (s.cwiseProduct(theta)).sum() + lambda.cwiseProduct(theta.cwiseAbs()).sum();
}

Matrix regularized_covariance(const Matrix& s) {
  Eigen::SelfAdjointEigenSolver<Matrix> eig(s, Eigen::EigenvaluesOnly);
  if (eig.eigenvalues().minCoeff() >= 1e-8) return s;
  const double d = static_cast<double>(s.rows());
  double ridge = 1e-6 * s.trace() / d;
  if (!(ridge > 0.0)) ridge = 1e-6;
  Matrix out = s;
  out.diagonal().array() += ridge;
  return out;
}

GlassoSolution solve_toeplitz_glasso(const EmpiricalStats& stats, const Matrix& lambda, int w,
                                     const TicConfig& cfg) {
  if (stats.count < 1) throw std::invalid_argument("solve_toeplitz_glasso: empty cluster");
  require_symmetric(stats.cov, "covariance");
  require_symmetric(lambda, "lambda");
  const auto d = stats.cov.rows();
  if (lambda.rows() != d) throw std::invalid_argument("lambda does not match covariance size");
  if (stats.mean.size() != d) throw std::invalid_argument("mean does not match covariance size");
  if (w < 1 || d % w != 0) throw std::invalid_argument("covariance size not divisible by window");
  if (lambda.minCoeff() < 0.0) throw std::invalid_argument("lambda must be nonnegative");

  const double count = static_cast<double>(stats.count);
  double rho = cfg.rho / count;
  const Matrix lam = lambda / count;
  const Matrix s = regularized_covariance(stats.cov);
  const double sqrt_p = static_cast<double>(d);  // sqrt of the d*d entries

  AdmmState st;
  st.z = Matrix::Zero(d, d);
  st.u = Matrix::Zero(d, d);
  bool converged = false;
  for (int it = 1; it <= cfg.admm_max_iter; ++it) {
    st.theta = admm_theta_update(st.z, st.u, s, rho);
    const Matrix z_old = st.z;
    st.z = admm_z_update(st.theta + st.u, lam, rho, w);
    st.u += st.theta - st.z;
    st.iterations = it;
    st.primal_residual = (st.theta - st.z).norm();
    st.dual_residual = rho * (st.z - z_old).norm();
    const double eps_pri =
        sqrt_p * cfg.admm_tol_abs + cfg.admm_tol_rel * std::max(st.theta.norm(), st.z.norm());
    const double eps_dual = sqrt_p * cfg.admm_tol_abs + cfg.admm_tol_rel * rho * st.u.norm();
    if (st.primal_residual <= eps_pri && st.dual_residual <= eps_dual) {
      converged = true;
      break;
    }
    // Residual balancing; U is the scaled dual, so it is rescaled with rho.
    if (st.primal_residual > 10.0 * st.dual_residual) {
      rho *= 2.0;
      st.u /= 2.0;
    } else if (st.dual_residual > 10.0 * st.primal_residual) {
      rho /= 2.0;
      st.u *= 2.0;
    }
  }

  std::string warning;
  if (!converged) {
    warning = "ADMM did not converge in " + std::to_string(cfg.admm_max_iter) +
              " iterations (primal " + std::to_string(st.primal_residual) + ", dual " +
              std::to_string(st.dual_residual) + ")";
  }
  // Z carries the exact structure; repair definiteness if thresholding
  // pushed it out of the cone.
  const double floor = 1e-8 * std::max(1.0, st.theta.diagonal().maxCoeff());
  Matrix theta = shift_to_pd(st.z, floor);
  if (theta != st.z) {
    if (!warning.empty()) warning += "; ";
    warning += "Z iterate shifted to restore positive definiteness";
  }
  ClusterModel model(stats.mean, std::move(theta), w);
  return GlassoSolution{std::move(model), std::move(st), converged, std::move(warning)};
}

}  // namespace tic
