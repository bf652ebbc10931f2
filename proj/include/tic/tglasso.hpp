// Toeplitz graphical lasso:
//
//   minimise  -logdet(Theta) + tr(S Theta) + (1/|C|) ||lambda o Theta||_1
//   s.t.      Theta block-Toeplitz (w x w grid of n x n blocks)
//
// solved by scaled-form ADMM on the consensus Theta = Z. The Theta step is
// the closed-form log-det proximal map; the Z step soft-thresholds the mean
// of each class of entries tied by the block-Toeplitz pattern and symmetry.
// The problem is normalised by |C| so rho_eff = rho / |C|.

#ifndef TIC_TGLASSO_HPP_
#define TIC_TGLASSO_HPP_

#include <string>

#include "tic/core.hpp"
#include "tic/gaussian.hpp"

namespace tic {

struct AdmmState {
  Matrix theta;
  Matrix z;
  Matrix u;
  double primal_residual = 0.0;
  double dual_residual = 0.0;
  int iterations = 0;
};

struct GlassoSolution {
  ClusterModel model;
  AdmmState state;
  bool converged = false;
  /// Empty on success; describes non-convergence or a PD repair otherwise.
  std::string warning;
};

/// Unique SPD minimiser of -logdet(Theta) + tr(S Theta)
/// + (rho_eff/2) ||Theta - Z + U||_F^2.
Matrix admm_theta_update(const Matrix& z, const Matrix& u, const Matrix& s, double rho_eff);

/// Proximal step for the weighted l1 norm restricted to symmetric
/// block-Toeplitz matrices. `lambda` is the (already |C|-normalised)
/// per-entry weight; a class with m entries and weight sum L is set to
/// soft_threshold(mean, L / (rho_eff * m)).
Matrix admm_z_update(const Matrix& theta_plus_u, const Matrix& lambda, double rho_eff, int w);

double soft_threshold(double a, double kappa);

/// -logdet(Theta) + tr(S Theta) + ||lambda o Theta||_1, or +inf when Theta
/// is not positive definite. `lambda` here is the normalised weight.
double glasso_objective(const Matrix& theta, const Matrix& s, const Matrix& lambda);

/// S, or S + 1e-6 * tr(S)/d * I when its smallest eigenvalue is below 1e-8.
Matrix regularized_covariance(const Matrix& s);

/// `lambda` is the raw penalty matrix; it is divided by stats.count here.
GlassoSolution solve_toeplitz_glasso(const EmpiricalStats& stats, const Matrix& lambda, int w,
                                     const TicConfig& cfg);

}  // namespace tic

#endif  // TIC_TGLASSO_HPP_
