// Iteration-parameter formulas, the convergence bound eta(alpha), the
// phi(alpha) estimator, and extreme-eigenvalue estimation for SPD matrices.

#pragma once

#include <optional>
#include <string>

#include "mbas/system.hpp"
#include "mbas/types.hpp"

namespace mbas {

// theta = 1 + nu * omega^2; requires nu > 0, omega >= 0.
double theta(double nu, double omega);

// alpha_est = theta * ||M||_F / sqrt(m), the root of the first factor of
// phi(alpha).
double alpha_est(const SystemBundle& s);

// phi(alpha) = (1/alpha) ||(I+R)^{-1}||_F (alpha ||R||_F - theta ||H1||_F)
//                                         (alpha ||I||_F - sqrt(nu theta) ||R H2||_F)
// evaluated with the closed-form norms
//   ||R||_F = ||I||_F = sqrt(2m),   ||(I+R)^{-1}||_F = sqrt(m),
//   ||H1||_F = sqrt(2) ||M||_F,     ||R H2||_F = sqrt(2) ||K||_F.
double phi(const SystemBundle& s, double alpha);

struct SpectralExtremes {
  double min_eig;
  double max_eig;
  std::string method;  // "dense" or "lanczos"
  double achieved_tol;
};

// chi(alpha) factor sqrt(alpha^2 + theta^2 l^2) / (alpha + theta l) at a
// single eigenvalue l of M; unimodal in l with minimum at theta l = alpha.
double chi_factor(double alpha, double lambda, double theta_val);
// The analogous factor over sigma(K).
double vartheta_factor(double alpha, double mu, double nu, double theta_val);

// Upper bound on the spectral radius of the iteration matrix:
//   eta = max over {lam.min, lam.max} of chi * max over {mu.min, mu.max} of
//   vartheta; always in (0, 1). The maxima sit at the spectrum endpoints
//   because each factor decreases below its minimizer and increases above it.
double eta_bound(double alpha, const SpectralExtremes& lam,
                 const SpectralExtremes& mu, double nu, double omega);

enum class EigMethod { automatic, dense, iterative };

// Extreme eigenvalues of an SPD matrix. Dense solve for m <= 225 (or when
// forced); otherwise Lanczos with full reorthogonalization, stopping when
// both extreme Ritz values have relative residual bound <= tol. Throws
// EigenSolveError when the iteration cap is reached first.
SpectralExtremes eig_extremes(const SpMat& A, double tol = 1e-6,
                              EigMethod method = EigMethod::automatic,
                              int maxit = 0);

struct AlphaPolicy {
  enum class Kind {
    estimated,           // alpha_est
    bas_iteration,       // theta
    bas_preconditioner,  // theta / (1 + sqrt(nu) omega)
    asss_default,        // sqrt(min*max eigenvalue of M)
    remark_alpha1,       // theta * sqrt(min*max eigenvalue of M)
    remark_alpha2,       // sqrt(nu theta * min*max eigenvalue of K)
    custom,
  };
  Kind kind = Kind::estimated;
  double value = 0;  // used by custom

  static AlphaPolicy parse(const std::string& text);
  std::string name() const;
};

// Memoizes the eigenvalue extremes across cells of a sweep (they depend on
// the mesh only).
struct AlphaCache {
  std::optional<SpectralExtremes> mass;
  std::optional<SpectralExtremes> stiffness;
};

double resolve_alpha(const AlphaPolicy& policy, const SystemBundle& s,
                     AlphaCache* cache = nullptr);

}  // namespace mbas
