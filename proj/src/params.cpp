#include "mbas/params.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include "mbas/dense.hpp"

namespace mbas {

double theta(double nu, double omega) {
  if (!(nu > 0)) throw ParameterError("theta: nu must be positive");
  if (!(omega >= 0)) throw ParameterError("theta: omega must be nonnegative");
  return 1.0 + nu * omega * omega;
}

double alpha_est(const SystemBundle& s) {
  return s.params.theta() * frob_norm(s.M) / std::sqrt(static_cast<double>(s.m()));
}

double phi(const SystemBundle& s, double alpha) {
  if (!(alpha > 0)) throw ParameterError("phi: alpha must be positive");
  const double m = static_cast<double>(s.m());
  const double th = s.params.theta();
  const double sqrt2m = std::sqrt(2.0 * m);
  const double f1 = alpha * sqrt2m - th * std::sqrt(2.0) * frob_norm(s.M);
  const double f2 = alpha * sqrt2m -
                    std::sqrt(s.params.nu * th) * std::sqrt(2.0) * frob_norm(s.K);
  return (1.0 / alpha) * std::sqrt(m) * f1 * f2;
}

double chi_factor(double alpha, double lambda, double theta_val) {
  const double t = theta_val * lambda;
  return std::sqrt(alpha * alpha + t * t) / (alpha + t);
}

double vartheta_factor(double alpha, double mu, double nu, double theta_val) {
  const double t = std::sqrt(nu * theta_val) * mu;
  return std::sqrt(alpha * alpha + t * t) / (alpha + t);
}

double eta_bound(double alpha, const SpectralExtremes& lam,
                 const SpectralExtremes& mu, double nu, double omega) {
  if (!(alpha > 0)) throw ParameterError("eta_bound: alpha must be positive");
  if (!(lam.min_eig > 0 && lam.min_eig <= lam.max_eig) ||
      !(mu.min_eig > 0 && mu.min_eig <= mu.max_eig))
    throw ParameterError("eta_bound: invalid spectral extremes");
  const double th = theta(nu, omega);
  const double chi = std::max(chi_factor(alpha, lam.min_eig, th),
                              chi_factor(alpha, lam.max_eig, th));
  const double vt = std::max(vartheta_factor(alpha, mu.min_eig, nu, th),
                             vartheta_factor(alpha, mu.max_eig, nu, th));
  return chi * vt;
}

namespace {

SpectralExtremes eig_extremes_dense(const SpMat& A) {
  Eigen::SelfAdjointEigenSolver<Mat> es(dense::to_dense(A), Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success)
    throw EigenSolveError("eig_extremes: dense eigensolver did not converge");
  const auto& ev = es.eigenvalues();
  return {ev(0), ev(ev.size() - 1), "dense", 0.0};
}

// Lanczos with full reorthogonalization. Clustered extreme spectra (typical
// for FE mass/stiffness matrices) stall plain power iteration, so both ends
// are taken from the tridiagonal Ritz values instead.
SpectralExtremes eig_extremes_lanczos(const SpMat& A, double tol, int maxit) {
  const Index n = A.rows();
  const int cap = std::min<Index>(n, maxit);

  std::mt19937 rng(0x1c3b5a97u);
  std::normal_distribution<double> gauss(0.0, 1.0);
  Vec v(n);
  for (Index i = 0; i < n; ++i) v[i] = gauss(rng);
  v.normalize();

  Mat V(n, cap + 1);
  V.col(0) = v;
  Vec adiag = Vec::Zero(cap), bsub = Vec::Zero(cap);

  double lo = 0, hi = 0, achieved = 0;
  for (int j = 0; j < cap; ++j) {
    Vec w = A * V.col(j);
    if (j > 0) w -= bsub[j - 1] * V.col(j - 1);
    adiag[j] = V.col(j).dot(w);
    w -= adiag[j] * V.col(j);
    // full reorthogonalization pass
    Vec corr = V.leftCols(j + 1).transpose() * w;
    w -= V.leftCols(j + 1) * corr;
    adiag[j] += corr[j];
    bsub[j] = w.norm();

    const bool exhausted = bsub[j] <= 1e-14 * std::abs(adiag[j]);
    if (!exhausted) V.col(j + 1) = w / bsub[j];

    const bool check = exhausted || j + 1 == cap || (j >= 4 && j % 5 == 4);
    if (check) {
      Eigen::SelfAdjointEigenSolver<Mat> es;
      es.computeFromTridiagonal(adiag.head(j + 1), bsub.head(j),
                                Eigen::ComputeEigenvectors);
      if (es.info() != Eigen::Success)
        throw EigenSolveError("eig_extremes: tridiagonal eigensolver failed");
      const auto& ritz = es.eigenvalues();
      lo = ritz(0);
      hi = ritz(j);
      const double res_lo = bsub[j] * std::abs(es.eigenvectors()(j, 0));
      const double res_hi = bsub[j] * std::abs(es.eigenvectors()(j, j));
      achieved = std::max(res_lo / std::max(std::abs(lo), 1e-300),
                          res_hi / std::max(std::abs(hi), 1e-300));
      if (exhausted || achieved <= tol) return {lo, hi, "lanczos", achieved};
    }
  }
  throw EigenSolveError("eig_extremes: Lanczos did not reach tolerance within the cap");
}

}  // namespace

SpectralExtremes eig_extremes(const SpMat& A, double tol, EigMethod method, int maxit) {
  require(A.rows() == A.cols(), "eig_extremes: matrix must be square");
  if (!(tol > 0)) throw ParameterError("eig_extremes: tol must be positive");
  if (maxit <= 0) maxit = 2000;

  const bool dense_path =
      method == EigMethod::dense || (method == EigMethod::automatic && A.rows() <= 225);
  return dense_path ? eig_extremes_dense(A) : eig_extremes_lanczos(A, tol, maxit);
}

AlphaPolicy AlphaPolicy::parse(const std::string& text) {
  if (text == "est") return {Kind::estimated, 0};
  if (text == "bas-iteration") return {Kind::bas_iteration, 0};
  if (text == "bas-preconditioner") return {Kind::bas_preconditioner, 0};
  if (text == "asss-default") return {Kind::asss_default, 0};
  if (text == "alpha1") return {Kind::remark_alpha1, 0};
  if (text == "alpha2") return {Kind::remark_alpha2, 0};
  if (text.rfind("custom:", 0) == 0) {
    const double v = std::stod(text.substr(7));
    if (!(v > 0)) throw ParameterError("custom alpha must be positive");
    return {Kind::custom, v};
  }
  throw ParameterError("unknown alpha policy '" + text +
                       "' (expected est, bas-iteration, bas-preconditioner, "
                       "asss-default, alpha1, alpha2 or custom:<value>)");
}

std::string AlphaPolicy::name() const {
  switch (kind) {
    case Kind::estimated: return "est";
    case Kind::bas_iteration: return "bas-iteration";
    case Kind::bas_preconditioner: return "bas-preconditioner";
    case Kind::asss_default: return "asss-default";
    case Kind::remark_alpha1: return "alpha1";
    case Kind::remark_alpha2: return "alpha2";
    case Kind::custom: return "custom";
  }
  return "custom";
}

double resolve_alpha(const AlphaPolicy& policy, const SystemBundle& s, AlphaCache* cache) {
  const double nu = s.params.nu;
  const double omega = s.params.omega;
  const double th = s.params.theta();
  AlphaCache local;
  AlphaCache& c = cache ? *cache : local;

  switch (policy.kind) {
    case AlphaPolicy::Kind::estimated:
      return alpha_est(s);
    case AlphaPolicy::Kind::bas_iteration:
      return th;
    case AlphaPolicy::Kind::bas_preconditioner:
      return th / (1.0 + std::sqrt(nu) * omega);
    case AlphaPolicy::Kind::asss_default: {
      if (!c.mass) c.mass = eig_extremes(s.M);
      return std::sqrt(c.mass->min_eig * c.mass->max_eig);
    }
    case AlphaPolicy::Kind::remark_alpha1: {
      if (!c.mass) c.mass = eig_extremes(s.M);
      return th * std::sqrt(c.mass->min_eig * c.mass->max_eig);
    }
    case AlphaPolicy::Kind::remark_alpha2: {
      if (!c.stiffness) c.stiffness = eig_extremes(s.K);
      return std::sqrt(nu * th * c.stiffness->min_eig * c.stiffness->max_eig);
    }
    case AlphaPolicy::Kind::custom:
      if (!(policy.value > 0)) throw ParameterError("custom alpha must be positive");
      return policy.value;
  }
  throw ParameterError("unreachable alpha policy");
}

}  // namespace mbas
