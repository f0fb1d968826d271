#include "mbas/sparse.hpp"

#include <cmath>

namespace mbas {

Vec spmv(const SpMat& A, const Vec& x) {
  require(A.cols() == x.size(), "spmv: dimension mismatch");
  return A * x;
}

CVec spmv_complex(const SpMat& A, const CVec& x) {
  require(A.cols() == x.size(), "spmv_complex: dimension mismatch");
  CVec y(A.rows());
  y.real() = A * x.real();
  y.imag() = A * x.imag();
  return y;
}

double frob_norm(const SpMat& A) { return A.norm(); }

bool is_symmetric(const SpMat& A) {
  if (A.rows() != A.cols()) return false;
  SpMat At = SpMat(A.transpose());
  if (At.nonZeros() != A.nonZeros()) return false;
  for (Index i = 0; i < A.outerSize(); ++i) {
    SpMat::InnerIterator a(A, i), b(At, i);
    for (; a && b; ++a, ++b) {
      if (a.col() != b.col() || a.value() != b.value()) return false;
    }
    if (a || b) return false;
  }
  return true;
}

CgResult cg_solve(const SpMat& A, const Vec& b, double tol, int maxit) {
  require(A.rows() == A.cols() && A.cols() == b.size(), "cg_solve: dimension mismatch");
  if (!(tol > 0)) throw ParameterError("cg_solve: tol must be positive");
  if (maxit < 1) throw ParameterError("cg_solve: maxit must be >= 1");

  const double bnorm = b.norm();
  if (bnorm == 0.0) return {Vec::Zero(b.size()), 0};

  Vec x = Vec::Zero(b.size());
  Vec r = b;
  Vec p = r;
  double rr = r.squaredNorm();
  const double stop = tol * bnorm;

  for (int it = 1; it <= maxit; ++it) {
    Vec Ap = A * p;
    const double pAp = p.dot(Ap);
    if (!(pAp > 0)) throw NotPositiveDefiniteError("cg_solve: matrix is not positive definite");
    const double alpha = rr / pAp;
    x += alpha * p;
    r -= alpha * Ap;
    const double rr_new = r.squaredNorm();
    if (std::sqrt(rr_new) <= stop) return {std::move(x), it};
    p = r + (rr_new / rr) * p;
    rr = rr_new;
  }
  throw ConvergenceError("cg_solve: no convergence within maxit", std::sqrt(rr) / bnorm, maxit);
}

SpdFactor::SpdFactor(const SpMat& A) : n_(A.rows()) {
  require(A.rows() == A.cols(), "SpdFactor: matrix must be square");
  Eigen::SparseMatrix<Real> Acm(A);  // column-major copy for the solver
  llt_.compute(Acm);
  if (llt_.info() != Eigen::Success)
    throw NotPositiveDefiniteError("SpdFactor: matrix is not positive definite");
}

Vec SpdFactor::solve(const Vec& b) const {
  require(b.size() == n_, "SpdFactor::solve: dimension mismatch");
  return llt_.solve(b);
}

Mat SpdFactor::solve(const Mat& B) const {
  require(B.rows() == n_, "SpdFactor::solve: dimension mismatch");
  return llt_.solve(B);
}

CVec SpdFactor::solve(const CVec& b) const {
  require(b.size() == n_, "SpdFactor::solve: dimension mismatch");
  Mat rhs(n_, 2);
  rhs.col(0) = b.real();
  rhs.col(1) = b.imag();
  Mat sol = llt_.solve(rhs);
  CVec x(n_);
  x.real() = sol.col(0);
  x.imag() = sol.col(1);
  return x;
}

Inner Inner::parse(const std::string& text) {
  if (text == "direct") return {Kind::direct, 1e-12};
  if (text.rfind("cg:", 0) == 0) {
    const double tol = std::stod(text.substr(3));
    if (!(tol > 0)) throw ParameterError("inner cg tolerance must be positive");
    return {Kind::cg, tol};
  }
  if (text == "cg") return {Kind::cg, 1e-12};
  throw ParameterError("unknown inner solver '" + text + "' (expected direct or cg:<tol>)");
}

std::string Inner::name() const {
  if (kind == Kind::direct) return "direct";
  return "cg:" + std::to_string(cg_tol);
}

InnerSolver::InnerSolver(SpMat S, Inner inner) : S_(std::move(S)), inner_(inner) {
  require(S_.rows() == S_.cols(), "InnerSolver: matrix must be square");
  if (inner_.kind == Inner::Kind::direct) factor_.emplace(S_);
}

Vec InnerSolver::solve(const Vec& b) const {
  if (factor_) return factor_->solve(b);
  const int cap = static_cast<int>(10 * S_.rows()) + 100;
  return cg_solve(S_, b, inner_.cg_tol, cap).x;
}

Mat InnerSolver::solve(const Mat& B) const {
  if (factor_) return factor_->solve(B);
  Mat X(B.rows(), B.cols());
  for (Index j = 0; j < B.cols(); ++j) X.col(j) = solve(Vec(B.col(j)));
  return X;
}

SpMat shifted(double alpha, const SpMat& A, double scale) {
  require(A.rows() == A.cols(), "shifted: matrix must be square");
  SpMat I(A.rows(), A.cols());
  I.setIdentity();
  return SpMat(alpha * I + scale * A);
}

CVec solve_blocks2(const InnerSolver& S, const CVec& rhs) {
  const Index m = S.rows();
  require(rhs.size() == 2 * m, "solve_blocks2: dimension mismatch");
  Mat packed(m, 4);
  packed.col(0) = rhs.head(m).real();
  packed.col(1) = rhs.head(m).imag();
  packed.col(2) = rhs.tail(m).real();
  packed.col(3) = rhs.tail(m).imag();
  Mat sol = S.solve(packed);
  CVec z(2 * m);
  z.head(m).real() = sol.col(0);
  z.head(m).imag() = sol.col(1);
  z.tail(m).real() = sol.col(2);
  z.tail(m).imag() = sol.col(3);
  return z;
}

Vec solve_blocks4(const InnerSolver& S, const Vec& rhs) {
  const Index m = S.rows();
  require(rhs.size() == 4 * m, "solve_blocks4: dimension mismatch");
  Mat packed(m, 4);
  for (int b = 0; b < 4; ++b) packed.col(b) = rhs.segment(b * m, m);
  Mat sol = S.solve(packed);
  Vec z(4 * m);
  for (int b = 0; b < 4; ++b) z.segment(b * m, m) = sol.col(b);
  return z;
}

}  // namespace mbas
