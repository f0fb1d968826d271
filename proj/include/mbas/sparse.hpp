// Sparse kernels: matrix-vector products, conjugate gradients, and a direct
// SPD solver (sparse Cholesky with AMD fill-reducing ordering).

#pragma once

#include <optional>
#include <string>
#include <utility>

#include <Eigen/SparseCholesky>

#include "mbas/types.hpp"

namespace mbas {

// y = A x
Vec spmv(const SpMat& A, const Vec& x);

// Real operator applied blockwise to the real and imaginary parts.
CVec spmv_complex(const SpMat& A, const CVec& x);

// sqrt(sum of squared entries)
double frob_norm(const SpMat& A);

// (i,j) present iff (j,i) present with equal value (exact comparison).
bool is_symmetric(const SpMat& A);

struct CgResult {
  Vec x;
  int iterations;
};

// Unpreconditioned CG on an SPD system, stopping at ||b - Ax|| <= tol ||b||.
// A zero right-hand side returns the zero vector in 0 iterations.
// Throws ConvergenceError when maxit is exceeded.
CgResult cg_solve(const SpMat& A, const Vec& b, double tol, int maxit);

// Sparse Cholesky factorization with approximate-minimum-degree ordering.
// Immutable after construction; safe for concurrent solves.
class SpdFactor {
 public:
  explicit SpdFactor(const SpMat& A);

  Vec solve(const Vec& b) const;
  Mat solve(const Mat& B) const;  // one solve per column
  CVec solve(const CVec& b) const;

  Index rows() const { return n_; }

 private:
  Eigen::SimplicialLLT<Eigen::SparseMatrix<Real>> llt_;
  Index n_;
};

// Inner-solver policy for the half-step systems of the stationary methods
// and preconditioner applications.
struct Inner {
  enum class Kind { direct, cg };
  Kind kind = Kind::direct;
  double cg_tol = 1e-12;

  static Inner parse(const std::string& text);  // "direct" or "cg:<tol>"
  std::string name() const;
};

// Solves a fixed SPD system repeatedly, either through a cached factorization
// or through CG at the configured tolerance.
class InnerSolver {
 public:
  InnerSolver(SpMat S, Inner inner);

  Vec solve(const Vec& b) const;
  Mat solve(const Mat& B) const;
  Index rows() const { return S_.rows(); }

 private:
  SpMat S_;
  Inner inner_;
  std::optional<SpdFactor> factor_;
};

// alpha * I + scale * A
SpMat shifted(double alpha, const SpMat& A, double scale);

// Solves bldiag(S, S) z = rhs for a complex 2m right-hand side as four real
// solves sharing one factorization.
CVec solve_blocks2(const InnerSolver& S, const CVec& rhs);

// Solves bldiag(S, S, S, S) z = rhs for a real 4m right-hand side.
Vec solve_blocks4(const InnerSolver& S, const Vec& rhs);

}  // namespace mbas
