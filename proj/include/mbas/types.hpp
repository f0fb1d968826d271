// Common scalar/vector/matrix aliases, error types, mesh descriptor and
// solver report shared by all modules.

#pragma once

#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Core>
#include <Eigen/SparseCore>

namespace mbas {

using Real = double;
using Complex = std::complex<double>;
using Index = Eigen::Index;

using Vec = Eigen::VectorXd;
using CVec = Eigen::VectorXcd;
using Mat = Eigen::MatrixXd;
using CMat = Eigen::MatrixXcd;

// Row-major sparse storage: outerIndexPtr/innerIndexPtr/valuePtr are the
// CSR row_ptr/col_idx/values arrays.
using SpMat = Eigen::SparseMatrix<Real, Eigen::RowMajor>;
using Triplet = Eigen::Triplet<Real>;

template <class Scalar>
using DenseVec = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

// ---------------------------------------------------------------------------
// Errors

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct DimensionError : Error {
  using Error::Error;
};

struct ParameterError : Error {
  using Error::Error;
};

struct SizeError : Error {
  using Error::Error;
};

struct NotPositiveDefiniteError : Error {
  using Error::Error;
};

// Iterative solve failed to reach its tolerance within the iteration cap.
struct ConvergenceError : Error {
  ConvergenceError(const std::string& what, double residual, int iters)
      : Error(what), last_residual(residual), iterations(iters) {}
  double last_residual;
  int iterations;
};

// Arnoldi breakdown with a residual that is still above tolerance.
struct BreakdownError : Error {
  BreakdownError(const std::string& what, double residual)
      : Error(what), residual(residual) {}
  double residual;
};

struct EigenSolveError : Error {
  using Error::Error;
};

inline void require(bool cond, const char* what) {
  if (!cond) throw DimensionError(what);
}

// ---------------------------------------------------------------------------
// Mesh descriptor

// Uniform square mesh on the unit square with 2^level cells per side and
// homogeneous Dirichlet boundary; only interior nodes carry unknowns.
struct Grid {
  explicit Grid(int k) : level(k) {
    if (k < 1 || k > 20) throw ParameterError("grid level must be in [1, 20]");
  }
  int level;
  int cells_per_side() const { return 1 << level; }
  Real h() const { return Real(1) / cells_per_side(); }  // exact dyadic
  Index interior_per_side() const { return cells_per_side() - 1; }
  Index node_count() const {
    const Index n1 = interior_per_side();
    return n1 * n1;
  }
};

struct ProblemParams {
  ProblemParams(double nu_, double omega_, Grid grid_)
      : nu(nu_), omega(omega_), grid(grid_) {
    if (!(nu > 0)) throw ParameterError("nu must be positive");
    if (!(omega >= 0)) throw ParameterError("omega must be nonnegative");
  }
  double nu;
  double omega;
  Grid grid;
  // Always recomputed so it can never drift from (nu, omega).
  double theta() const { return 1.0 + nu * omega * omega; }
};

// ---------------------------------------------------------------------------
// Solve reporting

struct SolveReport {
  std::string method;
  std::string mode = "stationary";
  double nu = 0;
  double omega = 0;
  std::string alpha_policy = "custom";
  double alpha = 0;
  int iterations = 0;
  bool converged = false;
  double final_residual = 0;
  double elapsed_s = 0;
  // relative residuals; entry 0 is the initial residual of the zero guess
  std::vector<double> residual_history;

  static std::string csv_header() {
    return "method,mode,k,nu,omega,alpha_policy,alpha,iterations,converged,"
           "final_residual,elapsed_s";
  }
  std::string csv_row(int k) const;
  std::string to_json(int k) const;
};

}  // namespace mbas
