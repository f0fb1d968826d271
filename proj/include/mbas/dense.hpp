// Small-scale dense constructions used to verify the matrix-free operators
// and the splitting algebra. Capped at m <= 225 (grid level <= 4).

#pragma once

#include "mbas/system.hpp"
#include "mbas/types.hpp"

namespace mbas {
namespace dense {

Mat to_dense(const SpMat& A);

CMat dense_A(const Mat& M, const Mat& K, double nu, double omega);
CMat dense_Atilde(const Mat& M, const Mat& K, double nu, double omega);
Mat dense_Areal(const Mat& M, const Mat& K, double nu, double omega);

CMat dense_R(double nu, double omega, Index m);
CMat dense_R1(double nu, double omega, Index m);
CMat dense_R2(double nu, Index m);
Mat dense_G(double nu, double omega, Index m);

struct DenseSplitting {
  CMat B;       // splitting matrix B_alpha
  CMat C;       // splitting matrix C_alpha
  CMat Atilde;  // B - C
};

// B_alpha = (1/a) (I+R)^{-1} (aI + theta H1) R (aI + sqrt(nu theta) H2)
// C_alpha = (1/a) (I+R)^{-1} (aR - theta H1) (aI - sqrt(nu theta) R H2)
DenseSplitting build_splitting_dense(const Mat& M, const Mat& K, double nu,
                                     double omega, double alpha);
DenseSplitting build_splitting_dense(const SystemBundle& s, double alpha);

// Largest eigenvalue modulus; throws EigenSolveError if the dense
// eigensolver fails, SizeError above order 450.
double spectral_radius(const CMat& T);
double spectral_radius(const Mat& T);

}  // namespace dense
}  // namespace mbas
