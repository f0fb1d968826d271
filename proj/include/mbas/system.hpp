// The three algebraic forms of the control system, applied matrix-free:
//
//   complex 2m form   A x = b,       A = [[M, sqrt(nu)(K - i w M)],
//                                         [sqrt(nu)(K + i w M), -M]],
//                                    b = (M y_d; 0)
//   transformed form  At x = bt,     At = theta*H1 + sqrt(nu*theta)*R*H2,
//                                    bt = R1^H b   (R1^H R1 = theta*I)
//   real 4m form      Ar y = c,      y = (Re y; Im y; Re q; Im q),
//                                    c = (M y_d; 0; 0; 0)
//
// Everything is composed from M-products, K-products and scalar 2x2/4x4
// block combinations; none of A, At, Ar is ever formed here.
//
// Sign convention of the real form (verified against the complex form by the
// dense cross-check at k=2): row blocks are
//   [ M       0       sK      wsM ]        s = sqrt(nu), w = omega
//   [ 0       M      -wsM     sK  ]
//   [ sK     -wsM    -M       0   ]
//   [ wsM     sK      0      -M   ]

#pragma once

#include "mbas/sparse.hpp"
#include "mbas/types.hpp"

namespace mbas {

struct SystemBundle {
  SpMat M;
  SpMat K;
  Vec ybar_d;
  ProblemParams params;

  Index m() const { return M.rows(); }
};

// Assembles M, K, y_d for the given parameters.
SystemBundle build_system(const ProblemParams& p);

// ---- complex 2m form -------------------------------------------------------

CVec apply_A(const SystemBundle& s, const CVec& x);
CVec rhs_b(const SystemBundle& s);

// R  = (1/sqrt(nu*theta)) [[-i w nu I, sqrt(nu) I], [-sqrt(nu) I, i w nu I]]
// (skew-Hermitian, unitary, R^2 = -I)
CVec apply_R(double nu, double omega, const CVec& v);

// R1^H = [[I, -i w sqrt(nu) I], [i w sqrt(nu) I, -I]]  (R1 is Hermitian)
CVec apply_R1H(double nu, double omega, const CVec& v);

// R2 = [[0, sqrt(nu) I], [sqrt(nu) I, 0]]
CVec apply_R2(double nu, const CVec& v);

// ---- transformed form ------------------------------------------------------

CVec apply_Atilde(const SystemBundle& s, const CVec& x);
CVec rhs_btilde(const SystemBundle& s);

// ---- real 4m form ----------------------------------------------------------

Vec to_real(const CVec& x);
CVec from_real(const Vec& y);

Vec apply_Areal(const SystemBundle& s, const Vec& y);
Vec rhs_c(const SystemBundle& s);

// G = (1/sqrt(nu*theta)) * [[0, wn, s, 0], [-wn, 0, 0, s],
//                           [-s, 0, 0, -wn], [0, -s, wn, 0]] (x I_m)
// with wn = omega*nu, s = sqrt(nu); skew-symmetric, orthogonal, G^2 = -I.
Vec apply_G(double nu, double omega, const Vec& y);

// The alternating splitting for the real form targets the scaled-orthogonal
// transform of Ar:
//   As y = bldiag4(M) y + G * (sqrt(nu/theta) bldiag4(K) y),  As = (1/theta) G1 Ar
// where G1 is the matrix of the M-coefficients of Ar (G1^T G1 = theta I).
// Its right-hand side (1/theta) G1 c keeps the solution equal to Ar y = c.
Vec apply_Areal_split(const SystemBundle& s, const Vec& y);
Vec rhs_c_split(const SystemBundle& s);

// ---- control recovery ------------------------------------------------------

// u = q / sqrt(nu)
CVec recover_control(const CVec& q, double nu);

}  // namespace mbas
