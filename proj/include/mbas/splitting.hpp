// The three two-half-step stationary iterations. All inner systems are real
// SPD; complex right-hand sides are solved as (Re, Im) pairs against one
// cached factorization per half-step matrix.
//
//   MBAS on  At x = bt:   (aI + theta H1) x+ = (aI - sqrt(nt) R H2) x + bt
//                         (aI + sqrt(nt) H2) x' = (aI + theta R H1) x+ - R bt
//   BAS  on  A x = b, V = H1:
//                         (1+a) H1 x+ = (a H1 - S1) x + P1 b
//                         (a H1 + sqrt(nu) H2) x' = (a H1 - S2) x+ + P2 b
//   ASSS on the real split form (see system.hpp):
//                         (aI + Ms) y+ = (aI - G Ks) y + cs
//                         (aI + Ks) y' = (aI + G Ms) y+ - G cs
//
// The residual is recomputed from scratch every outer iteration on the form
// each method natively iterates (At, A, Ar respectively); the transforms are
// scaled-unitary, so these relative residuals agree across forms.

#pragma once

#include <utility>

#include "mbas/sparse.hpp"
#include "mbas/system.hpp"
#include "mbas/types.hpp"

namespace mbas {

struct IterConfig {
  double alpha = 1.0;
  double tol = 1e-6;
  int maxit = 500;
  Inner inner;
};

// Each returns the final iterate and a report; a run that exhausts maxit
// comes back with converged = false rather than throwing. The initial guess
// defaults to the zero vector.
std::pair<CVec, SolveReport> mbas_solve(const SystemBundle& s, const IterConfig& cfg,
                                        const CVec* x0 = nullptr);
std::pair<CVec, SolveReport> bas_solve(const SystemBundle& s, const IterConfig& cfg,
                                       const CVec* x0 = nullptr);
std::pair<Vec, SolveReport> asss_solve(const SystemBundle& s, const IterConfig& cfg,
                                       const Vec* y0 = nullptr);

}  // namespace mbas
