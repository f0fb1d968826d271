// Left preconditioner applications for the three splitting methods, each
// owning the factorizations of its half-step matrices.

#pragma once

#include "mbas/sparse.hpp"
#include "mbas/system.hpp"
#include "mbas/types.hpp"

namespace mbas {

// B_alpha^{-1} = -alpha (aI + sqrt(nu theta) H2)^{-1} R (aI + theta H1)^{-1} (I + R)
// applied right to left; four real SPD solves per call over two factors.
class MbasPreconditioner {
 public:
  MbasPreconditioner(const SystemBundle& s, double alpha, Inner inner = {});
  CVec apply(const CVec& v) const;
  Index dim() const { return 2 * m_; }

 private:
  double nu_, omega_, alpha_;
  Index m_;
  InnerSolver mass_shift_;   // alpha I + theta M
  InnerSolver stiff_shift_;  // alpha I + sqrt(nu theta) K
};

// P_BAS = c0 * W * D with c0 = (1+a)/(a(1+theta)),
//   W = [[I, (theta - i w sqrt(nu)) I], [(theta + i w sqrt(nu)) I, -I]],
//   D = bldiag(a M + sqrt(nu) K, a M + sqrt(nu) K);
// W and D commute, and W^{-1} = W / (1 + theta^2 + w^2 nu).
class BasPreconditioner {
 public:
  BasPreconditioner(const SystemBundle& s, double alpha, Inner inner = {});
  CVec apply(const CVec& v) const;
  Index dim() const { return 2 * m_; }

 private:
  double nu_, omega_, alpha_;
  Index m_;
  InnerSolver shift_;  // alpha M + sqrt(nu) K
};

// P_alpha^{-1} = -alpha (aI + Ks)^{-1} G (aI + Ms)^{-1} (I + G); eight real
// SPD solves per call over two factors.
class AsssPreconditioner {
 public:
  AsssPreconditioner(const SystemBundle& s, double alpha, Inner inner = {});
  Vec apply(const Vec& y) const;
  Index dim() const { return 4 * m_; }

 private:
  double nu_, omega_, alpha_;
  Index m_;
  InnerSolver mass_shift_;   // alpha I + M
  InnerSolver stiff_shift_;  // alpha I + sqrt(nu/theta) K
};

}  // namespace mbas
