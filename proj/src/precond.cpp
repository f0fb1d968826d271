#include "mbas/precond.hpp"

#include <cmath>

namespace mbas {

namespace {

double check_alpha(double alpha) {
  if (!(alpha > 0)) throw ParameterError("preconditioner: alpha must be positive");
  return alpha;
}

}  // namespace

MbasPreconditioner::MbasPreconditioner(const SystemBundle& s, double alpha, Inner inner)
    : nu_(s.params.nu),
      omega_(s.params.omega),
      alpha_(check_alpha(alpha)),
      m_(s.m()),
      mass_shift_(shifted(alpha, s.M, s.params.theta()), inner),
      stiff_shift_(shifted(alpha, s.K, std::sqrt(s.params.nu * s.params.theta())), inner) {}

CVec MbasPreconditioner::apply(const CVec& v) const {
  require(v.size() == 2 * m_, "MbasPreconditioner: dimension mismatch");
  CVec w = v + apply_R(nu_, omega_, v);
  w = solve_blocks2(mass_shift_, w);
  w = apply_R(nu_, omega_, w);
  w = solve_blocks2(stiff_shift_, w);
  return -alpha_ * w;
}

BasPreconditioner::BasPreconditioner(const SystemBundle& s, double alpha, Inner inner)
    : nu_(s.params.nu),
      omega_(s.params.omega),
      alpha_(check_alpha(alpha)),
      m_(s.m()),
      shift_(SpMat(alpha * s.M + std::sqrt(s.params.nu) * s.K), inner) {}

CVec BasPreconditioner::apply(const CVec& v) const {
  require(v.size() == 2 * m_, "BasPreconditioner: dimension mismatch");
  const double th = 1.0 + nu_ * omega_ * omega_;
  const Complex a(th, -omega_ * std::sqrt(nu_));  // theta - i w sqrt(nu)
  const double c0 = (1.0 + alpha_) / (alpha_ * (1.0 + th));
  const double wnorm2 = 1.0 + th * th + omega_ * omega_ * nu_;  // 1 + |a|^2

  const CVec t = solve_blocks2(shift_, v);
  CVec u(2 * m_);
  u.head(m_) = t.head(m_) + a * t.tail(m_);
  u.tail(m_) = std::conj(a) * t.head(m_) - t.tail(m_);
  return u / (c0 * wnorm2);
}

AsssPreconditioner::AsssPreconditioner(const SystemBundle& s, double alpha, Inner inner)
    : nu_(s.params.nu),
      omega_(s.params.omega),
      alpha_(check_alpha(alpha)),
      m_(s.m()),
      mass_shift_(shifted(alpha, s.M, 1.0), inner),
      stiff_shift_(shifted(alpha, s.K, std::sqrt(s.params.nu / s.params.theta())), inner) {}

Vec AsssPreconditioner::apply(const Vec& y) const {
  require(y.size() == 4 * m_, "AsssPreconditioner: dimension mismatch");
  Vec w = y + apply_G(nu_, omega_, y);
  w = solve_blocks4(mass_shift_, w);
  w = apply_G(nu_, omega_, w);
  w = solve_blocks4(stiff_shift_, w);
  return -alpha_ * w;
}

}  // namespace mbas
