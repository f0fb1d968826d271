#include "mbas/system.hpp"

#include <cmath>

#include "mbas/fem.hpp"

namespace mbas {

namespace {

void require_even(const CVec& v, const char* what) { require(v.size() % 2 == 0, what); }

}  // namespace

SystemBundle build_system(const ProblemParams& p) {
  return SystemBundle{assemble_mass(p.grid), assemble_stiffness(p.grid),
                      assemble_target(p.grid), p};
}

CVec apply_A(const SystemBundle& s, const CVec& x) {
  const Index m = s.m();
  require(x.size() == 2 * m, "apply_A: vector must have length 2m");
  const double sn = std::sqrt(s.params.nu);
  const Complex iw(0.0, s.params.omega);

  const CVec My = spmv_complex(s.M, x.head(m));
  const CVec Mq = spmv_complex(s.M, x.tail(m));
  const CVec Ky = spmv_complex(s.K, x.head(m));
  const CVec Kq = spmv_complex(s.K, x.tail(m));

  CVec out(2 * m);
  out.head(m) = My + sn * (Kq - iw * Mq);
  out.tail(m) = sn * (Ky + iw * My) - Mq;
  return out;
}

CVec rhs_b(const SystemBundle& s) {
  const Index m = s.m();
  CVec b = CVec::Zero(2 * m);
  b.head(m).real() = s.M * s.ybar_d;
  return b;
}

CVec apply_R(double nu, double omega, const CVec& v) {
  require_even(v, "apply_R: vector must have even length");
  const Index m = v.size() / 2;
  const double f = 1.0 / std::sqrt(nu * (1.0 + nu * omega * omega));
  const Complex iwn(0.0, omega * nu);
  const double sn = std::sqrt(nu);

  CVec out(2 * m);
  out.head(m) = f * (-iwn * v.head(m) + sn * v.tail(m));
  out.tail(m) = f * (-sn * v.head(m) + iwn * v.tail(m));
  return out;
}

CVec apply_R1H(double nu, double omega, const CVec& v) {
  require_even(v, "apply_R1H: vector must have even length");
  const Index m = v.size() / 2;
  const Complex iws(0.0, omega * std::sqrt(nu));

  CVec out(2 * m);
  out.head(m) = v.head(m) - iws * v.tail(m);
  out.tail(m) = iws * v.head(m) - v.tail(m);
  return out;
}

CVec apply_R2(double nu, const CVec& v) {
  require_even(v, "apply_R2: vector must have even length");
  const Index m = v.size() / 2;
  const double sn = std::sqrt(nu);

  CVec out(2 * m);
  out.head(m) = sn * v.tail(m);
  out.tail(m) = sn * v.head(m);
  return out;
}

CVec apply_Atilde(const SystemBundle& s, const CVec& x) {
  const Index m = s.m();
  require(x.size() == 2 * m, "apply_Atilde: vector must have length 2m");
  const double nu = s.params.nu;
  const double omega = s.params.omega;
  const double th = s.params.theta();

  CVec h1(2 * m), h2(2 * m);
  h1.head(m) = spmv_complex(s.M, x.head(m));
  h1.tail(m) = spmv_complex(s.M, x.tail(m));
  h2.head(m) = spmv_complex(s.K, x.head(m));
  h2.tail(m) = spmv_complex(s.K, x.tail(m));

  return th * h1 + std::sqrt(nu * th) * apply_R(nu, omega, h2);
}

CVec rhs_btilde(const SystemBundle& s) {
  return apply_R1H(s.params.nu, s.params.omega, rhs_b(s));
}

Vec to_real(const CVec& x) {
  require(x.size() % 2 == 0, "to_real: vector must have even length");
  const Index m = x.size() / 2;
  Vec y(4 * m);
  y.segment(0, m) = x.head(m).real();
  y.segment(m, m) = x.head(m).imag();
  y.segment(2 * m, m) = x.tail(m).real();
  y.segment(3 * m, m) = x.tail(m).imag();
  return y;
}

CVec from_real(const Vec& y) {
  require(y.size() % 4 == 0, "from_real: vector must have length 4m");
  const Index m = y.size() / 4;
  CVec x(2 * m);
  x.head(m).real() = y.segment(0, m);
  x.head(m).imag() = y.segment(m, m);
  x.tail(m).real() = y.segment(2 * m, m);
  x.tail(m).imag() = y.segment(3 * m, m);
  return x;
}

Vec apply_Areal(const SystemBundle& s, const Vec& y) {
  const Index m = s.m();
  require(y.size() == 4 * m, "apply_Areal: vector must have length 4m");
  const double sn = std::sqrt(s.params.nu);
  const double ws = s.params.omega * sn;

  const auto a = y.segment(0, m), b = y.segment(m, m);
  const auto c = y.segment(2 * m, m), d = y.segment(3 * m, m);
  const Vec Ma = s.M * a, Mb = s.M * b, Mc = s.M * c, Md = s.M * d;
  const Vec Ka = s.K * a, Kb = s.K * b, Kc = s.K * c, Kd = s.K * d;

  Vec out(4 * m);
  out.segment(0, m) = Ma + sn * Kc + ws * Md;
  out.segment(m, m) = Mb - ws * Mc + sn * Kd;
  out.segment(2 * m, m) = sn * Ka - ws * Mb - Mc;
  out.segment(3 * m, m) = ws * Ma + sn * Kb - Md;
  return out;
}

Vec rhs_c(const SystemBundle& s) {
  const Index m = s.m();
  Vec c = Vec::Zero(4 * m);
  c.head(m) = s.M * s.ybar_d;
  return c;
}

Vec apply_G(double nu, double omega, const Vec& y) {
  require(y.size() % 4 == 0, "apply_G: vector must have length 4m");
  const Index m = y.size() / 4;
  const double f = 1.0 / std::sqrt(nu * (1.0 + nu * omega * omega));
  const double wn = omega * nu;
  const double sn = std::sqrt(nu);

  const auto a = y.segment(0, m), b = y.segment(m, m);
  const auto c = y.segment(2 * m, m), d = y.segment(3 * m, m);

  Vec out(4 * m);
  out.segment(0, m) = f * (wn * b + sn * c);
  out.segment(m, m) = f * (-wn * a + sn * d);
  out.segment(2 * m, m) = f * (-sn * a - wn * d);
  out.segment(3 * m, m) = f * (-sn * b + wn * c);
  return out;
}

Vec apply_Areal_split(const SystemBundle& s, const Vec& y) {
  const Index m = s.m();
  require(y.size() == 4 * m, "apply_Areal_split: vector must have length 4m");
  const double nu = s.params.nu;
  const double omega = s.params.omega;
  const double ck = std::sqrt(nu / s.params.theta());

  Vec my(4 * m), ky(4 * m);
  for (int blk = 0; blk < 4; ++blk) {
    my.segment(blk * m, m) = s.M * y.segment(blk * m, m);
    ky.segment(blk * m, m) = ck * (s.K * y.segment(blk * m, m));
  }
  return my + apply_G(nu, omega, ky);
}

Vec rhs_c_split(const SystemBundle& s) {
  const Index m = s.m();
  const double th = s.params.theta();
  const double ws = s.params.omega * std::sqrt(s.params.nu);

  const Vec v = s.M * s.ybar_d;
  Vec c = Vec::Zero(4 * m);
  c.head(m) = v / th;
  c.tail(m) = (ws / th) * v;
  return c;
}

CVec recover_control(const CVec& q, double nu) {
  if (!(nu > 0)) throw ParameterError("recover_control: nu must be positive");
  return q / std::sqrt(nu);
}

}  // namespace mbas
