#include "mbas/splitting.hpp"

#include <chrono>
#include <cmath>

namespace mbas {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

void validate(const IterConfig& cfg) {
  if (!(cfg.alpha > 0)) throw ParameterError("iteration: alpha must be positive");
  if (!(cfg.tol > 0)) throw ParameterError("iteration: tol must be positive");
  if (cfg.maxit < 1) throw ParameterError("iteration: maxit must be >= 1");
}

SolveReport make_report(const char* method, const SystemBundle& s, const IterConfig& cfg) {
  SolveReport r;
  r.method = method;
  r.mode = "stationary";
  r.nu = s.params.nu;
  r.omega = s.params.omega;
  r.alpha = cfg.alpha;
  return r;
}

}  // namespace

std::pair<CVec, SolveReport> mbas_solve(const SystemBundle& s, const IterConfig& cfg,
                                        const CVec* x0) {
  validate(cfg);
  const Index m = s.m();
  const double nu = s.params.nu;
  const double w = s.params.omega;
  const double th = s.params.theta();
  const double snt = std::sqrt(nu * th);
  const double a = cfg.alpha;

  SolveReport report = make_report("mbas", s, cfg);
  const auto t0 = Clock::now();

  const InnerSolver S1(shifted(a, s.M, th), cfg.inner);   // aI + theta M
  const InnerSolver S2(shifted(a, s.K, snt), cfg.inner);  // aI + sqrt(nu theta) K

  const CVec bt = rhs_btilde(s);
  const double bnorm = bt.norm();
  CVec x = x0 ? *x0 : CVec::Zero(2 * m);
  require(x.size() == 2 * m, "mbas_solve: initial guess must have length 2m");
  if (bnorm == 0.0) {
    report.converged = true;
    report.residual_history = {0.0};
    report.elapsed_s = seconds_since(t0);
    return {std::move(x), std::move(report)};
  }
  const CVec Rbt = apply_R(nu, w, bt);
  report.residual_history = {x0 ? (bt - apply_Atilde(s, x)).norm() / bnorm : 1.0};

  for (int it = 1; it <= cfg.maxit; ++it) {
    CVec h2x(2 * m);
    h2x.head(m) = spmv_complex(s.K, x.head(m));
    h2x.tail(m) = spmv_complex(s.K, x.tail(m));
    const CVec xh = solve_blocks2(S1, CVec(a * x - snt * apply_R(nu, w, h2x) + bt));

    CVec h1x(2 * m);
    h1x.head(m) = spmv_complex(s.M, xh.head(m));
    h1x.tail(m) = spmv_complex(s.M, xh.tail(m));
    x = solve_blocks2(S2, CVec(a * xh + th * apply_R(nu, w, h1x) - Rbt));

    const double rel = (bt - apply_Atilde(s, x)).norm() / bnorm;
    report.residual_history.push_back(rel);
    report.iterations = it;
    report.final_residual = rel;
    if (rel <= cfg.tol) {
      report.converged = true;
      break;
    }
  }
  report.elapsed_s = seconds_since(t0);
  return {std::move(x), std::move(report)};
}

std::pair<CVec, SolveReport> bas_solve(const SystemBundle& s, const IterConfig& cfg,
                                       const CVec* x0) {
  validate(cfg);
  const Index m = s.m();
  const double nu = s.params.nu;
  const double w = s.params.omega;
  const double th = s.params.theta();
  const double sn = std::sqrt(nu);
  const double a = cfg.alpha;
  const Complex iwn(0.0, w * nu);
  const Complex iws(0.0, w * sn);

  SolveReport report = make_report("bas", s, cfg);
  const auto t0 = Clock::now();

  const InnerSolver SM(s.M, cfg.inner);                  // (1+a) H1 modulo scaling
  const InnerSolver SG(SpMat(a * s.M + sn * s.K), cfg.inner);

  const CVec b = rhs_b(s);
  const double bnorm = b.norm();
  CVec x = x0 ? *x0 : CVec::Zero(2 * m);
  require(x.size() == 2 * m, "bas_solve: initial guess must have length 2m");
  if (bnorm == 0.0) {
    report.converged = true;
    report.residual_history = {0.0};
    report.elapsed_s = seconds_since(t0);
    return {std::move(x), std::move(report)};
  }

  // P1 b = (1/theta) R1 b, P2 b = swapped blocks of b
  CVec P1b(2 * m), P2b(2 * m);
  P1b.head(m) = (b.head(m) - iws * b.tail(m)) / th;
  P1b.tail(m) = (iws * b.head(m) - b.tail(m)) / th;
  P2b.head(m) = b.tail(m);
  P2b.tail(m) = b.head(m);

  report.residual_history = {x0 ? (b - apply_A(s, x)).norm() / bnorm : 1.0};

  for (int it = 1; it <= cfg.maxit; ++it) {
    // half-step 1: (1+a) H1 x+ = (a H1 - S1) x + P1 b
    const CVec Ky = spmv_complex(s.K, x.head(m));
    const CVec Kq = spmv_complex(s.K, x.tail(m));
    CVec rhs1(2 * m);
    rhs1.head(m) = a * spmv_complex(s.M, x.head(m)) - (-iwn * Ky + sn * Kq) / th + P1b.head(m);
    rhs1.tail(m) = a * spmv_complex(s.M, x.tail(m)) - (-sn * Ky + iwn * Kq) / th + P1b.tail(m);
    const CVec xh = solve_blocks2(SM, rhs1) / (1.0 + a);

    // half-step 2: (a H1 + sqrt(nu) H2) x' = (a H1 - S2) x+ + P2 b
    const CVec My = spmv_complex(s.M, xh.head(m));
    const CVec Mq = spmv_complex(s.M, xh.tail(m));
    CVec rhs2(2 * m);
    rhs2.head(m) = a * My - (iws * My - Mq) + P2b.head(m);
    rhs2.tail(m) = a * Mq - (My - iws * Mq) + P2b.tail(m);
    x = solve_blocks2(SG, rhs2);

    const double rel = (b - apply_A(s, x)).norm() / bnorm;
    report.residual_history.push_back(rel);
    report.iterations = it;
    report.final_residual = rel;
    if (rel <= cfg.tol) {
      report.converged = true;
      break;
    }
  }
  report.elapsed_s = seconds_since(t0);
  return {std::move(x), std::move(report)};
}

std::pair<Vec, SolveReport> asss_solve(const SystemBundle& s, const IterConfig& cfg,
                                       const Vec* y0) {
  validate(cfg);
  const Index m = s.m();
  const double nu = s.params.nu;
  const double w = s.params.omega;
  const double ck = std::sqrt(nu / s.params.theta());
  const double a = cfg.alpha;

  SolveReport report = make_report("asss", s, cfg);
  const auto t0 = Clock::now();

  const InnerSolver SM(shifted(a, s.M, 1.0), cfg.inner);  // aI + M
  const InnerSolver SK(shifted(a, s.K, ck), cfg.inner);   // aI + sqrt(nu/theta) K

  const Vec c = rhs_c(s);
  const double cnorm = c.norm();
  Vec y = y0 ? *y0 : Vec::Zero(4 * m);
  require(y.size() == 4 * m, "asss_solve: initial guess must have length 4m");
  if (cnorm == 0.0) {
    report.converged = true;
    report.residual_history = {0.0};
    report.elapsed_s = seconds_since(t0);
    return {std::move(y), std::move(report)};
  }

  const Vec cs = rhs_c_split(s);
  const Vec Gcs = apply_G(nu, w, cs);
  report.residual_history = {y0 ? (c - apply_Areal(s, y)).norm() / cnorm : 1.0};

  for (int it = 1; it <= cfg.maxit; ++it) {
    Vec ky(4 * m);
    for (int blk = 0; blk < 4; ++blk)
      ky.segment(blk * m, m) = ck * (s.K * y.segment(blk * m, m));
    const Vec yh = solve_blocks4(SM, Vec(a * y - apply_G(nu, w, ky) + cs));

    Vec my(4 * m);
    for (int blk = 0; blk < 4; ++blk)
      my.segment(blk * m, m) = s.M * yh.segment(blk * m, m);
    y = solve_blocks4(SK, Vec(a * yh + apply_G(nu, w, my) - Gcs));

    const double rel = (c - apply_Areal(s, y)).norm() / cnorm;
    report.residual_history.push_back(rel);
    report.iterations = it;
    report.final_residual = rel;
    if (rel <= cfg.tol) {
      report.converged = true;
      break;
    }
  }
  report.elapsed_s = seconds_since(t0);
  return {std::move(y), std::move(report)};
}

}  // namespace mbas
