#include "mbas/driver.hpp"

#include <cstdio>
#include <sstream>

#include <json.hpp>

#include "mbas/fem.hpp"
#include "mbas/krylov.hpp"
#include "mbas/precond.hpp"

namespace mbas {

namespace {

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), f, v);
  return buf;
}

}  // namespace

std::string SolveReport::csv_row(int k) const {
  std::ostringstream ss;
  ss << method << ',' << mode << ',' << k << ',' << fmt("%.17g", nu) << ','
     << fmt("%.17g", omega) << ',' << alpha_policy << ',' << fmt("%.17g", alpha)
     << ',' << iterations << ',' << (converged ? "true" : "false") << ','
     << fmt("%.17g", final_residual) << ',' << fmt("%.6f", elapsed_s);
  return ss.str();
}

std::string SolveReport::to_json(int k) const {
  nlohmann::json j{{"method", method},
                   {"mode", mode},
                   {"k", k},
                   {"nu", nu},
                   {"omega", omega},
                   {"alpha_policy", alpha_policy},
                   {"alpha", alpha},
                   {"iterations", iterations},
                   {"converged", converged},
                   {"final_residual", final_residual},
                   {"elapsed_s", elapsed_s},
                   {"residual_history", residual_history}};
  return j.dump();
}

void validate_spec(const RunSpec& spec) {
  if (spec.k < 1 || spec.k > 20) throw ParameterError("k must be in [1, 20]");
  if (spec.nus.empty()) throw ParameterError("nu list must not be empty");
  if (spec.omegas.empty()) throw ParameterError("omega list must not be empty");
  for (double nu : spec.nus)
    if (!(nu > 0)) throw ParameterError("nu values must be positive");
  for (double w : spec.omegas)
    if (!(w >= 0)) throw ParameterError("omega values must be nonnegative");
  if (spec.method != "mbas" && spec.method != "bas" && spec.method != "asss")
    throw ParameterError("method must be one of mbas, bas, asss");
  if (spec.mode != "stationary" && spec.mode != "gmres")
    throw ParameterError("mode must be stationary or gmres");
  if (spec.cell != "iterations" && spec.cell != "alpha")
    throw ParameterError("cell must be iterations or alpha");
  if (spec.format != "markdown" && spec.format != "csv")
    throw ParameterError("format must be markdown or csv");
  if (!(spec.tol > 0)) throw ParameterError("tol must be positive");
  if (spec.maxit < 1) throw ParameterError("maxit must be >= 1");
}

CellResult run_cell(const SystemBundle& s, const std::string& method,
                    const std::string& mode, const AlphaPolicy& policy,
                    Inner inner, double tol, int maxit, AlphaCache* cache) {
  const double alpha = resolve_alpha(policy, s, cache);
  CellResult out;

  if (mode == "stationary") {
    IterConfig cfg{alpha, tol, maxit, inner};
    if (method == "mbas") {
      auto [x, rep] = mbas_solve(s, cfg);
      out.report = std::move(rep);
      const CVec b = rhs_b(s);
      out.system_residual = (b - apply_A(s, x)).norm() / b.norm();
    } else if (method == "bas") {
      auto [x, rep] = bas_solve(s, cfg);
      out.report = std::move(rep);
      const CVec b = rhs_b(s);
      out.system_residual = (b - apply_A(s, x)).norm() / b.norm();
    } else if (method == "asss") {
      auto [y, rep] = asss_solve(s, cfg);
      out.report = std::move(rep);
      const Vec c = rhs_c(s);
      out.system_residual = (c - apply_Areal(s, y)).norm() / c.norm();
    } else {
      throw ParameterError("unknown method '" + method + "'");
    }
  } else if (mode == "gmres") {
    GmresConfig cfg{tol, maxit};
    const Index m = s.m();
    if (method == "mbas") {
      const MbasPreconditioner P(s, alpha, inner);
      const LinearOp<Complex> A{2 * m, [&s](const CVec& v) { return apply_Atilde(s, v); }};
      const LinearOp<Complex> Pi{2 * m, [&P](const CVec& v) { return P.apply(v); }};
      auto [x, rep] = gmres_full(A, &Pi, rhs_btilde(s), cfg);
      out.report = std::move(rep);
      const CVec b = rhs_b(s);
      out.system_residual = (b - apply_A(s, x)).norm() / b.norm();
    } else if (method == "bas") {
      const BasPreconditioner P(s, alpha, inner);
      const LinearOp<Complex> A{2 * m, [&s](const CVec& v) { return apply_A(s, v); }};
      const LinearOp<Complex> Pi{2 * m, [&P](const CVec& v) { return P.apply(v); }};
      auto [x, rep] = gmres_full(A, &Pi, rhs_b(s), cfg);
      out.report = std::move(rep);
      const CVec b = rhs_b(s);
      out.system_residual = (b - apply_A(s, x)).norm() / b.norm();
    } else if (method == "asss") {
      const AsssPreconditioner P(s, alpha, inner);
      const LinearOp<double> A{4 * m, [&s](const Vec& v) { return apply_Areal_split(s, v); }};
      const LinearOp<double> Pi{4 * m, [&P](const Vec& v) { return P.apply(v); }};
      auto [y, rep] = gmres_full(A, &Pi, rhs_c_split(s), cfg);
      out.report = std::move(rep);
      const Vec c = rhs_c(s);
      out.system_residual = (c - apply_Areal(s, y)).norm() / c.norm();
    } else {
      throw ParameterError("unknown method '" + method + "'");
    }
    out.report.mode = "gmres";
  } else {
    throw ParameterError("unknown mode '" + mode + "'");
  }

  out.report.method = method;
  out.report.nu = s.params.nu;
  out.report.omega = s.params.omega;
  out.report.alpha_policy = policy.name();
  out.report.alpha = alpha;
  return out;
}

SweepResult run_sweep(const RunSpec& spec) {
  validate_spec(spec);
  const Grid grid(spec.k);
  const SpMat M = assemble_mass(grid);
  const SpMat K = assemble_stiffness(grid);
  const Vec yd = assemble_target(grid);

  AlphaCache cache;
  SweepResult result;
  result.cells.reserve(spec.nus.size());
  for (double nu : spec.nus) {
    std::vector<CellResult> row;
    row.reserve(spec.omegas.size());
    for (double omega : spec.omegas) {
      SystemBundle s{M, K, yd, ProblemParams(nu, omega, grid)};
      if (spec.cell == "alpha") {
        CellResult cell;
        cell.report.method = spec.method;
        cell.report.mode = spec.mode;
        cell.report.nu = nu;
        cell.report.omega = omega;
        cell.report.alpha_policy = spec.alpha.name();
        cell.report.alpha = resolve_alpha(spec.alpha, s, &cache);
        cell.report.converged = true;
        row.push_back(std::move(cell));
      } else {
        row.push_back(run_cell(s, spec.method, spec.mode, spec.alpha, spec.inner,
                               spec.tol, spec.maxit, &cache));
      }
    }
    result.cells.push_back(std::move(row));
  }
  return result;
}

std::string to_markdown(const RunSpec& spec, const SweepResult& r) {
  std::ostringstream ss;
  ss << "| nu \\ omega |";
  for (double w : spec.omegas) ss << ' ' << fmt("%g", w) << " |";
  ss << '\n' << "| --- |";
  for (std::size_t i = 0; i < spec.omegas.size(); ++i) ss << " --- |";
  ss << '\n';
  for (std::size_t i = 0; i < spec.nus.size(); ++i) {
    ss << "| " << fmt("%g", spec.nus[i]) << " |";
    for (const auto& cell : r.cells[i]) {
      if (spec.cell == "alpha") {
        ss << ' ' << fmt("%.6f", cell.report.alpha) << " |";
      } else if (!cell.report.converged) {
        ss << " † |";
      } else {
        ss << ' ' << cell.report.iterations << '('
           << fmt("%.2f", cell.report.elapsed_s) << ") |";
      }
    }
    ss << '\n';
  }
  return ss.str();
}

std::string to_csv(const RunSpec& spec, const SweepResult& r) {
  std::ostringstream ss;
  ss << SolveReport::csv_header() << '\n';
  for (const auto& row : r.cells)
    for (const auto& cell : row) ss << cell.report.csv_row(spec.k) << '\n';
  return ss.str();
}

}  // namespace mbas
