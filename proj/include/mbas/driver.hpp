// Experiment driver shared by the CLI and the acceptance suite: runs one
// (nu, omega) cell or a full sweep and renders the iteration/alpha tables.

#pragma once

#include <string>
#include <vector>

#include "mbas/params.hpp"
#include "mbas/splitting.hpp"
#include "mbas/system.hpp"
#include "mbas/types.hpp"

namespace mbas {

struct RunSpec {
  int k = 7;
  std::vector<double> nus;
  std::vector<double> omegas;
  std::string method = "mbas";      // mbas | bas | asss
  std::string mode = "stationary";  // stationary | gmres
  AlphaPolicy alpha;
  Inner inner;
  double tol = 1e-6;
  int maxit = 500;
  std::string cell = "iterations";  // iterations | alpha
  std::string format = "markdown";  // markdown | csv
  std::string out;                  // output path; empty writes to stdout
};

// Throws ParameterError on invalid combinations (usage errors at CLI level).
void validate_spec(const RunSpec& spec);

struct CellResult {
  SolveReport report;
  // Relative residual of the returned solution measured on the original
  // system form (A for mbas/bas, the real 4m form for asss).
  double system_residual = 0;
};

// Solves one cell; the bundle's params carry (nu, omega). The cache keeps
// eigenvalue extremes shared across cells of a sweep.
CellResult run_cell(const SystemBundle& s, const std::string& method,
                    const std::string& mode, const AlphaPolicy& policy,
                    Inner inner, double tol, int maxit,
                    AlphaCache* cache = nullptr);

struct SweepResult {
  std::vector<std::vector<CellResult>> cells;  // indexed [nu][omega]
};

SweepResult run_sweep(const RunSpec& spec);

std::string to_markdown(const RunSpec& spec, const SweepResult& r);
std::string to_csv(const RunSpec& spec, const SweepResult& r);

}  // namespace mbas
