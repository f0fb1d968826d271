// Experiment CLI: parameter/iteration-count sweeps over (nu, omega) grids,
// single solves with residual-history export, and matrix export.
//
// Exit codes: 0 success, 2 usage error, 1 solver/runtime error.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "mbas/driver.hpp"
#include "mbas/fem.hpp"
#include "mbas/market.hpp"

namespace {

using namespace mbas;

struct CliOptions {
  RunSpec spec;
  std::string alpha_text = "est";
  std::string inner_text = "direct";
  std::string history;
  std::string out_dir = ".";
  std::string report_format = "csv";  // single --out format: csv | json
};

void add_common_flags(CLI::App* cmd, CliOptions& opt, bool single_cell) {
  cmd->add_option("--k", opt.spec.k, "mesh level (h = 2^-k)")->capture_default_str();
  if (single_cell) {
    opt.spec.nus = {1e-2};
    opt.spec.omegas = {1.0};
    cmd->add_option("--nu", opt.spec.nus[0], "regularization parameter")
        ->capture_default_str();
    cmd->add_option("--omega", opt.spec.omegas[0], "frequency")->capture_default_str();
  } else {
    cmd->add_option("--nu", opt.spec.nus, "comma-separated nu values")
        ->delimiter(',')
        ->required();
    cmd->add_option("--omega", opt.spec.omegas, "comma-separated omega values")
        ->delimiter(',')
        ->required();
  }
  cmd->add_option("--method", opt.spec.method, "mbas | bas | asss")
      ->capture_default_str();
  cmd->add_option("--mode", opt.spec.mode, "stationary | gmres")->capture_default_str();
  cmd->add_option("--alpha", opt.alpha_text,
                  "est | bas-iteration | bas-preconditioner | asss-default | "
                  "alpha1 | alpha2 | custom:<value>")
      ->capture_default_str();
  cmd->add_option("--inner", opt.inner_text, "direct | cg:<tol>")->capture_default_str();
  cmd->add_option("--tol", opt.spec.tol, "relative residual tolerance")
      ->capture_default_str();
  cmd->add_option("--maxit", opt.spec.maxit, "iteration cap")->capture_default_str();
}

void warn_memory(const RunSpec& spec) {
  if (spec.mode != "gmres") return;
  const Grid grid(spec.k);
  const double dim = (spec.method == "asss" ? 4.0 : 2.0) * grid.node_count();
  const double bytes = dim * (spec.method == "asss" ? 8.0 : 16.0) * (spec.maxit + 1);
  if (bytes > 5e8)
    std::cerr << "warning: full GMRES basis may need "
              << static_cast<long long>(bytes / 1048576) << " MiB at maxit "
              << spec.maxit << "; consider lowering --maxit\n";
}

void emit(const RunSpec& spec, const std::string& text) {
  if (spec.out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(spec.out);
  if (!f) throw Error("cannot open '" + spec.out + "' for writing");
  f << text;
}

int run_sweep_cmd(CliOptions& opt) {
  opt.spec.alpha = AlphaPolicy::parse(opt.alpha_text);
  opt.spec.inner = Inner::parse(opt.inner_text);
  validate_spec(opt.spec);
  warn_memory(opt.spec);
  const SweepResult result = run_sweep(opt.spec);
  emit(opt.spec, opt.spec.format == "csv" ? to_csv(opt.spec, result)
                                          : to_markdown(opt.spec, result));
  return 0;
}

int run_single_cmd(CliOptions& opt) {
  opt.spec.alpha = AlphaPolicy::parse(opt.alpha_text);
  opt.spec.inner = Inner::parse(opt.inner_text);
  validate_spec(opt.spec);
  warn_memory(opt.spec);

  const Grid grid(opt.spec.k);
  const SystemBundle s{assemble_mass(grid), assemble_stiffness(grid),
                       assemble_target(grid),
                       ProblemParams(opt.spec.nus[0], opt.spec.omegas[0], grid)};
  const CellResult cell = run_cell(s, opt.spec.method, opt.spec.mode, opt.spec.alpha,
                                   opt.spec.inner, opt.spec.tol, opt.spec.maxit);
  const SolveReport& rep = cell.report;

  std::cout << "method=" << rep.method << " mode=" << rep.mode << " k=" << opt.spec.k
            << " nu=" << rep.nu << " omega=" << rep.omega << '\n'
            << "alpha=" << rep.alpha << " (" << rep.alpha_policy << ")" << '\n'
            << "iterations=" << rep.iterations
            << " converged=" << (rep.converged ? "true" : "false")
            << " final_residual=" << rep.final_residual
            << " system_residual=" << cell.system_residual
            << " elapsed_s=" << rep.elapsed_s << '\n';

  if (!opt.spec.out.empty()) {
    if (opt.report_format != "csv" && opt.report_format != "json")
      throw ParameterError("single --format must be csv or json");
    std::ofstream f(opt.spec.out);
    if (!f) throw Error("cannot open '" + opt.spec.out + "' for writing");
    if (opt.report_format == "csv")
      f << SolveReport::csv_header() << '\n' << rep.csv_row(opt.spec.k) << '\n';
    else
      f << rep.to_json(opt.spec.k) << '\n';
  }
  if (!opt.history.empty()) {
    std::ofstream f(opt.history);
    if (!f) throw Error("cannot open '" + opt.history + "' for writing");
    f.precision(17);
    for (double r : rep.residual_history) f << r << '\n';
  }
  return 0;
}

int run_export_cmd(CliOptions& opt) {
  const Grid grid(opt.spec.k);
  namespace fs = std::filesystem;
  fs::create_directories(opt.out_dir);
  const fs::path dir(opt.out_dir);
  write_matrix_market((dir / "M.mtx").string(), assemble_mass(grid), /*symmetric=*/true);
  write_matrix_market((dir / "K.mtx").string(), assemble_stiffness(grid),
                      /*symmetric=*/true);
  write_vector((dir / "ybar_d.txt").string(), assemble_target(grid));
  std::cout << "wrote M.mtx, K.mtx, ybar_d.txt to " << dir.string() << '\n';
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Splitting iterations and preconditioners for the two-by-two block "
               "complex system of time-periodic parabolic optimal control"};
  app.require_subcommand(1);

  CliOptions sweep_opt, single_opt, export_opt;

  CLI::App* sweep = app.add_subcommand("sweep", "iteration/alpha table over a (nu, omega) grid");
  add_common_flags(sweep, sweep_opt, /*single_cell=*/false);
  sweep->add_option("--cell", sweep_opt.spec.cell, "iterations | alpha")
      ->capture_default_str();
  sweep->add_option("--format", sweep_opt.spec.format, "markdown | csv")
      ->capture_default_str();
  sweep->add_option("--out", sweep_opt.spec.out, "output file (default stdout)");

  CLI::App* single = app.add_subcommand("single", "solve one (nu, omega) cell");
  add_common_flags(single, single_opt, /*single_cell=*/true);
  single->add_option("--format", single_opt.report_format, "csv | json (for --out)")
      ->capture_default_str();
  single->add_option("--out", single_opt.spec.out, "write the report to this file");
  single->add_option("--history", single_opt.history,
                     "write one relative residual per line to this file");

  CLI::App* exp = app.add_subcommand("export", "write M, K, ybar_d to files");
  exp->add_option("--k", export_opt.spec.k, "mesh level")->capture_default_str();
  exp->add_option("--out", export_opt.out_dir, "output directory")
      ->capture_default_str();

  try {
    app.parse(argc, argv);
    if (sweep->parsed()) return run_sweep_cmd(sweep_opt);
    if (single->parsed()) return run_single_cmd(single_opt);
    if (exp->parsed()) return run_export_cmd(export_opt);
    return 2;
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return e.get_exit_code() == 0 ? 0 : 2;
  } catch (const mbas::ParameterError& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}
