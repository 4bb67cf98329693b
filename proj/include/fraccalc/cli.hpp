#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "fraccalc/quadrature.hpp"

namespace fraccalc::cli {

/// Exit codes shared by all subcommands.
enum ExitCode : int { kOk = 0, kUsage = 1, kNotConverged = 2 };

/// Runs the command line `args` (without the program name). JSON and CSV
/// summaries go to `out`, diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Parameters of a power-rule curve family.
struct CurveRequest {
  double alpha = 0.5;
  std::vector<double> rho_list;
  std::vector<double> nu_list;
  double x_max = 2.0;
  int points = 100;
  bool as_printed = false;

  void validate() const;
};

/// CSV text with header `x,rho,nu,alpha,derivative`, one row per
/// (rho, nu, x) with x = x_max i / points, i = 1..points. LF endings.
std::string power_curves_csv(const CurveRequest& req);

/// JSON object for an operator evaluation.
std::string eval_json(const EvalResult& r);

/// Parses a comma-separated list of reals; throws std::invalid_argument.
std::vector<double> parse_real_list(const std::string& text);

/// Parses a real or "inf".
double parse_real_or_inf(const std::string& text);

}  // namespace fraccalc::cli
