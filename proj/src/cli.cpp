#include "fraccalc/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <ostream>
#include <sstream>

#include "fraccalc/function.hpp"
#include "fraccalc/function_space.hpp"
#include "fraccalc/grid.hpp"
#include "fraccalc/operators.hpp"
#include "fraccalc/verification.hpp"

namespace fraccalc::cli {

namespace {

std::string num(double v) { return json_number(v); }

struct CommonOptions {
  double rel_tol = QuadratureConfig{}.rel_tol;
  double abs_tol = QuadratureConfig{}.abs_tol;
  int max_nodes = 0;
  int order = QuadratureConfig{}.base_rule_order;

  void attach(CLI::App* app) {
    app->add_option("--rel-tol", rel_tol, "Relative quadrature tolerance");
    app->add_option("--abs-tol", abs_tol, "Absolute quadrature tolerance");
    app->add_option("--max-nodes", max_nodes, "Integrand evaluations per integral");
    app->add_option("--order", order, "Base Gauss rule order");
  }

  QuadratureConfig config() const {
    QuadratureConfig cfg;
    cfg.rel_tol = rel_tol;
    cfg.abs_tol = abs_tol;
    cfg.base_rule_order = order;
    if (const char* env = std::getenv("FRACCALC_MAX_NODES"); env && *env) {
      char* end = nullptr;
      const long v = std::strtol(env, &end, 10);
      if (*end != '\0' || v <= 0) {
        throw std::invalid_argument(std::string("FRACCALC_MAX_NODES is not a positive integer: ") +
                                    env);
      }
      cfg.max_nodes = static_cast<int>(v);
    }
    if (max_nodes > 0) cfg.max_nodes = max_nodes;
    cfg.max_nodes = std::max(cfg.max_nodes, 3 * cfg.base_rule_order);
    cfg.validate();
    return cfg;
  }
};

}  // namespace

std::vector<double> parse_real_list(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(parse_real_or_inf(item));
  if (out.empty()) throw std::invalid_argument("empty list '" + text + "'");
  return out;
}

double parse_real_or_inf(const std::string& text) {
  if (text == "inf" || text == "infinity") return kInfinity;
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(text, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != text.size()) throw std::invalid_argument("not a number: '" + text + "'");
  return v;
}

std::string eval_json(const EvalResult& r) {
  std::ostringstream os;
  os << "{\"value\": " << num(r.value) << ", \"err_estimate\": " << num(r.err_estimate)
     << ", \"nodes\": " << r.nodes_used << ", \"converged\": " << (r.converged ? "true" : "false")
     << "}";
  return os.str();
}

void CurveRequest::validate() const {
  if (!(alpha > 0.0 && alpha < 1.0)) throw std::invalid_argument("alpha must lie in (0, 1)");
  if (rho_list.empty() || nu_list.empty()) throw std::invalid_argument("empty rho or nu list");
  for (const double rho : rho_list) {
    if (!(rho > -1.0)) throw std::invalid_argument("every rho must exceed -1");
  }
  if (!(x_max > 0.0) || !std::isfinite(x_max)) throw std::invalid_argument("x_max must be positive");
  if (points < 2) throw std::invalid_argument("points must be at least 2");
}

std::string power_curves_csv(const CurveRequest& req) {
  req.validate();
  const std::size_t per_curve = static_cast<std::size_t>(req.points);
  const std::size_t rows = req.rho_list.size() * req.nu_list.size() * per_curve;
  auto row_params = [&](std::size_t i) {
    const std::size_t curve = i / per_curve;
    const double rho = req.rho_list[curve / req.nu_list.size()];
    const double nu = req.nu_list[curve % req.nu_list.size()];
    const double x = req.x_max * static_cast<double>(i % per_curve + 1) / req.points;
    return std::tuple{x, rho, nu};
  };
  const std::vector<double> values = parallel_map(rows, [&](std::size_t i) {
    const auto [x, rho, nu] = row_params(i);
    return req.as_printed ? power_rule_as_printed(nu, req.alpha, rho, x)
                          : power_rule_closed_form(nu, req.alpha, rho, x);
  });
  std::string csv = "x,rho,nu,alpha,derivative\n";
  for (std::size_t i = 0; i < rows; ++i) {
    const auto [x, rho, nu] = row_params(i);
    csv += num(x) + "," + num(rho) + "," + num(nu) + "," + num(req.alpha) + "," + num(values[i]) +
           "\n";
  }
  return csv;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Generalized fractional integrals and derivatives"};
  app.require_subcommand(1);
  CommonOptions common;

  // eval
  auto* eval = app.add_subcommand("eval", "Evaluate an operator at a point");
  std::string kind = "integral";
  std::string side = "left";
  double alpha = 0.0;
  double rho = 0.0;
  double base_a = 0.0;
  double base_b = 0.0;
  double x = 0.0;
  std::string fn;
  eval->add_option("--kind", kind, "integral | rl-derivative | caputo-derivative")
      ->check(CLI::IsMember({"integral", "rl-derivative", "caputo-derivative"}));
  eval->add_option("--side", side, "left | right")->check(CLI::IsMember({"left", "right"}));
  eval->add_option("--alpha", alpha, "Order alpha > 0")->required();
  auto* rho_opt = eval->add_option("--rho", rho, "Kernel parameter rho > -1");
  auto* had_opt = eval->add_flag("--hadamard", "Use the logarithmic kernel");
  rho_opt->excludes(had_opt);
  auto* a_opt = eval->add_option("--a", base_a, "Lower terminal (left side)");
  auto* b_opt = eval->add_option("--b", base_b, "Upper terminal (right side)");
  eval->add_option("--x", x, "Evaluation point")->required();
  eval->add_option("--fn", fn, "Function descriptor")->required();
  common.attach(eval);

  // check
  auto* check = app.add_subcommand("check", "Run a property check");
  check->require_subcommand(1);
  double beta = 0.0;
  double c = 0.0;
  std::string p_text = "1";
  double b_end = 0.0;
  int n_fold = 2;
  std::string grid_text = "0.25,0.5,0.75,1";
  std::string eps_text = "1e-1,1e-2,1e-3,1e-4";
  double tol = 0.0;

  auto* semigroup = check->add_subcommand("semigroup", "I^alpha I^beta f = I^(alpha+beta) f");
  semigroup->add_option("--alpha", alpha)->required();
  semigroup->add_option("--beta", beta)->required();
  semigroup->add_option("--rho", rho);
  semigroup->add_option("--a", base_a);
  semigroup->add_option("--fn", fn)->required();
  semigroup->add_option("--grid", grid_text, "Comma-separated evaluation points");
  semigroup->add_option("--tol", tol);
  common.attach(semigroup);

  auto* norm_bound = check->add_subcommand("norm-bound", "||I^alpha f|| <= K ||f|| in X^p_c");
  norm_bound->add_option("--alpha", alpha)->required();
  norm_bound->add_option("--rho", rho);
  norm_bound->add_option("--c", c);
  norm_bound->add_option("--p", p_text, "p >= 1 or inf");
  norm_bound->add_option("--a", base_a)->required();
  norm_bound->add_option("--b", b_end)->required();
  norm_bound->add_option("--fn", fn)->required();
  norm_bound->add_option("--tol", tol);
  common.attach(norm_bound);

  auto* nfold = check->add_subcommand("nfold", "Iterated integral against the kernel form");
  nfold->add_option("--n", n_fold)->check(CLI::IsMember({2, 3}));
  nfold->add_option("--rho", rho);
  nfold->add_option("--a", base_a);
  nfold->add_option("--x", x)->required();
  nfold->add_option("--fn", fn)->required();
  nfold->add_option("--tol", tol);
  common.attach(nfold);

  auto* hlimit = check->add_subcommand("hadamard-limit", "rho -> -1+ approaches Hadamard");
  hlimit->add_option("--alpha", alpha)->required();
  hlimit->add_option("--a", base_a)->required();
  hlimit->add_option("--x", x)->required();
  hlimit->add_option("--fn", fn)->required();
  hlimit->add_option("--eps", eps_text, "Decreasing comma-separated list");
  hlimit->add_option("--tol", tol);
  common.attach(hlimit);

  // norm
  auto* norm = app.add_subcommand("norm", "X^p_c norm, or classical L^p without --c");
  norm->add_option("--p", p_text, "p >= 1 or inf");
  auto* c_opt = norm->add_option("--c", c, "Weight exponent; selects the X^p_c norm");
  norm->add_option("--a", base_a)->required();
  norm->add_option("--b", b_end)->required();
  norm->add_option("--fn", fn)->required();
  common.attach(norm);

  // power-curves
  auto* curves = app.add_subcommand("power-curves", "CSV of the power-rule derivative");
  CurveRequest req;
  std::string rho_list_text = "-0.4,0,0.4";
  std::string nu_list_text = "1,2";
  std::string out_path;
  curves->add_option("--alpha", req.alpha, "Order in (0, 1)");
  curves->add_option("--rho", rho_list_text, "Comma-separated rho values");
  curves->add_option("--nu", nu_list_text, "Comma-separated exponents");
  curves->add_option("--x-max", req.x_max);
  curves->add_option("--points", req.points);
  curves->add_option("--out", out_path, "Output path; stdout when omitted");
  curves->add_flag("--as-printed", req.as_printed, "Use the (rho+1)^(alpha-1) prefactor");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  }

  try {
    if (eval->parsed()) {
      const QuadratureConfig cfg = common.config();
      OperatorSpec spec;
      spec.kind = kind == "integral"        ? OperatorKind::Integral
                  : kind == "rl-derivative" ? OperatorKind::RiemannDerivative
                                            : OperatorKind::CaputoDerivative;
      spec.side = side == "left" ? Side::Left : Side::Right;
      if (spec.side == Side::Left && b_opt->count() > 0) {
        throw std::invalid_argument("--b applies to the right side only");
      }
      if (spec.side == Side::Right && a_opt->count() > 0) {
        throw std::invalid_argument("--a applies to the left side only");
      }
      if (spec.side == Side::Right && b_opt->count() == 0) {
        throw std::invalid_argument("right-sided operators need --b");
      }
      spec.base = spec.side == Side::Left ? base_a : base_b;
      spec.alpha = alpha;
      spec.mode = had_opt->count() > 0 ? KernelMode{Hadamard{}} : KernelMode{Generalized{rho}};
      const RealFunction f = RealFunction::parse(fn);
      const EvalResult r = apply(f, spec, x, cfg);
      out << eval_json(r) << "\n";
      return r.converged ? kOk : kNotConverged;
    }
    if (check->parsed()) {
      const QuadratureConfig cfg = common.config();
      const RealFunction f = RealFunction::parse(fn);
      const bool has_tol = tol > 0.0;
      CheckReport rep;
      if (semigroup->parsed()) {
        const std::vector<double> grid = parse_real_list(grid_text);
        rep = check_semigroup(f, alpha, beta, rho, base_a, grid, cfg, has_tol ? tol : 1e-6);
      } else if (norm_bound->parsed()) {
        const SpaceParams sp{parse_real_or_inf(p_text), c, base_a, b_end};
        rep = check_norm_bound(f, alpha, rho, sp, cfg,
                               has_tol ? std::optional<double>(tol) : std::nullopt);
      } else if (nfold->parsed()) {
        rep = check_nfold_identity(f, n_fold, rho, base_a, x, cfg, has_tol ? tol : 1e-7);
      } else {
        const std::vector<double> eps = parse_real_list(eps_text);
        rep = check_hadamard_limit(f, alpha, base_a, x, eps, cfg, has_tol ? tol : 1e-3);
      }
      out << rep.to_json() << "\n";
      return rep.passed ? kOk : kNotConverged;
    }
    if (norm->parsed()) {
      const QuadratureConfig cfg = common.config();
      const RealFunction f = RealFunction::parse(fn);
      const double p = parse_real_or_inf(p_text);
      const EvalResult r = c_opt->count() > 0 ? xpc_norm(f, SpaceParams{p, c, base_a, b_end}, cfg)
                                              : lp_norm(f, p, base_a, b_end, cfg);
      out << eval_json(r) << "\n";
      return r.converged ? kOk : kNotConverged;
    }
    if (curves->parsed()) {
      req.rho_list = parse_real_list(rho_list_text);
      req.nu_list = parse_real_list(nu_list_text);
      const std::string csv = power_curves_csv(req);
      if (out_path.empty()) {
        out << csv;
      } else {
        std::ofstream file(out_path, std::ios::binary);
        if (!file) throw std::runtime_error("cannot open '" + out_path + "' for writing");
        file << csv;
        if (!file) throw std::runtime_error("failed writing '" + out_path + "'");
        err << "wrote " << csv.size() << " bytes to " << out_path << "\n";
      }
      return kOk;
    }
  } catch (const DescriptorError& e) {
    err << "error: bad function descriptor at '" << e.token() << "': " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  }
  return kUsage;
}

}  // namespace fraccalc::cli
