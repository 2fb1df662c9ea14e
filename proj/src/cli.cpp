#include "sharpsphere/cli.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <functional>
#include <limits>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "sharpsphere/certificates.hpp"
#include "sharpsphere/flows.hpp"
#include "sharpsphere/functionals.hpp"
#include "sharpsphere/io.hpp"
#include "sharpsphere/measure.hpp"
#include "sharpsphere/minimizer.hpp"
#include "sharpsphere/spectral.hpp"

namespace sharpsphere {

namespace {

constexpr double kVerifyTolerance = 1e-3;
constexpr double kSharpnessLimitTolerance = 1e-6;
constexpr int kCorpusSize = 200;
constexpr int kCertifyCorpusSize = 20;
constexpr const char* kOutsideRange = "outside the theorem's range";

struct RunConfig {
  double d = 3.0;
  double p = 4.0;
  int nodes = kDefaultNodes;
  int kmax = 20;
  double tmax = 0.0;  // 0: command default
  int samples = 40;
  double beta = 0.0;  // 0: chosen by find_beta
  std::vector<double> eps;
  int starts = 8;
  std::uint64_t seed = 0;
  std::string format = "csv";
  std::string out = "-";
  double dmin = 2.2;
  double dmax = 10.0;
  int steps = 100;
};

struct Context {
  const RunConfig& cfg;
  Format format;
  std::ostream& out;
  std::ostream& err;

  BasisPtr basis() const {
    if (cfg.nodes < 2) throw DomainError("--nodes must be at least 2");
    if (cfg.kmax < 1) throw DomainError("--kmax must be at least 1");
    return make_basis(cfg.d, cfg.kmax, cfg.nodes);
  }
  double eps_or(double fallback) const { return cfg.eps.empty() ? fallback : cfg.eps.front(); }
};

int finish(const Context& ctx, Report& report, bool ok) {
  report.add("status", ok ? "pass" : "fail");
  report.write(ctx.out, ctx.format);
  return ok ? kExitOk : kExitViolation;
}

void add_range(Report& report, const Exponent& p, std::ostream& err) {
  report.add("in_theorem_range", p.in_theorem_range());
  if (!p.in_theorem_range()) {
    report.add("range", kOutsideRange);
    err << "warning: p = " << format_real(p.p()) << " is " << kOutsideRange << "; results are informational\n";
  }
}

int cmd_constants(const Context& ctx) {
  const double d = Dim(ctx.cfg.d).value();
  Report report;
  report.add("d", d);
  report.add("Z_d", normalization_constant(d));
  report.add("two_star", two_star(d));
  report.add("two_sharp", two_sharp(d));
  for (int k = 1; k <= 5; ++k) report.add("lambda_" + std::to_string(k), eigenvalue(k, d));
  std::vector<double> ps{1.0, 1.5, 2.0, 3.0, 4.0};
  if (std::isfinite(two_sharp(d))) ps.push_back(two_sharp(d));
  for (double p : ps) report.add("alpha[p=" + format_real(p) + "]", alpha_improved(p, d));
  report.write(ctx.out, ctx.format);
  return kExitOk;
}

int cmd_verify(const Context& ctx) {
  const Exponent p(ctx.cfg.p, ctx.cfg.d);
  const BasisPtr basis = ctx.basis();
  const bool logsob = p.p() == 2.0;

  double corpus_min = std::numeric_limits<double>::infinity();
  for (const NodalFn& f : random_corpus(*basis, kCorpusSize, ctx.cfg.seed)) {
    corpus_min = std::min(corpus_min, logsob ? logsob_ratio(f, *basis) : quotient_Qp(f, p, *basis));
  }
  MinimizeOptions opt;
  opt.starts = ctx.cfg.starts;
  opt.seed = ctx.cfg.seed;
  const MinimizeResult m = logsob ? minimize_logsob(*basis, opt) : minimize_quotient(p, *basis, opt);

  Report report;
  report.add("d", p.dim()).add("p", p.p());
  report.add("functional", logsob ? "logsob_ratio" : "quotient_Qp");
  add_range(report, p, ctx.err);
  report.add("corpus_size", kCorpusSize);
  report.add("corpus_min", corpus_min);
  report.add("minimizer_best", m.best_value);
  report.add("minimizer_converged", m.converged);
  const bool ok = std::min(corpus_min, m.best_value) >= 1.0 - kVerifyTolerance;
  if (!p.in_theorem_range()) {
    finish(ctx, report, ok);
    return kExitOk;
  }
  return finish(ctx, report, ok);
}

int cmd_flow(const Context& ctx) {
  const Exponent p(ctx.cfg.p, ctx.cfg.d);
  const BasisPtr basis = ctx.basis();
  const double eps = ctx.eps_or(0.1);
  const NodalFn f0 = NodalFn::sample(basis->rule(), [eps](double x) { return 1.0 + eps * x; });
  const std::vector<double> grid = ctx.cfg.tmax > 0.0 ? geometric_time_grid(ctx.cfg.tmax, ctx.cfg.samples)
                                                      : default_time_grid(p.dim(), ctx.cfg.samples);
  const FlowTrace trace = run_heat_flow(f0, p, grid, *basis);

  Table table({"t", "F", "I", "mass", "min_g"});
  bool ok = true;
  for (std::size_t i = 0; i < trace.times.size(); ++i) {
    const double t = trace.times[i];
    table.add_row({t, trace.F[i], trace.I[i], trace.mass[i], trace.min_g[i]});
    const double bound = trace.F[0] * std::exp(-2.0 * p.dim() * t) * (1.0 + 1e-9);
    if (p.in_theorem_range() && trace.F[i] > bound) {
      ctx.err << "violation: F(" << format_real(t) << ") = " << format_real(trace.F[i]) << " exceeds F(0)e^{-2dt} = "
              << format_real(bound) << '\n';
      ok = false;
    }
  }
  if (!trace.resolved) ctx.err << "warning: initial datum g = f0^p is not resolved at kmax\n";
  if (!p.in_theorem_range()) ctx.err << "warning: p is " << kOutsideRange << "; decay is not checked\n";
  table.write(ctx.out, ctx.format);
  return ok ? kExitOk : kExitViolation;
}

int cmd_hyper(const Context& ctx) {
  const BasisPtr basis = ctx.basis();
  const double eps = ctx.eps_or(0.2);
  const NodalFn u = NodalFn::sample(basis->rule(), [eps](double x) { return 1.0 + eps * x; });
  const HyperReport h = hypercontractivity_run(u, ctx.cfg.p, *basis);
  const BecknerChainReport c = beckner_chain_check(u, ctx.cfg.p, *basis);

  Report report;
  report.add("d", h.d).add("p", h.p).add("eps", eps).add("t_star", h.t_star);
  report.add("lhs", h.lhs).add("lhs_quadrature", h.lhs_quadrature);
  report.add("rhs_p", h.rhs_p).add("rhs_2overp", h.rhs_2overp);
  report.add("spectral_identity_error", h.spectral_identity_error);
  report.add("holds", h.holds);
  report.add("interpolation_side", c.interpolation_side).add("semigroup_side", c.semigroup_side);
  report.add("spectral_bound", c.spectral_bound).add("dirichlet_side", c.dirichlet_side);
  report.add("constant", c.constant);
  report.add("nelson_link", c.nelson_link).add("spectral_link", c.spectral_link);
  report.add("constant_link", c.constant_link);
  report.add("saturation", c.saturation());
  return finish(ctx, report, h.holds && h.spectral_identity_error < 1e-10 && c.all());
}

int cmd_certify(const Context& ctx) {
  const Exponent p(ctx.cfg.p, ctx.cfg.d);
  const double d = p.dim();
  Report report;
  report.add("d", d).add("p", p.p());
  report.add("two_star", two_star(d)).add("two_sharp", two_sharp(d));
  bool ok = true;

  if (p.p() != 2.0) {
    std::optional<double> beta;
    if (ctx.cfg.beta != 0.0) {
      beta = ctx.cfg.beta;
    } else {
      beta = find_beta(p.p(), d);
    }
    const bool expect_feasible = p.p() > 1.0 && p.p() < two_star(d);
    report.add("beta_source", ctx.cfg.beta != 0.0 ? "given" : (beta ? "find_beta" : "none"));
    if (beta) {
      const DiscriminantReport r = discriminant(p.p(), d, *beta);
      report.add("beta", r.beta).add("lambda", r.lambda);
      report.add("a", r.a).add("b", r.b).add("c", r.c);
      report.add("A", r.A).add("B", r.B);
      report.add("delta", r.delta);
      report.add("feasible", r.feasible);
      ok = ok && (r.feasible || !expect_feasible);
    } else {
      const auto [A, B] = discriminant_coefficients(p.p(), d);
      report.add("A", A).add("B", B);
      report.add("feasible", false);
      ok = ok && !expect_feasible;
    }
  }

  report.add("alpha", alpha_improved(p.p(), d));
  report.add("determinant", quadratic_form_determinant(p.p(), d));
  if (p.flow_admissible()) report.add("improved_constant", improved_constant(p.p(), d));

  const BasisPtr basis = ctx.basis();
  double h_min = std::numeric_limits<double>::infinity();
  double sos_error = 0.0;
  for (const NodalFn& f : random_corpus(*basis, kCertifyCorpusSize, ctx.cfg.seed)) {
    const NodalFn h = pointwise_h(f, p, *basis);
    const NodalFn s = sos_check(f, p, *basis);
    h_min = std::min(h_min, h.min());
    const double scale = std::max(1.0, h.values().cwiseAbs().maxCoeff());
    sos_error = std::max(sos_error, (h.values() - s.values()).cwiseAbs().maxCoeff() / scale);
  }
  report.add("h_min", h_min);
  report.add("sos_error", sos_error);
  ok = ok && sos_error < 1e-9;
  if (p.flow_admissible()) ok = ok && h_min >= -1e-10;
  return finish(ctx, report, ok);
}

int cmd_minimize(const Context& ctx) {
  const Exponent p(ctx.cfg.p, ctx.cfg.d);
  const BasisPtr basis = ctx.basis();
  MinimizeOptions opt;
  opt.starts = ctx.cfg.starts;
  opt.seed = ctx.cfg.seed;
  const MinimizeResult m = p.p() == 2.0 ? minimize_logsob(*basis, opt) : minimize_quotient(p, *basis, opt);

  Report report;
  report.add("d", m.d).add("p", m.p);
  add_range(report, p, ctx.err);
  report.add("best_value", m.best_value);
  report.add("starts", m.starts);
  report.add("converged", m.converged);
  report.add("gradient_norm", m.gradient_norm);
  report.add("argmin_min", m.argmin.min()).add("argmin_max", m.argmin.max());
  const bool ok = m.best_value >= 1.0 - kVerifyTolerance;
  if (!p.in_theorem_range()) {
    finish(ctx, report, ok);
    return kExitOk;
  }
  return finish(ctx, report, ok);
}

int cmd_figure(const Context& ctx) {
  const FigureTable fig = figure_curves(ctx.cfg.dmin, ctx.cfg.dmax, ctx.cfg.steps);
  Table table({"d", "two_sharp", "two_star"});
  bool ok = true;
  for (const auto& row : fig.rows) {
    table.add_row({row.d, row.two_sharp, row.two_star});
    if (row.d > 2.0 && !(row.two_sharp < row.two_star)) ok = false;
  }
  table.write(ctx.out, ctx.format);
  return ok ? kExitOk : kExitViolation;
}

int cmd_sharpness(const Context& ctx) {
  const Exponent p(ctx.cfg.p, ctx.cfg.d);
  const BasisPtr basis = ctx.basis();
  const std::vector<double> eps =
      ctx.cfg.eps.empty() ? std::vector<double>{0.5, 0.2, 0.1, 0.05, 0.02, 0.01} : ctx.cfg.eps;
  const SharpnessTable sharp = perturbation_sharpness(p, eps, *basis);
  Table table({"eps", "Q"});
  for (const auto& row : sharp.rows) table.add_row({row.eps, row.value});
  table.write(ctx.out, ctx.format);
  ctx.err << "extrapolated_limit=" << format_real(sharp.extrapolated_limit) << '\n';
  if (!p.in_theorem_range()) {
    ctx.err << "warning: p is " << kOutsideRange << '\n';
    return kExitOk;
  }
  return sharp.decreasing && std::abs(sharp.extrapolated_limit - 1.0) < kSharpnessLimitTolerance ? kExitOk
                                                                                          : kExitViolation;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  RunConfig cfg;
  CLI::App app{"Sharp interpolation inequalities on the sphere: constants, flows and certificates"};
  app.name("sharpsphere");
  app.require_subcommand(1);
  app.fallthrough();

  app.add_option("--d", cfg.d, "dimension d >= 1 (real)");
  app.add_option("--p", cfg.p, "exponent p >= 1");
  app.add_option("--nodes", cfg.nodes, "quadrature nodes");
  app.add_option("--kmax", cfg.kmax, "maximal polynomial degree");
  app.add_option("--tmax", cfg.tmax, "final flow time (default 5/(2d))");
  app.add_option("--samples", cfg.samples, "time samples");
  app.add_option("--beta", cfg.beta, "beta for the discriminant (default: chosen automatically)");
  app.add_option("--eps", cfg.eps, "perturbation amplitude(s)");
  app.add_option("--starts", cfg.starts, "random starts for the minimizer");
  app.add_option("--seed", cfg.seed, "random seed");
  app.add_option("--format", cfg.format, "output format")->check(CLI::IsMember({"csv", "json"}));
  app.add_option("--out", cfg.out, "output file, '-' for stdout");
  app.add_option("--dmin", cfg.dmin, "figure: smallest d");
  app.add_option("--dmax", cfg.dmax, "figure: largest d");
  app.add_option("--steps", cfg.steps, "figure: number of samples");

  using Command = std::function<int(const Context&)>;
  const std::vector<std::tuple<std::string, std::string, Command>> commands{
      {"constants", "normalisation, critical exponents, eigenvalues, alpha table", cmd_constants},
      {"verify", "sample the quotient and run the minimizer", cmd_verify},
      {"flow", "entropy / Fisher trace along the heat flow (CSV t,F,I,mass,min_g)", cmd_flow},
      {"hyper", "hypercontractivity and the interpolation chain", cmd_hyper},
      {"certify", "discriminant, improved constant and the pointwise certificate", cmd_certify},
      {"minimize", "multistart minimisation of the quotient", cmd_minimize},
      {"figure", "curves d -> 2#, 2* (CSV d,two_sharp,two_star)", cmd_figure},
      {"sharpness", "quotient along 1 + eps x (CSV eps,Q)", cmd_sharpness},
  };
  for (const auto& [name, help, fn] : commands) app.add_subcommand(name, help);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitConfig;
  }

  try {
    std::ofstream file;
    if (cfg.out != "-") {
      file.open(cfg.out);
      if (!file) throw DomainError("cannot open output file " + cfg.out);
    }
    const Context ctx{cfg, cfg.format == "json" ? Format::Json : Format::Csv, cfg.out == "-" ? out : file, err};
    for (const auto& [name, help, fn] : commands) {
      if (app.got_subcommand(name)) return fn(ctx);
    }
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kExitConfig;
  }
  return kExitConfig;
}

}  // namespace sharpsphere
