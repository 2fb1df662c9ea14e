#include "sharpsphere/flows.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "sharpsphere/certificates.hpp"

namespace sharpsphere {

std::vector<double> geometric_time_grid(double tmax, int samples) {
  if (!(tmax > 0.0) || samples < 2) throw DomainError("time grid needs tmax > 0 and at least 2 samples");
  constexpr double ratio = 1.1;
  const double denom = std::pow(ratio, samples - 1) - 1.0;
  std::vector<double> t(samples);
  for (int j = 0; j < samples; ++j) t[j] = tmax * (std::pow(ratio, j) - 1.0) / denom;
  t.back() = tmax;
  return t;
}

std::vector<double> default_time_grid(double d, int samples) {
  return geometric_time_grid(5.0 / (2.0 * Dim(d).value()), samples);
}

std::vector<double> uniform_time_grid(double tmax, int samples) {
  if (!(tmax > 0.0) || samples < 2) throw DomainError("time grid needs tmax > 0 and at least 2 samples");
  std::vector<double> t(samples);
  for (int j = 0; j < samples; ++j) t[j] = tmax * j / (samples - 1);
  return t;
}

namespace {

void validate_grid(const std::vector<double>& t) {
  if (t.empty() || t.front() != 0.0) throw DomainError("time grid must start at 0");
  for (std::size_t i = 1; i < t.size(); ++i) {
    if (!(t[i] > t[i - 1])) throw DomainError("time grid must be strictly increasing");
  }
}

void record(FlowTrace& trace, double t, const NodalFn& g, const Exponent& p, const Basis& basis) {
  trace.times.push_back(t);
  trace.min_g.push_back(g.min());
  trace.mass.push_back(integrate(g));
  if (!(g.min() > kPositivityRatio * g.max())) {
    throw PositivityError("flow lost positivity at t = " + std::to_string(t));
  }
  const NodalFn f = g.with_values(g.values().array().pow(1.0 / p.p()));
  const SpectralFn fs = to_spectral(f, basis);
  trace.resolved = trace.resolved && fs.resolved();
  trace.F.push_back(entropy_F(g, p));
  trace.I.push_back(dirichlet_energy(fs));
}

}  // namespace

FlowTrace run_heat_flow(const NodalFn& f0, const Exponent& p, const std::vector<double>& t_grid,
                        const Basis& basis) {
  validate_grid(t_grid);
  require_positive(f0, "initial datum");
  const NodalFn g0 = f0.with_values(f0.values().array().pow(p.p()));
  const SpectralFn gs = to_spectral(g0, basis);

  FlowTrace trace{p.p(), p.dim(), {}, {}, {}, {}, {}, gs.resolved()};
  for (double t : t_grid) record(trace, t, to_nodal(heat_semigroup(gs, t), basis), p, basis);
  return trace;
}

FlowTrace run_nonlinear_flow(const NodalFn& f0, const Exponent& p, const std::vector<double>& t_grid, double dt,
                             const Basis& basis) {
  validate_grid(t_grid);
  if (!(dt > 0.0)) throw DomainError("time step must be positive");
  require_positive(f0, "initial datum");

  const Eigen::VectorXd& lam = basis.eigenvalues();
  const Eigen::VectorXd& x = basis.rule()->nodes;
  const Eigen::ArrayXd nu = 1.0 - x.array().square();
  const double pm1 = p.p() - 1.0;

  const auto positive = [](const Eigen::VectorXd& f) { return f.minCoeff() > kPositivityRatio * f.maxCoeff(); };
  const auto gradient_term = [&](const Eigen::VectorXd& b) -> Eigen::VectorXd {
    const Eigen::VectorXd f = basis.synthesize(b);
    const Eigen::ArrayXd df = (basis.first_derivatives() * b).array();
    const Eigen::VectorXd n = (pm1 * df.square() * nu / f.array()).matrix();
    return basis.project(n);
  };
  // Crank-Nicolson on the diagonal part with a given explicit forcing.
  const auto cn_step = [&](const Eigen::VectorXd& b, const Eigen::VectorXd& forcing, double h) -> Eigen::VectorXd {
    const Eigen::ArrayXd half = 0.5 * h * lam.array();
    return (((1.0 - half) * b.array() + h * forcing.array()) / (1.0 + half)).matrix();
  };

  Eigen::VectorXd b = to_spectral(f0, basis).coeffs;
  Eigen::VectorXd prev_n;
  double prev_h = 0.0;
  double h_max = dt;
  double t = 0.0;

  FlowTrace trace{p.p(), p.dim(), {}, {}, {}, {}, {}, true};
  const auto sample = [&](double at) {
    const Eigen::VectorXd f = basis.synthesize(b);
    record(trace, at, NodalFn(basis.rule(), f.array().pow(p.p()).matrix()), p, basis);
  };
  sample(0.0);

  for (std::size_t s = 1; s < t_grid.size(); ++s) {
    const double target = t_grid[s];
    while (target - t > 1e-14 * std::max(1.0, target)) {
      const double h = std::min(h_max, target - t);
      const Eigen::VectorXd n0 = gradient_term(b);
      Eigen::VectorXd next;
      if (prev_n.size() == 0) {
        // Heun start: predictor with n0, corrector with the trapezoidal average.
        const Eigen::VectorXd predicted = cn_step(b, n0, h);
        if (!positive(basis.synthesize(predicted))) {
          h_max *= 0.5;
          if (h_max < 1e-12) throw StepSizeError("nonlinear flow lost positivity");
          continue;
        }
        next = cn_step(b, 0.5 * (n0 + gradient_term(predicted)), h);
      } else {
        // Variable-step Adams-Bashforth extrapolation to the midpoint.
        const Eigen::VectorXd mid = n0 + (0.5 * h / prev_h) * (n0 - prev_n);
        next = cn_step(b, mid, h);
      }
      if (!positive(basis.synthesize(next))) {
        h_max *= 0.5;
        prev_n.resize(0);
        if (h_max < 1e-12) throw StepSizeError("nonlinear flow lost positivity");
        continue;
      }
      if (SpectralFn{Dim(p.dim()), next}.tail_fraction() > kTailEnergyLimit) {
        throw StepSizeError("nonlinear flow lost resolution at t = " + std::to_string(t));
      }
      prev_n = n0;
      prev_h = h;
      b = std::move(next);
      t += h;
    }
    t = target;
    sample(target);
  }
  return trace;
}

double decay_rate(const FlowTrace& trace, TraceQuantity which, double t_begin, double t_end) {
  const std::vector<double>& v = which == TraceQuantity::Entropy ? trace.F : trace.I;
  const double mid = 0.5 * (t_begin + t_end);
  double st = 0.0, sy = 0.0, stt = 0.0, sty = 0.0;
  int count = 0;
  for (std::size_t i = 0; i < trace.times.size(); ++i) {
    const double t = trace.times[i];
    if (t < mid || t > t_end) continue;
    if (!(v[i] > 0.0)) throw DomainError("decay rate needs positive values on the window");
    const double y = std::log(v[i]);
    st += t;
    sy += y;
    stt += t * t;
    sty += t * y;
    ++count;
  }
  if (count < 2) throw EmptyWindow("fewer than two samples in the fitting window");
  const double denom = count * stt - st * st;
  if (denom <= 0.0) throw EmptyWindow("degenerate fitting window");
  return (count * sty - st * sy) / denom;
}

std::vector<double> entropy_derivative(const FlowTrace& trace) {
  const auto& t = trace.times;
  const auto& F = trace.F;
  std::vector<double> out;
  for (std::size_t i = 1; i + 1 < t.size(); ++i) {
    const double h1 = t[i] - t[i - 1];
    const double h2 = t[i + 1] - t[i];
    out.push_back(-h2 / (h1 * (h1 + h2)) * F[i - 1] + (h2 - h1) / (h1 * h2) * F[i] +
                  h1 / (h2 * (h1 + h2)) * F[i + 1]);
  }
  return out;
}

PoincareCheck auxiliary_poincare(const SpectralFn& f, const Basis& basis) {
  const double d = basis.dim();
  const int n = basis.rule()->n;
  const RulePtr shifted2 = make_rule(d + 2.0, n);
  const RulePtr shifted4 = make_rule(d + 4.0, n);

  Eigen::VectorXd df(n);
  for (int i = 0; i < n; ++i) df[i] = evaluate(f, basis, shifted2->nodes[i]).first;
  const double mean = shifted2->weights.dot(df);
  const double var = shifted2->weights.dot((df.array() - mean).square().matrix());

  double lhs = 0.0;
  for (int i = 0; i < n; ++i) {
    const double s = evaluate(f, basis, shifted4->nodes[i]).second;
    lhs += shifted4->weights[i] * s * s;
  }
  return {mean, lhs, (d + 2.0) * var};
}

ImprovedDecayReport improved_decay_check(const NodalFn& f0, const Exponent& p, const Basis& basis,
                                         std::vector<double> t_grid, double slope_tolerance) {
  const Eigen::VectorXd mirrored = f0.values().reverse();
  if ((f0.values() - mirrored).cwiseAbs().maxCoeff() >= 1e-12) {
    throw SymmetryError("initial datum is not even under x -> -x");
  }
  if (!p.flow_admissible()) throw DomainError("improved decay needs p <= 2#");
  require_positive(f0, "initial datum");
  if (t_grid.empty()) t_grid = default_time_grid(p.dim());

  ImprovedDecayReport report{};
  report.alpha = alpha_improved(p.p(), p.dim());
  report.improved_constant = improved_constant(p.p(), p.dim());
  report.bound_slope = -2.0 * report.improved_constant;
  report.trace = run_heat_flow(f0, p, t_grid, basis);
  report.fitted_slope = decay_rate(report.trace, TraceQuantity::Fisher, t_grid.front(), t_grid.back());
  report.slope_ok = report.fitted_slope <= report.bound_slope + slope_tolerance;

  const NodalFn g0 = f0.with_values(f0.values().array().pow(p.p()));
  const SpectralFn gs = to_spectral(g0, basis);
  report.min_poincare_margin = std::numeric_limits<double>::infinity();
  for (double t : t_grid) {
    const NodalFn g = to_nodal(heat_semigroup(gs, t), basis);
    const NodalFn f = g.with_values(g.values().array().pow(1.0 / p.p()));
    const PoincareCheck pc = auxiliary_poincare(to_spectral(f, basis), basis);
    report.max_mean_derivative = std::max(report.max_mean_derivative, std::abs(pc.mean_derivative));
    report.min_poincare_margin = std::min(report.min_poincare_margin, pc.lhs - pc.rhs);
  }
  report.poincare_ok = report.min_poincare_margin >= -1e-12;
  return report;
}

double hypercontractive_time(double p, double d) {
  if (!(p > 1.0 && p < 2.0)) throw DomainError("hypercontractivity needs p in (1, 2)");
  return std::log(1.0 / (p - 1.0)) / (2.0 * Dim(d).value());
}

HyperReport hypercontractivity_run(const NodalFn& u, double p, const Basis& basis) {
  const double d = basis.dim();
  const double t_star = hypercontractive_time(p, d);
  if (u.values().cwiseAbs().maxCoeff() == 0.0) throw DomainError("initial datum is identically zero");

  const SpectralFn a = to_spectral(u, basis);
  double energy = 0.0;
  for (int k = 0; k < a.coeffs.size(); ++k) {
    energy += a.coeffs[k] * a.coeffs[k] * std::exp(-2.0 * eigenvalue(k, d) * t_star);
  }
  const NodalFn evolved = to_nodal(heat_semigroup(a, t_star), basis);

  HyperReport r{};
  r.p = p;
  r.d = d;
  r.t_star = t_star;
  r.lhs = std::sqrt(energy);
  r.lhs_quadrature = lp_norm(evolved, 2.0);
  r.rhs_p = lp_norm(u, p);
  r.rhs_2overp = lp_norm(u, 2.0 / p);
  r.spectral_identity_error = std::abs(r.lhs - r.lhs_quadrature);
  r.holds = r.lhs <= r.rhs_p * (1.0 + 1e-14);
  return r;
}

BecknerChainReport beckner_chain_check(const NodalFn& u, double p, const Basis& basis, double slack) {
  const double d = basis.dim();
  const double t_star = hypercontractive_time(p, d);
  if (u.values().cwiseAbs().maxCoeff() == 0.0) throw DomainError("initial datum is identically zero");

  const SpectralFn a = to_spectral(u, basis);
  const double l2 = integrate(u.with_values(u.values().cwiseAbs2()));
  // ||u||_2^2 - ||f(t*)||_2^2 = truncation residual + sum a_k^2 (1 - e^{-2 lambda_k t*}).
  double dissipated = l2 - a.coeffs.squaredNorm();
  for (int k = 1; k < a.coeffs.size(); ++k) {
    dissipated += a.coeffs[k] * a.coeffs[k] * -std::expm1(-2.0 * eigenvalue(k, d) * t_star);
  }

  BecknerChainReport r{};
  r.p = p;
  r.d = d;
  r.t_star = t_star;
  r.interpolation_side = norm_gap(u, p) / (p - 2.0);
  r.semigroup_side = dissipated / (2.0 - p);
  r.constant = -std::expm1(-2.0 * eigenvalue(1, d) * t_star) / ((2.0 - p) * eigenvalue(1, d));
  const double energy = dirichlet_energy(a);
  r.spectral_bound = r.constant * energy;
  r.dirichlet_side = energy / d;
  r.nelson_link = r.interpolation_side <= r.semigroup_side + slack;
  r.spectral_link = r.semigroup_side <= r.spectral_bound + slack;
  r.constant_link = std::abs(r.constant - 1.0 / d) <= slack;
  return r;
}

GrossReport gross_monotonicity_check(const NodalFn& u, double p, const Basis& basis,
                                     const std::vector<double>& t_grid) {
  const double d = basis.dim();
  const double t_star = hypercontractive_time(p, d);
  require_positive(u, "initial datum");

  GrossReport r{};
  for (double t : t_grid) {
    if (t >= 0.0 && t < t_star) r.times.push_back(t);
  }
  r.times.push_back(t_star);

  const SpectralFn a = to_spectral(u, basis);
  for (double t : r.times) {
    // At t* the defining relation e^{2 d t*} = 1/(p-1) gives p(t*) = 2.
    const double pt = t == t_star ? 2.0 : 1.0 + (p - 1.0) * std::exp(2.0 * d * t);
    const NodalFn f = to_nodal(heat_semigroup(a, t), basis);
    const NodalFn v = f.with_values(f.values().cwiseAbs().array().pow(pt / 2.0).matrix());
    r.exponents.push_back(pt);
    r.norms.push_back(lp_norm(f, pt));
    r.brackets.push_back(l2_entropy(v) - 2.0 / d * dirichlet_energy(to_spectral(v, basis)));
  }
  r.final_exponent = r.exponents.back();

  r.monotone = true;
  for (std::size_t i = 1; i < r.norms.size(); ++i) r.monotone = r.monotone && r.norms[i] <= r.norms[i - 1] + 1e-10;
  r.brackets_nonpositive = std::all_of(r.brackets.begin(), r.brackets.end(), [](double b) { return b <= 1e-12; });
  return r;
}

}  // namespace sharpsphere
