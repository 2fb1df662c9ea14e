#include "sharpsphere/functionals.hpp"

#include <cmath>
#include <string>

namespace sharpsphere {

double two_star(double d) {
  Dim dim(d);
  return d > 2.0 ? 2.0 * d / (d - 2.0) : std::numeric_limits<double>::infinity();
}

double two_sharp(double d) {
  Dim dim(d);
  return d > 1.0 ? (2.0 * d * d + 1.0) / ((d - 1.0) * (d - 1.0)) : std::numeric_limits<double>::infinity();
}

Exponent::Exponent(double p, double d) : p_(p), d_(d) {
  if (!(p >= 1.0) || std::isnan(p)) throw DomainError("exponent must satisfy p >= 1, got " + std::to_string(p));
}

Regime Exponent::regime() const {
  const double c = critical();
  if (p_ < c) return Regime::Subcritical;
  if (p_ == c) return Regime::Critical;
  return Regime::Beyond;
}

bool Exponent::in_theorem_range() const {
  const double upper = critical_unbounded() ? kUnboundedExponentCap : critical();
  return p_ >= 1.0 && p_ <= upper;
}

void require_positive(const NodalFn& f, const char* what) {
  const double lo = f.min();
  const double hi = f.max();
  if (!(lo > kPositivityRatio * hi) || !(hi > 0.0)) {
    throw PositivityError(std::string(what) + " must be positive (min " + std::to_string(lo) + ", max " +
                          std::to_string(hi) + ")");
  }
}

namespace {

// |1+h|^p - 1 - p h.
double binomial_remainder(double h, double p) {
  if (std::abs(h) < 0.1 && std::abs(h) * std::max(p, 1.0) < 0.5) {
    double coeff = p * (p - 1.0) / 2.0;
    double power = h * h;
    double sum = 0.0;
    for (int k = 2; k < 80; ++k) {
      const double term = coeff * power;
      sum += term;
      if (std::abs(term) <= 1e-18 * std::abs(sum)) break;
      coeff *= (p - k) / (k + 1.0);
      power *= h;
    }
    return sum;
  }
  if (1.0 + h > 0.0) return std::expm1(p * std::log1p(h)) - p * h;
  return std::pow(std::abs(1.0 + h), p) - 1.0 - p * h;
}

// (1+t) log(1+t) - t for t >= -1.
double entropy_remainder(double t) {
  if (t == -1.0) return 1.0;
  if (std::abs(t) < 0.1) {
    double power = t * t;
    double sum = 0.0;
    for (int k = 2; k < 60; ++k) {
      const double term = (k % 2 == 0 ? 1.0 : -1.0) * power / (k * (k - 1.0));
      sum += term;
      if (std::abs(term) <= 1e-18 * std::abs(sum)) break;
      power *= t;
    }
    return sum;
  }
  return (1.0 + t) * std::log1p(t) - t;
}

// Mean-centred representation f = m (1 + h) is usable.
bool centred_ok(const NodalFn& f, double m) {
  const double amax = f.values().cwiseAbs().maxCoeff();
  return m != 0.0 && amax < 1e3 * std::abs(m);
}

}  // namespace

double norm_gap(const NodalFn& f, double p) {
  if (!(p >= 1.0)) throw DomainError("norm gap needs p >= 1");
  const auto& w = f.rule()->weights;
  const double m = integrate(f);
  if (!centred_ok(f, m)) {
    const double np = lp_norm(f, p);
    return np * np - w.dot(f.values().cwiseAbs2());
  }
  const Eigen::VectorXd h = f.values() / m - Eigen::VectorXd::Ones(f.size());
  double eta = 0.0, rem = 0.0, h2 = 0.0;
  for (int i = 0; i < h.size(); ++i) {
    eta += w[i] * h[i];
    rem += w[i] * binomial_remainder(h[i], p);
    h2 += w[i] * h[i] * h[i];
  }
  const double e = p * eta + rem;
  return m * m * (std::expm1((2.0 / p) * std::log1p(e)) - 2.0 * eta - h2);
}

double l2_entropy(const NodalFn& f) {
  const auto& w = f.rule()->weights;
  const double m = integrate(f);
  if (!centred_ok(f, m)) {
    const double s = w.dot(f.values().cwiseAbs2());
    if (s == 0.0) return 0.0;
    double acc = 0.0;
    for (int i = 0; i < f.size(); ++i) {
      const double v2 = f.values()[i] * f.values()[i];
      if (v2 > 0.0) acc += w[i] * v2 * std::log(v2 / s);
    }
    return acc;
  }
  double tmean = 0.0, rem = 0.0;
  for (int i = 0; i < f.size(); ++i) {
    const double h = f.values()[i] / m - 1.0;
    const double t = h * (2.0 + h);
    tmean += w[i] * t;
    rem += w[i] * entropy_remainder(t);
  }
  return m * m * (rem - entropy_remainder(tmean));
}

double quotient_Qp(const NodalFn& f, const Exponent& p, const Basis& basis) {
  if (p.p() == 2.0) throw DomainError("quotient_Qp is undefined at p = 2; use logsob_ratio");
  const double l2 = integrate(f.with_values(f.values().cwiseAbs2()));
  const double gap = norm_gap(f, p.p());
  if (!(std::abs(gap) >= 1e-13 * l2)) throw ConstantInput("quotient of a (numerically) constant function");
  const double energy = dirichlet_energy(to_spectral(f, basis));
  return (p.p() - 2.0) / p.dim() * energy / gap;
}

double logsob_ratio(const NodalFn& f, const Basis& basis) {
  const double l2 = integrate(f.with_values(f.values().cwiseAbs2()));
  if (l2 == 0.0) throw ConstantInput("log-Sobolev ratio of the zero function");
  const double ent = l2_entropy(f);
  if (!(std::abs(ent) >= 1e-13 * l2)) throw ConstantInput("log-Sobolev ratio of a (numerically) constant function");
  return 2.0 / basis.dim() * dirichlet_energy(to_spectral(f, basis)) / ent;
}

double onofri_deficit(const NodalFn& v, const Basis& basis) {
  const double d = basis.dim();
  if (d > 2.0) throw DomainError("the exponential inequality is stated for d <= 2");
  const double mean = integrate(v);
  const Eigen::VectorXd shifted = (v.values().array() - mean).unaryExpr([](double s) { return std::expm1(s); });
  const double excess = v.rule()->weights.dot(shifted);
  return dirichlet_energy(to_spectral(v, basis)) / (2.0 * d) - std::log1p(excess);
}

double entropy_F(const NodalFn& g, const Exponent& p) {
  require_positive(g, "g");
  const NodalFn f = g.with_values(g.values().array().pow(1.0 / p.p()));
  if (p.p() == 2.0) return p.dim() / 2.0 * l2_entropy(f);
  return p.dim() * norm_gap(f, p.p()) / (p.p() - 2.0);
}

double fisher_I(const NodalFn& g, const Exponent& p, const Basis& basis) {
  require_positive(g, "g");
  const NodalFn f = g.with_values(g.values().array().pow(1.0 / p.p()));
  return dirichlet_energy(to_spectral(f, basis));
}

NodalFn el_residual(const NodalFn& f, const Exponent& p, const Basis& basis) {
  if (p.p() == 2.0) throw DomainError("Euler-Lagrange residual is defined for p != 2");
  require_positive(f, "f");
  const NodalFn u = f.with_values(f.values() / lp_norm(f, p.p()));
  const NodalFn lu = apply_L(u, basis);
  Eigen::VectorXd r = -(p.p() - 2.0) / p.dim() * lu.values() + u.values();
  r.array() -= u.values().array().pow(p.p() - 1.0);
  return f.with_values(std::move(r));
}

double fisher_form(const NodalFn& f, const Exponent& p, const Basis& basis) {
  require_positive(f, "f");
  const SpectralFn s = to_spectral(f, basis);
  const Eigen::VectorXd& lam = basis.eigenvalues();
  const Eigen::VectorXd l_coeffs = -lam.cwiseProduct(s.coeffs);
  const double ll = l_coeffs.squaredNorm();
  const double fl = -dirichlet_energy(s);

  const Eigen::VectorXd df = basis.first_derivatives() * s.coeffs;
  const Eigen::VectorXd lf = basis.values() * l_coeffs;
  const auto& x = f.nodes();
  const auto& w = f.rule()->weights;
  double cross = 0.0;
  for (int i = 0; i < f.size(); ++i) {
    cross += w[i] * df[i] * df[i] / f.values()[i] * (1.0 - x[i] * x[i]) * lf[i];
  }
  return ll + (p.p() - 1.0) * cross + p.dim() * fl;
}

}  // namespace sharpsphere
