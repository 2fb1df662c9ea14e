#include "sharpsphere/measure.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>
#include <utility>

namespace sharpsphere {

Dim::Dim(double d) : d_(d) {
  if (!(d >= 1.0) || !std::isfinite(d)) {
    throw DomainError("dimension must satisfy d >= 1, got " + std::to_string(d));
  }
}

double normalization_constant(double d) {
  Dim dim(d);
  return std::sqrt(std::numbers::pi) *
         std::exp(std::lgamma(dim.value() / 2.0) - std::lgamma((dim.value() + 1.0) / 2.0));
}

double recurrence_coefficient(int k, double d) {
  // beta_1^2 = int x^2 dnu_d; the generic expression is 0/0 at d = 1.
  if (k == 1) return std::sqrt(1.0 / (d + 1.0));
  const double kk = k;
  return std::sqrt(kk * (kk + d - 2.0) / ((2.0 * kk + d - 1.0) * (2.0 * kk + d - 3.0)));
}

namespace {

// Orthonormal p_{n-1}, p_n and p_n' at x.
struct RecurrenceValue {
  double p_prev;
  double p;
  double dp;
};

RecurrenceValue orthonormal_at(double x, int n, const Eigen::VectorXd& beta) {
  double p0 = 1.0, dp0 = 0.0;
  double p1 = x / beta[1], dp1 = 1.0 / beta[1];
  if (n == 1) return {p0, p1, dp1};
  for (int k = 1; k < n; ++k) {
    const double p2 = (x * p1 - beta[k] * p0) / beta[k + 1];
    const double dp2 = (p1 + x * dp1 - beta[k] * dp0) / beta[k + 1];
    p0 = p1;
    dp0 = dp1;
    p1 = p2;
    dp1 = dp2;
  }
  return {p0, p1, dp1};
}

double christoffel_weight(double x, int n, const Eigen::VectorXd& beta) {
  double p0 = 1.0;
  double p1 = x / beta[1];
  double sum = 1.0 + p1 * p1;
  for (int k = 1; k + 1 < n; ++k) {
    const double p2 = (x * p1 - beta[k] * p0) / beta[k + 1];
    sum += p2 * p2;
    p0 = p1;
    p1 = p2;
  }
  return 1.0 / sum;
}

}  // namespace

RulePtr make_rule(double d, int n) {
  Dim dim(d);
  if (n < 2) throw DomainError("quadrature needs n >= 2 nodes, got " + std::to_string(n));

  // beta[k] for k = 1..n; beta[n] is only used by the Newton polish.
  Eigen::VectorXd beta(n + 1);
  beta[0] = 0.0;
  for (int k = 1; k <= n; ++k) beta[k] = recurrence_coefficient(k, d);

  Eigen::VectorXd diag = Eigen::VectorXd::Zero(n);
  Eigen::VectorXd sub = beta.segment(1, n - 1);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver;
  solver.computeFromTridiagonal(diag, sub, Eigen::EigenvaluesOnly);
  Eigen::VectorXd x = solver.eigenvalues();

  // Newton on p_n until the update drops below 1e-14.
  for (int i = 0; i < n; ++i) {
    for (int it = 0; it < 8; ++it) {
      const auto r = orthonormal_at(x[i], n, beta);
      const double step = r.p / r.dp;
      x[i] -= step;
      if (std::abs(step) < 1e-14) break;
    }
  }
  std::sort(x.data(), x.data() + n);

  Eigen::VectorXd w(n);
  for (int i = 0; i < n; ++i) w[i] = christoffel_weight(x[i], n, beta);

  for (int i = 0; i < n / 2; ++i) {
    const int j = n - 1 - i;
    const double xs = 0.5 * (x[j] - x[i]);
    const double ws = 0.5 * (w[i] + w[j]);
    x[i] = -xs;
    x[j] = xs;
    w[i] = ws;
    w[j] = ws;
  }
  if (n % 2 == 1) x[n / 2] = 0.0;
  w /= w.sum();

  return std::make_shared<const QuadratureRule>(QuadratureRule{dim, n, std::move(x), std::move(w)});
}

NodalFn::NodalFn(RulePtr rule, Eigen::VectorXd values) : rule_(std::move(rule)), values_(std::move(values)) {
  if (!rule_) throw DimensionMismatch("nodal function without a quadrature rule");
  if (values_.size() != rule_->n) {
    throw DimensionMismatch("expected " + std::to_string(rule_->n) + " nodal values, got " +
                            std::to_string(values_.size()));
  }
}

NodalFn NodalFn::sample(RulePtr rule, const std::function<double(double)>& fn) {
  Eigen::VectorXd v(rule->n);
  for (int i = 0; i < rule->n; ++i) v[i] = fn(rule->nodes[i]);
  return {std::move(rule), std::move(v)};
}

NodalFn NodalFn::constant(RulePtr rule, double c) {
  const int n = rule->n;
  return {std::move(rule), Eigen::VectorXd::Constant(n, c)};
}

void require_same_rule(const QuadratureRule& a, const QuadratureRule& b) {
  if (&a == &b) return;
  if (a.n != b.n || a.d.value() != b.d.value() || a.nodes != b.nodes) {
    throw DimensionMismatch("functions live on different quadrature rules");
  }
}

double integrate(const NodalFn& f) { return f.rule()->weights.dot(f.values()); }

double lp_norm(const NodalFn& f, double p) {
  if (!(p >= 1.0)) throw DomainError("L^p norm needs p >= 1, got " + std::to_string(p));
  const auto& w = f.rule()->weights;
  const auto a = f.values().cwiseAbs();
  if (p == 1.0) return w.dot(a);
  if (p == 2.0) return std::sqrt(w.dot(a.cwiseAbs2()));
  // Scale by the sup norm so large p cannot overflow.
  const double scale = a.maxCoeff();
  if (scale == 0.0) return 0.0;
  const Eigen::VectorXd r = (a / scale).array().pow(p);
  return scale * std::pow(w.dot(r), 1.0 / p);
}

}  // namespace sharpsphere
