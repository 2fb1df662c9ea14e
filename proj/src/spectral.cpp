#include "sharpsphere/spectral.hpp"

#include <cmath>
#include <string>

namespace sharpsphere {

double eigenvalue(int k, double d) {
  if (k < 0) throw DomainError("eigenvalue index must be >= 0");
  return static_cast<double>(k) * (d + k - 1.0);
}

double SpectralFn::tail_fraction() const {
  const int m = static_cast<int>(coeffs.size());
  if (m <= 1) return 0.0;
  const int top = std::max(1, static_cast<int>(std::ceil(0.1 * m)));
  const double total = coeffs.squaredNorm();
  if (total == 0.0) return 0.0;
  return coeffs.tail(top).squaredNorm() / total;
}

Basis::Basis(int K, RulePtr rule) : K_(K), rule_(std::move(rule)) {
  const int n = rule_->n;
  const double d = rule_->d.value();
  beta_.resize(K_ + 2);
  beta_[0] = 0.0;
  for (int k = 1; k <= K_ + 1; ++k) beta_[k] = recurrence_coefficient(k, d);

  lambda_.resize(K_ + 1);
  for (int k = 0; k <= K_; ++k) lambda_[k] = eigenvalue(k, d);

  v0_.resize(n, K_ + 1);
  v1_.resize(n, K_ + 1);
  v2_.resize(n, K_ + 1);
  for (int i = 0; i < n; ++i) {
    const BasisJet j = jet(rule_->nodes[i]);
    v0_.row(i) = j.value.transpose();
    v1_.row(i) = j.first.transpose();
    v2_.row(i) = j.second.transpose();
  }
  projector_ = v0_.transpose() * rule_->weights.asDiagonal();
}

std::shared_ptr<const Basis> Basis::build(int K, RulePtr rule) {
  if (!rule) throw DimensionMismatch("basis needs a quadrature rule");
  if (K < 1) throw DomainError("basis degree must be >= 1");
  if (2 * K > rule->n) {
    throw DegreeOverflow("degree K=" + std::to_string(K) + " exceeds n/2 for n=" + std::to_string(rule->n));
  }
  return std::shared_ptr<const Basis>(new Basis(K, std::move(rule)));
}

BasisPtr make_basis(double d, int K, int n) { return Basis::build(K, make_rule(d, n)); }

BasisJet Basis::jet(double x) const {
  BasisJet j{Eigen::VectorXd(K_ + 1), Eigen::VectorXd(K_ + 1), Eigen::VectorXd(K_ + 1)};
  j.value[0] = 1.0;
  j.first[0] = 0.0;
  j.second[0] = 0.0;
  j.value[1] = x / beta_[1];
  j.first[1] = 1.0 / beta_[1];
  j.second[1] = 0.0;
  for (int k = 1; k < K_; ++k) {
    const double b = beta_[k + 1];
    j.value[k + 1] = (x * j.value[k] - beta_[k] * j.value[k - 1]) / b;
    j.first[k + 1] = (j.value[k] + x * j.first[k] - beta_[k] * j.first[k - 1]) / b;
    j.second[k + 1] = (2.0 * j.first[k] + x * j.second[k] - beta_[k] * j.second[k - 1]) / b;
  }
  return j;
}

Eigen::MatrixXd Basis::gram() const { return projector_ * v0_; }

Eigen::VectorXd Basis::project(const Eigen::VectorXd& nodal) const {
  if (nodal.size() != rule_->n) throw DimensionMismatch("nodal vector does not match basis rule");
  return projector_ * nodal;
}

Eigen::VectorXd Basis::synthesize(const Eigen::VectorXd& coeffs) const {
  if (coeffs.size() != K_ + 1) throw DimensionMismatch("coefficient vector does not match basis degree");
  return v0_ * coeffs;
}

SpectralFn to_spectral(const NodalFn& f, const Basis& basis) {
  require_same_rule(*f.rule(), *basis.rule());
  return {Dim(basis.dim()), basis.project(f.values())};
}

NodalFn to_nodal(const SpectralFn& f, const Basis& basis) {
  if (f.d.value() != basis.dim()) throw DimensionMismatch("spectral function has a different dimension");
  return {basis.rule(), basis.synthesize(f.coeffs)};
}

NodalFn derivative(const NodalFn& f, const Basis& basis) {
  const SpectralFn s = to_spectral(f, basis);
  return {basis.rule(), basis.first_derivatives() * s.coeffs};
}

NodalFn second_derivative(const NodalFn& f, const Basis& basis) {
  const SpectralFn s = to_spectral(f, basis);
  return {basis.rule(), basis.second_derivatives() * s.coeffs};
}

SpectralFn apply_L(const SpectralFn& f) {
  SpectralFn out = f;
  for (int k = 0; k < out.coeffs.size(); ++k) out.coeffs[k] *= -eigenvalue(k, f.d.value());
  return out;
}

NodalFn apply_L(const NodalFn& f, const Basis& basis) { return to_nodal(apply_L(to_spectral(f, basis)), basis); }

bool is_resolved(const NodalFn& f, const Basis& basis) { return to_spectral(f, basis).resolved(); }

SpectralFn heat_semigroup(const SpectralFn& f, double t) {
  if (!(t >= 0.0)) throw DomainError("heat semigroup needs t >= 0");
  SpectralFn out = f;
  for (int k = 1; k < out.coeffs.size(); ++k) out.coeffs[k] *= std::exp(-eigenvalue(k, f.d.value()) * t);
  return out;
}

double dirichlet_energy(const SpectralFn& f) {
  double e = 0.0;
  for (int k = 1; k < f.coeffs.size(); ++k) e += eigenvalue(k, f.d.value()) * f.coeffs[k] * f.coeffs[k];
  return e;
}

PointJet evaluate(const SpectralFn& f, const Basis& basis, double x) {
  if (f.coeffs.size() != basis.max_degree() + 1) throw DimensionMismatch("coefficient vector does not match basis degree");
  const BasisJet j = basis.jet(x);
  return {j.value.dot(f.coeffs), j.first.dot(f.coeffs), j.second.dot(f.coeffs)};
}

}  // namespace sharpsphere
