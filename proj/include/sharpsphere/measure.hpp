#pragma once

/**
 * @file measure.hpp
 * @brief The ultraspherical probability measure on (-1, 1) and its Gauss rule.
 *
 * For a dimension d >= 1 the measure is
 *
 *     dnu_d(x) = Z_d^{-1} (1 - x^2)^{d/2 - 1} dx,
 *     Z_d      = sqrt(pi) Gamma(d/2) / Gamma((d+1)/2),
 *
 * which is the image of the uniform probability on S^d under xi -> xi_d when
 * d is an integer. Non-integer d is admitted everywhere.
 *
 * Functions are represented by their samples at the Gauss-Jacobi nodes of
 * nu_d (NodalFn). Integrals are the Gauss sums, exact for polynomials of
 * degree <= 2n - 1.
 */

#include <Eigen/Dense>

#include <cstddef>
#include <functional>
#include <memory>

#include "sharpsphere/errors.hpp"

namespace sharpsphere {

/// Dimension parameter d >= 1 (real).
class Dim {
 public:
  explicit Dim(double d);
  double value() const { return d_; }
  operator double() const { return d_; }

 private:
  double d_;
};

/// Default node count for all rules built by the toolkit.
inline constexpr int kDefaultNodes = 64;

struct QuadratureRule {
  Dim d;
  int n;
  Eigen::VectorXd nodes;    // strictly increasing, in (-1, 1)
  Eigen::VectorXd weights;  // positive, sum to 1
};

using RulePtr = std::shared_ptr<const QuadratureRule>;

/// Z_d = sqrt(pi) Gamma(d/2) / Gamma((d+1)/2). Throws DomainError for d < 1.
double normalization_constant(double d);

/// Off-diagonal entry beta_k (k >= 1) of the Jacobi matrix of nu_d, i.e. the
/// coefficient of the orthonormal three-term recurrence
///   x p_k = beta_{k+1} p_{k+1} + beta_k p_{k-1}.
double recurrence_coefficient(int k, double d);

/// Gauss-Jacobi rule for nu_d with n >= 2 nodes (Golub-Welsch, Newton-polished).
RulePtr make_rule(double d, int n = kDefaultNodes);

/// A function sampled at the nodes of a rule.
class NodalFn {
 public:
  NodalFn(RulePtr rule, Eigen::VectorXd values);

  /// Samples fn at the nodes of rule.
  static NodalFn sample(RulePtr rule, const std::function<double(double)>& fn);
  static NodalFn constant(RulePtr rule, double c);

  const RulePtr& rule() const { return rule_; }
  const Eigen::VectorXd& values() const { return values_; }
  const Eigen::VectorXd& nodes() const { return rule_->nodes; }
  double dim() const { return rule_->d.value(); }
  int size() const { return static_cast<int>(values_.size()); }

  /// Same rule, new values.
  NodalFn with_values(Eigen::VectorXd values) const { return {rule_, std::move(values)}; }

  double min() const { return values_.minCoeff(); }
  double max() const { return values_.maxCoeff(); }

 private:
  RulePtr rule_;
  Eigen::VectorXd values_;
};

/// Throws DimensionMismatch unless both functions live on the same nodes.
void require_same_rule(const QuadratureRule& a, const QuadratureRule& b);

/// Gauss sum  sum_i w_i f_i.
double integrate(const NodalFn& f);

/// (int |f|^p dnu_d)^{1/p}; DomainError for p < 1.
double lp_norm(const NodalFn& f, double p);

}  // namespace sharpsphere
