#pragma once

/**
 * @file spectral.hpp
 * @brief Orthonormal Gegenbauer eigenbasis of the ultraspherical operator.
 *
 *     L f = (1 - x^2) f'' - d x f'
 *
 * is self-adjoint on L^2(nu_d) with <f, L g> = -int f' g' (1-x^2) dnu_d. Its
 * eigenfunctions are the Gegenbauer polynomials; we use the L^2(nu_d)
 * orthonormal family c_0 = 1, c_1 = sqrt(d+1) x, ... generated by the
 * three-term recurrence, with L c_k = -k(d+k-1) c_k.
 *
 * L and the heat semigroup e^{tL} act diagonally on coefficients, so identities
 * between them hold to rounding on the resolved subspace (degree <= K).
 */

#include <Eigen/Dense>

#include <memory>

#include "sharpsphere/measure.hpp"

namespace sharpsphere {

/// lambda_k = k (d + k - 1).
double eigenvalue(int k, double d);

/// Fraction of the coefficient energy above which a function counts as
/// under-resolved (top 10% of the modes).
inline constexpr double kTailEnergyLimit = 1e-8;

/// Coordinates in the orthonormal eigenbasis {c_0 .. c_K}.
struct SpectralFn {
  Dim d;
  Eigen::VectorXd coeffs;

  int degree() const { return static_cast<int>(coeffs.size()) - 1; }
  /// Energy share of the top 10% of the modes.
  double tail_fraction() const;
  bool resolved() const { return tail_fraction() <= kTailEnergyLimit; }
};

/// Values, first and second derivatives of c_k at one point.
struct BasisJet {
  Eigen::VectorXd value;
  Eigen::VectorXd first;
  Eigen::VectorXd second;
};

class Basis {
 public:
  /// Orthonormal basis of degree <= K on rule. Throws DegreeOverflow if K > n/2.
  static std::shared_ptr<const Basis> build(int K, RulePtr rule);

  double dim() const { return rule_->d.value(); }
  int max_degree() const { return K_; }
  const RulePtr& rule() const { return rule_; }
  const Eigen::VectorXd& eigenvalues() const { return lambda_; }

  /// n x (K+1) matrices of c_k, c_k', c_k'' at the nodes.
  const Eigen::MatrixXd& values() const { return v0_; }
  const Eigen::MatrixXd& first_derivatives() const { return v1_; }
  const Eigen::MatrixXd& second_derivatives() const { return v2_; }

  /// Gram matrix <c_j, c_k> under the quadrature.
  Eigen::MatrixXd gram() const;

  /// c_k, c_k', c_k'' at an arbitrary x (used to move a function to other rules).
  BasisJet jet(double x) const;

  Eigen::VectorXd project(const Eigen::VectorXd& nodal) const;
  Eigen::VectorXd synthesize(const Eigen::VectorXd& coeffs) const;

 private:
  Basis(int K, RulePtr rule);

  int K_;
  RulePtr rule_;
  Eigen::VectorXd beta_;
  Eigen::VectorXd lambda_;
  Eigen::MatrixXd v0_, v1_, v2_;
  Eigen::MatrixXd projector_;  // V^T diag(w)
};

using BasisPtr = std::shared_ptr<const Basis>;

/// Convenience: rule with n nodes at dimension d and a basis of degree K on it.
BasisPtr make_basis(double d, int K, int n = kDefaultNodes);

SpectralFn to_spectral(const NodalFn& f, const Basis& basis);
NodalFn to_nodal(const SpectralFn& f, const Basis& basis);

/// Spectral derivatives (exact for polynomials of degree <= K).
NodalFn derivative(const NodalFn& f, const Basis& basis);
NodalFn second_derivative(const NodalFn& f, const Basis& basis);

/// L f = sum -lambda_k a_k c_k.
NodalFn apply_L(const NodalFn& f, const Basis& basis);
SpectralFn apply_L(const SpectralFn& f);

/// True when f's projection passes the tail-energy test.
bool is_resolved(const NodalFn& f, const Basis& basis);

/// e^{tL} f: a_k -> a_k e^{-lambda_k t}. DomainError for t < 0.
SpectralFn heat_semigroup(const SpectralFn& f, double t);

/// int |f'|^2 (1-x^2) dnu_d = sum lambda_k a_k^2.
double dirichlet_energy(const SpectralFn& f);

/// Value of f and its first two derivatives at x.
struct PointJet {
  double value;
  double first;
  double second;
};
PointJet evaluate(const SpectralFn& f, const Basis& basis, double x);

}  // namespace sharpsphere
