#pragma once

/**
 * @file functionals.hpp
 * @brief Scalar functionals of the interpolation family on (nu_d, L).
 *
 * With D[f] = int |f'|^2 (1-x^2) dnu_d:
 *
 *   Q_p[f]      = ((p-2)/d) D[f] / (||f||_p^2 - ||f||_2^2)          p != 2
 *   Q_2[f]      = (2/d) D[f] / int f^2 log(f^2/||f||_2^2)            (limit p -> 2)
 *   F[g]        = d (||g||_1^{2/p} - ||g^{2/p}||_1) / (p-2),  g = f^p
 *   I[g]        = D[g^{1/p}]
 *
 * The theorem-level claims are Q_p >= 1 for p in [1, 2*] and F <= I.
 */

#include <Eigen/Dense>

#include <cmath>
#include <limits>

#include "sharpsphere/measure.hpp"
#include "sharpsphere/spectral.hpp"

namespace sharpsphere {

/// Sobolev exponent 2* = 2d/(d-2) for d > 2, +inf otherwise.
double two_star(double d);
/// 2# = (2d^2+1)/(d-1)^2 for d > 1, +inf otherwise.
double two_sharp(double d);

/// Scans over p cap an infinite 2* at this value.
inline constexpr double kUnboundedExponentCap = 20.0;

enum class Regime { Subcritical, Critical, Beyond };

/// Exponent p >= 1 together with the dimension it is paired with.
class Exponent {
 public:
  Exponent(double p, double d);

  double p() const { return p_; }
  double dim() const { return d_.value(); }
  double critical() const { return two_star(d_.value()); }
  double flow_limit() const { return two_sharp(d_.value()); }
  bool critical_unbounded() const { return !std::isfinite(critical()); }

  Regime regime() const;
  bool flow_admissible() const { return p_ <= flow_limit(); }
  /// p in [1, 2*] (p <= 20 when 2* is infinite).
  bool in_theorem_range() const;

 private:
  double p_;
  Dim d_;
};

/// Positivity threshold used by every functional needing f > 0.
inline constexpr double kPositivityRatio = 1e-12;

/// Throws PositivityError unless min f > kPositivityRatio * max f.
void require_positive(const NodalFn& f, const char* what);

/// ||f||_p^2 - ||f||_2^2, evaluated around the mean of f so that the
/// second-order cancellation near constants does not lose digits.
double norm_gap(const NodalFn& f, double p);

/// int f^2 log(f^2 / ||f||_2^2) dnu_d, cancellation-free near constants.
double l2_entropy(const NodalFn& f);

double quotient_Qp(const NodalFn& f, const Exponent& p, const Basis& basis);
double logsob_ratio(const NodalFn& f, const Basis& basis);
double onofri_deficit(const NodalFn& v, const Basis& basis);

/// Entropy F[g]; p = 2 evaluates the limit (d/2) int g log(g / ||g||_1).
double entropy_F(const NodalFn& g, const Exponent& p);
double fisher_I(const NodalFn& g, const Exponent& p, const Basis& basis);

/// -((p-2)/d) L f + f - f^{p-1}, after rescaling f to ||f||_p = 1.
NodalFn el_residual(const NodalFn& f, const Exponent& p, const Basis& basis);

/// <Lf, Lf> + (p-1) <(|f'|^2/f)(1-x^2), Lf> + d <f, Lf>.
double fisher_form(const NodalFn& f, const Exponent& p, const Basis& basis);

}  // namespace sharpsphere
