#pragma once

/**
 * @file certificates.hpp
 * @brief Algebraic certificates: critical exponents, the reduced discriminant
 * of the Euler-Lagrange identity, the improved constant, and the pointwise
 * quantity h with its sum-of-squares split.
 *
 * Every closed-form quantity is a template over the scalar so it can be
 * evaluated both in double precision and in exact rational arithmetic.
 */

#include <boost/multiprecision/cpp_int.hpp>

#include <Eigen/Dense>

#include <optional>
#include <tuple>
#include <utility>
#include <string>
#include <vector>

#include "sharpsphere/errors.hpp"
#include "sharpsphere/functionals.hpp"
#include "sharpsphere/measure.hpp"
#include "sharpsphere/spectral.hpp"

namespace sharpsphere {

using Rational = boost::multiprecision::cpp_rational;

/// 2* and 2#; std::nullopt stands for +infinity.
template <class T>
struct CriticalExponents {
  std::optional<T> two_star;
  std::optional<T> two_sharp;
};

template <class T>
CriticalExponents<T> critical_exponents(const T& d) {
  if (d < T(1)) throw DomainError("critical exponents need d >= 1");
  CriticalExponents<T> out;
  if (d > T(2)) out.two_star = T(2) * d / (d - T(2));
  if (d > T(1)) out.two_sharp = (T(2) * d * d + T(1)) / ((d - T(1)) * (d - T(1)));
  return out;
}

template <class T>
struct DiscriminantReportT {
  T p, d, beta;
  T lambda;  // d / ((p-2) beta)
  T a, b, c;
  T A, B;
  T delta;            // b^2 - a c
  T delta_quadratic;  // A beta^2 + B beta + 1
  bool feasible;      // delta < 0
};

using DiscriminantReport = DiscriminantReportT<double>;
using ExactDiscriminantReport = DiscriminantReportT<Rational>;

/// Quadratic coefficients of delta(beta) = A beta^2 + B beta + 1.
template <class T>
std::pair<T, T> discriminant_coefficients(const T& p, const T& d) {
  const T q = (p - T(1)) * (d - T(1)) / (d + T(2));
  const T A = q * q - p + T(2);
  const T B = p - T(3) - d * (p - T(1)) / (d + T(2));
  return {A, B};
}

template <class T>
DiscriminantReportT<T> discriminant(const T& p, const T& d, const T& beta) {
  if (p == T(2)) throw DomainError("discriminant is defined for p != 2");
  if (beta == T(0)) throw DomainError("discriminant needs beta != 0");
  if (d < T(1)) throw DomainError("discriminant needs d >= 1");
  DiscriminantReportT<T> r{};
  r.p = p;
  r.d = d;
  r.beta = beta;
  const T d_over_lambda = (p - T(2)) * beta;
  r.lambda = d / d_over_lambda;
  r.a = T(1);
  r.b = -(beta + d_over_lambda) * (d - T(1)) / (d + T(2));
  r.c = (beta + d_over_lambda) * d / (d + T(2)) + (beta - T(1)) * (T(1) + d_over_lambda);
  r.delta = r.b * r.b - r.a * r.c;
  std::tie(r.A, r.B) = discriminant_coefficients(p, d);
  r.delta_quadratic = r.A * beta * beta + r.B * beta + T(1);
  r.feasible = r.delta < T(0);
  return r;
}

/// A beta with delta(beta) < 0, if one exists (closed-form quadratic analysis).
std::optional<double> find_beta(double p, double d);

/// 1 - (p-1)(d-1)^2 / (d(d+2)).
template <class T>
T alpha_improved(const T& p, const T& d) {
  if (d < T(1)) throw DomainError("alpha needs d >= 1");
  return T(1) - (p - T(1)) * (d - T(1)) * (d - T(1)) / (d * (d + T(2)));
}

/// d + alpha (d+2); DomainError for p > 2#.
double improved_constant(double p, double d);

/// Determinant of the 2x2 form in (f'', |f'|^2/f) underlying h:
///   (p-1) d/(d+2) - (p-1)^2 (d-1)^2/(d+2)^2.
template <class T>
T quadratic_form_determinant(const T& p, const T& d) {
  const T q = (p - T(1)) * (d - T(1)) / (d + T(2));
  return (p - T(1)) * d / (d + T(2)) - q * q;
}

struct SosSplit {
  double alpha;
  double residual_weight;  // (p-1)/(d+2)
};

SosSplit sos_split(double p, double d);

/// h = |f''|^2 + (p-1) d/(d+2) |f'|^4/f^2 - 2 (p-1) (d-1)/(d+2) |f'|^2 f''/f
/// from explicit samples of f, f', f''.
Eigen::VectorXd pointwise_h(const Eigen::VectorXd& f, const Eigen::VectorXd& df, const Eigen::VectorXd& d2f,
                            double p, double d);

/// Same quantity from the sum-of-squares split
///   alpha |f''|^2 + (p-1)/(d+2) |(d-1)/sqrt(d) f'' - sqrt(d) |f'|^2/f|^2.
Eigen::VectorXd sos_reconstruction(const Eigen::VectorXd& f, const Eigen::VectorXd& df, const Eigen::VectorXd& d2f,
                                   double p, double d);

/// Nodal h with spectral derivatives. PositivityError unless f > 0.
NodalFn pointwise_h(const NodalFn& f, const Exponent& p, const Basis& basis);
NodalFn sos_check(const NodalFn& f, const Exponent& p, const Basis& basis);

struct FigureRow {
  double d;
  double two_sharp;
  double two_star;
};

struct FigureTable {
  bool has_two_star;
  std::vector<FigureRow> rows;
};

/// steps equally spaced samples of d in [d_min, d_max], endpoints included.
FigureTable figure_curves(double d_min, double d_max, int steps);

}  // namespace sharpsphere
