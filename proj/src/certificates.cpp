#include "sharpsphere/certificates.hpp"

#include <cmath>

namespace sharpsphere {

std::optional<double> find_beta(double p, double d) {
  if (p == 2.0) throw DomainError("find_beta is defined for p != 2");
  const auto [A, B] = discriminant_coefficients(p, d);
  const auto delta = [&](double beta) { return (A * beta + B) * beta + 1.0; };
  const auto accept = [&](double beta) -> std::optional<double> {
    if (beta != 0.0 && std::isfinite(beta) && delta(beta) < 0.0) return beta;
    return std::nullopt;
  };

  constexpr double kFlat = 1e-14;
  if (A > kFlat) {
    // Convex parabola: the vertex minimises delta.
    return accept(-B / (2.0 * A));
  }
  if (A < -kFlat) {
    // Concave: delta < 0 outside the roots, which are always real here.
    const double s = std::sqrt(B * B - 4.0 * A);
    const double r1 = (-B + s) / (2.0 * A);
    const double r2 = (-B - s) / (2.0 * A);
    const double upper = std::max(r1, r2);
    return accept(upper + std::max(1.0, std::abs(upper)));
  }
  if (B != 0.0) return accept(-2.0 / B);
  return std::nullopt;
}

double improved_constant(double p, double d) {
  if (p > two_sharp(d)) throw DomainError("improved constant requires p <= 2#");
  return d + alpha_improved(p, d) * (d + 2.0);
}

SosSplit sos_split(double p, double d) { return {alpha_improved(p, d), (p - 1.0) / (d + 2.0)}; }

Eigen::VectorXd pointwise_h(const Eigen::VectorXd& f, const Eigen::VectorXd& df, const Eigen::VectorXd& d2f,
                            double p, double d) {
  const double quartic = (p - 1.0) * d / (d + 2.0);
  const double mixed = 2.0 * (p - 1.0) * (d - 1.0) / (d + 2.0);
  Eigen::VectorXd h(f.size());
  for (int i = 0; i < f.size(); ++i) {
    const double y = df[i] * df[i] / f[i];
    h[i] = d2f[i] * d2f[i] + quartic * y * y - mixed * y * d2f[i];
  }
  return h;
}

Eigen::VectorXd sos_reconstruction(const Eigen::VectorXd& f, const Eigen::VectorXd& df, const Eigen::VectorXd& d2f,
                                   double p, double d) {
  const SosSplit split = sos_split(p, d);
  const double sd = std::sqrt(d);
  Eigen::VectorXd h(f.size());
  for (int i = 0; i < f.size(); ++i) {
    const double y = df[i] * df[i] / f[i];
    const double r = (d - 1.0) / sd * d2f[i] - sd * y;
    h[i] = split.alpha * d2f[i] * d2f[i] + split.residual_weight * r * r;
  }
  return h;
}

namespace {

struct Jet {
  Eigen::VectorXd df;
  Eigen::VectorXd d2f;
};

Jet spectral_jet(const NodalFn& f, const Basis& basis) {
  const SpectralFn s = to_spectral(f, basis);
  return {basis.first_derivatives() * s.coeffs, basis.second_derivatives() * s.coeffs};
}

}  // namespace

NodalFn pointwise_h(const NodalFn& f, const Exponent& p, const Basis& basis) {
  require_positive(f, "f");
  const Jet j = spectral_jet(f, basis);
  return f.with_values(pointwise_h(f.values(), j.df, j.d2f, p.p(), p.dim()));
}

NodalFn sos_check(const NodalFn& f, const Exponent& p, const Basis& basis) {
  require_positive(f, "f");
  const Jet j = spectral_jet(f, basis);
  return f.with_values(sos_reconstruction(f.values(), j.df, j.d2f, p.p(), p.dim()));
}

FigureTable figure_curves(double d_min, double d_max, int steps) {
  if (!(d_max > d_min)) throw DomainError("figure range is empty");
  if (d_min < 1.0) throw DomainError("figure range needs d >= 1");
  if (steps < 2) throw DomainError("figure needs at least 2 steps");
  FigureTable table{d_min > 2.0, {}};
  table.rows.reserve(steps);
  for (int i = 0; i < steps; ++i) {
    const double d = i + 1 == steps ? d_max : d_min + (d_max - d_min) * i / (steps - 1);
    table.rows.push_back({d, two_sharp(d), two_star(d)});
  }
  return table;
}

}  // namespace sharpsphere
