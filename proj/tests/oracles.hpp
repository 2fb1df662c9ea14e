#pragma once

// Independent reference computations for the test suites. Nothing here calls
// into the library.

#include <cmath>
#include <functional>
#include <random>
#include <vector>

namespace oracle {

inline constexpr double kPi = 3.14159265358979323846;

/// Z_d = B(1/2, d/2).
inline double normalization(double d) { return std::beta(0.5, d / 2.0); }

/// int x^{2j} dnu_d = prod_{i=1}^{j} (2i-1)/(d+2i-1); odd moments vanish.
inline double moment(int k, double d) {
  if (k % 2 == 1) return 0.0;
  double m = 1.0;
  for (int i = 1; i <= k / 2; ++i) m *= (2.0 * i - 1.0) / (d + 2.0 * i - 1.0);
  return m;
}

/// Polynomial in the monomial basis, c[0] + c[1] x + ...
struct Poly {
  std::vector<double> c;

  double operator()(double x) const {
    double v = 0.0;
    for (auto it = c.rbegin(); it != c.rend(); ++it) v = v * x + *it;
    return v;
  }
  Poly derivative() const {
    Poly out{{}};
    for (std::size_t k = 1; k < c.size(); ++k) out.c.push_back(k * c[k]);
    if (out.c.empty()) out.c.push_back(0.0);
    return out;
  }
  Poly operator*(const Poly& o) const {
    Poly out{std::vector<double>(c.size() + o.c.size() - 1, 0.0)};
    for (std::size_t i = 0; i < c.size(); ++i)
      for (std::size_t j = 0; j < o.c.size(); ++j) out.c[i + j] += c[i] * o.c[j];
    return out;
  }
  Poly operator+(const Poly& o) const {
    Poly out{std::vector<double>(std::max(c.size(), o.c.size()), 0.0)};
    for (std::size_t i = 0; i < c.size(); ++i) out.c[i] += c[i];
    for (std::size_t i = 0; i < o.c.size(); ++i) out.c[i] += o.c[i];
    return out;
  }
};

/// Exact integral of a polynomial against nu_d from the moments.
inline double integrate(const Poly& p, double d) {
  double s = 0.0;
  for (std::size_t k = 0; k < p.c.size(); ++k) s += p.c[k] * moment(static_cast<int>(k), d);
  return s;
}

/// int |p'|^2 (1 - x^2) dnu_d.
inline double dirichlet(const Poly& p, double d) {
  const Poly dp = p.derivative();
  return integrate(dp * dp * Poly{{1.0, 0.0, -1.0}}, d);
}

/// Random polynomial of given degree with min over [-1, 1] at least `floor`
/// (checked on a fine grid, then shifted).
inline Poly random_positive_poly(std::mt19937_64& rng, int degree, double floor) {
  std::normal_distribution<double> z(0.0, 1.0);
  Poly p{std::vector<double>(degree + 1)};
  for (double& v : p.c) v = z(rng) / 2.0;
  double lo = 1e300;
  for (int i = 0; i <= 4000; ++i) lo = std::min(lo, p(-1.0 + i / 2000.0));
  p.c[0] += floor - lo + 0.05;
  return p;
}

/// Orthonormal Legendre polynomials for the uniform probability measure on (-1, 1).
inline double legendre_normalized(int k, double x) {
  double p0 = 1.0, p1 = x;
  if (k == 0) return 1.0;
  for (int n = 1; n < k; ++n) {
    const double p2 = ((2.0 * n + 1.0) * x * p1 - n * p0) / (n + 1.0);
    p0 = p1;
    p1 = p2;
  }
  return std::sqrt(2.0 * k + 1.0) * p1;
}

/// Gauss-Legendre nodes and weights (sum 2) by Newton on the three-term recurrence.
inline void gauss_legendre(int n, std::vector<double>& nodes, std::vector<double>& weights) {
  nodes.assign(n, 0.0);
  weights.assign(n, 0.0);
  for (int i = 0; i < n; ++i) {
    double x = std::cos(kPi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = x;
      for (int k = 1; k < n; ++k) {
        const double p2 = ((2.0 * k + 1.0) * x * p1 - k * p0) / (k + 1.0);
        p0 = p1;
        p1 = p2;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      const double step = p1 / dp;
      x -= step;
      if (std::abs(step) < 1e-16) break;
    }
    nodes[n - 1 - i] = x;
    weights[n - 1 - i] = 2.0 / ((1.0 - x * x) * dp * dp);
  }
}

/// int f dnu_d through x = cos(theta): composite Simpson for
/// int_0^pi f(cos t) sin^{d-1} t dt / Z_d. Accurate for smooth f and d >= 1.
inline double integrate_theta(const std::function<double(double)>& f, double d, int intervals = 20000) {
  const double h = kPi / intervals;
  double s = 0.0;
  for (int i = 0; i <= intervals; ++i) {
    const double t = i * h;
    const double w = (i == 0 || i == intervals) ? 1.0 : (i % 2 ? 4.0 : 2.0);
    const double sn = std::sin(t);
    const double weight = d == 1.0 ? 1.0 : std::pow(sn, d - 1.0);
    s += w * f(std::cos(t)) * weight;
  }
  return s * h / 3.0 / normalization(d);
}

}  // namespace oracle
