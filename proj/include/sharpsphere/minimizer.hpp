#pragma once

/**
 * @file minimizer.hpp
 * @brief Direct minimisation of the interpolation quotient over non-constant
 * functions, and the perturbation family 1 + eps x that saturates it.
 *
 * The search runs over polynomials of degree <= K (the basis degree), so the
 * numerator and the norms see the same function. Each iterate is rescaled to
 * ||f||_p = 1; the descent direction is the gradient preconditioned by
 * max(1, lambda_k / d) and the step comes from a halving line search starting
 * at 0.5. Minimising sequences drift towards constants, where the quotient
 * degenerates to 0/0, so termination is on stagnation of the value. A start
 * whose non-constant part falls below 1e-3 of its mean is restarted (at most
 * twice) from a fresh random start within the same iteration budget.
 */

#include <cstdint>
#include <vector>

#include "sharpsphere/functionals.hpp"
#include "sharpsphere/spectral.hpp"

namespace sharpsphere {

struct MinimizeOptions {
  int starts = 8;
  std::uint64_t seed = 0;
  int max_iterations = 4000;
  int stagnation_window = 50;
  double stagnation_tolerance = 1e-10;
  double gradient_tolerance = 1e-6;
  double start_amplitude = 0.3;
  int start_modes = 6;
};

struct MinimizeResult {
  double p;
  double d;
  double best_value;
  NodalFn argmin;  // normalised to ||argmin||_p = 1
  int starts;
  bool converged;  // false after the iteration cap or a collapse onto constants
  double gradient_norm;  // tangent to the ||f||_p = 1 manifold
  std::vector<double> start_values;
};

/// p != 2. Outside [1, 2*] the run is permitted but carries no claim.
MinimizeResult minimize_quotient(const Exponent& p, const Basis& basis, const MinimizeOptions& options = {});
/// Same scheme on the log-Sobolev ratio (p = 2).
MinimizeResult minimize_logsob(const Basis& basis, const MinimizeOptions& options = {});

/// Single descent from a given start (coefficients in basis).
MinimizeResult minimize_quotient_from(const Exponent& p, const SpectralFn& start, const Basis& basis,
                                      const MinimizeOptions& options = {});
MinimizeResult minimize_logsob_from(const SpectralFn& start, const Basis& basis, const MinimizeOptions& options = {});

/// Random start 1 + amplitude * sum_{k=1}^{modes} z_k c_k, shrunk until positive.
SpectralFn random_start(const Basis& basis, std::uint64_t seed, int index, double amplitude, int modes);

/// Fixed corpus of `count` random positive polynomials of degree <= min(8, K),
/// each with min/max >= 0.05. Deterministic in seed.
std::vector<NodalFn> random_corpus(const Basis& basis, int count, std::uint64_t seed);

struct SharpnessRow {
  double eps;
  double value;
};

struct SharpnessTable {
  std::vector<SharpnessRow> rows;  // in input order
  bool decreasing;                 // values decrease as eps decreases
  double extrapolated_limit;       // Richardson in eps^2 from the two smallest eps
};

/// Q_p[1 + eps x] for each eps in (0, 0.5]; p = 2 uses the log-Sobolev ratio.
SharpnessTable perturbation_sharpness(const Exponent& p, const std::vector<double>& eps, const Basis& basis);

}  // namespace sharpsphere
