#pragma once

/**
 * @file flows.hpp
 * @brief Entropy / Fisher-information flows and the hypercontractivity experiment.
 *
 * The linear flow dg/dt = L g is integrated exactly on spectral coefficients.
 * Writing g = f^p, the same flow reads
 *
 *     df/dt = L f + (p-1) |f'|^2 (1-x^2) / f,
 *
 * which is time-stepped independently and serves as a cross-check. Along
 * the flow dF/dt = -2 d I, and the decay estimates F(t) <= F(0) e^{-2dt},
 * dI/dt <= -2 d I hold for p <= 2#.
 */

#include <vector>

#include "sharpsphere/functionals.hpp"
#include "sharpsphere/measure.hpp"
#include "sharpsphere/spectral.hpp"

namespace sharpsphere {

struct FlowTrace {
  double p;
  double d;
  std::vector<double> times;
  std::vector<double> F;
  std::vector<double> I;
  std::vector<double> mass;   // int g dnu_d
  std::vector<double> min_g;  // positivity monitor
  bool resolved = true;       // tail-energy test on every sample
};

/// Geometric grid of `samples` points on [0, tmax] (spacing grows by 10% per step).
std::vector<double> geometric_time_grid(double tmax, int samples);
/// Default grid: 40 geometric samples on [0, 5/(2d)].
std::vector<double> default_time_grid(double d, int samples = 40);
std::vector<double> uniform_time_grid(double tmax, int samples);

/// Exact heat flow of g = f0^p. PositivityError if g is not positive at a sample.
FlowTrace run_heat_flow(const NodalFn& f0, const Exponent& p, const std::vector<double>& t_grid,
                        const Basis& basis);

/// The same flow written for f, stepped with Crank-Nicolson on L and
/// Adams-Bashforth on the gradient term. dt is the largest step used.
FlowTrace run_nonlinear_flow(const NodalFn& f0, const Exponent& p, const std::vector<double>& t_grid, double dt,
                             const Basis& basis);

enum class TraceQuantity { Entropy, Fisher };

/// Least-squares slope of log(value) over the second half of [t_begin, t_end].
double decay_rate(const FlowTrace& trace, TraceQuantity which, double t_begin, double t_end);

/// Second-order centred differences of F on a (possibly non-uniform) grid.
/// Entry i is the derivative at times[i + 1].
std::vector<double> entropy_derivative(const FlowTrace& trace);

struct PoincareCheck {
  double mean_derivative;  // int f' dnu_{d+2}
  double lhs;              // int |f''|^2 dnu_{d+4}
  double rhs;              // (d+2) int |f' - mean|^2 dnu_{d+2}
};

/// Auxiliary Poincare step on f (given by coefficients in basis), evaluated
/// with separate Gauss rules at dimensions d+2 and d+4.
PoincareCheck auxiliary_poincare(const SpectralFn& f, const Basis& basis);

struct ImprovedDecayReport {
  double alpha;
  double improved_constant;     // d + alpha (d+2)
  double bound_slope;           // -2 (d + alpha (d+2))
  double fitted_slope;          // fitted decay of I
  double max_mean_derivative;   // max over samples of |int f' dnu_{d+2}|
  double min_poincare_margin;   // min over samples of lhs - rhs
  bool slope_ok;
  bool poincare_ok;
  FlowTrace trace;
};

/// Flow check on antipodally symmetric data. SymmetryError unless f0 is even.
ImprovedDecayReport improved_decay_check(const NodalFn& f0, const Exponent& p, const Basis& basis,
                                         std::vector<double> t_grid = {}, double slope_tolerance = 0.05);

struct HyperReport {
  double p;
  double d;
  double t_star;
  double lhs;             // ||e^{t* L} u||_2 from the spectral identity
  double lhs_quadrature;  // same norm by quadrature
  double rhs_p;           // ||u||_p
  double rhs_2overp;      // ||u||_{2/p}
  double spectral_identity_error;
  bool holds;             // lhs <= rhs_p
};

/// t* with e^{2 d t*} = 1/(p-1).
double hypercontractive_time(double p, double d);

HyperReport hypercontractivity_run(const NodalFn& u, double p, const Basis& basis);

struct BecknerChainReport {
  double p;
  double d;
  double t_star;
  double interpolation_side;  // (||u||_p^2 - ||u||_2^2)/(p-2)
  double semigroup_side;      // (||u||_2^2 - ||f(t*)||_2^2)/(2-p)
  double spectral_bound;      // (1-e^{-2 lambda_1 t*})/((2-p) lambda_1) * sum lambda_k a_k^2
  double dirichlet_side;      // (1/d) int |u'|^2 (1-x^2) dnu_d
  double constant;            // (1-e^{-2 lambda_1 t*})/((2-p) lambda_1)
  bool nelson_link;           // interpolation_side <= semigroup_side
  bool spectral_link;         // semigroup_side <= spectral_bound
  bool constant_link;         // constant == 1/d
  bool all() const { return nelson_link && spectral_link && constant_link; }
  double saturation() const { return interpolation_side / dirichlet_side; }
};

BecknerChainReport beckner_chain_check(const NodalFn& u, double p, const Basis& basis, double slack = 1e-10);

struct GrossReport {
  std::vector<double> times;
  std::vector<double> exponents;  // p(t) = 1 + (p-1) e^{2dt}
  std::vector<double> norms;      // ||f(t)||_{p(t)}
  std::vector<double> brackets;   // Ent(v^2) - (2/d) int |v'|^2 (1-x^2), v = |f|^{p(t)/2}
  bool monotone;
  bool brackets_nonpositive;
  double final_exponent;          // p(t*)
};

/// Evaluates t -> ||e^{tL} u||_{p(t)} on the grid clipped to [0, t*] (t* appended).
GrossReport gross_monotonicity_check(const NodalFn& u, double p, const Basis& basis,
                                     const std::vector<double>& t_grid);

}  // namespace sharpsphere
