#include <doctest.h>

#include "oracles.hpp"
#include "sharpsphere/certificates.hpp"
#include "sharpsphere/flows.hpp"

using namespace sharpsphere;

namespace {

NodalFn linear(const Basis& b, double eps) {
  return NodalFn::sample(b.rule(), [eps](double x) { return 1 + eps * x; });
}

NodalFn mode(const Basis& b, int k, double eps) {
  return NodalFn(b.rule(), (Eigen::VectorXd::Ones(b.rule()->n) + eps * b.values().col(k)).eval());
}

// Largest relative error of the centred difference of F against -2 d I.
double production_error(const FlowTrace& tr) {
  const std::vector<double> dF = entropy_derivative(tr);
  double worst = 0.0;
  for (std::size_t i = 0; i < dF.size(); ++i) {
    const double target = -2.0 * tr.d * tr.I[i + 1];
    worst = std::max(worst, std::abs(dF[i] - target) / std::abs(target));
  }
  return worst;
}

}  // namespace

TEST_CASE("time grids") {
  const std::vector<double> g = default_time_grid(3.0);
  REQUIRE(g.size() == 40);
  CHECK(g.front() == 0.0);
  CHECK(g.back() == doctest::Approx(5.0 / 6.0).epsilon(1e-15));
  for (std::size_t i = 2; i < g.size(); ++i) {
    CHECK((g[i] - g[i - 1]) / (g[i - 1] - g[i - 2]) == doctest::Approx(1.1).epsilon(1e-9));
  }
  const std::vector<double> u = uniform_time_grid(1.0, 11);
  CHECK(u[5] == doctest::Approx(0.5));
  CHECK_THROWS_AS(geometric_time_grid(-1.0, 10), DomainError);
  CHECK_THROWS_AS(uniform_time_grid(1.0, 1), DomainError);
}

TEST_CASE("constants are stationary") {
  const BasisPtr b = make_basis(3.0, 20, 64);
  const Exponent p(4.0, 3.0);
  const NodalFn one = NodalFn::constant(b->rule(), 1.0);
  for (const FlowTrace& tr : {run_heat_flow(one, p, default_time_grid(3.0), *b),
                              run_nonlinear_flow(one, p, default_time_grid(3.0), 1e-3, *b)}) {
    for (std::size_t i = 0; i < tr.times.size(); ++i) {
      CHECK(std::abs(tr.F[i]) < 1e-15);
      CHECK(std::abs(tr.I[i]) < 1e-20);
      CHECK(tr.mass[i] == doctest::Approx(1.0).epsilon(1e-14));
    }
  }
}

TEST_CASE("entropy decay along the heat flow") {
  const BasisPtr b = make_basis(3.0, 20, 64);
  const Exponent p(4.0, 3.0);
  const FlowTrace tr = run_heat_flow(linear(*b, 0.1), p, default_time_grid(3.0), *b);
  CHECK(tr.resolved);
  for (std::size_t i = 0; i < tr.times.size(); ++i) {
    CHECK(tr.F[i] <= tr.F[0] * std::exp(-6.0 * tr.times[i]) * (1 + 1e-9));
    CHECK(tr.F[i] >= 0.0);
    CHECK(tr.I[i] >= 0.0);
    CHECK(tr.min_g[i] > 0.0);
    CHECK(std::abs(tr.mass[i] - tr.mass[0]) < 1e-12 * tr.mass[0]);
    CHECK(tr.F[i] <= tr.I[i] * (1 + 1e-9));
    if (i > 0) {
      CHECK(tr.F[i] <= tr.F[i - 1]);
      CHECK(tr.I[i] <= tr.I[i - 1]);
    }
  }
}

TEST_CASE("entropy production identity and its refinement") {
  const BasisPtr b = make_basis(3.0, 20, 64);
  const Exponent p(4.0, 3.0);
  const NodalFn f0 = linear(*b, 0.1);
  const double coarse = production_error(run_heat_flow(f0, p, uniform_time_grid(5.0 / 6.0, 101), *b));
  const double fine = production_error(run_heat_flow(f0, p, uniform_time_grid(5.0 / 6.0, 201), *b));
  CHECK(fine < 1e-2);
  CHECK(fine <= coarse / 2);
}

TEST_CASE("heat flow rejects non-positive data and bad grids") {
  const BasisPtr b = make_basis(3.0, 20, 64);
  const Exponent p(4.0, 3.0);
  CHECK_THROWS_AS(run_heat_flow(linear(*b, 1.5), p, default_time_grid(3.0), *b), PositivityError);
  CHECK_THROWS_AS(run_heat_flow(linear(*b, 0.1), p, {0.1, 0.2}, *b), DomainError);
  CHECK_THROWS_AS(run_heat_flow(linear(*b, 0.1), p, {0.0, 0.2, 0.1}, *b), DomainError);
}

TEST_CASE("nonlinear flow reproduces the heat flow") {
  const BasisPtr b = make_basis(3.0, 20, 64);
  for (double pv : {4.0, 1.5, 3.0}) {
    const Exponent p(pv, 3.0);
    const std::vector<double> grid = default_time_grid(3.0, 20);
    const FlowTrace exact = run_heat_flow(linear(*b, 0.1), p, grid, *b);
    const FlowTrace stepped = run_nonlinear_flow(linear(*b, 0.1), p, grid, 1e-3, *b);
    REQUIRE(stepped.times.size() == exact.times.size());
    for (std::size_t i = 0; i < grid.size(); ++i) {
      CHECK(std::abs(stepped.F[i] - exact.F[i]) < 1e-6);
      CHECK(std::abs(stepped.I[i] - exact.I[i]) < 1e-6);
    }
  }
  CHECK_THROWS_AS(run_nonlinear_flow(linear(*b, 0.1), Exponent(4.0, 3.0), default_time_grid(3.0), 0.0, *b),
                  DomainError);
}

TEST_CASE("asymptotic decay rates follow the spectrum") {
  for (double d : {1.0, 2.0, 3.0, 5.0}) {
    const BasisPtr b = make_basis(d, 20, 64);
    const Exponent p(std::min(4.0, two_sharp(d)), d);
    const std::vector<double> grid = default_time_grid(d);
    const double r1 = decay_rate(run_heat_flow(mode(*b, 1, 1e-3), p, grid, *b), TraceQuantity::Fisher, 0, grid.back());
    CHECK(r1 == doctest::Approx(-2 * d).epsilon(0.01));
    const double r2 = decay_rate(run_heat_flow(mode(*b, 2, 1e-3), p, grid, *b), TraceQuantity::Fisher, 0, grid.back());
    CHECK(r2 == doctest::Approx(-4 * (d + 1)).epsilon(0.01));
  }
}

TEST_CASE("decay of F and I on admissible exponents") {
  for (double d : {2.0, 3.0, 5.0}) {
    const BasisPtr b = make_basis(d, 20, 64);
    for (double pv : {1.5, 2.0, 3.0, two_sharp(d)}) {
      const Exponent p(pv, d);
      const std::vector<double> grid = default_time_grid(d);
      const FlowTrace tr = run_heat_flow(linear(*b, 0.2), p, grid, *b);
      CHECK(decay_rate(tr, TraceQuantity::Fisher, 0, grid.back()) <= -2 * d + 0.01);
      CHECK(decay_rate(tr, TraceQuantity::Entropy, 0, grid.back()) <= -2 * d + 0.01);
      for (std::size_t i = 0; i < tr.times.size(); i += 4) {
        const NodalFn g = to_nodal(heat_semigroup(to_spectral(linear(*b, 0.2).with_values(
                                                                  linear(*b, 0.2).values().array().pow(pv)),
                                                              *b),
                                                  tr.times[i]),
                                   *b);
        const NodalFn f = g.with_values(g.values().array().pow(1 / pv));
        CHECK(fisher_form(f, p, *b) >= -1e-9);
      }
    }
  }
}

TEST_CASE("p = 2 limit: log-entropy decays at rate 2d") {
  for (double d : {1.0, 3.0}) {
    const BasisPtr b = make_basis(d, 20, 64);
    const std::vector<double> grid = default_time_grid(d);
    const FlowTrace tr = run_heat_flow(mode(*b, 1, 1e-3), Exponent(2.0, d), grid, *b);
    CHECK(decay_rate(tr, TraceQuantity::Entropy, 0, grid.back()) == doctest::Approx(-2 * d).epsilon(0.02));
  }
}

TEST_CASE("decay_rate window errors") {
  const BasisPtr b = make_basis(3.0, 20, 64);
  const FlowTrace tr = run_heat_flow(linear(*b, 0.1), Exponent(4.0, 3.0), default_time_grid(3.0), *b);
  CHECK_THROWS_AS(decay_rate(tr, TraceQuantity::Fisher, 5.0, 6.0), EmptyWindow);
}

TEST_CASE("improved decay for even data") {
  const BasisPtr b = make_basis(3.0, 20, 64);
  const NodalFn f0 = NodalFn::sample(b->rule(), [](double x) { return 1 + 1e-3 * (x * x - 0.25); });
  const ImprovedDecayReport r = improved_decay_check(f0, Exponent(2.0, 3.0), *b);
  CHECK(r.alpha == doctest::Approx(11.0 / 15).epsilon(1e-15));
  CHECK(r.bound_slope == doctest::Approx(-40.0 / 3).epsilon(1e-14));
  CHECK(r.max_mean_derivative < 1e-12);
  CHECK(r.slope_ok);
  CHECK(r.fitted_slope == doctest::Approx(-16.0).epsilon(0.01));
  CHECK(r.poincare_ok);

  CHECK_THROWS_AS(improved_decay_check(NodalFn::sample(b->rule(), [](double x) { return 1 + 0.1 * x; }),
                                       Exponent(2.0, 3.0), *b),
                  SymmetryError);
  CHECK_THROWS_AS(improved_decay_check(f0, Exponent(5.0, 3.0), *b), DomainError);
}

TEST_CASE("auxiliary Poincare step on x^2 by shifted moments") {
  for (double d : {1.0, 3.0, 4.0}) {
    const BasisPtr b = make_basis(d, 20, 64);
    const SpectralFn f = to_spectral(NodalFn::sample(b->rule(), [](double x) { return x * x; }), *b);
    const PoincareCheck pc = auxiliary_poincare(f, *b);
    CHECK(std::abs(pc.mean_derivative) < 1e-14);
    CHECK(pc.lhs == doctest::Approx(4.0).epsilon(1e-12));
    CHECK(pc.rhs == doctest::Approx((d + 2) * 4 * oracle::moment(2, d + 2)).epsilon(1e-12));
    CHECK(pc.lhs - pc.rhs > 0.0);

    // Mean of f' under nu_{d+2} equals (d+1) int x f dnu_d.
    const oracle::Poly q{{0.3, -1.0, 0.5, 2.0, 0.1}};
    const SpectralFn fq = to_spectral(NodalFn::sample(b->rule(), [&q](double x) { return q(x); }), *b);
    const double mean = auxiliary_poincare(fq, *b).mean_derivative;
    CHECK(mean == doctest::Approx((d + 1) * oracle::integrate(q * oracle::Poly{{0.0, 1.0}}, d)).epsilon(1e-12));
    CHECK(mean == doctest::Approx(oracle::integrate(q.derivative(), d + 2)).epsilon(1e-12));
  }
}

TEST_CASE("hypercontractivity") {
  CHECK(hypercontractive_time(1.5, 2.0) == doctest::Approx(std::log(2.0) / 4).epsilon(1e-15));
  CHECK_THROWS_AS(hypercontractive_time(2.0, 2.0), DomainError);
  CHECK_THROWS_AS(hypercontractive_time(1.0, 2.0), DomainError);
  for (double d : {2.0, 3.0}) {
    const BasisPtr b = make_basis(d, 20, 64);
    for (double p : {1.2, 1.5, 1.8}) {
      const double eps = 0.1;
      const HyperReport h = hypercontractivity_run(mode(*b, 1, eps), p, *b);
      CHECK(h.lhs * h.lhs == doctest::Approx(1 + eps * eps * (p - 1)).epsilon(1e-14));
      CHECK(h.spectral_identity_error < 1e-10);
      CHECK(h.holds);
      CHECK(std::exp(2 * d * h.t_star) == doctest::Approx(1 / (p - 1)).epsilon(1e-14));

      const HyperReport one = hypercontractivity_run(NodalFn::constant(b->rule(), 1.0), p, *b);
      CHECK(one.lhs == doctest::Approx(1.0).epsilon(1e-15));
      CHECK(one.rhs_p == doctest::Approx(1.0).epsilon(1e-15));
    }
    CHECK_THROWS_AS(hypercontractivity_run(NodalFn::constant(b->rule(), 0.0), 1.5, *b), DomainError);
    CHECK_THROWS_AS(hypercontractivity_run(linear(*b, 0.2), 2.5, *b), DomainError);
  }
}

TEST_CASE("Beckner chain") {
  for (double d : {2.0, 3.0}) {
    const BasisPtr b = make_basis(d, 20, 64);
    for (double p : {1.2, 1.5, 1.8}) {
      const BecknerChainReport r = beckner_chain_check(mode(*b, 1, 1e-2), p, *b);
      CHECK(r.all());
      CHECK(std::abs(r.saturation() - 1.0) < 1e-2);
      CHECK(std::abs(beckner_chain_check(mode(*b, 1, 1e-4), p, *b).saturation() - 1.0) < 1e-4);

      const BecknerChainReport r5 = beckner_chain_check(mode(*b, 5, 1e-2), p, *b);
      CHECK(r5.all());
      CHECK(r5.semigroup_side < 0.9 * r5.spectral_bound);

      const NodalFn u = linear(*b, 0.2);
      const BecknerChainReport a = beckner_chain_check(u, p, *b);
      const BecknerChainReport s = beckner_chain_check(u.with_values(2 * u.values()), p, *b);
      CHECK(s.interpolation_side == doctest::Approx(4 * a.interpolation_side).epsilon(1e-12));
      CHECK(s.semigroup_side == doctest::Approx(4 * a.semigroup_side).epsilon(1e-12));
      CHECK(s.dirichlet_side == doctest::Approx(4 * a.dirichlet_side).epsilon(1e-12));
      CHECK(s.all() == a.all());
    }
  }
}

TEST_CASE("Gross monotonicity") {
  const BasisPtr b = make_basis(2.0, 20, 64);
  const std::vector<double> grid = uniform_time_grid(0.5, 30);
  const GrossReport one = gross_monotonicity_check(NodalFn::constant(b->rule(), 1.0), 1.5, *b, grid);
  for (double n : one.norms) CHECK(n == doctest::Approx(1.0).epsilon(1e-15));

  const GrossReport r = gross_monotonicity_check(linear(*b, 0.2), 1.5, *b, grid);
  CHECK(r.final_exponent == 2.0);
  CHECK(r.monotone);
  CHECK(r.brackets_nonpositive);
  CHECK(r.norms.back() <= r.norms.front());
  CHECK(r.times.back() == doctest::Approx(std::log(2.0) / 4).epsilon(1e-15));
  CHECK_THROWS_AS(gross_monotonicity_check(linear(*b, 1.5), 1.5, *b, grid), PositivityError);
}
