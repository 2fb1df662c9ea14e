#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "sharpsphere/spectral.hpp"

using namespace sharpsphere;

namespace {

oracle::Poly random_poly(std::mt19937_64& rng, int degree) {
  std::normal_distribution<double> z(0.0, 1.0);
  oracle::Poly p{std::vector<double>(degree + 1)};
  for (double& c : p.c) c = z(rng);
  return p;
}

NodalFn sample(const Basis& b, const oracle::Poly& p) {
  return NodalFn::sample(b.rule(), [&p](double x) { return p(x); });
}

double inner(const NodalFn& f, const NodalFn& g) {
  return (f.rule()->weights.array() * f.values().array() * g.values().array()).sum();
}

double max_abs(const Eigen::VectorXd& v) { return v.cwiseAbs().maxCoeff(); }

}  // namespace

TEST_CASE("eigenvalues") {
  CHECK(eigenvalue(0, 3.0) == 0.0);
  for (double d : {1.0, 2.0, 3.7}) CHECK(eigenvalue(1, d) == d);
  CHECK(eigenvalue(2, 3.0) == 8.0);
  CHECK(eigenvalue(5, 2.0) == 30.0);
}

TEST_CASE("basis construction") {
  CHECK_THROWS_AS(make_basis(3.0, 33, 64), DegreeOverflow);
  const BasisPtr b = make_basis(3.0, 20, 64);
  CHECK(max_abs(b->values().col(0) - Eigen::VectorXd::Ones(64)) < 1e-15);
  CHECK(max_abs(b->gram() - Eigen::MatrixXd::Identity(21, 21)) < 1e-10);
  const Eigen::VectorXd ratio = b->values().col(1).cwiseQuotient(b->rule()->nodes);
  CHECK(max_abs(ratio.array() - ratio[0]) < 1e-12);
  CHECK(ratio[0] > 0.0);
}

TEST_CASE("d = 2 basis is the normalized Legendre family") {
  const BasisPtr b = make_basis(2.0, 20, 64);
  const Eigen::VectorXd& x = b->rule()->nodes;
  for (int k = 0; k <= 20; ++k) {
    for (int i = 0; i < x.size(); ++i) {
      CHECK(b->values()(i, k) == doctest::Approx(oracle::legendre_normalized(k, x[i])).epsilon(1e-11).scale(1.0));
    }
  }
}

TEST_CASE("Gram matrix is the identity across dimensions") {
  for (double d : {1.0, 1.5, 2.0, 3.0, 5.0, 10.0}) {
    const BasisPtr b = make_basis(d, 32, 64);
    CHECK(max_abs(b->gram() - Eigen::MatrixXd::Identity(33, 33)) < 1e-10);
  }
}

TEST_CASE("transforms") {
  const BasisPtr b = make_basis(3.0, 20, 64);
  const NodalFn c3(b->rule(), b->values().col(3));
  const SpectralFn s = to_spectral(c3, *b);
  CHECK(max_abs(s.coeffs - Eigen::VectorXd::Unit(21, 3)) < 1e-13);

  const SpectralFn sx = to_spectral(NodalFn::sample(b->rule(), [](double x) { return x; }), *b);
  CHECK(std::abs(sx.coeffs[1]) > 0.1);
  Eigen::VectorXd rest = sx.coeffs;
  rest[1] = 0.0;
  CHECK(max_abs(rest) < 1e-14);

  std::mt19937_64 rng(1);
  for (int trial = 0; trial < 20; ++trial) {
    const oracle::Poly p = random_poly(rng, 20);
    const NodalFn f = sample(*b, p);
    const NodalFn back = to_nodal(to_spectral(f, *b), *b);
    CHECK(max_abs(back.values() - f.values()) < 1e-10);
  }

  const RulePtr other = make_rule(3.0, 32);
  CHECK_THROWS_AS(to_spectral(NodalFn::constant(other, 1.0), *b), DimensionMismatch);
  CHECK_THROWS_AS(to_nodal(SpectralFn{Dim(3.0), Eigen::VectorXd::Ones(5)}, *b), DimensionMismatch);
}

TEST_CASE("Parseval") {
  const BasisPtr b = make_basis(2.5, 20, 64);
  std::mt19937_64 rng(2);
  const NodalFn f = sample(*b, random_poly(rng, 15));
  const SpectralFn s = to_spectral(f, *b);
  CHECK(s.coeffs.squaredNorm() == doctest::Approx(inner(f, f)).epsilon(1e-12));
}

TEST_CASE("derivatives") {
  const BasisPtr b = make_basis(3.0, 20, 64);
  const Eigen::VectorXd& x = b->rule()->nodes;
  CHECK(max_abs(derivative(NodalFn::constant(b->rule(), 1.0), *b).values()) < 1e-11);
  const NodalFn x2 = NodalFn::sample(b->rule(), [](double t) { return t * t; });
  CHECK(max_abs(derivative(x2, *b).values() - 2.0 * x) < 1e-12);
  const NodalFn x3 = NodalFn::sample(b->rule(), [](double t) { return t * t * t; });
  CHECK(max_abs(derivative(x3, *b).values() - 3.0 * x.cwiseAbs2()) < 1e-12);
  CHECK(max_abs(second_derivative(x3, *b).values() - 6.0 * x) < 1e-9);

  std::mt19937_64 rng(3);
  const oracle::Poly p = random_poly(rng, 12);
  const oracle::Poly dp = p.derivative();
  const oracle::Poly d2p = dp.derivative();
  const NodalFn f = sample(*b, p);
  for (int i = 0; i < x.size(); ++i) {
    CHECK(derivative(f, *b).values()[i] == doctest::Approx(dp(x[i])).epsilon(1e-10).scale(1.0));
    CHECK(second_derivative(f, *b).values()[i] == doctest::Approx(d2p(x[i])).epsilon(1e-9).scale(1.0));
    const PointJet j = evaluate(to_spectral(f, *b), *b, x[i]);
    CHECK(j.value == doctest::Approx(p(x[i])).epsilon(1e-11).scale(1.0));
    CHECK(j.first == doctest::Approx(dp(x[i])).epsilon(1e-10).scale(1.0));
    CHECK(j.second == doctest::Approx(d2p(x[i])).epsilon(1e-9).scale(1.0));
  }
  CHECK(evaluate(to_spectral(f, *b), *b, 1.0).value == doctest::Approx(p(1.0)).epsilon(1e-11));
}

TEST_CASE("eigen-residual of L") {
  for (double d : {1.0, 2.0, 3.0, 5.0}) {
    const BasisPtr b = make_basis(d, 20, 64);
    for (int k = 0; k <= 20; ++k) {
      const NodalFn ck(b->rule(), b->values().col(k));
      const NodalFn lck = apply_L(ck, *b);
      CHECK(max_abs(lck.values() + eigenvalue(k, d) * ck.values()) < 1e-9);
    }
  }
  const BasisPtr b = make_basis(3.0, 20, 64);
  const NodalFn x = NodalFn::sample(b->rule(), [](double t) { return t; });
  CHECK(max_abs(apply_L(x, *b).values() + 3.0 * x.values()) < 1e-10);
}

TEST_CASE("L matches (1 - x^2) f'' - d x f' on polynomials") {
  std::mt19937_64 rng(4);
  for (double d : {1.0, 2.5, 4.0}) {
    const BasisPtr b = make_basis(d, 20, 64);
    const oracle::Poly p = random_poly(rng, 10);
    const oracle::Poly dp = p.derivative();
    const oracle::Poly d2p = dp.derivative();
    const NodalFn lf = apply_L(sample(*b, p), *b);
    const Eigen::VectorXd& x = b->rule()->nodes;
    for (int i = 0; i < x.size(); ++i) {
      const double expect = (1 - x[i] * x[i]) * d2p(x[i]) - d * x[i] * dp(x[i]);
      CHECK(lf.values()[i] == doctest::Approx(expect).epsilon(1e-9).scale(1.0));
    }
  }
}

TEST_CASE("self-adjointness, integration by parts and the commutator") {
  std::mt19937_64 rng(5);
  for (double d : {1.0, 2.0, 3.0, 5.0}) {
    const BasisPtr b = make_basis(d, 20, 64);
    const Eigen::ArrayXd nu = 1.0 - b->rule()->nodes.array().square();
    for (int trial = 0; trial < 10; ++trial) {
      const oracle::Poly pf = random_poly(rng, 9);
      const oracle::Poly pg = random_poly(rng, 9);
      const NodalFn f = sample(*b, pf);
      const NodalFn g = sample(*b, pg);
      CHECK(std::abs(inner(f, apply_L(g, *b)) - inner(apply_L(f, *b), g)) < 1e-10);
      const NodalFn df = derivative(f, *b);
      const NodalFn dg = derivative(g, *b);
      const double ibp = (b->rule()->weights.array() * df.values().array() * dg.values().array() * nu).sum();
      CHECK(std::abs(inner(f, apply_L(g, *b)) + ibp) < 1e-10);

      // (Lu)' - L u' = -2 x u'' - d u'
      const NodalFn lhs1 = derivative(apply_L(f, *b), *b);
      const NodalFn lhs2 = apply_L(df, *b);
      const NodalFn d2f = second_derivative(f, *b);
      const Eigen::VectorXd rhs = (-2.0 * b->rule()->nodes.array() * d2f.values().array() - d * df.values().array()).matrix();
      CHECK(max_abs(lhs1.values() - lhs2.values() - rhs) < 1e-9 * std::max(1.0, max_abs(rhs)));
    }
  }
}

TEST_CASE("second-order integration identities") {
  std::mt19937_64 rng(6);
  for (double d : {1.0, 2.0, 3.0, 5.0}) {
    const BasisPtr b = make_basis(d, 20, 64);
    const Eigen::ArrayXd w = b->rule()->weights.array();
    const Eigen::ArrayXd nu = 1.0 - b->rule()->nodes.array().square();
    for (int trial = 0; trial < 10; ++trial) {
      const oracle::Poly p = oracle::random_positive_poly(rng, 6, 0.5);
      const NodalFn u = sample(*b, p);
      const Eigen::ArrayXd uv = u.values().array();
      const Eigen::ArrayXd lu = apply_L(u, *b).values().array();
      const Eigen::ArrayXd du = derivative(u, *b).values().array();
      const Eigen::ArrayXd d2u = second_derivative(u, *b).values().array();

      const double lhs5 = (w * lu.square()).sum();
      const double rhs5 = (w * d2u.square() * nu.square()).sum() + d * (w * du.square() * nu).sum();
      CHECK(std::abs(lhs5 - rhs5) < 1e-9 * std::abs(lhs5));

      const double lhs6 = (w * (du.square() / uv) * nu * lu).sum();
      const double rhs6 = d / (d + 2) * (w * du.square().square() / uv.square() * nu.square()).sum() -
                          2 * (d - 1) / (d + 2) * (w * du.square() * d2u / uv * nu.square()).sum();
      CHECK(std::abs(lhs6 - rhs6) < 1e-8 * std::max(std::abs(lhs6), 1e-3));
    }
  }
}

TEST_CASE("heat semigroup") {
  const BasisPtr b = make_basis(3.0, 20, 64);
  std::mt19937_64 rng(8);
  const SpectralFn f = to_spectral(sample(*b, random_poly(rng, 12)), *b);
  CHECK(max_abs(heat_semigroup(f, 0.0).coeffs - f.coeffs) == 0.0);
  CHECK_THROWS_AS(heat_semigroup(f, -0.1), DomainError);

  const SpectralFn c1{Dim(3.0), Eigen::VectorXd::Unit(21, 1)};
  for (double t : {0.1, 0.7, 2.0}) {
    const SpectralFn e = heat_semigroup(c1, t);
    CHECK(e.coeffs[1] == doctest::Approx(std::exp(-3.0 * t)).epsilon(1e-15));
    CHECK(e.coeffs.squaredNorm() == doctest::Approx(std::exp(-6.0 * t)).epsilon(1e-14));

    const SpectralFn ft = heat_semigroup(f, t);
    double expect = 0.0;
    for (int k = 0; k <= 20; ++k) expect += f.coeffs[k] * f.coeffs[k] * std::exp(-2 * eigenvalue(k, 3.0) * t);
    const NodalFn n = to_nodal(ft, *b);
    CHECK(inner(n, n) == doctest::Approx(expect).epsilon(1e-12));
    CHECK(ft.coeffs[0] == f.coeffs[0]);
    CHECK(integrate(n) == doctest::Approx(integrate(to_nodal(f, *b))).epsilon(1e-13));
  }
}

TEST_CASE("Dirichlet energy") {
  std::mt19937_64 rng(9);
  for (double d : {1.0, 3.0}) {
    const BasisPtr b = make_basis(d, 20, 64);
    const oracle::Poly p = random_poly(rng, 8);
    CHECK(dirichlet_energy(to_spectral(sample(*b, p), *b)) == doctest::Approx(oracle::dirichlet(p, d)).epsilon(1e-11));
  }
}

TEST_CASE("resolution flag") {
  const BasisPtr b = make_basis(3.0, 20, 64);
  CHECK(is_resolved(NodalFn::sample(b->rule(), [](double x) { return 1 + x * x; }), *b));
  CHECK_FALSE(is_resolved(NodalFn::sample(b->rule(), [](double x) { return 1.0 / (1.02 - x); }), *b));
  SpectralFn s{Dim(3.0), Eigen::VectorXd::Zero(21)};
  s.coeffs[0] = 1.0;
  s.coeffs[20] = 1e-3;
  CHECK_FALSE(s.resolved());
  s.coeffs[20] = 1e-6;
  CHECK(s.resolved());
}
