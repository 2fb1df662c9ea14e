#include "sharpsphere/minimizer.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <limits>
#include <random>

namespace sharpsphere {

namespace {

// Q_p (or the log-Sobolev ratio when p == 2) as a function of coefficients.
class QuotientObjective {
 public:
  QuotientObjective(double p, const Basis& basis) : p_(p), basis_(basis), d_(basis.dim()) {}

  NodalFn nodal(const Eigen::VectorXd& a) const { return {basis_.rule(), basis_.synthesize(a)}; }

  double value(const Eigen::VectorXd& a) const {
    const NodalFn f = nodal(a);
    if (p_ == 2.0) return logsob_ratio(f, basis_);
    return quotient_Qp(f, Exponent(p_, d_), basis_);
  }

  Eigen::VectorXd gradient(const Eigen::VectorXd& a) const {
    const NodalFn f = nodal(a);
    const Eigen::VectorXd& w = basis_.rule()->weights;
    const Eigen::VectorXd& lam = basis_.eigenvalues();
    const double energy = lam.dot(a.cwiseAbs2());
    const Eigen::VectorXd d_energy = 2.0 * lam.cwiseProduct(a);

    if (p_ == 2.0) {
      const double s = a.squaredNorm();
      const double ent = l2_entropy(f);
      Eigen::VectorXd local(f.size());
      for (int i = 0; i < f.size(); ++i) {
        const double v = f.values()[i];
        local[i] = v == 0.0 ? 0.0 : w[i] * 2.0 * v * std::log(v * v / s);
      }
      const Eigen::VectorXd d_ent = basis_.values().transpose() * local;
      return 2.0 / d_ * (d_energy * ent - energy * d_ent) / (ent * ent);
    }

    const Eigen::VectorXd n = normal(a);
    const double mass = w.dot(f.values().cwiseAbs().array().pow(p_).matrix());
    const double gap = norm_gap(f, p_);
    const Eigen::VectorXd d_gap = 2.0 * std::pow(mass, 2.0 / p_ - 1.0) * n - 2.0 * a;
    return (p_ - 2.0) / d_ * (d_energy * gap - energy * d_gap) / (gap * gap);
  }

  // Direction normal to the level set ||f||_p = const.
  Eigen::VectorXd normal(const Eigen::VectorXd& a) const {
    if (p_ == 2.0) return a;
    const Eigen::VectorXd f = basis_.synthesize(a);
    const Eigen::VectorXd& w = basis_.rule()->weights;
    Eigen::VectorXd local(f.size());
    for (int i = 0; i < f.size(); ++i) {
      const double v = f[i];
      const double mag = std::abs(v);
      local[i] = mag == 0.0 ? 0.0 : w[i] * std::pow(mag, p_ - 1.0) * (v > 0.0 ? 1.0 : -1.0);
    }
    return basis_.values().transpose() * local;
  }

  Eigen::VectorXd normalize(const Eigen::VectorXd& a) const { return a / lp_norm(nodal(a), p_); }

  double tangent_norm(const Eigen::VectorXd& a) const {
    const Eigen::VectorXd g = gradient(a);
    const Eigen::VectorXd n = normal(a);
    return (g - (g.dot(n) / n.squaredNorm()) * n).norm();
  }

  double p() const { return p_; }
  double dim() const { return d_; }
  const Basis& basis() const { return basis_; }

 private:
  double p_;
  const Basis& basis_;
  double d_;
};

struct Descent {
  double value;
  Eigen::VectorXd coeffs;
  bool converged;
  double gradient_norm;
};

// Relative size of the non-constant part below which an iterate counts as
// having collapsed onto the constants.
constexpr double kNearConstant = 1e-3;
constexpr int kMaxRestarts = 2;

bool near_constant(const Eigen::VectorXd& a) {
  return a.tail(a.size() - 1).norm() < kNearConstant * std::abs(a[0]);
}

// One descent segment; stops on gradient, stagnation, line-search failure,
// iteration budget or collapse onto the constants.
struct Segment {
  Descent result;
  int iterations;
  bool collapsed;
};

Segment descend_segment(const QuotientObjective& obj, const Eigen::VectorXd& start, const MinimizeOptions& opt,
                        int budget) {
  const Eigen::VectorXd& lam = obj.basis().eigenvalues();
  const Eigen::VectorXd precond = (lam / obj.dim()).cwiseMax(1.0);

  Eigen::VectorXd a = obj.normalize(start);
  double q = obj.value(a);
  std::vector<double> history{q};
  bool converged = false;
  bool collapsed = false;

  int it = 0;
  for (; it < budget; ++it) {
    if (obj.tangent_norm(a) < opt.gradient_tolerance) {
      converged = true;
      break;
    }
    const Eigen::VectorXd g = obj.gradient(a);
    const Eigen::VectorXd dir = -g.cwiseQuotient(precond);
    const double slope = g.dot(dir);

    bool accepted = false;
    double step = 0.5;
    Eigen::VectorXd trial;
    double q_trial = 0.0;
    for (int k = 0; k < 40 && !accepted; ++k, step *= 0.5) {
      trial = a + step * dir;
      try {
        q_trial = obj.value(trial);
      } catch (const ConstantInput&) {
        continue;
      }
      accepted = q_trial <= q + 1e-4 * step * slope;
    }
    if (!accepted) {
      // No decrease is representable any more.
      converged = true;
      break;
    }
    a = obj.normalize(trial);
    if (a[0] < 0.0) a = -a;
    q = q_trial;
    history.push_back(q);
    if (near_constant(a)) {
      collapsed = true;
      ++it;
      break;
    }
    const auto w = static_cast<std::size_t>(opt.stagnation_window);
    if (history.size() > w && std::abs(history[history.size() - 1 - w] - q) < opt.stagnation_tolerance) {
      converged = true;
      ++it;
      break;
    }
  }
  return {{q, a, converged, obj.tangent_norm(a)}, it, collapsed};
}

// A start that collapses onto the constants is restarted with fresh
// randomness; the best segment is kept.
Descent descend(const QuotientObjective& obj, const Eigen::VectorXd& start, const MinimizeOptions& opt,
                int index) {
  int budget = opt.max_iterations;
  Segment seg = descend_segment(obj, start, opt, budget);
  Descent best = seg.result;
  for (int r = 1; r <= kMaxRestarts && seg.collapsed; ++r) {
    budget -= seg.iterations;
    if (budget <= 0) break;
    const int fresh = index + r * std::max(opt.starts, 1);
    const SpectralFn s = random_start(obj.basis(), opt.seed, fresh, opt.start_amplitude, opt.start_modes);
    seg = descend_segment(obj, s.coeffs, opt, budget);
    if (seg.result.value < best.value) best = seg.result;
  }
  return best;
}

MinimizeResult collect(const QuotientObjective& obj, const std::vector<Descent>& runs) {
  std::size_t best = 0;
  for (std::size_t i = 1; i < runs.size(); ++i) {
    if (runs[i].value < runs[best].value) best = i;
  }
  std::vector<double> values;
  for (const auto& r : runs) values.push_back(r.value);
  return {obj.p(),
          obj.dim(),
          runs[best].value,
          obj.nodal(runs[best].coeffs),
          static_cast<int>(runs.size()),
          runs[best].converged,
          runs[best].gradient_norm,
          std::move(values)};
}

MinimizeResult multistart(const QuotientObjective& obj, const MinimizeOptions& opt) {
  if (opt.starts < 1) throw DomainError("minimisation needs at least one start");
  std::vector<std::future<Descent>> jobs;
  for (int s = 0; s < opt.starts; ++s) {
    jobs.push_back(std::async(std::launch::async, [&obj, &opt, s] {
      const SpectralFn start = random_start(obj.basis(), opt.seed, s, opt.start_amplitude, opt.start_modes);
      return descend(obj, start.coeffs, opt, s);
    }));
  }
  std::vector<Descent> runs;
  for (auto& j : jobs) runs.push_back(j.get());
  return collect(obj, runs);
}

}  // namespace

SpectralFn random_start(const Basis& basis, std::uint64_t seed, int index, double amplitude, int modes) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(index)};
  std::mt19937_64 rng(seq);
  std::normal_distribution<double> normal(0.0, 1.0);

  const int K = basis.max_degree();
  Eigen::VectorXd perturbation = Eigen::VectorXd::Zero(K + 1);
  for (int k = 1; k <= std::min(modes, K); ++k) perturbation[k] = amplitude * normal(rng);

  Eigen::VectorXd a = Eigen::VectorXd::Unit(K + 1, 0);
  while ((basis.synthesize(a + perturbation)).minCoeff() <= 0.0) perturbation *= 0.5;
  return {Dim(basis.dim()), a + perturbation};
}

std::vector<NodalFn> random_corpus(const Basis& basis, int count, std::uint64_t seed) {
  if (count < 1) throw DomainError("corpus needs at least one function");
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32), 0x636f7270u};
  std::mt19937_64 rng(seq);
  std::normal_distribution<double> normal(0.0, 1.0);
  std::uniform_real_distribution<double> amplitude(0.05, 1.5);

  const int K = basis.max_degree();
  const int modes = std::min(8, K);
  std::vector<NodalFn> corpus;
  corpus.reserve(count);
  while (static_cast<int>(corpus.size()) < count) {
    Eigen::VectorXd a = Eigen::VectorXd::Zero(K + 1);
    const double amp = amplitude(rng);
    for (int k = 1; k <= modes; ++k) a[k] = amp * normal(rng) / k;
    if (a.tail(K).norm() == 0.0) continue;
    a[0] = 1.0;
    Eigen::VectorXd v = basis.synthesize(a);
    while (v.minCoeff() < 0.05 * v.maxCoeff()) {
      a.tail(K) *= 0.5;
      v = basis.synthesize(a);
    }
    corpus.emplace_back(basis.rule(), std::move(v));
  }
  return corpus;
}

MinimizeResult minimize_quotient(const Exponent& p, const Basis& basis, const MinimizeOptions& options) {
  if (p.p() == 2.0) throw DomainError("use minimize_logsob for p = 2");
  return multistart(QuotientObjective(p.p(), basis), options);
}

MinimizeResult minimize_logsob(const Basis& basis, const MinimizeOptions& options) {
  return multistart(QuotientObjective(2.0, basis), options);
}

MinimizeResult minimize_quotient_from(const Exponent& p, const SpectralFn& start, const Basis& basis,
                                      const MinimizeOptions& options) {
  if (p.p() == 2.0) throw DomainError("use minimize_logsob_from for p = 2");
  const QuotientObjective obj(p.p(), basis);
  return collect(obj, {descend(obj, start.coeffs, options, 0)});
}

MinimizeResult minimize_logsob_from(const SpectralFn& start, const Basis& basis, const MinimizeOptions& options) {
  const QuotientObjective obj(2.0, basis);
  return collect(obj, {descend(obj, start.coeffs, options, 0)});
}

SharpnessTable perturbation_sharpness(const Exponent& p, const std::vector<double>& eps, const Basis& basis) {
  if (eps.size() < 2) throw DomainError("sharpness table needs at least two eps values");
  SharpnessTable table{};
  for (double e : eps) {
    if (!(e > 0.0 && e <= 0.5)) throw DomainError("eps must lie in (0, 0.5]");
    const NodalFn f = NodalFn::sample(basis.rule(), [e](double x) { return 1.0 + e * x; });
    const double q = p.p() == 2.0 ? logsob_ratio(f, basis) : quotient_Qp(f, p, basis);
    table.rows.push_back({e, q});
  }

  std::vector<SharpnessRow> sorted = table.rows;
  std::sort(sorted.begin(), sorted.end(), [](const auto& l, const auto& r) { return l.eps > r.eps; });
  table.decreasing = true;
  for (std::size_t i = 1; i < sorted.size(); ++i) {
    table.decreasing = table.decreasing && sorted[i].value <= sorted[i - 1].value + 1e-14;
  }
  const auto& small = sorted[sorted.size() - 1];
  const auto& next = sorted[sorted.size() - 2];
  const double e1 = small.eps * small.eps;
  const double e2 = next.eps * next.eps;
  table.extrapolated_limit = (e2 * small.value - e1 * next.value) / (e2 - e1);
  return table;
}

}  // namespace sharpsphere
