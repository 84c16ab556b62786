#include "rootgas/equilibrium.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "rootgas/geometry.hpp"

namespace rootgas {

void OptimizerConfig::validate() const {
  if (!(tolerance > 0.0)) throw std::invalid_argument("tolerance must be positive");
  if (!(M > 0.0)) throw std::invalid_argument("truncation level must be positive");
  if (!(tau_start > 0.0) || !(tau_min > 0.0) || tau_min > tau_start) throw std::invalid_argument("bad smoothing range");
  if (grid.size() < 1) throw std::invalid_argument("empty grid");
  grid.validate();
  if (symmetric) conjugate_permutation(grid);  // throws AsymmetricSupport
}

Eigen::MatrixXd energy_kernel(const GridMeasure& g, double M) {
  if (g.space != Space::Sphere) throw SpaceMismatch("energy kernel expects a sphere grid");
  const Eigen::Index n = g.size();
  Eigen::MatrixXd K(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    K(i, i) = std::min(M, g.cell(i));
    const Point3 xi = g.sphere_point(i);
    for (Eigen::Index j = i + 1; j < n; ++j) {
      const double v = -0.5 * log_m(sphere_dist2<double>(xi, g.sphere_point(j)), 2.0 * M);
      K(i, j) = K(j, i) = v;
    }
  }
  return K;
}

Eigen::MatrixXd sup_kernel(const GridMeasure& g, const RateFunctionalSpec& spec, double M) {
  if (g.space != Space::Sphere) throw SpaceMismatch("sup kernel expects a sphere grid");
  Eigen::MatrixXd A(spec.size(), g.size());
  for (Eigen::Index i = 0; i < g.size(); ++i) {
    const Point3 y = g.sphere_point(i);
    for (Eigen::Index s = 0; s < spec.size(); ++s)
      A(s, i) = log_m(sphere_dist2<double>(spec.sphere_sup.row(s).transpose(), y), 2.0 * M);
  }
  return A;
}

double grid_objective(const Eigen::MatrixXd& K, const Eigen::MatrixXd& A, const Eigen::VectorXd& phi_tilde,
                      const Eigen::VectorXd& w) {
  return w.dot(K * w) + (A * w - phi_tilde).maxCoeff();
}

namespace {

struct Smoothed {
  Eigen::VectorXd p;  // softmax weights
  double lse = 0.0;   // tau * log sum exp(v / tau)
  double max = 0.0;
};

Smoothed smooth_max(const Eigen::VectorXd& v, double tau) {
  Smoothed s;
  s.max = v.maxCoeff();
  s.p = ((v.array() - s.max) / tau).exp();
  const double z = s.p.sum();
  s.p /= z;
  s.lse = s.max + tau * std::log(z);
  return s;
}

}  // namespace

EquilibriumResult minimize_rate(const RateFunctionalSpec& spec, const OptimizerConfig& cfg) {
  cfg.validate();
  spec.validate();
  const GridMeasure g = cfg.grid.space == Space::Sphere ? cfg.grid : pushforward(cfg.grid);
  const Eigen::Index n = g.size();
  const Eigen::MatrixXd K = energy_kernel(g, cfg.M);
  const Eigen::MatrixXd A = sup_kernel(g, spec, cfg.M);
  const Eigen::VectorXd c = -spec.phi_tilde;

  std::vector<Eigen::Index> perm;
  if (cfg.symmetric) perm = conjugate_permutation(g);

  Eigen::VectorXd w = Eigen::VectorXd::Constant(n, 1.0 / static_cast<double>(n));
  Eigen::VectorXd Kw = K * w;
  Eigen::VectorXd Aw = A * w;
  double tau = cfg.tau_start;

  EquilibriumResult out;
  auto smoothed_objective = [&](const Smoothed& sm) { return w.dot(Kw) + sm.lse; };

  long it = 0;
  double certificate = kInf;
  for (; it <= cfg.max_iterations; ++it) {
    const Eigen::VectorXd v = Aw + c;
    const Smoothed sm = smooth_max(v, tau);
    if (cfg.keep_trace) out.trace.push_back(smoothed_objective(sm));
    const Eigen::VectorXd grad = 2.0 * Kw + A.transpose() * sm.p;

    Eigen::Index s = 0;
    grad.minCoeff(&s);  // lowest index on ties
    Eigen::Index away = -1;
    double gmax = -kInf;
    for (Eigen::Index i = 0; i < n; ++i)
      if (w(i) > 0.0 && grad(i) > gmax) {
        gmax = grad(i);
        away = i;
      }
    const double fw_gap = w.dot(grad) - grad(s);
    const double slack = sm.max - sm.p.dot(v);  // p'(Aw+c) is an eps-tight minorant of the max
    certificate = std::max(0.0, fw_gap) + slack;
    if (certificate <= cfg.tolerance) break;
    if (fw_gap < cfg.tau_shrink * tau && tau > cfg.tau_min) {
      tau = std::max(cfg.tau_min, 0.5 * tau);
      continue;
    }
    if (it == cfg.max_iterations) break;
    if (away == s || gmax - grad(s) <= 0.0) {
      if (tau <= cfg.tau_min) break;
      tau = std::max(cfg.tau_min, 0.5 * tau);
      continue;
    }

    // line search on phi(gamma) = f_tau(w + gamma (e_s - e_away)), gamma in [0, w_away]
    const double curv_k = 2.0 * (K(s, s) - 2.0 * K(s, away) + K(away, away));
    const Eigen::VectorXd da = A.col(s) - A.col(away);
    const double dk0 = 2.0 * (Kw(s) - Kw(away));
    auto derivs = [&](double gamma, double& d1, double& d2) {
      const Smoothed q = smooth_max(v + gamma * da, tau);
      const double m1 = q.p.dot(da);
      const double m2 = q.p.dot(da.cwiseProduct(da));
      d1 = dk0 + gamma * curv_k + m1;
      d2 = curv_k + std::max(0.0, m2 - m1 * m1) / tau;
    };
    double lo = 0.0, hi = w(away), gamma = hi;
    double d1 = 0.0, d2 = 0.0;
    derivs(hi, d1, d2);
    if (d1 > 0.0) {
      gamma = 0.0;
      for (int k = 0; k < 60; ++k) {
        derivs(gamma, d1, d2);
        if (d1 > 0.0)
          hi = gamma;
        else
          lo = gamma;
        double next = d2 > 0.0 ? gamma - d1 / d2 : 0.5 * (lo + hi);
        if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
        if (std::abs(next - gamma) <= 1e-15 * std::max(1.0, w(away)) || hi - lo <= 1e-16) {
          gamma = next;
          break;
        }
        gamma = next;
      }
    }
    if (gamma <= 0.0) {
      if (tau <= cfg.tau_min) break;
      tau = std::max(cfg.tau_min, 0.5 * tau);
      continue;
    }
    w(s) += gamma;
    if (gamma >= w(away))
      w(away) = 0.0;  // drop step
    else
      w(away) -= gamma;
    Kw += gamma * (K.col(s) - K.col(away));
    Aw += gamma * da;

    if (cfg.symmetric) {
      Eigen::VectorXd ws(n);
      for (Eigen::Index i = 0; i < n; ++i) ws(i) = 0.5 * (w(i) + w(perm[static_cast<std::size_t>(i)]));
      w = ws;
      Kw = K * w;
      Aw = A * w;
    }
  }

  w = w.cwiseMax(0.0);
  w /= w.sum();
  out.iterations = std::min(it, cfg.max_iterations);
  out.gap = certificate;
  out.converged = certificate <= cfg.tolerance;
  out.tau = tau;
  out.energy = w.dot(K * w);
  out.j = (A * w + c).maxCoeff();
  out.value = out.energy + out.j;
  out.measure = cfg.grid.with_weights(w);
  return out;
}

double center_rate(const RateFunctionalSpec& spec, const OptimizerConfig& cfg) {
  const EquilibriumResult r = minimize_rate(spec, cfg);
  if (!r.converged) throw NonConvergence("equilibrium certificate above tolerance");
  return r.value;
}

}  // namespace rootgas
