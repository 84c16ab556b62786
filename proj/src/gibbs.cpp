#include "rootgas/gibbs.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "rootgas/exactlaws.hpp"
#include "rootgas/functionals.hpp"
#include "rootgas/stats.hpp"
#include "rootgas/summation.hpp"

namespace rootgas {

const char* to_string(MoveKind m) {
  switch (m) {
    case MoveKind::Particle: return "particle";
    case MoveKind::Real: return "real";
    case MoveKind::Pair: return "pair";
    case MoveKind::Birth: return "birth";
    case MoveKind::Death: return "death";
  }
  return "?";
}

double metropolis_log_acceptance(double beta, double delta_h) {
  const double a = -beta * delta_h;
  return std::isnan(a) ? -kInf : std::min(0.0, a);
}

double ChainDiagnostics::acceptance(MoveKind m) const {
  const auto i = static_cast<std::size_t>(m);
  return proposed[i] > 0 ? static_cast<double>(accepted[i]) / static_cast<double>(proposed[i]) : 0.0;
}

// ---- confinement caches ------------------------------------------------------

namespace {

// Sum over fixed nodes s_j of exp(c_j + sum_i log|s_j - z_i|^2); Kac uses the
// n+1 roots of unity, the orthogonal model the support of nu.
class NodeConfinement final : public Confinement {
 public:
  NodeConfinement(std::vector<Complex> nodes, Eigen::VectorXd offset, double shift)
      : nodes_(std::move(nodes)), offset_(std::move(offset)), shift_(shift) {}

  void reset(const std::vector<Complex>& z) override {
    s_ = node_sums(z);
    z_ = z;
    value_ = log_sum_exp(s_) + shift_;
  }

  double value() const override { return value_; }

  double trial(const std::vector<Complex>& removed, const std::vector<Complex>& added) override {
    pending_ = s_;
    bool broken = false;
    for (Eigen::Index j = 0; j < pending_.size(); ++j) {
      const Complex s = nodes_[static_cast<std::size_t>(j)];
      double d = 0.0;
      for (const auto& x : added) d += std::log(std::norm(s - x));
      for (const auto& x : removed) d -= std::log(std::norm(s - x));
      pending_(j) += d;
      broken = broken || std::isnan(pending_(j));
    }
    pending_z_ = z_;
    for (const auto& r : removed) {
      auto it = std::find(pending_z_.begin(), pending_z_.end(), r);
      if (it != pending_z_.end()) pending_z_.erase(it);
    }
    pending_z_.insert(pending_z_.end(), added.begin(), added.end());
    if (broken) pending_ = node_sums(pending_z_);  // a particle sat exactly on a node
    pending_value_ = log_sum_exp(pending_) + shift_;
    return pending_value_;
  }

  void commit() override {
    s_ = pending_;
    z_ = pending_z_;
    value_ = pending_value_;
  }

 private:
  Eigen::VectorXd node_sums(const std::vector<Complex>& z) const {
    const auto m = static_cast<Eigen::Index>(nodes_.size());
    Eigen::VectorXd s(m);
    for (Eigen::Index j = 0; j < m; ++j) {
      double a = offset_(j);
      for (const auto& x : z) a += std::log(std::norm(nodes_[static_cast<std::size_t>(j)] - x));
      s(j) = a;
    }
    return s;
  }

  std::vector<Complex> nodes_;
  Eigen::VectorXd offset_;
  double shift_;
  Eigen::VectorXd s_, pending_;
  std::vector<Complex> z_, pending_z_;
  double value_ = 0.0, pending_value_ = 0.0;
};

// Coefficients of prod (X - z_i), kept with a separate log scale; moves
// divide out removed roots and multiply in added ones.
class EllipticConfinement final : public Confinement {
 public:
  explicit EllipticConfinement(int n) : n_(n), log_w_(n + 1) {
    for (int k = 0; k <= n; ++k) log_w_(k) = -std::log(n + 1.0) - log_binomial(n, k);
  }

  void reset(const std::vector<Complex>& z) override {
    b_.assign(1, Complex(1.0));
    scale_ = 0.0;
    for (const auto& r : z) multiply(b_, scale_, r);
    value_ = evaluate(b_, scale_);
  }

  double value() const override { return value_; }

  double trial(const std::vector<Complex>& removed, const std::vector<Complex>& added) override {
    pb_ = b_;
    pscale_ = scale_;
    for (const auto& r : removed) divide(pb_, pscale_, r);
    for (const auto& a : added) multiply(pb_, pscale_, a);
    pending_value_ = evaluate(pb_, pscale_);
    return pending_value_;
  }

  void commit() override {
    b_ = pb_;
    scale_ = pscale_;
    value_ = pending_value_;
  }

 private:
  static void renormalize(std::vector<Complex>& b, double& scale) {
    double m = 0.0;
    for (const auto& x : b) m = std::max(m, std::abs(x));
    if (m > 0.0 && std::isfinite(m)) {
      for (auto& x : b) x /= m;
      scale += std::log(m);
    }
  }

  static void multiply(std::vector<Complex>& b, double& scale, Complex r) {
    std::vector<Complex> nb(b.size() + 1, 0.0);
    for (std::size_t k = 0; k < b.size(); ++k) {
      nb[k + 1] += b[k];
      nb[k] -= r * b[k];
    }
    b = std::move(nb);
    renormalize(b, scale);
  }

  // Division by (X - r): forward from the top when |r| <= 1, backward from
  // the constant term otherwise.
  static void divide(std::vector<Complex>& b, double& scale, Complex r) {
    const std::size_t d = b.size() - 1;
    std::vector<Complex> q(d);
    if (std::abs(r) <= 1.0) {
      q[d - 1] = b[d];
      for (std::size_t k = d - 1; k-- > 0;) q[k] = b[k + 1] + r * q[k + 1];
    } else {
      q[0] = -b[0] / r;
      for (std::size_t k = 1; k < d; ++k) q[k] = (q[k - 1] - b[k]) / r;
    }
    b = std::move(q);
    renormalize(b, scale);
  }

  double evaluate(const std::vector<Complex>& b, double scale) const {
    Eigen::VectorXd t(n_ + 1);
    for (int k = 0; k <= n_; ++k) t(k) = std::log(std::norm(b[static_cast<std::size_t>(k)])) + log_w_(k);
    return log_sum_exp(t) + 2.0 * scale;
  }

  int n_;
  Eigen::VectorXd log_w_;
  std::vector<Complex> b_, pb_;
  double scale_ = 0.0, pscale_ = 0.0;
  double value_ = 0.0, pending_value_ = 0.0;
};

}  // namespace

std::unique_ptr<Confinement> Confinement::make(const ModelSpec& spec) {
  const int n = spec.degree;
  switch (spec.basis) {
    case Basis::Kac: {
      const int m = n + 1;
      std::vector<Complex> nodes;
      for (int j = 0; j < m; ++j) nodes.push_back(std::polar(1.0, 2.0 * kPi * j / m));
      return std::make_unique<NodeConfinement>(std::move(nodes), Eigen::VectorXd::Zero(m),
                                               -std::log(static_cast<double>(m)));
    }
    case Basis::Elliptic: return std::make_unique<EllipticConfinement>(n);
    case Basis::Orthogonal: {
      const auto& w = *spec.weight;
      Eigen::VectorXd off(w.nu.size());
      for (Eigen::Index j = 0; j < off.size(); ++j)
        off(j) = w.nu(j) > 0.0 ? std::log(w.nu(j)) - n * w.phi(j) : -kInf;
      return std::make_unique<NodeConfinement>(w.support, std::move(off), 0.0);
    }
  }
  throw std::invalid_argument("unknown basis");
}

// ---- chain -------------------------------------------------------------------

namespace {

constexpr double kBirthProb = 0.5 * kDimensionMoveProb;
constexpr double kDeathProb = 0.5 * kDimensionMoveProb;
constexpr double kLocalProb = 1.0 - kDimensionMoveProb;

double log_std_normal(double x) { return -0.5 * x * x - 0.5 * std::log(2.0 * kPi); }

// density of sigma * complex_gaussian(1) at d
double log_complex_normal(Complex d, double sigma) {
  return -std::norm(d) / (sigma * sigma) - std::log(kPi * sigma * sigma);
}

double log_choose2(int r) { return std::log(0.5 * r * (r - 1.0)); }

std::vector<Complex> default_init(int n, bool real_case) {
  std::vector<Complex> z(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    if (real_case)
      z[static_cast<std::size_t>(i)] = n == 1 ? Complex(0.3) : Complex(-0.9 + 1.8 * i / (n - 1.0));
    else
      z[static_cast<std::size_t>(i)] = std::polar(0.8, 2.0 * kPi * (i + 0.25) / n);
  }
  return z;
}

}  // namespace

GasChain::GasChain(const ModelSpec& spec, bool real_case, const std::vector<Complex>& init, int init_k,
                   std::uint64_t seed, std::uint64_t stream)
    : spec_(spec), real_(real_case), conf_(Confinement::make(spec)), rng_(seed, stream) {
  spec_.validate();
  const int n = spec_.degree;
  if (n < 1) throw std::invalid_argument("degree must be >= 1");
  state_.particles = init.empty() ? default_init(n, real_) : init;
  state_.k = real_ ? (init.empty() ? 0 : init_k) : -1;
  if (static_cast<int>(state_.particles.size()) != n) throw std::invalid_argument("initial state has wrong size");
  if (real_) {
    real_mixture_logdensity(state_.particles, state_.k, spec_);  // layout check, throws
    const int r = n - 2 * state_.k;
    for (int i = 0; i < r; ++i) state_.particles[static_cast<std::size_t>(i)].imag(0.0);
    for (int p = 0; p < state_.k; ++p) {
      Complex& w = state_.particles[static_cast<std::size_t>(r + 2 * p)];
      if (w.imag() < 0.0) w = std::conj(w);
      state_.particles[static_cast<std::size_t>(r + 2 * p + 1)] = std::conj(w);
    }
    for (int k = 0; 2 * k <= n; ++k)
      log_mix_weight_.push_back(std::lgamma(n - 2.0 * k + 1.0) + std::lgamma(k + 1.0) - log_z_real(spec_, k));
  }
  scale_.fill(0.3);
  scale_[static_cast<int>(MoveKind::Birth)] = 0.5;
  scale_[static_cast<int>(MoveKind::Death)] = 0.5;
  resync();
}

double GasChain::target_of(int k, double h) const {
  if (!std::isfinite(h)) return -kInf;
  if (!real_) return -spec_.beta * h;
  return -0.5 * spec_.beta * h + log_mix_weight_[static_cast<std::size_t>(k)];
}

double GasChain::log_target() const { return target_of(state_.k, state_.hamiltonian); }

double GasChain::resync() {
  const auto& z = state_.particles;
  Accumulator acc;
  bool coincident = false;
  for (std::size_t i = 0; i < z.size(); ++i)
    for (std::size_t j = i + 1; j < z.size(); ++j) {
      const double d = std::abs(z[i] - z[j]);
      coincident = coincident || d == 0.0;
      acc.add(std::log(d));
    }
  const double cached = state_.hamiltonian;
  log_pair_sum_ = coincident ? -kInf : acc.value();
  conf_->reset(z);
  const double fresh = hamiltonian(z, spec_);
  state_.hamiltonian = fresh;
  return std::isfinite(cached) && std::isfinite(fresh) ? std::abs(cached - fresh) : 0.0;
}

double GasChain::energy_delta(const std::vector<int>& removed_idx, const std::vector<Complex>& added) const {
  const auto& z = state_.particles;
  std::vector<char> gone(z.size(), 0);
  for (int i : removed_idx) gone[static_cast<std::size_t>(i)] = 1;
  Accumulator acc;
  for (std::size_t a = 0; a < added.size(); ++a) {
    for (std::size_t j = 0; j < z.size(); ++j)
      if (!gone[j]) acc.add(std::log(std::abs(added[a] - z[j])));
    for (std::size_t b = a + 1; b < added.size(); ++b) acc.add(std::log(std::abs(added[a] - added[b])));
  }
  for (std::size_t a = 0; a < removed_idx.size(); ++a) {
    const Complex x = z[static_cast<std::size_t>(removed_idx[a])];
    for (std::size_t j = 0; j < z.size(); ++j)
      if (!gone[j]) acc.add(-std::log(std::abs(x - z[j])));
    for (std::size_t b = a + 1; b < removed_idx.size(); ++b)
      acc.add(-std::log(std::abs(x - z[static_cast<std::size_t>(removed_idx[b])])));
  }
  return acc.value();
}

MoveRecord GasChain::finish(MoveRecord m, const std::vector<int>& removed_idx, const std::vector<Complex>& added) {
  m.valid = true;
  m.serial = ++serial_;
  std::vector<Complex> removed;
  for (int i : removed_idx) removed.push_back(state_.particles[static_cast<std::size_t>(i)]);
  const double de = energy_delta(removed_idx, added);
  const double conf = conf_->trial(removed, added);
  m.pair_sum = log_pair_sum_ + de;
  const double n = spec_.degree;
  m.proposed_h = std::isnan(m.pair_sum) || m.pair_sum == -kInf ? kInf
                                                                 : -2.0 * m.pair_sum / (n * n) + (n + 1.0) / (n * n) * conf;
  m.log_target_x = log_target();
  m.log_target_y = target_of(m.proposed_k, m.proposed_h);
  const double log_ratio = m.log_target_y + m.log_q_reverse + m.log_jacobian - m.log_target_x - m.log_q_forward;
  m.log_alpha = std::isnan(log_ratio) ? -kInf : std::min(0.0, log_ratio);
  return m;
}

MoveRecord GasChain::propose_particle(int i, Complex z_new) {
  MoveRecord m;
  m.kind = MoveKind::Particle;
  if (real_) return m;
  m.proposed = state_.particles;
  m.proposed[static_cast<std::size_t>(i)] = z_new;
  m.proposed_k = -1;
  const double s = scale(MoveKind::Particle);
  const double lq = -std::log(static_cast<double>(spec_.degree)) +
                    log_complex_normal(z_new - state_.particles[static_cast<std::size_t>(i)], s);
  m.log_q_forward = m.log_q_reverse = lq;
  m.reverse_index = i;
  return finish(std::move(m), {i}, {z_new});
}

MoveRecord GasChain::propose_real(int i, double x_new) {
  MoveRecord m;
  m.kind = MoveKind::Real;
  const int n = spec_.degree, r = n - 2 * state_.k;
  if (!real_ || i < 0 || i >= r) return m;
  m.proposed = state_.particles;
  m.proposed[static_cast<std::size_t>(i)] = Complex(x_new, 0.0);
  m.proposed_k = state_.k;
  const double s = scale(MoveKind::Real);
  const double lq = std::log(kLocalProb) - std::log(static_cast<double>(r + state_.k)) +
                    log_std_normal((x_new - state_.particles[static_cast<std::size_t>(i)].real()) / s) - std::log(s);
  m.log_q_forward = m.log_q_reverse = lq;
  m.reverse_index = i;
  return finish(std::move(m), {i}, {Complex(x_new, 0.0)});
}

MoveRecord GasChain::propose_pair(int p, Complex w_new) {
  MoveRecord m;
  m.kind = MoveKind::Pair;
  const int n = spec_.degree, k = state_.k, r = n - 2 * k;
  if (!real_ || p < 0 || p >= k || w_new.imag() == 0.0) return m;
  if (w_new.imag() < 0.0) w_new = std::conj(w_new);
  const int a = r + 2 * p;
  const Complex w = state_.particles[static_cast<std::size_t>(a)];
  m.proposed = state_.particles;
  m.proposed[static_cast<std::size_t>(a)] = w_new;
  m.proposed[static_cast<std::size_t>(a + 1)] = std::conj(w_new);
  m.proposed_k = k;
  const double s = scale(MoveKind::Pair);
  const double sel = std::log(kLocalProb) - std::log(static_cast<double>(r + k));
  // the proposal reflects into the upper half-plane, so both preimages count
  auto fold = [&](Complex from, Complex to) {
    const double u = log_complex_normal(to - from, s), v = log_complex_normal(std::conj(to) - from, s);
    const double hi = std::max(u, v);
    return hi + std::log(std::exp(u - hi) + std::exp(v - hi));
  };
  m.log_q_forward = sel + fold(w, w_new);
  m.log_q_reverse = sel + fold(w_new, w);
  m.reverse_index = p;
  return finish(std::move(m), {a, a + 1}, {w_new, std::conj(w_new)});
}

// Two reals x_i, x_j -> pair m + i s with m the midpoint, delta the half gap,
// s = delta exp(sigma xi). The reverse death uses eta = -xi.
MoveRecord GasChain::propose_birth(int i, int j, double xi) {
  MoveRecord m;
  m.kind = MoveKind::Birth;
  const int n = spec_.degree, k = state_.k, r = n - 2 * k;
  if (!real_ || r < 2 || i == j || i < 0 || j < 0 || i >= r || j >= r) return m;
  if (i > j) std::swap(i, j);
  const double xa = state_.particles[static_cast<std::size_t>(i)].real();
  const double xb = state_.particles[static_cast<std::size_t>(j)].real();
  const double mid = 0.5 * (xa + xb), delta = 0.5 * std::abs(xb - xa);
  if (delta == 0.0) return m;
  const double sigma = scale(MoveKind::Birth);
  const double s = delta * std::exp(sigma * xi);
  const Complex w(mid, s);
  for (int t = 0; t < r; ++t)
    if (t != i && t != j) m.proposed.push_back(state_.particles[static_cast<std::size_t>(t)]);
  m.proposed.insert(m.proposed.end(), state_.particles.begin() + r, state_.particles.end());
  m.proposed.push_back(w);
  m.proposed.push_back(std::conj(w));
  m.proposed_k = k + 1;
  m.log_q_forward = std::log(kBirthProb) - log_choose2(r) + log_std_normal(xi);
  m.log_q_reverse = std::log(kDeathProb) - std::log(k + 1.0) + log_std_normal(-xi);
  m.log_jacobian = std::log(s / (2.0 * delta));
  m.reverse_index = k;
  m.reverse_xi = -xi;
  return finish(std::move(m), {i, j}, {w, std::conj(w)});
}

MoveRecord GasChain::propose_death(int p, double eta) {
  MoveRecord m;
  m.kind = MoveKind::Death;
  const int n = spec_.degree, k = state_.k, r = n - 2 * k;
  if (!real_ || k < 1 || p < 0 || p >= k) return m;
  const int a = r + 2 * p;
  const Complex w = state_.particles[static_cast<std::size_t>(a)];
  const double sigma = scale(MoveKind::Death);
  const double s = std::abs(w.imag());
  const double delta = s * std::exp(sigma * eta);
  const Complex lo(w.real() - delta, 0.0), hi(w.real() + delta, 0.0);
  m.proposed.assign(state_.particles.begin(), state_.particles.begin() + r);
  m.proposed.push_back(lo);
  m.proposed.push_back(hi);
  for (int q = 0; q < k; ++q)
    if (q != p) {
      m.proposed.push_back(state_.particles[static_cast<std::size_t>(r + 2 * q)]);
      m.proposed.push_back(state_.particles[static_cast<std::size_t>(r + 2 * q + 1)]);
    }
  m.proposed_k = k - 1;
  m.log_q_forward = std::log(kDeathProb) - std::log(static_cast<double>(k)) + log_std_normal(eta);
  m.log_q_reverse = std::log(kBirthProb) - log_choose2(r + 2) + log_std_normal(-eta);
  m.log_jacobian = std::log(2.0 * delta / s);
  m.reverse_index = r;  // the new reals sit at r and r + 1
  m.reverse_xi = -eta;
  return finish(std::move(m), {a, a + 1}, {lo, hi});
}

MoveRecord GasChain::propose() {
  const int n = spec_.degree;
  if (!real_) {
    const int i = static_cast<int>(rng_.index(static_cast<std::size_t>(n)));
    const Complex z = state_.particles[static_cast<std::size_t>(i)] +
                      scale(MoveKind::Particle) * rng_.complex_gaussian(1.0);
    return propose_particle(i, z);
  }
  const int k = state_.k, r = n - 2 * k;
  const double u = rng_.uniform();
  if (u < kBirthProb) {
    MoveRecord m;
    m.kind = MoveKind::Birth;
    if (r < 2) return m;
    const int i = static_cast<int>(rng_.index(static_cast<std::size_t>(r)));
    int j = static_cast<int>(rng_.index(static_cast<std::size_t>(r - 1)));
    if (j >= i) ++j;
    return propose_birth(i, j, rng_.normal());
  }
  if (u < kBirthProb + kDeathProb) {
    MoveRecord m;
    m.kind = MoveKind::Death;
    if (k < 1) return m;
    const int p = static_cast<int>(rng_.index(static_cast<std::size_t>(k)));
    return propose_death(p, rng_.normal());
  }
  const int unit = static_cast<int>(rng_.index(static_cast<std::size_t>(r + k)));
  if (unit < r)
    return propose_real(unit, state_.particles[static_cast<std::size_t>(unit)].real() +
                                  scale(MoveKind::Real) * rng_.normal());
  const int p = unit - r;
  return propose_pair(p, state_.particles[static_cast<std::size_t>(r + 2 * p)] +
                             scale(MoveKind::Pair) * rng_.complex_gaussian(1.0));
}

void GasChain::accept(const MoveRecord& m) {
  if (!m.valid) return;
  state_.particles = m.proposed;
  state_.k = m.proposed_k;
  state_.hamiltonian = m.proposed_h;
  if (m.serial == serial_) {
    log_pair_sum_ = m.pair_sum;
    conf_->commit();
  } else {
    resync();  // stale record: the confinement cache holds a later trial
  }
}

bool GasChain::step() {
  const MoveRecord m = propose();
  if (!m.valid) return false;
  const bool ok = m.log_alpha >= 0.0 || std::log(rng_.uniform_open()) < m.log_alpha;
  if (ok) accept(m);
  return ok;
}

// ---- drivers -----------------------------------------------------------------

namespace {

ChainResult run_chain(const ModelSpec& spec, const ChainConfig& cfg, bool real_case) {
  if (cfg.steps < 1) throw std::invalid_argument("steps must be >= 1");
  GasChain chain(spec, real_case, cfg.init, cfg.init_k, cfg.seed, cfg.stream);
  const int n = spec.degree;
  ChainResult out;
  auto& d = out.diagnostics;
  d.burn_in = cfg.steps / 5;
  const long every = cfg.record_every > 0 ? cfg.record_every : n;
  d.record_every = every;
  if (real_case) d.k_histogram.assign(static_cast<std::size_t>(n / 2 + 1), 0);

  std::vector<Complex> flat;
  std::vector<std::uint64_t> draws;
  std::array<long, kMoveKinds> adapt_count{};
  for (long t = 0; t < cfg.steps; ++t) {
    const MoveRecord m = chain.propose();
    const auto kind = static_cast<std::size_t>(m.kind);
    ++d.proposed[kind];
    bool ok = false;
    if (m.valid) {
      ok = m.log_alpha >= 0.0 || std::log(chain.rng().uniform_open()) < m.log_alpha;
      if (ok) {
        chain.accept(m);
        ++d.accepted[kind];
      }
    }
    if (t < d.burn_in && m.valid) {
      // Robbins–Monro on log scale; birth and death share one scale
      const auto slot = m.kind == MoveKind::Death ? MoveKind::Birth : m.kind;
      const auto si = static_cast<std::size_t>(slot);
      const double gain = 1.0 / std::pow(1.0 + static_cast<double>(adapt_count[si]++), 0.6);
      const double lo = slot == MoveKind::Birth ? 0.05 : 1e-4, hi = slot == MoveKind::Birth ? 5.0 : 1e2;
      const double next =
          std::clamp(chain.scale(slot) * std::exp(gain * ((ok ? 1.0 : 0.0) - cfg.target_accept)), lo, hi);
      chain.set_scale(slot, next);
      if (slot == MoveKind::Birth) chain.set_scale(MoveKind::Death, next);
    }
    if (cfg.check_every > 0 && (t + 1) % cfg.check_every == 0) d.max_drift = std::max(d.max_drift, chain.resync());
    if (t >= d.burn_in && (t + 1 - d.burn_in) % every == 0) {
      const auto& s = chain.state();
      flat.insert(flat.end(), s.particles.begin(), s.particles.end());
      out.h_trace.push_back(s.hamiltonian);
      out.k_trace.push_back(s.k);
      draws.push_back(chain.rng().draws());
      if (real_case) ++d.k_histogram[static_cast<std::size_t>(s.k)];
    }
  }
  for (int i = 0; i < kMoveKinds; ++i) d.scale[static_cast<std::size_t>(i)] = chain.scale(static_cast<MoveKind>(i));
  d.recorded = static_cast<long>(out.h_trace.size());
  d.iat = integrated_autocorrelation(out.h_trace);
  d.thin = std::max(1L, static_cast<long>(std::ceil(d.iat)));
  for (long r = 0; r < d.recorded; r += d.thin) {
    GasState s;
    s.particles.assign(flat.begin() + r * n, flat.begin() + (r + 1) * n);
    s.k = out.k_trace[static_cast<std::size_t>(r)];
    s.hamiltonian = out.h_trace[static_cast<std::size_t>(r)];
    s.rng_draws = draws[static_cast<std::size_t>(r)];
    out.samples.push_back(std::move(s));
  }
  return out;
}

}  // namespace

ChainResult mcmc_complex(const ModelSpec& spec, const ChainConfig& cfg) { return run_chain(spec, cfg, false); }

ChainResult mcmc_real_mixture(const ModelSpec& spec, const ChainConfig& cfg) { return run_chain(spec, cfg, true); }

}  // namespace rootgas
