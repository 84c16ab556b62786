#include "rootgas/validation.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <stdexcept>

#include "rootgas/equilibrium.hpp"
#include "rootgas/exactlaws.hpp"
#include "rootgas/functionals.hpp"
#include "rootgas/geometry.hpp"
#include "rootgas/gibbs.hpp"
#include "rootgas/grids.hpp"
#include "rootgas/oracles.hpp"
#include "rootgas/stats.hpp"

namespace rootgas {

namespace {

// records "statistic <= bound"
CheckRecord at_most(std::string check, long n, double statistic, double bound) {
  return {std::move(check), n, statistic, bound, statistic <= bound};
}

// records "statistic > bound"
CheckRecord above(std::string check, long n, double statistic, double bound) {
  return {std::move(check), n, statistic, bound, statistic > bound};
}

// ---- 1: geometry identities ---------------------------------------------------

void geometry_identities(std::uint64_t seed, std::vector<CheckRecord>& out) {
  Rng rng(seed, 1);
  const long pairs = 100000;
  double chordal = 0.0, norm = 0.0;
  for (long t = 0; t < pairs; ++t) {
    // log-uniform radii over [1e-6, 1e6] so huge moduli are well represented
    auto draw = [&] { return std::polar(std::exp(std::log(1e6) * (2.0 * rng.uniform() - 1.0)), 2.0 * kPi * rng.uniform()); };
    const Complex z = t % 4 == 0 ? rng.complex_gaussian(1.0) : draw();
    const Complex w = t % 4 == 0 ? rng.complex_gaussian(1.0) : draw();
    chordal = std::max(chordal, chordal_identity_residual(z, w) / (1.0 + std::norm(z - w)));
    norm = std::max(norm, norm_identity_residual(z));
  }
  out.push_back(at_most("chordal_identity_relative", pairs, chordal, 1e-10));
  out.push_back(at_most("norm_identity", pairs, norm, 1e-12));
}

// ---- 2: Parseval / confinement --------------------------------------------------

void parseval(std::uint64_t seed, std::vector<CheckRecord>& out) {
  Rng rng(seed, 2);
  double quad = 0.0, conf = 0.0;
  for (int t = 0; t < 100; ++t) {
    const int n = 1 + static_cast<int>(rng.index(50));
    const auto p = sample_coefficients(ModelSpec::kac(n, Field::Complex), rng);
    const auto a = p.normalized();
    const double exact = oracle::coefficient_norm2(a);
    auto f = [&](Complex z) {
      Complex s = 0.0;
      for (auto it = a.rbegin(); it != a.rend(); ++it) s = s * z + *it;
      return std::norm(s);
    };
    quad = std::max(quad, std::abs(circle_quadrature(f, std::max(4, n + 1)) - exact) / exact);
    // node form of the confinement integral, through the roots
    const auto roots = find_roots(p).plane_atoms();
    const double via_roots = log_confinement(roots, ModelSpec::kac(n, Field::Complex)) + std::log(std::norm(a.back()));
    conf = std::max(conf, std::abs(std::expm1(via_roots - std::log(exact))));
  }
  out.push_back(at_most("kac_quadrature_vs_coefficients", 100, quad, 1e-10));
  out.push_back(at_most("kac_confinement_vs_coefficients", 100, conf, 1e-10));
}

// ---- 3: elliptic orthonormality ---------------------------------------------------

void elliptic_orthonormality(std::vector<CheckRecord>& out) {
  double worst = 0.0;
  long count = 0;
  for (int n = 0; n <= 20; ++n)
    for (int k = 0; k <= n; ++k, ++count) {
      const double q = oracle::elliptic_moment(k, n);
      worst = std::max(worst, std::abs(elliptic_inner_product(k, n) - q) / q);
    }
  out.push_back(at_most("elliptic_norm_vs_quadrature", count, worst, 1e-8));
}

// ---- 4: Bernstein–Markov ------------------------------------------------------------

void bernstein_markov(std::uint64_t seed, std::vector<CheckRecord>& out) {
  Rng rng(seed, 4);
  for (const BMKind kind : {BMKind::Circle, BMKind::Elliptic}) {
    long violations = 0;
    double worst = 0.0;
    for (int t = 0; t < 1000; ++t) {
      const int n = 1 + static_cast<int>(rng.index(30));
      const auto spec = kind == BMKind::Circle ? ModelSpec::kac(n, Field::Complex) : ModelSpec::elliptic(n, Field::Complex);
      const auto r = bernstein_markov_check(sample_coefficients(spec, rng).normalized(), kind);
      if (!r.pass) ++violations;
      worst = std::max(worst, r.ratio / r.bound);
    }
    const std::string name = kind == BMKind::Circle ? "circle" : "elliptic";
    out.push_back(at_most("bm_violations_" + name, 1000, static_cast<double>(violations), 0.0));
    out.push_back(at_most("bm_worst_ratio_over_bound_" + name, 1000, worst, 1.0));
  }
  const int N = 30;
  const auto eq = bernstein_markov_check(std::vector<Complex>(N + 1, Complex(1.0)), BMKind::Circle);
  out.push_back(at_most("bm_equality_case_defect", N, std::abs(eq.ratio / eq.bound - 1.0), 1e-12));
}

// ---- 5: root finder -----------------------------------------------------------------

void root_finder(std::uint64_t seed, std::vector<CheckRecord>& out) {
  Rng rng(seed, 5);
  for (const Basis b : {Basis::Kac, Basis::Elliptic}) {
    const int nmax = b == Basis::Kac ? 100 : 50;
    double worst = 0.0;
    for (int t = 0; t < 50; ++t) {
      const int n = 1 + (t * nmax) / 50 + static_cast<int>(rng.index(static_cast<std::size_t>(nmax / 50)));
      const auto spec = b == Basis::Kac ? ModelSpec::kac(n, Field::Complex) : ModelSpec::elliptic(n, Field::Complex);
      const auto p = sample_coefficients(spec, rng);
      worst = std::max(worst, reconstruction_error(find_roots(p).plane_atoms(), p.normalized()));
    }
    out.push_back(at_most(std::string("reconstruction_") + to_string(b), 50, worst, 1e-8));
  }
}

// ---- 6: complex law equivalence -------------------------------------------------------

void law_equivalence(std::uint64_t seed, std::vector<CheckRecord>& out) {
  const long target = 10000;
  for (int n : {2, 3}) {
    auto spec = ModelSpec::kac(n, Field::Complex);
    spec.beta = static_cast<double>(n) * n;
    ChainConfig cfg;
    cfg.seed = seed;
    cfg.stream = 600 + static_cast<std::uint64_t>(n);
    cfg.steps = 1000000L * n;
    ChainResult chain;
    for (int attempt = 0; attempt < 4; ++attempt, cfg.steps *= 2) {
      chain = mcmc_complex(spec, cfg);
      if (static_cast<long>(chain.samples.size()) >= target) break;
    }
    const long have = static_cast<long>(chain.samples.size());
    out.push_back(at_most("mcmc_effective_samples_shortfall", n, static_cast<double>(std::max(0L, target - have)), 0.0));
    std::vector<std::vector<Complex>> configs;
    for (long i = 0; i < std::min(have, target); ++i) configs.push_back(chain.samples[static_cast<std::size_t>(i)].particles);
    const auto gas = oracle::root_statistics(configs);
    const auto direct = oracle::direct_root_statistics(spec, target, seed + static_cast<std::uint64_t>(n));
    out.push_back(above("ks_p_abs_product", n, ks_two_sample(gas.abs_product, direct.abs_product).p_value, 0.01));
    out.push_back(above("ks_p_abs_sum", n, ks_two_sample(gas.abs_sum, direct.abs_sum).p_value, 0.01));
  }
}

// ---- 7: real mixture weights -------------------------------------------------------------

void mixture_weights(std::uint64_t seed, std::vector<CheckRecord>& out) {
  auto spec = ModelSpec::kac(2, Field::Real);
  spec.beta = 4.0;
  ChainConfig cfg;
  cfg.seed = seed;
  cfg.stream = 700;
  cfg.steps = 4000000;
  const ChainResult chain = mcmc_real_mixture(spec, cfg);
  std::vector<double> k1;
  for (int k : chain.k_trace) k1.push_back(k == 1 ? 1.0 : 0.0);
  const double p_chain = mean(k1);
  const double tau = integrated_autocorrelation(k1);
  const long draws = 100000;
  const double p_mc = oracle::complex_root_fraction(draws, seed);
  const double se_chain = std::sqrt(p_chain * (1.0 - p_chain) * tau / static_cast<double>(k1.size()));
  const double se_mc = std::sqrt(p_mc * (1.0 - p_mc) / static_cast<double>(draws));
  out.push_back(at_most("p_k1_abs_difference", 2, std::abs(p_chain - p_mc), 2.0 * std::hypot(se_chain, se_mc)));
  long outside = 0;
  for (int k : chain.k_trace)
    if (k < 0 || k > 1) ++outside;
  out.push_back(at_most("k_outside_support", 2, static_cast<double>(outside), 0.0));
}

// ---- 8: Z_{n,k} control -----------------------------------------------------------------

void z_control(std::vector<CheckRecord>& out) {
  auto control = [](int n) { return mixture_constants(ModelSpec::kac(n, Field::Real)).control; };
  const double c100 = control(100), c200 = control(200), c400 = control(400);
  out.push_back(at_most("z_control_n200", 200, c200, 0.05));
  CheckRecord r{"z_control_n400_below_n100", 400, c400, c100, c400 < c100};
  out.push_back(r);
}

// ---- 9: rate centering and chart identity ---------------------------------------------------

void rate_centering(std::uint64_t seed, std::vector<CheckRecord>& out) {
  const auto spec = kac_rate_spec();
  const double v = rate_function(circle_grid(4096), spec, 30.0).value;
  out.push_back(at_most("rate_circle_grid_abs", 4096, std::abs(v - oracle::circle_log_energy()), 1e-3));
  Rng rng(seed, 9);
  double worst = 0.0;
  const RateFunctionalSpec specs[] = {spec, elliptic_rate_spec(1000)};
  for (int t = 0; t < 100; ++t) {
    std::vector<Complex> z;
    const double scale = std::exp(2.0 * rng.normal());
    for (int i = 0; i < 50; ++i) z.push_back(scale * rng.complex_gaussian(1.0));
    worst = std::max(worst, plane_sphere_rate_identity_residual(as_grid(EmpiricalMeasure::plane(z)), specs[t % 2]));
  }
  out.push_back(at_most("plane_sphere_identity_residual", 100, worst, 1e-9));
}

// ---- 10: elliptic equilibrium -----------------------------------------------------------------

void elliptic_equilibrium(std::vector<CheckRecord>& out) {
  OptimizerConfig cfg;
  cfg.grid = fibonacci_sphere_grid(2000);
  const auto r = minimize_rate(elliptic_rate_spec(4000), cfg);
  const double oracle_value = oracle::sphere_log_energy() - 1.0;
  out.push_back(at_most("elliptic_equilibrium_value_error", 2000, std::abs(r.value - oracle_value), 0.02));
  out.push_back(at_most("elliptic_minimizer_bl_surrogate", 2000, bl_surrogate(r.measure, cfg.grid), 0.1));
  out.push_back(at_most("elliptic_certificate", 2000, r.gap, cfg.tolerance));
}

// ---- 11: convergence to equilibrium ----------------------------------------------------------

void convergence(std::uint64_t seed, std::vector<CheckRecord>& out) {
  const GridMeasure circle = circle_grid(4096);
  const GridMeasure sphere = fibonacci_sphere_grid(4096);
  for (const Basis b : {Basis::Kac, Basis::Elliptic}) {
    std::vector<double> med;
    for (int n : {16, 64, 256}) {
      const auto spec = b == Basis::Kac ? ModelSpec::kac(n, Field::Complex) : ModelSpec::elliptic(n, Field::Complex);
      std::vector<double> d;
      for (std::uint64_t s = 0; s < 20; ++s) {
        const auto mu = find_roots(sample_coefficients(spec, derive_seed(seed, 1100 + s)));
        d.push_back(b == Basis::Kac ? bl_distance(mu, circle, BLMode::Surrogate).value
                                    : bl_distance(pushforward_measure(mu), sphere, BLMode::Surrogate).value);
      }
      med.push_back(median(d));
    }
    const std::string name = to_string(b);
    out.push_back(above("median_drop_16_to_64_" + name, 64, med[0] - med[1], 0.0));
    out.push_back(above("median_drop_64_to_256_" + name, 256, med[1] - med[2], 0.0));
    out.push_back(at_most("median_bl_surrogate_n256_" + name, 256, med[2], 0.1));
  }
}

// ---- 12: real symmetry gate -------------------------------------------------------------------

void symmetry_gate(std::uint64_t seed, std::vector<CheckRecord>& out) {
  Rng rng(seed, 12);
  const auto spec = kac_rate_spec(512);
  long wrong_inf = 0;
  double worst = 0.0;
  for (int t = 0; t < 100; ++t) {
    std::vector<Complex> z;
    for (int i = 0; i < 20; ++i) z.push_back(rng.complex_gaussian(1.0));
    GridMeasure mu = as_grid(EmpiricalMeasure::plane(z));
    Eigen::VectorXd w(mu.size());
    for (Eigen::Index i = 0; i < w.size(); ++i) w(i) = rng.uniform_open();
    mu.weights = w / w.sum();
    if (real_rate_function(mu, spec) != kInf) ++wrong_inf;
    const GridMeasure sym = symmetrize(mu);
    const double got = real_rate_function(sym, spec);
    const double want = 0.5 * (rate_function(sym, spec).value - spec.center);
    worst = std::max(worst, std::isfinite(got) ? std::abs(got - want) : kInf);
  }
  out.push_back(at_most("asymmetric_not_infinite", 100, static_cast<double>(wrong_inf), 0.0));
  out.push_back(at_most("symmetrized_half_centered_error", 100, worst, 1e-12));
}

// ---- 13: detailed balance, cache coherence, mixing ----------------------------------------------

double balance_defect(const MoveRecord& fwd, const MoveRecord& rev) {
  const double lhs = fwd.log_target_x + fwd.log_q_forward + fwd.log_alpha;
  const double rhs = fwd.log_jacobian + fwd.log_target_y + rev.log_q_forward + rev.log_alpha;
  return std::max({std::abs(lhs - rhs), std::abs(fwd.log_jacobian + rev.log_jacobian),
                   std::abs(fwd.log_target_y - rev.log_target_x)});
}

void chain_checks(std::uint64_t seed, std::vector<CheckRecord>& out) {
  double worst = 0.0;
  Rng rng(seed, 13);
  for (int trial = 0; trial < 20; ++trial) {
    // complex particle move
    {
      auto spec = ModelSpec::kac(3, Field::Complex);
      spec.beta = 9.0;
      std::vector<Complex> z{rng.complex_gaussian(1.0), rng.complex_gaussian(1.0), rng.complex_gaussian(1.0)};
      GasChain x(spec, false, z, -1, seed);
      const int i = static_cast<int>(rng.index(3));
      const Complex old = z[static_cast<std::size_t>(i)];
      const auto f = x.propose_particle(i, old + 0.5 * rng.complex_gaussian(1.0));
      GasChain y(spec, false, f.proposed, -1, seed);
      worst = std::max(worst, balance_defect(f, y.propose_particle(i, old)));
    }
    const auto spec = [] {
      auto s = ModelSpec::kac(3, Field::Real);
      s.beta = 9.0;
      return s;
    }();
    const double xs[3] = {rng.normal(), rng.normal(), rng.normal()};
    // real move and birth from three reals
    {
      std::vector<Complex> z{xs[0], xs[1], xs[2]};
      GasChain x(spec, true, z, 0, seed);
      const int i = static_cast<int>(rng.index(3));
      const auto f = x.propose_real(i, xs[i] + 0.4 * rng.normal());
      GasChain y(spec, true, f.proposed, 0, seed);
      worst = std::max(worst, balance_defect(f, y.propose_real(i, xs[i])));

      const auto b = x.propose_birth(0, 2, rng.normal());
      GasChain yb(spec, true, b.proposed, 1, seed);
      worst = std::max(worst, balance_defect(b, yb.propose_death(b.reverse_index, b.reverse_xi)));
    }
    // pair move and death from one real and one pair
    {
      const Complex w(rng.normal(), 0.1 + std::abs(rng.normal()));
      std::vector<Complex> z{xs[0], w, std::conj(w)};
      GasChain x(spec, true, z, 1, seed);
      const auto f = x.propose_pair(0, w + 0.4 * rng.complex_gaussian(1.0));
      GasChain y(spec, true, f.proposed, 1, seed);
      worst = std::max(worst, balance_defect(f, y.propose_pair(0, w)));

      const auto d = x.propose_death(0, rng.normal());
      GasChain yd(spec, true, d.proposed, 0, seed);
      worst = std::max(worst, balance_defect(d, yd.propose_birth(d.reverse_index, d.reverse_index + 1, d.reverse_xi)));
    }
  }
  out.push_back(at_most("detailed_balance_log_defect", 3, worst, 1e-12));

  double drift = 0.0;
  for (const auto& [basis, field] : {std::pair{Basis::Kac, Field::Complex}, std::pair{Basis::Elliptic, Field::Complex},
                                     std::pair{Basis::Kac, Field::Real}, std::pair{Basis::Elliptic, Field::Real}}) {
    auto spec = basis == Basis::Kac ? ModelSpec::kac(6, field) : ModelSpec::elliptic(6, field);
    spec.beta = 36.0;
    ChainConfig cfg;
    cfg.steps = 100000;
    cfg.seed = seed;
    cfg.stream = 1300;
    const auto r = field == Field::Complex ? mcmc_complex(spec, cfg) : mcmc_real_mixture(spec, cfg);
    drift = std::max(drift, r.diagnostics.max_drift);
  }
  out.push_back(at_most("cached_h_drift", 6, drift, 1e-9));

  auto spec = ModelSpec::kac(4, Field::Complex);
  spec.beta = 16.0;
  std::vector<std::vector<double>> traces;
  for (const double radius : {0.05, 20.0}) {
    ChainConfig cfg;
    cfg.steps = 800000;
    cfg.seed = seed;
    cfg.stream = traces.size() + 1301;
    for (int i = 0; i < 4; ++i) cfg.init.push_back(std::polar(radius, 2.0 * kPi * (i + 0.3) / 4.0));
    traces.push_back(mcmc_complex(spec, cfg).h_trace);
  }
  out.push_back(at_most("gelman_rubin_h", 4, gelman_rubin(traces), 1.1));
}

struct Entry {
  const char* name;
  double budget;
};

constexpr Entry kEntries[kCriterionCount] = {
    {"geometry identities", 1},       {"parseval confinement", 5},   {"elliptic orthonormality", 10},
    {"bernstein-markov", 10},         {"root finder", 30},           {"complex law equivalence", 300},
    {"real mixture weights", 300},    {"mixture constant control", 1}, {"rate centering", 60},
    {"elliptic equilibrium", 300},    {"convergence to equilibrium", 300}, {"real symmetry gate", 10},
    {"chain balance and mixing", 120},
};

}  // namespace

CriterionResult run_criterion(int id, std::uint64_t seed) {
  if (id < 1 || id > kCriterionCount) throw std::invalid_argument("criterion id out of range");
  CriterionResult r;
  r.id = id;
  r.name = kEntries[id - 1].name;
  r.budget = kEntries[id - 1].budget;
  const auto t0 = std::chrono::steady_clock::now();
  auto& out = r.records;
  switch (id) {
    case 1: geometry_identities(seed, out); break;
    case 2: parseval(seed, out); break;
    case 3: elliptic_orthonormality(out); break;
    case 4: bernstein_markov(seed, out); break;
    case 5: root_finder(seed, out); break;
    case 6: law_equivalence(seed, out); break;
    case 7: mixture_weights(seed, out); break;
    case 8: z_control(out); break;
    case 9: rate_centering(seed, out); break;
    case 10: elliptic_equilibrium(out); break;
    case 11: convergence(seed, out); break;
    case 12: symmetry_gate(seed, out); break;
    case 13: chain_checks(seed, out); break;
  }
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  r.pass = !out.empty() && std::all_of(out.begin(), out.end(), [](const CheckRecord& c) { return c.pass; });
  return r;
}

std::vector<CriterionResult> run_acceptance(const std::vector<int>& ids, std::uint64_t seed) {
  std::vector<CriterionResult> out;
  for (int id : ids) out.push_back(run_criterion(id, seed));
  return out;
}

}  // namespace rootgas
