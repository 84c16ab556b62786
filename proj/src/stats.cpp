#include "rootgas/stats.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "rootgas/rng.hpp"

namespace rootgas {

namespace {

double ks_stat_sorted(const std::vector<double>& a, const std::vector<double>& b) {
  std::size_t i = 0, j = 0;
  double d = 0.0;
  const double na = static_cast<double>(a.size()), nb = static_cast<double>(b.size());
  while (i < a.size() && j < b.size()) {
    const double x = std::min(a[i], b[j]);
    while (i < a.size() && a[i] <= x) ++i;
    while (j < b.size() && b[j] <= x) ++j;
    d = std::max(d, std::abs(static_cast<double>(i) / na - static_cast<double>(j) / nb));
  }
  return d;
}

double kolmogorov_q(double lambda) {
  if (lambda < 1e-3) return 1.0;
  double s = 0.0, sign = 1.0;
  for (int j = 1; j <= 200; ++j) {
    const double t = sign * std::exp(-2.0 * j * j * lambda * lambda);
    s += t;
    if (std::abs(t) < 1e-16 * std::abs(s)) break;
    sign = -sign;
  }
  return std::clamp(2.0 * s, 0.0, 1.0);
}

}  // namespace

KSResult ks_two_sample(std::vector<double> a, std::vector<double> b, std::uint64_t seed) {
  if (a.empty() || b.empty()) throw std::invalid_argument("KS test needs nonempty samples");
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  KSResult r;
  r.statistic = ks_stat_sorted(a, b);
  const double ne = static_cast<double>(a.size()) * b.size() / (a.size() + b.size());
  if (ne >= 10.0) {
    const double sq = std::sqrt(ne);
    r.p_value = kolmogorov_q((sq + 0.12 + 0.11 / sq) * r.statistic);
    return r;
  }
  // permutation fallback
  r.permutation = true;
  std::vector<double> pool(a);
  pool.insert(pool.end(), b.begin(), b.end());
  Rng rng(seed);
  const int reps = 2000;
  int hits = 0;
  for (int t = 0; t < reps; ++t) {
    for (std::size_t i = pool.size() - 1; i > 0; --i) std::swap(pool[i], pool[rng.index(i + 1)]);
    std::vector<double> pa(pool.begin(), pool.begin() + static_cast<long>(a.size()));
    std::vector<double> pb(pool.begin() + static_cast<long>(a.size()), pool.end());
    std::sort(pa.begin(), pa.end());
    std::sort(pb.begin(), pb.end());
    if (ks_stat_sorted(pa, pb) >= r.statistic - 1e-12) ++hits;
  }
  r.p_value = (hits + 1.0) / (reps + 1.0);
  if (r.statistic == 0.0) r.p_value = 1.0;
  return r;
}

std::vector<TwoSampleEntry> two_sample_validate(const std::vector<std::vector<double>>& a,
                                                const std::vector<std::vector<double>>& b,
                                                const std::vector<std::string>& names) {
  if (a.size() != b.size() || a.size() != names.size()) throw std::invalid_argument("statistic lists differ");
  std::vector<TwoSampleEntry> out;
  for (std::size_t i = 0; i < a.size(); ++i) out.push_back({names[i], ks_two_sample(a[i], b[i])});
  return out;
}

double integrated_autocorrelation(const std::vector<double>& x, double c) {
  const std::size_t n = x.size();
  if (n < 4) return 1.0;
  double m = 0.0;
  for (double v : x) m += v;
  m /= static_cast<double>(n);
  double c0 = 0.0;
  for (double v : x) c0 += (v - m) * (v - m);
  c0 /= static_cast<double>(n);
  if (c0 == 0.0) return 1.0;
  double tau = 1.0;
  for (std::size_t k = 1; k < n / 2; ++k) {
    double ck = 0.0;
    for (std::size_t i = 0; i + k < n; ++i) ck += (x[i] - m) * (x[i + k] - m);
    ck /= static_cast<double>(n);
    tau += 2.0 * ck / c0;
    if (static_cast<double>(k) >= c * tau) break;
  }
  return std::max(tau, 1.0);
}

double gelman_rubin(const std::vector<std::vector<double>>& chains) {
  const std::size_t m = chains.size();
  if (m < 2) throw std::invalid_argument("need at least two chains");
  const std::size_t n = chains.front().size();
  for (const auto& c : chains)
    if (c.size() != n || n < 2) throw std::invalid_argument("chains must share a length >= 2");
  std::vector<double> means(m), vars(m);
  for (std::size_t j = 0; j < m; ++j) {
    means[j] = mean(chains[j]);
    double s = 0.0;
    for (double v : chains[j]) s += (v - means[j]) * (v - means[j]);
    vars[j] = s / static_cast<double>(n - 1);
  }
  const double grand = mean(means);
  double B = 0.0;
  for (double v : means) B += (v - grand) * (v - grand);
  B *= static_cast<double>(n) / static_cast<double>(m - 1);
  const double W = mean(vars);
  const double var_plus = (static_cast<double>(n - 1) / n) * W + B / static_cast<double>(n);
  return std::sqrt(var_plus / W);
}

double median(std::vector<double> x) {
  if (x.empty()) throw std::invalid_argument("median of empty sample");
  std::sort(x.begin(), x.end());
  const std::size_t h = x.size() / 2;
  return x.size() % 2 ? x[h] : 0.5 * (x[h - 1] + x[h]);
}

double mean(const std::vector<double>& x) {
  if (x.empty()) throw std::invalid_argument("mean of empty sample");
  double s = 0.0;
  for (double v : x) s += v;
  return s / static_cast<double>(x.size());
}

}  // namespace rootgas
