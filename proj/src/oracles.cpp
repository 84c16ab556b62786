#include "rootgas/oracles.hpp"

#include <cmath>
#include <limits>

#include <boost/math/quadrature/gauss_kronrod.hpp>

namespace rootgas::oracle {

double elliptic_moment(int k, int n) {
  auto f = [k, n](double r) {
    if (r == 0.0) return 0.0;
    return 2.0 * std::exp((2.0 * k + 1.0) * std::log(r) - (n + 2.0) * std::log1p(r * r));
  };
  double err = 0.0;
  return boost::math::quadrature::gauss_kronrod<double, 61>::integrate(
      f, 0.0, std::numeric_limits<double>::infinity(), 15, 1e-14, &err);
}

double coefficient_norm2(const std::vector<Complex>& a) {
  double s = 0.0;
  for (const auto& x : a) s += std::norm(x);
  return s;
}

double complex_root_fraction(long draws, std::uint64_t seed) {
  Rng rng(seed, 0xd15c);
  long hits = 0;
  for (long t = 0; t < draws; ++t) {
    const double a0 = rng.gaussian(0.5), a1 = rng.gaussian(0.5), a2 = rng.gaussian(0.5);
    if (a1 * a1 < 4.0 * a0 * a2) ++hits;
  }
  return static_cast<double>(hits) / static_cast<double>(draws);
}

RootStatistics root_statistics(const std::vector<std::vector<Complex>>& configurations) {
  RootStatistics s;
  for (const auto& z : configurations) {
    double lp = 0.0, sum = 0.0;
    for (const auto& x : z) {
      lp += std::log(std::abs(x));
      sum += std::abs(x);
    }
    s.abs_product.push_back(std::exp(lp));
    s.abs_sum.push_back(sum);
  }
  return s;
}

RootStatistics direct_root_statistics(const ModelSpec& spec, long count, std::uint64_t seed) {
  Rng rng(seed, 0x500f);
  std::vector<std::vector<Complex>> configs;
  configs.reserve(static_cast<std::size_t>(count));
  for (long t = 0; t < count; ++t) configs.push_back(find_roots(sample_coefficients(spec, rng)).plane_atoms());
  return root_statistics(configs);
}

double circle_log_energy() { return 0.0; }

double sphere_log_energy() {
  // on the diameter-1 sphere |x - y|^2 = (1 - cos theta) / 2 is uniform on
  // [0, 1] for independent uniform points, so -E log|x - y| = -E log u / 2
  return 0.5;
}

}  // namespace rootgas::oracle
