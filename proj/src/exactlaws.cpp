#include "rootgas/exactlaws.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "rootgas/functionals.hpp"
#include "rootgas/geometry.hpp"
#include "rootgas/grids.hpp"

namespace rootgas {

double elliptic_inner_product(int k, int n) {
  if (k < 0 || k > n) throw std::invalid_argument("need 0 <= k <= n");
  return std::exp(-std::log(n + 1.0) - log_binomial(n, k));
}

double log_z_complex(const ModelSpec& spec) {
  const int n = spec.degree;
  return n * std::log(kPi) + spec.log_det_sq() - std::lgamma(n + 1.0);
}

double log_z_real(const ModelSpec& spec, int k) {
  const int n = spec.degree;
  if (k < 0 || 2 * k > n) throw std::invalid_argument("pair count out of range");
  return std::lgamma(k + 1.0) + std::lgamma(n - 2.0 * k + 1.0) + 0.5 * (n + 1.0) * std::log(kPi) -
         k * std::log(2.0) - std::lgamma(0.5 * (n + 1.0)) + 0.5 * spec.log_det_sq();
}

MixtureConstants mixture_constants(const ModelSpec& spec) {
  MixtureConstants out;
  out.n = spec.degree;
  for (int k = 0; 2 * k <= spec.degree; ++k) out.log_z.push_back(log_z_real(spec, k));
  for (double v : out.log_z) out.control = std::max(out.control, std::abs(v));
  out.control /= static_cast<double>(spec.degree) * spec.degree;
  return out;
}

namespace {

bool beta_is_natural(const ModelSpec& spec) {
  return spec.beta == static_cast<double>(spec.degree) * spec.degree;
}

}  // namespace

DensityValue complex_root_logdensity(const std::vector<Complex>& z, const ModelSpec& spec) {
  DensityValue d;
  d.log_unnormalized = -spec.beta * hamiltonian(z, spec);
  d.log_density = beta_is_natural(spec) ? d.log_unnormalized - log_z_complex(spec)
                                        : std::numeric_limits<double>::quiet_NaN();
  return d;
}

DensityValue real_mixture_logdensity(const std::vector<Complex>& z, int k, const ModelSpec& spec) {
  const int n = static_cast<int>(z.size());
  if (n != spec.degree || k < 0 || 2 * k > n) throw BadMixtureStructure("pair count inconsistent with degree");
  const int r = n - 2 * k;
  constexpr double tol = 1e-10;
  for (int i = 0; i < r; ++i)
    if (std::abs(z[i].imag()) > tol * std::max(1.0, std::abs(z[i])))
      throw BadMixtureStructure("particle in the real block is not real");
  for (int p = 0; p < k; ++p) {
    const Complex a = z[r + 2 * p], b = z[r + 2 * p + 1];
    if (std::abs(b - std::conj(a)) > tol * std::max(1.0, std::abs(a)))
      throw BadMixtureStructure("pair is not conjugate");
  }
  DensityValue d;
  d.k = k;
  d.log_unnormalized = -0.5 * spec.beta * hamiltonian(z, spec);
  d.log_density = beta_is_natural(spec) ? d.log_unnormalized - log_z_real(spec, k)
                                        : std::numeric_limits<double>::quiet_NaN();
  return d;
}

std::vector<Complex> mixture_layout(const std::vector<Complex>& roots, int& k, double tol) {
  std::vector<std::size_t> order(roots.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return roots[a].imag() > roots[b].imag(); });
  std::vector<char> used(roots.size(), 0);
  std::vector<Complex> reals, pairs;
  for (std::size_t a : order) {
    if (used[a]) continue;
    const Complex z = roots[a];
    const double t = tol * std::max(1.0, std::abs(z));
    if (std::abs(z.imag()) <= t) {
      used[a] = 1;
      reals.emplace_back(z.real(), 0.0);
      continue;
    }
    std::size_t best = roots.size();
    double bd = kInf;
    for (std::size_t b = 0; b < roots.size(); ++b) {
      if (b == a || used[b]) continue;
      const double d = std::abs(roots[b] - std::conj(z));
      if (d < bd) {
        bd = d;
        best = b;
      }
    }
    if (best == roots.size() || bd > t) throw BadMixtureStructure("root without a conjugate partner");
    used[a] = used[best] = 1;
    Complex w = 0.5 * (z + std::conj(roots[best]));
    if (w.imag() < 0.0) w = std::conj(w);
    pairs.push_back(w);
  }
  std::sort(reals.begin(), reals.end(), [](Complex a, Complex b) { return a.real() < b.real(); });
  k = static_cast<int>(pairs.size());
  std::vector<Complex> out = reals;
  for (const auto& w : pairs) {
    out.push_back(w);
    out.push_back(std::conj(w));
  }
  return out;
}

// ---- Bernstein–Markov ----------------------------------------------------------

namespace {

Complex horner(const std::vector<Complex>& c, Complex z) {
  Complex p = 0.0;
  for (auto it = c.rbegin(); it != c.rend(); ++it) p = p * z + *it;
  return p;
}

// |P(z)|^2 / (1+|z|^2)^N, evaluated through the reversed polynomial outside
// the unit disk
double weighted_square(const std::vector<Complex>& c, Complex z) {
  const int N = static_cast<int>(c.size()) - 1;
  const double r2 = std::norm(z);
  if (r2 <= 1.0) return std::norm(horner(c, z)) * std::exp(-N * std::log1p(r2));
  std::vector<Complex> rev(c.rbegin(), c.rend());
  return std::norm(horner(rev, 1.0 / z)) * std::exp(-N * std::log1p(1.0 / r2));
}

}  // namespace

BernsteinMarkov bernstein_markov_check(const std::vector<Complex>& c, BMKind kind) {
  if (c.empty()) throw std::invalid_argument("empty polynomial");
  const int N = static_cast<int>(c.size()) - 1;
  const Eigen::Index pts = 16 * (N + 1);
  BernsteinMarkov out;
  if (kind == BMKind::Circle) {
    double n2 = 0.0;
    for (const auto& x : c) n2 += std::norm(x);
    out.norm = std::sqrt(n2);
    for (Eigen::Index j = 0; j < pts; ++j)
      out.sup = std::max(out.sup, std::abs(horner(c, std::polar(1.0, 2.0 * kPi * static_cast<double>(j) /
                                                                         static_cast<double>(pts)))));
    out.bound = std::sqrt(N + 1.0);
  } else {
    for (int k = 0; k <= N; ++k) out.norm += std::norm(c[static_cast<std::size_t>(k)]) * elliptic_inner_product(k, N);
    const GridMeasure g = fibonacci_sphere_grid(pts);
    for (Eigen::Index i = 0; i < g.size(); ++i)
      out.sup = std::max(out.sup, weighted_square(c, unproject<double>(g.sphere_point(i))));
    out.sup = std::max(out.sup, std::norm(c.back()));  // value at infinity
    out.bound = N + 1.0;
  }
  out.ratio = out.sup / out.norm;
  out.pass = out.ratio <= out.bound * (1.0 + 1e-12);
  return out;
}

}  // namespace rootgas
