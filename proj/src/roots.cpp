// Aberth–Ehrlich simultaneous root finding.
#include <algorithm>
#include <cmath>
#include <limits>

#include <Eigen/Eigenvalues>

#include "rootgas/ensembles.hpp"

namespace rootgas {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

struct Eval {
  Complex ratio;  // p / p'
  bool small;     // |p| within rounding of zero
};

// Newton ratio at z. For |z| > 1 the reversed polynomial is evaluated at 1/z.
Eval newton_ratio(const std::vector<Complex>& c, Complex z) {
  const int n = static_cast<int>(c.size()) - 1;
  if (std::abs(z) <= 1.0) {
    Complex p = c[n], dp = 0.0;
    double bound = std::abs(c[n]);
    const double az = std::abs(z);
    for (int k = n - 1; k >= 0; --k) {
      dp = dp * z + p;
      p = p * z + c[k];
      bound = bound * az + std::abs(c[k]);
    }
    const bool small = std::abs(p) <= 4.0 * n * kEps * bound;
    if (dp == 0.0) return {Complex(0.0), small};
    return {p / dp, small};
  }
  const Complex y = 1.0 / z;
  const double ay = std::abs(y);
  Complex q = c[0], dq = 0.0;
  double bound = std::abs(c[0]);
  for (int k = 1; k <= n; ++k) {
    dq = dq * y + q;
    q = q * y + c[k];
    bound = bound * ay + std::abs(c[k]);
  }
  const bool small = std::abs(q) <= 4.0 * n * kEps * bound;
  const Complex den = y * (static_cast<double>(n) * q - y * dq);
  if (den == 0.0) return {Complex(0.0), small};
  return {q / den, small};
}

// Circles from the upper convex hull of (k, log|c_k|).
std::vector<Complex> polygon_start(const std::vector<Complex>& c, double rot) {
  const int n = static_cast<int>(c.size()) - 1;
  std::vector<double> la(c.size());
  for (int k = 0; k <= n; ++k) la[k] = c[k] == 0.0 ? -kInf : std::log(std::abs(c[k]));
  std::vector<int> hull;
  for (int k = 0; k <= n; ++k) {
    if (!std::isfinite(la[k])) continue;
    while (hull.size() >= 2) {
      const int a = hull[hull.size() - 2], b = hull.back();
      // drop b if it lies on or below the segment a-k
      if ((la[b] - la[a]) * (k - a) <= (la[k] - la[a]) * (b - a)) hull.pop_back();
      else break;
    }
    hull.push_back(k);
  }
  std::vector<Complex> z;
  z.reserve(n);
  for (std::size_t h = 0; h + 1 < hull.size(); ++h) {
    const int a = hull[h], b = hull[h + 1];
    const double r = std::exp((la[a] - la[b]) / (b - a));
    for (int j = 0; j < b - a; ++j)
      z.push_back(std::polar(r, 2.0 * kPi * j / (b - a) + 2.0 * kPi * h / n + rot));
  }
  return z;
}

std::vector<Complex> companion_start(const std::vector<Complex>& c) {
  const int n = static_cast<int>(c.size()) - 1;
  Eigen::MatrixXcd A = Eigen::MatrixXcd::Zero(n, n);
  for (int i = 1; i < n; ++i) A(i, i - 1) = 1.0;
  for (int i = 0; i < n; ++i) A(i, n - 1) = -c[i] / c[n];
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(A, false);
  std::vector<Complex> z(n);
  for (int i = 0; i < n; ++i) z[i] = es.eigenvalues()(i);
  return z;
}

bool aberth(const std::vector<Complex>& c, std::vector<Complex>& z) {
  const int n = static_cast<int>(z.size());
  std::vector<char> done(n, 0);
  int remaining = n;
  for (int sweep = 0; sweep < 200 && remaining > 0; ++sweep) {
    for (int i = 0; i < n; ++i) {
      if (done[i]) continue;
      const Eval e = newton_ratio(c, z[i]);
      if (e.small) {
        done[i] = 1;
        --remaining;
        continue;
      }
      Complex s = 0.0;
      for (int j = 0; j < n; ++j)
        if (j != i) s += 1.0 / (z[i] - z[j]);
      const Complex w = e.ratio / (1.0 - e.ratio * s);
      if (!std::isfinite(w.real()) || !std::isfinite(w.imag())) return false;
      z[i] -= w;
      if (std::abs(w) <= 1e-13 * std::max(1.0, std::abs(z[i]))) {
        done[i] = 1;
        --remaining;
      }
    }
  }
  return remaining == 0;
}

bool all_finite(const std::vector<Complex>& z) {
  return std::all_of(z.begin(), z.end(), [](Complex w) { return std::isfinite(w.real()) && std::isfinite(w.imag()); });
}

}  // namespace

std::vector<Complex> polynomial_roots(const std::vector<Complex>& coefficients) {
  if (coefficients.empty()) throw std::invalid_argument("empty coefficient list");
  if (coefficients.back() == 0.0) throw DegenerateLeading("leading coefficient is zero");
  // exact zero roots first
  std::size_t lead0 = 0;
  while (lead0 + 1 < coefficients.size() && coefficients[lead0] == 0.0) ++lead0;
  std::vector<Complex> c(coefficients.begin() + static_cast<long>(lead0), coefficients.end());
  double m = 0.0;
  for (const auto& x : c) m = std::max(m, std::abs(x));
  for (auto& x : c) x /= m;

  std::vector<Complex> roots(lead0, Complex(0.0));
  const int n = static_cast<int>(c.size()) - 1;
  if (n == 1) {
    roots.push_back(-c[0] / c[1]);
  } else if (n > 1) {
    std::vector<Complex> z;
    if (n <= 60) {
      z = companion_start(c);
      if (!all_finite(z)) z = polygon_start(c, 0.4);
    } else {
      z = polygon_start(c, 0.4);
    }
    if (!aberth(c, z)) {
      z = polygon_start(c, 1.9);
      if (!aberth(c, z)) throw ConvergenceError("Aberth iteration did not converge after restart");
    }
    roots.insert(roots.end(), z.begin(), z.end());
  }
  std::sort(roots.begin(), roots.end(), [](Complex a, Complex b) {
    return a.real() < b.real() || (a.real() == b.real() && a.imag() < b.imag());
  });
  return roots;
}

std::vector<Complex> monic_from_roots(const std::vector<Complex>& roots) {
  const std::size_t n = roots.size();
  const std::size_t m = n + 1;
  std::vector<Complex> vals(m);
  for (std::size_t j = 0; j < m; ++j) {
    const Complex w = std::polar(1.0, 2.0 * kPi * static_cast<double>(j) / static_cast<double>(m));
    Complex p = 1.0;
    for (const auto& r : roots) p *= w - r;
    vals[j] = p;
  }
  // inverse DFT; the top coefficient is 1 by construction
  std::vector<Complex> c(m);
  for (std::size_t k = 0; k < m; ++k) {
    Complex s = 0.0;
    for (std::size_t j = 0; j < m; ++j)
      s += vals[j] * std::polar(1.0, -2.0 * kPi * static_cast<double>((j * k) % m) / static_cast<double>(m));
    c[k] = s / static_cast<double>(m);
  }
  c[n] = 1.0;
  return c;
}

double reconstruction_error(const std::vector<Complex>& roots, const std::vector<Complex>& coefficients) {
  if (roots.size() + 1 != coefficients.size()) throw std::invalid_argument("root count does not match degree");
  const Complex lead = coefficients.back();
  const auto rebuilt = monic_from_roots(roots);
  double num = 0.0, den = 0.0;
  for (std::size_t k = 0; k < coefficients.size(); ++k) {
    const Complex target = coefficients[k] / lead;
    num += std::norm(rebuilt[k] - target);
    den += std::norm(target);
  }
  return std::sqrt(num / den);
}

}  // namespace rootgas
