#include "rootgas/functionals.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <stdexcept>

#include "rootgas/geometry.hpp"
#include "rootgas/summation.hpp"

namespace rootgas {

const char* to_string(RateVariant v) {
  switch (v) {
    case RateVariant::Kac: return "kac";
    case RateVariant::Elliptic: return "elliptic";
    case RateVariant::Orthogonal: return "orthogonal";
  }
  return "?";
}

double log_sum_exp(const Eigen::Ref<const Eigen::VectorXd>& x) {
  if (x.size() == 0) return -kInf;
  const double m = x.maxCoeff();
  if (!std::isfinite(m)) return m;
  return m + std::log((x.array() - m).exp().sum());
}

// ---- potentials and energies -------------------------------------------------

double log_potential(const GridMeasure& mu, const Eigen::RowVector3d& x) {
  Accumulator acc;
  for (Eigen::Index i = 0; i < mu.size(); ++i) {
    if (mu.weights(i) == 0.0) continue;
    const double d = point_distance(mu.space, x, mu.points.row(i));
    if (d == 0.0) return kInf;
    acc.add(-mu.weights(i) * std::log(d));
  }
  return acc.value();
}

double log_potential(const EmpiricalMeasure& mu, Complex z) {
  if (mu.space != Space::Plane) throw std::invalid_argument("plane measure expected");
  return log_potential(as_grid(mu), Eigen::RowVector3d(z.real(), z.imag(), 0.0));
}

double discrete_energy(const EmpiricalMeasure& mu) {
  const Eigen::Index n = mu.size();
  std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
  for (Eigen::Index i = 0; i < n; ++i) order[static_cast<std::size_t>(i)] = i;
  std::sort(order.begin(), order.end(), [&](Eigen::Index a, Eigen::Index b) {
    for (int k = 0; k < 3; ++k)
      if (mu.atoms(a, k) != mu.atoms(b, k)) return mu.atoms(a, k) < mu.atoms(b, k);
    return false;
  });
  Accumulator acc;
  for (std::size_t a = 0; a < order.size(); ++a)
    for (std::size_t b = a + 1; b < order.size(); ++b) {
      const double d = point_distance(mu.space, mu.atoms.row(order[a]), mu.atoms.row(order[b]));
      if (d == 0.0) return kInf;
      acc.add(std::log(d));
    }
  return -2.0 * acc.value() / (static_cast<double>(n) * static_cast<double>(n));
}

namespace {

std::vector<Eigen::Index> charged(const GridMeasure& mu) {
  std::vector<Eigen::Index> idx;
  for (Eigen::Index i = 0; i < mu.size(); ++i)
    if (mu.weights(i) > 0.0) idx.push_back(i);
  return idx;
}

double half_log_dist2(const GridMeasure& mu, Eigen::Index i, Eigen::Index j) {
  if (mu.space == Space::Sphere) return 0.5 * std::log(sphere_dist2<double>(mu.sphere_point(i), mu.sphere_point(j)));
  return std::log(std::hypot(mu.points(i, 0) - mu.points(j, 0), mu.points(i, 1) - mu.points(j, 1)));
}

}  // namespace

double truncated_energy(const GridMeasure& mu, double M) {
  if (!(M > 0.0)) throw std::invalid_argument("truncation level must be positive");
  const auto idx = charged(mu);
  Accumulator off, diag;
  for (std::size_t a = 0; a < idx.size(); ++a) {
    const Eigen::Index i = idx[a];
    diag.add(mu.weights(i) * mu.weights(i) * std::min(M, mu.cell(i)));
    for (std::size_t b = a + 1; b < idx.size(); ++b) {
      const Eigen::Index j = idx[b];
      off.add(mu.weights(i) * mu.weights(j) * -std::max(half_log_dist2(mu, i, j), -M));
    }
  }
  return 2.0 * off.value() + diag.value();
}

double truncated_energy(const EmpiricalMeasure& mu, double M) { return truncated_energy(as_grid(mu), M); }

// ---- rate functional specs ----------------------------------------------------

void RateFunctionalSpec::validate() const {
  const Eigen::Index s = size();
  if (s == 0) throw std::invalid_argument("empty supremum domain");
  if (phi_tilde.size() != s || static_cast<Eigen::Index>(plane_sup.size()) != s ||
      static_cast<Eigen::Index>(is_north.size()) != s)
    throw std::invalid_argument("supremum domain arrays differ in length");
}

RateFunctionalSpec kac_rate_spec(Eigen::Index m, double offset) {
  RateFunctionalSpec s;
  s.variant = RateVariant::Kac;
  s.sphere_sup.resize(m, 3);
  s.phi_tilde = Eigen::VectorXd::Constant(m, -std::log(2.0));
  s.plane_sup.resize(static_cast<std::size_t>(m));
  s.is_north.assign(static_cast<std::size_t>(m), 0);
  for (Eigen::Index j = 0; j < m; ++j) {
    const double t = 2.0 * kPi * (static_cast<double>(j) + offset) / static_cast<double>(m);
    s.plane_sup[static_cast<std::size_t>(j)] = std::polar(1.0, t);
    s.sphere_sup.row(j) << 0.5 * std::cos(t), 0.5 * std::sin(t), 0.5;
  }
  s.refine = SupRefine::Angle;
  s.step_theta = 2.0 * kPi / static_cast<double>(m);
  s.center = 0.0;
  return s;
}

RateFunctionalSpec elliptic_rate_spec(Eigen::Index n, double twist) {
  const double golden = kPi * (3.0 - std::sqrt(5.0));
  RateFunctionalSpec s;
  s.variant = RateVariant::Elliptic;
  s.sphere_sup.resize(n + 2, 3);
  s.phi_tilde = Eigen::VectorXd::Zero(n + 2);
  s.plane_sup.resize(static_cast<std::size_t>(n + 2));
  s.is_north.assign(static_cast<std::size_t>(n + 2), 0);
  for (Eigen::Index i = 0; i < n; ++i) {
    const double c = 1.0 - 2.0 * (static_cast<double>(i) + 0.5) / static_cast<double>(n);
    const double r = std::sqrt(std::max(0.0, 1.0 - c * c));
    const double ph = golden * static_cast<double>(i) + twist;
    s.sphere_sup.row(i) << 0.5 * r * std::cos(ph), 0.5 * r * std::sin(ph), 0.5 * (1.0 + c);
    s.plane_sup[static_cast<std::size_t>(i)] = unproject<double>(s.sphere_sup.row(i).transpose());
  }
  s.sphere_sup.row(n) << 0.0, 0.0, 0.0;
  s.plane_sup[static_cast<std::size_t>(n)] = 0.0;
  s.sphere_sup.row(n + 1) << 0.0, 0.0, 1.0;
  s.plane_sup[static_cast<std::size_t>(n + 1)] = 0.0;
  s.is_north[static_cast<std::size_t>(n + 1)] = 1;
  s.refine = SupRefine::LogPolar;
  s.chordal_steps = true;
  s.step_theta = s.step_logr = std::sqrt(kPi / static_cast<double>(n));
  s.center = -0.5;
  return s;
}

RateFunctionalSpec elliptic_radial_rate_spec(double r_min, double r_max, Eigen::Index n_r, Eigen::Index n_theta,
                                             bool with_infinity) {
  if (!(r_min > 0.0 && r_max > r_min) || n_r < 2 || n_theta < 1)
    throw std::invalid_argument("bad radial grid");
  const Eigen::Index m = n_r * n_theta + (with_infinity ? 1 : 0);
  RateFunctionalSpec s;
  s.variant = RateVariant::Elliptic;
  s.sphere_sup.resize(m, 3);
  s.phi_tilde = Eigen::VectorXd::Zero(m);
  s.plane_sup.resize(static_cast<std::size_t>(m));
  s.is_north.assign(static_cast<std::size_t>(m), 0);
  const double dl = std::log(r_max / r_min) / static_cast<double>(n_r - 1);
  Eigen::Index k = 0;
  for (Eigen::Index i = 0; i < n_r; ++i)
    for (Eigen::Index j = 0; j < n_theta; ++j, ++k) {
      const Complex z = std::polar(r_min * std::exp(dl * static_cast<double>(i)),
                                   2.0 * kPi * static_cast<double>(j) / static_cast<double>(n_theta));
      s.plane_sup[static_cast<std::size_t>(k)] = z;
      s.sphere_sup.row(k) = project(z).transpose();
    }
  if (with_infinity) {
    s.sphere_sup.row(k) << 0.0, 0.0, 1.0;
    s.is_north[static_cast<std::size_t>(k)] = 1;
  }
  s.refine = SupRefine::LogPolar;
  s.step_theta = 2.0 * kPi / static_cast<double>(n_theta);
  s.step_logr = dl;
  s.center = -0.5;
  return s;
}

RateFunctionalSpec orthogonal_rate_spec(const OrthogonalWeight& w) {
  w.validate();
  const auto m = static_cast<Eigen::Index>(w.support.size());
  RateFunctionalSpec s;
  s.variant = RateVariant::Orthogonal;
  s.sphere_sup.resize(m, 3);
  s.phi_tilde.resize(m);
  s.plane_sup = w.support;
  s.is_north.assign(static_cast<std::size_t>(m), 0);
  for (Eigen::Index j = 0; j < m; ++j) {
    const Complex z = w.support[static_cast<std::size_t>(j)];
    s.sphere_sup.row(j) = project(z).transpose();
    s.phi_tilde(j) = w.phi(j) - log1p_norm(z);
  }
  s.refine = SupRefine::None;
  s.center = std::numeric_limits<double>::quiet_NaN();
  return s;
}

// ---- J functional -----------------------------------------------------------------

namespace {

// Penalty on the sphere chart at a refined point.
double refined_penalty(RateVariant v) { return v == RateVariant::Kac ? -std::log(2.0) : 0.0; }

// Evaluates s -> ∫ log_M|x - y|^2 dmu - penalty at arbitrary points, in the
// chart of the measure.
struct JEvaluator {
  const GridMeasure& mu;
  std::vector<Eigen::Index> idx;
  std::vector<double> lw;  // log(1+|w|^2) for plane measures
  double M;
  double log_moment = 0.0;

  JEvaluator(const GridMeasure& m, double trunc) : mu(m), idx(charged(m)), M(trunc) {
    if (mu.space == Space::Plane) {
      lw.resize(static_cast<std::size_t>(mu.size()), 0.0);
      Accumulator acc;
      for (Eigen::Index i : idx) {
        lw[static_cast<std::size_t>(i)] = log1p_norm(mu.plane_point(i));
        acc.add(mu.weights(i) * lw[static_cast<std::size_t>(i)]);
      }
      log_moment = acc.value();
    }
  }

  double at_sphere(const Point3& x, double phit) const {
    Accumulator acc;
    for (Eigen::Index i : idx) acc.add(mu.weights(i) * log_m(sphere_dist2<double>(x, mu.sphere_point(i)), 2.0 * M));
    return acc.value() - phit;
  }

  // planar value at finite z with phi(z) = phit + log(1+|z|^2); pairs closer
  // than e^{-M} in the chordal metric are truncated exactly as on the sphere
  double at_plane(Complex z, double phit) const {
    const double lz = log1p_norm(z);
    Accumulator acc;
    for (Eigen::Index i : idx) {
      const double d2 = std::norm(z - mu.plane_point(i));
      const double li = lw[static_cast<std::size_t>(i)];
      const double l = std::log(d2);
      const double t = (l - lz - li > -2.0 * M) ? l : -2.0 * M + lz + li;
      acc.add(mu.weights(i) * t);
    }
    return acc.value() - phit - lz;
  }

  // the |z| -> inf limit of the planar value
  double at_plane_infinity(double phit) const { return -phit; }

  double at(const RateFunctionalSpec& spec, Eigen::Index s) const {
    const double pt = spec.phi_tilde(s);
    if (mu.space == Space::Sphere) return at_sphere(spec.sphere_sup.row(s).transpose(), pt);
    if (spec.is_north[static_cast<std::size_t>(s)]) return at_plane_infinity(pt);
    return at_plane(spec.plane_sup[static_cast<std::size_t>(s)], pt);
  }

  double at_point(Complex z, double phit) const {
    if (mu.space == Space::Sphere) return at_sphere(project(z), phit);
    return at_plane(z, phit);
  }
};

// Golden-section maximization of f on [a, b]; returns the best value seen
// together with its abscissa.
std::pair<double, double> golden_max(const std::function<double(double)>& f, double a, double b) {
  const double g = 0.5 * (std::sqrt(5.0) - 1.0);
  double c = b - g * (b - a), d = a + g * (b - a);
  double fc = f(c), fd = f(d);
  for (int it = 0; it < 80 && (b - a) > 1e-13 * std::max(1.0, std::abs(a)); ++it) {
    if (fc >= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - g * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + g * (b - a);
      fd = f(d);
    }
  }
  return fc >= fd ? std::make_pair(fc, c) : std::make_pair(fd, d);
}

}  // namespace

JValue j_functional(const GridMeasure& mu, const RateFunctionalSpec& spec, double M) {
  spec.validate();
  const JEvaluator ev(mu, M);
  JValue out;
  for (Eigen::Index s = 0; s < spec.size(); ++s) {
    const double v = ev.at(spec, s);
    if (v > out.value) {  // strict: lowest index wins ties
      out.value = v;
      out.argmax = s;
    }
  }
  const Eigen::Index s = out.argmax;
  if (spec.refine == SupRefine::None || s < 0 || spec.is_north[static_cast<std::size_t>(s)]) return out;
  const Complex z0 = spec.plane_sup[static_cast<std::size_t>(s)];
  if (z0 == 0.0) return out;
  const double pt = refined_penalty(spec.variant);
  double theta = std::arg(z0), logr = std::log(std::abs(z0));

  double dth = spec.step_theta, dlr = spec.step_logr;
  if (spec.chordal_steps) {
    const double r = std::abs(z0);
    const double scale = (1.0 + r * r) / r;
    dth = std::min(kPi, dth * scale);
    dlr = std::min(3.0, dlr * scale);
  }

  auto at_polar = [&](double lr, double th) { return ev.at_point(std::polar(std::exp(lr), th), pt); };
  const auto [vt, th] = golden_max([&](double t) { return at_polar(logr, t); }, theta - dth, theta + dth);
  if (vt > out.value) {
    out.value = vt;
    out.refined = true;
  }
  theta = th;
  if (spec.refine == SupRefine::LogPolar) {
    const auto [vr, lr] = golden_max([&](double l) { return at_polar(l, theta); }, logr - dlr, logr + dlr);
    if (vr > out.value) {
      out.value = vr;
      out.refined = true;
    }
    (void)lr;
  }
  return out;
}

// ---- rate functions ------------------------------------------------------------------

RateValue rate_function(const GridMeasure& mu, const RateFunctionalSpec& spec, double M) {
  RateValue out;
  const GridMeasure sphere = mu.space == Space::Sphere ? mu : pushforward(mu);
  out.energy = truncated_energy(sphere, M);
  out.j = j_functional(sphere, spec, M).value;
  out.value = out.energy + out.j;
  if (mu.space == Space::Plane) {
    out.planar = planar_rate(mu, spec, M);
    Accumulator acc;
    for (Eigen::Index i = 0; i < mu.size(); ++i)
      if (mu.weights(i) > 0.0) acc.add(mu.weights(i) * log1p_norm(mu.plane_point(i)));
    out.log_moment = acc.value();
  }
  return out;
}

double planar_rate(const GridMeasure& mu, const RateFunctionalSpec& spec, double M) {
  if (mu.space != Space::Plane) throw std::invalid_argument("planar form needs a plane measure");
  const auto idx = charged(mu);
  std::vector<double> L(static_cast<std::size_t>(mu.size()), 0.0);
  for (Eigen::Index i : idx) L[static_cast<std::size_t>(i)] = log1p_norm(mu.plane_point(i));
  Accumulator off, diag;
  for (std::size_t a = 0; a < idx.size(); ++a) {
    const Eigen::Index i = idx[a];
    const double li = L[static_cast<std::size_t>(i)];
    const double cs = mu.cell(i) + li;  // sphere-chart cell energy (inf stays inf)
    diag.add(mu.weights(i) * mu.weights(i) * (std::min(M, cs) - li));
    for (std::size_t b = a + 1; b < idx.size(); ++b) {
      const Eigen::Index j = idx[b];
      const double lj = L[static_cast<std::size_t>(j)];
      const double l = std::log(std::norm(mu.plane_point(i) - mu.plane_point(j)));
      const double k = (l - li - lj > -2.0 * M) ? -0.5 * l : M - 0.5 * li - 0.5 * lj;
      off.add(mu.weights(i) * mu.weights(j) * k);
    }
  }
  return 2.0 * off.value() + diag.value() + j_functional(mu, spec, M).value;
}

double real_rate_function(const GridMeasure& mu, const RateFunctionalSpec& spec, double M) {
  if (!is_symmetric(mu)) return kInf;
  return 0.5 * (rate_function(mu, spec, M).value - spec.center);
}

double plane_sphere_rate_identity_residual(const GridMeasure& mu, const RateFunctionalSpec& spec, double M) {
  const double a = planar_rate(mu, spec, M);
  const double b = rate_function(pushforward(mu), spec, M).value;
  return std::abs(a - b);
}

// ---- Hamiltonians ----------------------------------------------------------------------

double elliptic_log_norm(const std::vector<Complex>& roots) {
  const int n = static_cast<int>(roots.size());
  std::vector<Complex> b{1.0};
  double scale = 0.0;
  for (const auto& r : roots) {
    std::vector<Complex> nb(b.size() + 1, 0.0);
    for (std::size_t k = 0; k < b.size(); ++k) {
      nb[k + 1] += b[k];
      nb[k] -= r * b[k];
    }
    double m = 0.0;
    for (const auto& x : nb) m = std::max(m, std::abs(x));
    for (auto& x : nb) x /= m;
    scale += std::log(m);
    b = std::move(nb);
  }
  Eigen::VectorXd t(n + 1);
  for (int k = 0; k <= n; ++k)
    t(k) = 2.0 * std::log(std::abs(b[static_cast<std::size_t>(k)])) - std::log(n + 1.0) - log_binomial(n, k);
  return log_sum_exp(t) + 2.0 * scale;
}

double log_confinement(const std::vector<Complex>& z, const ModelSpec& spec) {
  const int n = static_cast<int>(z.size());
  switch (spec.basis) {
    case Basis::Kac: {
      // discrete Parseval at n+1 roots of unity is exact for degree n
      const int m = n + 1;
      Eigen::VectorXd s(m);
      for (int j = 0; j < m; ++j) {
        const Complex w = std::polar(1.0, 2.0 * kPi * j / m);
        double a = 0.0;
        for (const auto& x : z) a += std::log(std::norm(w - x));
        s(j) = a;
      }
      return log_sum_exp(s) - std::log(static_cast<double>(m));
    }
    case Basis::Elliptic: return elliptic_log_norm(z);
    case Basis::Orthogonal: {
      const auto& w = *spec.weight;
      const auto m = static_cast<Eigen::Index>(w.support.size());
      Eigen::VectorXd s(m);
      for (Eigen::Index j = 0; j < m; ++j) {
        if (w.nu(j) == 0.0) {
          s(j) = -kInf;
          continue;
        }
        double a = std::log(w.nu(j)) - spec.degree * w.phi(j);
        for (const auto& x : z) a += std::log(std::norm(w.support[static_cast<std::size_t>(j)] - x));
        s(j) = a;
      }
      return log_sum_exp(s);
    }
  }
  return 0.0;
}

double hamiltonian(const std::vector<Complex>& z, const ModelSpec& spec) {
  const auto n = static_cast<double>(z.size());
  if (static_cast<int>(z.size()) != spec.degree) throw std::invalid_argument("particle count differs from degree");
  Accumulator acc;
  for (std::size_t i = 0; i < z.size(); ++i)
    for (std::size_t j = i + 1; j < z.size(); ++j) {
      const double d = std::abs(z[i] - z[j]);
      if (d == 0.0) return kInf;
      acc.add(std::log(d));
    }
  return -2.0 * acc.value() / (n * n) + (n + 1.0) / (n * n) * log_confinement(z, spec);
}

}  // namespace rootgas
