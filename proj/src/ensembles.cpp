#include "rootgas/ensembles.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <Eigen/Cholesky>
#include <Eigen/Eigenvalues>

namespace rootgas {

const char* to_string(Basis b) {
  switch (b) {
    case Basis::Kac: return "kac";
    case Basis::Elliptic: return "elliptic";
    case Basis::Orthogonal: return "orthogonal";
  }
  return "?";
}

const char* to_string(Field f) { return f == Field::Real ? "real" : "complex"; }

Basis parse_basis(const std::string& s) {
  if (s == "kac") return Basis::Kac;
  if (s == "elliptic") return Basis::Elliptic;
  if (s == "orthogonal") return Basis::Orthogonal;
  throw std::invalid_argument("unknown model '" + s + "'");
}

Field parse_field(const std::string& s) {
  if (s == "real") return Field::Real;
  if (s == "complex") return Field::Complex;
  throw std::invalid_argument("unknown field '" + s + "'");
}

double log_binomial(int n, int k) {
  return std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0);
}

void OrthogonalWeight::validate() const {
  const auto m = static_cast<Eigen::Index>(support.size());
  if (m == 0) throw std::invalid_argument("orthogonal weight has empty support");
  if (nu.size() != m || phi.size() != m) throw std::invalid_argument("orthogonal weight arrays differ in length");
  if ((nu.array() < 0.0).any()) throw std::invalid_argument("negative nu weight");
  if (std::abs(nu.sum() - 1.0) > 1e-12) throw std::invalid_argument("nu weights do not sum to 1");
  if (!phi.allFinite()) throw std::invalid_argument("phi must be finite on the support");
}

ModelSpec ModelSpec::kac(int n, Field field) {
  ModelSpec s;
  s.basis = Basis::Kac;
  s.field = field;
  s.degree = n;
  s.beta = static_cast<double>(n) * n;
  s.validate();
  return s;
}

ModelSpec ModelSpec::elliptic(int n, Field field) {
  ModelSpec s = kac(n, field);
  s.basis = Basis::Elliptic;
  return s;
}

ModelSpec ModelSpec::orthogonal(std::shared_ptr<const OrthogonalWeight> w, int n, Field field) {
  if (!w) throw std::invalid_argument("orthogonal model needs a weight");
  w->validate();
  ModelSpec s = kac(n, field);
  s.basis = Basis::Orthogonal;
  s.change = std::make_shared<BasisChange>(gram_schmidt_basis(w->support, w->nu, w->phi, n));
  s.weight = std::move(w);
  return s;
}

void ModelSpec::validate() const {
  if (degree < 1) throw std::invalid_argument("degree must be >= 1");
  if (!(beta > 0.0)) throw std::invalid_argument("beta must be positive");
  if (basis == Basis::Orthogonal && (!weight || !change))
    throw std::invalid_argument("orthogonal model needs weight and basis change");
}

double ModelSpec::log_det_sq() const {
  switch (basis) {
    case Basis::Kac: return 0.0;
    case Basis::Elliptic: {
      double s = 0.0;
      for (int k = 0; k <= degree; ++k) s += std::log(degree + 1.0) + log_binomial(degree, k);
      return s;
    }
    case Basis::Orthogonal: return change->log_det_sq;
  }
  return 0.0;
}

// ---- polynomial storage -------------------------------------------------------

ComplexPolynomial::ComplexPolynomial(Basis basis, std::vector<double> log_abs, std::vector<double> arg)
    : basis_(basis), log_abs_(std::move(log_abs)), arg_(std::move(arg)) {
  if (log_abs_.size() != arg_.size() || log_abs_.empty()) throw std::invalid_argument("bad coefficient arrays");
}

ComplexPolynomial ComplexPolynomial::from_coefficients(const std::vector<Complex>& c, Basis basis) {
  std::vector<double> la(c.size()), ar(c.size());
  for (std::size_t k = 0; k < c.size(); ++k) {
    la[k] = std::log(std::abs(c[k]));
    ar[k] = std::arg(c[k]);
  }
  return {basis, la, ar};
}

namespace {

// Phases 0 and pi come from real coefficients; keep those exactly real.
Complex from_polar(double r, double theta) {
  if (theta == 0.0) return {r, 0.0};
  if (theta == kPi || theta == -kPi) return {-r, 0.0};
  return std::polar(r, theta);
}

}  // namespace

Complex ComplexPolynomial::coefficient(int k) const { return from_polar(std::exp(log_abs(k)), arg(k)); }

double ComplexPolynomial::log_max() const { return *std::max_element(log_abs_.begin(), log_abs_.end()); }

std::vector<Complex> ComplexPolynomial::normalized() const {
  const double m = log_max();
  std::vector<Complex> c(log_abs_.size());
  for (std::size_t k = 0; k < c.size(); ++k)
    c[k] = std::isfinite(log_abs_[k]) ? from_polar(std::exp(log_abs_[k] - m), arg_[k]) : Complex(0.0);
  return c;
}

// ---- sampling ----------------------------------------------------------------

ComplexPolynomial sample_coefficients(const ModelSpec& spec, std::uint64_t seed) {
  Rng rng(seed);
  return sample_coefficients(spec, rng);
}

ComplexPolynomial sample_coefficients(const ModelSpec& spec, Rng& rng) {
  spec.validate();
  const int n = spec.degree;
  std::vector<Complex> a(static_cast<std::size_t>(n) + 1);
  auto draw = [&]() { return spec.field == Field::Complex ? rng.complex_gaussian(1.0) : Complex(rng.gaussian(0.5), 0.0); };
  for (auto& x : a) x = draw();
  if (a.back() == 0.0) {
    a.back() = draw();
    if (a.back() == 0.0) throw DegenerateLeading("leading coefficient sampled as exactly zero");
  }

  std::vector<double> la(a.size()), ar(a.size());
  switch (spec.basis) {
    case Basis::Kac:
      for (std::size_t k = 0; k < a.size(); ++k) {
        la[k] = std::log(std::abs(a[k]));
        ar[k] = std::arg(a[k]);
      }
      break;
    case Basis::Elliptic:
      for (std::size_t k = 0; k < a.size(); ++k) {
        la[k] = std::log(std::abs(a[k])) + 0.5 * log_binomial(n, static_cast<int>(k));
        ar[k] = std::arg(a[k]);
      }
      break;
    case Basis::Orthogonal: {
      Eigen::VectorXcd av(n + 1);
      for (int k = 0; k <= n; ++k) av(k) = a[static_cast<std::size_t>(k)];
      const Eigen::VectorXcd c = spec.change->matrix.triangularView<Eigen::Upper>() * av;
      for (int k = 0; k <= n; ++k) {
        la[static_cast<std::size_t>(k)] = std::log(std::abs(c(k)));
        ar[static_cast<std::size_t>(k)] = std::arg(c(k));
      }
      break;
    }
  }
  return {spec.basis, la, ar};
}

EmpiricalMeasure find_roots(const ComplexPolynomial& p) {
  return EmpiricalMeasure::plane(polynomial_roots(p.normalized()));
}

// ---- Gram–Schmidt --------------------------------------------------------------

// <P, Q> = sum_j u_j P(z_j) conj(Q(z_j)), u_j = nu_j exp(-n phi_j). In canonical
// coordinates <P, Q> = b^H H a with H = conj(G), G_kl = <X^k, X^l>. With
// H = L L^H, the columns of C = L^{-H} are orthonormal.
BasisChange gram_schmidt_basis(const std::vector<Complex>& support, const Eigen::VectorXd& nu,
                               const Eigen::VectorXd& phi, int n) {
  const auto m = static_cast<Eigen::Index>(support.size());
  if (m == 0) throw std::invalid_argument("empty support");
  if (nu.size() != m || phi.size() != m) throw std::invalid_argument("support arrays differ in length");
  if ((nu.array() > 0.0).count() < n + 1)
    throw SingularGram("fewer than n+1 support points carry positive weight");

  // weights in log scale, shifted for range; the shift is restored in the determinant
  Eigen::VectorXd lu(m);
  for (Eigen::Index j = 0; j < m; ++j) lu(j) = nu(j) > 0.0 ? std::log(nu(j)) - n * phi(j) : -kInf;
  const double shift = lu.maxCoeff();

  Eigen::MatrixXcd G = Eigen::MatrixXcd::Zero(n + 1, n + 1);
  Eigen::VectorXcd pw(n + 1);
  for (Eigen::Index j = 0; j < m; ++j) {
    const double u = std::exp(lu(j) - shift);
    if (u == 0.0) continue;
    const Complex z = support[static_cast<std::size_t>(j)];
    pw(0) = 1.0;
    for (int k = 1; k <= n; ++k) pw(k) = pw(k - 1) * z;
    G.noalias() += u * pw * pw.adjoint();  // G_kl = sum u z^k conj(z)^l
  }
  const Eigen::MatrixXcd H = G.conjugate();

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(H, Eigen::EigenvaluesOnly);
  const double lmin = es.eigenvalues().minCoeff(), lmax = es.eigenvalues().maxCoeff();
  if (!(lmin > 0.0) || lmax / lmin > 1e12) throw SingularGram("discretized moment matrix is numerically singular");

  Eigen::LLT<Eigen::MatrixXcd> llt(H);
  if (llt.info() != Eigen::Success) throw SingularGram("Cholesky factorization failed");
  const Eigen::MatrixXcd L = llt.matrixL();
  Eigen::MatrixXcd C = L.adjoint().triangularView<Eigen::Upper>().solve(Eigen::MatrixXcd::Identity(n + 1, n + 1));

  BasisChange out;
  // unshifted inner product is exp(shift) * H, so C scales by exp(-shift/2)
  C *= std::exp(-0.5 * shift);
  out.matrix = C;
  out.log_det_sq = 0.0;
  for (int k = 0; k <= n; ++k) out.log_det_sq += -2.0 * std::log(L(k, k).real()) - shift;
  return out;
}

bool real_symmetry_check(const EmpiricalMeasure& mu, double tol) {
  if (mu.space != Space::Plane) throw std::invalid_argument("symmetry check expects a plane measure");
  auto z = mu.plane_atoms();
  std::vector<char> used(z.size(), 0);
  for (std::size_t i = 0; i < z.size(); ++i) {
    if (used[i]) continue;
    const double t = tol * std::max(1.0, std::abs(z[i]));
    if (std::abs(z[i].imag()) <= t) {
      used[i] = 1;
      continue;
    }
    std::size_t best = z.size();
    double bd = kInf;
    for (std::size_t j = 0; j < z.size(); ++j) {
      if (j == i || used[j]) continue;
      const double d = std::abs(z[j] - std::conj(z[i]));
      if (d < bd) {
        bd = d;
        best = j;
      }
    }
    if (best == z.size() || bd > t) return false;
    used[i] = used[best] = 1;
  }
  return true;
}

}  // namespace rootgas
