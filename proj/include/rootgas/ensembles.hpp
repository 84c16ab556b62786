#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "rootgas/measures.hpp"
#include "rootgas/rng.hpp"

namespace rootgas {

enum class Basis { Kac, Elliptic, Orthogonal };
enum class Field { Real, Complex };

const char* to_string(Basis b);
const char* to_string(Field f);
Basis parse_basis(const std::string& s);
Field parse_field(const std::string& s);

/// Discretized (nu, phi): support points, nu-weights summing to 1, phi values.
struct OrthogonalWeight {
  std::vector<Complex> support;
  Eigen::VectorXd nu;
  Eigen::VectorXd phi;

  void validate() const;
};

/// Upper-triangular C whose column k holds the canonical coefficients of the
/// k-th orthonormal polynomial; log_det_sq = sum_k log |C_kk|^2.
struct BasisChange {
  Eigen::MatrixXcd matrix;
  double log_det_sq = 0.0;
};

struct ModelSpec {
  Basis basis = Basis::Kac;
  Field field = Field::Complex;
  int degree = 1;
  double beta = 1.0;
  std::shared_ptr<const OrthogonalWeight> weight;
  std::shared_ptr<const BasisChange> change;

  static ModelSpec kac(int n, Field field);
  static ModelSpec elliptic(int n, Field field);
  /// Runs Gram–Schmidt on the weight; throws SingularGram.
  static ModelSpec orthogonal(std::shared_ptr<const OrthogonalWeight> w, int n, Field field);

  void validate() const;
  /// log |det C|^2 of the orthonormal basis in canonical coordinates.
  double log_det_sq() const;
};

/// Canonical (monomial) coefficients stored as log-magnitude and phase, so
/// binomially scaled coefficients never overflow.
class ComplexPolynomial {
 public:
  ComplexPolynomial() = default;
  ComplexPolynomial(Basis basis, std::vector<double> log_abs, std::vector<double> arg);
  static ComplexPolynomial from_coefficients(const std::vector<Complex>& c, Basis basis = Basis::Kac);

  int degree() const { return static_cast<int>(log_abs_.size()) - 1; }
  Basis basis() const { return basis_; }
  double log_abs(int k) const { return log_abs_[static_cast<std::size_t>(k)]; }
  double arg(int k) const { return arg_[static_cast<std::size_t>(k)]; }
  /// May overflow for huge coefficients; prefer normalized().
  Complex coefficient(int k) const;
  /// Coefficients divided by the largest magnitude.
  std::vector<Complex> normalized() const;
  double log_max() const;

 private:
  Basis basis_ = Basis::Kac;
  std::vector<double> log_abs_;
  std::vector<double> arg_;
};

ComplexPolynomial sample_coefficients(const ModelSpec& spec, std::uint64_t seed);
ComplexPolynomial sample_coefficients(const ModelSpec& spec, Rng& rng);

/// Roots with multiplicity, sorted by (Re, Im). Throws DegenerateLeading when
/// the leading coefficient vanishes, ConvergenceError when iteration fails.
std::vector<Complex> polynomial_roots(const std::vector<Complex>& coefficients);
EmpiricalMeasure find_roots(const ComplexPolynomial& p);

/// Normwise relative distance between the monic polynomial rebuilt from
/// `roots` and the monic version of `coefficients`.
double reconstruction_error(const std::vector<Complex>& roots, const std::vector<Complex>& coefficients);

/// Monic coefficients of prod (z - r_i), expanded from values at roots of
/// unity (no sequential-multiplication cancellation).
std::vector<Complex> monic_from_roots(const std::vector<Complex>& roots);

BasisChange gram_schmidt_basis(const std::vector<Complex>& support, const Eigen::VectorXd& nu,
                               const Eigen::VectorXd& phi, int n);

/// True iff the atoms form a conjugation-closed multiset (pairing tolerance
/// tol * max(1, |z|)).
bool real_symmetry_check(const EmpiricalMeasure& mu, double tol = 1e-8);

/// log binom(n, k) via lgamma.
double log_binomial(int n, int k);

}  // namespace rootgas
