#pragma once

#include <algorithm>
#include <cmath>
#include <vector>

#include "rootgas/ensembles.hpp"
#include "rootgas/measures.hpp"

namespace rootgas {

inline constexpr double kDefaultTruncation = 30.0;

/// log_M(t) = max(log t, -M)
inline double log_m(double t, double M) { return t > 0.0 ? std::max(std::log(t), -M) : -M; }

// ---- potentials and energies ---------------------------------------------

/// U(x) = -∫ log|x - y| dmu(y); +inf when x sits on a charged support point.
double log_potential(const GridMeasure& mu, const Eigen::RowVector3d& x);
double log_potential(const EmpiricalMeasure& mu, Complex z);

/// -(1/n^2) sum_{i != j} log|z_i - z_j|, pairwise-summed over sorted atoms;
/// +inf on coincident atoms.
double discrete_energy(const EmpiricalMeasure& mu);

/// -∬ log_M|x - y| in the measure's own metric. Off-diagonal pairs use log_M,
/// the diagonal uses min(M, cell).
double truncated_energy(const GridMeasure& mu, double M);
double truncated_energy(const EmpiricalMeasure& mu, double M);

// ---- rate functionals ------------------------------------------------------

enum class RateVariant { Kac, Elliptic, Orthogonal };
const char* to_string(RateVariant v);

/// How the supremum grid may be refined locally.
enum class SupRefine { None, Angle, LogPolar };

/// The supremum domain in both charts. Every entry is a sphere point x_s with
/// penalty phit_s (the sphere-form weight), and its plane preimage z_s with
/// phi(z_s) = phit_s + log(1 + |z_s|^2). The north pole has no preimage; in
/// the plane it stands for the |z| -> inf limit.
struct RateFunctionalSpec {
  RateVariant variant = RateVariant::Kac;
  Points sphere_sup;
  Eigen::VectorXd phi_tilde;
  std::vector<Complex> plane_sup;
  std::vector<char> is_north;
  SupRefine refine = SupRefine::None;
  // Half-widths of the refinement bracket, in angle and in log radius. With
  // chordal_steps they are chordal spacings, converted at each point.
  double step_theta = 0.0;
  double step_logr = 0.0;
  bool chordal_steps = false;
  double center = 0.0;  // inf I, subtracted by the real (tilde) variant

  Eigen::Index size() const { return sphere_sup.rows(); }
  void validate() const;
};

/// Equator, m points at angles 2*pi*(j + offset)/m, penalty -log 2.
RateFunctionalSpec kac_rate_spec(Eigen::Index m = 2048, double offset = 0.6180339887498949);
/// Fibonacci sphere points plus both poles, penalty 0.
RateFunctionalSpec elliptic_rate_spec(Eigen::Index n = 4000, double twist = 0.5);
/// Log-polar plane grid r in [r_min, r_max], optionally with the point at infinity.
RateFunctionalSpec elliptic_radial_rate_spec(double r_min, double r_max, Eigen::Index n_r, Eigen::Index n_theta,
                                             bool with_infinity);
/// Supremum over the support of nu, with the user's phi. `center` is NaN until
/// computed by the equilibrium solver.
RateFunctionalSpec orthogonal_rate_spec(const OrthogonalWeight& w);

struct JValue {
  double value = -kInf;
  Eigen::Index argmax = -1;
  bool refined = false;
};

/// sup over the sup grid of ∫ log_M|x - y|^2 dmu(y) - penalty, followed by one
/// golden-section pass around the best point. The result is attained at an
/// explicit point, so it never exceeds the true supremum.
/// Sphere measures use the sphere form; plane measures the planar form.
JValue j_functional(const GridMeasure& mu, const RateFunctionalSpec& spec, double M = kDefaultTruncation);

struct RateValue {
  double value = kInf;     // sphere form: E_S + J_S
  double energy = kInf;
  double j = -kInf;
  double planar = kInf;    // Euclidean planar form with matched truncation
  double log_moment = 0.0; // ∫ log(1 + |z|^2) dmu
};

/// Always evaluated in the sphere chart (plane measures are pushed forward).
/// The planar form is filled in for plane inputs.
RateValue rate_function(const GridMeasure& mu, const RateFunctionalSpec& spec, double M = kDefaultTruncation);

/// Euclidean planar form: energy with kernel -log|z - w| (truncation matched
/// to the sphere chart) plus sup_s [∫ log|z_s - w|^2 dmu - phi(z_s)].
double planar_rate(const GridMeasure& mu, const RateFunctionalSpec& spec, double M = kDefaultTruncation);

/// Real-coefficient variant: +inf unless mu is conjugation invariant, otherwise
/// half the centered value.
double real_rate_function(const GridMeasure& mu, const RateFunctionalSpec& spec, double M = kDefaultTruncation);

/// |planar form of mu - sphere form of its pushforward|
double plane_sphere_rate_identity_residual(const GridMeasure& mu, const RateFunctionalSpec& spec,
                                           double M = kDefaultTruncation);

// ---- Hamiltonians -----------------------------------------------------------

/// log of the confinement integral ∫ prod |z - z_i|^2 w(z) dnu(z) for the
/// model's inner product: Parseval for Kac and elliptic, support sum for the
/// orthogonal model.
double log_confinement(const std::vector<Complex>& z, const ModelSpec& spec);

/// -(1/n^2) sum_{i != j} log|z_i - z_j| + ((n+1)/n^2) log confinement.
/// +inf for coincident particles.
double hamiltonian(const std::vector<Complex>& z, const ModelSpec& spec);

/// log sum_k |b_k|^2 / ((n+1) binom(n, k)) for the monic polynomial with the
/// given roots, with log-scaled expansion.
double elliptic_log_norm(const std::vector<Complex>& roots);

/// log sum_j exp(x_j), -inf for an empty or all -inf input.
double log_sum_exp(const Eigen::Ref<const Eigen::VectorXd>& x);

}  // namespace rootgas
