#pragma once

#include <vector>

#include <Eigen/Core>

#include "rootgas/functionals.hpp"
#include "rootgas/measures.hpp"

namespace rootgas {

struct OptimizerConfig {
  GridMeasure grid;  // sphere or plane; plane grids are optimized in the sphere chart
  double M = kDefaultTruncation;
  long max_iterations = 60000;
  double tolerance = 5e-3;  // on gap + smoothing slack
  bool symmetric = false;   // average with the conjugation image every step
  double tau_start = 0.05;  // log-sum-exp smoothing of the max over the sup grid
  double tau_min = 1e-4;
  double tau_shrink = 0.1;  // halve tau once the smoothed gap drops below tau_shrink * tau
  bool keep_trace = true;

  void validate() const;
};

struct EquilibriumResult {
  GridMeasure measure;
  double value = kInf;      // w'Kw + max_s (Aw - phit)_s on the grid
  double gap = kInf;        // certified bound on value - min
  long iterations = 0;
  bool converged = false;
  double energy = kInf;
  double j = -kInf;
  double tau = 0.0;
  std::vector<double> trace;  // smoothed objective, nonincreasing
};

/// Energy kernel on a sphere grid: -log_M of the chordal distance off the
/// diagonal, min(M, cell) on it.
Eigen::MatrixXd energy_kernel(const GridMeasure& sphere_grid, double M);
/// A(s, i) = log_M |x_s - y_i|^2 (truncation 2M on the squared distance).
Eigen::MatrixXd sup_kernel(const GridMeasure& sphere_grid, const RateFunctionalSpec& spec, double M);

/// Truncated grid objective at weights w (grid of the config, sphere chart).
double grid_objective(const Eigen::MatrixXd& K, const Eigen::MatrixXd& A, const Eigen::VectorXd& phi_tilde,
                      const Eigen::VectorXd& w);

/// Pairwise Frank–Wolfe on the simplex of grid weights with a smoothed max,
/// exact line search and an epsilon-subgradient duality certificate.
/// Never throws on non-convergence; check `converged`.
EquilibriumResult minimize_rate(const RateFunctionalSpec& spec, const OptimizerConfig& cfg);

/// inf I over the grid; throws NonConvergence when the certificate exceeds
/// the tolerance.
double center_rate(const RateFunctionalSpec& spec, const OptimizerConfig& cfg);

}  // namespace rootgas
