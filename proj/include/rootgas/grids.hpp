#pragma once

#include <functional>

#include "rootgas/measures.hpp"

// Support grids with their cell self-energies, and the quadrature rules built
// on them.
namespace rootgas {

/// Self-energy of a uniform arc of length h (segment limit).
double arc_cell_energy(double h);
/// Self-energy of a uniform patch of the radius-1/2 sphere with area w*pi.
double sphere_cell_energy(double w);

/// m equispaced points on |z| = 1, starting at angle 2*pi*offset/m.
GridMeasure circle_grid(Eigen::Index m, double offset = 0.0);

/// Fibonacci lattice on the sphere (equal-area cells), rotated by `twist`
/// radians about the vertical axis. Never contains either pole.
GridMeasure fibonacci_sphere_grid(Eigen::Index n, double twist = 0.0);

/// Its pullback to the plane: a discretization of the Fubini–Study measure
/// dA / (pi (1+|z|^2)^2).
GridMeasure fubini_study_grid(Eigen::Index n, double twist = 0.0);

/// Fibonacci points plus an equator ring of m points, uniform weights.
/// Used when equilibrium mass is expected on the equator.
GridMeasure kac_sphere_grid(Eigen::Index n_fib, Eigen::Index ring, double ring_offset = 0.0);

/// Gauss–Legendre in cos(theta) times uniform longitude.
GridMeasure product_sphere_grid(Eigen::Index n_theta, Eigen::Index n_phi);

/// Gauss–Legendre nodes and weights on [-1, 1].
void gauss_legendre(Eigen::Index n, Eigen::VectorXd& nodes, Eigen::VectorXd& weights);

// ---- quadrature --------------------------------------------------------

/// Trapezoid rule for the uniform measure on the unit circle.
double circle_quadrature(const std::function<double(Complex)>& f, Eigen::Index m);
double sphere_quadrature(const std::function<double(const Point3&)>& f, const GridMeasure& grid);
double plane_quadrature(const std::function<double(Complex)>& f, const GridMeasure& grid);

}  // namespace rootgas
