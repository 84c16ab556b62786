#pragma once

#include <vector>

#include <Eigen/Core>

#include "rootgas/types.hpp"

namespace rootgas {

/// n unit-weight atoms (each carrying mass 1/n) in the plane or on the sphere.
struct EmpiricalMeasure {
  Space space = Space::Plane;
  Points atoms;

  Eigen::Index size() const { return atoms.rows(); }
  Complex plane_atom(Eigen::Index i) const { return {atoms(i, 0), atoms(i, 1)}; }
  Point3 sphere_atom(Eigen::Index i) const { return atoms.row(i).transpose(); }

  static EmpiricalMeasure plane(const std::vector<Complex>& z);
  static EmpiricalMeasure sphere(const Points& x);
  std::vector<Complex> plane_atoms() const;
};

/// Weights on a fixed support.
///
/// `cell` is the self-energy -∬log|x-y| of the patch each support point
/// stands for (arc, disk or spherical cap). The energy kernel diagonal is
/// min(M, cell); +inf marks a genuine atom, whose diagonal is the truncation
/// level itself.
struct GridMeasure {
  Space space = Space::Plane;
  Points points;
  Eigen::VectorXd weights;
  Eigen::VectorXd cell;

  Eigen::Index size() const { return points.rows(); }
  Complex plane_point(Eigen::Index i) const { return {points(i, 0), points(i, 1)}; }
  Point3 sphere_point(Eigen::Index i) const { return points.row(i).transpose(); }

  /// Throws std::invalid_argument when the invariants fail.
  void validate() const;
  GridMeasure with_weights(const Eigen::VectorXd& w) const;
};

GridMeasure as_grid(const EmpiricalMeasure& mu);
GridMeasure uniform_on(Space space, const Points& points, const Eigen::VectorXd& cell);
Points plane_points(const std::vector<Complex>& z);

EmpiricalMeasure pushforward_measure(const EmpiricalMeasure& mu);
EmpiricalMeasure pullback_measure(const EmpiricalMeasure& nu);
GridMeasure pushforward(const GridMeasure& mu);
GridMeasure pullback(const GridMeasure& nu);

/// Distance in the measure's own space: Euclidean in the plane, chordal (R^3)
/// on the sphere.
double point_distance(Space space, const Eigen::Ref<const Eigen::RowVector3d>& a,
                      const Eigen::Ref<const Eigen::RowVector3d>& b);

// ---- bounded-Lipschitz distance ----------------------------------------

enum class BLMode { Auto, Exact, Surrogate };

struct BLResult {
  double value = 0.0;
  BLMode mode = BLMode::Exact;  // Exact or Surrogate, never Auto
};

inline constexpr Eigen::Index kExactSupportLimit = 4000;

BLResult bl_distance(const GridMeasure& mu, const GridMeasure& nu, BLMode mode = BLMode::Auto);
BLResult bl_distance(const EmpiricalMeasure& mu, const EmpiricalMeasure& nu,
                     BLMode mode = BLMode::Auto);
BLResult bl_distance(const EmpiricalMeasure& mu, const GridMeasure& nu, BLMode mode = BLMode::Auto);

/// Lower bound from the fixed test-function dictionary: clipped coordinates
/// and clipped distances to 32 anchors.
double bl_surrogate(const GridMeasure& mu, const GridMeasure& nu);

/// Capped transport cost with ground metric min(d, 2), solved exactly.
double capped_transport(const Points& a, const Eigen::VectorXd& p, const Points& b,
                        const Eigen::VectorXd& q, Space space);

// ---- conjugation symmetry ------------------------------------------------

/// Index of each support point's conjugate (mirror on the sphere), or throws
/// AsymmetricSupport.
std::vector<Eigen::Index> conjugate_permutation(const GridMeasure& mu, double tol = 1e-10);
bool is_symmetric(const GridMeasure& mu, double tol = 1e-12);
/// (mu + conj mu) / 2. The support is closed under conjugation first; added
/// mirror points start with zero weight.
GridMeasure symmetrize(const GridMeasure& mu);

// ---- discretization --------------------------------------------------------

/// Nearest-point assignment of atoms; ties go to the lowest grid index.
/// Support and cell energies are taken from `grid`, its weights are ignored.
GridMeasure to_grid(const EmpiricalMeasure& mu, const GridMeasure& grid);

}  // namespace rootgas
