#include "rootgas/measures.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "rootgas/geometry.hpp"

namespace rootgas {

Points plane_points(const std::vector<Complex>& z) {
  Points p(static_cast<Eigen::Index>(z.size()), 3);
  for (std::size_t i = 0; i < z.size(); ++i) p.row(static_cast<Eigen::Index>(i)) << z[i].real(), z[i].imag(), 0.0;
  return p;
}

EmpiricalMeasure EmpiricalMeasure::plane(const std::vector<Complex>& z) {
  if (z.empty()) throw std::invalid_argument("empirical measure needs at least one atom");
  for (const auto& w : z)
    if (!std::isfinite(w.real()) || !std::isfinite(w.imag())) throw std::invalid_argument("non-finite atom");
  return {Space::Plane, plane_points(z)};
}

EmpiricalMeasure EmpiricalMeasure::sphere(const Points& x) {
  if (x.rows() == 0) throw std::invalid_argument("empirical measure needs at least one atom");
  for (Eigen::Index i = 0; i < x.rows(); ++i)
    if (sphere_defect<double>(x.row(i).transpose()) > 1e-12) throw std::invalid_argument("atom off the sphere");
  return {Space::Sphere, x};
}

std::vector<Complex> EmpiricalMeasure::plane_atoms() const {
  std::vector<Complex> z(static_cast<std::size_t>(size()));
  for (Eigen::Index i = 0; i < size(); ++i) z[static_cast<std::size_t>(i)] = plane_atom(i);
  return z;
}

void GridMeasure::validate() const {
  if (points.rows() == 0) throw std::invalid_argument("grid measure has empty support");
  if (weights.size() != points.rows() || cell.size() != points.rows())
    throw std::invalid_argument("grid measure arrays differ in length");
  if ((weights.array() < 0.0).any()) throw std::invalid_argument("negative grid weight");
  if (std::abs(weights.sum() - 1.0) > 1e-12) throw std::invalid_argument("grid weights do not sum to 1");
  if (space == Space::Sphere)
    for (Eigen::Index i = 0; i < size(); ++i)
      if (sphere_defect<double>(sphere_point(i)) > 1e-12) throw std::invalid_argument("grid point off the sphere");
}

GridMeasure GridMeasure::with_weights(const Eigen::VectorXd& w) const {
  GridMeasure out = *this;
  out.weights = w;
  return out;
}

GridMeasure as_grid(const EmpiricalMeasure& mu) {
  const Eigen::Index n = mu.size();
  return {mu.space, mu.atoms, Eigen::VectorXd::Constant(n, 1.0 / static_cast<double>(n)),
          Eigen::VectorXd::Constant(n, kInf)};
}

GridMeasure uniform_on(Space space, const Points& points, const Eigen::VectorXd& cell) {
  const Eigen::Index n = points.rows();
  return {space, points, Eigen::VectorXd::Constant(n, 1.0 / static_cast<double>(n)), cell};
}

EmpiricalMeasure pushforward_measure(const EmpiricalMeasure& mu) {
  if (mu.space != Space::Plane) throw std::invalid_argument("pushforward expects a plane measure");
  Points x(mu.size(), 3);
  for (Eigen::Index i = 0; i < mu.size(); ++i) x.row(i) = project(mu.plane_atom(i)).transpose();
  return {Space::Sphere, x};
}

EmpiricalMeasure pullback_measure(const EmpiricalMeasure& nu) {
  if (nu.space != Space::Sphere) throw std::invalid_argument("pullback expects a sphere measure");
  std::vector<Complex> z(static_cast<std::size_t>(nu.size()));
  for (Eigen::Index i = 0; i < nu.size(); ++i) z[static_cast<std::size_t>(i)] = unproject(nu.sphere_atom(i));
  return {Space::Plane, plane_points(z)};
}

// Lengths shrink by the conformal factor 1/(1+|z|^2) under projection, so a
// small patch's self-energy grows by log(1+|z|^2).
GridMeasure pushforward(const GridMeasure& mu) {
  if (mu.space != Space::Plane) throw std::invalid_argument("pushforward expects a plane measure");
  GridMeasure out{Space::Sphere, Points(mu.size(), 3), mu.weights, mu.cell};
  for (Eigen::Index i = 0; i < mu.size(); ++i) {
    const Complex z = mu.plane_point(i);
    out.points.row(i) = project(z).transpose();
    if (std::isfinite(out.cell(i))) out.cell(i) += log1p_norm(z);
  }
  return out;
}

GridMeasure pullback(const GridMeasure& nu) {
  if (nu.space != Space::Sphere) throw std::invalid_argument("pullback expects a sphere measure");
  GridMeasure out{Space::Plane, Points(nu.size(), 3), nu.weights, nu.cell};
  for (Eigen::Index i = 0; i < nu.size(); ++i) {
    const Complex z = unproject(nu.sphere_point(i));
    out.points.row(i) << z.real(), z.imag(), 0.0;
    if (std::isfinite(out.cell(i))) out.cell(i) -= log1p_norm(z);
  }
  return out;
}

double point_distance(Space space, const Eigen::Ref<const Eigen::RowVector3d>& a,
                      const Eigen::Ref<const Eigen::RowVector3d>& b) {
  if (space == Space::Plane) return std::hypot(a(0) - b(0), a(1) - b(1));
  return std::sqrt(sphere_dist2<double>(a.transpose(), b.transpose()));
}

// ---- BL distance -------------------------------------------------------------

namespace {

struct Dictionary {
  Point3 center;
  int dims = 2;
  Points anchors;
};

double weighted_median(std::vector<std::pair<double, double>> vw) {
  std::sort(vw.begin(), vw.end());
  double total = 0.0;
  for (const auto& [v, w] : vw) total += w;
  double acc = 0.0;
  for (const auto& [v, w] : vw) {
    acc += w;
    if (acc >= 0.5 * total) return v;
  }
  return vw.back().first;
}

// Plane anchors sit on a 4x8 polar template around a robust center: the
// coordinate-wise weighted median of the mixture, radius enclosing 95% of its
// mass. A plain bounding disk would be dictated by a few far outliers.
Dictionary plane_dictionary(const GridMeasure& mu, const GridMeasure& nu) {
  std::vector<std::pair<double, double>> xs, ys;
  for (const GridMeasure* m : {&mu, &nu})
    for (Eigen::Index i = 0; i < m->size(); ++i) {
      xs.emplace_back(m->points(i, 0), 0.5 * m->weights(i));
      ys.emplace_back(m->points(i, 1), 0.5 * m->weights(i));
    }
  Dictionary d;
  d.center = Point3(weighted_median(xs), weighted_median(ys), 0.0);
  std::vector<std::pair<double, double>> rw;
  for (const GridMeasure* m : {&mu, &nu})
    for (Eigen::Index i = 0; i < m->size(); ++i)
      rw.emplace_back(std::hypot(m->points(i, 0) - d.center(0), m->points(i, 1) - d.center(1)),
                      0.5 * m->weights(i));
  std::sort(rw.begin(), rw.end());
  double acc = 0.0, radius = rw.back().first;
  for (const auto& [r, w] : rw) {
    acc += w;
    if (acc >= 0.95) {
      radius = r;
      break;
    }
  }
  radius = std::max(radius, 1e-6);
  d.dims = 2;
  d.anchors.resize(32, 3);
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 8; ++b) {
      const double r = radius * (a + 1) / 4.0;
      const double t = 2.0 * kPi * b / 8.0;
      d.anchors.row(8 * a + b) << d.center(0) + r * std::cos(t), d.center(1) + r * std::sin(t), 0.0;
    }
  return d;
}

// Sphere anchors are fixed: four latitude bands times eight meridians.
Dictionary sphere_dictionary() {
  Dictionary d;
  d.center = Point3(0.0, 0.0, 0.5);
  d.dims = 3;
  d.anchors.resize(32, 3);
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 8; ++b) {
      const double th = kPi * (a + 1) / 5.0;
      const double ph = 2.0 * kPi * b / 8.0 + (a % 2) * kPi / 8.0;
      d.anchors.row(8 * a + b) << 0.5 * std::sin(th) * std::cos(ph), 0.5 * std::sin(th) * std::sin(ph),
          0.5 + 0.5 * std::cos(th);
    }
  return d;
}

Eigen::VectorXd feature_means(const GridMeasure& m, const Dictionary& d) {
  Eigen::VectorXd f = Eigen::VectorXd::Zero(d.dims + d.anchors.rows());
  for (Eigen::Index i = 0; i < m.size(); ++i) {
    const double w = m.weights(i);
    if (w == 0.0) continue;
    for (int k = 0; k < d.dims; ++k) f(k) += w * std::clamp(m.points(i, k) - d.center(k), -1.0, 1.0);
    for (Eigen::Index a = 0; a < d.anchors.rows(); ++a)
      f(d.dims + a) += w * (std::min(point_distance(m.space, m.points.row(i), d.anchors.row(a)), 2.0) - 1.0);
  }
  return f;
}

}  // namespace

double bl_surrogate(const GridMeasure& mu, const GridMeasure& nu) {
  if (mu.space != nu.space) throw SpaceMismatch();
  const Dictionary d = mu.space == Space::Plane ? plane_dictionary(mu, nu) : sphere_dictionary();
  return (feature_means(mu, d) - feature_means(nu, d)).cwiseAbs().maxCoeff();
}

BLResult bl_distance(const GridMeasure& mu, const GridMeasure& nu, BLMode mode) {
  if (mu.space != nu.space) throw SpaceMismatch();
  if (mode == BLMode::Auto) mode = mu.size() + nu.size() <= kExactSupportLimit ? BLMode::Exact : BLMode::Surrogate;
  if (mode == BLMode::Surrogate) return {bl_surrogate(mu, nu), BLMode::Surrogate};
  return {capped_transport(mu.points, mu.weights, nu.points, nu.weights, mu.space), BLMode::Exact};
}

BLResult bl_distance(const EmpiricalMeasure& mu, const EmpiricalMeasure& nu, BLMode mode) {
  return bl_distance(as_grid(mu), as_grid(nu), mode);
}

BLResult bl_distance(const EmpiricalMeasure& mu, const GridMeasure& nu, BLMode mode) {
  return bl_distance(as_grid(mu), nu, mode);
}

// ---- symmetry ------------------------------------------------------------------

namespace {

// partner of each point under conjugation, -1 when it has none
std::vector<Eigen::Index> conjugate_partners(const GridMeasure& mu, double tol) {
  const Eigen::Index n = mu.size();
  // sort by (x1, |x2|, x3) so conjugate partners become neighbours
  std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), Eigen::Index{0});
  auto key = [&](Eigen::Index i) {
    return std::make_tuple(mu.points(i, 0), std::abs(mu.points(i, 1)), mu.points(i, 2), mu.points(i, 1));
  };
  std::sort(order.begin(), order.end(), [&](Eigen::Index a, Eigen::Index b) { return key(a) < key(b); });
  std::vector<Eigen::Index> perm(static_cast<std::size_t>(n), -1);
  auto close = [&](Eigen::Index i, Eigen::Index j) {
    const double s = tol * std::max(1.0, mu.points.row(i).norm());
    return std::abs(mu.points(i, 0) - mu.points(j, 0)) <= s && std::abs(mu.points(i, 1) + mu.points(j, 1)) <= s &&
           std::abs(mu.points(i, 2) - mu.points(j, 2)) <= s;
  };
  for (std::size_t a = 0; a < order.size(); ++a) {
    const Eigen::Index i = order[a];
    if (perm[static_cast<std::size_t>(i)] >= 0) continue;
    if (std::abs(mu.points(i, 1)) <= tol * std::max(1.0, mu.points.row(i).norm())) {
      perm[static_cast<std::size_t>(i)] = i;
      continue;
    }
    // search forward among points with nearly equal x1
    for (std::size_t b = a + 1; b < order.size(); ++b) {
      const Eigen::Index j = order[b];
      if (mu.points(j, 0) - mu.points(i, 0) > tol * std::max(1.0, mu.points.row(i).norm())) break;
      if (perm[static_cast<std::size_t>(j)] < 0 && close(i, j)) {
        perm[static_cast<std::size_t>(i)] = j;
        perm[static_cast<std::size_t>(j)] = i;
        break;
      }
    }
  }
  return perm;
}

}  // namespace

std::vector<Eigen::Index> conjugate_permutation(const GridMeasure& mu, double tol) {
  auto perm = conjugate_partners(mu, tol);
  if (std::find(perm.begin(), perm.end(), Eigen::Index{-1}) != perm.end())
    throw AsymmetricSupport("support is not closed under conjugation");
  return perm;
}

bool is_symmetric(const GridMeasure& mu, double tol) {
  std::vector<Eigen::Index> perm;
  try {
    perm = conjugate_permutation(mu);
  } catch (const AsymmetricSupport&) {
    return false;
  }
  for (Eigen::Index i = 0; i < mu.size(); ++i)
    if (std::abs(mu.weights(i) - mu.weights(perm[static_cast<std::size_t>(i)])) > tol) return false;
  return true;
}

GridMeasure symmetrize(const GridMeasure& mu) {
  // close the support first: unmatched points get a zero-weight mirror image
  auto partners = conjugate_partners(mu, 1e-10);
  std::vector<Eigen::Index> missing;
  for (Eigen::Index i = 0; i < mu.size(); ++i)
    if (partners[static_cast<std::size_t>(i)] < 0) missing.push_back(i);
  GridMeasure closed = mu;
  const Eigen::Index n = mu.size(), m = static_cast<Eigen::Index>(missing.size());
  closed.points.conservativeResize(n + m, 3);
  closed.weights.conservativeResize(n + m);
  closed.cell.conservativeResize(n + m);
  for (Eigen::Index k = 0; k < m; ++k) {
    const Eigen::Index i = missing[static_cast<std::size_t>(k)];
    closed.points.row(n + k) << mu.points(i, 0), -mu.points(i, 1), mu.points(i, 2);
    closed.weights(n + k) = 0.0;
    closed.cell(n + k) = mu.cell(i);
  }
  const auto perm = conjugate_permutation(closed);
  GridMeasure out = closed;
  for (Eigen::Index i = 0; i < closed.size(); ++i)
    out.weights(i) = 0.5 * (closed.weights(i) + closed.weights(perm[static_cast<std::size_t>(i)]));
  return out;
}

// ---- discretization --------------------------------------------------------------

GridMeasure to_grid(const EmpiricalMeasure& mu, const GridMeasure& grid) {
  if (grid.size() == 0) throw std::invalid_argument("empty grid");
  if (mu.space != grid.space) throw SpaceMismatch();
  GridMeasure out = grid;
  Eigen::VectorXd count = Eigen::VectorXd::Zero(grid.size());
  for (Eigen::Index i = 0; i < mu.size(); ++i) {
    Eigen::Index best = 0;
    double bd = kInf;
    for (Eigen::Index j = 0; j < grid.size(); ++j) {
      const double d = point_distance(grid.space, mu.atoms.row(i), grid.points.row(j));
      if (d < bd) {
        bd = d;
        best = j;
      }
    }
    count(best) += 1.0;
  }
  out.weights = count / static_cast<double>(mu.size());
  return out;
}

}  // namespace rootgas
