#include "rootgas/grids.hpp"

#include <cmath>
#include <stdexcept>

#include "rootgas/geometry.hpp"

namespace rootgas {

double arc_cell_energy(double h) { return -std::log(h) + 1.5; }

// A patch of area w*pi is treated as a flat disk of radius sqrt(w).
double sphere_cell_energy(double w) { return -0.5 * std::log(w) + 0.25; }

GridMeasure circle_grid(Eigen::Index m, double offset) {
  if (m < 1) throw std::invalid_argument("circle grid needs m >= 1");
  GridMeasure g;
  g.space = Space::Plane;
  g.points.resize(m, 3);
  for (Eigen::Index j = 0; j < m; ++j) {
    const double t = 2.0 * kPi * (static_cast<double>(j) + offset) / static_cast<double>(m);
    g.points.row(j) << std::cos(t), std::sin(t), 0.0;
  }
  g.weights = Eigen::VectorXd::Constant(m, 1.0 / static_cast<double>(m));
  g.cell = Eigen::VectorXd::Constant(m, arc_cell_energy(2.0 * kPi / static_cast<double>(m)));
  return g;
}

GridMeasure fibonacci_sphere_grid(Eigen::Index n, double twist) {
  if (n < 1) throw std::invalid_argument("sphere grid needs n >= 1");
  const double golden = kPi * (3.0 - std::sqrt(5.0));
  GridMeasure g;
  g.space = Space::Sphere;
  g.points.resize(n, 3);
  for (Eigen::Index i = 0; i < n; ++i) {
    const double c = 1.0 - 2.0 * (static_cast<double>(i) + 0.5) / static_cast<double>(n);  // cos(polar)
    const double s = std::sqrt(std::max(0.0, 1.0 - c * c));
    const double ph = golden * static_cast<double>(i) + twist;
    g.points.row(i) << 0.5 * s * std::cos(ph), 0.5 * s * std::sin(ph), 0.5 * (1.0 + c);
  }
  g.weights = Eigen::VectorXd::Constant(n, 1.0 / static_cast<double>(n));
  g.cell = Eigen::VectorXd::Constant(n, sphere_cell_energy(1.0 / static_cast<double>(n)));
  return g;
}

GridMeasure fubini_study_grid(Eigen::Index n, double twist) { return pullback(fibonacci_sphere_grid(n, twist)); }

GridMeasure kac_sphere_grid(Eigen::Index n_fib, Eigen::Index ring, double ring_offset) {
  const GridMeasure fib = fibonacci_sphere_grid(n_fib);
  GridMeasure g;
  g.space = Space::Sphere;
  g.points.resize(n_fib + ring, 3);
  g.cell.resize(n_fib + ring);
  g.points.topRows(n_fib) = fib.points;
  g.cell.head(n_fib) = fib.cell;
  for (Eigen::Index j = 0; j < ring; ++j) {
    const double t = 2.0 * kPi * (static_cast<double>(j) + ring_offset) / static_cast<double>(ring);
    g.points.row(n_fib + j) << 0.5 * std::cos(t), 0.5 * std::sin(t), 0.5;
  }
  // the equator has length pi
  g.cell.tail(ring).setConstant(arc_cell_energy(kPi / static_cast<double>(ring)));
  g.weights = Eigen::VectorXd::Constant(n_fib + ring, 1.0 / static_cast<double>(n_fib + ring));
  return g;
}

void gauss_legendre(Eigen::Index n, Eigen::VectorXd& nodes, Eigen::VectorXd& weights) {
  nodes.resize(n);
  weights.resize(n);
  for (Eigen::Index i = 0; i < (n + 1) / 2; ++i) {
    double x = std::cos(kPi * (static_cast<double>(i) + 0.75) / (static_cast<double>(n) + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = x;
      for (Eigen::Index k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / static_cast<double>(k);
        p0 = p1;
        p1 = p2;
      }
      if (n == 1) p0 = 1.0;
      dp = static_cast<double>(n) * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    nodes(i) = -x;
    nodes(n - 1 - i) = x;
    weights(i) = weights(n - 1 - i) = 2.0 / ((1.0 - x * x) * dp * dp);
  }
}

GridMeasure product_sphere_grid(Eigen::Index n_theta, Eigen::Index n_phi) {
  Eigen::VectorXd c, w;
  gauss_legendre(n_theta, c, w);
  GridMeasure g;
  g.space = Space::Sphere;
  g.points.resize(n_theta * n_phi, 3);
  g.weights.resize(n_theta * n_phi);
  for (Eigen::Index i = 0; i < n_theta; ++i) {
    const double s = std::sqrt(std::max(0.0, 1.0 - c(i) * c(i)));
    for (Eigen::Index j = 0; j < n_phi; ++j) {
      const double ph = 2.0 * kPi * static_cast<double>(j) / static_cast<double>(n_phi);
      const Eigen::Index r = i * n_phi + j;
      g.points.row(r) << 0.5 * s * std::cos(ph), 0.5 * s * std::sin(ph), 0.5 * (1.0 + c(i));
      g.weights(r) = 0.5 * w(i) / static_cast<double>(n_phi);
    }
  }
  g.cell = g.weights.unaryExpr([](double x) { return sphere_cell_energy(x); });
  return g;
}

double circle_quadrature(const std::function<double(Complex)>& f, Eigen::Index m) {
  if (m < 4) throw std::invalid_argument("circle quadrature needs m >= 4");
  double s = 0.0;
  for (Eigen::Index j = 0; j < m; ++j) s += f(std::polar(1.0, 2.0 * kPi * static_cast<double>(j) / static_cast<double>(m)));
  return s / static_cast<double>(m);
}

double sphere_quadrature(const std::function<double(const Point3&)>& f, const GridMeasure& grid) {
  if (grid.space != Space::Sphere || grid.size() == 0) throw std::invalid_argument("sphere grid required");
  double s = 0.0;
  for (Eigen::Index i = 0; i < grid.size(); ++i) s += grid.weights(i) * f(grid.sphere_point(i));
  return s;
}

double plane_quadrature(const std::function<double(Complex)>& f, const GridMeasure& grid) {
  if (grid.space != Space::Plane || grid.size() == 0) throw std::invalid_argument("plane grid required");
  double s = 0.0;
  for (Eigen::Index i = 0; i < grid.size(); ++i) s += grid.weights(i) * f(grid.plane_point(i));
  return s;
}

}  // namespace rootgas
