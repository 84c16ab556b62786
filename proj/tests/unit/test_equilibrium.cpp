#include <doctest.h>

#include <cmath>
#include <memory>

#include "rootgas/equilibrium.hpp"
#include "rootgas/grids.hpp"
#include "rootgas/rng.hpp"

using namespace rootgas;

namespace {

OptimizerConfig config_for(const GridMeasure& g) {
  OptimizerConfig cfg;
  cfg.grid = g;
  return cfg;
}

double equator_mass(const GridMeasure& g) {
  double m = 0.0;
  for (Eigen::Index i = 0; i < g.size(); ++i)
    if (std::abs(g.sphere_point(i)(2) - 0.5) < 0.1) m += g.weights(i);
  return m;
}

}  // namespace

TEST_SUITE("equilibrium") {
  TEST_CASE("single-point grid: the atom, at truncation level plus J") {
    Points p(1, 3);
    p << 0.0, 0.0, 0.0;
    const GridMeasure g{Space::Sphere, p, Eigen::VectorXd::Ones(1), Eigen::VectorXd::Constant(1, kInf)};
    const auto spec = kac_rate_spec(64);
    auto cfg = config_for(g);
    cfg.M = 12.0;
    const auto r = minimize_rate(spec, cfg);
    CHECK(r.measure.weights(0) == 1.0);
    // |x_s - south pole|^2 = 1/2 on the equator, so J = log(1/2) + log 2 = 0
    CHECK(r.j == doctest::Approx(0.0).epsilon(1e-14));
    CHECK(r.value == doctest::Approx(12.0));
  }

  TEST_CASE("kernel diagonal uses the cell energy capped at the truncation level") {
    const auto g = fibonacci_sphere_grid(50);
    const auto K = energy_kernel(g, 30.0);
    CHECK(K(0, 0) == doctest::Approx(g.cell(0)));
    CHECK(energy_kernel(g, 0.5)(3, 3) == 0.5);
    CHECK(K(1, 2) == doctest::Approx(-std::log((g.sphere_point(1) - g.sphere_point(2)).norm())));
    CHECK((K - K.transpose()).norm() == 0.0);
  }

  TEST_CASE("grid objective is convex along random segments") {
    const auto g = fibonacci_sphere_grid(80);
    const auto spec = kac_rate_spec(128);
    const auto K = energy_kernel(g, 30.0);
    const auto A = sup_kernel(g, spec, 30.0);
    Rng rng(71);
    for (int t = 0; t < 50; ++t) {
      Eigen::VectorXd a(80), b(80);
      for (int i = 0; i < 80; ++i) {
        a(i) = rng.uniform_open();
        b(i) = rng.uniform_open();
      }
      a /= a.sum();
      b /= b.sum();
      const double lam = rng.uniform();
      const double mid = grid_objective(K, A, spec.phi_tilde, lam * a + (1.0 - lam) * b);
      CHECK(mid <= lam * grid_objective(K, A, spec.phi_tilde, a) +
                       (1.0 - lam) * grid_objective(K, A, spec.phi_tilde, b) + 1e-12);
    }
  }

  TEST_CASE("Kac minimizer sits on the equator at value zero") {
    auto cfg = config_for(kac_sphere_grid(300, 256));
    const auto r = minimize_rate(kac_rate_spec(512, 0.25), cfg);
    CHECK(r.converged);
    CHECK(std::abs(r.value) < 1e-2);
    CHECK(equator_mass(r.measure) >= 0.95);
    for (std::size_t t = 1; t < r.trace.size(); ++t) CHECK(r.trace[t] <= r.trace[t - 1] + 1e-12);
  }

  TEST_CASE("elliptic minimum on a Fibonacci grid") {
    const auto spec = elliptic_rate_spec(2000);
    const double c = center_rate(spec, config_for(fibonacci_sphere_grid(2000)));
    CHECK(std::abs(c + 0.5) < 0.02);
  }

  TEST_CASE("orthogonal spec with the uniform circle and zero field matches Kac") {
    OrthogonalWeight w;
    const auto circle = circle_grid(512, 0.25);
    for (Eigen::Index i = 0; i < circle.size(); ++i) w.support.push_back(circle.plane_point(i));
    w.nu = circle.weights;
    w.phi = Eigen::VectorXd::Zero(512);
    const auto grid = kac_sphere_grid(300, 256);
    const double o = center_rate(orthogonal_rate_spec(w), config_for(grid));
    const double k = center_rate(kac_rate_spec(512, 0.25), config_for(grid));
    CHECK(std::abs(o - k) < 1e-2);
  }

  TEST_CASE("symmetric mode keeps conjugation invariance and does not lose value") {
    // odd Gauss-Legendre count puts a ring on the equator; longitudes are conjugation closed
    const auto grid = product_sphere_grid(15, 32);
    const auto spec = kac_rate_spec(256, 0.25);
    auto cfg = config_for(grid);
    cfg.max_iterations = 300;
    const auto plain = minimize_rate(spec, cfg);
    cfg.symmetric = true;
    const auto sym = minimize_rate(spec, cfg);
    CHECK(is_symmetric(sym.measure, 1e-12));
    // the objective is conjugation invariant and convex, so averaging cannot raise it
    const auto K = energy_kernel(grid, cfg.M);
    const auto A = sup_kernel(grid, spec, cfg.M);
    const double before = grid_objective(K, A, spec.phi_tilde, plain.measure.weights);
    const double after = grid_objective(K, A, spec.phi_tilde, symmetrize(plain.measure).weights);
    CHECK(after <= before + 1e-12);
  }

  TEST_CASE("plane grids come back in the plane") {
    const auto r = minimize_rate(kac_rate_spec(1024, 0.25), config_for(circle_grid(512)));
    CHECK(r.measure.space == Space::Plane);
    CHECK(r.measure.weights.sum() == doctest::Approx(1.0));
    CHECK(std::abs(r.value) < 1e-2);
  }

  TEST_CASE("non-convergence is reported") {
    auto cfg = config_for(kac_sphere_grid(300, 128));
    cfg.max_iterations = 2;
    cfg.tolerance = 1e-9;
    const auto r = minimize_rate(kac_rate_spec(256, 0.25), cfg);
    CHECK_FALSE(r.converged);
    CHECK(r.iterations <= 2);
    CHECK_THROWS_AS(center_rate(kac_rate_spec(256, 0.25), cfg), NonConvergence);
  }

  TEST_CASE("config validation") {
    auto cfg = config_for(fibonacci_sphere_grid(20));
    cfg.tolerance = 0.0;
    CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
    auto sym = config_for(as_grid(EmpiricalMeasure::plane({Complex(0.2, 0.5)})));
    sym.symmetric = true;
    CHECK_THROWS_AS(sym.validate(), AsymmetricSupport);
  }
}
