#include <doctest.h>

#include <cmath>

#include "rootgas/functionals.hpp"
#include "rootgas/geometry.hpp"
#include "rootgas/grids.hpp"
#include "rootgas/rng.hpp"

using namespace rootgas;

namespace {

const double kLog2 = std::log(2.0);

Eigen::RowVector3d at(Complex z) { return {z.real(), z.imag(), 0.0}; }

// Closed forms for the m-point circle grid: the pair sum of log|w_i - w_j| is
// m log m, so the energy is (1.5 - log 2pi) / m, and the potential sup over the
// circle is log 4 / m, attained where z^m = -1.
double circle_grid_energy(double m) { return (1.5 - std::log(2.0 * kPi)) / m; }
double circle_grid_j(double m) { return 2.0 * kLog2 / m; }

}  // namespace

TEST_SUITE("functionals") {
  TEST_CASE("potential of a point mass") {
    const auto d0 = EmpiricalMeasure::plane({Complex(0, 0)});
    CHECK(log_potential(d0, Complex(1, 0)) == 0.0);
    CHECK(log_potential(d0, Complex(0, 0)) == kInf);
    CHECK(log_potential(d0, Complex(0, 2)) == doctest::Approx(-kLog2));
  }

  TEST_CASE("potential of the uniform circle grid") {
    const auto g = circle_grid(4096);
    CHECK(std::abs(log_potential(g, at({0.5, 0.0}))) < 1e-6);
    CHECK(std::abs(log_potential(g, at({0.0, -0.5}))) < 1e-6);
    CHECK(std::abs(log_potential(g, at({2.0, 0.0})) + kLog2) < 1e-6);
    // on the circle where z^m = exp(i pi/3), |z^m - 1| = 1 exactly
    CHECK(std::abs(log_potential(g, at(std::polar(1.0, kPi / (3.0 * 4096))))) < 1e-6);
  }

  TEST_CASE("discrete energy on hand cases") {
    CHECK(discrete_energy(EmpiricalMeasure::plane({Complex(0, 0), Complex(1, 0)})) == 0.0);
    CHECK(discrete_energy(EmpiricalMeasure::plane({Complex(0, 0), Complex(2, 0)})) == doctest::Approx(-kLog2 / 2.0));
    CHECK(discrete_energy(EmpiricalMeasure::plane({Complex(1, 0), Complex(-1, 0)})) == doctest::Approx(-kLog2 / 2.0));
    CHECK(discrete_energy(EmpiricalMeasure::plane({Complex(1, 0), Complex(1, 0)})) == kInf);
  }

  TEST_CASE("truncated energy on hand cases") {
    CHECK(truncated_energy(EmpiricalMeasure::plane({Complex(0, 0)}), 5.0) == 5.0);
    CHECK(truncated_energy(as_grid(EmpiricalMeasure::plane({Complex(0, 0)})), 5.0) == 5.0);
    CHECK(truncated_energy(EmpiricalMeasure::plane({Complex(0, 0), Complex(2, 0)}), 30.0) ==
          doctest::Approx(15.0 - kLog2 / 2.0));
    CHECK(truncated_energy(circle_grid(1024), 30.0) == doctest::Approx(circle_grid_energy(1024)).epsilon(1e-9));
  }

  TEST_CASE("truncated energy is nondecreasing in the truncation level") {
    Rng rng(41);
    for (int t = 0; t < 20; ++t) {
      std::vector<Complex> z;
      for (int i = 0; i < 30; ++i) z.push_back(1e-3 * rng.complex_gaussian(1.0));
      Eigen::VectorXd w(30);
      for (int i = 0; i < 30; ++i) w(i) = rng.uniform_open();
      const auto mu = as_grid(EmpiricalMeasure::plane(z)).with_weights(w / w.sum());
      double prev = -kInf;
      for (const double M : {1.0, 5.0, 10.0, 30.0}) {
        const double e = truncated_energy(mu, M);
        CHECK(e >= prev);
        prev = e;
      }
    }
  }

  TEST_CASE("J of the point mass and of the circle grid") {
    const auto spec = kac_rate_spec();
    CHECK(std::abs(j_functional(as_grid(EmpiricalMeasure::plane({Complex(0, 0)})), spec).value) < 1e-15);
    for (const double m : {1024.0, 4096.0}) {
      const auto j = j_functional(circle_grid(static_cast<Eigen::Index>(m)), spec);
      CHECK(j.value <= circle_grid_j(m) + 1e-12);
      CHECK(j.value == doctest::Approx(circle_grid_j(m)).epsilon(1e-6));
    }
    CHECK(std::abs(j_functional(circle_grid(4096), spec).value) < 1e-3);
  }

  TEST_CASE("elliptic J of the point mass approaches zero from below") {
    const auto d0 = as_grid(EmpiricalMeasure::plane({Complex(0, 0)}));
    double prev = -kInf;
    for (const double rmax : {1e1, 1e2, 1e4}) {
      const double j = j_functional(d0, elliptic_radial_rate_spec(1e-3, rmax, 200, 16, false)).value;
      CHECK(j <= 0.0);
      CHECK(j >= prev);
      // the golden-section pass may step past the outermost radius
      CHECK(j >= -std::log1p(1.0 / (rmax * rmax)));
      prev = j;
    }
    CHECK(std::abs(j_functional(d0, elliptic_radial_rate_spec(1e-3, 1e2, 50, 8, true)).value) < 1e-15);
  }

  TEST_CASE("Hamiltonian on hand cases") {
    const auto k2 = ModelSpec::kac(2, Field::Complex);
    CHECK(hamiltonian({Complex(1, 0), Complex(-1, 0)}, k2) == doctest::Approx(kLog2 / 4.0).epsilon(1e-14));
    CHECK(hamiltonian({Complex(1, 0), Complex(-1, 0)}, k2) == doctest::Approx(0.17328679513998632));
    CHECK(hamiltonian({Complex(0, 0)}, ModelSpec::kac(1, Field::Complex)) == 0.0);
    CHECK(std::exp(log_confinement({Complex(2, 0)}, ModelSpec::kac(1, Field::Complex))) == doctest::Approx(5.0));
    CHECK(hamiltonian({Complex(1, 0), Complex(1, 0)}, k2) == kInf);
  }

  TEST_CASE("Hamiltonian is invariant under rotation and permutation") {
    const auto spec = ModelSpec::kac(5, Field::Complex);
    Rng rng(42);
    std::vector<Complex> z;
    for (int i = 0; i < 5; ++i) z.push_back(rng.complex_gaussian(1.0));
    const double h = hamiltonian(z, spec);
    auto r = z;
    for (auto& x : r) x *= std::polar(1.0, 0.7);
    CHECK(hamiltonian(r, spec) == doctest::Approx(h).epsilon(1e-12));
    std::reverse(r.begin(), r.end());
    CHECK(hamiltonian(r, spec) == doctest::Approx(h).epsilon(1e-12));
  }

  TEST_CASE("elliptic confinement norm") {
    // monic z, n = 1: 1 / (2 binom(1, 1))
    CHECK(elliptic_log_norm({Complex(0, 0)}) == doctest::Approx(std::log(0.5)));
    // monic z^2 - 1: 1/3 + 1/3
    CHECK(elliptic_log_norm({Complex(1, 0), Complex(-1, 0)}) == doctest::Approx(std::log(2.0 / 3.0)));
  }

  TEST_CASE("rate of a point mass is the truncation level") {
    const auto r = rate_function(as_grid(EmpiricalMeasure::plane({Complex(0, 0)})), kac_rate_spec(), 30.0);
    CHECK(r.value == doctest::Approx(30.0));
    CHECK(r.energy == 30.0);
  }

  TEST_CASE("rate of the uniform circle grid") {
    const auto r = rate_function(circle_grid(4096), kac_rate_spec(), 30.0);
    const double closed = circle_grid_energy(4096) + circle_grid_j(4096);
    CHECK(r.value == doctest::Approx(closed).epsilon(1e-6));
    CHECK(r.value == doctest::Approx(2.559612e-4).epsilon(1e-5));
    CHECK(std::abs(r.value) < 1e-3);
    CHECK(std::abs(r.planar - r.value) < 1e-6);
  }

  TEST_CASE("real rate gates on symmetry") {
    const auto spec = kac_rate_spec();
    CHECK(real_rate_function(as_grid(EmpiricalMeasure::plane({Complex(0.3, 0.4)})), spec) == kInf);
    auto centered = spec;
    centered.center = 0.0;
    const auto g = circle_grid(512);
    CHECK(real_rate_function(g, centered) == doctest::Approx(0.5 * rate_function(g, centered).value));
  }

  TEST_CASE("plane and sphere forms agree") {
    const auto spec = kac_rate_spec();
    CHECK(plane_sphere_rate_identity_residual(as_grid(EmpiricalMeasure::plane({Complex(1, 0), Complex(-1, 0)})),
                                              spec) <= 1e-12);
    Rng rng(43);
    std::vector<Complex> z;
    while (z.size() < 50) {
      const Complex w(2.0 * rng.uniform() - 1.0, 2.0 * rng.uniform() - 1.0);
      if (std::abs(w) < 1.0) z.push_back(w);
    }
    CHECK(plane_sphere_rate_identity_residual(as_grid(EmpiricalMeasure::plane(z)), spec) <= 1e-9);
    CHECK(plane_sphere_rate_identity_residual(as_grid(EmpiricalMeasure::plane(z)), elliptic_rate_spec(500)) <= 1e-9);
    CHECK(plane_sphere_rate_identity_residual(circle_grid(4096), spec) <= 1e-6);
  }

  TEST_CASE("quadrature rules") {
    CHECK(circle_quadrature([](Complex) { return 1.0; }, 4) == 1.0);
    CHECK(circle_quadrature([](Complex z) { return std::norm(z); }, 4) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(std::abs(circle_quadrature([](Complex z) { return std::norm(z - 2.0); }, 256) - 5.0) < 1e-12);
    const auto fib = fibonacci_sphere_grid(500);
    CHECK(sphere_quadrature([](const Point3&) { return 1.0; }, fib) == doctest::Approx(1.0).epsilon(1e-14));
    const auto prod = product_sphere_grid(16, 32);
    // x3 is uniform on [0, 1] for the normalized area measure
    CHECK(sphere_quadrature([](const Point3& x) { return x(2); }, prod) == doctest::Approx(0.5).epsilon(1e-13));
    CHECK(plane_quadrature([](Complex) { return 2.0; }, fubini_study_grid(100)) == doctest::Approx(2.0));
  }

  TEST_CASE("Parseval matches circle quadrature") {
    Rng rng(44);
    for (int t = 0; t < 100; ++t) {
      const int n = 1 + static_cast<int>(rng.index(50));
      std::vector<Complex> a;
      for (int k = 0; k <= n; ++k) a.push_back(rng.complex_gaussian(1.0));
      double norm2 = 0.0;
      for (const auto& c : a) norm2 += std::norm(c);
      const double q = circle_quadrature(
          [&](Complex z) {
            Complex p = 0.0;
            for (int k = n; k >= 0; --k) p = p * z + a[static_cast<std::size_t>(k)];
            return std::norm(p);
          },
          4 * (n + 1));
      CHECK(std::abs(q - norm2) <= 1e-10 * norm2);
    }
  }

  TEST_CASE("log-sum-exp") {
    Eigen::VectorXd x(3);
    x << 1000.0, 1000.0, -kInf;
    CHECK(log_sum_exp(x) == doctest::Approx(1000.0 + kLog2));
    CHECK(log_sum_exp(Eigen::VectorXd::Constant(2, -kInf)) == -kInf);
  }

  TEST_CASE("cell energies") {
    CHECK(arc_cell_energy(2.0 * kPi / 4096.0) == doctest::Approx(7.9798891003099985).epsilon(1e-15));
    // flat-disk value -log(rho) + 1/4 with area pi rho^2 = w pi
    CHECK(sphere_cell_energy(1e-4) == doctest::Approx(-std::log(1e-2) + 0.25));
  }
}
