#include <doctest.h>

#include <cmath>
#include <complex>

#include "rootgas/geometry.hpp"
#include "rootgas/measures.hpp"
#include "rootgas/rng.hpp"

using namespace rootgas;

TEST_SUITE("geometry") {
  TEST_CASE("project fixes the south pole and maps the unit circle to the equator") {
    const auto o = project(Complex(0.0, 0.0));
    CHECK(o.norm() == 0.0);
    const auto one = project(Complex(1.0, 0.0));
    CHECK(one(0) == doctest::Approx(0.5));
    CHECK(one(1) == 0.0);
    CHECK(one(2) == doctest::Approx(0.5));
    const auto i = project(Complex(0.0, 1.0));
    CHECK(i(0) == 0.0);
    CHECK(i(1) == doctest::Approx(0.5));
    CHECK(i(2) == doctest::Approx(0.5));
  }

  TEST_CASE("unproject inverts project and rejects the north pole") {
    CHECK(std::abs(unproject(Point3(0.0, 0.0, 0.0))) == 0.0);
    CHECK(std::abs(unproject(Point3(0.5, 0.0, 0.5)) - 1.0) < 1e-15);
    CHECK_THROWS_AS(unproject(north_pole<double>()), NorthPoleError);

    Rng rng(11);
    for (int t = 0; t < 2000; ++t) {
      const double scale = std::pow(10.0, 12.0 * rng.uniform() - 6.0);
      const Complex z = scale * rng.complex_gaussian(1.0);
      const auto x = project(z);
      CHECK(sphere_defect(x) < 1e-12);
      CHECK_FALSE(is_north_pole(x));
      CHECK(std::abs(unproject(x) - z) <= 1e-12 * std::abs(z));
      CHECK((project(unproject(x)) - x).norm() < 1e-12);
    }
  }

  TEST_CASE("chordal and norm identities hold on hand cases and across scales") {
    CHECK(chordal_identity_residual(Complex(1, 0), Complex(-1, 0)) < 1e-15);
    CHECK(chordal_identity_residual(Complex(0, 0), Complex(0, 0)) == 0.0);
    CHECK(norm_identity_residual(Complex(0, 0)) == 0.0);
    CHECK(norm_identity_residual(Complex(1, 0)) < 1e-16);
    CHECK(sphere_dist2(project(Complex(1, 0)), project(Complex(-1, 0))) == doctest::Approx(1.0));

    Rng rng(12);
    double worst = 0.0;
    for (int t = 0; t < 20000; ++t) {
      const Complex z = std::pow(10.0, 6.0 * rng.uniform()) * rng.complex_gaussian(1.0);
      const Complex w = std::pow(10.0, 6.0 * rng.uniform()) * rng.complex_gaussian(1.0);
      worst = std::max(worst, chordal_identity_residual(z, w) / (1.0 + std::norm(z - w)));
      CHECK(norm_identity_residual(z) < 1e-12);
    }
    CHECK(worst < 1e-10);
  }

  TEST_CASE("chordal distance agrees with the sphere distance") {
    const Complex z(0.3, -2.0), w(-5.0, 0.25);
    CHECK(chordal_distance(z, w) == doctest::Approx(std::sqrt(sphere_dist2(project(z), project(w)))).epsilon(1e-14));
  }

  TEST_CASE("templated on the scalar type") {
    const auto xf = project(std::complex<float>(1.0f, 0.0f));
    CHECK(xf(2) == doctest::Approx(0.5f));
    const auto xl = project(std::complex<long double>(3.0L, 4.0L));
    CHECK(static_cast<double>(xl(2)) == doctest::Approx(25.0 / 26.0));
    CHECK(static_cast<double>(norm_identity_residual(std::complex<long double>(1e3L, 2.0L))) < 1e-18);
  }

  TEST_CASE("huge moduli do not overflow") {
    // past |z| ~ 1e154 the complement 1/(1+|z|^2) is below the double range
    const Complex z(1e150, -1e150);
    const auto x = project(z);
    CHECK(std::isfinite(x(0)));
    CHECK(sphere_complement(x) > 0.0);
    CHECK(std::abs(unproject(x) - z) <= 1e-12 * std::abs(z));
    CHECK(sphere_complement(x) == doctest::Approx(1.0 / std::norm(z)).epsilon(1e-14));
    CHECK(log1p_norm(Complex(1e200, 0.0)) == doctest::Approx(2.0 * std::log(1e200)));
  }

  TEST_CASE("mirror is the image of conjugation") {
    const Complex z(0.7, 1.3);
    CHECK((mirror(project(z)) - project(std::conj(z))).norm() < 1e-16);
  }

  TEST_CASE("pushforward of empirical measures") {
    const auto s0 = pushforward_measure(EmpiricalMeasure::plane({Complex(0, 0)}));
    CHECK(s0.space == Space::Sphere);
    CHECK(s0.atoms.row(0).norm() == 0.0);

    const auto s = pushforward_measure(EmpiricalMeasure::plane({Complex(1, 0), Complex(-1, 0)}));
    REQUIRE(s.size() == 2);
    CHECK((s.sphere_atom(0) - Point3(0.5, 0.0, 0.5)).norm() < 1e-16);
    CHECK((s.sphere_atom(1) - Point3(-0.5, 0.0, 0.5)).norm() < 1e-16);

    const std::vector<Complex> z{{0.1, 2.0}, {-30.0, 0.5}, {1e-5, 0.0}};
    const auto back = pullback_measure(pushforward_measure(EmpiricalMeasure::plane(z))).plane_atoms();
    for (std::size_t i = 0; i < z.size(); ++i) CHECK(std::abs(back[i] - z[i]) <= 1e-12 * std::abs(z[i]));
  }
}
