#include <doctest.h>

#include <cmath>

#include "rootgas/geometry.hpp"
#include "rootgas/grids.hpp"
#include "rootgas/measures.hpp"
#include "rootgas/rng.hpp"

using namespace rootgas;

namespace {

GridMeasure atom(Complex z) { return as_grid(EmpiricalMeasure::plane({z})); }

GridMeasure random_plane_measure(Rng& rng, int m) {
  std::vector<Complex> z;
  for (int i = 0; i < m; ++i) z.push_back(rng.complex_gaussian(1.0));
  Eigen::VectorXd w(m);
  for (int i = 0; i < m; ++i) w(i) = rng.uniform_open();
  w /= w.sum();
  return as_grid(EmpiricalMeasure::plane(z)).with_weights(w);
}

}  // namespace

TEST_SUITE("measures") {
  TEST_CASE("bounded-Lipschitz distance between two atoms is the clipped distance") {
    CHECK(bl_distance(atom({0, 0}), atom({0, 0}), BLMode::Exact).value == doctest::Approx(0.0));
    for (const double r : {0.3, 1.0, 1.9, 2.5, 10.0}) {
      const auto d = bl_distance(atom({0, 0}), atom({0, r}), BLMode::Exact);
      CHECK(d.mode == BLMode::Exact);
      CHECK(d.value == doctest::Approx(std::min(r, 2.0)).epsilon(1e-9));
    }
  }

  TEST_CASE("exact distance is a pseudometric and bounds the surrogate") {
    Rng rng(21);
    for (int t = 0; t < 10; ++t) {
      const auto a = random_plane_measure(rng, 7), b = random_plane_measure(rng, 9), c = random_plane_measure(rng, 5);
      const double ab = bl_distance(a, b, BLMode::Exact).value;
      const double ba = bl_distance(b, a, BLMode::Exact).value;
      const double bc = bl_distance(b, c, BLMode::Exact).value;
      const double ac = bl_distance(a, c, BLMode::Exact).value;
      CHECK(ab >= 0.0);
      CHECK(ab == doctest::Approx(ba).epsilon(1e-9));
      CHECK(ac <= ab + bc + 1e-9);
      const auto s = bl_distance(a, b, BLMode::Surrogate);
      CHECK(s.mode == BLMode::Surrogate);
      CHECK(s.value <= ab + 1e-9);
    }
  }

  TEST_CASE("large supports fall back to the surrogate") {
    const auto g = fibonacci_sphere_grid(kExactSupportLimit + 10);
    const auto d = bl_distance(g, g);
    CHECK(d.mode == BLMode::Surrogate);
    CHECK(d.value == doctest::Approx(0.0));
  }

  TEST_CASE("mixed spaces are rejected") {
    const auto s = pushforward(atom({1, 0}));
    CHECK_THROWS_AS(bl_distance(atom({1, 0}), s), SpaceMismatch);
  }

  TEST_CASE("symmetrize averages conjugate weights") {
    Points p(2, 3);
    p << 0, 1, 0, 0, -1, 0;
    Eigen::VectorXd w(2);
    w << 1.0, 0.0;
    const GridMeasure mu{Space::Plane, p, w, Eigen::VectorXd::Constant(2, kInf)};
    CHECK_FALSE(is_symmetric(mu));
    const auto s = symmetrize(mu);
    CHECK(s.weights(0) == doctest::Approx(0.5));
    CHECK(s.weights(1) == doctest::Approx(0.5));
    CHECK(is_symmetric(s));
    const auto ss = symmetrize(s);
    CHECK((ss.weights - s.weights).norm() == 0.0);
    CHECK(symmetrize(circle_grid(64)).weights == circle_grid(64).weights);
  }

  TEST_CASE("conjugate permutation pairs mirror points and flags open supports") {
    const auto g = circle_grid(8);
    const auto perm = conjugate_permutation(g);
    for (Eigen::Index i = 0; i < g.size(); ++i) {
      const Complex z = g.plane_point(i);
      CHECK(std::abs(g.plane_point(perm[static_cast<std::size_t>(i)]) - std::conj(z)) < 1e-12);
    }
    CHECK_THROWS_AS(conjugate_permutation(atom({0, 1})), AsymmetricSupport);
    // symmetrize closes the support with zero-weight mirrors
    const auto s = symmetrize(atom({0, 1}));
    CHECK(s.size() == 2);
    CHECK(s.weights.sum() == doctest::Approx(1.0));
  }

  TEST_CASE("to_grid assigns mass to the nearest point") {
    const auto g = circle_grid(4);
    const auto on = to_grid(EmpiricalMeasure::plane({Complex(1, 0)}), g);
    CHECK(on.weights(0) == 1.0);
    CHECK(on.weights.sum() == 1.0);

    Points one(1, 3);
    one << 0.0, 0.0, 0.0;
    const GridMeasure single{Space::Plane, one, Eigen::VectorXd::Ones(1), Eigen::VectorXd::Constant(1, kInf)};
    const auto both = to_grid(EmpiricalMeasure::plane({Complex(1, 0), Complex(-3, 2)}), single);
    CHECK(both.weights(0) == 1.0);

    // 0 is equidistant from 1 and -1: the lower index wins
    const auto tie = to_grid(EmpiricalMeasure::plane({Complex(0, 0)}), g);
    CHECK(tie.weights(0) == 1.0);
  }

  TEST_CASE("discretizing on a fine grid moves mass by at most the mesh") {
    Rng rng(22);
    const auto grid = fibonacci_sphere_grid(1500);
    double mesh = 0.0;  // covering radius estimated from random probes
    for (int t = 0; t < 4000; ++t) {
      const Point3 x = project(rng.complex_gaussian(4.0));
      double best = kInf;
      for (Eigen::Index i = 0; i < grid.size(); ++i) best = std::min(best, (grid.sphere_point(i) - x).norm());
      mesh = std::max(mesh, best);
    }
    std::vector<Complex> z;
    for (int i = 0; i < 40; ++i) z.push_back(rng.complex_gaussian(1.0));
    const auto mu = pushforward_measure(EmpiricalMeasure::plane(z));
    const auto g = to_grid(mu, grid);
    CHECK(g.weights.sum() == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(bl_distance(mu, g, BLMode::Exact).value <= mesh);
  }

  TEST_CASE("grid invariants are validated") {
    auto g = circle_grid(8);
    CHECK_NOTHROW(g.validate());
    g.weights(0) = -0.1;
    CHECK_THROWS_AS(g.validate(), std::invalid_argument);
  }

  TEST_CASE("pushforward of a grid keeps weights and rescales cells") {
    const auto g = circle_grid(16);
    const auto s = pushforward(g);
    CHECK(s.space == Space::Sphere);
    CHECK(s.weights == g.weights);
    // lengths on the unit circle shrink by 1/2 in the chordal metric
    for (Eigen::Index i = 0; i < g.size(); ++i) CHECK(s.cell(i) == doctest::Approx(g.cell(i) + std::log(2.0)));
    const auto back = pullback(s);
    CHECK((back.points - g.points).norm() < 1e-14);
    for (Eigen::Index i = 0; i < g.size(); ++i) CHECK(back.cell(i) == doctest::Approx(g.cell(i)));
  }
}
