#include <doctest.h>

#include <cmath>

#include "rootgas/exactlaws.hpp"
#include "rootgas/functionals.hpp"
#include "rootgas/oracles.hpp"
#include "rootgas/rng.hpp"

using namespace rootgas;

TEST_SUITE("exactlaws") {
  TEST_CASE("elliptic monomial norms") {
    CHECK(elliptic_inner_product(0, 0) == doctest::Approx(1.0));
    CHECK(elliptic_inner_product(0, 1) == doctest::Approx(0.5));
    CHECK(elliptic_inner_product(1, 2) == doctest::Approx(1.0 / 6.0));
    for (int n = 0; n <= 20; ++n)
      for (int k = 0; k <= n; ++k)
        CHECK(elliptic_inner_product(k, n) == doctest::Approx(oracle::elliptic_moment(k, n)).epsilon(1e-8));
  }

  TEST_CASE("degree-one densities are normalized") {
    // the root of a0 + a1 z has density 1 / (pi (1+|z|^2)^2), a real root 1 / (pi (1+x^2))
    const auto c = ModelSpec::kac(1, Field::Complex);
    CHECK(complex_root_logdensity({Complex(0, 0)}, c).log_density == doctest::Approx(-std::log(kPi)));
    CHECK(complex_root_logdensity({Complex(2, 0)}, c).log_density == doctest::Approx(-std::log(kPi) - 2.0 * std::log(5.0)));
    const auto r = ModelSpec::kac(1, Field::Real);
    CHECK(log_z_real(r, 0) == doctest::Approx(std::log(kPi)));
    CHECK(real_mixture_logdensity({Complex(3, 0)}, 0, r).log_density ==
          doctest::Approx(-std::log(kPi) - std::log(10.0)));
  }

  TEST_CASE("degree-two Kac density on a hand case") {
    const auto spec = ModelSpec::kac(2, Field::Complex);
    const auto d = complex_root_logdensity({Complex(1, 0), Complex(-1, 0)}, spec);
    CHECK(d.log_unnormalized == doctest::Approx(-std::log(2.0)));
    const auto p = complex_root_logdensity({Complex(-1, 0), Complex(1, 0)}, spec);
    CHECK(p.log_density == doctest::Approx(d.log_density));
    CHECK(log_z_complex(spec) == doctest::Approx(2.0 * std::log(kPi) - std::log(2.0)));
  }

  TEST_CASE("density is invariant under rotation") {
    const auto spec = ModelSpec::kac(4, Field::Complex);
    Rng rng(51);
    std::vector<Complex> z;
    for (int i = 0; i < 4; ++i) z.push_back(rng.complex_gaussian(1.0));
    const double a = complex_root_logdensity(z, spec).log_density;
    for (auto& x : z) x *= std::polar(1.0, 0.7);
    CHECK(complex_root_logdensity(z, spec).log_density == doctest::Approx(a).epsilon(1e-12));
  }

  TEST_CASE("mixture constants for degree two") {
    const auto spec = ModelSpec::kac(2, Field::Real);
    const auto mc = mixture_constants(spec);
    REQUIRE(mc.log_z.size() == 2);
    CHECK(mc.log_z[1] == doctest::Approx(std::log(kPi)));
    CHECK(log_z_real(spec, 1) == doctest::Approx(std::log(kPi)));
  }

  TEST_CASE("mixture constants shrink relative to n^2") {
    const auto c100 = mixture_constants(ModelSpec::kac(100, Field::Real)).control;
    const auto c200 = mixture_constants(ModelSpec::kac(200, Field::Real)).control;
    const auto c400 = mixture_constants(ModelSpec::kac(400, Field::Real)).control;
    CHECK(c200 < 0.05);
    CHECK(c400 < c100);
  }

  TEST_CASE("real mixture density layout") {
    const auto spec = ModelSpec::kac(3, Field::Real);
    const std::vector<Complex> z{Complex(0.5, 0), Complex(-0.2, 0), Complex(1.5, 0)};
    const auto d = real_mixture_logdensity(z, 0, spec);
    CHECK(d.k == 0);
    CHECK(d.log_unnormalized == doctest::Approx(-0.5 * spec.beta * hamiltonian(z, spec)));
    CHECK(d.log_density == doctest::Approx(d.log_unnormalized - log_z_real(spec, 0)));

    const std::vector<Complex> paired{Complex(0.5, 0), Complex(0.1, 0.7), Complex(0.1, -0.7)};
    CHECK_NOTHROW(real_mixture_logdensity(paired, 1, spec));
    const std::vector<Complex> bad{Complex(0.5, 0), Complex(0.1, 0.7), Complex(0.2, -0.7)};
    CHECK_THROWS_AS(real_mixture_logdensity(bad, 1, spec), BadMixtureStructure);
    const std::vector<Complex> not_real{Complex(0.5, 0.1), Complex(0.1, 0.7), Complex(0.1, -0.7)};
    CHECK_THROWS_AS(real_mixture_logdensity(not_real, 1, spec), BadMixtureStructure);
  }

  TEST_CASE("mixture layout orders real roots first") {
    int k = -1;
    const auto z = mixture_layout({Complex(0.1, -0.7), Complex(2.0, 1e-14), Complex(0.1, 0.7)}, k);
    CHECK(k == 1);
    REQUIRE(z.size() == 3);
    CHECK(z[0] == Complex(2.0, 0.0));
    CHECK(z[1].imag() > 0.0);
    CHECK(z[2] == std::conj(z[1]));
  }

  TEST_CASE("Bernstein-Markov on extremal polynomials") {
    std::vector<Complex> mono(11, Complex(0, 0));
    mono[10] = 1.0;
    const auto a = bernstein_markov_check(mono, BMKind::Circle);
    CHECK(a.sup == doctest::Approx(1.0));
    CHECK(a.norm == doctest::Approx(1.0));
    CHECK(a.pass);

    const std::vector<Complex> ones(11, Complex(1, 0));
    const auto b = bernstein_markov_check(ones, BMKind::Circle);
    CHECK(b.sup == doctest::Approx(11.0));
    CHECK(b.norm == doctest::Approx(std::sqrt(11.0)));
    CHECK(b.ratio == doctest::Approx(std::sqrt(11.0)));
    CHECK(b.bound == doctest::Approx(std::sqrt(11.0)));
    CHECK(b.pass);
  }

  TEST_CASE("Bernstein-Markov holds for random elliptic polynomials") {
    Rng rng(52);
    int violations = 0;
    for (int t = 0; t < 1000; ++t) {
      const int n = 1 + static_cast<int>(rng.index(30));
      const auto p = sample_coefficients(ModelSpec::elliptic(n, Field::Complex), rng);
      if (!bernstein_markov_check(p.normalized(), BMKind::Elliptic).pass) ++violations;
    }
    CHECK(violations == 0);
  }
}
