#include <doctest.h>

#include <cmath>
#include <random>

#include "uclab/polynomialnd.hpp"

using namespace uclab;

TEST_SUITE_BEGIN("polynomialnd");

TEST_CASE("homogeneity P(tx) = t^n P(x)") {
  auto p = HomogeneousPolynomial::monomial(3, {2, 1, 0}, 3);
  p.add_term({0, 0, 3}, Rational(-1, 2));
  std::mt19937 rng(17);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  for (int trial = 0; trial < 50; ++trial) {
    const double x = u(rng), y = u(rng), z = u(rng), t = u(rng);
    const double lhs = p.eval(t * x, t * y, t * z);
    const double rhs = std::pow(t, 3) * p.eval(x, y, z);
    CHECK(lhs == doctest::Approx(rhs).epsilon(1e-12));
  }
}

TEST_CASE("laplacian of x^2 y") {
  const auto p = HomogeneousPolynomial::monomial(3, {2, 1, 0});
  const auto lap = p.laplacian();  // d^2/dx^2 (x^2 y) = 2y
  CHECK(lap.degree() == 1);
  CHECK(lap.eval(0.0, 3.0) == doctest::Approx(6.0));
}

TEST_CASE("x^2 - y^2 is already harmonic") {
  auto f = HomogeneousPolynomial::monomial(2, {2, 0, 0});
  f.add_term({0, 2, 0}, -1);
  const auto parts = harmonic_decompose(f);
  REQUIRE(parts.size() == 1);
  CHECK(parts[0].degree() == 2);
  CHECK(parts[0].eval(1.0, 2.0) == doctest::Approx(-3.0));
  CHECK(parts[0].laplacian().is_zero());
}

TEST_CASE("x^2 = (x^2 - y^2)/2 + |x|^2 / 2") {
  const auto f = HomogeneousPolynomial::monomial(2, {2, 0, 0});
  const auto parts = harmonic_decompose(f);
  REQUIRE(parts.size() == 2);
  CHECK(parts[0].degree() == 2);
  CHECK(parts[1].degree() == 0);
  // H2 = (x^2 - y^2)/2
  CHECK(parts[0].eval(1.0, 0.0) == doctest::Approx(0.5));
  CHECK(parts[0].eval(0.0, 1.0) == doctest::Approx(-0.5));
  // H0 = 1/2
  CHECK(parts[1].eval(0.7, -0.3) == doctest::Approx(0.5));
}

TEST_CASE("decomposition roundtrip is exact in rational arithmetic") {
  std::mt19937 rng(23);
  std::uniform_int_distribution<int> c(-5, 5);
  for (int trial = 0; trial < 10; ++trial) {
    const int n = 2 + trial % 4;
    HomogeneousPolynomial f(n, 3);
    for (int i = 0; i <= n; ++i)
      for (int j = 0; i + j <= n; ++j)
        f.add_term({i, j, n - i - j}, c(rng));
    if (f.is_zero()) continue;
    const auto parts = harmonic_decompose(f);
    HomogeneousPolynomial sum(n, 3);
    for (const auto& h : parts) {
      CHECK(h.laplacian().is_zero());
      auto lifted = h;
      while (lifted.degree() < n) lifted = lifted.times_r2();
      sum = sum + lifted;
    }
    CHECK((sum - f).is_zero());  // bit-for-bit in exact mode
  }
}

TEST_CASE("times_r2 and scaled") {
  const auto p = HomogeneousPolynomial::monomial(2, {1, 0, 0});
  const auto q = p.times_r2();
  CHECK(q.degree() == 3);
  CHECK(q.eval(2.0, 1.0) == doctest::Approx(2.0 * 5.0));
  CHECK(p.scaled(Rational(3, 2)).eval(2.0, 0.0) == doctest::Approx(3.0));
}

TEST_SUITE_END();
