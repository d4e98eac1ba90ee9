#include <doctest.h>

#include <cmath>
#include <random>

#include "oracles.hpp"
#include "uclab/remez.hpp"

using namespace uclab;

TEST_SUITE_BEGIN("remez");

TEST_CASE("chebyshev coefficients by recurrence") {
  CHECK(chebyshev(0).coeffs == std::vector<double>{1.0});
  CHECK(chebyshev(1).coeffs == std::vector<double>{0.0, 1.0});
  CHECK(chebyshev(4).coeffs == std::vector<double>{1.0, 0.0, -8.0, 0.0, 8.0});
  for (int n = 1; n <= 20; ++n)
    CHECK(chebyshev(n).coeffs.back() == std::pow(2.0, n - 1));
}

TEST_CASE("T_n(cos t) = cos(n t)") {
  std::mt19937 rng(71);
  std::uniform_real_distribution<double> u(0.0, 2 * M_PI);
  for (int trial = 0; trial < 100; ++trial) {
    const double t = u(rng);
    const int n = 1 + trial % 10;
    CHECK(chebyshev_eval(n, std::cos(t)) ==
          doctest::Approx(std::cos(n * t)).scale(1).epsilon(1e-12));
    CHECK(chebyshev(n).eval(std::cos(t)) ==
          doctest::Approx(std::cos(n * t)).scale(1).epsilon(1e-10));
  }
  for (double x : {-0.9, 0.2, 0.77}) {
    CHECK(chebyshev_eval(3, x) == doctest::Approx(oracle::t3_closed(x)).epsilon(1e-14));
    CHECK(chebyshev_eval(4, x) == doctest::Approx(oracle::t4_closed(x)).epsilon(1e-14));
  }
}

TEST_CASE("extreme alternation of T_n") {
  for (int n : {3, 5, 8}) {
    for (int k = 0; k <= n; ++k) {
      const double xk = std::cos(k * M_PI / n);
      const double expected = (k % 2 == 0) ? 1.0 : -1.0;
      CHECK(chebyshev_eval(n, xk) == doctest::Approx(expected).epsilon(1e-12));
    }
  }
}

TEST_CASE("interval union normalization") {
  const IntervalUnion u({{0.5, 1.0}, {0.0, 0.6}, {2.0, 2.0}, {3.0, 4.0}});
  CHECK(u.intervals().size() == 3);
  CHECK(u.measure() == doctest::Approx(2.0));
}

TEST_CASE("bound arithmetic") {
  CHECK(remez_bound(2, 1.0, 1.0) == doctest::Approx(16.0));
  CHECK(remez_bound(1, 1.0, 0.5) == doctest::Approx(8.0));
  CHECK(remez_bound(3, 2.0, 1.0) == doctest::Approx(512.0));
  CHECK_THROWS(remez_bound(2, 1.0, 0.0));
  CHECK_THROWS(remez_bound(2, 1.0, 2.0));

  CHECK(sharp_remez_bound(0, 0.3) == 1.0);
  CHECK(sharp_remez_bound(4, 0.1) == doctest::Approx(3.0328).epsilon(1e-10 / 3.0));
  CHECK(sharp_remez_bound(4, 0.1) == doctest::Approx(oracle::t4_closed(1.1)));
  // T_n(2x - 1) <= (4x)^n for x > 1
  for (int n = 1; n <= 8; ++n)
    for (double x : {1.01, 1.5, 2.0, 5.0})
      CHECK(chebyshev_eval(n, 2 * x - 1) <= std::pow(4 * x, n));
}

TEST_CASE("max on interval by critical points") {
  const auto t5 = chebyshev(5);
  CHECK(max_abs_on_interval(t5, -1.0, 1.0) == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(max_abs_on_interval(t5, -1.0, 1.2) ==
        doctest::Approx(std::abs(chebyshev_eval(5, 1.2))).epsilon(1e-10));
  const RealPolynomial c{{3.5}};
  CHECK(max_abs_on_interval(c, 0.0, 1.0) == 3.5);
}

TEST_CASE("sharp equality case E = [-1,1], P = T_n") {
  for (int n : {2, 4, 6}) {
    const double c = 0.25;
    const auto r = verify_remez(chebyshev(n), IntervalUnion({{-1.0, 1.0}}),
                                {-1.0, 1.0 + c});
    CHECK(r.pass);
    CHECK(r.max_e == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(r.ratio == doctest::Approx(sharp_remez_bound(n, c)).epsilon(1e-9));
    CHECK(r.ratio <= r.bound);
  }
  const auto c = verify_remez(RealPolynomial{{2.0}}, IntervalUnion({{0.0, 0.5}}),
                              {0.0, 1.0});
  CHECK(c.pass);
  CHECK(c.ratio == doctest::Approx(1.0));
}

TEST_CASE("1000 randomized remez trials") {
  std::mt19937 rng(1234);
  std::uniform_real_distribution<double> coeff(-1.0, 1.0), pos(0.05, 0.45);
  for (int trial = 0; trial < 1000; ++trial) {
    const int n = 1 + trial % 8;
    RealPolynomial p;
    p.coeffs.resize(n + 1);
    for (auto& c : p.coeffs) c = coeff(rng);
    if (std::abs(p.coeffs.back()) < 1e-3) p.coeffs.back() = 1e-3;
    const double a = pos(rng), b = 0.5 + pos(rng);
    const auto r = verify_remez(p, IntervalUnion({{-a, a}, {0.5, b}}), {-0.5, 1.0});
    CHECK(r.pass);
  }
}

TEST_CASE("1d sublevel measures") {
  for (int n : {3, 5}) {
    const auto tn = chebyshev(n);
    for (double a : {1.0, 2.0, 3.0}) {
      const auto s = sublevel_measure_1d(tn, {-1.0, 1.0}, a);
      CHECK(s.pass);
      CHECK(s.measure <= 4.0 * 2.0 * std::exp(-a));
      CHECK(s.measure > 0.0);
    }
  }
  // a large: measure tends to zero
  const auto tiny = sublevel_measure_1d(chebyshev(4), {-1.0, 1.0}, 20.0);
  CHECK(tiny.measure < 1e-6);
  // e^{-an} > 1 never happens for a > 0; a tiny a covers nearly everything
  const auto wide = sublevel_measure_1d(chebyshev(2), {-1.0, 1.0}, 1e-9);
  CHECK(wide.measure == doctest::Approx(2.0).epsilon(1e-3));
}

TEST_CASE("discrete remez") {
  std::vector<double> lattice;
  for (int i = -8; i <= 8; ++i) lattice.push_back(double(i));
  const RealPolynomial p{{1.0, -0.5, 0.25}};
  const auto r = discrete_remez_check(p, lattice, 10, {-8.0, 8.0});
  CHECK(r.pass);
  // n = 0: constants trivially pass
  CHECK(discrete_remez_check(RealPolynomial{{2.0}}, lattice, 5, {-8.0, 8.0}).pass);
  // adversarial: vanishing on n lattice points
  RealPolynomial q{{0.0, 1.0}};  // x
  for (double root : {1.0, -2.0}) {
    // multiply by (x - root)
    std::vector<double> next(q.coeffs.size() + 1, 0.0);
    for (std::size_t i = 0; i < q.coeffs.size(); ++i) {
      next[i + 1] += q.coeffs[i];
      next[i] -= root * q.coeffs[i];
    }
    q.coeffs = next;
  }
  CHECK(discrete_remez_check(q, lattice, 10, {-8.0, 8.0}).pass);
  CHECK_THROWS(discrete_remez_check(q, {0.0, 1.0}, 3, {-8.0, 8.0}));  // |S| < n+m
}

TEST_CASE("polya area, equality case z^n") {
  for (int n : {1, 3}) {
    ComplexMonicPolynomial p;
    p.coeffs.assign(n, {0.0, 0.0});
    const double a = 1.0;
    const auto r = polya_check(p, a);
    const double exact = M_PI * std::exp(-2.0 * a);
    CHECK(r.pass);
    CHECK(r.inner <= exact + 1e-12);
    CHECK(r.outer >= exact - 1e-12);
    CHECK(r.outer - r.inner <= 2.1 * r.pixel_error);
    CHECK(r.inner == doctest::Approx(exact).epsilon(0.02));
  }
}

TEST_CASE("200 random monic polya trials") {
  std::mt19937 rng(555);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int trial = 0; trial < 200; ++trial) {
    const int n = 1 + trial % 6;
    ComplexMonicPolynomial p;
    p.coeffs.resize(n);
    for (auto& c : p.coeffs) c = {u(rng), u(rng)};
    const auto r = polya_check(p, 1.0, 512);
    CHECK(r.pass);
    CHECK(r.inner <= M_PI * std::exp(-2.0));
    const auto cr = cartan_area_check(p, 1.0, 512);
    CHECK(cr.pass);
    CHECK(cr.bound == doctest::Approx(4.0 * M_PI * std::exp(1.0 - 2.0)));
  }
}

TEST_CASE("polya rejects a <= 0; near-zero a stays below pi empirically") {
  ComplexMonicPolynomial p;
  p.coeffs = {{0.9, 0.0}, {0.0, 0.0}};  // z^2 + 0.9: separated roots
  CHECK_THROWS(polya_check(p, 0.0));
  const auto r = polya_check(p, 1e-6, 1024);
  CHECK(r.inner <= M_PI);
}

TEST_SUITE_END();
