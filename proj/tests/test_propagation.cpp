#include <doctest.h>

#include <cmath>
#include <random>

#include "oracles.hpp"
#include "uclab/growth_analysis.hpp"
#include "uclab/propagation.hpp"
#include "uclab/solution_family.hpp"

using namespace uclab;

TEST_SUITE_BEGIN("propagation");

TEST_CASE("sublevel fraction basics") {
  const auto g = GridSpec::square(0.0, 1.0, 1001);
  const auto u = ScalarField::sample(g, [](double x, double) { return x; });
  const Cube q{0.5, 0.5, 0.5};

  // u = x on [0,1], a = 1: exact linear level set
  CHECK(sublevel_measure(u, q, 1.0).fraction ==
        doctest::Approx(std::exp(-1.0)).epsilon(0.01));
  // a = 0: strict inequality excludes only the max nodes
  const double m0 = sublevel_measure(u, q, 0.0).fraction;
  CHECK(m0 <= 1.0);
  CHECK(m0 >= 1.0 - 2.0 / 1000.0);
  // large a: nonvanishing part shrinks to the zero line
  CHECK(sublevel_measure(u, q, 30.0).fraction < 0.01);
  // nonincreasing in a
  double prev = 1.0;
  for (double a : {0.5, 1.0, 2.0, 4.0, 8.0}) {
    const double m = sublevel_measure(u, q, a).fraction;
    CHECK(m <= prev + 1e-15);
    prev = m;
  }
}

TEST_CASE("decay fit is exactly linear for u = x") {
  const auto g = GridSpec::square(0.0, 1.0, 2001);
  const auto u = ScalarField::sample(g, [](double x, double) { return x; });
  const Cube q{0.5, 0.5, 0.5};
  const double n = doubling_cube(u, {0.5, 0.5, 0.2}, 3).value;
  std::vector<double> a_grid;
  for (double a = 0.5; a <= 5.0; a += 0.5) a_grid.push_back(a);
  const auto fit = decay_fit(u, q, a_grid, n);
  CHECK(fit.r_squared == doctest::Approx(1.0).epsilon(1e-4));
  CHECK(fit.beta_raw == doctest::Approx(1.0).epsilon(0.01));
  CHECK(fit.beta_scaled == doctest::Approx(n).epsilon(0.01));

  const auto c = ScalarField::sample(g, [](double, double) { return 2.0; });
  CHECK_THROWS(decay_fit(c, q, a_grid, 1.0));
}

TEST_CASE("beta_scaled stays put while beta_raw tracks 1/n for r^n cos") {
  const auto g = GridSpec::square(-1.0, 1.0, 801);
  const Cube q{0.0, 0.0, 0.5};
  std::vector<double> a_grid;
  for (double a = 1.0; a <= 8.0; a += 0.5) a_grid.push_back(a);
  std::vector<double> beta_n;
  for (int n = 2; n <= 8; n += 2) {
    const auto u = ScalarField::sample(g, [n](double x, double y) {
      const double r = std::hypot(x, y);
      return std::pow(r, n) * std::cos(n * std::atan2(y, x));
    });
    const double nd = doubling_cube(u, q.scaled(0.5), 3).value;
    const auto fit = decay_fit(u, q, a_grid, nd);
    CHECK(fit.r_squared >= 0.9);
    CHECK(fit.beta_raw > 0.0);
    beta_n.push_back(fit.beta_raw * n);
  }
  const double lo = *std::min_element(beta_n.begin(), beta_n.end());
  const double hi = *std::max_element(beta_n.begin(), beta_n.end());
  CHECK(hi / lo <= 1.8);  // beta * n approximately constant across the sweep
}

TEST_CASE("remez for solutions") {
  const auto cal = oracle::load_calibration();
  const auto g = GridSpec::square(-1.0, 1.0, 257);
  const Cube q{0.0, 0.0, 0.45};

  // E = Q reduces to sup <= C^{1+CN} sup
  const auto u = ScalarField::sample(g, [](double x, double y) { return x + y + 0.2; });
  std::vector<std::uint8_t> all(g.size(), 1);
  const auto r = remez_solutions_check(u, all, q, 1.0, cal.remez_c);
  CHECK(r.pass);
  CHECK(r.volume_ratio == doctest::Approx(1.0));

  // u = x with a thin slab mask: explicit ratio 1/eps geometry
  const auto lin = ScalarField::sample(g, [](double x, double) { return x; });
  std::vector<std::uint8_t> slab(g.size(), 0);
  for (int j = 0; j < g.ny; ++j)
    for (int i = 0; i < g.nx; ++i)
      if (std::abs(g.x(i)) <= 0.05) slab[g.idx(i, j)] = 1;
  const auto rs = remez_solutions_check(lin, slab, q, std::log(2.0),
                                        std::max(cal.remez_c, 2.0));
  CHECK(rs.pass);

  // sweep at the frozen constant
  int pass = 0;
  for (unsigned seed = 1000; seed < 1100; ++seed) {
    const auto h = random_harmonic(seed, 6, g);
    const auto mask = random_cell_mask(seed, g, q, 0.05);
    const double nd = doubling_cube(h.field, q, 3).value;
    if (remez_solutions_check(h.field, mask, q, nd, cal.remez_c).pass) ++pass;
  }
  CHECK(pass == 100);
}

TEST_CASE("propagation constants") {
  const auto cal = oracle::load_calibration();
  const auto g = GridSpec::square(-1.0, 1.0, 257);
  const Cube q{0.0, 0.0, 0.45};
  const Cube k_set{0.3, 0.3, 0.1};
  const Cube omega{0.0, 0.0, 1.0};

  // eps = sup is trivially satisfied with C0 >= 1
  const auto u = random_harmonic(1, 5, g);
  std::vector<std::uint8_t> mask = random_cell_mask(2, g, q, 0.1);
  const double sup = u.field.sup_norm();
  const auto triv = propagation_constant(u.field, mask, k_set, omega, sup, 1.0,
                                         cal.prop_alpha, cal.remez_c, 1.0,
                                         cal.invdouble_a1);
  CHECK(triv.pass);

  // empty mask rejected
  std::vector<std::uint8_t> none(g.size(), 0);
  CHECK_THROWS(propagation_constant(u.field, none, k_set, omega, 1.0, 1.0, 0.5,
                                    2.0, 1.0));

  // |u| > eps on E rejected
  CHECK_THROWS(propagation_constant(u.field, mask, k_set, omega, 1e-12, 1.0,
                                    0.5, 2.0, 1.0));
}

TEST_CASE("propagation sweep at frozen constants") {
  const auto cal = oracle::load_calibration();
  const auto g = GridSpec::square(-1.0, 1.0, 257);
  const Cube q{0.0, 0.0, 0.45};
  const Cube k_set{0.3, 0.3, 0.1};
  const Cube omega{0.0, 0.0, 1.0};
  const double eps = 1e-6;
  int pass = 0, pass_derived = 0;
  for (unsigned seed = 0; seed < 100; ++seed) {
    auto h = random_harmonic(seed, 6, g);
    const auto mask = random_cell_mask(seed + 7, g, q, 0.05);
    // rescale so that |u| <= eps on E
    double sup_e = 0.0;
    for (int j = 0; j < g.ny; ++j)
      for (int i = 0; i < g.nx; ++i)
        if (mask[g.idx(i, j)])
          sup_e = std::max(sup_e, std::abs(h.field.at(i, j)));
    if (sup_e == 0.0) continue;
    for (double& v : h.field.values()) v *= eps / sup_e;
    const double nd = doubling_cube(h.field, q, 3).value;
    const auto r = propagation_constant(h.field, mask, k_set, omega, eps,
                                        cal.prop_c0, cal.prop_alpha,
                                        cal.remez_c, nd, cal.invdouble_a1);
    if (r.pass) ++pass;
    if (r.pass_derived) ++pass_derived;
    CHECK(r.alpha_derived > 0.0);
    CHECK(r.alpha_derived < 1.0);
  }
  CHECK(pass == 100);
  CHECK(pass_derived == 100);
}

TEST_CASE("derived alpha is consistent with the calibrated alpha") {
  const auto cal = oracle::load_calibration();
  const auto g = GridSpec::square(-1.0, 1.0, 257);
  const Cube q{0.0, 0.0, 0.45};
  const auto u = random_harmonic(11, 6, g);
  const auto mask = random_cell_mask(12, g, q, 0.05);
  double sup_e = 0.0;
  for (int j = 0; j < g.ny; ++j)
    for (int i = 0; i < g.nx; ++i)
      if (mask[g.idx(i, j)]) sup_e = std::max(sup_e, std::abs(u.field.at(i, j)));
  auto v = u.field;
  for (double& x : v.values()) x *= 1e-6 / sup_e;
  const double nd = doubling_cube(v, q, 3).value;
  const auto r = propagation_constant(v, mask, {0.3, 0.3, 0.1}, {0.0, 0.0, 1.0},
                                      1e-6, cal.prop_c0, cal.prop_alpha,
                                      cal.remez_c, nd, cal.invdouble_a1);
  // the calibrated alpha is frozen from this same reduction on the
  // calibration family, so the two agree within the 30% band
  CHECK(std::abs(r.alpha_derived - cal.prop_alpha) <= 0.3 * cal.prop_alpha);
}

TEST_CASE("base partition") {
  const auto g = GridSpec::square(-1.0, 1.0, 257);
  const auto c = ScalarField::sample(g, [](double, double) { return 3.0; });
  const auto rc = base_partition_check(c, {0.0, 0.0, 0.4}, 4, 1.0);
  CHECK(rc.b == doctest::Approx(1.0));
  CHECK(rc.m == doctest::Approx(1.0));
  CHECK(rc.pass);

  // u = x on the square, K = 4: subcolumns reach at least half the sup
  const auto lx = ScalarField::sample(g, [](double x, double) { return x + 2.0; });
  const auto rl = base_partition_check(lx, {0.0, 0.0, 0.5}, 4, 3.0);
  CHECK(rl.pass);
  CHECK(rl.b >= 0.5);
  CHECK(rl.m > 0.0);

  // low-doubling family passes at N0 = 3
  const auto eye = CoefficientMatrixField::identity(g);
  const auto dom = GridDomain::full_interior(g);
  int pass = 0, used = 0;
  for (unsigned seed = 0; seed < 50; ++seed) {
    const auto u = random_solution(seed, dom, eye);
    try {
      if (base_partition_check(u, {0.0, 0.0, 0.3}, 4, 3.0).pass) ++pass;
      ++used;
    } catch (const std::exception&) {
      // doubling above the base threshold: precondition correctly enforced
    }
  }
  CHECK(used > 0);
  CHECK(pass == used);
}

TEST_CASE("induction engine closes the recursion") {
  const auto cert = induction_engine({0.5, 1.0, 1.0, 1.0, 0});
  CHECK(cert.verified);
  CHECK(cert.beta > 0.0);
  CHECK(cert.beta < std::log(2.0));  // s e^beta < 1 is necessary
  CHECK(cert.c >= 1.0);
  REQUIRE(!cert.trace.empty());
  CHECK(cert.trace.front().k == cert.k0);
  for (const auto& t : cert.trace) {
    CHECK(t.ok);
    CHECK(t.lhs <= 1.0 + 1e-15);
  }
  // trace is monotone in k
  for (std::size_t i = 1; i < cert.trace.size(); ++i)
    CHECK(cert.trace[i].lhs <= cert.trace[i - 1].lhs + 1e-15);
  CHECK(replay_certificate(cert));

  // tampered certificate fails replay
  auto bad = cert;
  bad.trace[0].lhs += 1e-6;
  CHECK(!replay_certificate(bad));

  CHECK_THROWS(induction_engine({1.0, 1.0, 1.0, 1.0, 0}));   // s >= 1
  CHECK_THROWS(induction_engine({0.5, -1.0, 1.0, 1.0, 0}));  // a0 <= 0
}

TEST_CASE("beta is monotone nonincreasing in s") {
  double prev = 1e300;
  for (double s : {0.3, 0.5, 0.7, 0.9, 0.984375}) {
    const auto cert = induction_engine({s, 1.0, 1.0, 1.0, 0});
    CHECK(cert.verified);
    CHECK(cert.beta > 0.0);
    CHECK(cert.beta <= prev + 1e-12);
    prev = cert.beta;
  }
  // J declared instead of s
  const auto cert8 = induction_engine({0.0, 1.0, 1.0, 1.0, 8});
  CHECK(cert8.s == doctest::Approx(63.0 / 64.0));
  CHECK(cert8.beta > 0.0);
}

TEST_CASE("beta shrinks as a0 k0 coupling grows") {
  std::vector<double> betas;
  for (double a0 : {0.5, 1.0, 2.0, 4.0}) {
    const auto cert = induction_engine({0.75, a0, 1.0, 1.0, 0});
    CHECK(cert.verified);
    betas.push_back(cert.beta * a0);  // the product is what the closure fixes
  }
  const double lo = *std::min_element(betas.begin(), betas.end());
  const double hi = *std::max_element(betas.begin(), betas.end());
  CHECK(hi / lo <= 1.5);
}

TEST_CASE("recursion oracle") {
  const auto table = recursion_oracle(20, 60, 1.0);
  CHECK(table.envelope_holds);
  CHECK(table.c_prime > 0.0);
  // boundary rows
  for (int j = 4; j <= 60; ++j)
    CHECK(table.table[0][j] == doctest::Approx(std::exp(double(-j))).epsilon(1e-12));
  for (int j = 0; j < 4; ++j) CHECK(table.table[5][j] == 1.0);
  // one recursion step: m(2,4) = m(1,6) + m(2,3)/4 = e^-6 + 1/4
  CHECK(table.table[1][4] ==
        doctest::Approx(std::exp(-6.0) + 0.25).epsilon(1e-12));
  // spot-check the worst-case table against a plain recursive oracle
  for (int k : {2, 3})
    for (int j : {5, 8, 11})
      CHECK(table.table[k - 1][j] ==
            doctest::Approx(oracle::recursion_m(k, j, 1.0)).epsilon(1e-12));
  // envelope
  for (int k = 1; k <= 20; ++k)
    for (int j = 0; j <= 60; ++j)
      CHECK(table.table[k - 1][j] <= table.c_prime * std::exp(double(-j)) * (1 + 1e-12));
}

TEST_SUITE_END();
