#include <CLI11.hpp>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <random>

#include "uclab/bessel.hpp"
#include "uclab/discrete_laplace.hpp"
#include "uclab/growth_analysis.hpp"
#include "uclab/io.hpp"
#include "uclab/model_spectra.hpp"
#include "uclab/nodal_geometry.hpp"
#include "uclab/propagation.hpp"
#include "uclab/remez.hpp"
#include "uclab/solution_family.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr int kExitPass = 0;
constexpr int kExitAssert = 1;
constexpr int kExitConfig = 2;

struct Output {
  fs::path dir;

  explicit Output(const std::string& d) : dir(d) { fs::create_directories(dir); }
  void report(json j) const {
    j["schema_version"] = 1;
    std::ofstream f(dir / "report.json");
    f << j.dump(2) << '\n';
  }
};

json load_calibration(const std::string& path) {
  std::ifstream f(path);
  if (!f)
    throw std::runtime_error("calibration file not found: " + path +
                             " (run `uclab calibrate` first)");
  json j;
  f >> j;
  return j;
}

uclab::Field2 homogeneous_harmonic(int n) {
  return [n](double x, double y) {
    const double r = std::hypot(x, y);
    return std::pow(r, n) * std::cos(n * std::atan2(y, x));
  };
}

std::vector<std::pair<int, int>> square_modes_sorted(int count) {
  std::vector<std::tuple<double, int, int>> modes;
  for (int p = 1; p <= 12; ++p)
    for (int q = 1; q <= 12; ++q)
      modes.emplace_back(M_PI * M_PI * (p * p + q * q), p, q);
  std::sort(modes.begin(), modes.end());
  std::vector<std::pair<int, int>> out;
  for (int k = 0; k < count && k < int(modes.size()); ++k)
    out.emplace_back(std::get<1>(modes[k]), std::get<2>(modes[k]));
  return out;
}

std::vector<std::pair<int, int>> disk_modes_sorted(int count) {
  std::vector<std::tuple<double, int, int>> modes;  // (j_{n,k}, n, k)
  for (int n = 0; n <= 12; ++n)
    for (int k = 1; k <= 8; ++k)
      modes.emplace_back(uclab::bessel_zero(double(n), k), n, k);
  std::sort(modes.begin(), modes.end());
  std::vector<std::pair<int, int>> out;
  for (int k = 0; k < count && k < int(modes.size()); ++k)
    out.emplace_back(std::get<1>(modes[k]), std::get<2>(modes[k]));
  return out;
}

// ---------------------------------------------------------------- spectra

int cmd_spectra(const std::string& domain, int count, const Output& out) {
  uclab::CsvWriter csv({"index", "lambda", "residual"});
  bool pass = true;
  json modes = json::array();
  if (domain == "disk") {
    const uclab::GridSpec grid = uclab::GridSpec::square(-1.0, 1.0, 257);
    int idx = 0;
    for (auto [n, k] : disk_modes_sorted(count)) {
      auto phi = uclab::disk_eigenfunction(n, k, 1.0, 0.0, grid);
      const double res = uclab::eigen_residual(phi);
      csv.add_row(std::vector<double>{double(++idx), phi.lambda, res});
      modes.push_back({{"n", n}, {"k", k}, {"lambda", phi.lambda}, {"residual", res}});
      pass = pass && res < 1e-2;
    }
  } else if (domain == "torus") {
    const uclab::GridSpec grid = uclab::GridSpec::square(-M_PI, M_PI, 257);
    for (int n = 1; n <= count; ++n) {
      auto phi = uclab::torus_eigenfunction({n, std::max(1, n / 2)}, grid);
      const double res = uclab::eigen_residual(phi);
      csv.add_row(std::vector<double>{double(n), phi.lambda, res});
      modes.push_back({{"lambda", phi.lambda}, {"residual", res}});
      pass = pass && res < 1e-2;
    }
  } else if (domain == "circle") {
    for (int n = 1; n <= count; ++n) {
      auto phi = uclab::torus_eigenfunction({n}, {}, 4096);
      const double res = uclab::eigen_residual(phi);
      csv.add_row(std::vector<double>{double(n), phi.lambda, res});
      modes.push_back({{"lambda", phi.lambda}, {"residual", res}});
      pass = pass && res < 1e-2;
    }
  } else {
    throw CLI::ValidationError("spectra", "unknown domain " + domain);
  }
  csv.save((out.dir / "spectra.csv").string());
  out.report({{"subcommand", "spectra"},
              {"config", {{"domain", domain}, {"count", count}}},
              {"results", {{"modes", modes}}},
              {"pass", pass}});
  return pass ? kExitPass : kExitAssert;
}

// -------------------------------------------------------------------- eig

int cmd_eig(const std::string& domain, int grid_n, int k, const Output& out) {
  uclab::GridDomain dom = [&] {
    if (domain == "square")
      return uclab::GridDomain::full_interior(
          uclab::GridSpec::square(0.0, 1.0, grid_n));
    if (domain == "disk")
      return uclab::GridDomain::disk(uclab::GridSpec::square(-1.0, 1.0, grid_n),
                                     {0.0, 0.0, 1.0});
    throw CLI::ValidationError("eig", "unknown domain " + domain);
  }();
  auto pairs = uclab::eigensolve(uclab::assemble_dirichlet(dom), k);
  uclab::CsvWriter csv({"index", "lambda", "residual"});
  json lambdas = json::array();
  bool pass = true;
  for (int i = 0; i < k; ++i) {
    csv.add_row(std::vector<double>{double(i + 1), pairs[i].lambda,
                                    pairs[i].residual});
    lambdas.push_back(pairs[i].lambda);
    pass = pass && pairs[i].residual < 1e-6 * std::max(1.0, pairs[i].lambda);
  }
  csv.save((out.dir / "eig.csv").string());
  out.report({{"subcommand", "eig"},
              {"config", {{"domain", domain}, {"grid", grid_n}, {"k", k}}},
              {"results", {{"lambda", lambdas}}},
              {"pass", pass}});
  return pass ? kExitPass : kExitAssert;
}

// -------------------------------------------------------------- frequency

int cmd_frequency(int degree, unsigned seed, const Output& out) {
  uclab::Field2 u;
  if (degree > 0) {
    u = homogeneous_harmonic(degree);
  } else {
    u = uclab::random_harmonic(seed, 6, uclab::GridSpec::square(-1, 1, 65))
            .analytic;
  }
  std::vector<double> radii;
  for (int i = 0; i <= 15; ++i) radii.push_back(0.1 + 0.02 * i);
  auto profile = uclab::frequency_profile_analytic(u, {0.0, 0.0}, radii);
  uclab::CsvWriter csv({"r", "H", "I", "N"});
  for (std::size_t i = 0; i < profile.size(); ++i)
    csv.add_row(std::vector<double>{profile.radii[i], profile.H[i],
                                    profile.I[i], profile.N[i]});
  csv.save((out.dir / "frequency.csv").string());
  const auto mono = uclab::check_frequency_monotone(profile, 0.0);
  const bool pass = mono.pass && !profile.truncated;
  out.report({{"subcommand", "frequency"},
              {"config", {{"degree", degree}, {"seed", seed}}},
              {"results",
               {{"monotone", mono.pass},
                {"worst_violation", mono.worst_violation},
                {"N_first", profile.N.front()},
                {"N_last", profile.N.back()}}},
              {"pass", pass}});
  return pass ? kExitPass : kExitAssert;
}

// --------------------------------------------------------------- doubling

int cmd_doubling(int degree, unsigned seed, const Output& out) {
  const uclab::GridSpec grid = uclab::GridSpec::square(-1.0, 1.0, 513);
  uclab::ScalarField field;
  double expected = -1.0;
  if (degree > 0) {
    field = uclab::ScalarField::sample(grid, homogeneous_harmonic(degree));
    expected = degree * std::log(2.0);
  } else {
    field = uclab::random_harmonic(seed, 6, grid).field;
  }
  const auto ball = uclab::doubling_ball(field, {0.0, 0.0, 0.25});
  const auto cube = uclab::doubling_cube(field, {0.0, 0.0, 0.25}, 3, 64, seed);
  bool pass = cube.value >= 0.0 && ball.value >= -1e-9;
  if (expected >= 0.0) pass = pass && std::abs(ball.value - expected) < 0.05;
  out.report({{"subcommand", "doubling"},
              {"config", {{"degree", degree}, {"seed", seed}}},
              {"results",
               {{"ball", ball.value},
                {"cube", cube.value},
                {"expected", expected}}},
              {"pass", pass}});
  return pass ? kExitPass : kExitAssert;
}

// ----------------------------------------------------------- three-sphere

int cmd_three_sphere(int trials, unsigned seed, const Output& out) {
  const uclab::GridSpec grid = uclab::GridSpec::square(-1.0, 1.0, 513);
  const auto eye = uclab::CoefficientMatrixField::identity(grid);
  int failures = 0;
  double worst = 0.0;
  uclab::CsvWriter csv({"trial", "defect", "tol", "pass"});
  for (int t = 0; t < trials; ++t) {
    auto h = uclab::random_harmonic(seed + t, 6, grid);
    auto res = uclab::three_sphere_check(h.field, eye, {0.0, 0.0}, 0.2);
    worst = std::max(worst, res.defect - res.tol);
    if (!res.pass) ++failures;
    csv.add_row(std::vector<double>{double(t), res.defect, res.tol,
                                    res.pass ? 1.0 : 0.0});
  }
  csv.save((out.dir / "three_sphere.csv").string());
  const bool pass = failures == 0;
  out.report({{"subcommand", "three-sphere"},
              {"config", {{"trials", trials}, {"seed", seed}}},
              {"results", {{"failures", failures}, {"worst_excess", worst}}},
              {"pass", pass}});
  return pass ? kExitPass : kExitAssert;
}

// ------------------------------------------------------------------ nodal

int cmd_nodal(const std::string& domain, int modes, const Output& out) {
  uclab::CsvWriter csv({"index", "lambda", "count", "bound_ok"});
  bool pass = true;
  if (domain == "square") {
    const uclab::GridSpec grid = uclab::GridSpec::square(0.0, 1.0, 257);
    int idx = 0;
    for (auto [p, q] : square_modes_sorted(modes)) {
      ++idx;
      auto u = uclab::ScalarField::sample(grid, [p = p, q = q](double x, double y) {
        return std::sin(p * M_PI * x) * std::sin(q * M_PI * y);
      });
      const int count = uclab::count_nodal_domains(u);
      const bool ok = count <= idx;
      pass = pass && ok;
      csv.add_row(std::vector<double>{double(idx),
                                      M_PI * M_PI * double(p * p + q * q),
                                      double(count), ok ? 1.0 : 0.0});
    }
  } else if (domain == "disk") {
    const uclab::GridSpec grid = uclab::GridSpec::square(-1.0, 1.0, 257);
    // each n >= 1 eigenvalue is double; Courant compares against the last
    // spectral slot of the eigenspace
    int slot = 0, listed = 0;
    for (auto [n, k] : disk_modes_sorted(modes)) {
      slot += n == 0 ? 1 : 2;
      if (++listed > modes) break;
      auto phi = uclab::disk_eigenfunction(n, k, 1.0, 0.3, grid);
      const int count = uclab::count_nodal_domains(phi.field);
      const bool ok = count <= slot;
      pass = pass && ok;
      csv.add_row(std::vector<double>{double(slot), phi.lambda, double(count),
                                      ok ? 1.0 : 0.0});
    }
  } else {
    throw CLI::ValidationError("nodal", "unknown domain " + domain);
  }
  csv.save((out.dir / "courant.csv").string());
  out.report({{"subcommand", "nodal"},
              {"config", {{"domain", domain}, {"modes", modes}}},
              {"results", json::object()},
              {"pass", pass}});
  return pass ? kExitPass : kExitAssert;
}

// -------------------------------------------------------------------- yau

int cmd_yau(int n_max, const Output& out) {
  const uclab::GridSpec grid = uclab::GridSpec::square(-M_PI, M_PI, 513);
  std::vector<uclab::ModelEigenfunction> family;
  for (int n = 1; n <= n_max; ++n) {
    family.push_back(uclab::torus_eigenfunction({n, std::max(1, n - 1)}, grid));
    family.push_back(uclab::torus_eigenfunction({n, 1}, grid));
  }
  const auto fit = uclab::yau_scaling_fit(family);
  uclab::CsvWriter csv({"lambda", "length"});
  for (std::size_t i = 0; i < fit.lambdas.size(); ++i)
    csv.add_row(std::vector<double>{fit.lambdas[i], fit.lengths[i]});
  csv.save((out.dir / "yau.csv").string());
  const auto z = uclab::extract_zero_set(family.back().field);
  uclab::save_nodal_svg(z, -M_PI, -M_PI, M_PI, M_PI,
                        (out.dir / "nodal.svg").string());
  const bool pass = fit.slope > 0.4 && fit.slope < 0.6;
  out.report({{"subcommand", "yau"},
              {"config", {{"n_max", n_max}}},
              {"results",
               {{"slope", fit.slope}, {"c1", fit.c1}, {"c2", fit.c2}}},
              {"pass", pass}});
  return pass ? kExitPass : kExitAssert;
}

// ------------------------------------------------------------------ remez

uclab::RealPolynomial random_poly(std::mt19937& rng, int n_max) {
  std::uniform_int_distribution<int> deg(1, n_max);
  std::uniform_real_distribution<double> coef(-1.0, 1.0);
  uclab::RealPolynomial p;
  const int n = deg(rng);
  for (int k = 0; k <= n; ++k) p.coeffs.push_back(coef(rng));
  if (p.coeffs.back() == 0.0) p.coeffs.back() = 0.5;
  return p;
}

uclab::IntervalUnion random_subset(std::mt19937& rng, double lo, double hi,
                                   double min_measure) {
  std::uniform_real_distribution<double> unif(lo, hi);
  for (;;) {
    std::vector<std::pair<double, double>> iv;
    std::uniform_int_distribution<int> parts(1, 3);
    const int n = parts(rng);
    for (int k = 0; k < n; ++k) {
      double a = unif(rng), b = unif(rng);
      iv.emplace_back(std::min(a, b), std::max(a, b));
    }
    uclab::IntervalUnion u(std::move(iv));
    if (u.measure() >= min_measure) return u;
  }
}

int cmd_remez(int n_max, int trials, unsigned seed, const Output& out) {
  std::mt19937 rng(seed);
  int failures = 0;
  uclab::CsvWriter csv({"trial", "n", "ratio", "bound", "pass"});
  for (int t = 0; t < trials; ++t) {
    const auto p = random_poly(rng, n_max);
    const auto e = random_subset(rng, -1.0, 1.0, 0.2);
    const auto res = uclab::verify_remez(p, e, {-1.0, 1.0});
    if (!res.pass) ++failures;
    csv.add_row(std::vector<double>{double(t), double(p.degree()), res.ratio,
                                    res.bound, res.pass ? 1.0 : 0.0});
  }
  csv.save((out.dir / "remez.csv").string());
  // sharp equality case
  const auto t8 = uclab::chebyshev(8);
  const double sharp = uclab::max_abs_on_interval(t8, -1.0, 1.1);
  const double sharp_err =
      std::abs(sharp - uclab::sharp_remez_bound(8, 0.1)) / sharp;
  const bool pass = failures == 0 && sharp_err < 1e-9;
  out.report(
      {{"subcommand", "remez"},
       {"config", {{"n_max", n_max}, {"trials", trials}, {"seed", seed}}},
       {"results", {{"failures", failures}, {"sharp_rel_err", sharp_err}}},
       {"pass", pass}});
  return pass ? kExitPass : kExitAssert;
}

// ------------------------------------------------------------------ polya

int cmd_polya(int trials, double a, unsigned seed, const Output& out) {
  std::mt19937 rng(seed);
  std::uniform_int_distribution<int> deg(1, 6);
  std::uniform_real_distribution<double> coef(-1.0, 1.0);
  int failures = 0;
  uclab::CsvWriter csv({"trial", "n", "inner", "bound", "pass"});
  for (int t = 0; t < trials; ++t) {
    uclab::ComplexMonicPolynomial p;
    const int n = deg(rng);
    for (int k = 0; k < n; ++k)
      p.coeffs.push_back({coef(rng), coef(rng)});
    const auto res = uclab::polya_check(p, a, 1024);
    const auto cart = uclab::cartan_area_check(p, a, 1024);
    if (!res.pass || !cart.pass) ++failures;
    csv.add_row(std::vector<double>{double(t), double(n), res.inner, res.bound,
                                    res.pass ? 1.0 : 0.0});
  }
  csv.save((out.dir / "polya.csv").string());
  const bool pass = failures == 0;
  out.report({{"subcommand", "polya"},
              {"config", {{"trials", trials}, {"a", a}, {"seed", seed}}},
              {"results", {{"failures", failures}}},
              {"pass", pass}});
  return pass ? kExitPass : kExitAssert;
}

// --------------------------------------------------------------- sublevel

int cmd_sublevel(unsigned seed, const Output& out) {
  const uclab::GridSpec grid = uclab::GridSpec::square(-1.0, 1.0, 513);
  auto h = uclab::random_harmonic_vanishing(seed, 4, grid);
  const uclab::Cube q{0.0, 0.0, 0.25};
  const double n = std::max(uclab::doubling_cube(h.field, q, 3).value, 0.1);
  std::vector<double> a_grid;
  for (int i = 1; i <= 24; ++i) a_grid.push_back(0.25 * i);
  const auto fit = uclab::decay_fit(h.field, q, a_grid, n);
  uclab::CsvWriter csv({"a", "log_m"});
  for (std::size_t i = 0; i < fit.a_used.size(); ++i)
    csv.add_row(std::vector<double>{fit.a_used[i], fit.log_m[i]});
  csv.save((out.dir / "sublevel.csv").string());
  const bool pass = fit.beta_raw > 0.0 && fit.r_squared >= 0.9;
  out.report({{"subcommand", "sublevel"},
              {"config", {{"seed", seed}}},
              {"results",
               {{"beta_raw", fit.beta_raw},
                {"beta_scaled", fit.beta_scaled},
                {"r_squared", fit.r_squared},
                {"doubling", n}}},
              {"pass", pass}});
  return pass ? kExitPass : kExitAssert;
}

// -------------------------------------------------------------- propagate

int cmd_propagate(const std::string& calib_path, int trials, unsigned seed,
                  const Output& out) {
  const json calib = load_calibration(calib_path);
  const double remez_c = calib.at("remez_c");
  const double c0 = calib.at("prop_c0");
  const double alpha = calib.at("prop_alpha");
  const uclab::GridSpec grid = uclab::GridSpec::square(-1.0, 1.0, 257);
  const uclab::Cube q{0.0, 0.0, 0.45};
  const uclab::Cube k_set{0.3, 0.3, 0.1};
  int failures = 0;
  uclab::CsvWriter csv({"trial", "sup_q", "rhs", "remez_pass", "prop_pass"});
  for (int t = 0; t < trials; ++t) {
    auto h = uclab::random_harmonic(seed + 1000 + t, 6, grid);
    const auto mask = uclab::random_cell_mask(seed + t, grid, q, 0.05);
    const double n = uclab::doubling_cube(h.field, q, 2).value;
    const auto rl = uclab::remez_solutions_check(h.field, mask, q, n, remez_c);
    double sup_e = 0.0;
    for (std::size_t kk = 0; kk < mask.size(); ++kk)
      if (mask[kk]) sup_e = std::max(sup_e, std::abs(h.field.values()[kk]));
    const double eps = std::max(sup_e, 1e-12);
    const auto pc = uclab::propagation_constant(h.field, mask, k_set, q, eps,
                                                c0, alpha, remez_c, n);
    if (!rl.pass || !pc.pass) ++failures;
    csv.add_row(std::vector<double>{double(t), rl.sup_q, rl.rhs,
                                    rl.pass ? 1.0 : 0.0, pc.pass ? 1.0 : 0.0});
  }
  csv.save((out.dir / "propagate.csv").string());
  const bool pass = failures == 0;
  out.report({{"subcommand", "propagate"},
              {"config",
               {{"trials", trials}, {"seed", seed}, {"calibration", calib_path}}},
              {"results", {{"failures", failures}}},
              {"pass", pass}});
  return pass ? kExitPass : kExitAssert;
}

// ----------------------------------------------------------------- induct

int cmd_induct(double s, double a0, int j, const Output& out) {
  uclab::RecursionParams params;
  params.s = s;
  params.a0 = a0;
  params.j = j;
  const auto cert = uclab::induction_engine(params);
  const bool replay = uclab::replay_certificate(cert);
  json trace = json::array();
  for (const auto& e : cert.trace)
    trace.push_back({{"k", e.k}, {"lhs", e.lhs}, {"ok", e.ok}});
  const bool pass = cert.beta > 0.0 && cert.verified && replay;
  out.report({{"subcommand", "induct"},
              {"config", {{"s", cert.s}, {"a0", a0}, {"J", j}}},
              {"results",
               {{"beta", cert.beta},
                {"C", cert.c},
                {"k0", cert.k0},
                {"replay", replay},
                {"trace", trace}}},
              {"pass", pass}});
  return pass ? kExitPass : kExitAssert;
}

// -------------------------------------------------------------- calibrate

int cmd_calibrate(const std::string& path, unsigned seed) {
  const uclab::GridSpec grid = uclab::GridSpec::square(-1.0, 1.0, 257);
  const uclab::Cube q{0.0, 0.0, 0.45};
  const uclab::Cube k_set{0.3, 0.3, 0.1};
  const int trials = 40;

  // remez_c: smallest C passing the calibration family, x1.5 margin
  double remez_c = 1.0;
  std::vector<uclab::HarmonicSample> fields;
  std::vector<std::vector<std::uint8_t>> masks;
  std::vector<double> doublings;
  for (int t = 0; t < trials; ++t) {
    fields.push_back(uclab::random_harmonic(seed + t, 6, grid));
    masks.push_back(uclab::random_cell_mask(seed + 500 + t, grid, q, 0.05));
    doublings.push_back(uclab::doubling_cube(fields.back().field, q, 2).value);
  }
  for (int t = 0; t < trials; ++t) {
    double lo = 1.0, hi = 64.0;
    for (int it = 0; it < 40; ++it) {
      const double mid = 0.5 * (lo + hi);
      const auto res = uclab::remez_solutions_check(fields[t].field, masks[t],
                                                    q, doublings[t], mid);
      (res.pass ? hi : lo) = mid;
    }
    remez_c = std::max(remez_c, hi);
  }
  remez_c *= 1.5;

  // propagation alpha sanity floor: empirical per-trial alpha, plus the
  // node-count |Q|/|E| ratios reused below for the eq:RL-derived alpha
  double alpha_min = 1.0;
  std::vector<double> ratios;
  for (int t = 0; t < trials; ++t) {
    double sup_e = 0.0, sup_o = 0.0;
    long total_q = 0, in_e = 0;
    const auto& f = fields[t].field;
    for (std::size_t kk = 0; kk < masks[t].size(); ++kk) {
      const int i = int(kk % grid.nx), jj = int(kk / grid.nx);
      if (!q.contains(grid.x(i), grid.y(jj))) continue;
      ++total_q;
      sup_o = std::max(sup_o, std::abs(f.values()[kk]));
      if (masks[t][kk]) {
        ++in_e;
        sup_e = std::max(sup_e, std::abs(f.values()[kk]));
      }
    }
    if (in_e > 0) ratios.push_back(double(total_q) / double(in_e));
    const double max_k = f.max_abs_cube(k_set);
    if (sup_e > 0.0 && sup_e < sup_o && max_k < sup_o) {
      const double alpha_t =
          std::log(sup_o / max_k) / std::log(sup_o / sup_e);
      alpha_min = std::min(alpha_min, alpha_t);
    }
  }
  const double prop_c0 = 1.5;

  // Caccioppoli constant over a Dirichlet solution family
  const auto dom = uclab::GridDomain::full_interior(grid);
  const auto eye = uclab::CoefficientMatrixField::identity(grid);
  double cacc = 0.0;
  for (int t = 0; t < 10; ++t) {
    const auto u = uclab::random_solution(seed + 900 + t, dom, eye);
    const auto res =
        uclab::caccioppoli_check(u, {0.0, 0.0, 0.3}, 0.6, 1e300);
    cacc = std::max(cacc, res.ratio);
  }
  cacc *= 1.5;

  // chain constant
  double chain_c = 1.0;
  for (int t = 0; t < trials; ++t) {
    const auto res = uclab::chain_propagation(
        fields[t].field, {-0.3, -0.3, 0.05}, k_set, {0.0, 0.0, 0.9});
    chain_c = std::max(chain_c, res.c_hat);
  }
  chain_c *= 1.5;

  // nodal growth factor K: smallest integer scale with log ratio >= 2 on
  // vanishing solutions
  int nodal_k = 3;
  for (; nodal_k <= 64; ++nodal_k) {
    bool ok = true;
    for (int t = 0; t < trials && ok; ++t) {
      const auto h = uclab::random_harmonic_vanishing(seed + 200 + t, 6, grid);
      ok = uclab::scaled_cube_log_ratio(h.field, {0.0, 0.0, 0.01},
                                        double(nodal_k)) >= 2.0;
    }
    if (ok) break;
  }

  // inverse doubling inequality: log(max_2Q/max_Q) >= a1 * N - a2
  double a1 = 1.0, a2 = 0.0;
  for (int t = 0; t < trials; ++t) {
    const auto rec = uclab::doubling_cube(fields[t].field, q, 3, 32, seed + t);
    const double direct =
        std::log(fields[t].field.max_abs_cube(q.scaled(2.0)) /
                 fields[t].field.max_abs_cube(q));
    if (rec.value > 1e-9) a1 = std::min(a1, direct / rec.value);
    a2 = std::max(a2, a1 * rec.value - direct);
  }
  a1 *= 0.9;

  // alpha frozen from the eq:RL reduction alpha = 1/(C1+1) at the family's
  // median mask geometry; the empirical alphas sit well above it, so the
  // assertion-tier bound stays comfortably valid (alpha_min is a sanity floor)
  std::sort(ratios.begin(), ratios.end());
  const double med_ratio = ratios.empty() ? 20.0 : ratios[ratios.size() / 2];
  const double c1_cal =
      remez_c * std::log(std::max(remez_c * med_ratio, 1.0 + 1e-12)) / a1;
  const double prop_alpha = std::min(1.0 / (c1_cal + 1.0), alpha_min);

  // smallest J with the subcube-halving property on the family
  int smallest_j = 0;
  for (int jc = 2; jc <= 8; ++jc) {
    bool ok = true;
    for (int t = 0; t < 10 && ok; ++t)
      ok = uclab::min_doubling_partition(fields[t].field, q, jc, 2, seed + t)
               .halved;
    if (ok) {
      smallest_j = jc;
      break;
    }
  }

  json calib = {{"version", 1},
                {"seed", seed},
                {"family",
                 "random_harmonic deg<=6 on [-1,1]^2 /257, Q half 0.45, "
                 "masks 5% nodes, 40 trials"},
                {"remez_c", remez_c},
                {"prop_c0", prop_c0},
                {"prop_alpha", prop_alpha},
                {"caccioppoli_c", cacc},
                {"chain_c", chain_c},
                {"nodal_k", nodal_k},
                {"invdouble_a1", a1},
                {"invdouble_a2", a2},
                {"smallest_j", smallest_j}};
  fs::create_directories(fs::path(path).parent_path());
  std::ofstream f(path);
  if (!f) throw std::runtime_error("calibrate: cannot write " + path);
  f << calib.dump(2) << '\n';
  std::cout << calib.dump(2) << '\n';
  return kExitPass;
}

// ----------------------------------------------------------------- report

int cmd_report(const std::vector<std::string>& dirs) {
  bool all_pass = true;
  std::cout << "subcommand,directory,pass\n";
  for (const auto& d : dirs) {
    std::ifstream f(fs::path(d) / "report.json");
    if (!f) throw std::runtime_error("report: missing report.json in " + d);
    json j;
    f >> j;
    const bool pass = j.value("pass", false);
    all_pass = all_pass && pass;
    std::cout << j.value("subcommand", "?") << ',' << d << ','
              << (pass ? "pass" : "FAIL") << '\n';
  }
  return all_pass ? kExitPass : kExitAssert;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"uc-lab: quantitative unique continuation experiments"};
  app.require_subcommand(1);

  std::string out_dir = "out";
  std::string config_path;
  std::string domain = "disk";
  std::string calib_path = "data/calibration.json";
  unsigned seed = 1;
  int count = 8, grid_n = 129, k = 6, modes = 20, degree = 0;
  int trials = 100, n_max = 8;
  double a = 1.0, s = 0.5, a0 = 1.0;
  int j_param = 0;
  std::vector<std::string> report_dirs;

  // JSON config file: values become defaults, flags still override
  for (int i = 1; i + 1 < argc; ++i)
    if (std::string(argv[i]) == "--config") config_path = argv[i + 1];
  if (!config_path.empty()) {
    std::ifstream cf(config_path);
    if (!cf) {
      std::cerr << "error: cannot read config " << config_path << '\n';
      return kExitConfig;
    }
    try {
      json cfg;
      cf >> cfg;
      out_dir = cfg.value("out", out_dir);
      domain = cfg.value("domain", domain);
      calib_path = cfg.value("calibration", calib_path);
      seed = cfg.value("seed", seed);
      count = cfg.value("count", count);
      grid_n = cfg.value("grid", grid_n);
      k = cfg.value("k", k);
      modes = cfg.value("modes", modes);
      degree = cfg.value("degree", degree);
      trials = cfg.value("trials", trials);
      n_max = cfg.value("n_max", n_max);
      a = cfg.value("a", a);
      s = cfg.value("s", s);
      a0 = cfg.value("a0", a0);
      j_param = cfg.value("J", j_param);
    } catch (const std::exception& e) {
      std::cerr << "error: malformed config: " << e.what() << '\n';
      return kExitConfig;
    }
  }

  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--config", config_path, "JSON config file");
    cmd->add_option("--out", out_dir, "output directory");
    cmd->add_option("--seed", seed, "rng seed");
  };

  auto* spectra = app.add_subcommand("spectra", "model eigenfunction residuals");
  spectra->add_option("--domain", domain);
  spectra->add_option("--count", count);
  add_common(spectra);

  auto* eig = app.add_subcommand("eig", "discrete Dirichlet eigenpairs");
  eig->add_option("--domain", domain);
  eig->add_option("--grid", grid_n);
  eig->add_option("--k", k);
  add_common(eig);

  auto* freq = app.add_subcommand("frequency", "frequency function profile");
  freq->add_option("--degree", degree);
  add_common(freq);

  auto* dbl = app.add_subcommand("doubling", "doubling indices");
  dbl->add_option("--degree", degree);
  add_common(dbl);

  auto* three = app.add_subcommand("three-sphere", "log-convexity trials");
  three->add_option("--trials", trials);
  add_common(three);

  auto* nodal = app.add_subcommand("nodal", "Courant nodal-domain table");
  nodal->add_option("--domain", domain);
  nodal->add_option("--modes", modes);
  add_common(nodal);

  auto* yau = app.add_subcommand("yau", "nodal length scaling fit");
  yau->add_option("--n-max", n_max);
  add_common(yau);

  auto* remez = app.add_subcommand("remez", "Remez inequality suite");
  remez->add_option("--n-max", n_max);
  remez->add_option("--trials", trials);
  add_common(remez);

  auto* polya = app.add_subcommand("polya", "Polya sublevel areas");
  polya->add_option("--trials", trials);
  polya->add_option("--a", a);
  add_common(polya);

  auto* sub = app.add_subcommand("sublevel", "sublevel decay fit");
  add_common(sub);

  auto* prop = app.add_subcommand("propagate", "propagation of smallness");
  prop->add_option("--trials", trials);
  prop->add_option("--calibration", calib_path);
  add_common(prop);

  auto* induct = app.add_subcommand("induct", "double-induction certificate");
  induct->add_option("--s", s);
  induct->add_option("--a0", a0);
  induct->add_option("--J", j_param);
  add_common(induct);

  auto* calibrate = app.add_subcommand("calibrate", "freeze constants");
  calibrate->add_option("--out-file", calib_path);
  calibrate->add_option("--seed", seed);

  auto* report = app.add_subcommand("report", "aggregate run reports");
  report->add_option("dirs", report_dirs);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);  // prints help/usage as appropriate
    return code == 0 ? kExitPass : kExitConfig;
  }

  try {
    if (spectra->parsed()) return cmd_spectra(domain, count, Output(out_dir));
    if (eig->parsed()) return cmd_eig(domain == "disk" ? "disk" : "square",
                                      grid_n, k, Output(out_dir));
    if (freq->parsed()) return cmd_frequency(degree, seed, Output(out_dir));
    if (dbl->parsed()) return cmd_doubling(degree, seed, Output(out_dir));
    if (three->parsed()) return cmd_three_sphere(trials, seed, Output(out_dir));
    if (nodal->parsed()) return cmd_nodal(domain, modes, Output(out_dir));
    if (yau->parsed()) return cmd_yau(n_max, Output(out_dir));
    if (remez->parsed()) return cmd_remez(n_max, trials, seed, Output(out_dir));
    if (polya->parsed()) return cmd_polya(trials, a, seed, Output(out_dir));
    if (sub->parsed()) return cmd_sublevel(seed, Output(out_dir));
    if (prop->parsed())
      return cmd_propagate(calib_path, trials, seed, Output(out_dir));
    if (induct->parsed()) return cmd_induct(s, a0, j_param, Output(out_dir));
    if (calibrate->parsed()) return cmd_calibrate(calib_path, seed);
    if (report->parsed()) return cmd_report(report_dirs);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitConfig;
  }
  return kExitConfig;
}
