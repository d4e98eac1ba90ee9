#include "uclab/solution_family.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

namespace uclab {
namespace {

HarmonicSample build_harmonic(unsigned seed, int max_degree, GridSpec grid,
                              bool vanishing) {
  if (max_degree < 1)
    throw std::invalid_argument("random_harmonic: max_degree >= 1");
  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> unif(-1.0, 1.0);
  HarmonicSample out;
  out.cos_coeffs.resize(max_degree + 1);
  out.sin_coeffs.resize(max_degree);
  for (double& c : out.cos_coeffs) c = unif(rng);
  for (double& c : out.sin_coeffs) c = unif(rng);
  if (vanishing) out.cos_coeffs[0] = 0.0;

  const auto ac = out.cos_coeffs;
  const auto as = out.sin_coeffs;
  out.analytic = [ac, as](double x, double y) {
    const double r = std::hypot(x, y);
    const double th = std::atan2(y, x);
    double sum = ac[0];
    double rk = 1.0;
    for (std::size_t k = 1; k < ac.size(); ++k) {
      rk *= r;
      sum += rk * (ac[k] * std::cos(double(k) * th) +
                   as[k - 1] * std::sin(double(k) * th));
    }
    return sum;
  };
  out.field = ScalarField::sample(grid, out.analytic);
  return out;
}

}  // namespace

HarmonicSample random_harmonic(unsigned seed, int max_degree, GridSpec grid) {
  return build_harmonic(seed, max_degree, grid, false);
}

HarmonicSample random_harmonic_vanishing(unsigned seed, int max_degree,
                                         GridSpec grid) {
  return build_harmonic(seed, max_degree, grid, true);
}

ScalarField random_solution(unsigned seed, const GridDomain& domain,
                            const CoefficientMatrixField& a) {
  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> amp(-1.0, 1.0);
  std::uniform_real_distribution<double> phase(0.0, 2.0 * M_PI);
  std::uniform_int_distribution<int> freq(1, 3);
  struct Wave {
    double c, p, q, phi;
  };
  std::vector<Wave> waves(6);
  for (auto& w : waves)
    w = {amp(rng), double(freq(rng)), double(freq(rng)), phase(rng)};
  Field2 g = [waves](double x, double y) {
    double s = 0.0;
    for (const auto& w : waves) s += w.c * std::cos(w.p * x + w.q * y + w.phi);
    return s;
  };
  return solve_dirichlet(domain, a, g);
}

GridDomain random_masked_domain(unsigned seed, GridSpec spec) {
  std::mt19937 rng(seed);
  std::uniform_int_distribution<int> step(0, 3);
  std::vector<std::uint8_t> mask(spec.size(), 0);
  int i = spec.nx / 2, j = spec.ny / 2;
  const std::size_t target = spec.size() / 3;
  std::size_t marked = 0;
  const int di[4] = {1, -1, 0, 0}, dj[4] = {0, 0, 1, -1};
  for (std::size_t it = 0; it < spec.size() * 40 && marked < target; ++it) {
    if (i > 0 && i + 1 < spec.nx && j > 0 && j + 1 < spec.ny &&
        !mask[spec.idx(i, j)]) {
      mask[spec.idx(i, j)] = 1;
      ++marked;
    }
    const int d = step(rng);
    i = std::clamp(i + di[d], 1, spec.nx - 2);
    j = std::clamp(j + dj[d], 1, spec.ny - 2);
  }
  GridDomain dom(spec, std::move(mask));
  // keep only the component through the largest piece for connectivity
  if (dom.component_count() > 1) {
    std::vector<std::size_t> counts(dom.component_count(), 0);
    for (const auto& [ci, cj] : dom.unknown_nodes())
      ++counts[dom.components()[dom.unknown_index()[spec.idx(ci, cj)]]];
    int best = 0;
    for (int c = 1; c < dom.component_count(); ++c)
      if (counts[c] > counts[best]) best = c;
    return dom.component_domain(best);
  }
  return dom;
}

std::vector<std::uint8_t> random_cell_mask(unsigned seed, const GridSpec& spec,
                                           const Cube& q, double fraction) {
  if (!(fraction > 0.0 && fraction <= 1.0))
    throw std::invalid_argument("random_cell_mask: fraction in (0, 1]");
  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  std::vector<std::uint8_t> mask(spec.size(), 0);
  bool any = false;
  for (int j = 0; j < spec.ny; ++j)
    for (int i = 0; i < spec.nx; ++i)
      if (q.contains(spec.x(i), spec.y(j)) && unif(rng) < fraction) {
        mask[spec.idx(i, j)] = 1;
        any = true;
      }
  if (!any) {
    // guarantee nonemptiness for tiny fractions
    const int i = std::clamp(int((q.cx - spec.x0) / spec.h), 0, spec.nx - 1);
    const int j = std::clamp(int((q.cy - spec.y0) / spec.h), 0, spec.ny - 1);
    mask[spec.idx(i, j)] = 1;
  }
  return mask;
}

}  // namespace uclab
