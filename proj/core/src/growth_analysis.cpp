#include "uclab/growth_analysis.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

namespace uclab {
namespace {

using Eval = std::function<double(double, double)>;
using Grad = std::function<std::pair<double, double>(double, double)>;
using Coef = std::function<std::array<double, 3>(double, double)>;

double circle_h(const Eval& val, const Coef& acoef, Point c, double r,
                int ntheta) {
  double sum = 0.0;
  for (int t = 0; t < ntheta; ++t) {
    const double th = 2.0 * M_PI * t / ntheta;
    const double dx = std::cos(th), dy = std::sin(th);
    const double x = c.x + r * dx, y = c.y + r * dy;
    const auto a = acoef(x, y);
    const double mu = a[0] * dx * dx + 2 * a[1] * dx * dy + a[2] * dy * dy;
    const double v = val(x, y);
    sum += mu * v * v;
  }
  return sum * 2.0 * M_PI / ntheta;
}

double ball_i(const Grad& grad, const Coef& acoef, Point c, double r, int nr,
              int ntheta) {
  const double drho = r / nr;
  const double dth = 2.0 * M_PI / ntheta;
  double sum = 0.0;
  for (int m = 0; m < nr; ++m) {
    const double rho = (m + 0.5) * drho;
    for (int t = 0; t < ntheta; ++t) {
      const double th = dth * t;
      const double x = c.x + rho * std::cos(th), y = c.y + rho * std::sin(th);
      const auto [gx, gy] = grad(x, y);
      const auto a = acoef(x, y);
      sum += (a[0] * gx * gx + 2 * a[1] * gx * gy + a[2] * gy * gy) * rho;
    }
  }
  return sum * drho * dth / r;
}

RadialGrowthProfile build_profile(const Eval& val, const Eval& val_coarse,
                                  const Grad& grad, const Coef& acoef, Point c,
                                  const std::vector<double>& radii,
                                  const FrequencyOptions& opts) {
  RadialGrowthProfile p;
  p.center = c;
  for (double r : radii) {
    const double h_fine = circle_h(val, acoef, c, r, opts.ntheta);
    if (h_fine < 1e-300) {
      p.truncated = true;
      break;
    }
    const double h_half = circle_h(val, acoef, c, r, opts.ntheta / 2);
    double err = std::abs(h_fine - h_half) / h_fine;
    if (val_coarse) {
      const double h_c = circle_h(val_coarse, acoef, c, r, opts.ntheta);
      err += std::abs(h_fine - h_c) / (3.0 * h_fine);
    }
    const double i_val = ball_i(grad, acoef, c, r, opts.nr, opts.ntheta);
    p.radii.push_back(r);
    p.H.push_back(h_fine);
    p.I.push_back(i_val);
    p.N.push_back(r * i_val / h_fine);
    p.quad_err.push_back(err + 1e-12);
  }
  return p;
}

void require_radii(const GridSpec& g, Point c, double rmax) {
  if (c.x - rmax < g.x0 - 1e-12 || c.y - rmax < g.y0 - 1e-12 ||
      c.x + rmax > g.x(g.nx - 1) + 1e-12 || c.y + rmax > g.y(g.ny - 1) + 1e-12)
    throw std::invalid_argument("frequency_profile: radius exceeds domain");
}

}  // namespace

RadialGrowthProfile frequency_profile(const ScalarField& u,
                                      const CoefficientMatrixField& a,
                                      Point center,
                                      const std::vector<double>& radii,
                                      const FrequencyOptions& opts) {
  if (radii.empty()) throw std::invalid_argument("frequency_profile: no radii");
  require_radii(u.spec(), center, *std::max_element(radii.begin(), radii.end()));
  const auto a0 = a.interp(center.x, center.y);
  if (std::abs(a0[0] - 1.0) > 1e-6 || std::abs(a0[1]) > 1e-6 ||
      std::abs(a0[2] - 1.0) > 1e-6)
    throw std::invalid_argument(
        "frequency_profile: A(center) != I (apply change_of_variables first)");

  const GridSpec& g = u.spec();
  ScalarField gx = ScalarField::zeros(g), gy = ScalarField::zeros(g);
  for (int j = 0; j < g.ny; ++j)
    for (int i = 0; i < g.nx; ++i) {
      auto [dx, dy] = u.gradient(i, j);
      gx.at(i, j) = dx;
      gy.at(i, j) = dy;
    }
  ScalarField uc = u.coarsened(2);

  Eval val = [&u](double x, double y) { return u.interp(x, y); };
  Eval val_c = [&uc](double x, double y) { return uc.interp(x, y); };
  Grad grad = [&gx, &gy](double x, double y) {
    return std::make_pair(gx.interp(x, y), gy.interp(x, y));
  };
  Coef acoef = [&a](double x, double y) { return a.interp(x, y); };
  return build_profile(val, val_c, grad, acoef, center, radii, opts);
}

RadialGrowthProfile frequency_profile_analytic(const Field2& u, Point center,
                                               const std::vector<double>& radii,
                                               const FrequencyOptions& opts) {
  if (radii.empty()) throw std::invalid_argument("frequency_profile: no radii");
  const double step = 1e-6;
  Eval val = u;
  Grad grad = [&u, step](double x, double y) {
    return std::make_pair((u(x + step, y) - u(x - step, y)) / (2 * step),
                          (u(x, y + step) - u(x, y - step)) / (2 * step));
  };
  Coef acoef = [](double, double) { return std::array<double, 3>{1.0, 0.0, 1.0}; };
  return build_profile(val, Eval(), grad, acoef, center, radii, opts);
}

MonotoneCheck check_frequency_monotone(const RadialGrowthProfile& p, double c) {
  MonotoneCheck out;
  out.pass = true;
  for (std::size_t i = 0; i + 1 < p.size(); ++i) {
    const double lhs = std::exp(c * p.radii[i]) * p.N[i];
    const double rhs = std::exp(c * p.radii[i + 1]) * p.N[i + 1];
    const double tol =
        3.0 * (p.quad_err[i] + p.quad_err[i + 1]) *
            std::max({std::abs(p.N[i]), std::abs(p.N[i + 1]), 1.0}) +
        1e-12;
    const double violation = lhs - rhs;
    if (violation > out.worst_violation) {
      out.worst_violation = violation;
      out.worst_index = int(i);
    }
    out.tolerance = std::max(out.tolerance, tol);
    if (violation > tol) out.pass = false;
  }
  return out;
}

double smallest_monotone_c(const RadialGrowthProfile& p, double c_max) {
  if (check_frequency_monotone(p, 0.0).pass) return 0.0;
  if (!check_frequency_monotone(p, c_max).pass) return c_max;
  double lo = 0.0, hi = c_max;
  for (int it = 0; it < 60; ++it) {
    const double mid = 0.5 * (lo + hi);
    (check_frequency_monotone(p, mid).pass ? hi : lo) = mid;
  }
  return hi;
}

GrowthBracket growth_bracket(const RadialGrowthProfile& p, double r,
                             double big_r, double rel_tol) {
  auto locate = [&p](double r0) {
    std::size_t best = 0;
    for (std::size_t i = 1; i < p.size(); ++i)
      if (std::abs(p.radii[i] - r0) < std::abs(p.radii[best] - r0)) best = i;
    if (p.size() == 0 || std::abs(p.radii[best] - r0) > 1e-9 * std::max(r0, 1.0))
      throw std::invalid_argument("growth_bracket: radius not in profile");
    return best;
  };
  const std::size_t ir = locate(r), iR = locate(big_r);
  GrowthBracket out;
  const double q = big_r / r;
  out.lower = std::pow(q, 2.0 * p.N[ir]);
  out.upper = std::pow(q, 2.0 * p.N[iR]);
  out.ratio = p.H[iR] / p.H[ir];
  const double tol = rel_tol + 3.0 * (p.quad_err[ir] + p.quad_err[iR]);
  out.pass = out.lower <= out.ratio * (1.0 + tol) &&
             out.ratio <= out.upper * (1.0 + tol);
  return out;
}

DoublingRecord doubling_ball(const ScalarField& u, const Ball& b) {
  const double inner = u.max_abs_ball(b);
  if (inner <= 0.0)
    throw std::invalid_argument("doubling_ball: u vanishes on B");
  DoublingRecord rec;
  rec.value = std::log(u.max_abs_ball(b.scaled(2.0)) / inner);
  rec.family_size = 1;
  return rec;
}

DoublingRecord doubling_ball_analytic(const Field2& f, const Ball& b, int nr,
                                      int ntheta) {
  const double inner = max_abs_ball_analytic(f, b, nr, ntheta);
  if (inner <= 0.0)
    throw std::invalid_argument("doubling_ball: u vanishes on B");
  DoublingRecord rec;
  rec.value = std::log(max_abs_ball_analytic(f, b.scaled(2.0), nr, ntheta) / inner);
  rec.family_size = 1;
  return rec;
}

DoublingRecord doubling_cube(const ScalarField& u, const Cube& q, int depth,
                             int jitter_per_level, unsigned seed) {
  const GridSpec& g = u.spec();
  const Cube big = q.scaled(2.0);
  if (big.cx - big.half < g.x0 - 1e-12 || big.cy - big.half < g.y0 - 1e-12 ||
      big.cx + big.half > g.x(g.nx - 1) + 1e-12 ||
      big.cy + big.half > g.y(g.ny - 1) + 1e-12)
    throw std::invalid_argument("doubling_cube: 2Q escapes the sampled data");

  RangeMaxTable table(u);
  if (table.max_abs_cube(q) <= 0.0)
    throw std::invalid_argument("doubling_cube: u vanishes on Q");

  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> unif(-1.0, 1.0);
  DoublingRecord rec;
  auto consider = [&](const Cube& sub) {
    const double inner = table.max_abs_cube(sub);
    if (inner <= 0.0) return;
    ++rec.family_size;
    const double v = std::log(table.max_abs_cube(sub.scaled(2.0)) / inner);
    if (v > rec.value) {
      rec.value = v;
      rec.argmax = sub;
    }
  };
  for (int level = 0; level <= depth; ++level) {
    const int parts = 1 << level;
    const double half = q.half / parts;
    for (int j = 0; j < parts; ++j)
      for (int i = 0; i < parts; ++i)
        consider({q.cx - q.half + (2 * i + 1) * half,
                  q.cy - q.half + (2 * j + 1) * half, half});
    if (level == 0) continue;
    const double room = q.half - half;
    for (int t = 0; t < jitter_per_level; ++t)
      consider({q.cx + unif(rng) * room, q.cy + unif(rng) * room, half});
  }
  return rec;
}

ThreeSphereResult three_sphere_check(const ScalarField& u,
                                     const CoefficientMatrixField& a,
                                     Point center, double r, int ntheta) {
  require_radii(u.spec(), center, 4.0 * r);
  ScalarField uc = u.coarsened(2);
  Eval val = [&u](double x, double y) { return u.interp(x, y); };
  Eval val_c = [&uc](double x, double y) { return uc.interp(x, y); };
  Coef acoef = [&a](double x, double y) { return a.interp(x, y); };

  ThreeSphereResult out;
  double err = 0.0;
  auto h_at = [&](double radius) {
    const double fine = circle_h(val, acoef, center, radius, ntheta);
    if (fine < 1e-300)
      throw std::runtime_error("three_sphere_check: u vanishes on a circle");
    const double half = circle_h(val, acoef, center, radius, ntheta / 2);
    const double coarse = circle_h(val_c, acoef, center, radius, ntheta);
    err += std::abs(fine - half) / fine + std::abs(fine - coarse) / (3.0 * fine);
    return fine;
  };
  out.h_r = h_at(r);
  out.h_2r = h_at(2.0 * r);
  out.h_4r = h_at(4.0 * r);
  out.defect = out.h_2r * out.h_2r / (out.h_r * out.h_4r) - 1.0;
  const double l1 = std::log(out.h_r), l2 = std::log(out.h_2r),
               l4 = std::log(out.h_4r);
  out.alpha_star = std::abs(l4 - l1) > 1e-12 ? (l4 - l2) / (l4 - l1) : 0.5;
  out.c_star = out.h_2r / std::sqrt(out.h_r * out.h_4r);
  out.tol = 3.0 * err + 1e-12;
  out.pass = out.defect <= out.tol;
  return out;
}

ChainResult chain_propagation(const ScalarField& u, const Ball& b,
                              const Cube& k_set, const Cube& omega,
                              int k_factor) {
  ChainResult out;
  const double sup_b = u.max_abs_ball(b);
  const double sup_k = u.max_abs_cube(k_set);
  const double sup_o = u.max_abs_cube(omega);
  if (sup_o <= 0.0) {  // identically zero data
    out.direct_pass = true;
    return out;
  }

  const bool k_in_b = [&] {
    for (int sx : {-1, 1})
      for (int sy : {-1, 1})
        if (!b.contains(k_set.cx + sx * k_set.half, k_set.cy + sy * k_set.half))
          return false;
    return true;
  }();
  if (!k_in_b) {
    auto margin = [&omega](double x, double y) {
      return std::min(omega.half - std::abs(x - omega.cx),
                      omega.half - std::abs(y - omega.cy));
    };
    const double m = std::min(margin(b.cx, b.cy), margin(k_set.cx, k_set.cy));
    double rho = std::min(b.r, m / k_factor);
    if (rho <= 0.0)
      throw std::invalid_argument("chain_propagation: no admissible ball radius");
    out.ball_radius = rho;

    const double dist = std::hypot(k_set.cx - b.cx, k_set.cy - b.cy);
    const int steps = std::max(1, int(std::ceil(dist / (0.5 * rho))));
    Eval val = [&u](double x, double y) { return u.interp(x, y); };
    Coef eye = [](double, double) { return std::array<double, 3>{1.0, 0.0, 1.0}; };
    double log_gamma = 0.0;
    for (int s = 0; s < steps; ++s) {
      const double t = double(s) / steps;
      const Point c{b.cx + t * (k_set.cx - b.cx), b.cy + t * (k_set.cy - b.cy)};
      const double h1 = circle_h(val, eye, c, 0.5 * rho, 256);
      const double h2 = circle_h(val, eye, c, rho, 256);
      const double h4 = circle_h(val, eye, c, 2.0 * rho, 256);
      double alpha = 0.5;
      if (h1 > 1e-300 && h4 > 1e-300 &&
          std::abs(std::log(h4) - std::log(h1)) > 1e-12)
        alpha = (std::log(h4) - std::log(h2)) / (std::log(h4) - std::log(h1));
      log_gamma += std::log(std::clamp(alpha, 0.05, 0.95));
    }
    out.chain_length = steps;
    out.gamma_hat = std::exp(log_gamma);
  }

  const double bound =
      std::pow(sup_b, out.gamma_hat) * std::pow(sup_o, 1.0 - out.gamma_hat);
  out.c_hat = bound > 0.0 ? std::max(1.0, sup_k / bound) : 1.0;
  out.direct_pass = sup_k <= out.c_hat * bound * (1.0 + 1e-12);
  return out;
}

PowerLawFit df_doubling_scan(const std::vector<int>& modes) {
  PowerLawFit fit;
  const std::vector<Ball> family = {
      {0.0, 0.0, 0.25}, {0.7, 0.0, 0.25}, {0.3, -0.1, 0.25}};
  for (int n : modes) {
    fit.lambdas.push_back(double(n) * double(n));
    if (n == 0) {
      fit.doublings.push_back(0.0);
      continue;
    }
    Field2 h2 = [n](double theta, double t) {
      return std::cos(n * theta) * std::exp(n * t);
    };
    double best = 0.0;
    for (const auto& ball : family)
      best = std::max(best, doubling_ball_analytic(h2, ball, 256, 512).value);
    fit.doublings.push_back(best);
  }

  // least squares N = c sqrt(lambda) + c0
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const double m = double(fit.lambdas.size());
  for (std::size_t i = 0; i < fit.lambdas.size(); ++i) {
    const double x = std::sqrt(fit.lambdas[i]), y = fit.doublings[i];
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  fit.c = (m * sxy - sx * sy) / std::max(m * sxx - sx * sx, 1e-300);
  fit.c0 = (sy - fit.c * sx) / m;
  double rss = 0.0;
  for (std::size_t i = 0; i < fit.lambdas.size(); ++i) {
    const double e =
        fit.doublings[i] - (fit.c * std::sqrt(fit.lambdas[i]) + fit.c0);
    rss += e * e;
  }
  fit.residual = std::sqrt(rss / m);

  // free power fit over positive modes
  double px = 0, py = 0, pxx = 0, pxy = 0, pm = 0;
  for (std::size_t i = 0; i < fit.lambdas.size(); ++i) {
    if (fit.lambdas[i] <= 0.0 || fit.doublings[i] <= 0.0) continue;
    const double x = std::log(fit.lambdas[i]), y = std::log(fit.doublings[i]);
    px += x;
    py += y;
    pxx += x * x;
    pxy += x * y;
    pm += 1.0;
  }
  fit.exponent =
      pm >= 2 ? (pm * pxy - px * py) / std::max(pm * pxx - px * px, 1e-300) : 0.0;
  return fit;
}

PartitionResult min_doubling_partition(const ScalarField& u, const Cube& q,
                                       int k, int depth, unsigned seed) {
  if (k < 2) throw std::invalid_argument("min_doubling_partition: k >= 2");
  RangeMaxTable table(u);
  PartitionResult out;
  out.n_min = std::numeric_limits<double>::infinity();
  const double half = q.half / k;
  for (int j = 0; j < k; ++j)
    for (int i = 0; i < k; ++i) {
      const Cube sub{q.cx - q.half + (2 * i + 1) * half,
                     q.cy - q.half + (2 * j + 1) * half, half};
      const double inner = table.max_abs_cube(sub);
      const double v = inner > 0.0
                           ? std::log(table.max_abs_cube(sub.scaled(2.0)) / inner)
                           : 0.0;
      out.nf.push_back(v);
      if (v < out.n_min) {
        out.n_min = v;
        out.argmin = sub;
      }
    }
  out.doubling_big = doubling_cube(u, q, depth, 32, seed).value;
  out.doubling_q_min = doubling_cube(u, out.argmin, depth, 32, seed + 1).value;
  out.halved = out.doubling_q_min <= 0.5 * out.doubling_big + 1e-12;

  const Cube hq = q.scaled(0.5);
  const double inner = table.max_abs_cube(hq);
  out.lemma_lhs = inner > 0.0 ? std::log(table.max_abs_cube(q) / inner) : 0.0;
  out.lemma_rhs = (double(k) / 8.0) * out.n_min;
  out.lemma_pass = out.lemma_lhs + 1e-9 >= out.lemma_rhs;
  return out;
}

TransformedProblem change_of_variables(const ScalarField& u,
                                       const CoefficientMatrixField& a,
                                       Point x0) {
  const auto a0 = a.interp(x0.x, x0.y);
  // symmetric square root of [[a11, a12], [a12, a22]]
  const double tr = a0[0] + a0[2];
  const double det = a0[0] * a0[2] - a0[1] * a0[1];
  const double s = std::sqrt(det);
  const double t = std::sqrt(tr + 2.0 * s);
  const std::array<double, 4> sq = {(a0[0] + s) / t, a0[1] / t, a0[1] / t,
                                    (a0[2] + s) / t};
  const double sdet = sq[0] * sq[3] - sq[1] * sq[2];
  const std::array<double, 4> si = {sq[3] / sdet, -sq[1] / sdet, -sq[2] / sdet,
                                    sq[0] / sdet};

  const GridSpec& g = u.spec();
  GridSpec out_spec = g;
  out_spec.x0 = g.x0 - x0.x;
  out_spec.y0 = g.y0 - x0.y;

  ScalarField ut = ScalarField::zeros(out_spec);
  std::vector<double> a11(out_spec.size()), a12(out_spec.size()),
      a22(out_spec.size());
  double lmax = 0.0, lmin = std::numeric_limits<double>::infinity();
  for (int j = 0; j < out_spec.ny; ++j)
    for (int i = 0; i < out_spec.nx; ++i) {
      const double yx = out_spec.x(i), yy = out_spec.y(j);
      const double xx = x0.x + sq[0] * yx + sq[1] * yy;
      const double xy = x0.y + sq[2] * yx + sq[3] * yy;
      ut.at(i, j) = u.interp(xx, xy);
      const auto av = a.interp(xx, xy);
      // S^-1 A S^-1 with symmetric S
      const double m00 = av[0] * si[0] + av[1] * si[2];
      const double m01 = av[0] * si[1] + av[1] * si[3];
      const double m10 = av[1] * si[0] + av[2] * si[2];
      const double m11 = av[1] * si[1] + av[2] * si[3];
      const double b00 = si[0] * m00 + si[1] * m10;
      const double b01 = si[0] * m01 + si[1] * m11;
      const double b11 = si[2] * m01 + si[3] * m11;
      const std::size_t idx = out_spec.idx(i, j);
      a11[idx] = b00;
      a12[idx] = b01;
      a22[idx] = b11;
      const double btr = b00 + b11, bdet = b00 * b11 - b01 * b01;
      const double disc = std::sqrt(std::max(btr * btr / 4 - bdet, 0.0));
      lmax = std::max(lmax, btr / 2 + disc);
      lmin = std::min(lmin, btr / 2 - disc);
    }
  const double lambda = std::max(lmax, 1.0 / std::max(lmin, 1e-300)) + 1e-12;
  CoefficientMatrixField at(out_spec, std::move(a11), std::move(a12),
                            std::move(a22), lambda, 0.0);
  return TransformedProblem{std::move(ut), std::move(at), sq};
}

}  // namespace uclab
