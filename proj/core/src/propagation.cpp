#include "uclab/propagation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace uclab {
namespace {

template <class Fn>
void for_nodes_in_cube(const GridSpec& g, const Cube& q, Fn fn) {
  const int i0 = std::max(0, int(std::ceil((q.cx - q.half - g.x0) / g.h - 1e-9)));
  const int i1 = std::min(g.nx - 1,
                          int(std::floor((q.cx + q.half - g.x0) / g.h + 1e-9)));
  const int j0 = std::max(0, int(std::ceil((q.cy - q.half - g.y0) / g.h - 1e-9)));
  const int j1 = std::min(g.ny - 1,
                          int(std::floor((q.cy + q.half - g.y0) / g.h + 1e-9)));
  for (int j = j0; j <= j1; ++j)
    for (int i = i0; i <= i1; ++i) fn(i, j);
}

}  // namespace

SublevelStatistic sublevel_measure(const ScalarField& u, const Cube& q,
                                   double a, double n) {
  const GridSpec& g = u.spec();
  double sup = 0.0;
  std::int64_t total = 0;
  for_nodes_in_cube(g, q, [&](int i, int j) {
    sup = std::max(sup, std::abs(u.at(i, j)));
    ++total;
  });
  if (total == 0 || sup <= 0.0)
    throw std::invalid_argument("sublevel_measure: empty or zero field on Q");
  const double threshold = std::exp(-a) * sup;
  std::int64_t below = 0;
  for_nodes_in_cube(g, q, [&](int i, int j) {
    if (std::abs(u.at(i, j)) < threshold) ++below;
  });
  SublevelStatistic out;
  out.a = a;
  out.n = n;
  out.fraction = double(below) / double(total);
  return out;
}

DecayFit decay_fit(const ScalarField& u, const Cube& q,
                   const std::vector<double>& a_grid, double n) {
  if (!(n > 0.0)) throw std::invalid_argument("decay_fit: need N > 0");
  DecayFit fit;
  for (double a : a_grid) {
    const double m = sublevel_measure(u, q, a).fraction;
    if (m <= 0.0 || m >= 1.0) continue;
    fit.a_used.push_back(a);
    fit.log_m.push_back(std::log(m));
  }
  if (fit.a_used.size() < 2)
    throw std::runtime_error("decay_fit: no usable decay range");

  double sx = 0, sy = 0, sxx = 0, sxy = 0, syy = 0;
  const double cnt = double(fit.a_used.size());
  for (std::size_t i = 0; i < fit.a_used.size(); ++i) {
    const double x = fit.a_used[i] / n, y = fit.log_m[i];
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
    syy += y * y;
  }
  const double denom = cnt * sxx - sx * sx;
  const double slope = (cnt * sxy - sx * sy) / denom;
  fit.beta_scaled = -slope;
  fit.beta_raw = fit.beta_scaled / n;
  fit.intercept = (sy - slope * sx) / cnt;
  const double sst = syy - sy * sy / cnt;
  double sse = 0.0;
  for (std::size_t i = 0; i < fit.a_used.size(); ++i) {
    const double e =
        fit.log_m[i] - (slope * fit.a_used[i] / n + fit.intercept);
    sse += e * e;
  }
  fit.r_squared = sst > 0.0 ? 1.0 - sse / sst : 1.0;
  return fit;
}

RemezSolutionsCheck remez_solutions_check(const ScalarField& u,
                                          const std::vector<std::uint8_t>& e_mask,
                                          const Cube& q, double n,
                                          double frozen_c) {
  const GridSpec& g = u.spec();
  if (e_mask.size() != g.size())
    throw std::invalid_argument("remez_solutions_check: mask size mismatch");
  RemezSolutionsCheck out;
  std::int64_t total = 0, in_e = 0;
  for_nodes_in_cube(g, q, [&](int i, int j) {
    const double v = std::abs(u.at(i, j));
    out.sup_q = std::max(out.sup_q, v);
    ++total;
    if (e_mask[g.idx(i, j)]) {
      out.sup_e = std::max(out.sup_e, v);
      ++in_e;
    }
  });
  if (in_e == 0) throw std::invalid_argument("remez_solutions_check: |E| = 0");
  out.volume_ratio = double(total) / double(in_e);
  out.rhs = frozen_c * out.sup_e *
            std::pow(frozen_c * out.volume_ratio, frozen_c * n);
  out.pass = out.sup_q <= out.rhs * (1.0 + 1e-12);
  return out;
}

PropagationCheck propagation_constant(const ScalarField& u,
                                      const std::vector<std::uint8_t>& e_mask,
                                      const Cube& k_set, const Cube& omega,
                                      double eps, double frozen_c0,
                                      double frozen_alpha, double remez_c,
                                      double n_doubling, double a1) {
  const GridSpec& g = u.spec();
  if (e_mask.size() != g.size())
    throw std::invalid_argument("propagation_constant: mask size mismatch");
  PropagationCheck out;
  out.eps = eps;
  std::int64_t total = 0, in_e = 0;
  double sup_e = 0.0;
  for_nodes_in_cube(g, omega, [&](int i, int j) {
    const double v = std::abs(u.at(i, j));
    out.sup_omega = std::max(out.sup_omega, v);
    ++total;
    if (e_mask[g.idx(i, j)]) {
      sup_e = std::max(sup_e, v);
      ++in_e;
    }
  });
  if (in_e == 0) throw std::invalid_argument("propagation_constant: |E| = 0");
  if (sup_e > eps * (1.0 + 1e-9))
    throw std::invalid_argument("propagation_constant: |u| > eps on E");
  out.max_k = u.max_abs_cube(k_set);

  out.alpha_used = frozen_alpha;
  out.c0_used = frozen_c0;
  out.bound = frozen_c0 * std::pow(out.sup_omega, 1.0 - frozen_alpha) *
              std::pow(eps, frozen_alpha);
  out.pass = out.max_k <= out.bound * (1.0 + 1e-12);

  const double ratio = double(total) / double(in_e);
  const double c1 =
      remez_c * std::log(std::max(remez_c * ratio, 1.0 + 1e-12)) / a1;
  out.alpha_derived = 1.0 / (c1 + 1.0);
  (void)n_doubling;
  out.bound_derived = frozen_c0 *
                      std::pow(out.sup_omega, 1.0 - out.alpha_derived) *
                      std::pow(eps, out.alpha_derived);
  out.pass_derived = out.max_k <= out.bound_derived * (1.0 + 1e-12);
  return out;
}

BasePartitionCheck base_partition_check(const ScalarField& u, const Cube& q,
                                        int k, double n0) {
  if (k < 1) throw std::invalid_argument("base_partition_check: k >= 1");
  const GridSpec& g = u.spec();
  BasePartitionCheck out;
  const double sup_q = u.max_abs_cube(q);
  if (sup_q <= 0.0)
    throw std::invalid_argument("base_partition_check: u vanishes on Q");
  out.doubling = std::log(u.max_abs_cube(q.scaled(2.0)) / sup_q);
  if (out.doubling > n0)
    throw std::invalid_argument("base_partition_check: doubling exceeds N0");

  const double half = q.half / k;
  out.b = std::numeric_limits<double>::infinity();
  // locate the max of |u| on Q/2
  double best = -1.0;
  Point arg{q.cx, q.cy};
  for_nodes_in_cube(g, q.scaled(0.5), [&](int i, int j) {
    const double v = std::abs(u.at(i, j));
    if (v > best) {
      best = v;
      arg = {g.x(i), g.y(j)};
    }
  });
  for (int j = 0; j < k; ++j)
    for (int i = 0; i < k; ++i) {
      const Cube sub{q.cx - q.half + (2 * i + 1) * half,
                     q.cy - q.half + (2 * j + 1) * half, half};
      out.b = std::min(out.b, u.max_abs_cube(sub) / sup_q);
      if (sub.contains(arg.x, arg.y)) out.q0 = sub;
    }
  double inf0 = std::numeric_limits<double>::infinity();
  for_nodes_in_cube(g, out.q0, [&](int i, int j) {
    inf0 = std::min(inf0, std::abs(u.at(i, j)));
  });
  out.m = inf0 / sup_q;
  out.pass = out.m > 0.0;
  return out;
}

namespace {

int smallest_k0(double beta, double s, double a0) {
  const double room = 1.0 - s * std::exp(beta * a0);
  if (room <= 0.0) return -1;
  // e^{-beta a0 (k-2)} <= room
  const double k = 2.0 - std::log(room) / (beta * a0);
  return std::max(3, int(std::ceil(k - 1e-12)));
}

}  // namespace

BoundCertificate induction_engine(const RecursionParams& params,
                                  double beta_max, double tol) {
  double s = params.s;
  if (params.j > 0) {
    const double jd = double(params.j) * double(params.j);  // d = 2
    s = (jd - 1.0) / jd;
  }
  if (!(s > 0.0) || s >= 1.0)
    throw std::invalid_argument("induction_engine: need s in (0,1)");
  if (!(params.a0 > 0.0))
    throw std::invalid_argument("induction_engine: need a0 > 0");

  auto feasible = [&](double beta) { return smallest_k0(beta, s, params.a0) > 0; };
  if (!feasible(1e-12))
    throw std::runtime_error("induction_engine: no feasible beta");
  double lo = 1e-12, hi = beta_max;
  if (feasible(hi)) {
    lo = hi;
  } else {
    while (hi - lo > tol) {
      const double mid = 0.5 * (lo + hi);
      (feasible(mid) ? lo : hi) = mid;
    }
  }

  BoundCertificate cert;
  cert.beta = lo;
  cert.s = s;
  cert.a0 = params.a0;
  cert.k0 = smallest_k0(lo, s, params.a0);
  cert.c = std::exp(cert.beta * cert.k0 * params.a0) * params.c_base;
  cert.verified = true;
  for (int k = cert.k0; k < cert.k0 + 12; ++k) {
    TraceEntry e;
    e.k = k;
    e.lhs = std::exp(-cert.beta * params.a0 * (k - 2)) +
            s * std::exp(cert.beta * params.a0);
    e.ok = e.lhs <= 1.0 + 1e-15;
    cert.verified = cert.verified && e.ok;
    cert.trace.push_back(e);
  }
  return cert;
}

bool replay_certificate(const BoundCertificate& cert) {
  if (cert.trace.empty() || cert.trace.front().k != cert.k0) return false;
  for (const auto& e : cert.trace) {
    const double lhs = std::exp(-cert.beta * cert.a0 * (e.k - 2)) +
                       cert.s * std::exp(cert.beta * cert.a0);
    if (lhs != e.lhs) return false;
    if ((lhs <= 1.0 + 1e-15) != e.ok) return false;
    if (!e.ok) return false;
  }
  return true;
}

RecursionOracle recursion_oracle(int k_max, int j_max, double c_boundary) {
  if (k_max < 1 || j_max < 0)
    throw std::invalid_argument("recursion_oracle: bad table size");
  RecursionOracle out;
  out.k_max = k_max;
  out.j_max = j_max;
  out.c_boundary = c_boundary;

  // internal width: contributions from j beyond ~1300 vanish in double
  const int width = std::max(2 * j_max + 2, 1302);
  std::vector<double> prev(width + 1), cur(width + 1);
  for (int j = 0; j <= width; ++j) prev[j] = std::exp(-double(j));
  out.table.push_back(
      std::vector<double>(prev.begin(), prev.begin() + j_max + 1));
  for (int k = 2; k <= k_max; ++k) {
    for (int j = 0; j <= width; ++j) {
      if (j < 4) {
        cur[j] = c_boundary;
      } else {
        const int up = 2 * (j - 1);
        const double carry = up <= width ? prev[up] : 0.0;
        cur[j] = carry + 0.25 * cur[j - 1];
      }
    }
    out.table.push_back(
        std::vector<double>(cur.begin(), cur.begin() + j_max + 1));
    std::swap(prev, cur);
  }

  for (int k = 0; k < k_max; ++k)
    for (int j = 0; j <= j_max; ++j)
      out.c_prime = std::max(out.c_prime, out.table[k][j] * std::exp(double(j)));
  out.envelope_holds = std::isfinite(out.c_prime);
  return out;
}

}  // namespace uclab
