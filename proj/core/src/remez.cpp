#include "uclab/remez.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <stdexcept>

namespace uclab {

int RealPolynomial::degree() const {
  for (int k = int(coeffs.size()) - 1; k >= 0; --k)
    if (coeffs[k] != 0.0) return k;
  return 0;
}

double RealPolynomial::eval(double x) const {
  double v = 0.0;
  for (int k = int(coeffs.size()) - 1; k >= 0; --k) v = v * x + coeffs[k];
  return v;
}

RealPolynomial RealPolynomial::derivative() const {
  RealPolynomial d;
  for (std::size_t k = 1; k < coeffs.size(); ++k)
    d.coeffs.push_back(coeffs[k] * double(k));
  if (d.coeffs.empty()) d.coeffs.push_back(0.0);
  return d;
}

RealPolynomial RealPolynomial::scaled(double c) const {
  RealPolynomial out = *this;
  for (double& v : out.coeffs) v *= c;
  return out;
}

RealPolynomial chebyshev(int n) {
  if (n < 0) throw std::invalid_argument("chebyshev: n >= 0");
  std::vector<long long> prev = {1}, cur = {0, 1};
  if (n == 0) cur = prev;
  for (int k = 1; k < n; ++k) {
    std::vector<long long> next(k + 2, 0);
    for (std::size_t i = 0; i < cur.size(); ++i) next[i + 1] += 2 * cur[i];
    for (std::size_t i = 0; i < prev.size(); ++i) next[i] -= prev[i];
    prev = std::move(cur);
    cur = std::move(next);
  }
  RealPolynomial out;
  for (long long c : cur) out.coeffs.push_back(double(c));
  return out;
}

double chebyshev_eval(int n, double x) {
  if (n < 0) throw std::invalid_argument("chebyshev_eval: n >= 0");
  double t0 = 1.0, t1 = x;
  if (n == 0) return t0;
  for (int k = 1; k < n; ++k) {
    const double t2 = 2.0 * x * t1 - t0;
    t0 = t1;
    t1 = t2;
  }
  return t1;
}

IntervalUnion::IntervalUnion(std::vector<std::pair<double, double>> intervals) {
  for (auto& [a, b] : intervals)
    if (b < a) std::swap(a, b);
  std::sort(intervals.begin(), intervals.end());
  for (const auto& iv : intervals) {
    if (!intervals_.empty() && iv.first <= intervals_.back().second)
      intervals_.back().second = std::max(intervals_.back().second, iv.second);
    else
      intervals_.push_back(iv);
  }
}

double IntervalUnion::measure() const {
  double m = 0.0;
  for (const auto& [a, b] : intervals_) m += b - a;
  return m;
}

namespace {

/// Simple roots of p in (a, b) by sign-change bracketing and bisection.
std::vector<double> isolate_roots(const RealPolynomial& p, double a, double b) {
  std::vector<double> roots;
  const int deg = p.degree();
  if (deg == 0) return roots;
  const int cells = std::max(256, 64 * deg);
  double prev_x = a, prev_v = p.eval(a);
  for (int k = 1; k <= cells; ++k) {
    const double x = a + (b - a) * k / cells;
    const double v = p.eval(x);
    if (prev_v == 0.0) roots.push_back(prev_x);
    else if ((prev_v > 0) != (v > 0) && v != 0.0) {
      double lo = prev_x, hi = x, flo = prev_v;
      for (int it = 0; it < 100; ++it) {
        const double mid = 0.5 * (lo + hi);
        const double fm = p.eval(mid);
        if (fm == 0.0) {
          lo = hi = mid;
          break;
        }
        if ((fm > 0) == (flo > 0)) {
          lo = mid;
          flo = fm;
        } else {
          hi = mid;
        }
      }
      roots.push_back(0.5 * (lo + hi));
    }
    prev_x = x;
    prev_v = v;
  }
  if (p.eval(b) == 0.0) roots.push_back(b);
  return roots;
}

}  // namespace

double max_abs_on_interval(const RealPolynomial& p, double a, double b) {
  if (b < a) std::swap(a, b);
  double best = std::max(std::abs(p.eval(a)), std::abs(p.eval(b)));
  for (double r : isolate_roots(p.derivative(), a, b))
    best = std::max(best, std::abs(p.eval(r)));
  return best;
}

double remez_bound(int n, double interval_measure, double set_measure) {
  if (!(set_measure > 0.0) || set_measure > interval_measure + 1e-12)
    throw std::invalid_argument("remez_bound: need 0 < |E| <= |I|");
  return std::pow(4.0 * interval_measure / set_measure, n);
}

double sharp_remez_bound(int n, double c) {
  if (!(c > 0.0)) throw std::invalid_argument("sharp_remez_bound: c > 0");
  return chebyshev_eval(n, 1.0 + c);
}

RemezCheck verify_remez(const RealPolynomial& p, const IntervalUnion& e,
                        std::pair<double, double> interval) {
  if (e.measure() <= 0.0) throw std::invalid_argument("verify_remez: |E| = 0");
  RemezCheck out;
  out.max_i = max_abs_on_interval(p, interval.first, interval.second);
  for (const auto& [a, b] : e.intervals())
    out.max_e = std::max(out.max_e, max_abs_on_interval(p, a, b));
  if (out.max_e <= 0.0) throw std::invalid_argument("verify_remez: P = 0 on E");
  out.ratio = out.max_i / out.max_e;
  out.bound =
      remez_bound(p.degree(), interval.second - interval.first, e.measure());
  out.pass = out.ratio <= out.bound * (1.0 + 1e-12);
  return out;
}

SublevelSet1D sublevel_measure_1d(const RealPolynomial& p,
                                  std::pair<double, double> interval, double a) {
  if (!(a > 0.0)) throw std::invalid_argument("sublevel_measure_1d: a > 0");
  const double lo = interval.first, hi = interval.second;
  const double max_i = max_abs_on_interval(p, lo, hi);
  if (max_i <= 0.0)
    throw std::invalid_argument("sublevel_measure_1d: zero polynomial");
  const RealPolynomial q = p.scaled(1.0 / max_i);
  const int n = q.degree();
  const double t = std::exp(-a * n);

  std::vector<double> cuts = {lo, hi};
  for (double sign : {1.0, -1.0}) {
    RealPolynomial shifted = q;
    shifted.coeffs[0] -= sign * t;
    for (double r : isolate_roots(shifted, lo, hi)) cuts.push_back(r);
  }
  std::sort(cuts.begin(), cuts.end());

  SublevelSet1D out;
  std::vector<std::pair<double, double>> pieces;
  for (std::size_t k = 0; k + 1 < cuts.size(); ++k) {
    const double mid = 0.5 * (cuts[k] + cuts[k + 1]);
    if (std::abs(q.eval(mid)) < t) pieces.emplace_back(cuts[k], cuts[k + 1]);
  }
  out.set = IntervalUnion(std::move(pieces));
  out.measure = out.set.measure();
  out.bound = 4.0 * (hi - lo) * std::exp(-a);
  out.pass = out.measure <= out.bound + 1e-12;
  return out;
}

DiscreteRemezCheck discrete_remez_check(const RealPolynomial& p,
                                        const std::vector<double>& s, int m,
                                        std::pair<double, double> interval) {
  const int n = p.degree();
  if (int(s.size()) < n + m)
    throw std::invalid_argument("discrete_remez_check: need |S| >= n + m");
  DiscreteRemezCheck out;
  out.max_i = max_abs_on_interval(p, interval.first, interval.second);
  for (double x : s) out.max_s = std::max(out.max_s, std::abs(p.eval(x)));
  out.bound_factor =
      std::pow(4.0 * (interval.second - interval.first) / m, n);
  out.pass = out.max_i <= out.bound_factor * out.max_s * (1.0 + 1e-12);
  return out;
}

std::complex<double> ComplexMonicPolynomial::eval(std::complex<double> z) const {
  std::complex<double> v = 1.0;  // leading coefficient
  for (int k = int(coeffs.size()) - 1; k >= 0; --k) v = v * z + coeffs[k];
  return v;
}

namespace {

SublevelArea pixel_area(const ComplexMonicPolynomial& p, double a, double bound,
                        int resolution) {
  const int n = p.degree();
  if (n < 1) throw std::invalid_argument("pixel_area: degree >= 1");
  const double t = std::exp(-double(n) * a);

  std::complex<double> centroid = 0.0;
  double max_coef = 0.0;
  for (const auto& c : p.coeffs) max_coef = std::max(max_coef, std::abs(c));
  centroid = -p.coeffs.back() / double(n);
  const double half = std::abs(centroid) + max_coef + 2.0;

  SublevelArea out;
  out.bound = bound;
  int res = resolution;
  for (;; res *= 2) {
    const double px = 2.0 * half / res;
    std::vector<std::uint8_t> in(std::size_t(res + 1) * (res + 1));
    for (int j = 0; j <= res; ++j) {
      const double y = centroid.imag() - half + j * px;
      for (int i = 0; i <= res; ++i) {
        const double x = centroid.real() - half + i * px;
        in[std::size_t(j) * (res + 1) + i] = std::abs(p.eval({x, y})) < t;
      }
    }
    std::int64_t full = 0, boundary = 0;
    for (int j = 0; j < res; ++j)
      for (int i = 0; i < res; ++i) {
        const int c = in[std::size_t(j) * (res + 1) + i] +
                      in[std::size_t(j) * (res + 1) + i + 1] +
                      in[std::size_t(j + 1) * (res + 1) + i] +
                      in[std::size_t(j + 1) * (res + 1) + i + 1];
        if (c == 4) ++full;
        else if (c > 0) ++boundary;
      }
    out.inner = double(full) * px * px;
    out.pixel_error = double(boundary) * px * px;
    out.outer = out.inner + out.pixel_error;
    out.resolution = res;
    if (out.pixel_error < 0.01 * bound || res >= 16384) break;
  }
  out.pass = out.inner <= bound * (1.0 + 1e-12);
  return out;
}

}  // namespace

SublevelArea polya_check(const ComplexMonicPolynomial& p, double a,
                         int resolution) {
  if (!(a > 0.0)) throw std::invalid_argument("polya_check: a > 0");
  return pixel_area(p, a, M_PI * std::exp(-2.0 * a), resolution);
}

SublevelArea cartan_area_check(const ComplexMonicPolynomial& p, double a,
                               int resolution) {
  if (!(a > 0.0)) throw std::invalid_argument("cartan_area_check: a > 0");
  return pixel_area(p, a, 4.0 * M_PI * std::exp(1.0 - 2.0 * a), resolution);
}

}  // namespace uclab
