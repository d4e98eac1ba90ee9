#include "uclab/bessel.hpp"

#include <quadmath.h>

#include <cmath>
#include <stdexcept>
#include <string>

namespace uclab {
namespace {

constexpr double kMaxArg = 60.0;

// Series J_nu(r) = sum_k (-1)^k (r/2)^(nu+2k) / (k! Gamma(nu+k+1)),
// terms generated by the two-term recurrence, Kahan-compensated.
template <class F>
F series_bessel(F nu, F r) {
  if (r == F(0)) return nu == F(0) ? F(1) : F(0);
  F half = r / F(2);
  F x2;
  F term;
  if constexpr (sizeof(F) == sizeof(__float128)) {
    term = expq(nu * logq(half) - lgammaq(nu + F(1)));
    x2 = half * half;
  } else {
    term = expl(nu * logl(half) - lgammal(nu + F(1)));
    x2 = half * half;
  }
  F sum = term, comp = F(0);
  for (int k = 1; k < 400; ++k) {
    term = -term * x2 / (F(k) * (nu + F(k)));
    // Kahan step
    F y = term - comp;
    F t = sum + y;
    comp = (t - sum) - y;
    sum = t;
    F mag = term < F(0) ? -term : term;
    F smag = sum < F(0) ? -sum : sum;
    if (F(2 * k) > r && mag <= (smag + F(1e-300)) * F(1e-36) && k > 8) break;
  }
  return sum;
}

double eval_checked(double nu, double r) {
  if (!(nu >= 0.0) || !std::isfinite(nu) || !std::isfinite(r))
    throw std::invalid_argument("eval_bessel: non-finite or negative-order input");
  if (r < 0.0) throw std::invalid_argument("eval_bessel: negative argument");
  if (r > kMaxArg)
    throw std::invalid_argument("eval_bessel: argument beyond supported range (r <= " +
                                std::to_string(kMaxArg) + ")");
  if (r <= bessel_series_switch(nu))
    return double(series_bessel<long double>((long double)nu, (long double)r));
  return double(series_bessel<__float128>(__float128(nu), __float128(r)));
}

}  // namespace

double bessel_series_switch(double nu) { return std::max(12.0, 2.0 * nu); }

double eval_bessel(double nu, double r) { return eval_checked(nu, r); }

BesselValue eval_bessel_d(double nu, double r) {
  const double j = eval_checked(nu, r);
  if (r == 0.0) {
    if (nu == 1.0) return {j, 0.5};
    return {j, 0.0};
  }
  const double jnext = eval_checked(nu + 1.0, r);
  return {j, nu / r * j - jnext};
}

double bessel_zero(double nu, int k) {
  if (k < 1) throw std::invalid_argument("bessel_zero: k >= 1 required");
  const double step = M_PI / 8.0;
  double a = std::max(nu, 0.5);
  double fa = eval_bessel(nu, a);
  int found = 0;
  while (a < kMaxArg - step) {
    const double b = a + step;
    const double fb = eval_bessel(nu, b);
    if ((fa < 0.0) != (fb < 0.0) || fb == 0.0) {
      ++found;
      if (found == k) {
        double lo = a, hi = b, flo = fa;
        while (hi - lo > 1e-12) {
          const double mid = 0.5 * (lo + hi);
          const double fm = eval_bessel(nu, mid);
          if ((flo < 0.0) != (fm < 0.0)) {
            hi = mid;
          } else {
            lo = mid;
            flo = fm;
          }
        }
        return 0.5 * (lo + hi);
      }
    }
    a = b;
    fa = fb;
  }
  throw std::runtime_error("bessel_zero: search window exhausted before zero " +
                           std::to_string(k) + " of order " + std::to_string(nu));
}

}  // namespace uclab
