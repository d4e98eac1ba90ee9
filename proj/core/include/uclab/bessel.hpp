#pragma once

namespace uclab {

/// Bessel function of the first kind, real order nu >= 0.
///
/// Power series (compensated summation, extended precision) up to the
/// switch point r* = max(12, 2 nu); beyond r* the same series is summed in
/// quad precision, which keeps the absolute error below ~1e-13 for the
/// supported range r <= 60.
double eval_bessel(double nu, double r);

/// J_nu and its derivative J'_nu (via J'_nu = (nu/r) J_nu - J_{nu+1}).
struct BesselValue {
  double j;
  double jp;
};
BesselValue eval_bessel_d(double nu, double r);

/// Switch point between the fast series and the quad-precision series.
double bessel_series_switch(double nu);

/// k-th positive zero j_{nu,k}: sign-change bracketing on a pi/8 grid
/// starting at max(nu, 0.5), then bisection to 1e-12.
double bessel_zero(double nu, int k);

}  // namespace uclab
