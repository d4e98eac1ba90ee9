#pragma once

#include <complex>
#include <vector>

namespace uclab {

/// Dense real polynomial, coefficients ascending in degree.
struct RealPolynomial {
  std::vector<double> coeffs;

  int degree() const;
  double eval(double x) const;
  RealPolynomial derivative() const;
  RealPolynomial scaled(double c) const;
};

/// Exact integer Chebyshev coefficients via the three-term recurrence.
RealPolynomial chebyshev(int n);
/// T_n(x) by the stable value recurrence.
double chebyshev_eval(int n, double x);

/// Sorted, disjoint closed intervals.
class IntervalUnion {
 public:
  IntervalUnion() = default;
  explicit IntervalUnion(std::vector<std::pair<double, double>> intervals);

  const std::vector<std::pair<double, double>>& intervals() const {
    return intervals_;
  }
  double measure() const;
  bool empty() const { return intervals_.empty(); }

 private:
  std::vector<std::pair<double, double>> intervals_;
};

/// max |P| over [a, b]: endpoint values plus critical points of P found by
/// sign-change isolation of P' and bisection to ~1e-12.
double max_abs_on_interval(const RealPolynomial& p, double a, double b);

/// (4 |I| / |E|)^n; requires 0 < |E| <= |I|.
double remez_bound(int n, double interval_measure, double set_measure);
/// T_n(1 + c).
double sharp_remez_bound(int n, double c);

struct RemezCheck {
  double max_i = 0.0;
  double max_e = 0.0;
  double ratio = 0.0;
  double bound = 0.0;
  bool pass = false;
};
RemezCheck verify_remez(const RealPolynomial& p, const IntervalUnion& e,
                        std::pair<double, double> interval);

struct SublevelSet1D {
  IntervalUnion set;     // {|P| < e^{-an}} within I, P normalized on I
  double measure = 0.0;
  double bound = 0.0;    // 4 |I| e^{-a}
  bool pass = false;
};
SublevelSet1D sublevel_measure_1d(const RealPolynomial& p,
                                  std::pair<double, double> interval, double a);

struct DiscreteRemezCheck {
  double max_i = 0.0;
  double max_s = 0.0;
  double bound_factor = 0.0;  // (4 |I| / m)^n
  bool pass = false;
};
DiscreteRemezCheck discrete_remez_check(const RealPolynomial& p,
                                        const std::vector<double>& s, int m,
                                        std::pair<double, double> interval);

/// z^n + a_{n-1} z^{n-1} + ... + a_0, leading coefficient implicit.
struct ComplexMonicPolynomial {
  std::vector<std::complex<double>> coeffs;  // a_0 .. a_{n-1}

  int degree() const { return int(coeffs.size()); }
  std::complex<double> eval(std::complex<double> z) const;
};

struct SublevelArea {
  double inner = 0.0;        // pixels entirely inside {|p| < e^{-na}}
  double outer = 0.0;        // inner + boundary pixels
  double pixel_error = 0.0;  // boundary pixel area
  double bound = 0.0;
  int resolution = 0;
  bool pass = false;  // inner <= bound
};
/// Pixel-counted area of {|p(z)| < e^{-na}}; resolution doubled until the
/// boundary-pixel error drops below 1% of the bound (or the cap is hit).
SublevelArea polya_check(const ComplexMonicPolynomial& p, double a,
                         int resolution = 4096);
SublevelArea cartan_area_check(const ComplexMonicPolynomial& p, double a,
                               int resolution = 4096);

}  // namespace uclab
