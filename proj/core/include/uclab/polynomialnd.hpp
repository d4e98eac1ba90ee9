#pragma once

#include <array>
#include <boost/multiprecision/cpp_int.hpp>
#include <map>
#include <vector>

namespace uclab {

using Rational = boost::multiprecision::cpp_rational;

/// Exponent multi-index; unused trailing dimensions are zero.
using Exponents = std::array<int, 3>;

/// Homogeneous polynomial in d (2 or 3) variables with exact rational
/// coefficients. Degree-0 polynomials are constants.
class HomogeneousPolynomial {
 public:
  HomogeneousPolynomial(int degree, int dim);

  static HomogeneousPolynomial monomial(int dim, Exponents e, Rational c = 1);

  int degree() const { return degree_; }
  int dim() const { return dim_; }
  const std::map<Exponents, Rational>& terms() const { return terms_; }
  bool is_zero() const;

  void set(Exponents e, Rational c);
  void add_term(Exponents e, const Rational& c);

  HomogeneousPolynomial operator+(const HomogeneousPolynomial& o) const;
  HomogeneousPolynomial operator-(const HomogeneousPolynomial& o) const;
  HomogeneousPolynomial scaled(const Rational& c) const;

  /// Multiplication by |x|^2 (degree + 2).
  HomogeneousPolynomial times_r2() const;
  /// Exact Laplacian (degree - 2; zero polynomial for degree < 2).
  HomogeneousPolynomial laplacian() const;

  double eval(double x, double y, double z = 0.0) const;

 private:
  int degree_;
  int dim_;
  std::map<Exponents, Rational> terms_;
};

/// Splits F (homogeneous of degree n) into harmonic components,
/// F = H_n + |x|^2 H_{n-2} + ... + |x|^{2k} H_{n-2k}.
/// Each returned component is harmonic; zero tail components are dropped.
/// Exact: solves the rational linear system G -> laplacian(|x|^2 G).
std::vector<HomogeneousPolynomial> harmonic_decompose(const HomogeneousPolynomial& f);

}  // namespace uclab
