#include "uclab/polynomialnd.hpp"

#include <cmath>
#include <stdexcept>

namespace uclab {
namespace {

int exp_sum(const Exponents& e) { return e[0] + e[1] + e[2]; }

std::vector<Exponents> monomial_basis(int degree, int dim) {
  std::vector<Exponents> out;
  if (dim == 2) {
    for (int a = degree; a >= 0; --a) out.push_back({a, degree - a, 0});
  } else if (dim == 3) {
    for (int a = degree; a >= 0; --a)
      for (int b = degree - a; b >= 0; --b) out.push_back({a, b, degree - a - b});
  } else {
    throw std::invalid_argument("monomial_basis: dim must be 2 or 3");
  }
  return out;
}

}  // namespace

HomogeneousPolynomial::HomogeneousPolynomial(int degree, int dim)
    : degree_(degree), dim_(dim) {
  if (degree < 0 || (dim != 2 && dim != 3))
    throw std::invalid_argument("HomogeneousPolynomial: bad degree/dim");
}

HomogeneousPolynomial HomogeneousPolynomial::monomial(int dim, Exponents e,
                                                      Rational c) {
  HomogeneousPolynomial p(exp_sum(e), dim);
  p.set(e, std::move(c));
  return p;
}

bool HomogeneousPolynomial::is_zero() const {
  for (const auto& [e, c] : terms_)
    if (c != 0) return false;
  return true;
}

void HomogeneousPolynomial::set(Exponents e, Rational c) {
  if (exp_sum(e) != degree_)
    throw std::invalid_argument("HomogeneousPolynomial: term degree mismatch");
  if (dim_ == 2 && e[2] != 0)
    throw std::invalid_argument("HomogeneousPolynomial: z-power in 2D polynomial");
  if (c == 0)
    terms_.erase(e);
  else
    terms_[e] = std::move(c);
}

void HomogeneousPolynomial::add_term(Exponents e, const Rational& c) {
  auto it = terms_.find(e);
  Rational v = (it == terms_.end() ? Rational(0) : it->second) + c;
  set(e, std::move(v));
}

HomogeneousPolynomial HomogeneousPolynomial::operator+(
    const HomogeneousPolynomial& o) const {
  if (o.degree_ != degree_ || o.dim_ != dim_)
    throw std::invalid_argument("HomogeneousPolynomial: degree/dim mismatch in +");
  HomogeneousPolynomial out = *this;
  for (const auto& [e, c] : o.terms_) out.add_term(e, c);
  return out;
}

HomogeneousPolynomial HomogeneousPolynomial::operator-(
    const HomogeneousPolynomial& o) const {
  return *this + o.scaled(Rational(-1));
}

HomogeneousPolynomial HomogeneousPolynomial::scaled(const Rational& c) const {
  HomogeneousPolynomial out(degree_, dim_);
  if (c == 0) return out;
  for (const auto& [e, v] : terms_) out.set(e, v * c);
  return out;
}

HomogeneousPolynomial HomogeneousPolynomial::times_r2() const {
  HomogeneousPolynomial out(degree_ + 2, dim_);
  for (const auto& [e, c] : terms_)
    for (int k = 0; k < dim_; ++k) {
      Exponents e2 = e;
      e2[k] += 2;
      out.add_term(e2, c);
    }
  return out;
}

HomogeneousPolynomial HomogeneousPolynomial::laplacian() const {
  HomogeneousPolynomial out(std::max(degree_ - 2, 0), dim_);
  if (degree_ < 2) return out;
  for (const auto& [e, c] : terms_)
    for (int k = 0; k < dim_; ++k)
      if (e[k] >= 2) {
        Exponents e2 = e;
        e2[k] -= 2;
        out.add_term(e2, c * e[k] * (e[k] - 1));
      }
  return out;
}

double HomogeneousPolynomial::eval(double x, double y, double z) const {
  double sum = 0.0;
  for (const auto& [e, c] : terms_) {
    double t = double(c);
    for (int k = 0; k < e[0]; ++k) t *= x;
    for (int k = 0; k < e[1]; ++k) t *= y;
    for (int k = 0; k < e[2]; ++k) t *= z;
    sum += t;
  }
  return sum;
}

std::vector<HomogeneousPolynomial> harmonic_decompose(
    const HomogeneousPolynomial& f) {
  const int n = f.degree();
  const int d = f.dim();
  std::vector<HomogeneousPolynomial> out;
  if (n <= 1) {
    if (!f.is_zero()) out.push_back(f);
    return out;
  }

  // Solve laplacian(|x|^2 G) = laplacian(F) for G of degree n-2, exactly.
  const auto basis = monomial_basis(n - 2, d);
  const auto rows = monomial_basis(n - 2, d);
  const std::size_t m = basis.size();
  std::map<Exponents, std::size_t> row_of;
  for (std::size_t r = 0; r < rows.size(); ++r) row_of[rows[r]] = r;

  std::vector<std::vector<Rational>> a(m, std::vector<Rational>(m + 1, 0));
  for (std::size_t col = 0; col < m; ++col) {
    auto img = HomogeneousPolynomial::monomial(d, basis[col]).times_r2().laplacian();
    for (const auto& [e, c] : img.terms()) a[row_of.at(e)][col] = c;
  }
  const auto rhs = f.laplacian();
  for (const auto& [e, c] : rhs.terms()) a[row_of.at(e)][m] = c;

  // Rational Gaussian elimination with partial (nonzero) pivoting.
  for (std::size_t col = 0, row = 0; col < m && row < m; ++col, ++row) {
    std::size_t piv = row;
    while (piv < m && a[piv][col] == 0) ++piv;
    if (piv == m) throw std::runtime_error("harmonic_decompose: singular system");
    std::swap(a[piv], a[row]);
    for (std::size_t r = 0; r < m; ++r) {
      if (r == row || a[r][col] == 0) continue;
      Rational factor = a[r][col] / a[row][col];
      for (std::size_t c = col; c <= m; ++c) a[r][c] -= factor * a[row][c];
    }
  }
  HomogeneousPolynomial g(n - 2, d);
  for (std::size_t r = 0; r < m; ++r)
    g.add_term(basis[r], a[r][m] / a[r][r]);

  HomogeneousPolynomial head = f - g.times_r2();
  if (!head.laplacian().is_zero())
    throw std::runtime_error("harmonic_decompose: head not harmonic");
  if (!head.is_zero()) out.push_back(head);
  auto tail = harmonic_decompose(g);
  out.insert(out.end(), tail.begin(), tail.end());
  return out;
}

}  // namespace uclab
