#include "uclab/field.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace uclab {

ScalarField::ScalarField(GridSpec spec, std::vector<double> values)
    : spec_(spec), values_(std::move(values)) {
  if (values_.size() != spec_.size())
    throw std::invalid_argument("ScalarField: value size mismatch");
}

ScalarField ScalarField::sample(GridSpec spec, const Field2& f) {
  std::vector<double> v(spec.size());
  for (int j = 0; j < spec.ny; ++j)
    for (int i = 0; i < spec.nx; ++i) v[spec.idx(i, j)] = f(spec.x(i), spec.y(j));
  return ScalarField(spec, std::move(v));
}

ScalarField ScalarField::zeros(GridSpec spec) {
  return ScalarField(spec, std::vector<double>(spec.size(), 0.0));
}

double ScalarField::interp(double x, double y) const {
  double fi = (x - spec_.x0) / spec_.h;
  double fj = (y - spec_.y0) / spec_.h;
  fi = std::clamp(fi, 0.0, double(spec_.nx - 1));
  fj = std::clamp(fj, 0.0, double(spec_.ny - 1));
  int i = std::min(int(fi), spec_.nx - 2);
  int j = std::min(int(fj), spec_.ny - 2);
  if (spec_.nx == 1) i = 0;
  if (spec_.ny == 1) j = 0;
  const double tx = fi - i, ty = fj - j;
  const double v00 = at(i, j), v10 = at(i + 1, j);
  const double v01 = at(i, j + 1), v11 = at(i + 1, j + 1);
  return (1 - tx) * (1 - ty) * v00 + tx * (1 - ty) * v10 + (1 - tx) * ty * v01 +
         tx * ty * v11;
}

double ScalarField::sup_norm() const {
  double m = 0.0;
  for (double v : values_) m = std::max(m, std::abs(v));
  return m;
}

double ScalarField::l2_norm() const {
  double s = 0.0;
  for (double v : values_) s += v * v;
  return std::sqrt(s) * spec_.h;
}

template <class Fold>
double ScalarField::fold_ball(const Ball& b, double init, Fold f) const {
  const int i0 = std::max(0, int(std::floor((b.cx - b.r - spec_.x0) / spec_.h)));
  const int i1 = std::min(spec_.nx - 1, int(std::ceil((b.cx + b.r - spec_.x0) / spec_.h)));
  const int j0 = std::max(0, int(std::floor((b.cy - b.r - spec_.y0) / spec_.h)));
  const int j1 = std::min(spec_.ny - 1, int(std::ceil((b.cy + b.r - spec_.y0) / spec_.h)));
  double acc = init;
  for (int j = j0; j <= j1; ++j) {
    const double dy = spec_.y(j) - b.cy;
    for (int i = i0; i <= i1; ++i) {
      const double dx = spec_.x(i) - b.cx;
      if (dx * dx + dy * dy <= b.r * b.r) acc = f(acc, at(i, j));
    }
  }
  return acc;
}

template <class Fold>
double ScalarField::fold_cube(const Cube& q, double init, Fold f) const {
  const int i0 = std::max(0, int(std::ceil((q.cx - q.half - spec_.x0) / spec_.h - 1e-12)));
  const int i1 = std::min(spec_.nx - 1, int(std::floor((q.cx + q.half - spec_.x0) / spec_.h + 1e-12)));
  const int j0 = std::max(0, int(std::ceil((q.cy - q.half - spec_.y0) / spec_.h - 1e-12)));
  const int j1 = std::min(spec_.ny - 1, int(std::floor((q.cy + q.half - spec_.y0) / spec_.h + 1e-12)));
  double acc = init;
  for (int j = j0; j <= j1; ++j)
    for (int i = i0; i <= i1; ++i) acc = f(acc, at(i, j));
  return acc;
}

double ScalarField::max_abs_ball(const Ball& b) const {
  return fold_ball(b, 0.0, [](double a, double v) { return std::max(a, std::abs(v)); });
}
double ScalarField::max_abs_cube(const Cube& q) const {
  return fold_cube(q, 0.0, [](double a, double v) { return std::max(a, std::abs(v)); });
}
double ScalarField::min_ball(const Ball& b) const {
  return fold_ball(b, std::numeric_limits<double>::infinity(),
                   [](double a, double v) { return std::min(a, v); });
}
double ScalarField::max_ball(const Ball& b) const {
  return fold_ball(b, -std::numeric_limits<double>::infinity(),
                   [](double a, double v) { return std::max(a, v); });
}
double ScalarField::min_cube(const Cube& q) const {
  return fold_cube(q, std::numeric_limits<double>::infinity(),
                   [](double a, double v) { return std::min(a, v); });
}
double ScalarField::max_cube(const Cube& q) const {
  return fold_cube(q, -std::numeric_limits<double>::infinity(),
                   [](double a, double v) { return std::max(a, v); });
}

std::pair<double, double> ScalarField::gradient(int i, int j) const {
  const double inv2h = 0.5 / spec_.h;
  const int il = std::max(i - 1, 0), ir = std::min(i + 1, spec_.nx - 1);
  const int jl = std::max(j - 1, 0), jr = std::min(j + 1, spec_.ny - 1);
  const double gx = (at(ir, j) - at(il, j)) / ((ir - il) * spec_.h);
  const double gy = (at(i, jr) - at(i, jl)) / ((jr - jl) * spec_.h);
  (void)inv2h;
  return {gx, gy};
}

ScalarField ScalarField::coarsened(int stride) const {
  GridSpec c{(spec_.nx - 1) / stride + 1, (spec_.ny - 1) / stride + 1, spec_.x0,
             spec_.y0, spec_.h * stride};
  std::vector<double> v(c.size());
  for (int j = 0; j < c.ny; ++j)
    for (int i = 0; i < c.nx; ++i) v[c.idx(i, j)] = at(i * stride, j * stride);
  return ScalarField(c, std::move(v));
}

RangeMaxTable::RangeMaxTable(const ScalarField& field) : spec_(field.spec()) {
  levels_i_ = 1;
  while ((1 << levels_i_) <= spec_.nx) ++levels_i_;
  levels_j_ = 1;
  while ((1 << levels_j_) <= spec_.ny) ++levels_j_;
  table_.assign(std::size_t(levels_i_) * levels_j_, {});
  auto& base = table_[0];
  base.resize(spec_.size());
  for (std::size_t k = 0; k < spec_.size(); ++k)
    base[k] = std::abs(field.values()[k]);
  // grow along i, then along j
  for (int ki = 1; ki < levels_i_; ++ki) {
    const auto& prev = table_[std::size_t(ki - 1) * levels_j_];
    auto& cur = table_[std::size_t(ki) * levels_j_];
    cur.resize(spec_.size(), 0.0);
    const int half = 1 << (ki - 1);
    for (int j = 0; j < spec_.ny; ++j)
      for (int i = 0; i + (1 << ki) <= spec_.nx; ++i)
        cur[spec_.idx(i, j)] =
            std::max(prev[spec_.idx(i, j)], prev[spec_.idx(i + half, j)]);
  }
  for (int ki = 0; ki < levels_i_; ++ki)
    for (int kj = 1; kj < levels_j_; ++kj) {
      const auto& prev = table_[std::size_t(ki) * levels_j_ + kj - 1];
      auto& cur = table_[std::size_t(ki) * levels_j_ + kj];
      cur.resize(spec_.size(), 0.0);
      const int half = 1 << (kj - 1);
      for (int j = 0; j + (1 << kj) <= spec_.ny; ++j)
        for (int i = 0; i < spec_.nx; ++i)
          cur[spec_.idx(i, j)] =
              std::max(prev[spec_.idx(i, j)], prev[spec_.idx(i, j + half)]);
    }
}

double RangeMaxTable::max_abs(int i0, int j0, int i1, int j1) const {
  i0 = std::max(i0, 0);
  j0 = std::max(j0, 0);
  i1 = std::min(i1, spec_.nx - 1);
  j1 = std::min(j1, spec_.ny - 1);
  if (i0 > i1 || j0 > j1) return 0.0;
  int ki = 0;
  while ((2 << ki) <= i1 - i0 + 1) ++ki;
  int kj = 0;
  while ((2 << kj) <= j1 - j0 + 1) ++kj;
  const auto& t = table_[std::size_t(ki) * levels_j_ + kj];
  const int si = 1 << ki, sj = 1 << kj;
  const double a = t[spec_.idx(i0, j0)];
  const double b = t[spec_.idx(i1 - si + 1, j0)];
  const double c = t[spec_.idx(i0, j1 - sj + 1)];
  const double d = t[spec_.idx(i1 - si + 1, j1 - sj + 1)];
  return std::max(std::max(a, b), std::max(c, d));
}

double RangeMaxTable::max_abs_cube(const Cube& q) const {
  const int i0 = int(std::ceil((q.cx - q.half - spec_.x0) / spec_.h - 1e-12));
  const int i1 = int(std::floor((q.cx + q.half - spec_.x0) / spec_.h + 1e-12));
  const int j0 = int(std::ceil((q.cy - q.half - spec_.y0) / spec_.h - 1e-12));
  const int j1 = int(std::floor((q.cy + q.half - spec_.y0) / spec_.h + 1e-12));
  return max_abs(i0, j0, i1, j1);
}

double max_abs_ball_analytic(const Field2& f, const Ball& b, int nr, int ntheta) {
  double best = std::abs(f(b.cx, b.cy));
  for (int k = 0; k < ntheta; ++k) {
    const double th = 2.0 * M_PI * k / ntheta;
    const double cx = std::cos(th), sy = std::sin(th);
    for (int m = 1; m <= nr; ++m) {
      const double rho = b.r * m / nr;
      best = std::max(best, std::abs(f(b.cx + rho * cx, b.cy + rho * sy)));
    }
  }
  return best;
}

}  // namespace uclab
