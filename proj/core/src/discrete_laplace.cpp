#include "uclab/discrete_laplace.hpp"

#include <Eigen/Dense>
#include <Eigen/SparseCholesky>
#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

namespace uclab {

CoefficientMatrixField::CoefficientMatrixField(GridSpec spec,
                                               std::vector<double> a11,
                                               std::vector<double> a12,
                                               std::vector<double> a22,
                                               double ellipticity,
                                               double lipschitz)
    : spec_(spec),
      a11_(std::move(a11)),
      a12_(std::move(a12)),
      a22_(std::move(a22)),
      ellipticity_(ellipticity),
      lipschitz_(lipschitz) {
  if (a11_.size() != spec_.size() || a12_.size() != spec_.size() ||
      a22_.size() != spec_.size())
    throw std::invalid_argument("CoefficientMatrixField: size mismatch");
  for (std::size_t k = 0; k < a11_.size(); ++k)
    if (!(a11_[k] > 0.0) || !(a11_[k] * a22_[k] - a12_[k] * a12_[k] > 0.0))
      throw std::invalid_argument("CoefficientMatrixField: matrix not positive definite");
}

CoefficientMatrixField CoefficientMatrixField::identity(GridSpec spec) {
  return constant(spec, 1.0, 0.0, 1.0);
}

CoefficientMatrixField CoefficientMatrixField::constant(GridSpec spec, double a11,
                                                        double a12, double a22) {
  const double tr = a11 + a22;
  const double det = a11 * a22 - a12 * a12;
  const double disc = std::sqrt(std::max(tr * tr / 4 - det, 0.0));
  const double lmax = tr / 2 + disc, lmin = tr / 2 - disc;
  const double lambda = std::max(lmax, 1.0 / std::max(lmin, 1e-300));
  return CoefficientMatrixField(spec, std::vector<double>(spec.size(), a11),
                                std::vector<double>(spec.size(), a12),
                                std::vector<double>(spec.size(), a22), lambda, 0.0);
}

CoefficientMatrixField CoefficientMatrixField::perturbed_identity(GridSpec spec,
                                                                  double eps,
                                                                  unsigned seed) {
  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> coef(-1.0, 1.0);
  std::uniform_int_distribution<int> freq(1, 2);
  struct Mode {
    double c;
    int p, q;
  };
  auto draw = [&] {
    std::vector<Mode> m(3);
    for (auto& mk : m) mk = {coef(rng), freq(rng), freq(rng)};
    return m;
  };
  const auto m11 = draw(), m12 = draw(), m22 = draw();
  auto bump = [](const std::vector<Mode>& m, double x, double y) {
    double s = 0.0;
    for (const auto& mk : m) s += mk.c * std::sin(mk.p * x + 0.3) * std::cos(mk.q * y - 0.2);
    return s / 3.0;
  };
  std::vector<double> a11(spec.size()), a12(spec.size()), a22(spec.size());
  for (int j = 0; j < spec.ny; ++j)
    for (int i = 0; i < spec.nx; ++i) {
      const double x = spec.x(i), y = spec.y(j);
      a11[spec.idx(i, j)] = 1.0 + eps * bump(m11, x, y);
      a12[spec.idx(i, j)] = eps * 0.5 * bump(m12, x, y);
      a22[spec.idx(i, j)] = 1.0 + eps * bump(m22, x, y);
    }
  CoefficientMatrixField out(spec, std::move(a11), std::move(a12), std::move(a22),
                             1.0 / std::max(1.0 - 2.0 * eps, 0.05), 0.0);
  out.lipschitz_ = out.observed_lipschitz();
  return out;
}

std::array<double, 3> CoefficientMatrixField::interp(double x, double y) const {
  auto lerp = [&](const std::vector<double>& arr) {
    double fi = std::clamp((x - spec_.x0) / spec_.h, 0.0, double(spec_.nx - 1));
    double fj = std::clamp((y - spec_.y0) / spec_.h, 0.0, double(spec_.ny - 1));
    int i = std::min(int(fi), spec_.nx - 2);
    int j = std::min(int(fj), spec_.ny - 2);
    const double tx = fi - i, ty = fj - j;
    auto v = [&](int a, int b) { return arr[spec_.idx(a, b)]; };
    return (1 - tx) * (1 - ty) * v(i, j) + tx * (1 - ty) * v(i + 1, j) +
           (1 - tx) * ty * v(i, j + 1) + tx * ty * v(i + 1, j + 1);
  };
  return {lerp(a11_), lerp(a12_), lerp(a22_)};
}

double CoefficientMatrixField::ellipticity_violation(int random_dirs,
                                                     unsigned seed) const {
  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> ang(0.0, 2 * M_PI);
  std::vector<std::pair<double, double>> dirs = {{1, 0}, {0, 1}};
  for (int k = 0; k < random_dirs; ++k) {
    const double t = ang(rng);
    dirs.emplace_back(std::cos(t), std::sin(t));
  }
  double worst = 0.0;
  const double lo = 1.0 / ellipticity_, hi = ellipticity_;
  for (std::size_t k = 0; k < spec_.size(); ++k)
    for (auto [vx, vy] : dirs) {
      const double q = a11_[k] * vx * vx + 2 * a12_[k] * vx * vy + a22_[k] * vy * vy;
      worst = std::max(worst, std::max(lo - q, q - hi));
    }
  return std::max(worst, 0.0);
}

double CoefficientMatrixField::observed_lipschitz() const {
  double worst = 0.0;
  auto upd = [&](const std::vector<double>& arr, std::size_t a, std::size_t b) {
    worst = std::max(worst, std::abs(arr[a] - arr[b]) / spec_.h);
  };
  for (int j = 0; j < spec_.ny; ++j)
    for (int i = 0; i < spec_.nx; ++i) {
      const std::size_t k = spec_.idx(i, j);
      if (i + 1 < spec_.nx) {
        upd(a11_, k, spec_.idx(i + 1, j));
        upd(a12_, k, spec_.idx(i + 1, j));
        upd(a22_, k, spec_.idx(i + 1, j));
      }
      if (j + 1 < spec_.ny) {
        upd(a11_, k, spec_.idx(i, j + 1));
        upd(a12_, k, spec_.idx(i, j + 1));
        upd(a22_, k, spec_.idx(i, j + 1));
      }
    }
  return worst;
}

double SparseSymmetricOperator::symmetry_defect() const {
  double worst = 0.0;
  Eigen::SparseMatrix<double> diff = Eigen::SparseMatrix<double>(matrix.transpose()) - matrix;
  for (int k = 0; k < diff.outerSize(); ++k)
    for (Eigen::SparseMatrix<double>::InnerIterator it(diff, k); it; ++it)
      worst = std::max(worst, std::abs(it.value()));
  return worst;
}

namespace {

struct BoundaryCoupling {
  std::int64_t row;
  int bi, bj;     // exterior node
  double coeff;   // matrix entry that would multiply the boundary value
};

SparseSymmetricOperator assemble_impl(const GridDomain& domain,
                                      const CoefficientMatrixField& a,
                                      std::vector<BoundaryCoupling>* couplings) {
  const GridSpec& g = domain.spec();
  const double inv_h2 = 1.0 / (g.h * g.h);
  const auto& unknown = domain.unknown_index();
  const std::int64_t n = std::int64_t(domain.interior_count());
  std::vector<Eigen::Triplet<double>> trip;
  trip.reserve(std::size_t(n) * 9);

  auto emit = [&](std::int64_t row, int i, int j, double coeff) {
    if (coeff == 0.0) return;
    if (domain.interior(i, j)) {
      trip.emplace_back(int(row), int(unknown[g.idx(i, j)]), coeff);
    } else if (couplings) {
      couplings->push_back({row, i, j, coeff});
    }
  };

  for (std::int64_t row = 0; row < n; ++row) {
    auto [i, j] = domain.unknown_nodes()[std::size_t(row)];
    const double ae = 0.5 * (a.a11(i, j) + a.a11(std::min(i + 1, g.nx - 1), j));
    const double aw = 0.5 * (a.a11(i, j) + a.a11(std::max(i - 1, 0), j));
    const double an = 0.5 * (a.a22(i, j) + a.a22(i, std::min(j + 1, g.ny - 1)));
    const double as = 0.5 * (a.a22(i, j) + a.a22(i, std::max(j - 1, 0)));
    trip.emplace_back(int(row), int(row), (ae + aw + an + as) * inv_h2);
    emit(row, i + 1, j, -ae * inv_h2);
    emit(row, i - 1, j, -aw * inv_h2);
    emit(row, i, j + 1, -an * inv_h2);
    emit(row, i, j - 1, -as * inv_h2);
    // mixed d/dx(a12 d/dy) + d/dy(a12 d/dx), symmetric 4-corner stencil
    auto b = [&](int bi, int bj) {
      bi = std::clamp(bi, 0, g.nx - 1);
      bj = std::clamp(bj, 0, g.ny - 1);
      return a.a12(bi, bj);
    };
    const double q = 0.25 * inv_h2;
    emit(row, i + 1, j + 1, -q * (b(i + 1, j) + b(i, j + 1)));
    emit(row, i - 1, j - 1, -q * (b(i - 1, j) + b(i, j - 1)));
    emit(row, i + 1, j - 1, q * (b(i + 1, j) + b(i, j - 1)));
    emit(row, i - 1, j + 1, q * (b(i - 1, j) + b(i, j + 1)));
  }
  SparseSymmetricOperator op{Eigen::SparseMatrix<double>(n, n), domain};
  op.matrix.setFromTriplets(trip.begin(), trip.end());
  op.matrix.makeCompressed();
  return op;
}

}  // namespace

SparseSymmetricOperator assemble_dirichlet(const GridDomain& domain) {
  return assemble_impl(domain, CoefficientMatrixField::identity(domain.spec()),
                       nullptr);
}

SparseSymmetricOperator assemble_divergence_form(const GridDomain& domain,
                                                 const CoefficientMatrixField& a) {
  if (a.ellipticity_violation() > 1e-12)
    throw std::invalid_argument("assemble_divergence_form: ellipticity violated");
  return assemble_impl(domain, a, nullptr);
}

std::vector<EigenPair> eigensolve(const SparseSymmetricOperator& op, int k,
                                  const EigensolveOptions& opts) {
  const int n = op.dimension();
  if (k < 1 || k > n) throw std::invalid_argument("eigensolve: bad k");
  const int m = std::min(n, k + std::max(6, k / 2));

  Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>> chol(op.matrix);
  if (chol.info() != Eigen::Success)
    throw std::runtime_error("eigensolve: factorization failed");

  std::mt19937 rng(12345);
  std::normal_distribution<double> gauss;
  Eigen::MatrixXd x(n, m);
  for (int c = 0; c < m; ++c)
    for (int r = 0; r < n; ++r) x(r, c) = gauss(rng);

  Eigen::VectorXd ritz = Eigen::VectorXd::Zero(m);
  double worst_res = std::numeric_limits<double>::infinity();
  for (int iter = 0; iter < opts.max_iterations; ++iter) {
    Eigen::MatrixXd y = chol.solve(x);
    Eigen::HouseholderQR<Eigen::MatrixXd> qr(y);
    Eigen::MatrixXd q = qr.householderQ() * Eigen::MatrixXd::Identity(n, m);
    Eigen::MatrixXd h = q.transpose() * (op.matrix * q);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(0.5 * (h + h.transpose()));
    x = q * es.eigenvectors();
    ritz = es.eigenvalues();
    worst_res = 0.0;
    for (int c = 0; c < k; ++c)
      worst_res = std::max(worst_res,
                           (op.matrix * x.col(c) - ritz(c) * x.col(c)).norm());
    if (worst_res <= opts.tol * std::max(1.0, std::abs(ritz(k - 1)))) break;
  }

  std::vector<EigenPair> out;
  const GridSpec& g = op.domain.spec();
  for (int c = 0; c < k; ++c) {
    EigenPair p;
    p.lambda = ritz(c);
    p.residual = (op.matrix * x.col(c) - ritz(c) * x.col(c)).norm();
    ScalarField f = ScalarField::zeros(g);
    for (std::int64_t r = 0; r < n; ++r) {
      auto [i, j] = op.domain.unknown_nodes()[std::size_t(r)];
      f.at(i, j) = x(r, c) / g.h;  // unit discrete L2 norm
    }
    p.vec = std::move(f);
    out.push_back(std::move(p));
  }
  std::sort(out.begin(), out.end(),
            [](const EigenPair& a, const EigenPair& b) { return a.lambda < b.lambda; });
  return out;
}

ScalarField solve_dirichlet(const GridDomain& domain,
                            const CoefficientMatrixField& a, const Field2& g) {
  std::vector<BoundaryCoupling> couplings;
  SparseSymmetricOperator op = assemble_impl(domain, a, &couplings);
  const GridSpec& spec = domain.spec();
  const std::int64_t n = op.dimension();
  Eigen::VectorXd rhs = Eigen::VectorXd::Zero(n);
  ScalarField out = ScalarField::zeros(spec);
  for (const auto& c : couplings) {
    const double gv = g(spec.x(c.bi), spec.y(c.bj));
    rhs(c.row) -= c.coeff * gv;
    out.at(c.bi, c.bj) = gv;
  }
  Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>> chol(op.matrix);
  if (chol.info() != Eigen::Success)
    throw std::runtime_error("solve_dirichlet: factorization failed");
  Eigen::VectorXd u = chol.solve(rhs);
  for (std::int64_t r = 0; r < n; ++r) {
    auto [i, j] = domain.unknown_nodes()[std::size_t(r)];
    out.at(i, j) = u(r);
  }
  return out;
}

double rayleigh_quotient(const ScalarField& u, const GridDomain& domain) {
  const GridSpec& g = u.spec();
  double energy = 0.0, mass = 0.0;
  for (int j = 0; j < g.ny; ++j)
    for (int i = 0; i < g.nx; ++i) {
      if (i + 1 < g.nx &&
          (domain.interior(i, j) || domain.interior(i + 1, j))) {
        const double d = u.at(i + 1, j) - u.at(i, j);
        energy += d * d;
      }
      if (j + 1 < g.ny &&
          (domain.interior(i, j) || domain.interior(i, j + 1))) {
        const double d = u.at(i, j + 1) - u.at(i, j);
        energy += d * d;
      }
      if (domain.interior(i, j)) mass += u.at(i, j) * u.at(i, j);
    }
  if (mass == 0.0) throw std::invalid_argument("rayleigh_quotient: zero field");
  return energy / (g.h * g.h) / mass;
}

MonotonicityResult domain_monotonicity_check(const GridDomain& inner,
                                             const GridDomain& outer, double tol) {
  MonotonicityResult res;
  res.lambda_inner = eigensolve(assemble_dirichlet(inner), 1)[0].lambda;
  res.lambda_outer = eigensolve(assemble_dirichlet(outer), 1)[0].lambda;
  res.pass = res.lambda_inner >= res.lambda_outer - tol;
  return res;
}

double harnack_ratio(const ScalarField& u, const Ball& b) {
  const double min2 = u.min_ball(b.scaled(2.0));
  if (!(min2 > 0.0))
    throw std::invalid_argument("harnack_ratio: field not positive on 2B");
  return u.max_ball(b) / u.min_ball(b);
}

OscillationResult oscillation_ratio(const ScalarField& u, const Cube& q, double s) {
  if (!(s > 0.0 && s < 1.0)) throw std::invalid_argument("oscillation_ratio: s in (0,1)");
  const double osc_outer = u.max_cube(q) - u.min_cube(q);
  OscillationResult r;
  if (osc_outer == 0.0) {
    r.degenerate = true;
    return r;
  }
  const Cube inner{q.cx, q.cy, q.half * s};
  r.ratio = (u.max_cube(inner) - u.min_cube(inner)) / osc_outer;
  return r;
}

CaccioppoliResult caccioppoli_check(const ScalarField& u, const Ball& center_r,
                                    double big_radius, double frozen_c) {
  if (!(center_r.r < big_radius))
    throw std::invalid_argument("caccioppoli_check: need r < R");
  const GridSpec& g = u.spec();
  CaccioppoliResult res;
  const Ball big{center_r.cx, center_r.cy, big_radius};
  for (int j = 1; j + 1 < g.ny; ++j)
    for (int i = 1; i + 1 < g.nx; ++i) {
      const double x = g.x(i), y = g.y(j);
      if (center_r.contains(x, y)) {
        auto [gx, gy] = u.gradient(i, j);
        res.lhs += (gx * gx + gy * gy) * g.h * g.h;
      }
      if (big.contains(x, y)) res.rhs += u.at(i, j) * u.at(i, j) * g.h * g.h;
    }
  res.rhs /= (big_radius - center_r.r) * (big_radius - center_r.r);
  res.ratio = res.rhs > 0.0 ? res.lhs / res.rhs : 0.0;
  res.pass = res.ratio <= frozen_c;
  return res;
}

}  // namespace uclab
