#include "uclab/model_spectra.hpp"

#include <cmath>
#include <stdexcept>

#include "uclab/bessel.hpp"

namespace uclab {

double SphereField::inner(const SphereField& o) const {
  if (values.size() != o.values.size())
    throw std::invalid_argument("SphereField::inner: grid mismatch");
  double s = 0.0;
  for (std::size_t k = 0; k < values.size(); ++k)
    s += values[k] * o.values[k] * weights[k];
  return s;
}

ModelEigenfunction disk_eigenfunction(int n, int k, double a, double b,
                                      GridSpec grid) {
  if (n < 0 || k < 1) throw std::invalid_argument("disk_eigenfunction: bad mode");
  if (a == 0.0 && b == 0.0)
    throw std::invalid_argument("disk_eigenfunction: zero amplitude pair");
  const double j = bessel_zero(double(n), k);
  ModelEigenfunction out;
  out.domain = ModelDomain::disk;
  out.mode = {n};
  out.radial_index = k;
  out.amp_a = a;
  out.amp_b = b;
  out.lambda = j * j;
  out.analytic = [n, j, a, b](double x, double y) {
    const double rho = std::hypot(x, y);
    if (rho >= 1.0 - 1e-12) return 0.0;  // Dirichlet boundary, exactly
    const double th = std::atan2(y, x);
    return eval_bessel(double(n), j * rho) *
           (a * std::cos(n * th) + b * std::sin(n * th));
  };
  out.field = ScalarField::sample(grid, out.analytic);
  return out;
}

ModelEigenfunction torus_eigenfunction(const std::vector<int>& n, GridSpec grid,
                                       int samples, bool sine) {
  if (n.empty() || n.size() > 2)
    throw std::invalid_argument("torus_eigenfunction: d must be 1 or 2");
  ModelEigenfunction out;
  out.mode = n;
  double lambda = 0.0;
  for (int nj : n) lambda += double(nj) * double(nj);
  out.lambda = lambda;
  if (n.size() == 1) {
    out.domain = ModelDomain::circle;
    const int n0 = n[0];
    out.analytic = [n0, sine](double theta, double) {
      return sine ? std::sin(n0 * theta) : std::cos(n0 * theta);
    };
    out.circle.values.resize(samples);
    for (int s = 0; s < samples; ++s)
      out.circle.values[s] = out.analytic(out.circle.theta(s), 0.0);
  } else {
    out.domain = ModelDomain::torus;
    const int n0 = n[0], n1 = n[1];
    out.analytic = [n0, n1, sine](double x, double y) {
      const double p = n0 * x + n1 * y;
      return sine ? std::sin(p) : std::cos(p);
    };
    out.field = ScalarField::sample(grid, out.analytic);
  }
  return out;
}

ModelEigenfunction sphere_harmonic(const HomogeneousPolynomial& h,
                                   SphereGridSpec grid) {
  if (h.dim() != 3)
    throw std::invalid_argument("sphere_harmonic: polynomial must have 3 variables");
  if (!h.laplacian().is_zero())
    throw std::invalid_argument(
        "sphere_harmonic: polynomial is not harmonic (decompose it first)");
  const int n = h.degree();
  ModelEigenfunction out;
  out.domain = ModelDomain::sphere;
  out.mode = {n};
  out.lambda = double(n) * double(n + 1);
  out.sphere.grid = grid;
  out.sphere.values.resize(std::size_t(grid.ntheta) * grid.nphi);
  out.sphere.weights.resize(out.sphere.values.size());
  const double dth = M_PI / (grid.ntheta - 1);
  const double dph = 2.0 * M_PI / grid.nphi;
  for (int i = 0; i < grid.ntheta; ++i) {
    const double th = out.sphere.theta(i);
    const double wrow = (i == 0 || i == grid.ntheta - 1) ? 0.5 : 1.0;
    for (int j = 0; j < grid.nphi; ++j) {
      const double ph = out.sphere.phi(j);
      const std::size_t idx = std::size_t(i) * grid.nphi + j;
      out.sphere.values[idx] = h.eval(std::sin(th) * std::cos(ph),
                                      std::sin(th) * std::sin(ph), std::cos(th));
      out.sphere.weights[idx] = wrow * std::sin(th) * dth * dph;
    }
  }
  return out;
}

LiftedSolution lift(const ModelEigenfunction& phi, double t_min, double t_max,
                    GridSpec grid) {
  if (phi.lambda < 0.0) throw std::invalid_argument("lift: negative eigenvalue");
  LiftedSolution out;
  out.lambda = phi.lambda;
  out.t_min = t_min;
  out.t_max = t_max;
  out.base = phi.analytic;
  const double root = std::sqrt(phi.lambda);
  const Field2 base = phi.analytic;
  if (phi.domain == ModelDomain::circle) {
    out.h2 = [base, root](double theta, double t) {
      return base(theta, 0.0) * std::exp(root * t);
    };
    out.sampled = ScalarField::sample(grid, out.h2);
  } else if (phi.domain == ModelDomain::torus || phi.domain == ModelDomain::disk) {
    out.h3 = [base, root](double x, double y, double t) {
      return base(x, y) * std::exp(root * t);
    };
  } else {
    throw std::invalid_argument("lift: sphere lift not supported");
  }
  return out;
}

namespace {

double torus_residual(const ScalarField& f, double lambda) {
  const GridSpec& g = f.spec();
  // periodic in both directions: last column duplicates x = -pi + 2pi
  const int nx = g.nx - 1, ny = g.ny - 1;
  const double h2 = g.h * g.h;
  double num = 0.0, den = 0.0;
  auto v = [&](int i, int j) {
    return f.at(((i % nx) + nx) % nx, ((j % ny) + ny) % ny);
  };
  for (int j = 0; j < ny; ++j)
    for (int i = 0; i < nx; ++i) {
      const double lap =
          (v(i + 1, j) + v(i - 1, j) + v(i, j + 1) + v(i, j - 1) - 4 * v(i, j)) / h2;
      const double r = lap + lambda * v(i, j);
      num += r * r;
      den += v(i, j) * v(i, j);
    }
  return std::sqrt(num / (den + 1e-300)) / (lambda + 1e-300);
}

double circle_residual(const CircleField& f, double lambda) {
  const int n = f.size();
  const double h = 2.0 * M_PI / n;
  double num = 0.0, den = 0.0;
  for (int i = 0; i < n; ++i) {
    const double lap =
        (f.values[(i + 1) % n] + f.values[(i + n - 1) % n] - 2 * f.values[i]) /
        (h * h);
    const double r = lap + lambda * f.values[i];
    num += r * r;
    den += f.values[i] * f.values[i];
  }
  return std::sqrt(num / (den + 1e-300)) / (lambda + 1e-300);
}

double disk_residual(const ScalarField& f, double lambda) {
  const GridSpec& g = f.spec();
  const double h2 = g.h * g.h;
  double num = 0.0, den = 0.0;
  for (int j = 1; j + 1 < g.ny; ++j)
    for (int i = 1; i + 1 < g.nx; ++i) {
      const double x = g.x(i), y = g.y(j);
      if (std::hypot(x, y) > 1.0 - 2.5 * g.h) continue;
      const double lap = (f.at(i + 1, j) + f.at(i - 1, j) + f.at(i, j + 1) +
                          f.at(i, j - 1) - 4 * f.at(i, j)) /
                         h2;
      const double r = lap + lambda * f.at(i, j);
      num += r * r;
      den += f.at(i, j) * f.at(i, j);
    }
  return std::sqrt(num / (den + 1e-300)) / (lambda + 1e-300);
}

double sphere_residual(const SphereField& f, double lambda) {
  const int nt = f.grid.ntheta, np = f.grid.nphi;
  const double dth = M_PI / (nt - 1);
  const double dph = 2.0 * M_PI / np;
  double num = 0.0, den = 0.0;
  auto v = [&](int i, int j) { return f.values[std::size_t(i) * np + ((j % np) + np) % np]; };
  for (int i = 2; i + 2 < nt; ++i) {
    const double th = f.theta(i);
    const double s = std::sin(th), c = std::cos(th);
    for (int j = 0; j < np; ++j) {
      const double dtheta = (v(i + 1, j) - v(i - 1, j)) / (2 * dth);
      const double dtheta2 = (v(i + 1, j) - 2 * v(i, j) + v(i - 1, j)) / (dth * dth);
      const double dphi2 = (v(i, j + 1) - 2 * v(i, j) + v(i, j - 1)) / (dph * dph);
      const double lap = dtheta2 + (c / s) * dtheta + dphi2 / (s * s);
      const double r = lap + lambda * v(i, j);
      num += r * r;
      den += v(i, j) * v(i, j);
    }
  }
  return std::sqrt(num / (den + 1e-300)) / (lambda + 1e-300);
}

}  // namespace

double eigen_residual(const ModelEigenfunction& phi) {
  switch (phi.domain) {
    case ModelDomain::circle:
      return circle_residual(phi.circle, phi.lambda);
    case ModelDomain::torus:
      return torus_residual(phi.field, phi.lambda);
    case ModelDomain::disk:
      return disk_residual(phi.field, phi.lambda);
    case ModelDomain::sphere:
      return sphere_residual(phi.sphere, phi.lambda);
  }
  return 0.0;
}

}  // namespace uclab
