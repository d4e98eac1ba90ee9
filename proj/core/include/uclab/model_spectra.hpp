#pragma once

#include <functional>
#include <vector>

#include "uclab/field.hpp"
#include "uclab/geometry.hpp"
#include "uclab/polynomialnd.hpp"

namespace uclab {

enum class ModelDomain { circle, torus, sphere, disk };

/// Samples of a function on [0, 2pi), periodic.
struct CircleField {
  std::vector<double> values;
  double theta(int k) const { return 2.0 * M_PI * k / double(values.size()); }
  int size() const { return int(values.size()); }
};

struct SphereGridSpec {
  int ntheta = 256;  // polar nodes, including both poles
  int nphi = 512;    // azimuthal nodes
};

/// Equiangular latitude-longitude samples with sin(theta) quadrature
/// weights; pole rows carry half weight.
struct SphereField {
  SphereGridSpec grid;
  std::vector<double> values;   // ntheta * nphi, row-major in theta
  std::vector<double> weights;  // same layout

  double theta(int i) const { return M_PI * i / double(grid.ntheta - 1); }
  double phi(int j) const { return 2.0 * M_PI * j / double(grid.nphi); }
  double inner(const SphereField& o) const;
  double norm() const { return std::sqrt(inner(*this)); }
};

struct ModelEigenfunction {
  ModelDomain domain = ModelDomain::torus;
  std::vector<int> mode;       // integer mode vector
  int radial_index = 0;        // k for the disk
  double amp_a = 1.0, amp_b = 0.0;
  double lambda = 0.0;

  Field2 analytic;             // torus(d=2)/disk: (x, y); circle: (theta, _)
  ScalarField field;           // sampled 2D field (empty for sphere)
  CircleField circle;          // only for the circle
  SphereField sphere;          // only for the sphere
};

struct LiftedSolution {
  double lambda = 0.0;
  double t_min = 0.0, t_max = 0.0;
  /// Base eigenfunction evaluator (same convention as ModelEigenfunction).
  Field2 base;
  /// h(x, t) = base(x) * exp(sqrt(lambda) t); for a circle base, x = theta.
  std::function<double(double, double)> h2;          // 1D base
  std::function<double(double, double, double)> h3;  // 2D base
  ScalarField sampled;  // (x=theta, y=t) grid for 1D bases
};

/// J_n(j_{n,k} rho) (a cos n theta + b sin n theta) on the unit disk,
/// eigenvalue j_{n,k}^2, sampled on the Cartesian grid (0 outside disk).
ModelEigenfunction disk_eigenfunction(int n, int k, double a, double b,
                                      GridSpec grid);

/// Real part of exp(i n.x) on the d-torus (d = 1 or 2); eigenvalue sum n_j^2.
/// d = 1 uses `samples` points on [0, 2pi); d = 2 samples grid over
/// [-pi, pi]^2.
ModelEigenfunction torus_eigenfunction(const std::vector<int>& n, GridSpec grid,
                                       int samples = 4096, bool sine = false);

/// Restriction of a harmonic homogeneous polynomial in 3 variables to S^2;
/// eigenvalue n(n+1). Throws if the polynomial is not harmonic.
ModelEigenfunction sphere_harmonic(const HomogeneousPolynomial& h,
                                   SphereGridSpec grid);

LiftedSolution lift(const ModelEigenfunction& phi, double t_min, double t_max,
                    GridSpec grid);

/// Relative L2 residual of the domain's discrete Laplacian applied to the
/// sampled field: || L_h u + lambda u || / (lambda ||u|| + eps).
/// Disk excludes the ring next to the boundary; sphere excludes pole rows.
double eigen_residual(const ModelEigenfunction& phi);

}  // namespace uclab
