#pragma once

#include <Eigen/Sparse>
#include <functional>
#include <optional>

#include "uclab/field.hpp"
#include "uclab/geometry.hpp"

namespace uclab {

/// Symmetric 2x2 coefficient matrix sampled per node.
/// Convention: a(x) = [[a11, a12], [a12, a22]].
class CoefficientMatrixField {
 public:
  CoefficientMatrixField(GridSpec spec, std::vector<double> a11,
                         std::vector<double> a12, std::vector<double> a22,
                         double ellipticity, double lipschitz);

  static CoefficientMatrixField identity(GridSpec spec);
  static CoefficientMatrixField constant(GridSpec spec, double a11, double a12,
                                         double a22);
  /// A(x) = I + eps * B(x) with B built from smooth trig bumps; seeded.
  static CoefficientMatrixField perturbed_identity(GridSpec spec, double eps,
                                                   unsigned seed);

  const GridSpec& spec() const { return spec_; }
  double a11(int i, int j) const { return a11_[spec_.idx(i, j)]; }
  double a12(int i, int j) const { return a12_[spec_.idx(i, j)]; }
  double a22(int i, int j) const { return a22_[spec_.idx(i, j)]; }
  double ellipticity() const { return ellipticity_; }
  double lipschitz() const { return lipschitz_; }

  /// Matrix at an off-node point by bilinear interpolation of entries.
  std::array<double, 3> interp(double x, double y) const;

  /// Largest violation of Lambda^-1 |v|^2 <= (Av,v) <= Lambda |v|^2 over
  /// basis and seeded random directions (0 when the bound holds).
  double ellipticity_violation(int random_dirs = 16, unsigned seed = 7) const;
  /// Largest |a_ij(x)-a_ij(y)|/|x-y| over grid-neighbor pairs.
  double observed_lipschitz() const;

 private:
  GridSpec spec_;
  std::vector<double> a11_, a12_, a22_;
  double ellipticity_;
  double lipschitz_;
};

/// Sparse symmetric positive-semidefinite operator: L = -div(A grad .)
/// with Dirichlet (zero-exterior) boundary, scaled by 1/h^2.
struct SparseSymmetricOperator {
  Eigen::SparseMatrix<double> matrix;
  GridDomain domain;

  int dimension() const { return int(matrix.rows()); }
  /// Max |m(i,j) - m(j,i)| over stored entries.
  double symmetry_defect() const;
};

SparseSymmetricOperator assemble_dirichlet(const GridDomain& domain);
SparseSymmetricOperator assemble_divergence_form(const GridDomain& domain,
                                                 const CoefficientMatrixField& a);

struct EigenPair {
  double lambda = 0.0;
  ScalarField vec;  // zero outside the mask, unit L2 (grid-weighted)
  double residual = 0.0;
};

struct EigensolveOptions {
  double tol = 1e-9;
  int max_iterations = 400;
};

/// k smallest eigenpairs by subspace iteration on L^-1 (sparse Cholesky).
std::vector<EigenPair> eigensolve(const SparseSymmetricOperator& op, int k,
                                  const EigensolveOptions& opts = {});

/// Dirichlet boundary-value solve: interior nodes satisfy the stencil,
/// exterior nodes next to the interior carry g; returned field holds the
/// boundary values on that ring.
ScalarField solve_dirichlet(const GridDomain& domain,
                            const CoefficientMatrixField& a, const Field2& g);

/// Discrete Rayleigh quotient: forward-difference Dirichlet energy over mass.
double rayleigh_quotient(const ScalarField& u, const GridDomain& domain);

struct MonotonicityResult {
  double lambda_inner = 0.0;
  double lambda_outer = 0.0;
  bool pass = false;
};
MonotonicityResult domain_monotonicity_check(const GridDomain& inner,
                                             const GridDomain& outer,
                                             double tol = 1e-9);

/// sup_B u / inf_B u for positive u; throws if u <= 0 somewhere on 2B.
double harnack_ratio(const ScalarField& u, const Ball& b);

struct OscillationResult {
  double ratio = 0.0;
  bool degenerate = false;  // osc_Q == 0 (ratio reported as 0)
};
OscillationResult oscillation_ratio(const ScalarField& u, const Cube& q, double s);

struct CaccioppoliResult {
  double lhs = 0.0;   // Dirichlet energy on B_r
  double rhs = 0.0;   // mass on B_R / (R-r)^2
  double ratio = 0.0;
  bool pass = false;
};
CaccioppoliResult caccioppoli_check(const ScalarField& u, const Ball& center_r,
                                    double big_radius, double frozen_c);

}  // namespace uclab
