#pragma once

#include <vector>

#include "uclab/field.hpp"
#include "uclab/geometry.hpp"
#include "uclab/model_spectra.hpp"

namespace uclab {

struct Segment {
  Point a, b;
  double length() const { return std::hypot(b.x - a.x, b.y - a.y); }
};

/// Piecewise-linear contour of {u = 0} from marching squares.
struct NodalSet {
  std::vector<Segment> segments;
  double total_length = 0.0;
  bool perturbed = false;  // exact zeros nudged by the documented epsilon
};

/// Ambiguous saddle cells resolved by the cell-center sample. When `dom`
/// is given, only cells with all four corners interior are contoured.
NodalSet extract_zero_set(const ScalarField& u,
                          const GridDomain* dom = nullptr);

/// Per-node sign components (4-connected); zero nodes belong to neither sign.
struct NodalDomainLabeling {
  GridSpec spec;
  std::vector<int> labels;  // per node, -1 for zero nodes
  std::vector<int> signs;   // per component, +1 or -1
  int count = 0;
};

NodalDomainLabeling label_nodal_domains(const ScalarField& u);
int count_nodal_domains(const ScalarField& u);
/// Cyclic sign-run count for circle samples (2n for cos(n theta)).
int count_nodal_intervals(const CircleField& f);

/// Max over interior sample nodes of (approximate) distance to Z(phi).
/// Exact for the circle; grid Dijkstra distance transform otherwise.
/// Throws for lambda <= 0.
double zero_density_radius(const ModelEigenfunction& phi);

struct YauFit {
  double slope = 0.0;  // log length vs log lambda
  double c1 = 0.0;     // min length / sqrt(lambda)
  double c2 = 0.0;     // max length / sqrt(lambda)
  std::vector<double> lambdas;
  std::vector<double> lengths;
};
/// Nodal length per eigenfunction (disk members restricted away from the
/// boundary ring), then the log-log regression. Needs >= 2 distinct lambdas.
YauFit yau_scaling_fit(const std::vector<ModelEigenfunction>& family);

struct DomainEigenvalueCheck {
  double lambda1 = 0.0;
  double rel_gap = 0.0;
};
/// Dirichlet lambda_1 of one nodal component's node mask vs. lambda.
DomainEigenvalueCheck nodal_domain_eigenvalue_check(const ScalarField& u,
                                                    double lambda,
                                                    int component);

struct NodalScatter {
  std::vector<double> doubling;  // N(Q1) per family member
  std::vector<double> length;    // nodal length inside Q1
  double min_length = 0.0;
};
/// Vanishing solutions only (|h(center)| <= vanish_tol * sup); throws
/// otherwise.
NodalScatter nodal_measure_vs_doubling(const std::vector<ScalarField>& family,
                                       const Cube& q1,
                                       double vanish_tol = 1e-6);

/// log(max_{kQ}|u| / max_Q|u|) — the scaled-cube growth used by the
/// vanishing-order exercise.
double scaled_cube_log_ratio(const ScalarField& u, const Cube& q, double k);

}  // namespace uclab
