#pragma once

#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "uclab/geometry.hpp"

namespace uclab {

/// Real analytic field on the plane, used for closed-form eigenfunctions
/// and lifted solutions.
using Field2 = std::function<double(double, double)>;

/// Sampled real field on a node grid. Values are stored for every node;
/// nodes outside the mask of a Dirichlet domain carry zeros (or boundary
/// data after a boundary-value solve).
class ScalarField {
 public:
  ScalarField() = default;
  ScalarField(GridSpec spec, std::vector<double> values);

  static ScalarField sample(GridSpec spec, const Field2& f);
  static ScalarField zeros(GridSpec spec);

  const GridSpec& spec() const { return spec_; }
  const std::vector<double>& values() const { return values_; }
  std::vector<double>& values() { return values_; }
  double at(int i, int j) const { return values_[spec_.idx(i, j)]; }
  double& at(int i, int j) { return values_[spec_.idx(i, j)]; }

  /// Bilinear interpolation; clamps to the grid box.
  double interp(double x, double y) const;

  double sup_norm() const;
  /// sqrt(sum v^2 h^2): discrete L2 norm over the whole grid.
  double l2_norm() const;

  /// Max of |v| over nodes whose positions lie in the region.
  double max_abs_ball(const Ball& b) const;
  double max_abs_cube(const Cube& q) const;
  double min_ball(const Ball& b) const;
  double max_ball(const Ball& b) const;
  double min_cube(const Cube& q) const;
  double max_cube(const Cube& q) const;

  /// Central-difference gradient at interior node.
  std::pair<double, double> gradient(int i, int j) const;

  /// Restriction to every stride-th node (same physical extent).
  ScalarField coarsened(int stride) const;

 private:
  template <class Fold>
  double fold_ball(const Ball& b, double init, Fold f) const;
  template <class Fold>
  double fold_cube(const Cube& q, double init, Fold f) const;

  GridSpec spec_;
  std::vector<double> values_;
};

/// O(1) max-|value| queries over node index rectangles (2D sparse table).
/// Backs the subcube suprema in the doubling-index machinery.
class RangeMaxTable {
 public:
  explicit RangeMaxTable(const ScalarField& field);

  /// Max of |v| over nodes with i in [i0, i1], j in [j0, j1] (clamped).
  double max_abs(int i0, int j0, int i1, int j1) const;
  /// Max of |v| over nodes inside the cube.
  double max_abs_cube(const Cube& q) const;

 private:
  const GridSpec spec_;
  int levels_i_ = 0, levels_j_ = 0;
  std::vector<std::vector<double>> table_;  // table_[ki*levels_j_+kj]
};

/// Max of |f| over a disk by dense polar sampling (radial x angular nodes).
double max_abs_ball_analytic(const Field2& f, const Ball& b, int nr = 512,
                             int ntheta = 1024);

}  // namespace uclab
