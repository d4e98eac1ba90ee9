#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <vector>

namespace uclab {

struct Point {
  double x = 0.0;
  double y = 0.0;
};

/// Closed disk {|p - c| <= r}.
struct Ball {
  double cx = 0.0;
  double cy = 0.0;
  double r = 0.0;

  Ball scaled(double factor) const { return {cx, cy, r * factor}; }
  bool contains(double x, double y) const {
    const double dx = x - cx, dy = y - cy;
    return dx * dx + dy * dy <= r * r;
  }
};

/// Axis-aligned square, side s = 2*half, centered at (cx, cy).
struct Cube {
  double cx = 0.0;
  double cy = 0.0;
  double half = 0.0;

  double side() const { return 2.0 * half; }
  double area() const { return side() * side(); }
  Cube scaled(double factor) const { return {cx, cy, half * factor}; }
  bool contains(double x, double y) const {
    return std::abs(x - cx) <= half && std::abs(y - cy) <= half;
  }
  bool inside(const Cube& outer) const {
    return std::abs(cx - outer.cx) + half <= outer.half + 1e-12 &&
           std::abs(cy - outer.cy) + half <= outer.half + 1e-12;
  }
};

/// Node-based uniform grid: node (i, j) sits at (x0 + i*h, y0 + j*h),
/// 0 <= i < nx, 0 <= j < ny.
struct GridSpec {
  int nx = 0;
  int ny = 0;
  double x0 = 0.0;
  double y0 = 0.0;
  double h = 1.0;

  std::size_t size() const { return std::size_t(nx) * std::size_t(ny); }
  std::size_t idx(int i, int j) const { return std::size_t(j) * nx + i; }
  double x(int i) const { return x0 + i * h; }
  double y(int j) const { return y0 + j * h; }
  bool valid(int i, int j) const { return i >= 0 && i < nx && j >= 0 && j < ny; }

  /// Square [a,b]^2 sampled with n nodes per side.
  static GridSpec square(double a, double b, int n) {
    if (n < 2) throw std::invalid_argument("GridSpec: need at least 2 nodes");
    return {n, n, a, a, (b - a) / (n - 1)};
  }
};

/// Masked grid: mask[idx] != 0 marks interior (unknown) nodes.
class GridDomain {
 public:
  GridDomain() = default;
  GridDomain(GridSpec spec, std::vector<std::uint8_t> mask);

  /// All nodes interior except the outermost ring.
  static GridDomain full_interior(GridSpec spec);
  /// Nodes strictly inside the disk are interior.
  static GridDomain disk(GridSpec spec, const Ball& ball);

  const GridSpec& spec() const { return spec_; }
  const std::vector<std::uint8_t>& mask() const { return mask_; }
  bool interior(int i, int j) const {
    return spec_.valid(i, j) && mask_[spec_.idx(i, j)] != 0;
  }
  std::size_t interior_count() const { return interior_count_; }

  /// Dense node index -> interior unknown index, or -1.
  const std::vector<std::int64_t>& unknown_index() const { return unknown_; }
  /// Unknown index -> (i, j).
  const std::vector<std::pair<int, int>>& unknown_nodes() const { return nodes_; }

  /// Labels of 4-connected interior components; count in component_count().
  const std::vector<int>& components() const { return components_; }
  int component_count() const { return component_count_; }

  /// Sub-domain restricted to one 4-connected component.
  GridDomain component_domain(int label) const;

 private:
  void build_index();

  GridSpec spec_;
  std::vector<std::uint8_t> mask_;
  std::vector<std::int64_t> unknown_;
  std::vector<std::pair<int, int>> nodes_;
  std::vector<int> components_;
  std::size_t interior_count_ = 0;
  int component_count_ = 0;
};

}  // namespace uclab
