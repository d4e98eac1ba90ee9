#include "uclab/geometry.hpp"

#include <numeric>

namespace uclab {

GridDomain::GridDomain(GridSpec spec, std::vector<std::uint8_t> mask)
    : spec_(spec), mask_(std::move(mask)) {
  if (mask_.size() != spec_.size())
    throw std::invalid_argument("GridDomain: mask size mismatch");
  build_index();
  if (interior_count_ == 0)
    throw std::invalid_argument("GridDomain: empty interior");
}

GridDomain GridDomain::full_interior(GridSpec spec) {
  std::vector<std::uint8_t> mask(spec.size(), 0);
  for (int j = 1; j + 1 < spec.ny; ++j)
    for (int i = 1; i + 1 < spec.nx; ++i) mask[spec.idx(i, j)] = 1;
  return GridDomain(spec, std::move(mask));
}

GridDomain GridDomain::disk(GridSpec spec, const Ball& ball) {
  std::vector<std::uint8_t> mask(spec.size(), 0);
  for (int j = 0; j < spec.ny; ++j)
    for (int i = 0; i < spec.nx; ++i) {
      const double dx = spec.x(i) - ball.cx, dy = spec.y(j) - ball.cy;
      if (dx * dx + dy * dy < ball.r * ball.r) mask[spec.idx(i, j)] = 1;
    }
  return GridDomain(spec, std::move(mask));
}

void GridDomain::build_index() {
  unknown_.assign(spec_.size(), -1);
  nodes_.clear();
  for (int j = 0; j < spec_.ny; ++j)
    for (int i = 0; i < spec_.nx; ++i)
      if (mask_[spec_.idx(i, j)]) {
        unknown_[spec_.idx(i, j)] = std::int64_t(nodes_.size());
        nodes_.emplace_back(i, j);
      }
  interior_count_ = nodes_.size();

  // 4-connected components via union-find over interior nodes.
  std::vector<std::size_t> parent(interior_count_);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](std::size_t a) {
    while (parent[a] != a) a = parent[a] = parent[parent[a]];
    return a;
  };
  for (std::size_t k = 0; k < interior_count_; ++k) {
    auto [i, j] = nodes_[k];
    if (interior(i + 1, j)) {
      auto a = find(k), b = find(std::size_t(unknown_[spec_.idx(i + 1, j)]));
      if (a != b) parent[a] = b;
    }
    if (interior(i, j + 1)) {
      auto a = find(k), b = find(std::size_t(unknown_[spec_.idx(i, j + 1)]));
      if (a != b) parent[a] = b;
    }
  }
  components_.assign(interior_count_, -1);
  component_count_ = 0;
  std::vector<std::int64_t> label(interior_count_, -1);
  for (std::size_t k = 0; k < interior_count_; ++k) {
    std::size_t root = find(k);
    if (label[root] < 0) label[root] = component_count_++;
    components_[k] = int(label[root]);
  }
}

GridDomain GridDomain::component_domain(int wanted) const {
  std::vector<std::uint8_t> mask(spec_.size(), 0);
  for (std::size_t k = 0; k < interior_count_; ++k)
    if (components_[k] == wanted) {
      auto [i, j] = nodes_[k];
      mask[spec_.idx(i, j)] = 1;
    }
  return GridDomain(spec_, std::move(mask));
}

}  // namespace uclab
