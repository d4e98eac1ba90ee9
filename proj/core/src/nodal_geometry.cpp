#include "uclab/nodal_geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>
#include <stdexcept>

#include "uclab/growth_analysis.hpp"

namespace uclab {
namespace {

int sign_of(double v) { return v > 0.0 ? 1 : (v < 0.0 ? -1 : 0); }

struct UnionFind {
  std::vector<int> parent;
  explicit UnionFind(std::size_t n) : parent(n) {
    for (std::size_t i = 0; i < n; ++i) parent[i] = int(i);
  }
  int find(int a) {
    while (parent[a] != a) a = parent[a] = parent[parent[a]];
    return a;
  }
  void unite(int a, int b) { parent[find(a)] = find(b); }
};

}  // namespace

NodalSet extract_zero_set(const ScalarField& u, const GridDomain* dom) {
  const GridSpec& g = u.spec();
  NodalSet out;
  double eps = 0.0;
  for (double v : u.values())
    if (v == 0.0) {
      eps = 1e-12 * std::max(u.sup_norm(), 1e-300);
      out.perturbed = true;
      break;
    }
  auto val = [&](int i, int j) {
    const double v = u.at(i, j);
    return v == 0.0 ? eps : v;
  };

  for (int j = 0; j + 1 < g.ny; ++j)
    for (int i = 0; i + 1 < g.nx; ++i) {
      if (dom && !(dom->interior(i, j) && dom->interior(i + 1, j) &&
                   dom->interior(i, j + 1) && dom->interior(i + 1, j + 1)))
        continue;
      const double v00 = val(i, j), v10 = val(i + 1, j);
      const double v01 = val(i, j + 1), v11 = val(i + 1, j + 1);
      const double x = g.x(i), y = g.y(j), h = g.h;
      std::vector<Point> pts;
      std::vector<int> edges;  // 0 bottom, 1 right, 2 top, 3 left
      auto cross = [&](double a, double b, int edge) {
        if ((a > 0) == (b > 0)) return;
        const double t = a / (a - b);
        switch (edge) {
          case 0: pts.push_back({x + t * h, y}); break;
          case 1: pts.push_back({x + h, y + t * h}); break;
          case 2: pts.push_back({x + t * h, y + h}); break;
          default: pts.push_back({x, y + t * h}); break;
        }
        edges.push_back(edge);
      };
      cross(v00, v10, 0);
      cross(v10, v11, 1);
      cross(v01, v11, 2);
      cross(v00, v01, 3);
      if (pts.size() == 2) {
        out.segments.push_back({pts[0], pts[1]});
      } else if (pts.size() == 4) {
        // saddle: pair by the center sample
        const double center = 0.25 * (v00 + v10 + v01 + v11);
        auto at_edge = [&](int e) {
          for (std::size_t k = 0; k < edges.size(); ++k)
            if (edges[k] == e) return pts[k];
          return pts[0];
        };
        if ((center > 0) == (v00 > 0)) {
          out.segments.push_back({at_edge(0), at_edge(1)});
          out.segments.push_back({at_edge(3), at_edge(2)});
        } else {
          out.segments.push_back({at_edge(0), at_edge(3)});
          out.segments.push_back({at_edge(1), at_edge(2)});
        }
      }
    }
  for (const auto& s : out.segments) out.total_length += s.length();
  return out;
}

NodalDomainLabeling label_nodal_domains(const ScalarField& u) {
  const GridSpec& g = u.spec();
  UnionFind uf(g.size());
  for (int j = 0; j < g.ny; ++j)
    for (int i = 0; i < g.nx; ++i) {
      const int s = sign_of(u.at(i, j));
      if (s == 0) continue;
      if (i + 1 < g.nx && sign_of(u.at(i + 1, j)) == s)
        uf.unite(int(g.idx(i, j)), int(g.idx(i + 1, j)));
      if (j + 1 < g.ny && sign_of(u.at(i, j + 1)) == s)
        uf.unite(int(g.idx(i, j)), int(g.idx(i, j + 1)));
    }
  NodalDomainLabeling out;
  out.spec = g;
  out.labels.assign(g.size(), -1);
  std::vector<int> root_label(g.size(), -1);
  for (int j = 0; j < g.ny; ++j)
    for (int i = 0; i < g.nx; ++i) {
      const std::size_t k = g.idx(i, j);
      const int s = sign_of(u.values()[k]);
      if (s == 0) continue;
      const int root = uf.find(int(k));
      if (root_label[root] < 0) {
        root_label[root] = out.count++;
        out.signs.push_back(s);
      }
      out.labels[k] = root_label[root];
    }
  return out;
}

int count_nodal_domains(const ScalarField& u) {
  return label_nodal_domains(u).count;
}

int count_nodal_intervals(const CircleField& f) {
  const int n = f.size();
  int first_signed = -1;
  for (int i = 0; i < n; ++i)
    if (sign_of(f.values[i]) != 0) {
      first_signed = i;
      break;
    }
  if (first_signed < 0) return 0;
  int changes = 0;
  int prev = sign_of(f.values[first_signed]);
  for (int k = 1; k <= n; ++k) {
    const int s = sign_of(f.values[(first_signed + k) % n]);
    if (s == 0) continue;
    if (s != prev) ++changes;
    prev = s;
  }
  return changes == 0 ? 1 : changes;
}

namespace {

/// Octile-metric distance transform from all segment midpoints.
std::vector<double> distance_transform(const GridSpec& g,
                                       const std::vector<Segment>& segs) {
  const double inf = std::numeric_limits<double>::infinity();
  std::vector<double> dist(g.size(), inf);
  using Item = std::pair<double, std::size_t>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> heap;
  auto seed = [&](double x, double y) {
    const int i = std::clamp(int(std::lround((x - g.x0) / g.h)), 0, g.nx - 1);
    const int j = std::clamp(int(std::lround((y - g.y0) / g.h)), 0, g.ny - 1);
    const double d = std::hypot(x - g.x(i), y - g.y(j));
    const std::size_t k = g.idx(i, j);
    if (d < dist[k]) {
      dist[k] = d;
      heap.push({d, k});
    }
  };
  for (const auto& s : segs) {
    seed(s.a.x, s.a.y);
    seed(s.b.x, s.b.y);
    seed(0.5 * (s.a.x + s.b.x), 0.5 * (s.a.y + s.b.y));
  }
  const double diag = g.h * std::sqrt(2.0);
  while (!heap.empty()) {
    auto [d, k] = heap.top();
    heap.pop();
    if (d > dist[k]) continue;
    const int i = int(k % g.nx), j = int(k / g.nx);
    for (int dj = -1; dj <= 1; ++dj)
      for (int di = -1; di <= 1; ++di) {
        if (di == 0 && dj == 0) continue;
        if (!g.valid(i + di, j + dj)) continue;
        const double step = (di != 0 && dj != 0) ? diag : g.h;
        const std::size_t k2 = g.idx(i + di, j + dj);
        if (d + step < dist[k2]) {
          dist[k2] = d + step;
          heap.push({d + step, k2});
        }
      }
  }
  return dist;
}

}  // namespace

double zero_density_radius(const ModelEigenfunction& phi) {
  if (phi.lambda <= 0.0)
    throw std::invalid_argument("zero_density_radius: need lambda > 0");
  if (phi.domain == ModelDomain::circle) {
    const auto& f = phi.circle;
    const int n = f.size();
    std::vector<double> zeros;
    for (int i = 0; i < n; ++i) {
      const double a = f.values[i], b = f.values[(i + 1) % n];
      if ((a > 0) != (b > 0)) {
        const double t = a / (a - b);
        zeros.push_back(2.0 * M_PI * (i + t) / n);
      }
    }
    if (zeros.empty())
      throw std::runtime_error("zero_density_radius: no zeros found");
    double worst = 0.0;
    for (std::size_t k = 0; k < zeros.size(); ++k) {
      const double next =
          k + 1 < zeros.size() ? zeros[k + 1] : zeros[0] + 2.0 * M_PI;
      worst = std::max(worst, 0.5 * (next - zeros[k]));
    }
    return worst;
  }
  if (phi.domain == ModelDomain::sphere)
    throw std::invalid_argument("zero_density_radius: sphere not supported");

  const GridSpec& g = phi.field.spec();
  const bool disk = phi.domain == ModelDomain::disk;
  NodalSet z;
  if (disk) {
    GridDomain dom = GridDomain::disk(g, {0.0, 0.0, 1.0 - 1.5 * g.h});
    z = extract_zero_set(phi.field, &dom);
  } else {
    z = extract_zero_set(phi.field);
  }
  if (z.segments.empty())
    throw std::runtime_error("zero_density_radius: no zeros found");
  const auto dist = distance_transform(g, z.segments);
  double worst = 0.0;
  for (int j = 0; j < g.ny; ++j)
    for (int i = 0; i < g.nx; ++i) {
      if (disk && std::hypot(g.x(i), g.y(j)) > 0.85) continue;
      worst = std::max(worst, dist[g.idx(i, j)]);
    }
  return worst;
}

YauFit yau_scaling_fit(const std::vector<ModelEigenfunction>& family) {
  YauFit fit;
  for (const auto& phi : family) {
    NodalSet z;
    if (phi.domain == ModelDomain::disk) {
      const GridSpec& g = phi.field.spec();
      GridDomain dom = GridDomain::disk(g, {0.0, 0.0, 1.0 - 1.5 * g.h});
      z = extract_zero_set(phi.field, &dom);
    } else if (phi.domain == ModelDomain::torus) {
      z = extract_zero_set(phi.field);
    } else {
      throw std::invalid_argument("yau_scaling_fit: torus or disk family only");
    }
    fit.lambdas.push_back(phi.lambda);
    fit.lengths.push_back(z.total_length);
  }
  std::vector<double> uniq = fit.lambdas;
  std::sort(uniq.begin(), uniq.end());
  uniq.erase(std::unique(uniq.begin(), uniq.end()), uniq.end());
  if (uniq.size() < 2)
    throw std::invalid_argument("yau_scaling_fit: need >= 2 distinct lambdas");

  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const double m = double(fit.lambdas.size());
  fit.c1 = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < fit.lambdas.size(); ++i) {
    const double x = std::log(fit.lambdas[i]);
    const double y = std::log(std::max(fit.lengths[i], 1e-300));
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
    const double ratio = fit.lengths[i] / std::sqrt(fit.lambdas[i]);
    fit.c1 = std::min(fit.c1, ratio);
    fit.c2 = std::max(fit.c2, ratio);
  }
  fit.slope = (m * sxy - sx * sy) / (m * sxx - sx * sx);
  return fit;
}

DomainEigenvalueCheck nodal_domain_eigenvalue_check(const ScalarField& u,
                                                    double lambda,
                                                    int component) {
  const auto labeling = label_nodal_domains(u);
  if (component < 0 || component >= labeling.count)
    throw std::invalid_argument("nodal_domain_eigenvalue_check: bad component");
  const GridSpec& g = u.spec();
  std::vector<std::uint8_t> mask(g.size(), 0);
  for (std::size_t k = 0; k < g.size(); ++k)
    if (labeling.labels[k] == component) {
      const int i = int(k % g.nx), j = int(k / g.nx);
      if (i > 0 && i + 1 < g.nx && j > 0 && j + 1 < g.ny) mask[k] = 1;
    }
  GridDomain dom(g, std::move(mask));
  DomainEigenvalueCheck out;
  out.lambda1 = eigensolve(assemble_dirichlet(dom), 1)[0].lambda;
  out.rel_gap = std::abs(out.lambda1 - lambda) / lambda;
  return out;
}

NodalScatter nodal_measure_vs_doubling(const std::vector<ScalarField>& family,
                                       const Cube& q1, double vanish_tol) {
  NodalScatter out;
  out.min_length = std::numeric_limits<double>::infinity();
  for (const auto& u : family) {
    if (std::abs(u.interp(q1.cx, q1.cy)) > vanish_tol * u.sup_norm())
      throw std::invalid_argument(
          "nodal_measure_vs_doubling: solution does not vanish at the center");
    out.doubling.push_back(doubling_cube(u, q1, 3, 32, 1).value);
    const NodalSet z = extract_zero_set(u);
    double len = 0.0;
    for (const auto& s : z.segments)
      if (q1.contains(0.5 * (s.a.x + s.b.x), 0.5 * (s.a.y + s.b.y)))
        len += s.length();
    out.length.push_back(len);
    out.min_length = std::min(out.min_length, len);
  }
  return out;
}

double scaled_cube_log_ratio(const ScalarField& u, const Cube& q, double k) {
  const double inner = u.max_abs_cube(q);
  if (inner <= 0.0)
    throw std::invalid_argument("scaled_cube_log_ratio: u vanishes on Q");
  return std::log(u.max_abs_cube(q.scaled(k)) / inner);
}

}  // namespace uclab
