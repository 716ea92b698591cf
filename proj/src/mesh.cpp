#include "esfem/mesh.hpp"

#include <cmath>
#include <fstream>
#include <map>
#include <stdexcept>
#include <utility>

namespace esfem {

double HighOrderMesh::mesh_width() const {
  const int nv = dim + 1;
  double h = 0.0;
  for (const auto& elem : connectivity)
    for (int i = 0; i < nv; ++i)
      for (int j = i + 1; j < nv; ++j)
        h = std::max(h, (nodes[elem[i]] - nodes[elem[j]]).norm());
  return h;
}

HighOrderMesh base_mesh(const LevelSetSurface& surface) {
  HighOrderMesh mesh;
  mesh.surface = surface;
  mesh.dim = surface.dim();
  mesh.degree = 1;
  mesh.ref = std::make_shared<ReferenceElement>(mesh.dim, 1);
  if (mesh.dim == 2) {
    mesh.nodes0 = {Vec3(1, 0, 0),  Vec3(-1, 0, 0), Vec3(0, 1, 0),
                   Vec3(0, -1, 0), Vec3(0, 0, 1),  Vec3(0, 0, -1)};
    mesh.connectivity = {{0, 2, 4}, {2, 1, 4}, {1, 3, 4}, {3, 0, 4},
                         {2, 0, 5}, {1, 2, 5}, {3, 1, 5}, {0, 3, 5}};
  } else {
    mesh.nodes0 = {Vec3(1, 0, 0), Vec3(0, 1, 0), Vec3(-1, 0, 0), Vec3(0, -1, 0)};
    mesh.connectivity = {{0, 1}, {1, 2}, {2, 3}, {3, 0}};
  }
  // Base vertices already satisfy phi = 0 for every supported surface at t=0.
  mesh.nodes = mesh.nodes0;
  return mesh;
}

namespace {

int midpoint_node(std::map<std::pair<int, int>, int>& edge_nodes,
                  std::vector<Vec3>& nodes, const LevelSetSurface& surface, int u, int v) {
  const auto key = std::minmax(u, v);
  auto it = edge_nodes.find(key);
  if (it != edge_nodes.end()) return it->second;
  const Vec3 mid = 0.5 * (nodes[u] + nodes[v]);
  const int id = static_cast<int>(nodes.size());
  nodes.push_back(closest_point(surface, mid, 0.0));
  edge_nodes.emplace(key, id);
  return id;
}

}  // namespace

HighOrderMesh refine(const HighOrderMesh& mesh) {
  if (mesh.degree != 1 || mesh.current_time != 0.0)
    throw std::runtime_error("refine expects a degree-1 mesh at t = 0");
  HighOrderMesh out;
  out.surface = mesh.surface;
  out.dim = mesh.dim;
  out.degree = 1;
  out.ref = mesh.ref;
  out.nodes0 = mesh.nodes0;
  std::map<std::pair<int, int>, int> edge_nodes;
  for (const auto& elem : mesh.connectivity) {
    if (mesh.dim == 1) {
      const int m = midpoint_node(edge_nodes, out.nodes0, mesh.surface, elem[0], elem[1]);
      out.connectivity.push_back({elem[0], m});
      out.connectivity.push_back({m, elem[1]});
    } else {
      const int a = elem[0], b = elem[1], c = elem[2];
      const int ab = midpoint_node(edge_nodes, out.nodes0, mesh.surface, a, b);
      const int bc = midpoint_node(edge_nodes, out.nodes0, mesh.surface, b, c);
      const int ca = midpoint_node(edge_nodes, out.nodes0, mesh.surface, c, a);
      out.connectivity.push_back({a, ab, ca});
      out.connectivity.push_back({ab, b, bc});
      out.connectivity.push_back({ca, bc, c});
      out.connectivity.push_back({ab, bc, ca});
    }
  }
  out.nodes = out.nodes0;
  return out;
}

HighOrderMesh promote_order(const HighOrderMesh& mesh, int k) {
  if (mesh.degree != 1 || mesh.current_time != 0.0)
    throw std::runtime_error("promote_order expects a degree-1 mesh at t = 0");
  if (k < 1 || k > 4) throw std::runtime_error("unsupported element");
  if (k == 1) return mesh;

  HighOrderMesh out;
  out.surface = mesh.surface;
  out.dim = mesh.dim;
  out.degree = k;
  out.ref = std::make_shared<ReferenceElement>(mesh.dim, k);
  out.nodes0 = mesh.nodes0;

  const auto ref_nodes = lagrange_nodes(mesh.dim, k);
  const int nv = mesh.dim + 1;

  // key: (lower vertex id, higher vertex id, step from the lower vertex)
  std::map<std::tuple<int, int, int>, int> edge_nodes;
  auto edge_node = [&](int u, int v, int step) {
    const bool flip = u > v;
    const auto key = std::make_tuple(std::min(u, v), std::max(u, v), flip ? k - step : step);
    auto it = edge_nodes.find(key);
    if (it != edge_nodes.end()) return it->second;
    const double s = static_cast<double>(step) / k;
    const Vec3 p = closest_point(mesh.surface, (1.0 - s) * mesh.nodes0[u] + s * mesh.nodes0[v], 0.0);
    const int id = static_cast<int>(out.nodes0.size());
    out.nodes0.push_back(p);
    edge_nodes.emplace(key, id);
    return id;
  };

  for (const auto& elem : mesh.connectivity) {
    std::vector<int> conn(ref_nodes.size());
    for (int i = 0; i < nv; ++i) conn[i] = elem[i];
    int loc = nv;
    if (mesh.dim == 1) {
      for (int s = 1; s < k; ++s) conn[loc++] = edge_node(elem[0], elem[1], s);
    } else {
      const int edges[3][2] = {{0, 1}, {1, 2}, {2, 0}};
      for (const auto& e : edges)
        for (int s = 1; s < k; ++s) conn[loc++] = edge_node(elem[e[0]], elem[e[1]], s);
      for (std::size_t i = nv + 3 * (k - 1); i < ref_nodes.size(); ++i) {
        const Vec2 xi = ref_nodes[i];
        const Vec3 p = mesh.nodes0[elem[0]] +
                       xi[0] * (mesh.nodes0[elem[1]] - mesh.nodes0[elem[0]]) +
                       xi[1] * (mesh.nodes0[elem[2]] - mesh.nodes0[elem[0]]);
        conn[loc] = static_cast<int>(out.nodes0.size());
        out.nodes0.push_back(closest_point(mesh.surface, p, 0.0));
        ++loc;
      }
    }
    out.connectivity.push_back(std::move(conn));
  }
  out.nodes = out.nodes0;
  return out;
}

void advance_nodes(HighOrderMesh& mesh, double t) {
  if (mesh.current_time == t) return;
  if (!mesh.surface.is_moving()) {
    mesh.current_time = t;
    return;
  }
  const double scale = std::sqrt(LevelSetSurface::axis_scale(t));
  for (std::size_t i = 0; i < mesh.nodes.size(); ++i) {
    mesh.nodes[i] = mesh.nodes0[i];
    mesh.nodes[i][0] *= scale;
  }
  mesh.current_time = t;
}

ElementFrame element_frame(const HighOrderMesh& mesh, int element,
                           const Eigen::VectorXd& basis_values,
                           const Eigen::MatrixXd& basis_gradients) {
  ElementFrame frame;
  frame.x.setZero();
  frame.jacobian.setZero();
  const auto& conn = mesh.connectivity[element];
  for (int i = 0; i < mesh.n_loc(); ++i) {
    const Vec3& a = mesh.nodes[conn[i]];
    frame.x += basis_values[i] * a;
    for (int d = 0; d < mesh.dim; ++d) frame.jacobian.col(d) += basis_gradients(i, d) * a;
  }
  if (mesh.dim == 1) {
    frame.measure = frame.jacobian.col(0).norm();
  } else {
    const Eigen::Matrix2d gram = frame.jacobian.transpose() * frame.jacobian;
    const double det = gram.determinant();
    frame.measure = det > 0.0 ? std::sqrt(det) : 0.0;
  }
  if (frame.measure <= 1e-14) throw std::runtime_error("degenerate element");
  return frame;
}

ElementFrame element_map(const HighOrderMesh& mesh, int element, const Vec2& xi) {
  Eigen::VectorXd values;
  Eigen::MatrixXd gradients;
  mesh.ref->eval(xi, values, gradients);
  return element_frame(mesh, element, values, gradients);
}

void dump_mesh(const HighOrderMesh& mesh, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open " + path);
  out.precision(17);
  out << mesh.dim << ' ' << mesh.degree << ' ' << mesh.num_nodes() << ' '
      << mesh.num_elements() << '\n';
  for (const auto& a : mesh.nodes) {
    for (int d = 0; d < mesh.surface.ambient_dim(); ++d) out << (d ? " " : "") << a[d];
    out << '\n';
  }
  for (const auto& elem : mesh.connectivity) {
    for (std::size_t i = 0; i < elem.size(); ++i) out << (i ? " " : "") << elem[i];
    out << '\n';
  }
}

}  // namespace esfem
