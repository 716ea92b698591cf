#pragma once

#include <memory>
#include <string>
#include <vector>

#include "esfem/geometry.hpp"
#include "esfem/refelem.hpp"

namespace esfem {

// Evolving degree-k interpolating surface mesh. Node positions at time t are
// the exact flow-map images of the t = 0 positions, so every node stays on
// Gamma(t) and the connectivity never changes.
struct HighOrderMesh {
  int dim = 2;     // m
  int degree = 1;  // k
  LevelSetSurface surface;
  double current_time = 0.0;

  std::vector<Vec3> nodes0;  // positions at t = 0
  std::vector<Vec3> nodes;   // positions at current_time
  std::vector<std::vector<int>> connectivity;  // per element, n_loc global indices
  std::shared_ptr<const ReferenceElement> ref;

  int num_nodes() const { return static_cast<int>(nodes.size()); }
  int num_elements() const { return static_cast<int>(connectivity.size()); }
  int n_loc() const { return ref->n_loc(); }

  // Max element diameter from vertex distances.
  double mesh_width() const;
};

// Coarsest degree-1 interpolation of Gamma(0): inscribed octahedron (m = 2)
// or inscribed square (m = 1).
HighOrderMesh base_mesh(const LevelSetSurface& surface);

// Uniform split (4 triangles / 2 segments per element), new vertices lifted
// onto Gamma(0). Degree-1 meshes at t = 0 only.
HighOrderMesh refine(const HighOrderMesh& mesh);

// Insert degree-k Lagrange nodes, lift them onto Gamma(0), deduplicate shared
// edge nodes.
HighOrderMesh promote_order(const HighOrderMesh& mesh, int k);

// Move every node along the exact flow map to time t.
void advance_nodes(HighOrderMesh& mesh, double t);

struct ElementFrame {
  Vec3 x;
  Eigen::Matrix<double, 3, 2> jacobian;  // second column zero for m = 1
  double measure;
};

ElementFrame element_map(const HighOrderMesh& mesh, int element, const Vec2& xi);

// Frame from precomputed basis data (assembly fast path).
ElementFrame element_frame(const HighOrderMesh& mesh, int element,
                           const Eigen::VectorXd& basis_values,
                           const Eigen::MatrixXd& basis_gradients);

// Debug dump: "dim k N n_elems", node coordinates, then 0-based connectivity.
void dump_mesh(const HighOrderMesh& mesh, const std::string& path);

}  // namespace esfem
