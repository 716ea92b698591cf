#include <doctest.h>

#include <cmath>
#include <random>

#include "esfem/assembly.hpp"
#include "esfem/analysis.hpp"

using namespace esfem;

namespace {

// Single flat unit right triangle in the z = 0 plane.
HighOrderMesh flat_triangle() {
  HighOrderMesh mesh;
  mesh.dim = 2;
  mesh.degree = 1;
  mesh.surface = make_surface(SurfaceKind::Sphere);
  mesh.ref = std::make_shared<ReferenceElement>(2, 1);
  mesh.nodes0 = {Vec3(0, 0, 0), Vec3(1, 0, 0), Vec3(0, 1, 0)};
  mesh.nodes = mesh.nodes0;
  mesh.connectivity = {{0, 1, 2}};
  return mesh;
}

HighOrderMesh sphere_mesh(int refinements, int k) {
  HighOrderMesh mesh = base_mesh(make_surface(SurfaceKind::Sphere));
  for (int r = 0; r < refinements; ++r) mesh = refine(mesh);
  return promote_order(mesh, k);
}

}  // namespace

TEST_CASE("P1 mass matrix of the unit right triangle") {
  const SparseSymMatrix mass = assemble_mass(flat_triangle());
  const Eigen::MatrixXd dense = mass.dense();
  Eigen::Matrix3d expected;
  expected << 2, 1, 1, 1, 2, 1, 1, 1, 2;
  expected /= 24.0;
  CHECK((dense - expected).lpNorm<Eigen::Infinity>() < 1e-15);
}

TEST_CASE("P1 stiffness matrix of the unit right triangle") {
  const SparseSymMatrix stiffness = assemble_stiffness(flat_triangle());
  Eigen::Matrix3d expected;
  expected << 2, -1, -1, -1, 1, 0, -1, 0, 1;
  expected *= 0.5;
  CHECK((stiffness.dense() - expected).lpNorm<Eigen::Infinity>() < 1e-14);
}

TEST_CASE("mass matrix area identity and SPD") {
  std::mt19937 rng(2);
  std::normal_distribution<double> gauss;
  for (int refinements : {1, 2}) {
    const HighOrderMesh mesh = sphere_mesh(refinements, 2);
    const SparseSymMatrix mass = assemble_mass(mesh);
    CHECK(mass.symmetry_defect() == 0.0);
    const CoefVector ones = CoefVector::Ones(mesh.num_nodes());
    const double area = ones.dot(mass.multiply(ones));
    // Area approaches 4*pi under refinement; loose here, tight in acceptance.
    CHECK(std::abs(area - 4.0 * M_PI) < 0.2 / std::pow(8.0, refinements - 1));
    for (int trial = 0; trial < 100; ++trial) {
      CoefVector v(mesh.num_nodes());
      for (int i = 0; i < v.size(); ++i) v[i] = gauss(rng);
      CHECK(v.dot(mass.multiply(v)) > 0.0);
    }
  }
  const HighOrderMesh fine = sphere_mesh(3, 2);
  const SparseSymMatrix mass = assemble_mass(fine);
  const CoefVector ones = CoefVector::Ones(fine.num_nodes());
  CHECK(std::abs(ones.dot(mass.multiply(ones)) - 4.0 * M_PI) < 1e-3);
}

TEST_CASE("stiffness annihilates constants") {
  for (SurfaceKind kind : {SurfaceKind::Sphere, SurfaceKind::Circle}) {
    HighOrderMesh mesh = base_mesh(make_surface(kind));
    mesh = promote_order(refine(mesh), 2);
    const SparseSymMatrix stiffness = assemble_stiffness(mesh);
    CHECK(stiffness.symmetry_defect() == 0.0);
    const CoefVector ones = CoefVector::Ones(mesh.num_nodes());
    double norm = 0.0;
    for (double v : stiffness.values()) norm = std::max(norm, std::abs(v));
    CHECK(stiffness.multiply(ones).lpNorm<Eigen::Infinity>() < 1e-10 * norm);
  }
}

TEST_CASE("first Laplace-Beltrami eigenvalue of the sphere") {
  const HighOrderMesh mesh = sphere_mesh(2, 2);
  const Eigen::MatrixXd a = assemble_stiffness(mesh).dense();
  const Eigen::MatrixXd m = assemble_mass(mesh).dense();
  const Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::MatrixXd> eig(a, m);
  // Eigenvalues 0, then 2 with multiplicity 3.
  CHECK(eig.eigenvalues()[0] == doctest::Approx(0.0).epsilon(1e-9));
  for (int i = 1; i <= 3; ++i)
    CHECK(eig.eigenvalues()[i] == doctest::Approx(2.0).epsilon(1e-3));
}

TEST_CASE("load vector") {
  HighOrderMesh mesh = sphere_mesh(2, 2);
  const ManufacturedProblem stationary =
      ManufacturedProblem::decaying_product(mesh.surface);
  CHECK(assemble_load(mesh, stationary).lpNorm<Eigen::Infinity>() < 1e-12);

  const ManufacturedProblem zero = ManufacturedProblem::zero(mesh.surface);
  CHECK(assemble_load(mesh, zero).norm() == 0.0);

  // u(x,t) = t on the stationary sphere gives f == 1, so 1^T b is the
  // discrete surface area.
  ManufacturedProblem constant_forcing = ManufacturedProblem::zero(mesh.surface);
  constant_forcing.u = [](const Vec3&, double t) { return t; };
  constant_forcing.dt_u = [](const Vec3&, double) { return 1.0; };
  const CoefVector b1 = assemble_load(mesh, constant_forcing);
  const SparseSymMatrix mass = assemble_mass(mesh);
  const CoefVector ones = CoefVector::Ones(mesh.num_nodes());
  CHECK(b1.sum() == doctest::Approx(ones.dot(mass.multiply(ones))).epsilon(1e-12));

  const HighOrderMesh ellipsoid =
      promote_order(refine(base_mesh(make_surface(SurfaceKind::OscillatingEllipsoid))), 2);
  const ManufacturedProblem moving =
      ManufacturedProblem::decaying_product(ellipsoid.surface);
  const CoefVector b = assemble_load(ellipsoid, moving);
  CHECK(b.norm() > 0.0);  // nonzero forcing on the moving surface
}

TEST_CASE("nodal interpolation") {
  HighOrderMesh mesh = sphere_mesh(1, 2);
  const CoefVector ones =
      interpolate_nodal(mesh, [](const Vec3&, double) { return 1.0; }, 0.0);
  CHECK(ones.isApprox(CoefVector::Ones(mesh.num_nodes())));

  // Linear ambient functions are reproduced on a flat element.
  HighOrderMesh flat = flat_triangle();
  auto linear = [](const Vec3& x, double) { return 1.0 + 2.0 * x[0] - 3.0 * x[1]; };
  const CoefVector alpha = interpolate_nodal(flat, linear, 0.0);
  const QuadTable table = default_quad_table(flat);
  for (std::size_t q = 0; q < table.rule.points.size(); ++q) {
    const ElementFrame frame =
        element_frame(flat, 0, table.values.row(q), table.gradients[q]);
    const double uh = table.values.row(q).dot(alpha);
    CHECK(uh == doctest::Approx(linear(frame.x, 0.0)).epsilon(1e-13));
  }
}

TEST_CASE("interpolation error decays with order k+1") {
  const ManufacturedProblem problem =
      ManufacturedProblem::decaying_product(make_surface(SurfaceKind::Sphere));
  std::vector<double> errors;
  for (int refinements : {1, 2, 3}) {
    HighOrderMesh mesh = sphere_mesh(refinements, 2);
    const CoefVector alpha = interpolate_nodal(mesh, problem.u, 0.0);
    errors.push_back(error_norms(mesh, alpha, problem, 0.0).l2);
  }
  const auto rates = eoc(errors);
  for (double r : rates) CHECK(r >= 2.7);
}

TEST_CASE("mass matrix entries are smooth in time on the ellipsoid") {
  HighOrderMesh mesh =
      promote_order(refine(base_mesh(make_surface(SurfaceKind::OscillatingEllipsoid))), 2);
  auto area_at = [&](double t) {
    advance_nodes(mesh, t);
    const SparseSymMatrix mass = assemble_mass(mesh);
    const CoefVector ones = CoefVector::Ones(mesh.num_nodes());
    return ones.dot(mass.multiply(ones));
  };
  // Central difference of the discrete area is second-order consistent.
  const double t = 0.2;
  auto fd = [&](double dt) { return (area_at(t + dt) - area_at(t - dt)) / (2.0 * dt); };
  const double d1 = fd(1e-3);
  const double d2 = fd(1e-4);
  const double d3 = fd(1e-5);
  CHECK(std::abs(d1 - d2) / std::abs(d2 - d3) > 50.0);  // ~O(dt^2) decay
  CHECK(std::abs(d2 - d3) < 1e-6 * std::abs(d2));
}

TEST_CASE("doubling the quadrature exactness barely changes assembly") {
  HighOrderMesh mesh =
      promote_order(refine(base_mesh(make_surface(SurfaceKind::OscillatingEllipsoid))), 2);
  advance_nodes(mesh, 0.3);
  const QuadTable base_table = default_quad_table(mesh);
  const QuadTable rich_table =
      make_quad_table(*mesh.ref, simplex_rule(mesh.dim, 2 * default_quad_degree(2)> 10 ? 10 : 2 * default_quad_degree(2)));
  const Eigen::MatrixXd m1 = assemble_mass(mesh, base_table).dense();
  const Eigen::MatrixXd m2 = assemble_mass(mesh, rich_table).dense();
  CHECK((m1 - m2).lpNorm<Eigen::Infinity>() < 1e-4 * m1.lpNorm<Eigen::Infinity>());
}
