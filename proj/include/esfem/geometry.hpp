#pragma once

#include <Eigen/Dense>
#include <functional>
#include <stdexcept>

namespace esfem {

using Vec3 = Eigen::Vector3d;
using Mat3 = Eigen::Matrix3d;

// Analytic moving geometries. Curves (m = 1) live in the z = 0 plane and are
// handled with the same 3D ambient calculus; the level set is z-independent,
// so all tangential quantities restricted to the plane agree with the 2D ones.
enum class SurfaceKind { Sphere, OscillatingEllipsoid, Circle, OscillatingEllipse };

struct LevelSetValues {
  double value;
  Vec3 gradient;
  Mat3 hessian;
};

struct LevelSetSurface {
  SurfaceKind kind = SurfaceKind::Sphere;

  // a(t) = 1 + sin(2*pi*t)/4, the x1 axis scaling of the ellipsoid family.
  static double axis_scale(double t);
  static double axis_scale_rate(double t);

  int dim() const;          // m, intrinsic dimension
  int ambient_dim() const;  // m + 1
  bool is_moving() const;
  bool has_known_area() const;  // sphere / circle only
  double exact_area() const;
};

LevelSetSurface make_surface(SurfaceKind kind);

LevelSetValues levelset_eval(const LevelSetSurface& surface, const Vec3& x, double t);

Vec3 outward_normal(const LevelSetSurface& surface, const Vec3& x, double t);

// Closest point p on Gamma(t); Newton on the Lagrange stationarity system for
// the ellipsoid family, radial projection for sphere/circle.
Vec3 closest_point(const LevelSetSurface& surface, const Vec3& x, double t);

double signed_distance(const LevelSetSurface& surface, const Vec3& x, double t);

Vec3 material_velocity(const LevelSetSurface& surface, const Vec3& x, double t);
Mat3 velocity_jacobian(const LevelSetSurface& surface, const Vec3& x, double t);

// Exact trajectory of a material point starting at x0 on Gamma(0).
Vec3 flow_map(const LevelSetSurface& surface, const Vec3& x0, double t);

// Manufactured problem data: a chosen ambient-smooth exact solution with its
// derivatives, from which the forcing is computed analytically.
struct ManufacturedProblem {
  LevelSetSurface surface;
  double end_time = 1.0;

  std::function<double(const Vec3&, double)> u;
  std::function<Vec3(const Vec3&, double)> grad_u;
  std::function<Mat3(const Vec3&, double)> hess_u;
  std::function<double(const Vec3&, double)> dt_u;

  // u(x,t) = exp(-6t) x1 x2 on the given surface.
  static ManufacturedProblem decaying_product(const LevelSetSurface& surface,
                                              double end_time = 1.0);
  static ManufacturedProblem zero(const LevelSetSurface& surface, double end_time = 1.0);
};

struct SolutionSample {
  double value;
  Vec3 surface_gradient;
};

SolutionSample exact_solution_eval(const ManufacturedProblem& problem, const Vec3& x,
                                   double t);

// f = mat_der(u) + u div_Gamma(v) - lap_Gamma(u), evaluated with analytic
// ambient derivatives.
double manufactured_forcing(const ManufacturedProblem& problem, const Vec3& x, double t);

}  // namespace esfem
