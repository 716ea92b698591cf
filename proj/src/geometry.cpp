#include "esfem/geometry.hpp"

#include <cmath>

namespace esfem {

namespace {
constexpr double kPi = 3.14159265358979323846;
}

double LevelSetSurface::axis_scale(double t) { return 1.0 + 0.25 * std::sin(2.0 * kPi * t); }

double LevelSetSurface::axis_scale_rate(double t) {
  return 0.5 * kPi * std::cos(2.0 * kPi * t);
}

int LevelSetSurface::dim() const {
  switch (kind) {
    case SurfaceKind::Sphere:
    case SurfaceKind::OscillatingEllipsoid:
      return 2;
    default:
      return 1;
  }
}

int LevelSetSurface::ambient_dim() const { return dim() + 1; }

bool LevelSetSurface::is_moving() const {
  return kind == SurfaceKind::OscillatingEllipsoid || kind == SurfaceKind::OscillatingEllipse;
}

bool LevelSetSurface::has_known_area() const {
  return kind == SurfaceKind::Sphere || kind == SurfaceKind::Circle;
}

double LevelSetSurface::exact_area() const {
  if (kind == SurfaceKind::Sphere) return 4.0 * kPi;
  if (kind == SurfaceKind::Circle) return 2.0 * kPi;
  throw std::runtime_error("exact area unknown for this surface");
}

LevelSetSurface make_surface(SurfaceKind kind) { return LevelSetSurface{kind}; }

LevelSetValues levelset_eval(const LevelSetSurface& surface, const Vec3& x, double t) {
  LevelSetValues out;
  out.gradient.setZero();
  out.hessian.setZero();
  const int n = surface.ambient_dim();
  switch (surface.kind) {
    case SurfaceKind::Sphere:
    case SurfaceKind::Circle: {
      double s = 0.0;
      for (int i = 0; i < n; ++i) s += x[i] * x[i];
      out.value = s - 1.0;
      for (int i = 0; i < n; ++i) {
        out.gradient[i] = 2.0 * x[i];
        out.hessian(i, i) = 2.0;
      }
      break;
    }
    case SurfaceKind::OscillatingEllipsoid:
    case SurfaceKind::OscillatingEllipse: {
      const double a = LevelSetSurface::axis_scale(t);
      double s = x[0] * x[0] / a;
      for (int i = 1; i < n; ++i) s += x[i] * x[i];
      out.value = s - 1.0;
      out.gradient[0] = 2.0 * x[0] / a;
      out.hessian(0, 0) = 2.0 / a;
      for (int i = 1; i < n; ++i) {
        out.gradient[i] = 2.0 * x[i];
        out.hessian(i, i) = 2.0;
      }
      break;
    }
  }
  return out;
}

Vec3 outward_normal(const LevelSetSurface& surface, const Vec3& x, double t) {
  const LevelSetValues ls = levelset_eval(surface, x, t);
  const double g = ls.gradient.norm();
  if (g < 1e-12) throw std::runtime_error("normal undefined");
  return ls.gradient / g;
}

namespace {

// Stationarity of |x - p|^2 subject to phi(p,t) = 0:
//   p - x + lambda grad phi(p) = 0,  phi(p) = 0.
Vec3 closest_point_newton(const LevelSetSurface& surface, const Vec3& x, double t) {
  // Initial guess: pull back to the unit sphere coordinates, normalise, push
  // forward along the axes.
  const double a = LevelSetSurface::axis_scale(t);
  const double sqrt_a = std::sqrt(a);
  Vec3 y = x;
  y[0] /= sqrt_a;
  const double yn = y.norm();
  if (yn < 1e-12) throw std::runtime_error("lift failed");
  Vec3 p = y / yn;
  p[0] *= sqrt_a;
  double lambda = 0.0;

  for (int it = 0; it < 50; ++it) {
    const LevelSetValues ls = levelset_eval(surface, p, t);
    Eigen::Vector4d residual;
    residual.head<3>() = p - x + lambda * ls.gradient;
    residual[3] = ls.value;
    if (residual.lpNorm<Eigen::Infinity>() < 1e-13) return p;

    Eigen::Matrix4d jac = Eigen::Matrix4d::Zero();
    jac.topLeftCorner<3, 3>() = Mat3::Identity() + lambda * ls.hessian;
    jac.topRightCorner<3, 1>() = ls.gradient;
    jac.bottomLeftCorner<1, 3>() = ls.gradient.transpose();
    const Eigen::Vector4d step = jac.partialPivLu().solve(residual);
    p -= step.head<3>();
    lambda -= step[3];
  }
  throw std::runtime_error("lift failed");
}

}  // namespace

Vec3 closest_point(const LevelSetSurface& surface, const Vec3& x, double t) {
  switch (surface.kind) {
    case SurfaceKind::Sphere:
    case SurfaceKind::Circle: {
      const double r = x.norm();
      if (r < 1e-12) throw std::runtime_error("lift failed");
      return x / r;
    }
    default:
      return closest_point_newton(surface, x, t);
  }
}

double signed_distance(const LevelSetSurface& surface, const Vec3& x, double t) {
  const LevelSetValues ls = levelset_eval(surface, x, t);
  const Vec3 p = closest_point(surface, x, t);
  const double d = (x - p).norm();
  return ls.value >= 0.0 ? d : -d;
}

Vec3 material_velocity(const LevelSetSurface& surface, const Vec3& x, double t) {
  if (!surface.is_moving()) return Vec3::Zero();
  const double a = LevelSetSurface::axis_scale(t);
  const double da = LevelSetSurface::axis_scale_rate(t);
  return Vec3(0.5 * da / a * x[0], 0.0, 0.0);
}

Mat3 velocity_jacobian(const LevelSetSurface& surface, const Vec3& /*x*/, double t) {
  Mat3 jac = Mat3::Zero();
  if (surface.is_moving()) {
    const double a = LevelSetSurface::axis_scale(t);
    const double da = LevelSetSurface::axis_scale_rate(t);
    jac(0, 0) = 0.5 * da / a;
  }
  return jac;
}

Vec3 flow_map(const LevelSetSurface& surface, const Vec3& x0, double t) {
  if (std::abs(levelset_eval(surface, x0, 0.0).value) > 1e-10)
    throw std::runtime_error("node off surface");
  if (!surface.is_moving()) return x0;
  Vec3 x = x0;
  x[0] *= std::sqrt(LevelSetSurface::axis_scale(t));
  return x;
}

ManufacturedProblem ManufacturedProblem::decaying_product(const LevelSetSurface& surface,
                                                          double end_time) {
  ManufacturedProblem p;
  p.surface = surface;
  p.end_time = end_time;
  p.u = [](const Vec3& x, double t) { return std::exp(-6.0 * t) * x[0] * x[1]; };
  p.grad_u = [](const Vec3& x, double t) {
    return Vec3(std::exp(-6.0 * t) * x[1], std::exp(-6.0 * t) * x[0], 0.0);
  };
  p.hess_u = [](const Vec3&, double t) {
    Mat3 h = Mat3::Zero();
    h(0, 1) = h(1, 0) = std::exp(-6.0 * t);
    return h;
  };
  p.dt_u = [](const Vec3& x, double t) { return -6.0 * std::exp(-6.0 * t) * x[0] * x[1]; };
  return p;
}

ManufacturedProblem ManufacturedProblem::zero(const LevelSetSurface& surface, double end_time) {
  ManufacturedProblem p;
  p.surface = surface;
  p.end_time = end_time;
  p.u = [](const Vec3&, double) { return 0.0; };
  p.grad_u = [](const Vec3&, double) { return Vec3::Zero(); };
  p.hess_u = [](const Vec3&, double) { return Mat3::Zero(); };
  p.dt_u = [](const Vec3&, double) { return 0.0; };
  return p;
}

SolutionSample exact_solution_eval(const ManufacturedProblem& problem, const Vec3& x,
                                   double t) {
  const Vec3 nu = outward_normal(problem.surface, x, t);
  const Vec3 grad = problem.grad_u(x, t);
  SolutionSample out;
  out.value = problem.u(x, t);
  out.surface_gradient = grad - grad.dot(nu) * nu;
  return out;
}

double manufactured_forcing(const ManufacturedProblem& problem, const Vec3& x, double t) {
  const LevelSetSurface& surface = problem.surface;
  const LevelSetValues ls = levelset_eval(surface, x, t);
  const double gnorm = ls.gradient.norm();
  const Vec3 nu = ls.gradient / gnorm;

  const Vec3 v = material_velocity(surface, x, t);
  const Mat3 dv = velocity_jacobian(surface, x, t);

  const double u = problem.u(x, t);
  const Vec3 grad = problem.grad_u(x, t);
  const Mat3 hess = problem.hess_u(x, t);

  const double material_der = problem.dt_u(x, t) + v.dot(grad);
  const double surface_div_v = dv.trace() - nu.dot(dv * nu);

  // Mean curvature H = div(grad phi / |grad phi|).
  const double mean_curv =
      (ls.hessian.trace() - nu.dot(ls.hessian * nu)) / gnorm;
  const double surface_lap =
      hess.trace() - nu.dot(hess * nu) - mean_curv * nu.dot(grad);

  return material_der + u * surface_div_v - surface_lap;
}

}  // namespace esfem
