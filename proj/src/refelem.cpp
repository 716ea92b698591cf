#include "esfem/refelem.hpp"

#include <cmath>
#include <stdexcept>

namespace esfem {

std::vector<Vec2> lagrange_nodes(int dim, int degree) {
  if ((dim != 1 && dim != 2) || degree < 1 || degree > 4)
    throw std::runtime_error("unsupported element");
  const double k = static_cast<double>(degree);
  std::vector<Vec2> nodes;
  if (dim == 1) {
    nodes.emplace_back(0.0, 0.0);
    nodes.emplace_back(1.0, 0.0);
    for (int i = 1; i < degree; ++i) nodes.emplace_back(i / k, 0.0);
    return nodes;
  }
  nodes.emplace_back(0.0, 0.0);
  nodes.emplace_back(1.0, 0.0);
  nodes.emplace_back(0.0, 1.0);
  // Edges (0,1), (1,2), (2,0), nodes at fractions i/k from the first vertex.
  for (int i = 1; i < degree; ++i) nodes.emplace_back(i / k, 0.0);
  for (int i = 1; i < degree; ++i) nodes.emplace_back(1.0 - i / k, i / k);
  for (int i = 1; i < degree; ++i) nodes.emplace_back(0.0, 1.0 - i / k);
  for (int j = 1; j < degree; ++j)
    for (int i = 1; i + j < degree; ++i) nodes.emplace_back(i / k, j / k);
  return nodes;
}

ReferenceElement::ReferenceElement(int dim, int degree)
    : dim_(dim), degree_(degree), nodes_(lagrange_nodes(dim, degree)) {
  // Monomial exponents spanning P_k.
  if (dim == 1) {
    for (int a = 0; a <= degree; ++a) exponents_.emplace_back(a, 0.0);
  } else {
    for (int d = 0; d <= degree; ++d)
      for (int a = d; a >= 0; --a) exponents_.emplace_back(a, d - a);
  }
  const int n = n_loc();
  Eigen::MatrixXd vandermonde(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      vandermonde(i, j) = std::pow(nodes_[i][0], exponents_[j][0]) *
                          std::pow(nodes_[i][1], exponents_[j][1]);
  coefficients_ = vandermonde.fullPivLu().inverse();
}

void ReferenceElement::eval(const Vec2& xi, Eigen::VectorXd& values,
                            Eigen::MatrixXd& gradients) const {
  const int n = n_loc();
  Eigen::VectorXd mono(n);
  Eigen::MatrixXd dmono(n, dim_);
  for (int j = 0; j < n; ++j) {
    const int a = static_cast<int>(exponents_[j][0]);
    const int b = static_cast<int>(exponents_[j][1]);
    const double xa = std::pow(xi[0], a);
    const double yb = std::pow(xi[1], b);
    mono[j] = xa * yb;
    dmono(j, 0) = a == 0 ? 0.0 : a * std::pow(xi[0], a - 1) * yb;
    if (dim_ == 2) dmono(j, 1) = b == 0 ? 0.0 : b * xa * std::pow(xi[1], b - 1);
  }
  values = coefficients_.transpose() * mono;
  gradients = coefficients_.transpose() * dmono;
}

namespace {

struct SymGroup3 {
  double w, a;  // permutations of barycentric (1-2a, a, a)
};
struct SymGroup6 {
  double w, a, b;  // permutations of barycentric (a, b, 1-a-b)
};

void append_centroid(QuadratureRule& rule, double w) {
  rule.points.emplace_back(1.0 / 3.0, 1.0 / 3.0);
  rule.weights.push_back(0.5 * w);
}

void append_group(QuadratureRule& rule, const SymGroup3& g) {
  const double c = 1.0 - 2.0 * g.a;
  const double bary[3][3] = {{c, g.a, g.a}, {g.a, c, g.a}, {g.a, g.a, c}};
  for (const auto& p : bary) {
    rule.points.emplace_back(p[1], p[2]);
    rule.weights.push_back(0.5 * g.w);
  }
}

void append_group(QuadratureRule& rule, const SymGroup6& g) {
  const double c = 1.0 - g.a - g.b;
  const double bary[6][3] = {{g.a, g.b, c}, {g.b, c, g.a}, {c, g.a, g.b},
                             {g.a, c, g.b}, {g.b, g.a, c}, {c, g.b, g.a}};
  for (const auto& p : bary) {
    rule.points.emplace_back(p[1], p[2]);
    rule.weights.push_back(0.5 * g.w);
  }
}

// Dunavant-family symmetric rules; weights normalised to sum to 1 in the
// tables (times reference area 1/2 on output). Odd targets without an
// all-positive table fall through to the next even rule.
QuadratureRule dunavant_table(int degree) {
  QuadratureRule rule;
  rule.dim = 2;
  rule.exactness_degree = degree;
  switch (degree) {
    case 1:
      append_centroid(rule, 1.0);
      break;
    case 2:
      append_group(rule, SymGroup3{1.0 / 3.0, 1.0 / 6.0});
      break;
    case 4:
      append_group(rule, SymGroup3{0.22338158967801147, 0.44594849091596489});
      append_group(rule, SymGroup3{0.10995174365532187, 0.091576213509770743});
      break;
    case 5:
      append_centroid(rule, 0.225);
      append_group(rule, SymGroup3{0.13239415278850618, 0.47014206410511509});
      append_group(rule, SymGroup3{0.12593918054482715, 0.10128650732345634});
      break;
    case 8:
      append_centroid(rule, 0.14431560767777515);
      append_group(rule, SymGroup3{0.095091634267284245, 0.45929258829272213});
      append_group(rule, SymGroup3{0.10321737053472942, 0.17056930775176218});
      append_group(rule, SymGroup3{0.032458497623201882, 0.050547228317034419});
      append_group(rule, SymGroup6{0.027230314174429688, 0.2631128296346541, 0.72849239295540125});
      break;
    case 10:
      append_centroid(rule, 0.090817990382460925);
      append_group(rule, SymGroup3{0.036725957756709067, 0.48557763338347337});
      append_group(rule, SymGroup3{0.04532105943562216, 0.10948157548507668});
      append_group(rule, SymGroup6{0.07275791684525186, 0.55035294182083228, 0.14170721941522529});
      append_group(rule, SymGroup6{0.028327242531097488, 0.24667256064022319, 0.72832390459710039});
      append_group(rule, SymGroup6{0.0094216669637415471, 0.92365593358746423, 0.066803251012260007});
      break;
    default:
      throw std::runtime_error("no rule for this degree");
  }
  return rule;
}

}  // namespace

QuadratureRule dunavant_rule(int target_degree) {
  if (target_degree < 1 || target_degree > 10)
    throw std::runtime_error("unsupported quadrature degree");
  for (int d : {1, 2, 4, 5, 8, 10})
    if (d >= target_degree) return dunavant_table(d);
  throw std::runtime_error("unsupported quadrature degree");
}

QuadratureRule gauss_rule(int target_degree) {
  if (target_degree < 1 || target_degree > 15)
    throw std::runtime_error("unsupported quadrature degree");
  const int n = (target_degree + 2) / 2;  // 2n-1 >= target
  QuadratureRule rule;
  rule.dim = 1;
  rule.exactness_degree = 2 * n - 1;
  // Newton on Legendre P_n over [-1,1], then map to [0,1].
  for (int i = 0; i < n; ++i) {
    double x = std::cos(M_PI * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      const double step = p1 / dp;
      x -= step;
      if (std::abs(step) < 1e-15) break;
    }
    rule.points.emplace_back(0.5 * (1.0 - x), 0.0);  // ascending in [0,1]
    rule.weights.push_back(1.0 / ((1.0 - x * x) * dp * dp));
  }
  return rule;
}

QuadratureRule simplex_rule(int dim, int target_degree) {
  return dim == 1 ? gauss_rule(target_degree) : dunavant_rule(target_degree);
}

}  // namespace esfem
