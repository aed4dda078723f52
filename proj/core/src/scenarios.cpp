#include "norden/scenarios/scenarios.hpp"

#include <cmath>
#include <random>

namespace norden {

namespace {

template <class B>
Matrix<B> canonical_J(std::size_t half) {
  Matrix<B> J(2 * half, 2 * half);
  for (std::size_t i = 0; i < half; ++i) {
    J(half + i, i) = B(1);   // J∂u_i = ∂v_i
    J(i, half + i) = B(-1);  // J∂v_i = -∂u_i
  }
  return J;
}

template <class B>
Matrix<B> split_gram(std::size_t half) {
  Matrix<B> g(2 * half, 2 * half);
  for (std::size_t i = 0; i < half; ++i) {
    g(i, i) = B(-1);
    g(half + i, half + i) = B(1);
  }
  return g;
}

std::vector<std::string> uv_labels(std::size_t half) {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < half; ++i) out.push_back("u" + std::to_string(i + 1));
  for (std::size_t i = 0; i < half; ++i) out.push_back("v" + std::to_string(i + 1));
  return out;
}

Ambient<double> example_61_ambient(std::size_t n) {
  return flat_chart<double>("R^" + std::to_string(2 * n + 2), split_gram<double>(n + 1), canonical_J<double>(n + 1),
                            uv_labels(n + 1));
}

Matrix<Rational> unit(std::size_t a, std::size_t b) {
  Matrix<Rational> m(2, 2);
  m(a, b) = Rational(1);
  return m;
}

Ambient<Rational> gl2_ambient() {
  std::vector<Matrix<Rational>> basis = {unit(0, 0), unit(0, 1), unit(1, 0), unit(1, 1)};
  Matrix<Rational> g = Matrix<Rational>::diagonal(Vec<Rational>{Rational(-1), Rational(1), Rational(-1), Rational(1)});
  Matrix<Rational> J(4, 4);
  J(3, 0) = Rational(1);   // J X1 = X4
  J(2, 1) = Rational(1);   // J X2 = X3
  J(1, 2) = Rational(-1);  // J X3 = -X2
  J(0, 3) = Rational(-1);  // J X4 = -X1
  return lie_from_matrices<Rational>("gl(2,R)", basis, g, J, {"X1", "X2", "X3", "X4"});
}

Hypersurface<Rational> sl2_surface() {
  Hypersurface<Rational> h;
  h.constraint.Q = Matrix<Rational>(4, 4);
  h.constraint.l = Vec<Rational>{Rational(1), Rational(0), Rational(0), Rational(1)};  // trace
  h.subalgebra = {Vec<Rational>{Rational(1), Rational(0), Rational(0), Rational(-1)},
                  Vec<Rational>{Rational(0), Rational(1), Rational(0), Rational(0)},
                  Vec<Rational>{Rational(0), Rational(0), Rational(1), Rational(0)}};
  h.view = MetricView::Bar;
  h.transversal = TransversalMode::Holomorphic;
  return h;
}

double uniform01(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

Vec<double> draw(const SamplerConfig& cfg, std::size_t dim, std::uint64_t index) {
  std::mt19937_64 rng(splitmix64(splitmix64(cfg.seed) + index));
  Vec<double> x(dim);
  for (auto& c : x) c = (2.0 * uniform01(rng) - 1.0) * cfg.box;
  return x;
}

template <class B>
bool in_domain(const Scene<B>& s, const Vec<double>& x, double margin) {
  if (!s.surface.norm_above) return true;
  Matrix<double> g = matrix_cast<double>(s.ambient.gram);
  return bilinear(g, x, x) > *s.surface.norm_above + margin;
}

[[noreturn]] void too_many_rejections(const std::string& name, std::size_t got, std::size_t want) {
  throw PreconditionError("sampler rejected more than 99% of draws on " + name + " (" + std::to_string(got) + " of " +
                          std::to_string(want) + " points)");
}

}  // namespace

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

Scene<double> build_example_61(std::size_t n) {
  if (n < 1) throw ParameterError("example_61 needs n >= 1");
  Scene<double> s;
  s.name = "example_61";
  s.n = n;
  s.description = "g(Z,JZ) = 0, g(Z,Z) > 1 in R^" + std::to_string(2 * n + 2) + " with the associated metric";
  s.ambient = example_61_ambient(n);
  s.expect_kaehler = true;
  const std::size_t d = s.ambient.dim;
  Matrix<double> gJ = s.ambient.gram * s.ambient.J;
  s.surface.constraint.Q = Matrix<double>(d, d);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) s.surface.constraint.Q(i, j) = 0.5 * (gJ(i, j) + gJ(j, i));
  s.surface.constraint.l = Vec<double>(d);
  s.surface.view = MetricView::Tilde;
  s.surface.transversal = TransversalMode::Holomorphic;
  s.surface.norm_above = 1.0;
  return s;
}

Scene<Rational> build_example_62() {
  Scene<Rational> s;
  s.name = "example_62";
  s.description = "sl(2,R) in gl(2,R) with the left-invariant Norden metric";
  s.ambient = gl2_ambient();
  s.surface = sl2_surface();
  s.expect_kaehler = false;
  return s;
}

Scene<Rational> control_non_holomorphic_screen() {
  Scene<Rational> s = build_example_62();
  s.name = "control_non_holomorphic_screen";
  s.description = "sl(2,R) with the screen {X2, X3 + xi}";
  s.surface.screen_override = {Vec<Rational>{Rational(0), Rational(1), Rational(0), Rational(0)},
                               Vec<Rational>{Rational(1), Rational(0), Rational(1), Rational(-1)}};
  return s;
}

Scene<double> control_sphere(std::size_t n) {
  Scene<double> s;
  s.name = "control_sphere";
  s.n = n;
  s.description = "g(Z,Z) = 2 in the split R^{2n+2} ambient";
  s.ambient = example_61_ambient(n);
  s.expect_kaehler = true;
  s.surface.constraint.Q = s.ambient.gram;
  s.surface.constraint.l = Vec<double>(s.ambient.dim);
  s.surface.constraint.c = -2.0;
  s.surface.view = MetricView::Bar;
  return s;
}

Scene<Rational> control_hermitian() {
  Scene<Rational> s;
  s.name = "control_hermitian";
  s.description = "x1 = x3 in R^4 with g = diag(1,1,-1,-1) and an isometric J";
  Matrix<Rational> g = Matrix<Rational>::diagonal(Vec<Rational>{Rational(1), Rational(1), Rational(-1), Rational(-1)});
  Matrix<Rational> J(4, 4);
  J(1, 0) = Rational(1);
  J(0, 1) = Rational(-1);
  J(3, 2) = Rational(1);
  J(2, 3) = Rational(-1);
  s.ambient = flat_chart<Rational>("R^4_2", g, J, {"x1", "x2", "x3", "x4"});
  s.surface.constraint.Q = Matrix<Rational>(4, 4);
  s.surface.constraint.l = Vec<Rational>{Rational(1), Rational(0), Rational(-1), Rational(0)};
  s.surface.view = MetricView::Bar;
  s.surface.transversal = TransversalMode::Reference;
  return s;
}

Scene<double> control_flat_hyperplane() {
  Scene<double> s;
  s.name = "control_flat_hyperplane";
  s.n = 1;
  s.description = "u1 = 0 in the split R^4 ambient";
  s.ambient = example_61_ambient(1);
  s.expect_kaehler = true;
  s.surface.constraint.Q = Matrix<double>(4, 4);
  s.surface.constraint.l = Vec<double>{1.0, 0.0, 0.0, 0.0};
  s.surface.view = MetricView::Tilde;
  s.surface.transversal = TransversalMode::Holomorphic;
  return s;
}

bool project_to_surface(const Quadric<double>& F, const Matrix<double>& ginv, Vec<double>& x, double tol,
                        int max_iters) {
  double fx = F.value(x);
  for (int it = 0; it < max_iters && std::fabs(fx) > tol; ++it) {
    Vec<double> n = F.gradient(x);
    Vec<double> d = ginv * n;
    double slope = dot(n, d);
    if (std::fabs(slope) < 1e-8 * euclidean_norm2(n)) {
      d = n;
      slope = dot(n, n);
    }
    if (slope == 0.0) return false;
    double step = 1.0;
    Vec<double> trial = x - d * (step * fx / slope);
    double ft = F.value(trial);
    while (std::fabs(ft) >= std::fabs(fx) && step > 1e-6) {
      step *= 0.5;
      trial = x - d * (step * fx / slope);
      ft = F.value(trial);
    }
    if (std::fabs(ft) >= std::fabs(fx)) return false;
    x = trial;
    fx = ft;
  }
  if (std::fabs(fx) > tol) return false;
  // Polish to rounding level: induced objects amplify |F| by the curvature
  // scale, so stopping right at tol leaves visible residuals.
  for (int it = 0; it < 4 && fx != 0.0; ++it) {
    Vec<double> n = F.gradient(x);
    Vec<double> d = ginv * n;
    double slope = dot(n, d);
    if (std::fabs(slope) < 1e-8 * euclidean_norm2(n)) {
      d = n;
      slope = dot(n, n);
    }
    Vec<double> trial = x - d * (fx / slope);
    double ft = F.value(trial);
    if (!(std::fabs(ft) < std::fabs(fx))) break;
    x = trial;
    fx = ft;
  }
  return true;
}

std::vector<Vec<double>> sample_points(const Scene<double>& s, const SamplerConfig& cfg) {
  if (cfg.count < 1) throw ParameterError("points must be at least 1");
  const std::size_t d = s.ambient.dim;
  if (!s.surface.subalgebra.empty()) return {Vec<double>(d)};
  Matrix<double> ginv = inverse(s.ambient.gram);
  std::vector<Vec<double>> pts;
  const std::size_t budget = 100 * cfg.count;
  for (std::uint64_t i = 0; i < budget && pts.size() < cfg.count; ++i) {
    Vec<double> x = draw(cfg, d, i);
    if (!project_to_surface(s.surface.constraint, ginv, x, cfg.newton_tol, cfg.max_iters)) continue;
    if (!in_domain(s, x, cfg.margin)) continue;
    pts.push_back(x);
  }
  if (pts.size() < cfg.count) too_many_rejections(s.name, pts.size(), cfg.count);
  return pts;
}

std::vector<Vec<Rational>> sample_points(const Scene<Rational>& s, const SamplerConfig& cfg) {
  if (cfg.count < 1) throw ParameterError("points must be at least 1");
  const std::size_t d = s.ambient.dim;
  if (!s.surface.subalgebra.empty()) return {Vec<Rational>(d)};
  if (!s.surface.constraint.linear())
    throw ParameterError("exact sampling needs a linear constraint on " + s.name);
  const Vec<Rational>& l = s.surface.constraint.l;
  std::size_t p = real_argmax(l);
  if (sgn(l[p]) == 0) throw PreconditionError("vanishing constraint differential on " + s.name);
  std::vector<Vec<Rational>> pts;
  const std::size_t budget = 100 * cfg.count;
  for (std::uint64_t i = 0; i < budget && pts.size() < cfg.count; ++i) {
    Vec<double> raw = draw(cfg, d, i);
    // Dyadic grid of step 1/1024 keeps denominators small.
    Vec<Rational> x(d);
    for (std::size_t k = 0; k < d; ++k) {
      x[k] = Rational(static_cast<long>(std::lround(raw[k] * 1024.0)), 1024);
      x[k].canonicalize();
    }
    x[p] -= s.surface.constraint.value(x) / l[p];
    if (!in_domain(s, vec_cast<double>(x), cfg.margin)) continue;
    pts.push_back(x);
  }
  if (pts.size() < cfg.count) too_many_rejections(s.name, pts.size(), cfg.count);
  return pts;
}

}  // namespace norden
