#pragma once

// Builtin scenes and seeded point sampling.

#include <cstddef>
#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include "norden/ambient/ambient.hpp"
#include "norden/hypersurface/hypersurface.hpp"

namespace norden {

template <class B>
struct Scene {
  std::string name;
  std::string description;
  Ambient<B> ambient;
  Hypersurface<B> surface;  // surface.view is the metric under which M is lightlike
  bool expect_kaehler = false;
  std::size_t n = 0;        // R^{2n+2} size parameter, 0 elsewhere
};

using AnyScene = std::variant<Scene<double>, Scene<Rational>>;

template <class B>
Context<B> lightlike_context(const Scene<B>& s) {
  return make_context(s.ambient, s.surface);
}

// Same hypersurface seen through another metric view.
template <class B>
Context<B> view_context(const Scene<B>& s, MetricView view) {
  Hypersurface<B> h = s.surface;
  h.view = view;
  return make_context(s.ambient, std::move(h));
}

// R^{2n+2} with g = diag(-I, I) in coordinates (u_1..u_{n+1}, v_1..v_{n+1}),
// J∂u_i = ∂v_i, and M: g(Z, JZ) = 0 restricted to g(Z, Z) > 1.
Scene<double> build_example_61(std::size_t n);

// gl(2,R) with the left-invariant Norden pair and the subalgebra sl(2,R).
Scene<Rational> build_example_62();

// Negative and synthetic controls.
Scene<Rational> control_non_holomorphic_screen();  // sl(2,R) with screen {X2, X3 + xi}
Scene<double> control_sphere(std::size_t n);       // g(Z,Z) = 2 in the split R^{2n+2} ambient
Scene<Rational> control_hermitian();               // indefinite Hermitian flat ambient, b = 0
Scene<double> control_flat_hyperplane();           // u_1 = 0 in the split R^4 ambient

struct SamplerConfig {
  std::size_t count = 100;
  std::uint64_t seed = 42;
  double box = 3.0;          // draws uniform in [-box, box]^dim
  double margin = 0.1;       // domain predicate g(Z,Z) > norm_above + margin
  double newton_tol = 1e-12;
  int max_iters = 60;
};

std::uint64_t splitmix64(std::uint64_t x);

// Seeded points on M.  Subalgebra scenes return the single point 0.
std::vector<Vec<double>> sample_points(const Scene<double>& s, const SamplerConfig& cfg);
std::vector<Vec<Rational>> sample_points(const Scene<Rational>& s, const SamplerConfig& cfg);

// One Newton projection of x onto F = 0 along G^{-1} dF; false on failure.
bool project_to_surface(const Quadric<double>& F, const Matrix<double>& ginv, Vec<double>& x, double tol,
                        int max_iters);

}  // namespace norden
