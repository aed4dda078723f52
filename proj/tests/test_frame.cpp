#include <doctest.h>

#include <cmath>

#include "norden/hypersurface/induced.hpp"
#include "norden/scenarios/scenarios.hpp"

using namespace norden;

namespace {

Rational q(long n, long d = 1) {
  Rational r(n, d);
  r.canonicalize();
  return r;
}

template <class B, class S>
S quasi_orthonormal_residual(const Context<B>& ctx, const Frame<S>& f) {
  S worst(0);
  auto see = [&](const S& x) {
    S a = magnitude(x);
    if (a > worst) worst = a;
  };
  see(view_g(ctx, f.xi, f.xi));
  see(view_g(ctx, f.N, f.N));
  see(view_g(ctx, f.xi, f.N) - S(1));
  for (std::size_t i = 0; i < f.W.size(); ++i) {
    see(view_g(ctx, f.W[i], f.xi));
    see(view_g(ctx, f.W[i], f.N));
    for (std::size_t j = 0; j < f.W.size(); ++j) see(view_g(ctx, f.W[i], f.W[j]) - S(i == j ? f.eps[i] : 0));
  }
  return worst;
}

std::size_t dominant(const Vec<double>& z) {
  std::size_t p = 0;
  for (std::size_t i = 1; i < z.size(); ++i)
    if (std::fabs(z[i]) > std::fabs(z[p])) p = i;
  return p;
}

}  // namespace

TEST_CASE("sl(2,R) frame in gl(2,R) is exact") {
  Scene<Rational> s = build_example_62();
  auto ctx = lightlike_context(s);
  Frame<Rational> f = build_frame(ctx, Vec<Rational>(4));
  CHECK(f.xi == Vec<Rational>{q(1), q(0), q(0), q(-1)});
  CHECK(f.N == Vec<Rational>{q(-1, 2), q(0), q(0), q(-1, 2)});
  REQUIRE(f.W.size() == 2);
  CHECK(f.W[0] == Vec<Rational>{q(0), q(1), q(0), q(0)});
  CHECK(f.W[1] == Vec<Rational>{q(0), q(0), q(1), q(0)});
  CHECK(f.eps == std::vector<int>{1, -1});
  CHECK(quasi_orthonormal_residual(ctx, f) == 0);
}

TEST_CASE("isotropic quadric: the radical is the position vector") {
  // With F = 2 sum u_i v_i and the associated Gram [[0,I],[I,0]], the
  // gradient raised by that Gram is 2Z, so xi = s Z with s = gauge / Z_p.
  for (std::size_t n : {1u, 2u}) {
    Scene<double> s = build_example_61(n);
    auto ctx = lightlike_context(s);
    auto pts = sample_points(s, SamplerConfig{});
    for (const auto& z : pts) {
      Frame<double> f = build_frame(ctx, z);
      std::size_t p = dominant(z);
      double sc = 1.0 / z[p];
      CHECK(max_abs(Vec<double>(f.xi - z * sc)) < 1e-12);
      CHECK(quasi_orthonormal_residual(ctx, f) < 1e-10);
      // b = g~(J xi, xi) = s^2 g~(JZ, Z) = -s^2 g(Z, Z).
      LocalFrame<double> lf = local_frame(ctx, z);
      InducedObjects<double> io = induced_objects(ctx, lf);
      double gzz = bilinear(s.ambient.gram, z, z);
      CHECK(io.b == doctest::Approx(-sc * sc * gzz).epsilon(1e-12));
    }
  }
}

TEST_CASE("isotropic quadric: shape operators from the flat derivative of xi = sZ") {
  // nabla_X xi = X(s) Z + s X gives A*_xi = -s P and tau(xi) = 0,
  // tau(W_i) = W_i^p / Z_p.
  Scene<double> s = build_example_61(1);
  auto ctx = lightlike_context(s);
  SamplerConfig cfg;
  cfg.count = 25;
  for (const auto& z : sample_points(s, cfg)) {
    LocalFrame<double> lf = local_frame(ctx, z);
    const Frame<double>& f = lf.f;
    InducedObjects<double> io = induced_objects(ctx, lf);
    FrameCoords<double, double> fc{ctx, f};
    std::size_t p = dominant(z);
    double sc = 1.0 / z[p];
    for (std::size_t a = 0; a < f.tangent_dim(); ++a) {
      Vec<double> expected = fc.P(f.E(a)) * (-sc);
      CHECK(max_abs(Vec<double>(io.Astar[a] - expected)) < 1e-10);
    }
    CHECK(std::fabs(io.tau[0]) < 1e-10);
    for (std::size_t i = 0; i < f.W.size(); ++i) CHECK(io.tau[i + 1] == doctest::Approx(f.W[i][p] / z[p]).epsilon(1e-9));
    for (std::size_t a = 0; a < f.tangent_dim(); ++a) {
      CHECK(std::fabs(io.B(0, a)) < 1e-10);
      for (std::size_t b = 0; b < f.tangent_dim(); ++b) CHECK(std::fabs(io.B(a, b) - io.B(b, a)) < 1e-10);
    }
  }
}

TEST_CASE("unit normal of the isotropic quadric is JZ / |Z|") {
  Scene<double> s = build_example_61(1);
  Hypersurface<double> h = s.surface;
  h.view = MetricView::Bar;
  auto bar = make_context(s.ambient, h);
  for (const auto& z : sample_points(s, SamplerConfig{})) {
    auto u = unit_normal<double, double>(bar, z);
    Vec<double> jz = s.ambient.J * z;
    double len = std::sqrt(bilinear(s.ambient.gram, z, z));
    CHECK(u.eps == -1);
    CHECK(max_abs(Vec<double>(u.n - jz * (1.0 / len))) < 1e-12);
  }
}

TEST_CASE("property: gauge covariance") {
  // Doubling the gauge doubles xi, B = g(nabla_X Y, xi) and A*_xi, halves N
  // and A_N, and leaves tau on the screen unchanged.
  Scene<double> s1 = build_example_61(1);
  Scene<double> s2 = s1;
  s2.surface.gauge = 2.0;
  auto c1 = lightlike_context(s1);
  auto c2 = lightlike_context(s2);
  SamplerConfig cfg;
  cfg.count = 20;
  for (const auto& z : sample_points(s1, cfg)) {
    LocalFrame<double> l1 = local_frame(c1, z), l2 = local_frame(c2, z);
    auto i1 = induced_objects(c1, l1);
    auto i2 = induced_objects(c2, l2);
    CHECK(max_abs(Vec<double>(l2.f.xi - l1.f.xi * 2.0)) < 1e-12);
    CHECK(max_abs(Vec<double>(l2.f.N - l1.f.N * 0.5)) < 1e-12);
    for (std::size_t i = 1; i < l1.f.tangent_dim(); ++i) {
      CHECK(max_abs(Vec<double>(l2.f.W[i - 1] - l1.f.W[i - 1])) < 1e-12);
      CHECK(i2.tau[i] == doctest::Approx(i1.tau[i]).epsilon(1e-10));
      CHECK(max_abs(Vec<double>(i2.Astar[i] - i1.Astar[i] * 2.0)) < 1e-10);
      CHECK(max_abs(Vec<double>(i2.AN[i] - i1.AN[i] * 0.5)) < 1e-10);
      for (std::size_t j = 1; j < l1.f.tangent_dim(); ++j) CHECK(std::fabs(i2.B(i, j) - 2.0 * i1.B(i, j)) < 1e-10);
    }
  }
}

TEST_CASE("screen transform: identity data returns the same frame") {
  Scene<Rational> s = build_example_62();
  auto ctx = lightlike_context(s);
  Frame<Rational> f = build_frame(ctx, Vec<Rational>(4));
  Frame<Rational> g = screen_transform(f, Vec<Rational>(2), Matrix<Rational>::identity(2), 0.0);
  CHECK(g.xi == f.xi);
  CHECK(g.N == f.N);
  CHECK(g.W == f.W);
}

TEST_CASE("property: screen transforms preserve quasi-orthonormality") {
  Scene<Rational> s = build_example_62();
  auto ctx = lightlike_context(s);
  Frame<Rational> f = build_frame(ctx, Vec<Rational>(4));
  // Rational boosts (a^2 - b^2 = 1) and a reflection are semi-orthogonal for
  // the signs (1, -1); a rotation is not.
  const Matrix<Rational> boosts[] = {
      Matrix<Rational>{{q(5, 4), q(3, 4)}, {q(3, 4), q(5, 4)}},
      Matrix<Rational>{{q(13, 12), q(-5, 12)}, {q(-5, 12), q(13, 12)}},
      Matrix<Rational>{{q(-1), q(0)}, {q(0), q(1)}},
  };
  for (const auto& w : boosts)
    for (long a = -2; a <= 2; ++a)
      for (long b = -2; b <= 2; ++b) {
        Vec<Rational> fs{q(a, 3), q(b, 2)};
        Frame<Rational> g = screen_transform(f, fs, w, 0.0);
        CHECK(quasi_orthonormal_residual(ctx, g) == 0);
      }
  Matrix<Rational> rot{{q(3, 5), q(-4, 5)}, {q(4, 5), q(3, 5)}};
  CHECK_THROWS_AS(screen_transform(f, Vec<Rational>(2), rot, 0.0), ParameterError);
}

TEST_CASE("frame suite passes on the builtin lightlike scenes") {
  Report r;
  Scene<Rational> a = build_example_62();
  frame_suite(lightlike_context(a), sample_points(a, SamplerConfig{}), Tolerances{}, r);
  Scene<double> b = build_example_61(2);
  SamplerConfig cfg;
  cfg.count = 30;
  frame_suite(lightlike_context(b), sample_points(b, cfg), Tolerances{}, r);
  for (const auto& c : r.checks()) {
    INFO(c.id << " residual " << c.residual << " " << c.note);
    CHECK(c.status != Status::Fail);
  }
}

TEST_CASE("screen stays quasi-orthonormal where candidates cancel") {
  // Projected candidates here cancel to rounding noise after the first
  // Gram-Schmidt step; the noise must not be picked as the second pivot.
  Scene<double> s = build_example_61(1);
  auto ctx = lightlike_context(s);
  Vec<double> x{1.0302148363949242, 3.6209495660710824, -3.8811904960917389, 1.1042573112354122};
  REQUIRE(std::fabs(s.surface.constraint.value(x)) < 1e-14);
  Frame<double> f = build_frame(ctx, x);
  CHECK(quasi_orthonormal_residual(ctx, f) < 1e-12);
  Report r;
  frame_suite(ctx, std::vector<Vec<double>>{x}, Tolerances{}, r);
  CHECK_FALSE(r.failed());
}

TEST_CASE("property: frame suite passes across seeds and dimensions") {
  for (std::size_t n : {1u, 2u, 3u}) {
    Scene<double> s = build_example_61(n);
    auto ctx = lightlike_context(s);
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
      SamplerConfig cfg;
      cfg.count = 20;
      cfg.seed = seed;
      Report r;
      frame_suite(ctx, sample_points(s, cfg), Tolerances{}, r);
      INFO("n " << n << " seed " << seed);
      CHECK_FALSE(r.failed());
    }
  }
}
