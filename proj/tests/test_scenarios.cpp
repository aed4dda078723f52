#include <doctest.h>

#include <cmath>
#include <cstring>

#include "norden/scenarios/scenarios.hpp"

using namespace norden;

namespace {

SamplerConfig config(std::size_t count, std::uint64_t seed) {
  SamplerConfig cfg;
  cfg.count = count;
  cfg.seed = seed;
  return cfg;
}

}  // namespace

TEST_CASE("splitmix64 reference outputs") {
  // First outputs of the reference generator seeded with 0.
  CHECK(splitmix64(0) == 0xe220a8397b1dcdafULL);
  CHECK(splitmix64(0x9e3779b97f4a7c15ULL) == 0x6e789e6aa1b965f4ULL);
}

TEST_CASE("sampler is a pure function of the configuration") {
  Scene<double> s = build_example_61(1);
  auto a = sample_points(s, config(50, 42));
  auto b = sample_points(s, config(50, 42));
  REQUIRE(a.size() == 50);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t k = 0; k < a[i].size(); ++k) CHECK(std::memcmp(&a[i][k], &b[i][k], sizeof(double)) == 0);
  auto c = sample_points(s, config(50, 43));
  CHECK(max_abs(Vec<double>(a[0] - c[0])) > 0.0);
}

TEST_CASE("property: shorter samples are prefixes of longer ones") {
  Scene<double> s = build_example_61(2);
  for (std::uint64_t seed : {1u, 2u, 3u}) {
    auto small = sample_points(s, config(10, seed));
    auto large = sample_points(s, config(25, seed));
    for (std::size_t i = 0; i < small.size(); ++i) CHECK(small[i] == large[i]);
  }
}

TEST_CASE("property: samples lie on M inside the domain") {
  for (std::size_t n : {1u, 2u, 3u}) {
    Scene<double> s = build_example_61(n);
    SamplerConfig cfg = config(100, 42 + n);
    for (const auto& z : sample_points(s, cfg)) {
      CHECK(std::fabs(s.surface.constraint.value(z)) <= 1e-12);
      CHECK(bilinear(s.ambient.gram, z, z) > *s.surface.norm_above + cfg.margin);
    }
  }
  Scene<double> sphere = control_sphere(1);
  for (const auto& z : sample_points(sphere, config(30, 9)))
    CHECK(std::fabs(bilinear(sphere.ambient.gram, z, z) - 2.0) <= 1e-12);
}

TEST_CASE("exact sampling on a linear constraint") {
  Scene<Rational> s = control_hermitian();
  auto pts = sample_points(s, config(20, 5));
  REQUIRE(pts.size() == 20);
  for (const auto& x : pts) CHECK(s.surface.constraint.value(x) == 0);
  CHECK(pts == sample_points(s, config(20, 5)));
}

TEST_CASE("subalgebra scenes sample the identity") {
  Scene<Rational> s = build_example_62();
  auto pts = sample_points(s, config(100, 1));
  REQUIRE(pts.size() == 1);
  CHECK(pts[0] == Vec<Rational>(4));
}

TEST_CASE("sampler parameter errors") {
  Scene<double> s = build_example_61(1);
  CHECK_THROWS_AS(sample_points(s, config(0, 1)), ParameterError);
  SamplerConfig far = config(5, 1);
  far.box = 0.1;  // g(Z, Z) > 1.1 is unreachable from this box
  far.max_iters = 3;
  CHECK_THROWS_AS(sample_points(s, far), PreconditionError);
}

TEST_CASE("builtin scene metadata") {
  CHECK(build_example_61(2).ambient.dim == 6);
  CHECK(build_example_61(2).surface.view == MetricView::Tilde);
  CHECK(build_example_62().surface.view == MetricView::Bar);
  CHECK(build_example_61(1).expect_kaehler);
  CHECK_THROWS_AS(build_example_61(0), ParameterError);
}
