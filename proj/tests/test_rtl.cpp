#include <doctest.h>

#include <cmath>

#include "norden/rtl/rtl.hpp"
#include "norden/scenarios/scenarios.hpp"

using namespace norden;

namespace {

Rational q(long n, long d = 1) {
  Rational r(n, d);
  r.canonicalize();
  return r;
}

std::vector<Vec<double>> sample(const Scene<double>& s, std::size_t count, std::uint64_t seed = 42) {
  SamplerConfig cfg;
  cfg.count = count;
  cfg.seed = seed;
  return sample_points(s, cfg);
}

void require_no_failures(const Report& r) {
  for (const auto& c : r.checks()) {
    INFO(c.id << " residual " << c.residual << " " << c.note);
    CHECK(c.status != Status::Fail);
  }
}

}  // namespace

TEST_CASE("sl(2,R) is radical transversal with b = -2") {
  Scene<Rational> s = build_example_62();
  auto ctx = lightlike_context(s);
  Frame<Rational> f = build_frame(ctx, Vec<Rational>(4));
  auto r = detect_rtl(ctx, f, 0.0);
  CHECK(r.b == -2);
  CHECK(r.a == 0);
  CHECK(max_abs(r.xi1) == 0);
  CHECK(r.decomposition == 0);
  CHECK(r.holomorphy == 0);
  CHECK(r.is_rtl);
  CHECK(r.holomorphic);
}

TEST_CASE("holomorphic screen iff radical transversal") {
  SUBCASE("isotropic quadric, both sides hold everywhere") {
    Scene<double> s = build_example_61(1);
    auto ctx = lightlike_context(s);
    for (const auto& x : sample(s, 100)) {
      auto r = detect_rtl(ctx, build_frame(ctx, x), 1e-9);
      CHECK(r.is_rtl == r.holomorphic);
      CHECK(r.is_rtl);
    }
  }
  SUBCASE("non-holomorphic screen, both sides fail") {
    Scene<Rational> s = control_non_holomorphic_screen();
    auto ctx = lightlike_context(s);
    auto r = detect_rtl(ctx, build_frame(ctx, Vec<Rational>(4)), 0.0);
    CHECK_FALSE(r.is_rtl);
    CHECK_FALSE(r.holomorphic);
  }
  SUBCASE("Hermitian ambient: b vanishes exactly") {
    Scene<Rational> s = control_hermitian();
    auto ctx = lightlike_context(s);
    for (const auto& x : sample_points(s, SamplerConfig{})) {
      auto r = detect_rtl(ctx, build_frame(ctx, x), 0.0);
      CHECK(r.b == 0);
      CHECK_FALSE(r.is_rtl);
    }
  }
}

TEST_CASE("built-in hypotheses") {
  Scene<double> a = build_example_61(1);
  auto ha = hypotheses(lightlike_context(a), sample(a, 20), Tolerances{});
  CHECK(ha.holds());
  CHECK(ha.complex);
  CHECK(ha.reason.empty());
  Scene<Rational> b = build_example_62();
  auto hb = hypotheses(lightlike_context(b), sample_points(b, SamplerConfig{}), Tolerances{});
  CHECK(hb.rtl);
  CHECK_FALSE(hb.kaehler);
  CHECK_FALSE(hb.complex);
  CHECK_FALSE(hb.reason.empty());
}

TEST_CASE("compare_screens with identical screens") {
  Scene<Rational> s = build_example_62();
  auto ctx = lightlike_context(s);
  Frame<Rational> f = build_frame(ctx, Vec<Rational>(4));
  auto c = compare_screens(ctx, f, f.W, 0.0);
  CHECK(max_abs(c.f) == 0);
  CHECK(c.wmat == Matrix<Rational>::identity(2));
  CHECK(c.n_diff == 0);
  CHECK(c.semi_orth == 0);
  CHECK(c.reconstruction == 0);
  CHECK(c.second_holomorphic);
}

TEST_CASE("compare_screens recovers a boost of the screen") {
  Scene<Rational> s = build_example_62();
  auto ctx = lightlike_context(s);
  Frame<Rational> f = build_frame(ctx, Vec<Rational>(4));
  // W'_1 = 5/4 X2 + 3/4 X3, W'_2 = 3/4 X2 + 5/4 X3 stay holomorphic:
  // J X2 = X3 maps the screen to itself.
  std::vector<Vec<Rational>> w2{f.W[0] * q(5, 4) + f.W[1] * q(3, 4), f.W[0] * q(3, 4) + f.W[1] * q(5, 4)};
  auto c = compare_screens(ctx, f, w2, 0.0);
  CHECK(max_abs(c.f) == 0);
  CHECK(c.n_diff == 0);
  CHECK(c.semi_orth == 0);
  CHECK(c.wmat == Matrix<Rational>{{q(5, 4), q(3, 4)}, {q(3, 4), q(5, 4)}});
  CHECK(c.second_holomorphic);
}

TEST_CASE("property: random holomorphic screens give the same transversal") {
  Scene<double> s = build_example_61(2);
  auto ctx = lightlike_context(s);
  auto pts = sample(s, 10, 5);
  std::uint64_t seed = 1;
  for (const auto& x : pts) {
    Frame<double> f = build_frame(ctx, x);
    for (int k = 0; k < 5; ++k) {
      auto w2 = random_holomorphic_screen(ctx, x, f.eps, ++seed, 1e-9);
      auto c = compare_screens(ctx, f, w2, 1e-9);
      CHECK(c.second_holomorphic);
      CHECK(c.f_max < 1e-9);
      CHECK(c.n_diff < 1e-9);
      CHECK(c.semi_orth < 1e-9);
    }
  }
}

TEST_CASE("random holomorphic screens are deterministic in the seed") {
  Scene<Rational> s = build_example_62();
  auto ctx = lightlike_context(s);
  Vec<Rational> x(4);
  Frame<Rational> f = build_frame(ctx, x);
  auto a = random_holomorphic_screen(ctx, x, f.eps, 99, 0.0);
  auto b = random_holomorphic_screen(ctx, x, f.eps, 99, 0.0);
  CHECK(a == b);
  bool differs = false;
  for (std::uint64_t seed = 100; seed < 110 && !differs; ++seed)
    differs = random_holomorphic_screen(ctx, x, f.eps, seed, 0.0) != a;
  CHECK(differs);
}

TEST_CASE("isotropic quadric is totally umbilical with rho = -1/Z_p") {
  Scene<double> s = build_example_61(1);
  auto ctx = lightlike_context(s);
  for (const auto& x : sample(s, 30)) {
    LocalFrame<double> lf = local_frame(ctx, x);
    auto io = induced_objects(ctx, lf);
    auto ud = umbilical_data(ctx, lf.f, io);
    std::size_t p = 0;
    for (std::size_t i = 1; i < x.size(); ++i)
      if (std::fabs(x[i]) > std::fabs(x[p])) p = i;
    CHECK(ud.rho_residual < 1e-10);
    CHECK(ud.rho == doctest::Approx(-1.0 / x[p]).epsilon(1e-10));
  }
}

TEST_CASE("induced Ricci tensor is symmetric on the isotropic quadric") {
  Scene<double> s = build_example_61(1);
  auto ctx = lightlike_context(s);
  for (const auto& x : sample(s, 10)) {
    RicciData<double> rd = induced_ricci(ctx, x);
    CHECK(max_abs(Matrix<double>(rd.ric - rd.ric.transpose())) < 1e-8);
    CHECK(max_abs(rd.dtau) < 1e-9);
  }
}

TEST_CASE("Kaehler-side suites pass on the isotropic quadric") {
  Scene<double> s = build_example_61(1);
  auto ctx = lightlike_context(s);
  auto pts = sample(s, 40);
  SuiteOptions o;
  Report r;
  rtl_suite(ctx, pts, o, r);
  kaehler_identities_suite(ctx, pts, o, r);
  uniqueness_suite(ctx, pts, o, r);
  selfconjugacy_suite(ctx, pts, o, r);
  integrability_suite(ctx, pts, o, r);
  geodesic_umbilical_suite(ctx, pts, o, r);
  ricci_suite(ctx, pts, o, r);
  require_no_failures(r);
  CHECK(r.count(Status::Pass) > 30);
}

TEST_CASE("Kaehler-side suites skip on a non-Kaehler ambient") {
  Scene<Rational> s = build_example_62();
  auto ctx = lightlike_context(s);
  auto pts = sample_points(s, SamplerConfig{});
  Report r;
  kaehler_identities_suite(ctx, pts, SuiteOptions{}, r);
  ricci_suite(ctx, pts, SuiteOptions{}, r);
  CHECK(r.count(Status::Pass) == 0);
  CHECK(r.count(Status::Fail) == 0);
  CHECK(r.count(Status::Skipped) >= 2);
}
