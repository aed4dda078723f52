#include "norden/scenarios/controls.hpp"

#include <cmath>

#include "norden/ambient/ambient.hpp"
#include "norden/dualmetric/dualmetric.hpp"

namespace norden {

namespace {

Check flag_check(const std::string& id, const std::string& suite, bool ok, std::string residual, bool exact,
                 double tol, std::size_t points, std::string note) {
  Check c;
  c.id = id;
  c.suite = suite;
  c.status = ok ? Status::Pass : Status::Fail;
  c.residual = std::move(residual);
  c.exact = exact;
  c.tolerance = exact ? 0.0 : tol;
  c.points = points;
  c.note = std::move(note);
  return c;
}

Vec<Rational> q(std::initializer_list<Rational> v) { return Vec<Rational>(v); }

void control_a(const SuiteOptions& o, Report& out) {
  const std::string suite = "controls";
  auto s = control_non_holomorphic_screen();
  auto ctx = lightlike_context(s);
  auto pts = sample_points(s, SamplerConfig{});
  Frame<Rational> f = build_frame(ctx, pts[0]);
  auto r = detect_rtl(ctx, f, o.tol.differential);
  bool ok = !r.is_rtl && !r.holomorphic;
  out.add(flag_check("controls.non_holomorphic_screen", suite, ok, format_scalar(r.holomorphy), true, 0.0, 1,
                     "screen {X2, X3 + xi} on sl(2,R): neither holomorphic nor radical transversal (a = " +
                         format_scalar(r.a) + ", |xi_1| = " + format_scalar(max_abs(r.xi1)) + ")"));
}

void control_b(const SamplerConfig& sampler, const SuiteOptions& o, Report& out) {
  const std::string suite = "controls";
  auto s = control_sphere(1);
  auto pts = sample_points(s, sampler);
  auto dp = dual_pair(s);
  std::size_t isotropic = 0, rtl = 0;
  double min_j = INFINITY;
  for (const auto& x : pts) {
    auto n = isotropic_normal(dp.bar, x, o.tol.differential);
    if (n.holds) ++isotropic;
    min_j = std::min(min_j, n.j_residual);
    try {
      auto basis = tangent_basis(dp.tilde, x, o.tol.differential);
      if (lightlike_detect(dp.tilde.view.gram, basis, o.tol.differential).signature.null == 1) ++rtl;
    } catch (const std::exception&) {
    }
  }
  out.add(flag_check("controls.sphere_not_isotropic", suite, isotropic == 0 && rtl == 0, format_scalar(min_j), false,
                     o.tol.differential, pts.size(),
                     "g(Z,Z) = 2: g(N, JN) != 0 and the associated metric is non-degenerate on M (" +
                         std::to_string(isotropic) + " isotropic, " + std::to_string(rtl) + " lightlike points)"));
}

void control_c(const SamplerConfig& sampler, const SuiteOptions& o, Report& out) {
  const std::string suite = "controls";
  auto s = control_hermitian();
  auto ctx = lightlike_context(s);
  auto pts = sample_points(s, sampler);
  auto hr = hermitian_residuals(s.ambient);
  Residual<Rational> herm;
  herm.observe(hr.j_square);
  herm.observe(hr.anti_isometry);
  out.add(residual_check("controls.hermitian_ambient", suite, herm, 0.0, 1, "J^2 = -I and g(JX,JY) = g(X,Y)"));
  Residual<Rational> b;
  std::size_t rtl = 0;
  for (const auto& x : pts) {
    Frame<Rational> f = build_frame(ctx, x);
    auto r = detect_rtl(ctx, f, o.tol.differential);
    b.observe(r.b);
    rtl += r.is_rtl;
  }
  out.add(residual_check("controls.hermitian_b_zero", suite, b, 0.0, pts.size(), "b = g(J xi, xi) vanishes exactly"));
  out.add(flag_check("controls.hermitian_not_rtl", suite, rtl == 0, std::to_string(rtl), true, 0.0, pts.size(),
                     "no radical transversal point in an indefinite Hermitian ambient"));
}

void control_flat(const SamplerConfig& sampler, const SuiteOptions& o, Report& out) {
  const std::string suite = "controls";
  auto s = control_flat_hyperplane();
  auto pts = sample_points(s, sampler);
  auto v = classify_acm(dual_pair(s), pts, o.tol.differential);
  out.add(flag_check("controls.flat_hyperplane_f0", suite, v.label == "F_0", format_scalar(v.f0), false,
                     o.tol.differential, pts.size(), "u1 = 0 has A = 0 and classifies F_0 (got " + v.label + ")"));
}

}  // namespace

void controls_suite(const SamplerConfig& sampler, const SuiteOptions& o, Report& out) {
  control_a(o, out);
  control_b(sampler, o, out);
  control_c(sampler, o, out);
  control_flat(sampler, o, out);
}

void example_62_checks(const Scene<Rational>& s, Report& out) {
  const std::string suite = "example";
  auto ctx = lightlike_context(s);
  const Vec<Rational> x(ctx.dim);
  const Rational h(1, 2);
  auto exact = [&](const std::string& id, const Residual<Rational>& r, const std::string& note) {
    out.add(residual_check("example.sl2." + id, suite, r, 0.0, 1, note));
  };

  Residual<Rational> br;
  br.observe(Vec<Rational>(structure_apply(ctx, basis_vector<Rational>(4, 1), basis_vector<Rational>(4, 2)) -
                           q({1, 0, 0, -1})));
  exact("bracket", br, "[X2, X3] = X1 - X4");
  Residual<Rational> gram;
  gram.observe(max_abs(Matrix<Rational>(s.ambient.gram -
                                         Matrix<Rational>::diagonal(q({-1, 1, -1, 1})))));
  exact("gram", gram, "g = diag(-1, 1, -1, 1)");

  LocalFrame<Rational> lf = local_frame(ctx, x);
  const Frame<Rational>& f = lf.f;
  InducedObjects<Rational> io = induced_objects(ctx, lf);
  Residual<Rational> rad, tr, bval, scr, shape;
  rad.observe(Vec<Rational>(f.xi - q({1, 0, 0, -1})));
  auto det = lightlike_detect(ctx.view.gram, tangent_basis(ctx, x), 0.0);
  if (det.signature.null != 1 || !det.radical) rad.observe(Rational(1));
  else {
    const Vec<Rational>& r = *det.radical;
    rad.observe(Vec<Rational>(r - q({1, 0, 0, -1}) * r[0]));
  }
  exact("radical", rad, "radical spanned by xi = X1 - X4");
  tr.observe(Vec<Rational>(f.N - q({-h, 0, 0, -h})));
  exact("transversal", tr, "N = -(X1 + X4)/2");
  auto r = detect_rtl(ctx, f, 0.0);
  bval.observe(r.b + Rational(2));
  bval.observe(Vec<Rational>(apply_J(ctx, f.xi) + f.N * Rational(2)));
  exact("b", bval, "J xi = -2N, b = -2");
  scr.observe(Vec<Rational>(f.W[0] - q({0, 1, 0, 0})));
  scr.observe(Vec<Rational>(f.W[1] - q({0, 0, 1, 0})));
  scr.observe(r.holomorphy);
  if (!r.is_rtl) scr.observe(Rational(1));
  exact("screen", scr, "screen {X2, X3} is holomorphic and the hypersurface is radical transversal");
  shape.observe(io.AN[0]);
  shape.observe(Vec<Rational>(io.AN[1] - q({0, 0, -h, 0})));
  shape.observe(Vec<Rational>(io.AN[2] - q({0, -h, 0, 0})));
  shape.observe(io.Astar[0]);
  shape.observe(Vec<Rational>(io.Astar[1] - q({0, 2, 0, 0})));
  shape.observe(Vec<Rational>(io.Astar[2] - q({0, 0, -2, 0})));
  const Rational c_expected[3][2] = {{0, 0}, {0, h}, {-h, 0}};
  for (std::size_t a = 0; a < 3; ++a)
    for (std::size_t j = 0; j < 2; ++j) shape.observe(io.C(a, j) - c_expected[a][j]);
  shape.observe(io.tau);
  exact("shape_operators", shape, "A_N, A* and C at the identity; tau = 0");
}

void example_61_checks(const Scene<double>& s, const std::vector<Vec<double>>& points, double margin,
                       const SuiteOptions& o, Report& out) {
  const std::string suite = "example";
  const double t = o.tol.differential;
  const std::size_t half = s.n + 1;
  const std::size_t d = 2 * half;
  auto dp = dual_pair(s);
  auto add = [&](const std::string& id, const Residual<double>& r, std::size_t np, const std::string& note) {
    out.add(residual_check("example.isotropic." + id, suite, r, t, np, note));
  };

  // The constraint is 2 Σ u_i v_i.
  Residual<double> poly;
  for (std::uint64_t i = 0; i < 8; ++i) {
    Vec<double> z(d);
    for (std::size_t k = 0; k < d; ++k) z[k] = std::ldexp(static_cast<double>(splitmix64(i * d + k) >> 40), -20) - 8.0;
    double expected = 0.0;
    for (std::size_t k = 0; k < half; ++k) expected += 2.0 * z[k] * z[half + k];
    poly.observe(s.surface.constraint.value(z) - expected);
  }
  Vec<double> off(d);
  off[0] = 1.0;
  off[half] = 1.0;
  poly.observe(s.surface.constraint.value(off) - 2.0);
  add("constraint", poly, 9, "g(Z, JZ) = 2 sum u_i v_i; (1,0,..,1,0,..) is off M");

  Vec<double> z0(d);
  z0[half] = 2.0;
  Residual<double> at;
  at.observe(s.surface.constraint.value(z0));
  at.observe(bar_g(dp.bar, z0, z0) - 4.0);
  auto n = isotropic_normal(dp.bar, z0, t);
  Vec<double> expected_n(d);
  expected_n[0] = -1.0;
  at.observe(Vec<double>(n.n - expected_n));
  at.observe(static_cast<double>(n.eps + 1));
  at.observe(n.j_residual);
  auto ac = build_almost_contact(dp.bar, z0, t);
  at.observe(Vec<double>(ac.xi_bar - basis_vector<double>(d, half)));
  at.observe(ac.eta(ac.xi_bar) - 1.0);
  add("normal_at_point", at, 1, "Z = 2 dv_1: on M, N = -du_1 time-like, g(N, JN) = 0, xi-bar = dv_1");

  Residual<double> tl, dom, on;
  for (const auto& x : points) {
    auto m = isotropic_normal(dp.bar, x, t);
    tl.observe(static_cast<double>(m.eps + 1));
    tl.observe(m.j_residual);
    on.observe(s.surface.constraint.value(x));
    double gz = bar_g(dp.bar, x, x);
    if (s.surface.norm_above && gz < *s.surface.norm_above + margin) dom.observe(*s.surface.norm_above + margin - gz);
  }
  add("time_like_normal", tl, points.size(), "eps = -1 and g(N, JN) = 0 at every sampled point");
  Residual<double> samp = on;
  samp.merge(dom);
  out.add(residual_check("example.isotropic.sampling", suite, samp, 1e-12, points.size(),
                         "sampled points satisfy |F| <= 1e-12 and the domain margin"));
  auto kc = kaehler_check(s.ambient, o.tol.algebraic);
  out.add(flag_check("example.isotropic.kaehler", suite, kc.kaehler, "0", false, o.tol.algebraic, 1,
                     "flat Norden ambient: all connection coefficients vanish"));
}

}  // namespace norden
