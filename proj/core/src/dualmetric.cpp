#include "norden/dualmetric/dualmetric.hpp"

#include <cmath>

namespace norden {

namespace {

double parallel_residual(Vec<double> u, const Vec<double>& v) {
  double su = max_abs(u), sv = max_abs(v);
  if (su == 0.0 || sv == 0.0) return 1.0;
  double worst = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i)
    for (std::size_t j = i + 1; j < u.size(); ++j)
      worst = std::max(worst, std::fabs(u[i] * v[j] - u[j] * v[i]) / (su * sv));
  return worst;
}

double screen_den(const Context<double>& bar) {
  if (bar.dim < 4) throw DimensionError("classification needs an ambient of dimension at least 4");
  return static_cast<double>(bar.dim) - 2.0;
}

std::optional<std::string> obstruction(const DualPair& dp, const std::vector<Vec<double>>& points,
                                       const Tolerances& tol, bool need_kaehler) {
  if (dp.bar.dim < 4) return std::string("ambient dimension below 4");
  if (need_kaehler && !kaehler_check(dp.bar.ambient, tol.algebraic).kaehler) return std::string("ambient is not Kaehler");
  std::size_t bad = 0, spacelike = 0;
  for (const auto& x : points) {
    try {
      auto n = isotropic_normal(dp.bar, x, tol.differential);
      if (!n.holds) ++bad;
      else if (n.eps == 1) ++spacelike;
    } catch (const PreconditionError&) {
      ++bad;
    }
  }
  if (bad) return std::to_string(bad) + " point(s) without an isotropic unit normal";
  if (spacelike) return std::string("space-like unit normal: the almost contact structure is only defined for eps = -1");
  return std::nullopt;
}

// Lightlike-side radical transversal verdict, false where the tilde side is
// not even lightlike.
bool tilde_rtl(const DualPair& dp, const Vec<double>& x, double tol) {
  try {
    auto basis = tangent_basis(dp.tilde, x, tol);
    auto det = lightlike_detect(dp.tilde.view.gram, basis, tol);
    if (det.signature.null != 1) return false;
    Frame<double> f = build_frame(dp.tilde, x);
    return detect_rtl(dp.tilde, f, tol).is_rtl;
  } catch (const std::exception&) {
    return false;
  }
}

Check info_check(const std::string& id, const std::string& suite, std::size_t points, const std::string& residual,
                 const std::string& note) {
  Check c;
  c.id = id;
  c.suite = suite;
  c.status = Status::Info;
  c.points = points;
  c.residual = residual;
  c.note = note;
  return c;
}

// Non-degenerate-side connection ∇_X Y = tangent part of ∇̄_X Y for g.
Vec<double> nondegenerate_connection(const Context<double>& bar, const Vec<double>& nabla_bar, const Vec<double>& n,
                                     int eps) {
  return nabla_bar - n * (eps * bar_g(bar, nabla_bar, n));
}

}  // namespace

DualPair dual_pair(const Scene<double>& s) {
  return DualPair{view_context(s, MetricView::Bar), view_context(s, MetricView::Tilde)};
}

IsotropicNormal isotropic_normal(const Context<double>& bar, const Vec<double>& x, double tol) {
  auto u = unit_normal<double, double>(bar, x);
  IsotropicNormal r;
  r.n = u.n;
  r.eps = u.eps;
  r.j_residual = std::fabs(bar_g(bar, u.n, Vec<double>(apply_J(bar, u.n))));
  r.holds = r.j_residual <= tol;
  return r;
}

AlmostContact build_almost_contact(const Context<double>& bar, const Vec<double>& x, double tol) {
  auto n = isotropic_normal(bar, x, tol);
  if (!n.holds) throw PreconditionError("normal is not isotropic: g(N, JN) = " + format_scalar(n.j_residual));
  if (n.eps != -1) throw PreconditionError("almost contact structure needs a time-like unit normal");
  AlmostContact ac;
  ac.n_bar = n.n;
  ac.eps = n.eps;
  Vec<double> jn = apply_J(bar, n.n);
  Vec<double> gjn = bar.ambient.gram * jn;
  ac.xi_bar = -jn;
  ac.eta_bar = -gjn;
  ac.phi = bar.ambient.J;
  for (std::size_t i = 0; i < bar.dim; ++i)
    for (std::size_t j = 0; j < bar.dim; ++j) ac.phi(i, j) += n.n[i] * gjn[j];
  return ac;
}

Vec<double> shape_apply(const Context<double>& bar, const Vec<double>& x, const Vec<double>& X) {
  auto nd = unit_normal<double, Dual<double>>(bar, dual_point(x, X));
  Vec<double> n(bar.dim);
  for (std::size_t i = 0; i < bar.dim; ++i) n[i] = nd.n[i].v;
  return -(tangent_part(nd.n) + gamma_apply(bar, X, n));
}

ClassResiduals class_residuals(const Context<double>& bar, const Vec<double>& x, double tol) {
  const double den = screen_den(bar);
  AlmostContact ac = build_almost_contact(bar, x, tol);
  auto basis = tangent_basis(bar, x, tol);
  const std::size_t T = basis.size();
  Matrix<double> gt(T, T);
  for (std::size_t a = 0; a < T; ++a)
    for (std::size_t b = 0; b < T; ++b) gt(a, b) = bar_g(bar, basis[a], basis[b]);
  Matrix<double> gi = inverse(gt);
  std::vector<Vec<double>> ax, aphi, phix;
  for (const auto& e : basis) {
    ax.push_back(shape_apply(bar, x, e));
    phix.push_back(ac.apply_phi(e));
    aphi.push_back(shape_apply(bar, x, phix.back()));
  }
  ClassResiduals r;
  for (std::size_t a = 0; a < T; ++a)
    for (std::size_t b = 0; b < T; ++b) {
      r.theta += bar_g(bar, ax[a], basis[b]) * gi(b, a);
      r.theta_star += bar_g(bar, aphi[a], basis[b]) * gi(b, a);
    }
  r.f456 = max_abs(shape_apply(bar, x, ac.xi_bar));
  for (std::size_t a = 0; a < T; ++a) {
    r.f0 = std::max(r.f0, max_abs(ax[a]));
    r.f4 = std::max(r.f4, max_abs(Vec<double>(ax[a] + ac.apply_phi(phix[a]) * (r.theta / den))));
    r.f5 = std::max(r.f5, max_abs(Vec<double>(ax[a] + phix[a] * (r.theta_star / den))));
    r.f456 = std::max(r.f456, max_abs(Vec<double>(aphi[a] - ac.apply_phi(ax[a]))));
  }
  return r;
}

std::string class_label(bool f0, bool f4, bool f5, bool f456) {
  if (f0) return "F_0";
  if (f4) return "F_4";
  if (f5) return "F_5";
  if (f456) return "F_4+F_5+F_6";
  return "other";
}

ClassVerdict classify_acm(const DualPair& dp, const std::vector<Vec<double>>& points, double tol) {
  ClassVerdict v;
  for (const auto& x : points) {
    auto r = class_residuals(dp.bar, x, tol);
    v.theta = std::max(v.theta, std::fabs(r.theta));
    v.theta_star = std::max(v.theta_star, std::fabs(r.theta_star));
    v.f0 = std::max(v.f0, r.f0);
    v.f4 = std::max(v.f4, r.f4);
    v.f5 = std::max(v.f5, r.f5);
    v.f456 = std::max(v.f456, r.f456);
  }
  v.in_f0 = v.f0 <= tol;
  v.in_f4 = v.f4 <= tol;
  v.in_f5 = v.f5 <= tol;
  v.in_f456 = v.f456 <= tol;
  v.label = class_label(v.in_f0, v.in_f4, v.in_f5, v.in_f456);
  return v;
}

template <class S>
S frame_lambda(const DualPair& dp, const Vec<S>& x) {
  Frame<S> f = build_frame(dp.tilde, x);
  auto u = unit_normal<double, S>(dp.bar, x);
  Vec<S> jn = apply_J(dp.bar, u.n);
  return -S(static_cast<double>(u.eps)) / bar_g(dp.bar, f.xi, jn);
}

template double frame_lambda<double>(const DualPair&, const Vec<double>&);
template Dual<double> frame_lambda<Dual<double>>(const DualPair&, const Vec<Dual<double>>&);

std::optional<std::string> second_type_obstruction(const DualPair& dp, const std::vector<Vec<double>>& points,
                                                   const Tolerances& tol) {
  return obstruction(dp, points, tol, true);
}

void correspondence_suite(const DualPair& dp, const std::vector<Vec<double>>& points, const SuiteOptions& o,
                          Report& out) {
  const std::string suite = "correspondence";
  const double t = o.tol.differential;
  const Context<double>& bar = dp.bar;
  const Context<double>& tilde = dp.tilde;
  Agreement eq;
  Residual<double> fwd_frame, fwd_rtl, sign, decomp, back_unit, back_iso, back_normal, duality;
  std::size_t normal_points = 0, rtl_points = 0, fwd_not_rtl = 0, duality_bad = 0;

  for (const auto& x : points) {
    std::optional<IsotropicNormal> nn;
    try {
      nn = isotropic_normal(bar, x, t);
    } catch (const PreconditionError&) {
    }
    const bool normal_ok = nn && nn->holds;
    const bool rtl = tilde_rtl(dp, x, t);
    eq.observe(normal_ok, rtl);
    auto basis = tangent_basis(bar, x, t);
    Vec<double> dF = constraint_covector(bar, x);

    if (normal_ok) {
      ++normal_points;
      const Vec<double>& n = nn->n;
      Vec<double> jn = apply_J(bar, n);
      // Forward: ξ = JN, N = μN with g̃(ξ, N) = 1, screen = g-complement of {N, JN}.
      Frame<double> ff;
      ff.xi = jn;
      double mu = 1.0 / view_g(tilde, jn, n);
      ff.N = n * mu;
      sign.observe(mu + nn->eps);  // λμ = -ε with λ = 1
      // Candidates: the standard basis projected g-orthogonally off {N, JN}.
      std::vector<Vec<double>> cand;
      const double jj = bar_g(bar, jn, jn);
      for (std::size_t k = 0; k < bar.dim; ++k) {
        Vec<double> e = basis_vector<double>(bar.dim, k);
        cand.push_back(e - n * (nn->eps * bar_g(bar, e, n)) - jn * (bar_g(bar, e, jn) / jj));
      }
      auto gs = indefinite_gram_schmidt<double>(tilde.view.gram, cand, bar.dim - 2, 1e-8);
      ff.W = gs.vectors;
      ff.eps = gs.signs;
      fwd_frame.observe(view_g(tilde, ff.xi, ff.xi));
      fwd_frame.observe(view_g(tilde, ff.N, ff.N));
      fwd_frame.observe(view_g(tilde, ff.xi, ff.N) - 1.0);
      fwd_frame.observe(dot(dF, ff.xi));
      for (const auto& b : basis) fwd_frame.observe(view_g(tilde, ff.xi, b));
      for (std::size_t i = 0; i < ff.W.size(); ++i) {
        fwd_frame.observe(dot(dF, ff.W[i]));
        fwd_frame.observe(view_g(tilde, ff.W[i], ff.xi));
        fwd_frame.observe(view_g(tilde, ff.W[i], ff.N));
        for (std::size_t j = 0; j < ff.W.size(); ++j)
          fwd_frame.observe(view_g(tilde, ff.W[i], ff.W[j]) - (i == j ? ff.eps[i] : 0));
      }
      auto r = detect_rtl(tilde, ff, t);
      fwd_rtl.observe(max_abs(r.xi1));
      fwd_rtl.observe(r.a);
      fwd_rtl.observe(r.holomorphy);
      fwd_rtl.observe(r.decomposition);
      if (!r.is_rtl) ++fwd_not_rtl;

      auto det = lightlike_detect(tilde.view.gram, basis, t);
      if (det.signature.null != 1 || !det.radical) ++duality_bad;
      else duality.observe(parallel_residual(*det.radical, jn));
    }

    if (rtl) {
      ++rtl_points;
      Frame<double> f = build_frame(tilde, x);
      auto r = detect_rtl(tilde, f, t);
      for (std::size_t i = 0; i < f.W.size(); ++i) {
        decomp.observe(bar_g(bar, f.W[i], f.xi));
        decomp.observe(bar_g(bar, f.W[i], f.N));
      }
      decomp.observe(bar_g(bar, f.xi, f.N));
      for (const auto& b : basis) decomp.observe(bar_g(bar, b, f.N));
      Vec<double> nb = f.N * std::sqrt(std::fabs(r.b));
      double expected = r.b > 0 ? 1.0 : -1.0;
      back_unit.observe(bar_g(bar, nb, nb) - expected);
      if (nn && nn->eps != static_cast<int>(expected)) back_unit.observe(2.0);
      back_iso.observe(bar_g(bar, nb, Vec<double>(apply_J(bar, nb))));
      for (const auto& b : basis) back_normal.observe(bar_g(bar, nb, b));
    }
  }

  const std::size_t np = points.size();
  out.add(agreement_check(suite + ".equivalence", suite, eq, false,
                          "isotropic unit normal for g <=> radical transversal lightlike for the associated metric"));
  if (normal_points) {
    out.add(residual_check(suite + ".forward_frame", suite, fwd_frame, t, normal_points,
                           "xi = JN, N' = mu N and the g-complement of {N, JN} form a quasi-orthonormal frame"));
    Check c = residual_check(suite + ".forward_rtl", suite, fwd_rtl, t, normal_points,
                             "the forward frame is radical transversal with a holomorphic screen");
    if (fwd_not_rtl) {
      c.status = Status::Fail;
      c.note += "; " + std::to_string(fwd_not_rtl) + " point(s) not radical transversal";
    }
    out.add(c);
    out.add(residual_check(suite + ".sign", suite, sign, t, normal_points, "lambda mu = -eps"));
    Check d = residual_check(suite + ".radical_duality", suite, duality, t, normal_points,
                             "radical of the associated metric is spanned by JN");
    if (duality_bad) {
      d.status = Status::Fail;
      d.note += "; " + std::to_string(duality_bad) + " point(s) without a one-dimensional radical";
    }
    out.add(d);
  } else {
    for (const char* id : {".forward_frame", ".forward_rtl", ".sign", ".radical_duality"})
      out.add(skipped_check(suite + id, suite, "no point with an isotropic unit normal"));
  }
  if (rtl_points) {
    out.add(residual_check(suite + ".decomposition", suite, decomp, t, rtl_points,
                           "screen, radical and transversal bundles are mutually g-orthogonal"));
    out.add(residual_check(suite + ".backward_unit", suite, back_unit, t, rtl_points,
                           "sqrt|b| N is a unit normal with sign(b) = eps"));
    out.add(residual_check(suite + ".backward_isotropic", suite, back_iso, t, rtl_points, "g(N', JN') = 0"));
    out.add(residual_check(suite + ".backward_normal", suite, back_normal, t, rtl_points, "sqrt|b| N is g-normal to M"));
  } else {
    for (const char* id : {".decomposition", ".backward_unit", ".backward_isotropic", ".backward_normal"})
      out.add(skipped_check(suite + id, suite, "no radical transversal point"));
  }
  (void)np;
}

void acm_suite(const DualPair& dp, const std::vector<Vec<double>>& points, const SuiteOptions& o, Report& out) {
  const std::string suite = "acm_class";
  if (auto why = obstruction(dp, points, o.tol, false)) {
    out.add(skipped_check(suite + ".hypotheses", suite, *why));
    return;
  }
  const double t = o.tol.differential;
  const Context<double>& bar = dp.bar;
  Residual<double> phi2, eta_xi, bmetric, eta_phi, phi_xi, phi_screen, decomp, kernel, nesting;
  std::size_t f0_points = 0;
  for (const auto& x : points) {
    AlmostContact ac = build_almost_contact(bar, x, t);
    auto basis = tangent_basis(bar, x, t);
    eta_xi.observe(ac.eta(ac.xi_bar) - 1.0);
    phi_xi.observe(ac.apply_phi(ac.xi_bar));
    kernel.observe(shape_apply(bar, x, ac.xi_bar));
    for (const auto& X : basis) {
      Vec<double> px = ac.apply_phi(X);
      phi2.observe(Vec<double>(ac.apply_phi(px) + X - ac.xi_bar * ac.eta(X)));
      eta_phi.observe(ac.eta(px));
      Vec<double> pX = X - ac.xi_bar * ac.eta(X);
      phi_screen.observe(Vec<double>(px - apply_J(bar, pX)));
      kernel.observe(ac.eta(shape_apply(bar, x, X)));
      for (const auto& Y : basis)
        bmetric.observe(bar_g(bar, px, Vec<double>(ac.apply_phi(Y))) + bar_g(bar, X, Y) - ac.eta(X) * ac.eta(Y));
    }
    Frame<double> f = build_frame(dp.tilde, x);
    decomp.observe(bar_g(bar, ac.xi_bar, ac.n_bar));
    for (const auto& w : f.W) {
      decomp.observe(bar_g(bar, w, ac.xi_bar));
      decomp.observe(bar_g(bar, w, ac.n_bar));
      decomp.observe(view_g(dp.tilde, w, ac.xi_bar));
      decomp.observe(view_g(dp.tilde, w, ac.n_bar));
      decomp.observe(ac.eta(w));
    }
    auto r = class_residuals(bar, x, t);
    if (r.f0 <= t) {
      ++f0_points;
      nesting.observe(r.f4);
      nesting.observe(r.f5);
      nesting.observe(r.f456);
    }
  }
  const std::size_t np = points.size();
  auto add = [&](const std::string& id, const Residual<double>& r, const std::string& note) {
    out.add(residual_check(suite + "." + id, suite, r, t, np, note));
  };
  add("phi_square", phi2, "phi^2 = -Id + eta (x) xi");
  add("eta_xi", eta_xi, "eta(xi) = 1");
  add("b_metric", bmetric, "g(phi X, phi Y) = -g(X,Y) + eta(X) eta(Y)");
  add("eta_phi", eta_phi, "eta o phi = 0");
  add("phi_xi", phi_xi, "phi xi = 0");
  add("phi_screen", phi_screen, "phi X = J(PX)");
  add("decomposition", decomp, "contact distribution = screen, orthogonal to xi and N for both metrics");
  add("shape_kernel", kernel, "A xi = 0 and eta(AX) = 0");
  ClassVerdict v = classify_acm(dp, points, t);
  auto fmt = [](double d) { return format_scalar(d); };
  out.add(info_check(suite + ".f0", suite, np, fmt(v.f0), "A = 0"));
  out.add(info_check(suite + ".f4", suite, np, fmt(v.f4), "A = -theta/(D-2) phi^2, theta = tr A"));
  out.add(info_check(suite + ".f5", suite, np, fmt(v.f5), "A = -theta*/(D-2) phi, theta* = tr(A phi)"));
  out.add(info_check(suite + ".f456", suite, np, fmt(v.f456), "A xi = 0 and A phi = phi A"));
  out.add(info_check(suite + ".class", suite, np, v.label, "smallest class holding at every point: " + v.label));
  if (f0_points)
    out.add(residual_check(suite + ".nesting", suite, nesting, t, f0_points, "F_0 points satisfy every larger class"));
  else
    out.add(skipped_check(suite + ".nesting", suite, "no point with A = 0"));
}

void relations_suite(const DualPair& dp, const std::vector<Vec<double>>& points, const SuiteOptions& o, Report& out) {
  const std::string suite = "relations";
  if (auto why = second_type_obstruction(dp, points, o.tol)) {
    out.add(skipped_check(suite + ".hypotheses", suite, *why));
    return;
  }
  const double t = o.tol.differential;
  const Context<double>& bar = dp.bar;
  const Context<double>& tilde = dp.tilde;
  Residual<double> lc, gauge, conn, bform, shape, tau, weing, phi_shape, star, cform, gauss_l, gauss_n;
  for (std::size_t i = 0; i < bar.dim; ++i)
    for (std::size_t j = 0; j < bar.dim; ++j) {
      Vec<double> ei = basis_vector<double>(bar.dim, i), ej = basis_vector<double>(bar.dim, j);
      lc.observe(Vec<double>(gamma_apply(bar, ei, ej) - gamma_apply(tilde, ei, ej)));
    }
  for (const auto& x : points) {
    LocalFrame<double> lf = local_frame(tilde, x);
    const Frame<double>& f = lf.f;
    InducedObjects<double> io = induced_objects(tilde, lf);
    FrameCoords<double, double> fc{tilde, f};
    AlmostContact ac = build_almost_contact(bar, x, t);
    const Vec<double>& n = ac.n_bar;
    const int eps = ac.eps;
    const double lam = frame_lambda(dp, x);
    gauge.observe(Vec<double>(f.xi - apply_J(bar, n) / lam));
    gauge.observe(Vec<double>(f.N - n * lam));
    const std::size_t T = f.tangent_dim();
    std::vector<Vec<double>> A(T);
    for (std::size_t a = 0; a < T; ++a) A[a] = shape_apply(bar, x, f.E(a));
    for (std::size_t a = 0; a < T; ++a) {
      const Vec<double>& X = f.E(a);
      double dlam = frame_lambda(dp, dual_point(x, X)).d;
      tau.observe(io.tau[a] - dlam / lam);
      // Ã from the associated connection, with its normal coefficient.
      auto nd = unit_normal<double, Dual<double>>(bar, dual_point(x, X));
      Vec<double> tw = tangent_part(nd.n) + gamma_apply(tilde, X, n);
      double c = eps * bar_g(bar, tw, n);
      Vec<double> at = -(tw - n * c);
      shape.observe(Vec<double>(at - A[a]));
      shape.observe(Vec<double>(io.AN[a] / lam - A[a]));
      weing.observe(c - (io.tau[a] - dlam / lam));
      phi_shape.observe(Vec<double>(ac.apply_phi(A[a]) - apply_J(bar, A[a])));
      star.observe(Vec<double>(io.Astar[a] * (-lam) + ac.apply_phi(A[a])));
      for (std::size_t j = 0; j < f.screen_dim(); ++j)
        cform.observe(io.C(a, j) - lam * bar_g(bar, Vec<double>(ac.apply_phi(A[a])), f.W[j]));
      for (std::size_t b = 0; b < T; ++b) {
        Vec<double> nb_bar = lf.d[a].E(b) + gamma_apply(bar, X, f.E(b));
        Vec<double> nabla = nondegenerate_connection(bar, nb_bar, n, eps);
        Vec<double> nabla_tilde = fc.from_tangent(io.omega[a][b]);
        conn.observe(Vec<double>(nabla_tilde - nabla));
        bform.observe(io.B(a, b) + bar_g(bar, A[a], f.E(b)) / lam);
        gauss_l.observe(Vec<double>(io.nabla_bar[a][b] - nabla_tilde - n * (lam * io.B(a, b))));
        gauss_n.observe(Vec<double>(nb_bar - nabla + n * bar_g(bar, A[a], f.E(b))));
      }
    }
  }
  const std::size_t np = points.size();
  auto add = [&](const std::string& id, const Residual<double>& r, const std::string& note) {
    out.add(residual_check(suite + "." + id, suite, r, t, np, note));
  };
  add("levi_civita_coincide", lc, "Levi-Civita connections of g and the associated metric agree");
  add("frame_gauge", gauge, "xi = JN/lambda and N = lambda N-bar");
  add("gauss_nondegenerate", gauss_n, "nabla-bar_X Y = nabla_X Y - g(A X, Y) N");
  add("gauss_lightlike", gauss_l, "associated-metric Gauss formula with lambda B(X,Y) N");
  add("weingarten_lightlike", weing, "normal part of the associated Weingarten formula is tau - X(lambda)/lambda");
  add("induced_connection", conn, "both induced connections agree");
  add("second_form", bform, "B(X,Y) = -g(A X, Y)/lambda");
  add("shape", shape, "shape operators of N-bar for both metrics agree, A_N = lambda A");
  add("tau", tau, "tau(X) = X(lambda)/lambda");
  add("phi_shape", phi_shape, "phi(A X) = J(A X)");
  add("screen_shape", star, "A* for xi-bar equals -phi(A X)");
  add("screen_form", cform, "C(X,PY) = lambda g(phi(A X), Y)");
}

void props_suite(const DualPair& dp, const std::vector<Vec<double>>& points, const SuiteOptions& o, Report& out) {
  const std::string suite = "props";
  if (auto why = second_type_obstruction(dp, points, o.tol)) {
    out.add(skipped_check(suite + ".hypotheses", suite, *why));
    return;
  }
  const double t = o.tol.differential;
  const Context<double>& bar = dp.bar;
  const Context<double>& tilde = dp.tilde;
  const double den = static_cast<double>(bar.dim) - 2.0;
  Agreement int_d, int_s, geo_h, geo_b, geo_f0, umb_f5, sumb_f4;
  Residual<double> commute, formula;
  std::size_t integrable_points = 0, umbilical_points = 0;
  for (const auto& x : points) {
    LocalFrame<double> lf = local_frame(tilde, x);
    const Frame<double>& f = lf.f;
    InducedObjects<double> io = induced_objects(tilde, lf);
    AlmostContact ac = build_almost_contact(bar, x, t);
    ClassResiduals cr = class_residuals(bar, x, t);
    const std::size_t m = f.screen_dim();
    const std::size_t T = f.tangent_dim();

    double eta_br = 0.0, xi_br = 0.0;
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = 0; j < m; ++j) {
        Vec<double> br = lf.d[i + 1].W[j] - lf.d[j + 1].W[i] + structure_apply(bar, f.W[i], f.W[j]);
        eta_br = std::max(eta_br, std::fabs(ac.eta(br)));
        xi_br = std::max(xi_br, std::fabs(io.brackets[i + 1][j + 1][0]));
      }
    const bool d_int = eta_br <= t;
    int_d.observe(cr.f456 <= t, d_int);
    int_s.observe(d_int, xi_br <= t);

    double h = 0.0;
    for (std::size_t a = 0; a < T; ++a)
      for (std::size_t b = 0; b < T; ++b) {
        Vec<double> nb_bar = lf.d[a].E(b) + gamma_apply(bar, f.E(a), f.E(b));
        h = std::max(h, std::fabs(bar_g(bar, nb_bar, ac.n_bar)));
      }
    const bool lightlike_geodesic = max_abs(io.B) <= t;
    geo_h.observe(h <= t, lightlike_geodesic);
    geo_b.observe(lightlike_geodesic, cr.f0 <= t);
    geo_f0.observe(h <= t, cr.f0 <= t);

    auto u = umbilical_data(tilde, f, io);
    const bool umb = u.rho_residual <= t;
    umb_f5.observe(umb, cr.f5 <= t);
    sumb_f4.observe(u.k_residual <= t, cr.f4 <= t);

    auto basis = tangent_basis(bar, x, t);
    if (d_int) {
      ++integrable_points;
      for (const auto& X : basis)
        commute.observe(Vec<double>(shape_apply(bar, x, Vec<double>(ac.apply_phi(X))) -
                                    ac.apply_phi(shape_apply(bar, x, X))));
    }
    if (umb) {
      ++umbilical_points;
      for (const auto& X : basis)
        formula.observe(Vec<double>(shape_apply(bar, x, X) + ac.apply_phi(X) * (cr.theta_star / den)));
      formula.observe(frame_lambda(dp, x) * u.rho - cr.theta_star / den);
    }
  }
  auto agree = [&](const std::string& id, const Agreement& a, const std::string& note) {
    out.add(agreement_check(suite + "." + id, suite, a, false, note));
  };
  agree("class_f456_vs_contact_integrable", int_d, "class F_4+F_5+F_6 <=> contact distribution integrable");
  agree("contact_vs_screen_integrable", int_s, "contact distribution integrable <=> screen integrable");
  agree("geodesic_vs_lightlike_geodesic", geo_h, "g-side totally geodesic <=> lightlike side totally geodesic");
  agree("lightlike_geodesic_vs_f0", geo_b, "lightlike side totally geodesic <=> class F_0");
  agree("geodesic_vs_f0", geo_f0, "g-side totally geodesic <=> class F_0");
  agree("umbilical_vs_f5", umb_f5, "lightlike side totally umbilical <=> class F_5");
  agree("screen_umbilical_vs_f4", sumb_f4, "screen totally umbilical <=> class F_4");
  if (integrable_points)
    out.add(residual_check(suite + ".shape_commutes_with_phi", suite, commute, t, integrable_points,
                           "A(phi X) = phi(A X) where the contact distribution is integrable"));
  else
    out.add(skipped_check(suite + ".shape_commutes_with_phi", suite, "contact distribution integrable at no point"));
  if (umbilical_points)
    out.add(residual_check(suite + ".umbilical_shape", suite, formula, t, umbilical_points,
                           "A X = -tr(A phi)/(D-2) phi X and lambda rho = tr(A phi)/(D-2) at umbilical points"));
  else
    out.add(skipped_check(suite + ".umbilical_shape", suite, "no totally umbilical point"));
}

}  // namespace norden
