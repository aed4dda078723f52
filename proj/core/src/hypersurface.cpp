#include "norden/hypersurface/induced.hpp"

namespace norden {

std::string to_string(MetricView v) { return v == MetricView::Bar ? "bar" : "tilde"; }

std::string to_string(TransversalMode m) { return m == TransversalMode::Holomorphic ? "holomorphic" : "reference"; }

namespace {

// max |u_i v_j - u_j v_i|: zero iff u and v are parallel.
template <class S>
S parallel_residual(const Vec<S>& u, const Vec<S>& v) {
  S worst(0);
  for (std::size_t i = 0; i < u.size(); ++i)
    for (std::size_t j = i + 1; j < u.size(); ++j) {
      S a = magnitude(S(u[i] * v[j] - u[j] * v[i]));
      if (a > worst) worst = a;
    }
  return worst;
}

}  // namespace

template <class B>
void frame_suite(const Context<B>& ctx, const std::vector<Vec<B>>& points, const Tolerances& tol, Report& out) {
  const std::string suite = "frame";
  const double t = tol.differential;
  const std::size_t np = points.size();

  Residual<B> radical, tangent, qon, gw, bsym, kernel, shape_rel, screen_valued, self_adj, torsion, nonmetric_formula,
      star_metric, involutive;
  std::size_t radical_bad = 0;
  B nonmetric_max(0), b_max(0);

  for (const auto& x : points) {
    LocalFrame<B> lf = local_frame(ctx, x);
    const Frame<B>& f = lf.f;
    InducedObjects<B> io = induced_objects(ctx, lf);
    FrameCoords<B, B> fc{ctx, f};
    const std::size_t T = f.tangent_dim();
    const std::size_t m = f.screen_dim();

    auto basis = tangent_basis(ctx, x, t);
    auto det = lightlike_detect(ctx.view.gram, basis, t);
    if (det.signature.null != 1 || !det.radical) {
      ++radical_bad;
    } else {
      radical.observe(parallel_residual(*det.radical, f.xi));
    }

    Vec<B> dF = constraint_covector(ctx, x);
    tangent.observe(dot(dF, f.xi));
    for (const auto& w : f.W) tangent.observe(dot(dF, w));
    for (const auto& v : basis) tangent.observe(view_g(ctx, f.xi, v));

    qon.observe(view_g(ctx, f.xi, f.xi));
    qon.observe(B(view_g(ctx, f.N, f.xi) - B(1)));
    qon.observe(view_g(ctx, f.N, f.N));
    for (std::size_t i = 0; i < m; ++i) {
      qon.observe(view_g(ctx, f.N, f.W[i]));
      qon.observe(view_g(ctx, f.xi, f.W[i]));
      for (std::size_t j = 0; j < m; ++j)
        qon.observe(B(view_g(ctx, f.W[i], f.W[j]) - (i == j ? B(f.eps[i]) : B(0))));
    }

    for (std::size_t a = 0; a < T; ++a) {
      for (std::size_t b = 0; b < T; ++b) {
        gw.observe(fc.reconstruct(io.nabla_bar[a][b]));
        bsym.observe(B(io.B(a, b) - io.B(b, a)));
        B bab = magnitude(io.B(a, b));
        if (bab > b_max) b_max = bab;
        shape_rel.observe(B(io.B(a, b) - view_g(ctx, io.Astar[a], f.E(b))));
        self_adj.observe(B(view_g(ctx, io.Astar[a], f.E(b)) - view_g(ctx, f.E(a), io.Astar[b])));
        torsion.observe(io.omega[a][b] - io.omega[b][a] - io.brackets[a][b]);
        involutive.observe(io.bracket_normal(a, b));
        for (std::size_t c = 0; c < T; ++c) {
          // (∇_a g)(E_b, E_c) from the induced connection.
          const Vec<B>& dEb = b == 0 ? lf.d[a].xi : lf.d[a].W[b - 1];
          const Vec<B>& dEc = c == 0 ? lf.d[a].xi : lf.d[a].W[c - 1];
          B deriv = view_g(ctx, dEb, f.E(c)) + view_g(ctx, f.E(b), dEc);
          Vec<B> nab = fc.from_tangent(io.omega[a][b]);
          Vec<B> nac = fc.from_tangent(io.omega[a][c]);
          B ng = deriv - view_g(ctx, nab, f.E(c)) - view_g(ctx, f.E(b), nac);
          B mag = magnitude(ng);
          if (mag > nonmetric_max) nonmetric_max = mag;
          B eta_b = b == 0 ? B(1) : B(0);
          B eta_c = c == 0 ? B(1) : B(0);
          nonmetric_formula.observe(B(ng - io.B(a, b) * eta_c - io.B(a, c) * eta_b));
        }
      }
      gw.observe(fc.reconstruct(io.nabla_bar_N[a]));
      gw.observe(io.B(a, 0));
      for (std::size_t j = 0; j < m; ++j)
        shape_rel.observe(B(io.C(a, j) - view_g(ctx, io.AN[a], f.W[j])));
      screen_valued.observe(fc.xi_coef(io.AN[a]));
      screen_valued.observe(fc.n_coef(io.AN[a]));
      screen_valued.observe(fc.xi_coef(io.Astar[a]));
      screen_valued.observe(fc.n_coef(io.Astar[a]));
      for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < m; ++j)
          star_metric.observe(B(B(f.eps[j]) * io.nabla_star[a][i][j] + B(f.eps[i]) * io.nabla_star[a][j][i]));
    }
    kernel.observe(io.AN[0]);
    kernel.observe(io.Astar[0]);
  }

  if (radical_bad > 0) {
    Check c = residual_check("frame.radical", suite, radical, t, np);
    c.status = Status::Fail;
    c.note = std::to_string(radical_bad) + " point(s) without a one-dimensional radical";
    out.add(c);
  } else {
    out.add(residual_check("frame.radical", suite, radical, t, np, "radical of the induced metric is one-dimensional and spanned by xi"));
  }
  out.add(residual_check("frame.tangent", suite, tangent, t, np, "xi and the screen are tangent; xi is orthogonal to TM"));
  out.add(residual_check("frame.quasi_orthonormal", suite, qon, t, np, "g(N,xi) = 1, g(N,N) = g(N,W) = 0, g(W_i,W_j) = eps_i delta_ij"));
  out.add(residual_check("frame.gauss_weingarten", suite, gw, t, np, "derivatives decompose in the frame and B(X,xi) = 0"));
  out.add(residual_check("frame.second_form_symmetry", suite, bsym, t, np));
  out.add(residual_check("frame.shape_kernel", suite, kernel, t, np, "A_N xi = 0 and A*_xi xi = 0"));
  out.add(residual_check("frame.shape_relations", suite, shape_rel, t, np, "B(X,Y) = g(A*X,Y) and C(X,PY) = g(A_N X,PY)"));
  out.add(residual_check("frame.shape_screen_valued", suite, screen_valued, t, np));
  out.add(residual_check("frame.screen_shape_self_adjoint", suite, self_adj, t, np));
  out.add(residual_check("frame.torsion_free", suite, torsion, t, np));
  out.add(residual_check("frame.involutive", suite, involutive, t, np, "brackets of tangent fields are tangent"));
  out.add(residual_check("frame.non_metricity_formula", suite, nonmetric_formula, t, np,
                         "(nabla_X g)(Y,Z) = B(X,Y)eta(Z) + B(X,Z)eta(Y)"));
  if (is_negligible(b_max, t)) {
    out.add(skipped_check("frame.non_metricity_witness", suite, "B vanishes: totally geodesic"));
  } else {
    Check c;
    c.id = "frame.non_metricity_witness";
    c.suite = suite;
    c.exact = is_exact_v<B>;
    c.tolerance = c.exact ? 0.0 : t;
    c.residual = format_scalar(nonmetric_max);
    c.points = np;
    c.status = is_negligible(nonmetric_max, t) ? Status::Fail : Status::Pass;
    c.note = "max |(nabla g)| must exceed the tolerance where B does not vanish";
    out.add(c);
  }
  out.add(residual_check("frame.screen_connection_metric", suite, star_metric, t, np));
}

template void frame_suite<double>(const Context<double>&, const std::vector<Vec<double>>&, const Tolerances&, Report&);
template void frame_suite<Rational>(const Context<Rational>&, const std::vector<Vec<Rational>>&, const Tolerances&,
                                    Report&);

}  // namespace norden
