#include "norden/rtl/rtl.hpp"

#include <algorithm>
#include <numeric>
#include <random>

#include "norden/scenarios/scenarios.hpp"

namespace norden {

namespace {

// Σ_a X^a ops[a] for a tangent vector X.
template <class B, class S>
Vec<S> tangent_apply(const FrameCoords<B, S>& fc, const std::vector<Vec<S>>& ops, const Vec<S>& x) {
  Vec<S> c = fc.tangent(x);
  Vec<S> out(x.size());
  for (std::size_t a = 0; a < c.size(); ++a) out += ops[a] * c[a];
  return out;
}

// Per-point data shared by the Kaehler-side suites.
template <class B>
struct PointData {
  LocalFrame<B> lf;
  InducedObjects<B> io;
  const Frame<B>& f() const { return lf.f; }
};

template <class B>
PointData<B> point_data(const Context<B>& ctx, const Vec<B>& x) {
  PointData<B> p{local_frame(ctx, x), {}};
  p.io = induced_objects(ctx, p.lf);
  return p;
}

template <class B>
Vec<B> dJW(const Context<B>& ctx, const LocalFrame<B>& lf, std::size_t a, std::size_t j) {
  return apply_J(ctx, lf.d[a].W[j]);
}

// ∇̄_{E_a}(J̄W_j).
template <class B>
Vec<B> nabla_bar_JW(const Context<B>& ctx, const LocalFrame<B>& lf, std::size_t a, std::size_t j) {
  return dJW(ctx, lf, a, j) + gamma_apply(ctx, lf.f.E(a), Vec<B>(apply_J(ctx, lf.f.W[j])));
}

// (∇_{E_a} η) E_b = g(E_b, dN(E_a)) - g(Γ(E_a, E_b), N), with η = g(·, N).
template <class B>
B eta_covariant(const Context<B>& ctx, const LocalFrame<B>& lf, std::size_t a, std::size_t b) {
  const Frame<B>& f = lf.f;
  return view_g(ctx, f.E(b), lf.d[a].N) - view_g(ctx, Vec<B>(gamma_apply(ctx, f.E(a), f.E(b))), f.N);
}

template <class B>
Check hypothesis_skip(const std::string& suite, const Hypotheses& h) {
  return skipped_check(suite + ".hypotheses", suite, h.reason);
}

template <class B>
B max_of(const B& a, const B& b) {
  return a > b ? a : b;
}

// Orthogonalize candidates in exact arithmetic without normalizing; pair
// sums and differences cover null candidates.
template <class B>
std::vector<Vec<B>> orthogonal_exact(const Matrix<B>& gram, std::vector<Vec<B>> cand, std::size_t count) {
  std::vector<Vec<B>> out;
  for (std::size_t step = 0; step < count; ++step) {
    Vec<B> chosen;
    for (const auto& c : cand)
      if (sgn(bilinear(gram, c, c)) != 0) {
        chosen = c;
        break;
      }
    for (std::size_t i = 0; i < cand.size() && chosen.empty(); ++i)
      for (std::size_t j = i + 1; j < cand.size() && chosen.empty(); ++j) {
        Vec<B> s = cand[i] + cand[j];
        Vec<B> d = cand[i] - cand[j];
        if (sgn(bilinear(gram, s, s)) != 0) chosen = s;
        else if (sgn(bilinear(gram, d, d)) != 0) chosen = d;
      }
    if (chosen.empty()) throw StructuralError("Gram-Schmidt hit a null pivot at step " + std::to_string(step));
    B q = bilinear(gram, chosen, chosen);
    for (auto& c : cand) c -= chosen * (bilinear(gram, c, chosen) / q);
    out.push_back(chosen);
  }
  return out;
}

template <class B>
std::vector<Vec<B>> order_by_signs(const Matrix<B>& gram, std::vector<Vec<B>> vs, const std::vector<int>& eps) {
  std::vector<Vec<B>> out;
  std::vector<bool> used(vs.size(), false);
  for (int target : eps) {
    bool found = false;
    for (std::size_t i = 0; i < vs.size() && !found; ++i)
      if (!used[i] && sign_of(bilinear(gram, vs[i], vs[i])) == target) {
        used[i] = true;
        out.push_back(vs[i]);
        found = true;
      }
    if (!found) throw StructuralError("second screen has a different signature");
  }
  return out;
}

}  // namespace

template <class B>
Hypotheses hypotheses(const Context<B>& ctx, const std::vector<Vec<B>>& points, const Tolerances& tol) {
  Hypotheses h;
  h.kaehler = kaehler_check(ctx.ambient, tol.algebraic).kaehler;
  h.complex = is_negligible(nijenhuis_max(ctx.ambient), tol.algebraic);
  h.rtl = true;
  std::size_t bad = 0;
  for (const auto& x : points) {
    try {
      Frame<B> f = build_frame(ctx, x);
      if (!detect_rtl(ctx, f, tol.differential).is_rtl) ++bad;
    } catch (const std::exception&) {
      ++bad;
    }
  }
  h.rtl = bad == 0 && !points.empty();
  if (!h.kaehler) h.reason = "ambient is not Kaehler";
  if (!h.rtl) {
    std::string r = "not radical transversal at " + std::to_string(bad) + " of " + std::to_string(points.size()) +
                    " point(s)";
    h.reason = h.reason.empty() ? r : h.reason + "; " + r;
  }
  return h;
}

template <class B, class S>
ScreenComparison<S> compare_screens(const Context<B>& ctx, const Frame<S>& first, const std::vector<Vec<S>>& W2,
                                    double tol) {
  const std::size_t m = first.screen_dim();
  const std::size_t d = ctx.dim;
  if (W2.size() != m) throw DimensionError("second screen has the wrong dimension");
  ScreenComparison<S> r;
  std::vector<S> q;
  for (const auto& w : W2) q.push_back(view_g(ctx, w, w));

  // N' for the second screen: a reference vector pushed off S', then normalized.
  Vec<S> best;
  double best_score = -1.0;
  for (std::size_t k = 0; k < d; ++k) {
    Vec<S> v = basis_vector<S>(d, k);
    for (std::size_t i = 0; i < m; ++i) v -= W2[i] * (view_g(ctx, v, W2[i]) / q[i]);
    double score = std::fabs(to_double(view_g(ctx, v, first.xi)));
    if (score > best_score + 1e-12) {
      best_score = score;
      best = v;
    }
  }
  Vec<S> n2 = null_transversal(ctx, best, first.xi);

  r.wmat = Matrix<S>(m, m);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t k = 0; k < m; ++k) r.wmat(k, i) = S(first.eps[k]) * view_g(ctx, W2[i], first.W[k]);
  Matrix<S> M(m, m);
  Vec<S> rhs(m);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < m; ++j) M(i, j) = r.wmat(j, i) * S(first.eps[j]);
    rhs[i] = -view_g(ctx, W2[i], first.N);
  }
  r.f = solve(M, rhs, 1e-14);
  r.f_cross = Vec<S>(m);
  for (std::size_t k = 0; k < m; ++k) r.f_cross[k] = S(first.eps[k]) * view_g(ctx, n2, first.W[k]);
  r.f_max = max_abs(r.f);
  r.n_diff = max_abs(Vec<S>(n2 - first.N));

  // W^T diag(eps) W against diag(q): semi-orthogonality once columns are unit.
  S so(0);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t l = 0; l < m; ++l) {
      S s(0);
      for (std::size_t k = 0; k < m; ++k) s += r.wmat(k, i) * S(first.eps[k]) * r.wmat(k, l);
      if (i == l) s -= q[i];
      so = max_of(so, magnitude(s));
      if (i == l && sign_of(q[i]) != first.eps[i]) so = max_of(so, S(1));
    }
  r.semi_orth = so;

  S rec = max_abs(Vec<S>(r.f - r.f_cross));
  S half_q(0);
  for (std::size_t i = 0; i < m; ++i) half_q += S(first.eps[i]) * r.f[i] * r.f[i];
  Vec<S> n_pred = first.N - first.xi * (half_q / S(2));
  for (std::size_t i = 0; i < m; ++i) n_pred += first.W[i] * r.f[i];
  rec = max_of(rec, max_abs(Vec<S>(n_pred - n2)));
  for (std::size_t i = 0; i < m; ++i) {
    Vec<S> w(d);
    for (std::size_t j = 0; j < m; ++j) w += (first.W[j] - first.xi * (S(first.eps[j]) * r.f[j])) * r.wmat(j, i);
    rec = max_of(rec, max_abs(Vec<S>(w - W2[i])));
  }
  r.reconstruction = rec;

  S holo(0);
  for (const auto& w : W2) {
    Vec<S> jw = apply_J(ctx, w);
    holo = max_of(holo, magnitude(view_g(ctx, jw, first.xi)));
    holo = max_of(holo, magnitude(view_g(ctx, jw, n2)));
  }
  r.second_holomorphic = is_negligible(holo, tol);
  return r;
}

template <class B>
std::vector<Vec<B>> random_holomorphic_screen(const Context<B>& ctx, const Vec<B>& x, const std::vector<int>& eps,
                                              std::uint64_t seed, double tol) {
  const std::size_t d = ctx.dim;
  const std::size_t m = eps.size();
  Vec<B> n = constraint_covector(ctx, x);
  Matrix<B> rows(2, d);
  for (std::size_t k = 0; k < d; ++k) {
    rows(0, k) = n[k];
    B s(0);
    for (std::size_t j = 0; j < d; ++j) s += n[j] * ctx.ambient.J(j, k);
    rows(1, k) = s;
  }
  auto kernel = null_space(rows, tol);
  if (kernel.size() != m) throw StructuralError("ker[dF; dF J] does not have the screen dimension");
  if constexpr (!is_exact_v<B>) {
    // rref bases can be badly conditioned; two passes of Euclidean MGS.
    for (int pass = 0; pass < 2; ++pass)
      for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = 0; j < i; ++j) kernel[i] -= kernel[j] * dot(kernel[i], kernel[j]);
        kernel[i] = kernel[i] / std::sqrt(euclidean_norm2(kernel[i]));
      }
  }
  auto valid = [&](const std::vector<Vec<B>>& w) {
    B worst(0);
    for (std::size_t i = 0; i < m; ++i) {
      worst = max_of(worst, B(max_abs(Vec<B>(rows * w[i])) / B(1 + max_abs(n))));
      for (std::size_t j = 0; j < m; ++j) {
        B gij = bilinear_const<B>(ctx.view.gram, w[i], w[j]);
        if (i != j) worst = max_of(worst, magnitude(gij));
      }
    }
    return is_negligible(worst, tol);
  };
  std::mt19937_64 rng(splitmix64(seed));
  for (int attempt = 0; attempt < 32; ++attempt) {
    std::vector<Vec<B>> cand;
    for (std::size_t i = 0; i < m; ++i) {
      Vec<B> c(d);
      for (std::size_t j = 0; j < m; ++j) {
        B coef;
        if constexpr (is_exact_v<B>) {
          coef = B(static_cast<long>(rng() % 7) - 3);
        } else {
          coef = 2.0 * (static_cast<double>(rng() >> 11) * 0x1.0p-53) - 1.0;
        }
        c += kernel[j] * coef;
      }
      cand.push_back(c);
    }
    std::shuffle(cand.begin(), cand.end(), rng);
    try {
      if constexpr (is_exact_v<B>) {
        Matrix<B> c = Matrix<B>::from_columns(cand);
        if (rref(c, tol).size() != m) continue;
        auto w = orthogonal_exact(ctx.view.gram, cand, m);
        if (!valid(w)) continue;
        return order_by_signs(ctx.view.gram, w, eps);
      } else {
        auto gs = indefinite_gram_schmidt<B>(ctx.view.gram, cand, m, 1e-8);
        if (!valid(gs.vectors)) continue;
        return order_by_signs(ctx.view.gram, gs.vectors, eps);
      }
    } catch (const StructuralError&) {
      continue;
    }
  }
  throw StructuralError("could not draw a non-degenerate second screen");
}

template <class B>
void rtl_suite(const Context<B>& ctx, const std::vector<Vec<B>>& points, const SuiteOptions& o, Report& out) {
  const std::string suite = "rtl";
  const double t = o.tol.differential;
  const std::size_t np = points.size();
  Residual<B> decomp, forward, backward, ab;
  Agreement eq;
  std::size_t rtl_count = 0, holo_count = 0;
  B b_min(0), b_max(0);
  bool first = true;
  Residual<B> cr_bracket, cr_nijenhuis;
  bool complex = is_negligible(nijenhuis_max(ctx.ambient), o.tol.algebraic);
  bool all_rtl = true;

  for (const auto& x : points) {
    LocalFrame<B> lf = local_frame(ctx, x);
    const Frame<B>& f = lf.f;
    FrameCoords<B, B> fc{ctx, f};
    auto r = detect_rtl(ctx, f, t);
    decomp.observe(r.decomposition);
    eq.observe(r.holomorphic, r.is_rtl);
    if (r.is_rtl) {
      ++rtl_count;
      forward.observe(r.holomorphy);
    } else {
      all_rtl = false;
    }
    if (r.holomorphic) {
      ++holo_count;
      backward.observe(r.a);
      backward.observe(r.xi1);
      ab.observe(B(B(2) * r.a * r.b));
    }
    if (first || r.b < b_min) b_min = r.b;
    if (first || r.b > b_max) b_max = r.b;
    first = false;

    if (!complex || !r.is_rtl) continue;
    // Brackets of screen fields X = W_i, Y = W_j and of J̄X, J̄Y.
    const std::size_t m = f.screen_dim();
    const std::size_t T = f.tangent_dim();
    auto field = [&](std::size_t i, bool j) {
      std::vector<Vec<B>> dv;
      for (std::size_t a = 0; a < T; ++a) dv.push_back(j ? Vec<B>(apply_J(ctx, lf.d[a].W[i])) : lf.d[a].W[i]);
      Vec<B> v = j ? Vec<B>(apply_J(ctx, f.W[i])) : f.W[i];
      return std::make_pair(v, dv);
    };
    auto bracket = [&](const std::pair<Vec<B>, std::vector<Vec<B>>>& U,
                       const std::pair<Vec<B>, std::vector<Vec<B>>>& V) {
      return Vec<B>(tangent_apply(fc, V.second, U.first) - tangent_apply(fc, U.second, V.first) +
                    structure_apply(ctx, U.first, V.first));
    };
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = 0; j < m; ++j) {
        auto X = field(i, false), Y = field(j, false), JX = field(i, true), JY = field(j, true);
        Vec<B> lhs = bracket(JX, JY) - bracket(X, Y);
        cr_bracket.observe(fc.xi_coef(lhs));
        cr_bracket.observe(fc.n_coef(lhs));
        Vec<B> z = lhs - apply_J(ctx, Vec<B>(bracket(X, JY) + bracket(JX, Y)));
        cr_nijenhuis.observe(z);
      }
  }

  out.add(residual_check("rtl.decomposition", suite, decomp, t, np, "J xi = xi_1 + a xi + b N reconstructs"));
  out.add(agreement_check("rtl.equivalence", suite, eq, is_exact_v<B>, "holomorphic screen <=> radical transversal"));
  if (rtl_count > 0)
    out.add(residual_check("rtl.forward", suite, forward, t, rtl_count, "radical transversal => J W_i in the screen"));
  else
    out.add(skipped_check("rtl.forward", suite, "no radical transversal points"));
  if (holo_count > 0) {
    out.add(residual_check("rtl.backward", suite, backward, t, holo_count, "holomorphic screen => xi_1 = 0 and a = 0"));
    out.add(residual_check("rtl.ab_product", suite, ab, t, holo_count, "2ab = 0"));
  } else {
    out.add(skipped_check("rtl.backward", suite, "no holomorphic-screen points"));
    out.add(skipped_check("rtl.ab_product", suite, "no holomorphic-screen points"));
  }
  Check v;
  v.id = "rtl.verdict";
  v.suite = suite;
  v.status = Status::Info;
  v.exact = is_exact_v<B>;
  v.points = np;
  v.residual = std::to_string(rtl_count);
  v.note = "radical transversal at " + std::to_string(rtl_count) + "/" + std::to_string(np) + " points; b in [" +
           format_scalar(b_min) + ", " + format_scalar(b_max) + "]";
  out.add(v);
  if (!complex) {
    out.add(skipped_check("rtl.cr_bracket", suite, "ambient Nijenhuis tensor is nonzero"));
    out.add(skipped_check("rtl.cr_nijenhuis", suite, "ambient Nijenhuis tensor is nonzero"));
  } else if (!all_rtl) {
    out.add(skipped_check("rtl.cr_bracket", suite, "not radical transversal at every point"));
    out.add(skipped_check("rtl.cr_nijenhuis", suite, "not radical transversal at every point"));
  } else {
    out.add(residual_check("rtl.cr_bracket", suite, cr_bracket, t, np, "[JX,JY] - [X,Y] lies in the screen"));
    out.add(residual_check("rtl.cr_nijenhuis", suite, cr_nijenhuis, t, np, "Nijenhuis tensor of J on the screen"));
  }
}

template <class B>
void kaehler_identities_suite(const Context<B>& ctx, const std::vector<Vec<B>>& points, const SuiteOptions& o,
                              Report& out) {
  const std::string suite = "kaehler_identities";
  Hypotheses h = hypotheses(ctx, points, o.tol);
  if (!h.holds()) {
    out.add(hypothesis_skip<B>(suite, h));
    return;
  }
  const double t = o.tol.differential;
  const std::size_t np = points.size();
  Residual<B> r41, r42, r43, r44, r46, r47, r48, r49, r410, r411, r412;
  for (const auto& x : points) {
    PointData<B> p = point_data(ctx, x);
    const Frame<B>& f = p.f();
    const InducedObjects<B>& io = p.io;
    FrameCoords<B, B> fc{ctx, f};
    const std::size_t T = f.tangent_dim();
    const std::size_t m = f.screen_dim();
    const B b = io.b;
    for (std::size_t a = 0; a < T; ++a) {
      const B db = io.b_derivative[a];
      Vec<B> jan = apply_J(ctx, io.AN[a]);
      r41.observe(Vec<B>(io.Astar[a] / b + jan + f.xi * ((B(2) * io.tau[a] + db / b) / b)));
      r42.observe(Vec<B>(io.Astar[a] + jan * b));
      r43.observe(B(io.tau[a] + db / (B(2) * b)));
      Vec<B> nabla_xi = fc.from_tangent(io.omega[a][0]);
      r411.observe(Vec<B>(nabla_xi - jan * b - f.xi * (db / (B(2) * b))));
      for (std::size_t c = 0; c < T; ++c) {
        const B eta = c == 0 ? B(1) : B(0);
        const B eta_cov = eta_covariant(ctx, p.lf, a, c);
        Vec<B> pY = c == 0 ? Vec<B>(ctx.dim) : f.W[c - 1];
        Vec<B> jpY = apply_J(ctx, pY);
        if (a == 0) r44.observe(Vec<B>(apply_J(ctx, f.E(c)) - jpY - f.N * (eta * b)));
        // Derivatives of J̄(PY) along E_a.
        Vec<B> nb_jpy = c == 0 ? Vec<B>(ctx.dim) : nabla_bar_JW(ctx, p.lf, a, c - 1);
        Vec<B> nabla_jpy = fc.tan_vec(nb_jpy);  // ∇_X J̄(PY)
        Vec<B> star_jpy = fc.P(nb_jpy);         // ∇*_X J̄(PY)
        Vec<B> p_nabla_y = fc.P(fc.from_tangent(io.omega[a][c]));
        r46.observe(Vec<B>(star_jpy - io.AN[a] * (b * eta) - apply_J(ctx, p_nabla_y)));
        r47.observe(B(fc.xi_coef(nb_jpy) + io.B(a, c) / b));
        r48.observe(B(fc.n_coef(nb_jpy) + eta * db / B(2) + b * eta_cov));
        Vec<B> star_py = c == 0 ? Vec<B>(ctx.dim) : fc.from_screen(io.nabla_star[a][c - 1]);
        Vec<B> rhs49 = -apply_J(ctx, Vec<B>(fc.P(nabla_jpy)));
        r49.observe(Vec<B>(star_py - rhs49));
        B c_py = c == 0 ? B(0) : io.C(a, c - 1);
        r410.observe(B(c_py + eta * db / (B(2) * b) + eta_cov));
        Vec<B> nabla_py = c == 0 ? Vec<B>(ctx.dim) : fc.from_tangent(io.omega[a][c]);
        r411.observe(Vec<B>(nabla_py - rhs49 + f.xi * (eta * db / (B(2) * b) + eta_cov)));
        if (c > 0) r412.observe(Vec<B>(star_jpy - apply_J(ctx, star_py)));
      }
      (void)m;
    }
  }
  auto add = [&](const std::string& id, const Residual<B>& r, const std::string& note) {
    out.add(residual_check(suite + "." + id, suite, r, t, np, note));
  };
  add("nabla_j_transversal", r41, "(nabla_X J)N = A*X/b + J(A_N X) + (2 tau(X) + X(b)/b) xi / b vanishes");
  add("screen_shape", r42, "A*X = -b J(A_N X)");
  add("tau", r43, "tau(X) = -X(b) / 2b");
  add("j_decomposition", r44, "JY = J(PY) + eta(Y) b N");
  add("screen_j_connection", r46, "nabla*_X J(PY) = b eta(Y) A_N X + J(P(nabla_X Y))");
  add("screen_form_j", r47, "C(X, J(PY)) = -B(X,Y) / b");
  add("second_form_j", r48, "B(X, J(PY)) = -eta(Y) X(b) / 2 - b (nabla_X eta) Y");
  add("screen_connection", r49, "nabla*_X PY = -J(P(nabla_X J(PY)))");
  add("screen_form", r410, "C(X,PY) = -eta(Y) X(b) / 2b - (nabla_X eta) Y");
  add("induced_connection", r411, "nabla_X PY and nabla_X xi in terms of A_N, b and eta");
  add("screen_j_parallel", r412, "(nabla*_X J) PY = 0");
}

template <class B>
void uniqueness_suite(const Context<B>& ctx, const std::vector<Vec<B>>& points, const SuiteOptions& o, Report& out) {
  const std::string suite = "uniqueness";
  const double t = o.tol.differential;
  Residual<B> fmax, ndiff, semi, rec;
  std::size_t trials = 0, invalid = 0, skipped_points = 0;
  for (std::size_t pi = 0; pi < points.size(); ++pi) {
    const auto& x = points[pi];
    Frame<B> f = build_frame(ctx, x);
    if (!detect_rtl(ctx, f, t).is_rtl) {
      ++skipped_points;
      continue;
    }
    for (std::size_t k = 0; k < o.uniqueness_trials; ++k) {
      std::uint64_t seed = splitmix64(o.seed ^ splitmix64(pi * 1000003ULL + k + 1));
      auto W2 = random_holomorphic_screen(ctx, x, f.eps, seed, t);
      auto c = compare_screens(ctx, f, W2, t);
      ++trials;
      if (!c.second_holomorphic) ++invalid;
      fmax.observe(c.f_max);
      ndiff.observe(c.n_diff);
      semi.observe(c.semi_orth);
      rec.observe(c.reconstruction);
    }
  }
  if (trials == 0) {
    out.add(skipped_check(suite + ".hypotheses", suite, "not radical transversal at any point"));
    return;
  }
  std::string note = std::to_string(trials) + " second screens";
  if (skipped_points) note += "; " + std::to_string(skipped_points) + " non radical transversal point(s) skipped";
  out.add(residual_check(suite + ".f_vanishes", suite, fmax, t, trials, note));
  out.add(residual_check(suite + ".transversal_unique", suite, ndiff, t, trials, "N' = N"));
  out.add(residual_check(suite + ".semi_orthogonal", suite, semi, t, trials, "change of screen matrix is semi-orthogonal"));
  out.add(residual_check(suite + ".reconstruction", suite, rec, t, trials,
                         "the screen change relations map the first frame onto the second"));
  Check hc;
  hc.id = suite + ".second_screen_holomorphic";
  hc.suite = suite;
  hc.exact = is_exact_v<B>;
  hc.tolerance = hc.exact ? 0.0 : t;
  hc.points = trials;
  hc.residual = std::to_string(invalid);
  hc.status = invalid == 0 ? Status::Pass : Status::Fail;
  hc.note = "second screens drawn from ker[dF; dF J] must be holomorphic";
  out.add(hc);
}

template <class B>
void selfconjugacy_suite(const Context<B>& ctx, const std::vector<Vec<B>>& points, const SuiteOptions& o,
                         Report& out) {
  const std::string suite = "selfconjugacy";
  Hypotheses h = hypotheses(ctx, points, o.tol);
  if (!h.holds()) {
    out.add(hypothesis_skip<B>(suite, h));
    return;
  }
  const double t = o.tol.differential;
  Agreement eq;
  Residual<B> lemma;
  for (const auto& x : points) {
    PointData<B> p = point_data(ctx, x);
    const Frame<B>& f = p.f();
    FrameCoords<B, B> fc{ctx, f};
    const std::size_t T = f.tangent_dim();
    const std::size_t m = f.screen_dim();
    B sym(0), comm(0);
    for (std::size_t i = 0; i < m; ++i) {
      const Vec<B>& anw = p.io.AN[i + 1];
      for (std::size_t j = 0; j < m; ++j)
        sym = max_of(sym, magnitude(B(view_g(ctx, anw, f.W[j]) - view_g(ctx, f.W[i], p.io.AN[j + 1]))));
      Vec<B> an_jw = tangent_apply(fc, p.io.AN, Vec<B>(apply_J(ctx, f.W[i])));
      comm = max_of(comm, max_abs(Vec<B>(an_jw - apply_J(ctx, anw))));
    }
    eq.observe(is_negligible(sym, t), is_negligible(comm, t));
    for (std::size_t a = 0; a < T; ++a)
      for (std::size_t b = 0; b < T; ++b)
        lemma.observe(B(view_g(ctx, Vec<B>(apply_J(ctx, p.io.AN[a])), f.E(b)) -
                        view_g(ctx, f.E(a), Vec<B>(apply_J(ctx, p.io.AN[b])))));
  }
  out.add(agreement_check(suite + ".equivalence", suite, eq, is_exact_v<B>,
                          "A_N self-conjugate on the screen <=> A_N commutes with J"));
  out.add(residual_check(suite + ".lemma", suite, lemma, t, points.size(), "g(J(A_N X), Y) = g(X, J(A_N Y))"));
}

template <class B>
void integrability_suite(const Context<B>& ctx, const std::vector<Vec<B>>& points, const SuiteOptions& o,
                         Report& out) {
  const std::string suite = "integrability";
  Hypotheses h = hypotheses(ctx, points, o.tol);
  if (!h.holds()) {
    out.add(hypothesis_skip<B>(suite, h));
    return;
  }
  const double t = o.tol.differential;
  Agreement form, commute;
  Residual<B> antisym;
  std::size_t integrable_points = 0;
  for (const auto& x : points) {
    PointData<B> p = point_data(ctx, x);
    const Frame<B>& f = p.f();
    FrameCoords<B, B> fc{ctx, f};
    const std::size_t m = f.screen_dim();
    B bracket(0), hsym(0), comm(0);
    for (std::size_t i = 0; i < m; ++i) {
      for (std::size_t j = 0; j < m; ++j) {
        bracket = max_of(bracket, magnitude(p.io.brackets[i + 1][j + 1][0]));
        hsym = max_of(hsym, magnitude(B(p.io.C(i + 1, j) - p.io.C(j + 1, i))));
      }
      Vec<B> an_jw = tangent_apply(fc, p.io.AN, Vec<B>(apply_J(ctx, f.W[i])));
      comm = max_of(comm, max_abs(Vec<B>(an_jw - apply_J(ctx, p.io.AN[i + 1]))));
    }
    bool integrable = is_negligible(bracket, t);
    form.observe(integrable, is_negligible(hsym, t));
    commute.observe(integrable, is_negligible(comm, t));
    if (integrable) {
      ++integrable_points;
      antisym.observe(hsym);
    }
  }
  out.add(agreement_check(suite + ".bracket_vs_form", suite, form, is_exact_v<B>,
                          "screen integrable <=> h* symmetric on the screen"));
  out.add(agreement_check(suite + ".bracket_vs_commutation", suite, commute, is_exact_v<B>,
                          "screen integrable <=> A_N commutes with J on the screen"));
  if (integrable_points > 0)
    out.add(residual_check(suite + ".screen_form_symmetry", suite, antisym, t, integrable_points,
                           "C(X,PY) - C(Y,PX) at integrable points"));
  else
    out.add(skipped_check(suite + ".screen_form_symmetry", suite, "screen is integrable at no point"));
}

template <class B, class S>
UmbilicalData<S> umbilical_data(const Context<B>& ctx, const Frame<S>& f, const InducedObjects<S>& io) {
  FrameCoords<B, S> fc{ctx, f};
  const std::size_t m = f.screen_dim();
  UmbilicalData<S> u;
  auto dominant = [&](const std::vector<Vec<S>>& ops) {
    std::size_t best = 0;
    S best_val = max_abs(ops[1]);
    for (std::size_t i = 1; i < m; ++i) {
      S v = max_abs(ops[i + 1]);
      if (abs_greater(v, best_val)) {
        best = i;
        best_val = v;
      }
    }
    return best;
  };
  // Coefficient c with op W_i = c J̄W_i at the dominant direction.
  auto j_ratio = [&](const Vec<S>& image, std::size_t i) {
    Vec<S> jw = apply_J(ctx, f.W[i]);
    return view_g(ctx, image, jw) / view_g(ctx, jw, jw);
  };
  std::size_t is = dominant(io.Astar);
  std::size_t in = dominant(io.AN);
  u.rho = fc.w_coef(io.Astar[is + 1], is);
  u.k = fc.w_coef(io.AN[in + 1], in);
  S cn = j_ratio(io.AN[in + 1], in);
  S cs = j_ratio(io.Astar[is + 1], is);
  u.rho_j = cn * io.b;
  u.k_j = -cs / io.b;
  for (std::size_t i = 0; i < m; ++i) {
    Vec<S> jw = apply_J(ctx, f.W[i]);
    u.rho_residual = max_of(u.rho_residual, max_abs(Vec<S>(io.Astar[i + 1] - f.W[i] * u.rho)));
    u.k_residual = max_of(u.k_residual, max_abs(Vec<S>(io.AN[i + 1] - f.W[i] * u.k)));
    u.rho_j_residual = max_of(u.rho_j_residual, max_abs(Vec<S>(io.AN[i + 1] - jw * cn)));
    u.k_j_residual = max_of(u.k_j_residual, max_abs(Vec<S>(io.Astar[i + 1] - jw * cs)));
  }
  // A_N X = kPX also covers X = ξ, where PX = 0.
  u.k_residual = max_of(u.k_residual, max_abs(io.AN[0]));
  return u;
}

template <class B>
void geodesic_umbilical_suite(const Context<B>& ctx, const std::vector<Vec<B>>& points, const SuiteOptions& o,
                              Report& out) {
  const std::string suite = "geodesic_umbilical";
  Hypotheses h = hypotheses(ctx, points, o.tol);
  if (!h.holds()) {
    out.add(hypothesis_skip<B>(suite, h));
    return;
  }
  const double t = o.tol.differential;
  Agreement g_screen, g_eta, umb, sumb;
  Residual<B> eta_tau, rho_match, k_match, geo_umb;
  std::size_t geodesic = 0, umbilical = 0, screen_umbilical = 0;
  for (const auto& x : points) {
    PointData<B> p = point_data(ctx, x);
    const Frame<B>& f = p.f();
    const InducedObjects<B>& io = p.io;
    const std::size_t T = f.tangent_dim();
    B bmax = max_abs(io.B);
    B cmax = io.C.rows() && io.C.cols() ? max_abs(io.C) : B(0);
    B eta_res(0);
    for (std::size_t a = 0; a < T; ++a)
      for (std::size_t c = 0; c < T; ++c) {
        const B eta = c == 0 ? B(1) : B(0);
        eta_res = max_of(eta_res, magnitude(B(eta_covariant(ctx, p.lf, a, c) - eta * io.tau[a])));
        B tau_form = eta * io.tau[a] + eta * io.b_derivative[a] / (B(2) * io.b);
        eta_tau.observe(tau_form);
      }
    bool geo = is_negligible(bmax, t);
    g_screen.observe(geo, is_negligible(cmax, t));
    g_eta.observe(geo, is_negligible(eta_res, t));
    auto u = umbilical_data(ctx, f, io);
    bool is_umb = is_negligible(u.rho_residual, t);
    bool is_sumb = is_negligible(u.k_residual, t);
    umb.observe(is_umb, is_negligible(u.rho_j_residual, t));
    sumb.observe(is_sumb, is_negligible(u.k_j_residual, t));
    if (is_umb && is_negligible(u.rho_j_residual, t)) rho_match.observe(B(u.rho - u.rho_j));
    if (is_sumb && is_negligible(u.k_j_residual, t)) k_match.observe(B(u.k - u.k_j));
    if (geo) {
      ++geodesic;
      geo_umb.observe(u.rho);
      geo_umb.observe(u.rho_residual);
    }
    umbilical += is_umb;
    screen_umbilical += is_sumb;
  }
  const std::size_t np = points.size();
  const bool ex = is_exact_v<B>;
  out.add(agreement_check(suite + ".geodesic_vs_screen_geodesic", suite, g_screen, ex,
                          "B = 0 <=> C = 0"));
  out.add(agreement_check(suite + ".geodesic_vs_eta", suite, g_eta, ex, "B = 0 <=> (nabla_X eta)Y = eta(Y) tau(X)"));
  out.add(residual_check(suite + ".eta_tau_form", suite, eta_tau, t, np, "eta(Y) tau(X) = -eta(Y) X(b) / 2b"));
  out.add(agreement_check(suite + ".umbilical_vs_transversal_form", suite, umb, ex,
                          "A*(PX) = rho PX <=> A_N(PX) = (rho/b) J(PX)"));
  out.add(agreement_check(suite + ".screen_umbilical_vs_screen_shape_form", suite, sumb, ex,
                          "A_N X = k PX <=> A*(PX) = -b k J(PX)"));
  out.add(residual_check(suite + ".umbilical_factor", suite, rho_match, t, umbilical,
                         "rho from both characterizations agrees"));
  out.add(residual_check(suite + ".screen_umbilical_factor", suite, k_match, t, screen_umbilical,
                         "k from both characterizations agrees"));
  if (geodesic > 0)
    out.add(residual_check(suite + ".geodesic_implies_umbilical", suite, geo_umb, t, geodesic,
                           "totally geodesic points are umbilical with rho = 0"));
  else
    out.add(skipped_check(suite + ".geodesic_implies_umbilical", suite, "no totally geodesic points"));
  Check info;
  info.id = suite + ".classification";
  info.suite = suite;
  info.status = Status::Info;
  info.exact = ex;
  info.points = np;
  info.residual = std::to_string(umbilical);
  info.note = "totally geodesic " + std::to_string(geodesic) + "/" + std::to_string(np) + ", totally umbilical " +
              std::to_string(umbilical) + "/" + std::to_string(np) + ", screen totally umbilical " +
              std::to_string(screen_umbilical) + "/" + std::to_string(np);
  out.add(info);
}

template <class B>
RicciData<B> induced_ricci(const Context<B>& ctx, const Vec<B>& x) {
  LocalFrame<B> lf = local_frame(ctx, x);
  InducedObjects<B> io = induced_objects(ctx, lf);
  const std::size_t T = lf.f.tangent_dim();
  // dw[a][b][c][d] = E_a(ω^d_bc), dt[a][b] = E_a(τ_b).
  std::vector<std::vector<std::vector<Vec<B>>>> dw(T);
  std::vector<Vec<B>> dt(T);
  for (std::size_t a = 0; a < T; ++a) {
    auto iod = induced_at(ctx, dual_point(x, lf.f.E(a)));
    dw[a].resize(T);
    for (std::size_t b = 0; b < T; ++b)
      for (std::size_t c = 0; c < T; ++c) dw[a][b].push_back(tangent_part(iod.omega[b][c]));
    dt[a] = tangent_part(iod.tau);
  }
  const auto& w = io.omega;
  const auto& beta = io.brackets;
  RicciData<B> r;
  r.ric = Matrix<B>(T, T);
  r.dtau = Matrix<B>(T, T);
  for (std::size_t a = 0; a < T; ++a)
    for (std::size_t c = 0; c < T; ++c) {
      B s(0);
      for (std::size_t b = 0; b < T; ++b) {
        // d-component of R(E_a, E_b)E_c with d = b.
        const std::size_t d = b;
        B v = dw[a][b][c][d] - dw[b][a][c][d];
        for (std::size_t e = 0; e < T; ++e) {
          v += w[b][c][e] * w[a][e][d] - w[a][c][e] * w[b][e][d];
          v -= beta[a][b][e] * w[e][c][d];
        }
        s += v;
      }
      r.ric(a, c) = s;
      B dtau = dt[a][c] - dt[c][a];
      for (std::size_t e = 0; e < T; ++e) dtau -= beta[a][c][e] * io.tau[e];
      r.dtau(a, c) = dtau;
    }
  return r;
}

template <class B>
void ricci_suite(const Context<B>& ctx, const std::vector<Vec<B>>& points, const SuiteOptions& o, Report& out) {
  const std::string suite = "ricci";
  Hypotheses h = hypotheses(ctx, points, o.tol);
  if (!h.holds()) {
    out.add(hypothesis_skip<B>(suite, h));
    return;
  }
  Residual<B> sym, dtau;
  Agreement eq;
  for (const auto& x : points) {
    auto r = induced_ricci(ctx, x);
    B s = symmetry_residual(r.ric);
    B dt = max_abs(r.dtau);
    sym.observe(s);
    dtau.observe(dt);
    eq.observe(is_negligible(s, o.tol.ricci), is_negligible(dt, o.tol.differential));
  }
  const std::size_t np = points.size();
  out.add(residual_check(suite + ".symmetry", suite, sym, o.tol.ricci, np, "Ric(X,Y) = Ric(Y,X)"));
  out.add(residual_check(suite + ".dtau", suite, dtau, o.tol.differential, np,
                         "d tau(X,Y) = X(tau(Y)) - Y(tau(X)) - tau([X,Y])"));
  out.add(agreement_check(suite + ".symmetry_vs_closed_tau", suite, eq, is_exact_v<B>,
                          "Ric symmetric <=> d tau = 0"));
}

#define NORDEN_RTL_INSTANTIATE(B)                                                                                  \
  template Hypotheses hypotheses<B>(const Context<B>&, const std::vector<Vec<B>>&, const Tolerances&);             \
  template ScreenComparison<B> compare_screens<B, B>(const Context<B>&, const Frame<B>&, const std::vector<Vec<B>>&, \
                                                     double);                                                       \
  template std::vector<Vec<B>> random_holomorphic_screen<B>(const Context<B>&, const Vec<B>&,                      \
                                                            const std::vector<int>&, std::uint64_t, double);        \
  template void rtl_suite<B>(const Context<B>&, const std::vector<Vec<B>>&, const SuiteOptions&, Report&);         \
  template void kaehler_identities_suite<B>(const Context<B>&, const std::vector<Vec<B>>&, const SuiteOptions&,    \
                                            Report&);                                                               \
  template void uniqueness_suite<B>(const Context<B>&, const std::vector<Vec<B>>&, const SuiteOptions&, Report&);  \
  template void selfconjugacy_suite<B>(const Context<B>&, const std::vector<Vec<B>>&, const SuiteOptions&,         \
                                       Report&);                                                                    \
  template void integrability_suite<B>(const Context<B>&, const std::vector<Vec<B>>&, const SuiteOptions&,         \
                                       Report&);                                                                    \
  template void geodesic_umbilical_suite<B>(const Context<B>&, const std::vector<Vec<B>>&, const SuiteOptions&,    \
                                            Report&);                                                               \
  template void ricci_suite<B>(const Context<B>&, const std::vector<Vec<B>>&, const SuiteOptions&, Report&);       \
  template UmbilicalData<B> umbilical_data<B, B>(const Context<B>&, const Frame<B>&, const InducedObjects<B>&);    \
  template RicciData<B> induced_ricci<B>(const Context<B>&, const Vec<B>&);

NORDEN_RTL_INSTANTIATE(double)
NORDEN_RTL_INSTANTIATE(Rational)

}  // namespace norden
