#pragma once

// Local frames with first derivatives and the induced objects of the
// Gauss-Weingarten decomposition, all expressed in the frame {ξ, N, W_i}.

#include <cstddef>
#include <vector>

#include "norden/check.hpp"
#include "norden/hypersurface/hypersurface.hpp"

namespace norden {

// Frame at x together with dV(E_a) for every frame field V and tangent
// frame vector E_a.
template <class S>
struct LocalFrame {
  Frame<S> f;
  std::vector<Frame<S>> d;  // d[a]: derivatives along E_a
};

template <class B, class S>
LocalFrame<S> local_frame(const Context<B>& ctx, const Vec<S>& x) {
  LocalFrame<S> lf;
  lf.f = build_frame(ctx, x);
  for (std::size_t a = 0; a < lf.f.tangent_dim(); ++a) {
    Frame<Dual<S>> fd = build_frame(ctx, dual_point(x, lf.f.E(a)));
    lf.d.push_back(frame_tangent(fd));
  }
  return lf;
}

// Derivative of a frame-expanded field along an arbitrary tangent vector
// given by its tangent-frame coefficients.
template <class S>
Vec<S> combine_derivative(const std::vector<Vec<S>>& along_frame, const Vec<S>& coeffs) {
  Vec<S> out(along_frame.front().size());
  for (std::size_t a = 0; a < coeffs.size(); ++a) out += along_frame[a] * coeffs[a];
  return out;
}

// Coefficient extraction in the quasi-orthonormal frame.
template <class B, class S>
struct FrameCoords {
  const Context<B>& ctx;
  const Frame<S>& f;

  S xi_coef(const Vec<S>& v) const { return view_g(ctx, v, f.N); }
  S n_coef(const Vec<S>& v) const { return view_g(ctx, v, f.xi); }
  S w_coef(const Vec<S>& v, std::size_t i) const { return view_g(ctx, v, f.W[i]) * S(f.eps[i]); }

  // [ξ, W_1, ..., W_m] coefficients of the tangent part.
  Vec<S> tangent(const Vec<S>& v) const {
    Vec<S> c(f.tangent_dim());
    c[0] = xi_coef(v);
    for (std::size_t i = 0; i < f.screen_dim(); ++i) c[i + 1] = w_coef(v, i);
    return c;
  }
  Vec<S> screen(const Vec<S>& v) const {
    Vec<S> c(f.screen_dim());
    for (std::size_t i = 0; i < f.screen_dim(); ++i) c[i] = w_coef(v, i);
    return c;
  }
  Vec<S> from_tangent(const Vec<S>& c) const {
    Vec<S> v = f.xi * c[0];
    for (std::size_t i = 0; i < f.screen_dim(); ++i) v += f.W[i] * c[i + 1];
    return v;
  }
  Vec<S> from_screen(const Vec<S>& c) const {
    Vec<S> v(ctx.dim);
    for (std::size_t i = 0; i < f.screen_dim(); ++i) v += f.W[i] * c[i];
    return v;
  }
  // Screen projection P of a tangent vector.
  Vec<S> P(const Vec<S>& v) const { return from_screen(screen(v)); }
  // Tangent part (drops the N component).
  Vec<S> tan_vec(const Vec<S>& v) const { return v - f.N * n_coef(v); }
  // Residual of v outside the frame span, should be zero.
  Vec<S> reconstruct(const Vec<S>& v) const {
    Vec<S> r = from_tangent(tangent(v)) + f.N * n_coef(v);
    return v - r;
  }
};

template <class S>
struct InducedObjects {
  std::size_t m = 0;                         // screen dimension
  std::vector<std::vector<Vec<S>>> nabla_bar;  // ∇̄_{E_a} E_b, ambient vectors
  std::vector<Vec<S>> nabla_bar_N;           // ∇̄_{E_a} N
  std::vector<std::vector<Vec<S>>> omega;    // tangent coefficients of ∇_{E_a} E_b
  Matrix<S> B;                               // B(E_a, E_b)
  Vec<S> tau;                                // τ(E_a)
  std::vector<Vec<S>> AN;                    // A_N E_a, ambient vectors
  std::vector<Vec<S>> Astar;                 // A*_ξ E_a, ambient vectors
  Matrix<S> C;                               // C(E_a, W_j)
  std::vector<std::vector<Vec<S>>> nabla_star;  // screen coefficients of ∇*_{E_a} W_j
  std::vector<std::vector<Vec<S>>> brackets;    // tangent coefficients of [E_a, E_b]
  Matrix<S> bracket_normal;                  // N coefficient of [E_a, E_b]
  Vec<S> b_derivative;                       // E_a(b) with b = g(Jξ, ξ)
  S b = S(0);
};

// ∇̄_{E_a} V for a frame field V with derivative dV along E_a.
template <class B, class S>
Vec<S> covariant(const Context<B>& ctx, const Frame<S>& f, std::size_t a, const Vec<S>& v, const Vec<S>& dv) {
  return dv + gamma_apply(ctx, f.E(a), v);
}

template <class B, class S>
InducedObjects<S> induced_objects(const Context<B>& ctx, const LocalFrame<S>& lf) {
  const Frame<S>& f = lf.f;
  FrameCoords<B, S> fc{ctx, f};
  const std::size_t T = f.tangent_dim();
  const std::size_t m = f.screen_dim();
  InducedObjects<S> io;
  io.m = m;
  io.B = Matrix<S>(T, T);
  io.tau = Vec<S>(T);
  io.C = Matrix<S>(T, m);
  io.b_derivative = Vec<S>(T);
  io.bracket_normal = Matrix<S>(T, T);
  Vec<S> jxi = apply_J(ctx, f.xi);
  io.b = view_g(ctx, jxi, f.xi);

  auto dE = [&](std::size_t a, std::size_t b) -> const Vec<S>& {
    return b == 0 ? lf.d[a].xi : lf.d[a].W[b - 1];
  };

  io.nabla_bar.resize(T);
  io.omega.resize(T);
  io.nabla_star.resize(T);
  io.brackets.resize(T);
  for (std::size_t a = 0; a < T; ++a) {
    for (std::size_t b = 0; b < T; ++b) {
      Vec<S> v = covariant(ctx, f, a, f.E(b), dE(a, b));
      io.B(a, b) = fc.n_coef(v);
      io.omega[a].push_back(fc.tangent(v));
      io.nabla_bar[a].push_back(v);
    }
    Vec<S> vn = covariant(ctx, f, a, f.N, lf.d[a].N);
    io.nabla_bar_N.push_back(vn);
    io.tau[a] = fc.n_coef(vn);
    io.AN.push_back(Vec<S>(f.N * io.tau[a] - vn));
    // ∇_a ξ = -A*_ξ E_a - τ_a ξ.
    Vec<S> nabla_xi = fc.from_tangent(io.omega[a][0]);
    io.Astar.push_back(Vec<S>(-(nabla_xi + f.xi * io.tau[a])));
    for (std::size_t j = 0; j < m; ++j) {
      const Vec<S>& w = io.omega[a][j + 1];
      io.C(a, j) = w[0];
      Vec<S> star(m);
      for (std::size_t i = 0; i < m; ++i) star[i] = w[i + 1];
      io.nabla_star[a].push_back(star);
    }
    // X∘b = g(J dξ, ξ) + g(Jξ, dξ).
    io.b_derivative[a] = view_g(ctx, Vec<S>(apply_J(ctx, lf.d[a].xi)), f.xi) + view_g(ctx, jxi, lf.d[a].xi);
  }
  for (std::size_t a = 0; a < T; ++a)
    for (std::size_t b = 0; b < T; ++b) {
      Vec<S> br = dE(a, b) - dE(b, a) + structure_apply(ctx, f.E(a), f.E(b));
      io.brackets[a].push_back(fc.tangent(br));
      io.bracket_normal(a, b) = fc.n_coef(br);
    }
  return io;
}

template <class B, class S>
InducedObjects<S> induced_at(const Context<B>& ctx, const Vec<S>& x) {
  return induced_objects(ctx, local_frame(ctx, x));
}

// Unit normal of M for the Norden metric g, oriented along G^{-1} dF.
template <class S>
struct UnitNormal {
  Vec<S> n;
  S norm2;  // g(G^{-1}dF, G^{-1}dF) before normalization
  int eps = 0;
};

template <class B, class S>
UnitNormal<S> unit_normal(const Context<B>& ctx, const Vec<S>& x) {
  Vec<S> dF = constraint_covector(ctx, x);
  Vec<S> raw = apply_const<S>(ctx.bar_inv, dF);
  UnitNormal<S> u;
  u.norm2 = bar_g(ctx, raw, raw);
  if (is_negligible(u.norm2, 1e-14)) throw PreconditionError("normal is null for the metric g");
  u.eps = sign_of(u.norm2);
  u.n = raw / square_root(magnitude(u.norm2));
  return u;
}

// Tangent basis of ker dF at x: stored subalgebra basis, or e_k - (n_k/n_p) e_p
// for the pivot p of largest |n_p|.
template <class B>
std::vector<Vec<B>> tangent_basis(const Context<B>& ctx, const Vec<B>& x, double tol = 1e-9) {
  if (!ctx.surface.subalgebra.empty()) return ctx.surface.subalgebra;
  B value = ctx.surface.constraint.template value<B>(x);
  if (!is_negligible(value, tol)) throw PreconditionError("point is off the hypersurface");
  Vec<B> n = constraint_covector(ctx, x);
  std::size_t p = real_argmax(n);
  if (is_negligible(n[p], tol)) throw PreconditionError("vanishing constraint differential");
  std::vector<Vec<B>> out;
  for (std::size_t k = 0; k < ctx.dim; ++k) {
    if (k == p) continue;
    Vec<B> v = basis_vector<B>(ctx.dim, k);
    v[p] = -n[k] / n[p];
    out.push_back(v);
  }
  return out;
}

template <class B>
struct DetectResult {
  SignatureResult signature;
  std::optional<Vec<B>> radical;  // ambient vector spanning the radical
};

// Signature of the induced metric on a tangent basis and its radical.
template <class B>
DetectResult<B> lightlike_detect(const Matrix<B>& gram, const std::vector<Vec<B>>& basis, double tol) {
  Matrix<B> t = Matrix<B>::from_columns(basis);
  Matrix<B> induced = t.transpose() * gram * t;
  DetectResult<B> r;
  r.signature = signature(induced, tol);
  if (r.signature.null > 1) throw PreconditionError("radical of dimension > 1 on a hypersurface");
  if (r.signature.null == 1) {
    auto rad = radical_basis(induced, tol);
    if (rad.size() != 1) throw PreconditionError("radical computation disagrees with the signature");
    r.radical = t * rad[0];
  }
  return r;
}

// Second frame from the screen change relations with functions f and
// matrix (W^j_i); W'_i = Σ_j W^j_i (W_j - ε_j f_j ξ),
// N' = N - ½ (Σ ε_i f_i²) ξ + Σ f_i W_i.
template <class S>
Frame<S> screen_transform(const Frame<S>& f, const Vec<S>& fs, const Matrix<S>& wmat, double tol) {
  const std::size_t m = f.screen_dim();
  if (fs.size() != m || wmat.rows() != m || wmat.cols() != m)
    throw DimensionError("screen transform: sizes do not match the screen");
  if (!is_negligible(semi_orthogonal_check(wmat, f.eps), tol))
    throw ParameterError("screen transform matrix is not semi-orthogonal");
  Frame<S> out;
  out.xi = f.xi;
  out.eps = f.eps;
  S q(0);
  for (std::size_t i = 0; i < m; ++i) q += S(f.eps[i]) * fs[i] * fs[i];
  out.N = f.N - f.xi * (q / S(2));
  for (std::size_t i = 0; i < m; ++i) out.N += f.W[i] * fs[i];
  for (std::size_t i = 0; i < m; ++i) {
    Vec<S> w(f.xi.size());
    for (std::size_t j = 0; j < m; ++j) w += (f.W[j] - f.xi * (S(f.eps[j]) * fs[j])) * wmat(j, i);
    out.W.push_back(w);
  }
  return out;
}

// Frame validity and Gauss-Weingarten consistency over the given points.
template <class B>
void frame_suite(const Context<B>& ctx, const std::vector<Vec<B>>& points, const Tolerances& tol, Report& out);

extern template void frame_suite<double>(const Context<double>&, const std::vector<Vec<double>>&,
                                         const Tolerances&, Report&);
extern template void frame_suite<Rational>(const Context<Rational>&, const std::vector<Vec<Rational>>&,
                                           const Tolerances&, Report&);

}  // namespace norden
