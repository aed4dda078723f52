#pragma once

// Hypersurfaces, lightlike frames and the Gauss-Weingarten decomposition.
//
// A hypersurface is the zero set of a quadratic constraint in the ambient
// frame coordinates.  Lie-algebra hypersurfaces (subalgebras) use a linear
// constraint whose coefficient row annihilates the subalgebra, so every
// frame field built from it is constant and its derivatives vanish.
//
// Frame fields are explicit functions of the ambient point and are generic
// in the scalar type: evaluating them at a dual point x + εX yields dV(X).

#include <cmath>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "norden/ambient/ambient.hpp"
#include "norden/numkit/dual.hpp"
#include "norden/numkit/errors.hpp"
#include "norden/numkit/linalg.hpp"
#include "norden/numkit/matrix.hpp"

namespace norden {

// F(x) = x^T Q x + l^T x + c.
template <class B>
struct Quadric {
  Matrix<B> Q;
  Vec<B> l;
  B c = B(0);

  template <class S>
  S value(const Vec<S>& x) const {
    S q = bilinear_const<S>(Q, x, x);
    S lin(0);
    for (std::size_t i = 0; i < x.size(); ++i)
      if (sign_of(l[i]) != 0) lin += S(l[i]) * x[i];
    return q + lin + S(c);
  }
  // (Q + Q^T) x + l.
  template <class S>
  Vec<S> gradient(const Vec<S>& x) const {
    Vec<S> g(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
      S s(l[i]);
      for (std::size_t j = 0; j < x.size(); ++j) {
        if (sign_of(Q(i, j)) != 0) s += S(Q(i, j)) * x[j];
        if (sign_of(Q(j, i)) != 0) s += S(Q(j, i)) * x[j];
      }
      g[i] = s;
    }
    return g;
  }
  bool linear() const {
    for (std::size_t i = 0; i < Q.rows(); ++i)
      for (std::size_t j = 0; j < Q.cols(); ++j)
        if (sign_of(Q(i, j)) != 0) return false;
    return true;
  }
};

enum class MetricView { Bar, Tilde };
enum class TransversalMode { Holomorphic, Reference };

std::string to_string(MetricView v);
std::string to_string(TransversalMode m);

template <class B>
struct Hypersurface {
  Quadric<B> constraint;
  std::vector<Vec<B>> subalgebra;       // stored tangent basis for Lie scenes
  MetricView view = MetricView::Bar;    // metric under which M is lightlike
  TransversalMode transversal = TransversalMode::Holomorphic;
  B gauge = B(1);                       // ξ is gauge times the radical direction scaled to 1 at its pivot
  std::vector<Vec<B>> screen_override;  // constant screen, Lie scenes only
  std::optional<double> norm_above;     // domain: g(Z,Z) > value
};

template <class B>
struct Context {
  Ambient<B> ambient;   // carries the Norden metric g
  Ambient<B> view;      // same manifold with the lightlike-view Gram
  Connection<B> conn;   // Levi-Civita connection of the view metric
  Matrix<B> view_inv;
  Matrix<B> bar_inv;
  Hypersurface<B> surface;
  std::size_t dim = 0;
};

template <class B>
Context<B> make_context(Ambient<B> ambient, Hypersurface<B> surface) {
  Context<B> ctx;
  ctx.dim = ambient.dim;
  ctx.view = surface.view == MetricView::Bar ? ambient : with_gram(ambient, associated_gram(ambient));
  ctx.conn = levi_civita(ctx.view);
  ctx.view_inv = inverse(ctx.view.gram);
  ctx.bar_inv = inverse(ambient.gram);
  ctx.ambient = std::move(ambient);
  ctx.surface = std::move(surface);
  if (ctx.surface.constraint.l.size() != ctx.dim || ctx.surface.constraint.Q.rows() != ctx.dim)
    throw DimensionError("constraint does not match the ambient dimension");
  return ctx;
}

// Quasi-orthonormal frame {ξ, N, W_i} along M.
template <class S>
struct Frame {
  Vec<S> xi;
  Vec<S> N;
  std::vector<Vec<S>> W;
  std::vector<int> eps;

  std::size_t screen_dim() const { return W.size(); }
  std::size_t tangent_dim() const { return W.size() + 1; }
  // Tangent frame E_0 = ξ, E_i = W_i.
  const Vec<S>& E(std::size_t a) const { return a == 0 ? xi : W[a - 1]; }
};

template <class S>
Frame<S> frame_value(const Frame<Dual<S>>& f) {
  auto strip_vec = [](const Vec<Dual<S>>& v) {
    Vec<S> o(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) o[i] = v[i].v;
    return o;
  };
  Frame<S> o;
  o.xi = strip_vec(f.xi);
  o.N = strip_vec(f.N);
  for (const auto& w : f.W) o.W.push_back(strip_vec(w));
  o.eps = f.eps;
  return o;
}

template <class S>
Frame<S> frame_tangent(const Frame<Dual<S>>& f) {
  auto tan_vec = [](const Vec<Dual<S>>& v) {
    Vec<S> o(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) o[i] = v[i].d;
    return o;
  };
  Frame<S> o;
  o.xi = tan_vec(f.xi);
  o.N = tan_vec(f.N);
  for (const auto& w : f.W) o.W.push_back(tan_vec(w));
  o.eps = f.eps;
  return o;
}

template <class S, class B>
Vec<S> lift_vec(const Vec<B>& v) {
  Vec<S> o(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) o[i] = scalar_cast<S>(v[i]);
  return o;
}

template <class S>
Vec<Dual<S>> dual_point(const Vec<S>& x, const Vec<S>& dir) {
  Vec<Dual<S>> y(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) y[i] = Dual<S>(x[i], dir[i]);
  return y;
}

template <class S>
Vec<S> tangent_part(const Vec<Dual<S>>& v) {
  Vec<S> o(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) o[i] = v[i].d;
  return o;
}

template <class S>
std::size_t real_argmax(const Vec<S>& v) {
  std::size_t p = 0;
  for (std::size_t i = 1; i < v.size(); ++i)
    if (abs_greater(v[i], v[p])) p = i;
  return p;
}

// View-metric helpers on ambient vectors.
template <class B, class S>
S view_g(const Context<B>& ctx, const Vec<S>& u, const Vec<S>& v) {
  return bilinear_const<S>(ctx.view.gram, u, v);
}
template <class B, class S>
S bar_g(const Context<B>& ctx, const Vec<S>& u, const Vec<S>& v) {
  return bilinear_const<S>(ctx.ambient.gram, u, v);
}
template <class B, class S>
Vec<S> apply_J(const Context<B>& ctx, const Vec<S>& v) {
  return apply_const<S>(ctx.ambient.J, v);
}

// Γ(X, V) with the view connection.
template <class B, class S>
Vec<S> gamma_apply(const Context<B>& ctx, const Vec<S>& x, const Vec<S>& v) {
  const std::size_t d = ctx.dim;
  Vec<S> out(d);
  if (ctx.conn.flat) return out;
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) {
      S xv = x[i] * v[j];
      for (std::size_t k = 0; k < d; ++k)
        if (sign_of(ctx.conn(k, i, j)) != 0) out[k] += xv * S(ctx.conn(k, i, j));
    }
  return out;
}

// [X, Y] of frame-expanded fields from their derivatives: dY(X) - dX(Y) + c(X, Y).
template <class B, class S>
Vec<S> structure_apply(const Context<B>& ctx, const Vec<S>& x, const Vec<S>& y) {
  const std::size_t d = ctx.dim;
  Vec<S> out(d);
  if (!ctx.ambient.has_brackets()) return out;
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) {
      S xy = x[i] * y[j];
      for (std::size_t k = 0; k < d; ++k)
        if (sign_of(ctx.ambient.c(k, i, j)) != 0) out[k] += xy * S(ctx.ambient.c(k, i, j));
    }
  return out;
}

template <class B, class S>
Vec<S> constraint_covector(const Context<B>& ctx, const Vec<S>& x) {
  return ctx.surface.constraint.template gradient<S>(x);
}

// Radical direction of the view metric on ker dF, scaled so its dominant
// coordinate equals the gauge.
template <class B, class S>
Vec<S> radical_field(const Context<B>& ctx, const Vec<S>& x) {
  Vec<S> n = constraint_covector(ctx, x);
  Vec<S> xi_hat = apply_const<S>(ctx.view_inv, n);
  std::size_t p = real_argmax(xi_hat);
  if (is_negligible(xi_hat[p], 1e-300)) throw PreconditionError("vanishing constraint differential");
  S scale = S(ctx.surface.gauge) / xi_hat[p];
  return xi_hat * scale;
}

// N = (V - g(V,V)/(2 g(V,ξ)) ξ) / g(V,ξ) for any V with g(V,ξ) != 0.
template <class B, class S>
Vec<S> null_transversal(const Context<B>& ctx, const Vec<S>& v, const Vec<S>& xi) {
  S gvx = view_g(ctx, v, xi);
  if (is_negligible(gvx, 1e-13)) throw PreconditionError("no transversal vector with g(V, xi) != 0");
  S gvv = view_g(ctx, v, v);
  Vec<S> t = v - xi * (gvv / (S(2) * gvx));
  return t / gvx;
}

// The unique N of the quasi-orthonormal conditions for a given screen:
// V is a reference vector pushed into the screen's orthocomplement.
template <class B, class S>
Vec<S> transversal_section(const Context<B>& ctx, const Vec<S>& xi, const std::vector<Vec<S>>& W,
                           const std::vector<int>& eps) {
  const std::size_t d = ctx.dim;
  Vec<S> best;
  double best_score = -1.0;
  for (std::size_t r = 0; r < d; ++r) {
    Vec<S> v = basis_vector<S>(d, r);
    for (std::size_t i = 0; i < W.size(); ++i) v -= W[i] * (view_g(ctx, v, W[i]) * S(eps[i]));
    double score = std::fabs(to_double(view_g(ctx, v, xi)));
    if (score > best_score + 1e-12) {
      best_score = score;
      best = v;
    }
  }
  return null_transversal(ctx, best, xi);
}

template <class B>
std::vector<int> override_signs(const Context<B>& ctx) {
  std::vector<int> eps;
  for (const auto& w : ctx.surface.screen_override) eps.push_back(sign_of(bilinear(ctx.view.gram, w, w)));
  return eps;
}

template <class B, class S>
Frame<S> build_frame(const Context<B>& ctx, const Vec<S>& x) {
  const std::size_t d = ctx.dim;
  Frame<S> f;
  f.xi = radical_field(ctx, x);
  if (!ctx.surface.screen_override.empty()) {
    for (const auto& w : ctx.surface.screen_override) f.W.push_back(lift_vec<S>(w));
    f.eps = override_signs(ctx);
    f.N = transversal_section(ctx, f.xi, f.W, f.eps);
    return f;
  }
  Vec<S> v;
  if (ctx.surface.transversal == TransversalMode::Holomorphic) {
    v = apply_J(ctx, f.xi);
  } else {
    std::size_t best = 0;
    S best_val = view_g(ctx, basis_vector<S>(d, 0), f.xi);
    for (std::size_t r = 1; r < d; ++r) {
      S val = view_g(ctx, basis_vector<S>(d, r), f.xi);
      if (abs_greater(val, best_val)) {
        best = r;
        best_val = val;
      }
    }
    v = basis_vector<S>(d, best);
  }
  f.N = null_transversal(ctx, v, f.xi);
  // Screen: P(e_r) = e_r - g(e_r,N) ξ - g(e_r,ξ) N, then pivoted Gram-Schmidt.
  std::vector<Vec<S>> cand;
  for (std::size_t r = 0; r < d; ++r) {
    Vec<S> e = basis_vector<S>(d, r);
    cand.push_back(e - f.xi * view_g(ctx, e, f.N) - f.N * view_g(ctx, e, f.xi));
  }
  auto gs = indefinite_gram_schmidt<S>(ctx.view.gram, std::move(cand), d - 2, 1e-10);
  f.W = std::move(gs.vectors);
  f.eps = std::move(gs.signs);
  return f;
}

}  // namespace norden
