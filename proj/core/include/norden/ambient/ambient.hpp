#pragma once

// Ambient almost complex manifolds with Norden metric.
//
// Two kinds are supported, both described by constant data in a global
// frame {e_i}: a flat chart (coordinate fields, zero brackets) and a Lie
// algebra (left-invariant fields with structure constants).  Connection
// coefficients Γ^k_ij are defined by ∇_{e_i} e_j = Γ^k_ij e_k.

#include <cstddef>
#include <string>
#include <vector>

#include "norden/check.hpp"
#include "norden/numkit/errors.hpp"
#include "norden/numkit/linalg.hpp"
#include "norden/numkit/matrix.hpp"

namespace norden {

enum class AmbientKind { FlatChart, LieAlgebra };

template <class B>
struct Ambient {
  AmbientKind kind = AmbientKind::FlatChart;
  std::string name;
  std::size_t dim = 0;
  std::vector<std::string> labels;
  Matrix<B> gram;
  Matrix<B> J;                 // column i is J e_i
  std::vector<B> structure;    // c^k_ij at (i*dim + j)*dim + k; empty for charts

  bool has_brackets() const { return !structure.empty(); }
  const B& c(std::size_t k, std::size_t i, std::size_t j) const {
    return structure[(i * dim + j) * dim + k];
  }
  // [e_i, e_j] in the frame.
  Vec<B> bracket(std::size_t i, std::size_t j) const {
    Vec<B> v(dim);
    if (has_brackets())
      for (std::size_t k = 0; k < dim; ++k) v[k] = c(k, i, j);
    return v;
  }
};

template <class B>
struct Connection {
  std::size_t dim = 0;
  std::vector<B> gamma;  // Γ^k_ij at (i*dim + j)*dim + k
  bool flat = true;      // all coefficients identically zero

  const B& operator()(std::size_t k, std::size_t i, std::size_t j) const {
    return gamma[(i * dim + j) * dim + k];
  }
  B& at(std::size_t k, std::size_t i, std::size_t j) { return gamma[(i * dim + j) * dim + k]; }
};

template <class B>
std::vector<std::string> default_labels(std::size_t dim, const std::string& stem) {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < dim; ++i) out.push_back(stem + std::to_string(i + 1));
  return out;
}

template <class B>
Ambient<B> flat_chart(std::string name, Matrix<B> gram, Matrix<B> J, std::vector<std::string> labels = {}) {
  if (!gram.square() || !J.square() || gram.rows() != J.rows())
    throw DimensionError("flat chart: Gram and J must be square of equal size");
  Ambient<B> m;
  m.kind = AmbientKind::FlatChart;
  m.name = std::move(name);
  m.dim = gram.rows();
  m.labels = labels.empty() ? default_labels<B>(m.dim, "e") : std::move(labels);
  m.gram = std::move(gram);
  m.J = std::move(J);
  return m;
}

template <class B>
Matrix<B> commutator(const Matrix<B>& a, const Matrix<B>& b) {
  return a * b - b * a;
}

// Lie algebra spanned by square matrices; structure constants come from
// expressing each commutator [X_i, X_j] = X_i X_j - X_j X_i in the basis.
template <class B>
Ambient<B> lie_from_matrices(std::string name, const std::vector<Matrix<B>>& basis, Matrix<B> gram,
                             Matrix<B> J, std::vector<std::string> labels = {}) {
  const std::size_t d = basis.size();
  if (d == 0) throw DimensionError("empty Lie algebra basis");
  const std::size_t r = basis[0].rows(), c = basis[0].cols();
  // Flattened basis as columns of an (r*c) x d matrix.
  Matrix<B> flat(r * c, d);
  for (std::size_t k = 0; k < d; ++k)
    for (std::size_t a = 0; a < r; ++a)
      for (std::size_t b = 0; b < c; ++b) flat(a * c + b, k) = basis[k](a, b);
  Matrix<B> normal = flat.transpose() * flat;
  Matrix<B> normal_inv = inverse(normal);
  Ambient<B> m;
  m.kind = AmbientKind::LieAlgebra;
  m.name = std::move(name);
  m.dim = d;
  m.labels = labels.empty() ? default_labels<B>(d, "X") : std::move(labels);
  m.gram = std::move(gram);
  m.J = std::move(J);
  m.structure.assign(d * d * d, B(0));
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) {
      Matrix<B> com = commutator(basis[i], basis[j]);
      Vec<B> v(r * c);
      for (std::size_t a = 0; a < r; ++a)
        for (std::size_t b = 0; b < c; ++b) v[a * c + b] = com(a, b);
      Vec<B> coeff = normal_inv * (flat.transpose() * v);
      Vec<B> back = flat * coeff;
      if (!is_negligible(max_abs(Vec<B>(back - v)), 1e-12))
        throw StructuralError("basis does not close under the commutator");
      for (std::size_t k = 0; k < d; ++k) m.structure[(i * d + j) * d + k] = coeff[k];
    }
  return m;
}

// g̃(X,Y) = g(JX,Y): Gram J^T G.
template <class B>
Matrix<B> associated_gram(const Ambient<B>& m) {
  return m.J.transpose() * m.gram;
}

template <class B>
Ambient<B> with_gram(const Ambient<B>& m, Matrix<B> gram) {
  Ambient<B> out = m;
  out.gram = std::move(gram);
  return out;
}

// Associated metric view of the ambient; throws if g̃ fails to be symmetric.
template <class B>
Ambient<B> associated_metric(const Ambient<B>& m, double tol) {
  Matrix<B> g = associated_gram(m);
  if (!is_negligible(symmetry_residual(g), tol))
    throw StructuralError("associated metric is not symmetric; J is not g-symmetric");
  Ambient<B> out = with_gram(m, std::move(g));
  out.name = m.name + "~";
  return out;
}

template <class B>
struct NordenResiduals {
  B j_square;   // max |J^2 + I|
  B anti_isometry;  // max |g(Je_i, Je_j) + g(e_i, e_j)|
};

template <class B>
NordenResiduals<B> norden_residuals(const Ambient<B>& m) {
  Matrix<B> j2 = m.J * m.J + Matrix<B>::identity(m.dim);
  Matrix<B> iso = m.J.transpose() * m.gram * m.J + m.gram;
  return {max_abs(j2), max_abs(iso)};
}

// Residuals of an indefinite almost Hermitian pair: J^2 = -I, g(J,J) = g.
template <class B>
NordenResiduals<B> hermitian_residuals(const Ambient<B>& m) {
  Matrix<B> j2 = m.J * m.J + Matrix<B>::identity(m.dim);
  Matrix<B> iso = m.J.transpose() * m.gram * m.J - m.gram;
  return {max_abs(j2), max_abs(iso)};
}

// Koszul formula for left-invariant fields:
// 2 g(∇_i e_j, e_l) = c^a_ij g_al - c^a_jl g_ai + c^a_li g_aj.
template <class B>
Connection<B> levi_civita(const Ambient<B>& m, double tol = 1e-14) {
  const std::size_t d = m.dim;
  Connection<B> conn;
  conn.dim = d;
  conn.gamma.assign(d * d * d, B(0));
  conn.flat = true;
  if (!m.has_brackets()) return conn;
  Matrix<B> ginv = inverse(m.gram, tol);
  std::vector<B> lowered(d * d * d, B(0));
  auto low = [&](std::size_t i, std::size_t j, std::size_t l) -> B& { return lowered[(i * d + j) * d + l]; };
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j)
      for (std::size_t l = 0; l < d; ++l) {
        B s(0);
        for (std::size_t a = 0; a < d; ++a) {
          s += m.c(a, i, j) * m.gram(a, l);
          s -= m.c(a, j, l) * m.gram(a, i);
          s += m.c(a, l, i) * m.gram(a, j);
        }
        low(i, j, l) = s / B(2);
      }
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j)
      for (std::size_t k = 0; k < d; ++k) {
        B s(0);
        for (std::size_t l = 0; l < d; ++l) s += ginv(k, l) * low(i, j, l);
        conn.at(k, i, j) = s;
        if (sign_of(s) != 0) conn.flat = false;
      }
  return conn;
}

// ∇_X V for constant-coefficient X, V in the frame: Γ(X, V).
template <class B>
Vec<B> connection_apply(const Connection<B>& conn, const Vec<B>& x, const Vec<B>& v) {
  Vec<B> out(conn.dim);
  if (conn.flat) return out;
  for (std::size_t i = 0; i < conn.dim; ++i) {
    if (sign_of(x[i]) == 0) continue;
    for (std::size_t j = 0; j < conn.dim; ++j) {
      if (sign_of(v[j]) == 0) continue;
      for (std::size_t k = 0; k < conn.dim; ++k) out[k] += x[i] * v[j] * conn(k, i, j);
    }
  }
  return out;
}

// max |Γ^k_ij - Γ^k_ji - c^k_ij|.
template <class B>
B torsion_residual(const Ambient<B>& m, const Connection<B>& conn) {
  B worst(0);
  for (std::size_t i = 0; i < m.dim; ++i)
    for (std::size_t j = 0; j < m.dim; ++j)
      for (std::size_t k = 0; k < m.dim; ++k) {
        B t = conn(k, i, j) - conn(k, j, i);
        if (m.has_brackets()) t -= m.c(k, i, j);
        B a = magnitude(t);
        if (a > worst) worst = a;
      }
  return worst;
}

// Frame metric is constant, so compatibility reads g(∇_i e_j, e_l) + g(e_j, ∇_i e_l) = 0.
template <class B>
B metric_compatibility_residual(const Ambient<B>& m, const Connection<B>& conn) {
  B worst(0);
  const std::size_t d = m.dim;
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j)
      for (std::size_t l = 0; l < d; ++l) {
        B s(0);
        for (std::size_t k = 0; k < d; ++k) s += conn(k, i, j) * m.gram(k, l) + conn(k, i, l) * m.gram(j, k);
        B a = magnitude(s);
        if (a > worst) worst = a;
      }
  return worst;
}

template <class B>
B jacobi_residual(const Ambient<B>& m) {
  B worst(0);
  if (!m.has_brackets()) return worst;
  const std::size_t d = m.dim;
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) {
      for (std::size_t k = 0; k < d; ++k) {
        B anti = magnitude(B(m.c(k, i, j) + m.c(k, j, i)));
        if (anti > worst) worst = anti;
      }
      for (std::size_t l = 0; l < d; ++l)
        for (std::size_t k = 0; k < d; ++k) {
          // [[e_i,e_j],e_l] + [[e_j,e_l],e_i] + [[e_l,e_i],e_j], component k.
          B s(0);
          for (std::size_t a = 0; a < d; ++a)
            s += m.c(a, i, j) * m.c(k, a, l) + m.c(a, j, l) * m.c(k, a, i) + m.c(a, l, i) * m.c(k, a, j);
          B abs_s = magnitude(s);
          if (abs_s > worst) worst = abs_s;
        }
    }
  return worst;
}

// F(e_i, e_j, e_k) = g((∇_i J) e_j, e_k).
template <class B>
B fundamental_F(const Ambient<B>& m, const Connection<B>& conn, std::size_t i, std::size_t j, std::size_t k) {
  const std::size_t d = m.dim;
  Vec<B> ei = basis_vector<B>(d, i);
  Vec<B> ej = basis_vector<B>(d, j);
  Vec<B> nabla_jy = connection_apply(conn, ei, m.J.column(j));
  Vec<B> j_nabla_y = m.J * connection_apply(conn, ei, ej);
  Vec<B> t = nabla_jy - j_nabla_y;
  return bilinear(m.gram, t, basis_vector<B>(d, k));
}

template <class B>
B fundamental_F(const Ambient<B>& m, const Connection<B>& conn, const Vec<B>& x, const Vec<B>& y,
                const Vec<B>& z) {
  Vec<B> t = connection_apply(conn, x, Vec<B>(m.J * y)) - m.J * connection_apply(conn, x, y);
  return bilinear(m.gram, t, z);
}

template <class B>
struct KaehlerVerdict {
  bool kaehler = false;
  B f_max = B(0);    // max |F| over basis triples
  B phi_max = B(0);  // max |Γ̃ - Γ|
};

template <class B>
KaehlerVerdict<B> kaehler_check(const Ambient<B>& m, double tol) {
  KaehlerVerdict<B> v;
  Connection<B> conn = levi_civita(m);
  Connection<B> tilde = levi_civita(with_gram(m, associated_gram(m)));
  const std::size_t d = m.dim;
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j)
      for (std::size_t k = 0; k < d; ++k) {
        B f = magnitude(fundamental_F(m, conn, i, j, k));
        if (f > v.f_max) v.f_max = f;
        B p = magnitude(B(tilde(k, i, j) - conn(k, i, j)));
        if (p > v.phi_max) v.phi_max = p;
      }
  v.kaehler = is_negligible(v.f_max, tol) && is_negligible(v.phi_max, tol);
  return v;
}

// N_J(e_i, e_j) = [Je_i, Je_j] - [e_i, e_j] - J([e_i, Je_j] + [Je_i, e_j]).
template <class B>
Vec<B> nijenhuis(const Ambient<B>& m, std::size_t i, std::size_t j) {
  const std::size_t d = m.dim;
  auto br = [&](const Vec<B>& x, const Vec<B>& y) {
    Vec<B> out(d);
    if (!m.has_brackets()) return out;
    for (std::size_t a = 0; a < d; ++a) {
      if (sign_of(x[a]) == 0) continue;
      for (std::size_t b = 0; b < d; ++b) {
        if (sign_of(y[b]) == 0) continue;
        for (std::size_t k = 0; k < d; ++k) out[k] += x[a] * y[b] * m.c(k, a, b);
      }
    }
    return out;
  };
  Vec<B> ei = basis_vector<B>(d, i), ej = basis_vector<B>(d, j);
  Vec<B> jei = m.J.column(i), jej = m.J.column(j);
  return br(jei, jej) - br(ei, ej) - m.J * (br(ei, jej) + br(jei, ej));
}

template <class B>
B nijenhuis_max(const Ambient<B>& m) {
  B worst(0);
  for (std::size_t i = 0; i < m.dim; ++i)
    for (std::size_t j = 0; j < m.dim; ++j) {
      B a = max_abs(nijenhuis(m, i, j));
      if (a > worst) worst = a;
    }
  return worst;
}

// R(e_i,e_j)e_k = ∇_i∇_j e_k - ∇_j∇_i e_k - ∇_[e_i,e_j] e_k for constant coefficients.
template <class B>
Vec<B> ambient_curvature(const Ambient<B>& m, const Connection<B>& conn, std::size_t i, std::size_t j,
                         std::size_t k) {
  const std::size_t d = m.dim;
  Vec<B> out(d);
  if (conn.flat) return out;
  for (std::size_t l = 0; l < d; ++l) {
    B s(0);
    for (std::size_t a = 0; a < d; ++a) {
      s += conn(a, j, k) * conn(l, i, a) - conn(a, i, k) * conn(l, j, a);
      if (m.has_brackets()) s -= m.c(a, i, j) * conn(l, a, k);
    }
    out[l] = s;
  }
  return out;
}

template <class B>
B ambient_ricci(const Ambient<B>& m, const Connection<B>& conn, std::size_t i, std::size_t k) {
  B s(0);
  for (std::size_t j = 0; j < m.dim; ++j) s += ambient_curvature(m, conn, i, j, k)[j];
  return s;
}

// Preamble checks run for every scene.  expect_kaehler turns the Kaehler
// verdict into a pass/fail check; otherwise it is reported as info.
template <class B>
void ambient_checks(const Ambient<B>& m, const Tolerances& tol, bool expect_kaehler, Report& out);

extern template void ambient_checks<double>(const Ambient<double>&, const Tolerances&, bool, Report&);
extern template void ambient_checks<Rational>(const Ambient<Rational>&, const Tolerances&, bool, Report&);

}  // namespace norden
