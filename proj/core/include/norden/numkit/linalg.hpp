#pragma once

// Dense linear algebra over Rational, double and dual scalars, with the
// indefinite-metric pieces the geometry needs: signatures, radicals,
// semi-orthogonality and a pivoted Gram-Schmidt for non-definite forms.

#include <cmath>
#include <cstddef>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "norden/numkit/dual.hpp"
#include "norden/numkit/errors.hpp"
#include "norden/numkit/matrix.hpp"
#include "norden/numkit/scalar.hpp"

namespace norden {

struct SignatureResult {
  std::size_t plus = 0;
  std::size_t minus = 0;
  std::size_t null = 0;
  friend bool operator==(const SignatureResult&, const SignatureResult&) = default;
};

// |a| > |b|, exactly for rationals and on real parts otherwise.
template <class T>
bool abs_greater(const T& a, const T& b) {
  if constexpr (is_exact_v<T>) {
    return abs(a) > abs(b);
  } else {
    return std::fabs(to_double(a)) > std::fabs(to_double(b));
  }
}

template <class T>
T symmetry_residual(const Matrix<T>& m) {
  if (!m.square()) throw DimensionError("symmetry check needs a square matrix");
  T worst(0);
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = i + 1; j < m.cols(); ++j) {
      T d = magnitude(T(m(i, j) - m(j, i)));
      if (d > worst) worst = d;
    }
  return worst;
}

template <class T>
void require_symmetric(const Matrix<T>& m, double tol) {
  if (!is_negligible(symmetry_residual(m), tol))
    throw StructuralError("bilinear form is not symmetric");
}

// Gauss-Jordan elimination with largest-magnitude pivoting.
template <class T>
Matrix<T> inverse(const Matrix<T>& a, double tol = 1e-14) {
  if (!a.square()) throw DimensionError("inverse of a non-square matrix");
  const std::size_t n = a.rows();
  Matrix<T> m = a;
  Matrix<T> inv = Matrix<T>::identity(n);
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t p = k;
    for (std::size_t i = k + 1; i < n; ++i)
      if (abs_greater(m(i, k), m(p, k))) p = i;
    if (is_negligible(m(p, k), tol)) throw StructuralError("matrix is singular");
    if (p != k)
      for (std::size_t j = 0; j < n; ++j) {
        std::swap(m(p, j), m(k, j));
        std::swap(inv(p, j), inv(k, j));
      }
    T piv = m(k, k);
    for (std::size_t j = 0; j < n; ++j) {
      m(k, j) = m(k, j) / piv;
      inv(k, j) = inv(k, j) / piv;
    }
    for (std::size_t i = 0; i < n; ++i) {
      if (i == k || sign_of(m(i, k)) == 0) continue;
      T f = m(i, k);
      for (std::size_t j = 0; j < n; ++j) {
        m(i, j) -= f * m(k, j);
        inv(i, j) -= f * inv(k, j);
      }
    }
  }
  return inv;
}

template <class T>
Vec<T> solve(const Matrix<T>& a, const Vec<T>& b, double tol = 1e-14) {
  if (a.rows() != b.size()) throw DimensionError("solve: right-hand side size mismatch");
  return inverse(a, tol) * b;
}

// Reduced row echelon form in place; returns pivot columns.
template <class T>
std::vector<std::size_t> rref(Matrix<T>& m, double tol) {
  std::vector<std::size_t> pivots;
  std::size_t row = 0;
  for (std::size_t col = 0; col < m.cols() && row < m.rows(); ++col) {
    std::size_t p = row;
    for (std::size_t i = row + 1; i < m.rows(); ++i)
      if (abs_greater(m(i, col), m(p, col))) p = i;
    if (is_negligible(m(p, col), tol)) {
      for (std::size_t i = row; i < m.rows(); ++i) m(i, col) = T(0);
      continue;
    }
    if (p != row)
      for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m(p, j), m(row, j));
    T piv = m(row, col);
    for (std::size_t j = 0; j < m.cols(); ++j) m(row, j) = m(row, j) / piv;
    for (std::size_t i = 0; i < m.rows(); ++i) {
      if (i == row || sign_of(m(i, col)) == 0) continue;
      T f = m(i, col);
      for (std::size_t j = 0; j < m.cols(); ++j) m(i, j) -= f * m(row, j);
    }
    pivots.push_back(col);
    ++row;
  }
  return pivots;
}

// Basis of {v : A v = 0}, one vector per free column with that entry equal to 1.
template <class T>
std::vector<Vec<T>> null_space(const Matrix<T>& a, double tol) {
  Matrix<T> m = a;
  auto pivots = rref(m, tol);
  std::vector<bool> is_pivot(a.cols(), false);
  for (auto c : pivots) is_pivot[c] = true;
  std::vector<Vec<T>> basis;
  for (std::size_t free = 0; free < a.cols(); ++free) {
    if (is_pivot[free]) continue;
    Vec<T> v(a.cols());
    v[free] = T(1);
    for (std::size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = -m(r, free);
    basis.push_back(v);
  }
  return basis;
}

template <class T>
T first_nonzero(const Vec<T>& v, double tol) {
  for (const auto& x : v)
    if (!is_negligible(x, tol)) return x;
  return T(0);
}

// Exact congruence diagonalization; counts signs of the diagonal.
SignatureResult signature(const Matrix<Rational>& form);

// Eigenvalue thresholding at tol (> 0).
SignatureResult signature(const Matrix<double>& form, double tol);

// Rational overload ignores tol, matching the float call shape.
inline SignatureResult signature(const Matrix<Rational>& form, double /*tol*/) { return signature(form); }

template <class T>
std::vector<Vec<T>> radical_basis(const Matrix<T>& form, double tol) {
  if (!is_exact_v<T> && !(tol > 0.0)) throw ParameterError("tolerance must be positive");
  require_symmetric(form, tol);
  auto basis = null_space(form, tol);
  for (auto& v : basis) {
    T lead = first_nonzero(v, tol);
    v = v / lead;
  }
  return basis;
}

// max |W^T diag(eps) W - diag(eps)|.
template <class T>
T semi_orthogonal_check(const Matrix<T>& w, const std::vector<int>& eps) {
  if (!w.square() || w.rows() != eps.size())
    throw DimensionError("semi-orthogonal check: W must be m x m with m signs");
  const std::size_t m = eps.size();
  T worst(0);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t k = 0; k < m; ++k) {
      T s(0);
      for (std::size_t j = 0; j < m; ++j) s += w(j, i) * T(eps[j]) * w(j, k);
      if (i == k) s -= T(eps[i]);
      T a = magnitude(s);
      if (a > worst) worst = a;
    }
  return worst;
}

template <class T>
struct OrthonormalSet {
  std::vector<Vec<T>> vectors;
  std::vector<int> signs;
};

// Pivoted Gram-Schmidt for a possibly indefinite constant form.
//
// At each step the candidate with the largest |g(c,c)| / |c0|^2 is taken
// (c0 the candidate as passed in),
// looking at single candidates and at pairwise sums and differences so a
// basis made of null vectors still yields unit vectors.  Choices depend on
// real parts only.  A step whose best score is below null_tol raises
// StructuralError naming the step.
template <class T, class C>
OrthonormalSet<T> indefinite_gram_schmidt(const Matrix<C>& gram, std::vector<Vec<T>> cand,
                                          std::size_t count, double null_tol) {
  OrthonormalSet<T> out;
  auto form = [&](const Vec<T>& u, const Vec<T>& v) { return bilinear_const<T>(gram, u, v); };
  // Scores are relative to the original candidate sizes, so a candidate
  // worn down by cancellation loses to one that kept its length.
  std::vector<double> size0;
  for (const auto& c : cand) size0.push_back(euclidean_norm2(c));
  for (std::size_t step = 0; step < count; ++step) {
    double best = -1.0;
    Vec<T> chosen;
    auto consider = [&](const Vec<T>& c, double ref) {
      if (euclidean_norm2(c) < 1e-28) return;
      double score = std::fabs(to_double(form(c, c))) / ref;
      if (score > best + 1e-12) {
        best = score;
        chosen = c;
      }
    };
    for (std::size_t i = 0; i < cand.size(); ++i) consider(cand[i], size0[i]);
    for (std::size_t i = 0; i < cand.size(); ++i)
      for (std::size_t j = i + 1; j < cand.size(); ++j) {
        consider(cand[i] + cand[j], size0[i] + size0[j]);
        consider(cand[i] - cand[j], size0[i] + size0[j]);
      }
    T q = chosen.empty() ? T(0) : form(chosen, chosen);
    bool degenerate = chosen.empty() || best <= null_tol;
    if constexpr (is_exact_v<T>) degenerate = chosen.empty() || sgn(q) == 0;
    if (degenerate)
      throw StructuralError("Gram-Schmidt hit a null pivot at step " + std::to_string(step));
    int s = sign_of(q);
    T norm = square_root(magnitude(q));
    Vec<T> w = chosen / norm;
    for (auto& c : cand) {
      T proj = form(c, w) * T(s);
      c -= proj * w;
    }
    out.vectors.push_back(w);
    out.signs.push_back(s);
  }
  return out;
}

// df_x(v) by seeding a dual direction.
template <class F>
double directional_derivative(F&& f, const Vec<double>& x, const Vec<double>& v) {
  if (x.size() != v.size()) throw DimensionError("directional derivative: size mismatch");
  Vec<Dual<double>> y(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) y[i] = Dual<double>(x[i], v[i]);
  Dual<double> r = f(y);
  return r.d;
}

}  // namespace norden
