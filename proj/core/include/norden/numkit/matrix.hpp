#pragma once

// Small dense vectors and matrices over any scalar of the numkit vocabulary.
// Dimensions here are single digits to a few hundred; storage is row-major.

#include <algorithm>
#include <cstddef>
#include <initializer_list>
#include <string>
#include <utility>
#include <vector>

#include "norden/numkit/errors.hpp"
#include "norden/numkit/scalar.hpp"

namespace norden {

template <class T>
class Vec {
 public:
  Vec() = default;
  explicit Vec(std::size_t n) : data_(n, T(0)) {}
  Vec(std::size_t n, const T& fill) : data_(n, fill) {}
  Vec(std::initializer_list<T> init) : data_(init) {}
  explicit Vec(std::vector<T> data) : data_(std::move(data)) {}

  std::size_t size() const { return data_.size(); }
  bool empty() const { return data_.empty(); }
  T& operator[](std::size_t i) { return data_[i]; }
  const T& operator[](std::size_t i) const { return data_[i]; }
  auto begin() { return data_.begin(); }
  auto end() { return data_.end(); }
  auto begin() const { return data_.begin(); }
  auto end() const { return data_.end(); }
  const std::vector<T>& values() const { return data_; }

  Vec& operator+=(const Vec& o) {
    check_same(o);
    for (std::size_t i = 0; i < size(); ++i) data_[i] += o.data_[i];
    return *this;
  }
  Vec& operator-=(const Vec& o) {
    check_same(o);
    for (std::size_t i = 0; i < size(); ++i) data_[i] -= o.data_[i];
    return *this;
  }
  Vec& operator*=(const T& s) {
    for (auto& x : data_) x *= s;
    return *this;
  }

  friend Vec operator+(Vec a, const Vec& b) { return a += b; }
  friend Vec operator-(Vec a, const Vec& b) { return a -= b; }
  friend Vec operator-(Vec a) {
    for (auto& x : a.data_) x = -x;
    return a;
  }
  friend Vec operator*(const T& s, Vec a) { return a *= s; }
  friend Vec operator*(Vec a, const T& s) { return a *= s; }
  friend Vec operator/(Vec a, const T& s) {
    for (auto& x : a.data_) x = x / s;
    return a;
  }
  friend bool operator==(const Vec& a, const Vec& b) { return a.data_ == b.data_; }

 private:
  void check_same(const Vec& o) const {
    if (o.size() != size()) throw DimensionError("vector size mismatch");
  }
  std::vector<T> data_;
};

template <class T>
Vec<T> basis_vector(std::size_t n, std::size_t k) {
  Vec<T> e(n);
  e[k] = T(1);
  return e;
}

template <class T>
T dot(const Vec<T>& a, const Vec<T>& b) {
  if (a.size() != b.size()) throw DimensionError("dot: size mismatch");
  T s(0);
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

template <class T>
T max_abs(const Vec<T>& a) {
  T m(0);
  for (const auto& x : a) {
    T ax = magnitude(x);
    if (ax > m) m = ax;
  }
  return m;
}

// Squared Euclidean length on real parts; used only for pivot ranking.
template <class T>
double euclidean_norm2(const Vec<T>& a) {
  double s = 0.0;
  for (const auto& x : a) s += to_double(x) * to_double(x);
  return s;
}

template <class To, class From>
Vec<To> vec_cast(const Vec<From>& v) {
  Vec<To> out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) out[i] = scalar_cast<To>(v[i]);
  return out;
}

template <class T>
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, T(0)) {}
  Matrix(std::initializer_list<std::initializer_list<T>> init) {
    rows_ = init.size();
    cols_ = rows_ ? init.begin()->size() : 0;
    data_.reserve(rows_ * cols_);
    for (const auto& row : init) {
      if (row.size() != cols_) throw DimensionError("ragged matrix initializer");
      data_.insert(data_.end(), row.begin(), row.end());
    }
  }

  static Matrix identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = T(1);
    return m;
  }
  static Matrix diagonal(const Vec<T>& d) {
    Matrix m(d.size(), d.size());
    for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
    return m;
  }
  static Matrix from_columns(const std::vector<Vec<T>>& cols) {
    if (cols.empty()) return {};
    Matrix m(cols.front().size(), cols.size());
    for (std::size_t j = 0; j < cols.size(); ++j) m.set_column(j, cols[j]);
    return m;
  }
  static Matrix from_rows(const std::vector<Vec<T>>& rows) {
    if (rows.empty()) return {};
    Matrix m(rows.size(), rows.front().size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (rows[i].size() != m.cols_) throw DimensionError("ragged rows");
      for (std::size_t j = 0; j < m.cols_; ++j) m(i, j) = rows[i][j];
    }
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool square() const { return rows_ == cols_; }

  T& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const T& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  Vec<T> column(std::size_t j) const {
    Vec<T> c(rows_);
    for (std::size_t i = 0; i < rows_; ++i) c[i] = (*this)(i, j);
    return c;
  }
  Vec<T> row(std::size_t i) const {
    Vec<T> r(cols_);
    for (std::size_t j = 0; j < cols_; ++j) r[j] = (*this)(i, j);
    return r;
  }
  void set_column(std::size_t j, const Vec<T>& c) {
    if (c.size() != rows_) throw DimensionError("set_column: size mismatch");
    for (std::size_t i = 0; i < rows_; ++i) (*this)(i, j) = c[i];
  }

  Matrix transpose() const {
    Matrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  friend Matrix operator+(Matrix a, const Matrix& b) {
    a.check_same(b);
    for (std::size_t k = 0; k < a.data_.size(); ++k) a.data_[k] += b.data_[k];
    return a;
  }
  friend Matrix operator-(Matrix a, const Matrix& b) {
    a.check_same(b);
    for (std::size_t k = 0; k < a.data_.size(); ++k) a.data_[k] -= b.data_[k];
    return a;
  }
  friend Matrix operator-(Matrix a) {
    for (auto& x : a.data_) x = -x;
    return a;
  }
  friend Matrix operator*(const T& s, Matrix a) {
    for (auto& x : a.data_) x *= s;
    return a;
  }
  friend Matrix operator*(const Matrix& a, const Matrix& b) {
    if (a.cols_ != b.rows_) throw DimensionError("matrix product: inner size mismatch");
    Matrix c(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t k = 0; k < a.cols_; ++k) {
        const T& aik = a(i, k);
        for (std::size_t j = 0; j < b.cols_; ++j) c(i, j) += aik * b(k, j);
      }
    return c;
  }
  friend Vec<T> operator*(const Matrix& a, const Vec<T>& v) {
    if (a.cols_ != v.size()) throw DimensionError("matrix-vector: size mismatch");
    Vec<T> out(a.rows_);
    for (std::size_t i = 0; i < a.rows_; ++i) {
      T s(0);
      for (std::size_t j = 0; j < a.cols_; ++j) s += a(i, j) * v[j];
      out[i] = s;
    }
    return out;
  }
  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

 private:
  void check_same(const Matrix& o) const {
    if (o.rows_ != rows_ || o.cols_ != cols_) throw DimensionError("matrix shape mismatch");
  }
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<T> data_;
};

template <class T>
T max_abs(const Matrix<T>& m) {
  T best(0);
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) {
      T a = magnitude(m(i, j));
      if (a > best) best = a;
    }
  return best;
}

template <class To, class From>
Matrix<To> matrix_cast(const Matrix<From>& m) {
  Matrix<To> out(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) out(i, j) = scalar_cast<To>(m(i, j));
  return out;
}

// uᵀ G v.
template <class T>
T bilinear(const Matrix<T>& gram, const Vec<T>& u, const Vec<T>& v) {
  if (gram.rows() != u.size() || gram.cols() != v.size())
    throw DimensionError("bilinear: size mismatch");
  T s(0);
  for (std::size_t i = 0; i < u.size(); ++i) {
    T row(0);
    for (std::size_t j = 0; j < v.size(); ++j) row += gram(i, j) * v[j];
    s += u[i] * row;
  }
  return s;
}

// Mixed-type helpers: constant data (double or Rational) acting on lifted
// vectors, e.g. a constant Gram matrix against dual-valued vectors.
template <class T, class C>
T bilinear_const(const Matrix<C>& gram, const Vec<T>& u, const Vec<T>& v) {
  if (gram.rows() != u.size() || gram.cols() != v.size())
    throw DimensionError("bilinear: size mismatch");
  T s(0);
  for (std::size_t i = 0; i < u.size(); ++i) {
    T row(0);
    for (std::size_t j = 0; j < v.size(); ++j) {
      if (sign_of(gram(i, j)) != 0) row += T(gram(i, j)) * v[j];
    }
    s += u[i] * row;
  }
  return s;
}

template <class T, class C>
Vec<T> apply_const(const Matrix<C>& m, const Vec<T>& v) {
  if (m.cols() != v.size()) throw DimensionError("matrix-vector: size mismatch");
  Vec<T> out(m.rows());
  for (std::size_t i = 0; i < m.rows(); ++i) {
    T s(0);
    for (std::size_t j = 0; j < m.cols(); ++j) {
      if (sign_of(m(i, j)) != 0) s += T(m(i, j)) * v[j];
    }
    out[i] = s;
  }
  return out;
}

template <class T>
std::string describe_shape(const Matrix<T>& m) {
  return std::to_string(m.rows()) + "x" + std::to_string(m.cols());
}

}  // namespace norden
