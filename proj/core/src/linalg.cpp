#include "norden/numkit/linalg.hpp"

#include <Eigen/Dense>

namespace norden {

SignatureResult signature(const Matrix<Rational>& form) {
  require_symmetric(form, 0.0);
  const std::size_t n = form.rows();
  Matrix<Rational> a = form;
  SignatureResult out;

  auto swap_index = [&](std::size_t i, std::size_t j) {
    if (i == j) return;
    for (std::size_t k = 0; k < n; ++k) std::swap(a(i, k), a(j, k));
    for (std::size_t k = 0; k < n; ++k) std::swap(a(k, i), a(k, j));
  };

  for (std::size_t k = 0; k < n; ++k) {
    std::size_t pivot = n;
    for (std::size_t i = k; i < n; ++i)
      if (sgn(a(i, i)) != 0) {
        pivot = i;
        break;
      }
    if (pivot == n) {
      // No usable diagonal entry: fold an off-diagonal pair e_i + e_j into e_i.
      std::size_t pi = n, pj = n;
      for (std::size_t i = k; i < n && pi == n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
          if (sgn(a(i, j)) != 0) {
            pi = i;
            pj = j;
            break;
          }
      if (pi == n) {
        out.null += n - k;
        break;
      }
      for (std::size_t c = 0; c < n; ++c) a(pi, c) += a(pj, c);
      for (std::size_t r = 0; r < n; ++r) a(r, pi) += a(r, pj);
      pivot = pi;
    }
    swap_index(k, pivot);
    const Rational d = a(k, k);
    for (std::size_t r = k + 1; r < n; ++r) {
      if (sgn(a(r, k)) == 0) continue;
      Rational f = a(r, k) / d;
      for (std::size_t c = 0; c < n; ++c) a(r, c) -= f * a(k, c);
      for (std::size_t c = 0; c < n; ++c) a(c, r) -= f * a(c, k);
    }
    if (sgn(d) > 0)
      ++out.plus;
    else
      ++out.minus;
  }
  return out;
}

SignatureResult signature(const Matrix<double>& form, double tol) {
  if (!(tol > 0.0)) throw ParameterError("signature: tolerance must be positive in float mode");
  require_symmetric(form, 1e-12);
  const auto n = static_cast<Eigen::Index>(form.rows());
  Eigen::MatrixXd m(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j)
      m(i, j) = form(static_cast<std::size_t>(i), static_cast<std::size_t>(j));
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(m, Eigen::EigenvaluesOnly);
  SignatureResult out;
  for (Eigen::Index i = 0; i < n; ++i) {
    double ev = es.eigenvalues()(i);
    if (ev > tol)
      ++out.plus;
    else if (ev < -tol)
      ++out.minus;
    else
      ++out.null;
  }
  return out;
}

}  // namespace norden
