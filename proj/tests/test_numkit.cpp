#include <doctest.h>

#include <cmath>
#include <random>

#include "norden/numkit/dual.hpp"
#include "norden/numkit/errors.hpp"
#include "norden/numkit/linalg.hpp"
#include "norden/numkit/matrix.hpp"
#include "norden/numkit/rational.hpp"
#include "norden/numkit/scalar.hpp"

using namespace norden;

namespace {

Rational q(long n, long d = 1) {
  Rational r(n, d);
  r.canonicalize();
  return r;
}

Matrix<double> random_matrix(std::mt19937_64& rng, std::size_t r, std::size_t c) {
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  Matrix<double> m(r, c);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j) m(i, j) = u(rng);
  return m;
}

}  // namespace

TEST_CASE("rational literals") {
  CHECK(parse_rational("3/4") == q(3, 4));
  CHECK(parse_rational("-6/8") == q(-3, 4));
  CHECK(parse_rational("0.125") == q(1, 8));
  CHECK(parse_rational(" 17 ") == q(17));
  CHECK(parse_rational("-.5") == q(-1, 2));
  CHECK_THROWS_AS(parse_rational("1/0"), ParameterError);
  CHECK_THROWS_AS(parse_rational("abc"), ParameterError);
  CHECK_THROWS_AS(parse_rational(""), ParameterError);
  CHECK(parse_rational("010/03") == q(10, 3));
  CHECK(parse_rational("1.05") == q(21, 20));
  CHECK(to_string(q(10, 4)) == "5/2");
}

TEST_CASE("exact square roots") {
  CHECK(exact_sqrt(q(9, 16)) == q(3, 4));
  CHECK(exact_sqrt(q(0)) == q(0));
  CHECK(is_perfect_square(q(49, 4)));
  CHECK_FALSE(is_perfect_square(q(2)));
  CHECK_FALSE(is_perfect_square(q(-4)));
  CHECK_THROWS_AS(exact_sqrt(q(2)), StructuralError);
}

TEST_CASE("dual numbers differentiate elementary functions") {
  // f(x) = x^2 sin x + exp(x)/cosh(x), f'(x) by hand.
  for (double x : {-1.3, 0.0, 0.4, 2.2}) {
    Dual<double> d = make_variable(x);
    Dual<double> f = d * d * sin(d) + exp(d) / cosh(d);
    double expected = 2 * x * std::sin(x) + x * x * std::cos(x) +
                      (std::exp(x) * std::cosh(x) - std::exp(x) * std::sinh(x)) / (std::cosh(x) * std::cosh(x));
    CHECK(value_of(f) == doctest::Approx(x * x * std::sin(x) + std::exp(x) / std::cosh(x)));
    CHECK(tangent_of(f) == doctest::Approx(expected).epsilon(1e-13));
  }
  Dual<double> r = square_root(make_variable(4.0));
  CHECK(tangent_of(r) == doctest::Approx(0.25));
  Dual<double> l = log(make_variable(2.0, 3.0));
  CHECK(tangent_of(l) == doctest::Approx(1.5));
}

TEST_CASE("dual numbers over rationals are exact") {
  Dual<Rational> x(q(2, 3), q(1));
  Dual<Rational> f = x * x * x / (x + Dual<Rational>(q(1)));
  // d/dx x^3/(x+1) = (2x^3 + 3x^2)/(x+1)^2
  Rational xv = q(2, 3);
  Rational expected = (2 * xv * xv * xv + 3 * xv * xv) / ((xv + 1) * (xv + 1));
  CHECK(f.d == expected);
}

TEST_CASE("format_scalar round trips doubles and prints rationals") {
  CHECK(format_scalar(0.0) == "0");
  for (double x : {1.0 / 3.0, -2.5e-17, 6.02214076e23}) CHECK(std::stod(format_scalar(x)) == x);
  CHECK(format_scalar(q(-7, 3)) == "-7/3");
}

TEST_CASE("exact inverse and solve") {
  Matrix<Rational> a = Matrix<Rational>::from_rows({Vec<Rational>{q(2), q(1), q(0)}, Vec<Rational>{q(1), q(3), q(1)},
                                                    Vec<Rational>{q(0), q(1), q(4)}});
  Matrix<Rational> inv = inverse(a);
  CHECK(max_abs(Matrix<Rational>(a * inv - Matrix<Rational>::identity(3))) == 0);
  // det = 18, adjugate entry (0,0) = 11
  CHECK(inv(0, 0) == q(11, 18));
  Vec<Rational> b{q(1), q(2), q(3)};
  Vec<Rational> x = solve(a, b);
  CHECK(max_abs(Vec<Rational>(a * x - b)) == 0);
  Matrix<Rational> singular = Matrix<Rational>::from_rows({Vec<Rational>{q(1), q(2)}, Vec<Rational>{q(2), q(4)}});
  CHECK_THROWS(inverse(singular));
}

TEST_CASE("property: float inverse is a two-sided inverse") {
  std::mt19937_64 rng(7);
  for (int t = 0; t < 50; ++t) {
    Matrix<double> a = random_matrix(rng, 5, 5) + 4.0 * Matrix<double>::identity(5);
    Matrix<double> inv = inverse(a);
    CHECK(max_abs(Matrix<double>(a * inv - Matrix<double>::identity(5))) < 1e-12);
    CHECK(max_abs(Matrix<double>(inv * a - Matrix<double>::identity(5))) < 1e-12);
  }
}

TEST_CASE("null space of a rank-deficient matrix") {
  Matrix<Rational> a = Matrix<Rational>::from_rows(
      {Vec<Rational>{q(1), q(2), q(3), q(4)}, Vec<Rational>{q(2), q(4), q(6), q(8)}, Vec<Rational>{q(0), q(1), q(1), q(0)}});
  auto ns = null_space(a, 0.0);
  REQUIRE(ns.size() == 2);
  for (const auto& v : ns) CHECK(max_abs(Vec<Rational>(a * v)) == 0);
}

TEST_CASE("signatures of indefinite forms") {
  Matrix<Rational> split = Matrix<Rational>::diagonal(Vec<Rational>{q(-1), q(1), q(-1), q(1)});
  CHECK(signature(split) == SignatureResult{2, 2, 0});
  Matrix<Rational> hyperbolic =
      Matrix<Rational>::from_rows({Vec<Rational>{q(0), q(1), q(0)}, Vec<Rational>{q(1), q(0), q(0)},
                                   Vec<Rational>{q(0), q(0), q(0)}});
  CHECK(signature(hyperbolic) == SignatureResult{1, 1, 1});
  auto rad = radical_basis(hyperbolic, 0.0);
  REQUIRE(rad.size() == 1);
  CHECK(rad[0][2] == 1);
  CHECK(signature(matrix_cast<double>(hyperbolic), 1e-12) == SignatureResult{1, 1, 1});
}

TEST_CASE("property: signature is invariant under congruence") {
  std::mt19937_64 rng(11);
  Matrix<double> d = Matrix<double>::diagonal(Vec<double>{-3.0, -0.5, 0.0, 2.0, 1.0});
  for (int t = 0; t < 30; ++t) {
    Matrix<double> p = random_matrix(rng, 5, 5) + 5.0 * Matrix<double>::identity(5);
    Matrix<double> c = p.transpose() * d * p;
    CHECK(signature(c, 1e-9) == SignatureResult{2, 2, 1});
  }
}

TEST_CASE("semi-orthogonality") {
  std::vector<int> eps{-1, 1};
  // Boost with cosh^2 - sinh^2 = 1 at rationals: (5/4, 3/4).
  Matrix<Rational> boost = Matrix<Rational>::from_rows({Vec<Rational>{q(5, 4), q(3, 4)}, Vec<Rational>{q(3, 4), q(5, 4)}});
  CHECK(semi_orthogonal_check(boost, eps) == 0);
  CHECK(semi_orthogonal_check(boost, std::vector<int>{1, 1}) > 0);
  CHECK_THROWS_AS(semi_orthogonal_check(boost, std::vector<int>{1}), DimensionError);
}

TEST_CASE("Gram-Schmidt handles a basis of null vectors") {
  Matrix<Rational> g = Matrix<Rational>::diagonal(Vec<Rational>{q(-1), q(1)});
  std::vector<Vec<Rational>> cand{Vec<Rational>{q(1), q(1)}, Vec<Rational>{q(1), q(-1)}};
  auto on = indefinite_gram_schmidt(g, cand, 2, 1e-12);
  REQUIRE(on.vectors.size() == 2);
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 2; ++j) {
      Rational gij = bilinear(g, on.vectors[i], on.vectors[j]);
      CHECK(gij == (i == j ? Rational(on.signs[i]) : Rational(0)));
    }
}

TEST_CASE("property: Gram-Schmidt over random indefinite candidates") {
  std::mt19937_64 rng(3);
  Matrix<double> g = Matrix<double>::diagonal(Vec<double>{-1.0, -1.0, 1.0, 1.0, 1.0});
  for (int t = 0; t < 40; ++t) {
    Matrix<double> c = random_matrix(rng, 5, 5);
    std::vector<Vec<double>> cand;
    for (std::size_t k = 0; k < 5; ++k) cand.push_back(c.column(k));
    auto on = indefinite_gram_schmidt(g, cand, 5, 1e-10);
    int minus = 0;
    for (std::size_t i = 0; i < 5; ++i) {
      minus += on.signs[i] < 0;
      for (std::size_t j = 0; j < 5; ++j)
        CHECK(std::fabs(bilinear(g, on.vectors[i], on.vectors[j]) - (i == j ? on.signs[i] : 0)) < 1e-10);
    }
    CHECK(minus == 2);
  }
}
