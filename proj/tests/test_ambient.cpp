#include <doctest.h>

#include "norden/ambient/ambient.hpp"
#include "norden/scenarios/scenarios.hpp"

using namespace norden;

namespace {

Rational q(long n, long d = 1) {
  Rational r(n, d);
  r.canonicalize();
  return r;
}

Vec<Rational> e(std::size_t k) { return basis_vector<Rational>(4, k); }

}  // namespace

TEST_CASE("split R^4 ambient: Norden pair and associated metric") {
  Scene<double> s = build_example_61(1);
  const Ambient<double>& m = s.ambient;
  auto nr = norden_residuals(m);
  CHECK(nr.j_square == 0.0);
  CHECK(nr.anti_isometry == 0.0);
  // g~(du_i, dv_i) = g(J du_i, dv_i) = g(dv_i, dv_i) = 1.
  Matrix<double> expected{{0, 0, 1, 0}, {0, 0, 0, 1}, {1, 0, 0, 0}, {0, 1, 0, 0}};
  CHECK(associated_gram(m) == expected);
  Ambient<double> tilde = associated_metric(m, 1e-12);
  CHECK(norden_residuals(tilde).anti_isometry == 0.0);
  CHECK(kaehler_check(m, 1e-12).kaehler);
  CHECK(nijenhuis_max(m) == 0.0);
  CHECK(levi_civita(m).flat);
}

TEST_CASE("gl(2,R): structure constants from matrix commutators") {
  Scene<Rational> s = build_example_62();
  const Ambient<Rational>& m = s.ambient;
  // X1 = E11, X2 = E12, X3 = E21, X4 = E22.
  CHECK(m.bracket(1, 2) == Vec<Rational>{q(1), q(0), q(0), q(-1)});
  CHECK(m.bracket(0, 1) == e(1));
  CHECK(m.bracket(0, 2) == Vec<Rational>(-e(2)));
  CHECK(m.bracket(1, 3) == e(1));
  CHECK(m.bracket(2, 3) == Vec<Rational>(-e(2)));
  CHECK(m.bracket(0, 3) == Vec<Rational>(4));
  CHECK(jacobi_residual(m) == 0);
}

TEST_CASE("gl(2,R): Levi-Civita connection") {
  Scene<Rational> s = build_example_62();
  const Ambient<Rational>& m = s.ambient;
  Connection<Rational> conn = levi_civita(m);
  CHECK_FALSE(conn.flat);
  // By hand from Koszul: nabla_{X2} X2 = -X1 - X4 and nabla_{X1} X1 = 0.
  Vec<Rational> n22(4), n11(4);
  for (std::size_t k = 0; k < 4; ++k) {
    n22[k] = conn(k, 1, 1);
    n11[k] = conn(k, 0, 0);
  }
  CHECK(n22 == Vec<Rational>{q(-1), q(0), q(0), q(-1)});
  CHECK(n11 == Vec<Rational>(4));
  // Torsion-free and metric characterize the connection.
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j) {
      Vec<Rational> t = connection_apply(conn, e(i), e(j)) - connection_apply(conn, e(j), e(i)) - m.bracket(i, j);
      CHECK(max_abs(t) == 0);
      for (std::size_t k = 0; k < 4; ++k) {
        Rational c = bilinear(m.gram, connection_apply(conn, e(i), e(j)), e(k)) +
                     bilinear(m.gram, e(j), connection_apply(conn, e(i), e(k)));
        CHECK(c == 0);
      }
    }
  CHECK(torsion_residual(m, conn) == 0);
  CHECK(metric_compatibility_residual(m, conn) == 0);
}

TEST_CASE("gl(2,R): Norden pair, associated Gram and non-Kaehler verdict") {
  Scene<Rational> s = build_example_62();
  const Ambient<Rational>& m = s.ambient;
  CHECK(norden_residuals(m).j_square == 0);
  CHECK(norden_residuals(m).anti_isometry == 0);
  // g~(X1, X4) = g(X4, X4) = 1, g~(X2, X3) = g(X3, X3) = -1.
  Matrix<Rational> expected{{q(0), q(0), q(0), q(1)}, {q(0), q(0), q(-1), q(0)}, {q(0), q(-1), q(0), q(0)},
                            {q(1), q(0), q(0), q(0)}};
  CHECK(associated_gram(m) == expected);
  auto kv = kaehler_check(m, 0.0);
  CHECK_FALSE(kv.kaehler);
  CHECK(kv.f_max > 0);
  CHECK(nijenhuis_max(m) > 0);
}

TEST_CASE("fundamental tensor is symmetric in its last two slots") {
  Scene<Rational> s = build_example_62();
  Connection<Rational> conn = levi_civita(s.ambient);
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j)
      for (std::size_t k = 0; k < 4; ++k)
        CHECK(fundamental_F(s.ambient, conn, i, j, k) == fundamental_F(s.ambient, conn, i, k, j));
}

TEST_CASE("Hermitian control ambient") {
  Scene<Rational> s = control_hermitian();
  auto hr = hermitian_residuals(s.ambient);
  CHECK(hr.j_square == 0);
  CHECK(hr.anti_isometry == 0);
  CHECK(norden_residuals(s.ambient).anti_isometry > 0);
}

TEST_CASE("ambient report on both builtin ambients") {
  Report r1, r2;
  Scene<double> a = build_example_61(2);
  ambient_checks(a.ambient, Tolerances{}, true, r1);
  CHECK_FALSE(r1.failed());
  Scene<Rational> b = build_example_62();
  ambient_checks(b.ambient, Tolerances{}, false, r2);
  CHECK_FALSE(r2.failed());
  REQUIRE(r2.find("ambient.kaehler") != nullptr);
  CHECK(r2.find("ambient.kaehler")->status == Status::Info);
}

TEST_CASE("lie_from_matrices rejects a basis that does not close") {
  Matrix<Rational> a{{q(0), q(1)}, {q(0), q(0)}};
  Matrix<Rational> b{{q(0), q(0)}, {q(1), q(0)}};
  Matrix<Rational> g = Matrix<Rational>::identity(2);
  Matrix<Rational> j{{q(0), q(-1)}, {q(1), q(0)}};
  CHECK_THROWS_AS(lie_from_matrices<Rational>("bad", {a, b}, g, j), StructuralError);
}
