#include "norden/ambient/ambient.hpp"

#include <algorithm>

namespace norden {

namespace {

template <class B>
B max_of(const B& a, const B& b) {
  return a > b ? a : b;
}

}  // namespace

template <class B>
void ambient_checks(const Ambient<B>& m, const Tolerances& tol, bool expect_kaehler, Report& out) {
  const std::string suite = "ambient";
  const double t = tol.algebraic;

  auto nr = norden_residuals(m);
  Residual<B> norden;
  norden.observe(nr.j_square);
  norden.observe(nr.anti_isometry);
  out.add(residual_check("ambient.norden", suite, norden, t, 1, "J^2 = -I and g(JX,JY) = -g(X,Y) on the frame"));

  Residual<B> assoc;
  Matrix<B> gt = associated_gram(m);
  assoc.observe(symmetry_residual(gt));
  Ambient<B> tilde = with_gram(m, gt);
  auto nt = norden_residuals(tilde);
  assoc.observe(nt.j_square);
  assoc.observe(nt.anti_isometry);
  Matrix<B> twice = m.J.transpose() * gt + m.gram;
  assoc.observe(max_abs(twice));
  out.add(residual_check("ambient.associated_metric", suite, assoc, t, 1,
                         "associated metric symmetric, Norden, and twice-associated equals -g"));

  Connection<B> conn = levi_civita(m);
  Residual<B> lc;
  lc.observe(torsion_residual(m, conn));
  lc.observe(metric_compatibility_residual(m, conn));
  out.add(residual_check("ambient.levi_civita", suite, lc, t, 1,
                         conn.flat ? "flat: all coefficients vanish" : "torsion-free and metric"));

  if (m.has_brackets()) {
    Residual<B> jac;
    jac.observe(jacobi_residual(m));
    out.add(residual_check("ambient.jacobi", suite, jac, t, 1, "antisymmetry and Jacobi identity of brackets"));
  }

  Residual<B> fsym;
  for (std::size_t i = 0; i < m.dim; ++i)
    for (std::size_t j = 0; j < m.dim; ++j)
      for (std::size_t k = 0; k < m.dim; ++k)
        fsym.observe(B(fundamental_F(m, conn, i, j, k) - fundamental_F(m, conn, i, k, j)));
  out.add(residual_check("ambient.fundamental_tensor_symmetry", suite, fsym, t, 1, "F(X,Y,Z) = F(X,Z,Y)"));

  auto kv = kaehler_check(m, t);
  Residual<B> kr;
  kr.observe(kv.f_max);
  kr.observe(kv.phi_max);
  Check kc = residual_check("ambient.kaehler", suite, kr, t, 1,
                            std::string(kv.kaehler ? "Kaehler" : "not Kaehler") + ": max|F| = " +
                                format_scalar(kv.f_max) + ", max|Phi| = " + format_scalar(kv.phi_max));
  if (!expect_kaehler) kc.status = Status::Info;
  out.add(kc);

  Check nj;
  nj.id = "ambient.nijenhuis";
  nj.suite = suite;
  nj.exact = is_exact_v<B>;
  nj.tolerance = nj.exact ? 0.0 : t;
  B nmax = nijenhuis_max(m);
  nj.residual = format_scalar(nmax);
  nj.points = 1;
  nj.status = Status::Info;
  nj.note = is_negligible(nmax, t) ? "J is integrable" : "J is not integrable";
  out.add(nj);
}

template void ambient_checks<double>(const Ambient<double>&, const Tolerances&, bool, Report&);
template void ambient_checks<Rational>(const Ambient<Rational>&, const Tolerances&, bool, Report&);

}  // namespace norden
