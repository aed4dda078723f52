#pragma once

// Non-degenerate hypersurfaces with an isotropic normal (g(N,N) = ±1,
// g(N,JN) = 0) and the radical transversal lightlike hypersurface they give
// under the associated metric: the correspondence, the almost contact
// B-metric structure, its class, and the relations between induced objects.
//
// Unit normals need square roots, so everything here runs in float mode.

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "norden/check.hpp"
#include "norden/hypersurface/induced.hpp"
#include "norden/rtl/rtl.hpp"
#include "norden/scenarios/scenarios.hpp"

namespace norden {

// One hypersurface seen through both metrics of the Norden pair.
struct DualPair {
  Context<double> bar;    // g: non-degenerate side
  Context<double> tilde;  // associated metric: lightlike side
};

DualPair dual_pair(const Scene<double>& s);

struct IsotropicNormal {
  Vec<double> n;     // unit normal for g, oriented along G^{-1} dF
  int eps = 0;       // g(N,N)
  double j_residual = 0.0;  // |g(N, JN)|
  bool holds = false;
};

// Throws PreconditionError when the normal is null for g.
IsotropicNormal isotropic_normal(const Context<double>& bar, const Vec<double>& x, double tol);

// φ = J + g(·,JN)N, ξ̄ = -JN, η̄ = -g(·,JN) at x.  Only ε = -1 is supported.
struct AlmostContact {
  Matrix<double> phi;
  Vec<double> xi_bar;
  Vec<double> eta_bar;  // covector: η̄(X) = eta_bar · X
  Vec<double> n_bar;
  int eps = 0;

  Vec<double> apply_phi(const Vec<double>& v) const { return phi * v; }
  double eta(const Vec<double>& v) const { return dot(eta_bar, v); }
};

AlmostContact build_almost_contact(const Context<double>& bar, const Vec<double>& x, double tol);

// A X = -∇̄_X N for a tangent vector X at x, through a dual-number derivative
// of the unit normal field.
Vec<double> shape_apply(const Context<double>& bar, const Vec<double>& x, const Vec<double>& X);

// Residuals of the four shape-operator characterizations at one point.
struct ClassResiduals {
  double theta = 0.0;       // tr A
  double theta_star = 0.0;  // tr(A∘φ)
  double f0 = 0.0;          // max |A X|
  double f4 = 0.0;          // max |A X + θ/(D-2) φ²X|
  double f5 = 0.0;          // max |A X + θ*/(D-2) φX|
  double f456 = 0.0;        // max of |Aξ̄| and |A(φX) - φ(AX)|
};

ClassResiduals class_residuals(const Context<double>& bar, const Vec<double>& x, double tol);

std::string class_label(bool f0, bool f4, bool f5, bool f456);

struct ClassVerdict {
  std::string label;  // smallest class holding at every point
  double theta = 0.0, theta_star = 0.0;  // max |θ|, max |θ*| over the sample
  double f0 = 0.0, f4 = 0.0, f5 = 0.0, f456 = 0.0;
  bool in_f0 = true, in_f4 = true, in_f5 = true, in_f456 = true;
};

ClassVerdict classify_acm(const DualPair& dp, const std::vector<Vec<double>>& points, double tol);

// λ with ξ = (1/λ)JN for the lightlike frame of the tilde side.
template <class S>
S frame_lambda(const DualPair& dp, const Vec<S>& x);

// Why the almost contact suites cannot run on this sample, or nothing.
std::optional<std::string> second_type_obstruction(const DualPair& dp, const std::vector<Vec<double>>& points,
                                                   const Tolerances& tol);

void correspondence_suite(const DualPair& dp, const std::vector<Vec<double>>& points, const SuiteOptions& o,
                          Report& out);
void acm_suite(const DualPair& dp, const std::vector<Vec<double>>& points, const SuiteOptions& o, Report& out);
void relations_suite(const DualPair& dp, const std::vector<Vec<double>>& points, const SuiteOptions& o, Report& out);
void props_suite(const DualPair& dp, const std::vector<Vec<double>>& points, const SuiteOptions& o, Report& out);

}  // namespace norden
