#pragma once

// Radical transversal lightlike hypersurfaces: detection, the holomorphic
// screen equivalence, CR conditions, the Kaehler identities of the induced
// objects, screen uniqueness, and the geodesic/umbilical classification.

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "norden/check.hpp"
#include "norden/hypersurface/induced.hpp"

namespace norden {

// J̄ξ = ξ_1 + aξ + bN and the holomorphy residuals of the screen.
template <class S>
struct RtlDecomposition {
  Vec<S> xi1;        // screen coefficients of J̄ξ
  S a = S(0);
  S b = S(0);
  S decomposition;   // max |J̄ξ - (ξ_1 + aξ + bN)|
  S holomorphy;      // max over i of |g(J̄W_i, ξ)|, |g(J̄W_i, N)|
  bool is_rtl = false;
  bool holomorphic = false;
};

template <class B, class S>
RtlDecomposition<S> detect_rtl(const Context<B>& ctx, const Frame<S>& f, double tol) {
  FrameCoords<B, S> fc{ctx, f};
  RtlDecomposition<S> r;
  Vec<S> jxi = apply_J(ctx, f.xi);
  r.xi1 = fc.screen(jxi);
  r.a = fc.xi_coef(jxi);
  r.b = fc.n_coef(jxi);
  r.decomposition = max_abs(Vec<S>(jxi - fc.from_screen(r.xi1) - f.xi * r.a - f.N * r.b));
  r.holomorphy = S(0);
  for (const auto& w : f.W) {
    Vec<S> jw = apply_J(ctx, w);
    S p = magnitude(fc.n_coef(jw));
    S q = magnitude(fc.xi_coef(jw));
    if (p > r.holomorphy) r.holomorphy = p;
    if (q > r.holomorphy) r.holomorphy = q;
  }
  r.is_rtl = is_negligible(max_abs(r.xi1), tol) && is_negligible(r.a, tol) && !is_negligible(r.b, tol);
  r.holomorphic = is_negligible(r.holomorphy, tol);
  return r;
}

// Hypotheses shared by the Kaehler-side suites.
struct Hypotheses {
  bool kaehler = false;
  bool rtl = false;
  bool complex = false;  // ambient Nijenhuis tensor vanishes
  std::string reason;    // why the Kaehler + RTL hypothesis fails, empty if it holds
  bool holds() const { return kaehler && rtl; }
};

template <class B>
Hypotheses hypotheses(const Context<B>& ctx, const std::vector<Vec<B>>& points, const Tolerances& tol);

// Second quasi-orthonormal frame {ξ, N', W'_i} compared with a first one
// through the screen change relations.
template <class S>
struct ScreenComparison {
  Vec<S> f;            // solved from g(W'_i, N) = -Σ_j W^j_i ε_j f_j
  Vec<S> f_cross;      // f_k = ε_k g(N', W_k)
  Matrix<S> wmat;      // W^k_i = ε_k g(W'_i, W_k) (unnormalized screens: scaled columns)
  S f_max = S(0);
  S n_diff = S(0);     // max |N' - N|
  S semi_orth = S(0);  // semi-orthogonality residual
  S reconstruction = S(0);  // transform of the first frame versus the second
  bool second_holomorphic = false;
};

// W2 is a g-orthogonal basis of the second screen, not necessarily unit; its
// squared lengths are q_i.  The first frame must be quasi-orthonormal.
template <class B, class S>
ScreenComparison<S> compare_screens(const Context<B>& ctx, const Frame<S>& first, const std::vector<Vec<S>>& W2,
                                    double tol);

// Holomorphic screen candidates: random bases of ker[dF; dF∘J] at x made
// g-orthogonal (unit in float mode), ordered to match the signs of eps.
template <class B>
std::vector<Vec<B>> random_holomorphic_screen(const Context<B>& ctx, const Vec<B>& x, const std::vector<int>& eps,
                                              std::uint64_t seed, double tol);

struct SuiteOptions {
  Tolerances tol;
  std::uint64_t seed = 42;
  std::size_t uniqueness_trials = 10;
};

template <class B>
void rtl_suite(const Context<B>& ctx, const std::vector<Vec<B>>& points, const SuiteOptions& o, Report& out);
template <class B>
void kaehler_identities_suite(const Context<B>& ctx, const std::vector<Vec<B>>& points, const SuiteOptions& o,
                              Report& out);
template <class B>
void uniqueness_suite(const Context<B>& ctx, const std::vector<Vec<B>>& points, const SuiteOptions& o, Report& out);
template <class B>
void selfconjugacy_suite(const Context<B>& ctx, const std::vector<Vec<B>>& points, const SuiteOptions& o,
                         Report& out);
template <class B>
void integrability_suite(const Context<B>& ctx, const std::vector<Vec<B>>& points, const SuiteOptions& o,
                         Report& out);
template <class B>
void geodesic_umbilical_suite(const Context<B>& ctx, const std::vector<Vec<B>>& points, const SuiteOptions& o,
                              Report& out);
template <class B>
void ricci_suite(const Context<B>& ctx, const std::vector<Vec<B>>& points, const SuiteOptions& o, Report& out);

// Per-point umbilical data: A*_ξ(PX) = ρPX and A_N X = kPX.
template <class S>
struct UmbilicalData {
  S rho = S(0), rho_residual = S(0);   // from A*_ξ W_i = ρ W_i
  S rho_j = S(0), rho_j_residual = S(0);  // from A_N W_i = (ρ/b) J̄W_i
  S k = S(0), k_residual = S(0);       // from A_N W_i = k W_i
  S k_j = S(0), k_j_residual = S(0);   // from A*_ξ W_i = -bk J̄W_i
};

template <class B, class S>
UmbilicalData<S> umbilical_data(const Context<B>& ctx, const Frame<S>& f, const InducedObjects<S>& io);

// Ricci tensor of the induced connection in the tangent frame and dτ.
template <class S>
struct RicciData {
  Matrix<S> ric;
  Matrix<S> dtau;
};

template <class B>
RicciData<B> induced_ricci(const Context<B>& ctx, const Vec<B>& x);

#define NORDEN_RTL_EXTERN(B)                                                                                      \
  extern template Hypotheses hypotheses<B>(const Context<B>&, const std::vector<Vec<B>>&, const Tolerances&);     \
  extern template ScreenComparison<B> compare_screens<B, B>(const Context<B>&, const Frame<B>&,                   \
                                                            const std::vector<Vec<B>>&, double);                  \
  extern template std::vector<Vec<B>> random_holomorphic_screen<B>(const Context<B>&, const Vec<B>&,              \
                                                                   const std::vector<int>&, std::uint64_t, double); \
  extern template void rtl_suite<B>(const Context<B>&, const std::vector<Vec<B>>&, const SuiteOptions&, Report&); \
  extern template void kaehler_identities_suite<B>(const Context<B>&, const std::vector<Vec<B>>&,                 \
                                                   const SuiteOptions&, Report&);                                 \
  extern template void uniqueness_suite<B>(const Context<B>&, const std::vector<Vec<B>>&, const SuiteOptions&,    \
                                           Report&);                                                              \
  extern template void selfconjugacy_suite<B>(const Context<B>&, const std::vector<Vec<B>>&, const SuiteOptions&, \
                                              Report&);                                                           \
  extern template void integrability_suite<B>(const Context<B>&, const std::vector<Vec<B>>&, const SuiteOptions&, \
                                              Report&);                                                           \
  extern template void geodesic_umbilical_suite<B>(const Context<B>&, const std::vector<Vec<B>>&,                 \
                                                   const SuiteOptions&, Report&);                                 \
  extern template void ricci_suite<B>(const Context<B>&, const std::vector<Vec<B>>&, const SuiteOptions&, Report&); \
  extern template UmbilicalData<B> umbilical_data<B, B>(const Context<B>&, const Frame<B>&,                       \
                                                        const InducedObjects<B>&);                                \
  extern template RicciData<B> induced_ricci<B>(const Context<B>&, const Vec<B>&);

NORDEN_RTL_EXTERN(double)
NORDEN_RTL_EXTERN(Rational)
#undef NORDEN_RTL_EXTERN

}  // namespace norden
