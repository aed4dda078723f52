// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any FAIL.

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <string>
#include <vector>

#include "norden/cli/runner.hpp"
#include "norden/dualmetric/dualmetric.hpp"
#include "norden/rtl/rtl.hpp"
#include "norden/scenarios/scenarios.hpp"

using namespace norden;
using nlohmann::json;

namespace {

struct Outcome {
  bool ok = true;
  std::string detail;
  void require(bool cond, const std::string& what) {
    if (!cond && ok) {
      ok = false;
      detail = what;
    }
  }
};

Rational q(long n, long d = 1) {
  Rational r(n, d);
  r.canonicalize();
  return r;
}

RunResult run(const json& manifest) { return run_manifest(parse_manifest(manifest)); }

json example_61(std::vector<std::string> suites, std::size_t n = 1) {
  return json{{"scene", "example_61"}, {"n", n}, {"points", 100}, {"seed", 42}, {"suites", suites}};
}

// Every check of `suite` passed, at least `min_checks` of them, and none
// was looser than `tol`.
void suite_passes(Outcome& o, const RunResult& r, const std::string& suite, std::size_t min_checks, double tol) {
  std::size_t seen = 0;
  for (const auto& c : r.report.checks()) {
    if (c.suite != suite || c.status == Status::Info) continue;
    ++seen;
    o.require(c.status == Status::Pass, c.id + " is " + to_string(c.status) + " (" + c.residual + ")");
    o.require(c.exact || c.tolerance <= tol, c.id + " tolerance above " + format_scalar(tol));
  }
  o.require(seen >= min_checks, suite + ": only " + std::to_string(seen) + " checks");
}

void check_passes(Outcome& o, const RunResult& r, const std::string& id, double tol) {
  const Check* c = r.report.find(id);
  o.require(c != nullptr, id + " missing");
  if (!c) return;
  o.require(c->status == Status::Pass, id + " is " + to_string(c->status) + " (" + c->residual + ")");
  o.require(c->exact || c->tolerance <= tol, id + " tolerance above " + format_scalar(tol));
}

Outcome criterion_1() {
  Outcome o;
  Scene<Rational> s = build_example_62();
  auto ctx = lightlike_context(s);
  Frame<Rational> f = build_frame(ctx, Vec<Rational>(4));
  Vec<Rational> x1_minus_x4{q(1), q(0), q(0), q(-1)};
  o.require(f.xi == x1_minus_x4, "radical is not X1 - X4");
  o.require(f.N == Vec<Rational>{q(-1, 2), q(0), q(0), q(-1, 2)}, "N is not -(X1 + X4)/2");
  o.require(apply_J(ctx, f.xi) == Vec<Rational>(f.N * q(-2)), "J xi != -2N");
  auto g = [&](const Vec<Rational>& u, const Vec<Rational>& v) { return view_g(ctx, u, v); };
  o.require(g(f.xi, f.xi) == 0 && g(f.N, f.N) == 0 && g(f.xi, f.N) == 1, "xi, N not quasi-orthonormal");
  for (std::size_t i = 0; i < f.W.size(); ++i) {
    o.require(g(f.W[i], f.xi) == 0 && g(f.W[i], f.N) == 0, "screen not orthogonal to xi, N");
    o.require(f.W[i][0] == 0 && f.W[i][3] == 0, "screen leaves span{X2, X3}");
    for (std::size_t j = 0; j < f.W.size(); ++j)
      o.require(g(f.W[i], f.W[j]) == (i == j ? f.eps[i] : 0), "screen not orthonormal");
  }
  auto d = detect_rtl(ctx, f, 0.0);
  o.require(d.b == -2, "b != -2");
  o.require(d.holomorphic, "screen not holomorphic");
  o.require(d.is_rtl, "detect_rtl false");
  RunResult r = run({{"scene", "example_62"}, {"suites", {"frame", "example"}}});
  suite_passes(o, r, "frame", 10, 0.0);
  suite_passes(o, r, "example", 5, 0.0);
  return o;
}

Outcome criterion_2() {
  Outcome o;
  {
    Scene<Rational> s = build_example_62();
    auto ctx = lightlike_context(s);
    auto d = detect_rtl(ctx, build_frame(ctx, Vec<Rational>(4)), 0.0);
    o.require(d.is_rtl && d.holomorphic, "sl(2,R): verdicts differ or fail");
  }
  {
    Scene<double> s = build_example_61(1);
    o.require(s.surface.view == MetricView::Tilde, "isotropic quadric not in the associated view");
    auto ctx = lightlike_context(s);
    SamplerConfig cfg;
    cfg.count = 100;
    cfg.seed = 42;
    std::size_t agree = 0;
    for (const auto& x : sample_points(s, cfg)) {
      auto d = detect_rtl(ctx, build_frame(ctx, x), 1e-9);
      agree += d.is_rtl && d.holomorphic;
    }
    o.require(agree == 100, "isotropic quadric: " + std::to_string(agree) + " of 100 points with both verdicts");
  }
  {
    Scene<Rational> s = control_non_holomorphic_screen();
    auto ctx = lightlike_context(s);
    auto d = detect_rtl(ctx, build_frame(ctx, Vec<Rational>(4)), 0.0);
    o.require(!d.is_rtl && !d.holomorphic, "non-holomorphic control passes a side");
  }
  check_passes(o, run(example_61({"rtl"})), "rtl.equivalence", 0.0);
  return o;
}

Outcome criterion_3() {
  Outcome o;
  suite_passes(o, run(example_61({"kaehler_identities"})), "kaehler_identities", 10, 1e-9);
  return o;
}

Outcome criterion_4() {
  Outcome o;
  const std::vector<std::string> ids = {"uniqueness.f_vanishes", "uniqueness.transversal_unique",
                                        "uniqueness.semi_orthogonal", "uniqueness.second_screen_holomorphic"};
  json a = example_61({"uniqueness"});
  a["uniqueness_trials"] = 10;
  json b = {{"scene", "example_62"}, {"suites", {"uniqueness"}}, {"uniqueness_trials", 10}};
  for (const json& m : {a, b}) {
    RunResult r = run(m);
    for (const auto& id : ids) check_passes(o, r, id, 1e-9);
    suite_passes(o, r, "uniqueness", ids.size(), 1e-9);
  }
  return o;
}

Outcome criterion_5() {
  Outcome o;
  RunResult r = run(example_61({"ricci"}));
  check_passes(o, r, "ricci.symmetry", 1e-8);
  check_passes(o, r, "ricci.dtau", 1e-9);
  const Check* c = r.report.find("ricci.symmetry");
  o.require(c && c->points == 100, "ricci.symmetry not on 100 points");
  return o;
}

Outcome criterion_6() {
  Outcome o;
  RunResult r = run(example_61({"correspondence"}));
  for (const char* id : {"correspondence.forward_frame", "correspondence.forward_rtl", "correspondence.backward_unit",
                         "correspondence.backward_isotropic", "correspondence.decomposition"})
    check_passes(o, r, id, 1e-9);
  suite_passes(o, r, "correspondence", 8, 1e-9);
  return o;
}

Outcome criterion_7() {
  Outcome o;
  RunResult r = run(example_61({"relations"}));
  check_passes(o, r, "relations.shape", 1e-9);
  check_passes(o, r, "relations.levi_civita_coincide", 1e-9);
  suite_passes(o, r, "relations", 10, 1e-9);
  return o;
}

Outcome criterion_8() {
  Outcome o;
  RunResult r = run(example_61({"acm_class", "props"}));
  const Check* cls = r.report.find("acm_class.class");
  o.require(cls && cls->residual == "F_5", "class is " + (cls ? cls->residual : std::string("missing")));
  for (const char* id : {"props.umbilical_vs_f5", "props.screen_umbilical_vs_f4", "props.class_f456_vs_contact_integrable",
                         "props.contact_vs_screen_integrable", "props.geodesic_vs_f0", "props.lightlike_geodesic_vs_f0"})
    check_passes(o, r, id, 1e-9);
  suite_passes(o, r, "props", 7, 1e-9);
  Scene<double> s = build_example_61(1);
  SamplerConfig cfg;
  cfg.count = 100;
  cfg.seed = 42;
  auto v = classify_acm(dual_pair(s), sample_points(s, cfg), 1e-9);
  o.require(v.in_f5 && v.f5 <= 1e-9, "F_5 residual " + format_scalar(v.f5));
  Scene<double> flat = control_flat_hyperplane();
  cfg.count = 20;
  auto vf = classify_acm(dual_pair(flat), sample_points(flat, cfg), 1e-9);
  o.require(vf.label == "F_0", "flat control classified " + vf.label);
  return o;
}

Outcome criterion_9() {
  Outcome o;
  Scene<Rational> s = control_hermitian();
  auto ctx = lightlike_context(s);
  SamplerConfig cfg;
  cfg.count = 100;
  cfg.seed = 42;
  for (const auto& x : sample_points(s, cfg)) {
    auto d = detect_rtl(ctx, build_frame(ctx, x), 0.0);
    o.require(d.b == 0, "b = " + format_scalar(d.b) + " at a sampled point");
    o.require(!d.is_rtl, "detect_rtl true at a sampled point");
  }
  RunResult r = run({{"scene", "controls"}, {"points", 100}});
  check_passes(o, r, "controls.hermitian_b_zero", 0.0);
  check_passes(o, r, "controls.hermitian_not_rtl", 0.0);
  return o;
}

Outcome criterion_10() {
  Outcome o;
  for (const json& m : {json{{"scene", "example_61"}, {"n", 1}, {"points", 100}, {"seed", 42}},
                        json{{"scene", "example_61"}, {"n", 2}, {"points", 30}, {"seed", 7}},
                        json{{"scene", "example_62"}}, json{{"scene", "controls"}}}) {
    std::string a = render_report(run(m));
    std::string b = render_report(run(m));
    o.require(a == b, "reports differ for scene " + m["scene"].get<std::string>());
  }
  return o;
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria = {
      {"sl(2,R) exact frame, b = -2, holomorphic screen, radical transversal", criterion_1},
      {"holomorphic screen <=> radical transversal, non-holomorphic control fails both", criterion_2},
      {"Kaehler identities on the isotropic quadric <= 1e-9", criterion_3},
      {"screen uniqueness over 10 holomorphic second screens", criterion_4},
      {"induced Ricci symmetric <= 1e-8, d tau <= 1e-9", criterion_5},
      {"lightlike / non-degenerate round trip", criterion_6},
      {"relations between the two induced structures <= 1e-9", criterion_7},
      {"F_5 classification and verdict equivalences, flat control F_0", criterion_8},
      {"Hermitian control: b = 0 exactly, never radical transversal", criterion_9},
      {"byte-identical reports", criterion_10},
  };
  auto start = std::chrono::steady_clock::now();
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o.ok = false;
      o.detail = std::string("exception: ") + e.what();
    }
    failures += !o.ok;
    std::printf("criterion %2zu %s  %s%s%s\n", i + 1, o.ok ? "PASS" : "FAIL", criteria[i].first,
                o.ok ? "" : "  -- ", o.detail.c_str());
  }
  double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  std::printf("%d of %zu criteria failed, %.2f s\n", failures, criteria.size(), secs);
  return failures == 0 ? EXIT_SUCCESS : EXIT_FAILURE;
}
