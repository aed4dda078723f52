#include "norden/cli/runner.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>
#include <variant>

#include "norden/ambient/ambient.hpp"
#include "norden/dualmetric/dualmetric.hpp"
#include "norden/hypersurface/induced.hpp"
#include "norden/rtl/rtl.hpp"
#include "norden/scenarios/controls.hpp"
#include "norden/scenarios/scenarios.hpp"

#ifndef NORDEN_VERSION
#define NORDEN_VERSION "0.0.0"
#endif

namespace norden {

using json = nlohmann::json;
using ojson = nlohmann::ordered_json;

namespace {

const std::set<std::string> kManifestKeys = {"scene", "n", "suites", "points", "seed", "tolerances", "report",
                                             "gauge", "margin", "box", "uniqueness_trials", "sampler"};

bool float_only(const std::string& suite) {
  return suite == "correspondence" || suite == "acm_class" || suite == "relations" || suite == "props";
}

AnyScene build_scene(const Manifest& m) {
  if (m.scene == "example_61") return build_example_61(m.n);
  if (m.scene == "example_62") return build_example_62();
  if (m.scene == "control_non_holomorphic_screen") return control_non_holomorphic_screen();
  if (m.scene == "control_sphere") return control_sphere(m.n);
  if (m.scene == "control_hermitian") return control_hermitian();
  if (m.scene == "control_flat_hyperplane") return control_flat_hyperplane();
  throw ConfigError("scene", "unknown scene '" + m.scene + "'");
}

template <class B>
ojson point_json(const Vec<B>& x) {
  ojson p = ojson::array();
  for (const auto& c : x) p.push_back(format_scalar(c));
  return p;
}

Check error_check(const std::string& suite, const std::string& what) {
  Check c;
  c.id = suite + ".error";
  c.suite = suite;
  c.status = Status::Fail;
  c.note = what;
  return c;
}

template <class B>
void run_suite(const std::string& name, const Scene<B>& sc, const std::vector<Vec<B>>& pts, const Manifest& m,
               const SamplerConfig& sampler, Report& out) {
  SuiteOptions o;
  o.tol = m.tol;
  o.seed = m.seed;
  o.uniqueness_trials = m.uniqueness_trials;
  if (name == "controls") {
    controls_suite(sampler, o, out);
    return;
  }
  if (name == "ambient") {
    ambient_checks(sc.ambient, m.tol, sc.expect_kaehler, out);
    return;
  }
  if (name == "example") {
    if constexpr (is_exact_v<B>) {
      if (sc.name == "example_62") return example_62_checks(sc, out);
    } else {
      if (sc.name == "example_61") return example_61_checks(sc, pts, m.margin, o, out);
    }
    out.add(skipped_check("example.scene", name, "no fixed-value checks for scene " + sc.name));
    return;
  }
  if (float_only(name)) {
    if constexpr (is_exact_v<B>) {
      out.add(skipped_check(name + ".mode", name, "unit normals need square roots: float scenes only"));
    } else {
      DualPair dp = dual_pair(sc);
      if (name == "correspondence") correspondence_suite(dp, pts, o, out);
      else if (name == "acm_class") acm_suite(dp, pts, o, out);
      else if (name == "relations") relations_suite(dp, pts, o, out);
      else props_suite(dp, pts, o, out);
    }
    return;
  }
  Context<B> ctx = lightlike_context(sc);
  if (name == "frame") frame_suite(ctx, pts, m.tol, out);
  else if (name == "rtl") rtl_suite(ctx, pts, o, out);
  else if (name == "kaehler_identities") kaehler_identities_suite(ctx, pts, o, out);
  else if (name == "uniqueness") uniqueness_suite(ctx, pts, o, out);
  else if (name == "selfconjugacy") selfconjugacy_suite(ctx, pts, o, out);
  else if (name == "integrability") integrability_suite(ctx, pts, o, out);
  else if (name == "geodesic_umbilical") geodesic_umbilical_suite(ctx, pts, o, out);
  else if (name == "ricci") ricci_suite(ctx, pts, o, out);
  else throw ConfigError("suites", "unknown suite '" + name + "'");
}

double positive(const json& j, const std::string& field) {
  if (!j.is_number()) throw ConfigError(field, "must be a number");
  double v = j.get<double>();
  if (!(v > 0.0) || !std::isfinite(v)) throw ConfigError(field, "must be positive");
  return v;
}

std::size_t count(const json& j, const std::string& field) {
  if (!j.is_number_integer() || j.get<long long>() < 1) throw ConfigError(field, "must be an integer >= 1");
  return j.get<std::size_t>();
}

double non_negative(const json& j, const std::string& field) {
  if (!j.is_number() || !(j.get<double>() >= 0.0)) throw ConfigError(field, "must be a number >= 0");
  return j.get<double>();
}

std::uint64_t seed_value(const json& j, const std::string& field) {
  if (!j.is_number_unsigned() && !(j.is_number_integer() && j.get<long long>() >= 0))
    throw ConfigError(field, "must be a non-negative integer");
  return j.get<std::uint64_t>();
}

std::string short_number(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", x);
  return buf;
}

ojson check_json(const Check& c) {
  ojson o;
  o["id"] = c.id;
  o["suite"] = c.suite;
  o["status"] = to_string(c.status);
  o["residual"] = c.residual;
  o["tolerance"] = format_scalar(c.tolerance);
  o["exact"] = c.exact;
  o["points"] = c.points;
  o["note"] = c.note;
  return o;
}

}  // namespace

std::string engine_version() { return NORDEN_VERSION; }

const std::vector<std::string>& known_suites() {
  static const std::vector<std::string> s = {"ambient",       "frame",          "rtl",       "kaehler_identities",
                                             "uniqueness",    "selfconjugacy",  "integrability",
                                             "geodesic_umbilical", "ricci",     "correspondence", "acm_class",
                                             "relations",     "props",          "controls",  "example"};
  return s;
}

const std::vector<std::string>& known_scenes() {
  static const std::vector<std::string> s = {"example_61",   "example_62",     "control_non_holomorphic_screen",
                                             "control_sphere", "control_hermitian", "control_flat_hyperplane",
                                             "controls"};
  return s;
}

Manifest parse_manifest(const json& j) {
  if (!j.is_object()) throw ConfigError("", "manifest must be a JSON object");
  for (auto it = j.begin(); it != j.end(); ++it)
    if (!kManifestKeys.count(it.key())) throw ConfigError(it.key(), "unknown key");
  Manifest m;
  if (!j.contains("scene") || !j["scene"].is_string()) throw ConfigError("scene", "missing or not a string");
  m.scene = j["scene"].get<std::string>();
  const auto& scenes = known_scenes();
  if (std::find(scenes.begin(), scenes.end(), m.scene) == scenes.end())
    throw ConfigError("scene", "unknown scene '" + m.scene + "'");
  if (j.contains("n")) m.n = count(j["n"], "n");
  if (j.contains("points")) m.points = count(j["points"], "points");
  if (j.contains("uniqueness_trials")) m.uniqueness_trials = count(j["uniqueness_trials"], "uniqueness_trials");
  if (j.contains("seed")) m.seed = seed_value(j["seed"], "seed");
  if (j.contains("tolerances")) {
    const json& t = j["tolerances"];
    if (!t.is_object()) throw ConfigError("tolerances", "must be an object");
    for (auto it = t.begin(); it != t.end(); ++it) {
      const std::string f = "tolerances." + it.key();
      if (it.key() == "algebraic") m.tol.algebraic = positive(*it, f);
      else if (it.key() == "differential") m.tol.differential = positive(*it, f);
      else if (it.key() == "ricci") m.tol.ricci = positive(*it, f);
      else throw ConfigError(f, "unknown key");
    }
  }
  if (j.contains("report")) {
    if (!j["report"].is_string()) throw ConfigError("report", "must be a string");
    m.report = j["report"].get<std::string>();
  }
  if (j.contains("gauge")) {
    if (!j["gauge"].is_number() || j["gauge"].get<double>() == 0.0) throw ConfigError("gauge", "must be a nonzero number");
    m.gauge = j["gauge"].get<double>();
  }
  if (j.contains("margin")) m.margin = non_negative(j["margin"], "margin");
  if (j.contains("box")) m.box = positive(j["box"], "box");
  if (j.contains("sampler")) {
    const json& sj = j["sampler"];
    if (!sj.is_object()) throw ConfigError("sampler", "must be an object");
    for (auto it = sj.begin(); it != sj.end(); ++it) {
      const std::string f = "sampler." + it.key();
      if (it.key() == "count") m.points = count(*it, f);
      else if (it.key() == "seed") m.seed = seed_value(*it, f);
      else if (it.key() == "box") m.box = positive(*it, f);
      else if (it.key() == "margin") m.margin = non_negative(*it, f);
      else throw ConfigError(f, "unknown key");
    }
  }

  std::vector<std::string> requested;
  if (!j.contains("suites")) {
    requested = {m.scene == "controls" ? "controls" : "all"};
  } else if (j["suites"].is_string()) {
    requested = {j["suites"].get<std::string>()};
  } else if (j["suites"].is_array()) {
    for (const auto& s : j["suites"]) {
      if (!s.is_string()) throw ConfigError("suites", "entries must be strings");
      requested.push_back(s.get<std::string>());
    }
  } else {
    throw ConfigError("suites", "must be a string or an array of strings");
  }
  const auto& known = known_suites();
  for (const auto& s : requested) {
    if (s == "all") {
      for (const auto& k : known)
        if (std::find(m.suites.begin(), m.suites.end(), k) == m.suites.end()) m.suites.push_back(k);
      continue;
    }
    if (std::find(known.begin(), known.end(), s) == known.end()) throw ConfigError("suites", "unknown suite '" + s + "'");
    if (std::find(m.suites.begin(), m.suites.end(), s) == m.suites.end()) m.suites.push_back(s);
  }
  if (m.suites.empty()) throw ConfigError("suites", "no suite selected");
  return m;
}

Manifest load_manifest(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("", "cannot open manifest '" + path + "'");
  json j;
  try {
    j = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConfigError("", "malformed manifest '" + path + "': " + e.what());
  }
  return parse_manifest(j);
}

int exit_status(const Report& r) { return r.failed() ? 1 : 0; }

RunResult run_manifest(const Manifest& m) {
  RunResult res;
  SamplerConfig sampler;
  sampler.count = m.points;
  sampler.seed = m.seed;
  sampler.margin = m.margin;
  sampler.box = m.box;

  ojson fp;
  fp["scene"] = m.scene;
  fp["n"] = m.n;
  fp["seed"] = m.seed;
  fp["points"] = m.points;
  fp["tolerances"] = {{"algebraic", format_scalar(m.tol.algebraic)},
                      {"differential", format_scalar(m.tol.differential)},
                      {"ricci", format_scalar(m.tol.ricci)}};
  fp["gauge"] = format_scalar(m.gauge);
  fp["margin"] = format_scalar(m.margin);
  fp["box"] = format_scalar(m.box);
  fp["uniqueness_trials"] = m.uniqueness_trials;
  fp["suites"] = m.suites;

  if (m.scene == "controls") {
    fp["mode"] = "mixed";
    for (const auto& s : m.suites) {
      if (s != "controls") {
        res.report.add(skipped_check(s + ".scene", s, "the controls scene runs only the controls suite"));
        continue;
      }
      try {
        Scene<Rational> dummy;
        run_suite<Rational>(s, dummy, {}, m, sampler, res.report);
      } catch (const ConfigError&) {
        throw;
      } catch (const std::exception& e) {
        res.report.add(error_check(s, e.what()));
      }
    }
  } else {
    AnyScene scene = build_scene(m);
    std::visit(
        [&](auto& sc) {
          using B = std::decay_t<decltype(sc.ambient.gram(0, 0))>;
          sc.surface.gauge = B(m.gauge);
          fp["mode"] = is_exact_v<B> ? "exact" : "float";
          fp["description"] = sc.description;
          std::vector<Vec<B>> pts;
          try {
            pts = sample_points(sc, sampler);
          } catch (const ParameterError& e) {
            throw ConfigError("points", e.what());
          } catch (const PreconditionError& e) {
            throw ConfigError("sampler", e.what());
          }
          ojson sample = ojson::array();
          for (const auto& x : pts) sample.push_back(point_json(x));
          fp["sample"] = sample;
          for (const auto& s : m.suites) {
            try {
              run_suite<B>(s, sc, pts, m, sampler, res.report);
            } catch (const ConfigError&) {
              throw;
            } catch (const std::exception& e) {
              res.report.add(error_check(s, e.what()));
            }
          }
        },
        scene);
  }

  res.exit_code = exit_status(res.report);
  ojson doc;
  doc["engine"] = {{"name", "norden"}, {"version", engine_version()}};
  doc["fingerprint"] = fp;
  ojson checks = ojson::array();
  for (const auto& c : res.report.checks()) checks.push_back(check_json(c));
  doc["checks"] = checks;
  doc["summary"] = {{"pass", res.report.count(Status::Pass)},
                    {"fail", res.report.count(Status::Fail)},
                    {"skipped", res.report.count(Status::Skipped)},
                    {"info", res.report.count(Status::Info)},
                    {"status", res.exit_code == 0 ? "pass" : "fail"}};
  res.document = std::move(doc);
  return res;
}

std::string render_report(const RunResult& r) { return r.document.dump(2) + "\n"; }

std::string summary_table(const Report& r) {
  std::size_t w = 5;
  for (const auto& c : r.checks()) w = std::max(w, c.id.size());
  std::ostringstream os;
  char line[512];
  std::snprintf(line, sizeof line, "%-*s  %-7s  %-24s  %-8s  %s\n", static_cast<int>(w), "check", "status",
                "residual", "tol", "points");
  os << line;
  for (const auto& c : r.checks()) {
    std::string tol = c.exact ? "exact" : short_number(c.tolerance);
    if (c.status == Status::Skipped || c.status == Status::Info) tol = "-";
    std::string res = c.residual.size() > 24 ? c.residual.substr(0, 21) + "..." : c.residual;
    std::snprintf(line, sizeof line, "%-*s  %-7s  %-24s  %-8s  %zu\n", static_cast<int>(w), c.id.c_str(),
                  to_string(c.status).c_str(), res.c_str(), tol.c_str(), c.points);
    os << line;
    if (c.status == Status::Fail || c.status == Status::Skipped) os << "    " << c.note << "\n";
  }
  os << r.count(Status::Pass) << " passed, " << r.count(Status::Fail) << " failed, " << r.count(Status::Skipped)
     << " skipped, " << r.count(Status::Info) << " info\n";
  return os.str();
}

}  // namespace norden
