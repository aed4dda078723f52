// verify: run a manifest and report per-check residuals.
//
//   verify <manifest> [--tol X] [--points N] [--seed S] [--report PATH] [--suite NAME ...]
//
// Exit status: 0 all checks pass, 1 some check failed, 2 configuration error.

#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "norden/cli/runner.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Verify lightlike hypersurface identities in Norden manifolds"};
  std::string manifest_path;
  std::optional<double> tol;
  std::optional<std::size_t> points;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> report;
  std::vector<std::string> suites;
  bool quiet = false;
  app.add_option("manifest", manifest_path, "JSON manifest")->required();
  app.add_option("--tol", tol, "override the differential tolerance");
  app.add_option("--points", points, "number of sample points");
  app.add_option("--seed", seed, "sampler seed");
  app.add_option("--report", report, "write the JSON report here");
  app.add_option("--suite", suites, "run only these suites (repeatable)");
  app.add_flag("-q,--quiet", quiet, "print only the summary line");
  app.set_version_flag("--version", norden::engine_version());
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  norden::RunResult result;
  std::optional<std::string> report_path;
  auto t0 = std::chrono::steady_clock::now();
  try {
    norden::Manifest m = norden::load_manifest(manifest_path);
    if (tol) {
      if (!(*tol > 0.0)) throw norden::ConfigError("--tol", "must be positive");
      m.tol.differential = *tol;
    }
    if (points) {
      if (*points == 0) throw norden::ConfigError("--points", "must be >= 1");
      m.points = *points;
    }
    if (seed) m.seed = *seed;
    if (!suites.empty()) {
      nlohmann::json j = nlohmann::json::object({{"scene", m.scene}, {"suites", suites}});
      m.suites = norden::parse_manifest(j).suites;
    }
    report_path = report ? report : m.report;
    result = norden::run_manifest(m);
  } catch (const norden::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  }
  auto t1 = std::chrono::steady_clock::now();

  if (report_path) {
    std::ofstream out(*report_path, std::ios::binary);
    if (!out) {
      std::cerr << "config error: report: cannot write '" << *report_path << "'\n";
      return 2;
    }
    out << norden::render_report(result);
  }
  std::string table = norden::summary_table(result.report);
  if (quiet) table = table.substr(table.rfind('\n', table.size() - 2) + 1);
  std::cout << table;
  std::printf("wall time %.3f s\n", std::chrono::duration<double>(t1 - t0).count());
  return result.exit_code;
}
