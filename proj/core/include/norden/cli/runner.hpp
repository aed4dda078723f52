#pragma once

// Manifest-driven runner: builds a scene, runs the selected suites and
// renders a JSON report plus a plain-text table.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "norden/check.hpp"

namespace norden {

// A manifest or command line problem; `field` names the offending key.
class ConfigError : public std::runtime_error {
 public:
  ConfigError(std::string field, const std::string& what)
      : std::runtime_error(field.empty() ? what : field + ": " + what), field_(std::move(field)) {}
  const std::string& field() const { return field_; }

 private:
  std::string field_;
};

struct Manifest {
  std::string scene;
  std::size_t n = 1;                 // example_61 and control_sphere
  std::vector<std::string> suites;   // declaration order; "all" expanded
  std::size_t points = 100;
  std::uint64_t seed = 42;
  Tolerances tol;
  std::optional<std::string> report;
  double gauge = 1.0;
  double margin = 0.1;
  double box = 3.0;
  std::size_t uniqueness_trials = 10;
};

const std::vector<std::string>& known_suites();
const std::vector<std::string>& known_scenes();

Manifest parse_manifest(const nlohmann::json& j);
Manifest load_manifest(const std::string& path);

struct RunResult {
  Report report;
  nlohmann::ordered_json document;
  int exit_code = 0;
};

RunResult run_manifest(const Manifest& m);

// 0 when no check failed, 1 otherwise.
int exit_status(const Report& r);

std::string render_report(const RunResult& r);
std::string summary_table(const Report& r);

std::string engine_version();

}  // namespace norden
