#pragma once

// Control scenes with known verdicts and fixed-value checks on the two
// builtin examples.

#include "norden/check.hpp"
#include "norden/rtl/rtl.hpp"
#include "norden/scenarios/scenarios.hpp"

namespace norden {

// Runs every control scene and asserts its expected verdict.  A control
// whose negative verdict is observed counts as a pass.
void controls_suite(const SamplerConfig& sampler, const SuiteOptions& o, Report& out);

// Fixed values on sl(2,R) in gl(2,R): radical, transversal, b, screen and
// the shape operators.
void example_62_checks(const Scene<Rational>& s, Report& out);

// Fixed values on g(Z,JZ) = 0 in R^{2n+2}: the constraint polynomial, the
// unit normal at Z = 2 dv_1 and the time-like sign over the sample.
void example_61_checks(const Scene<double>& s, const std::vector<Vec<double>>& points, double margin,
                       const SuiteOptions& o, Report& out);

}  // namespace norden
