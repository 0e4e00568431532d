#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "vigl/graph.hpp"

// Oracle-versus-fast-path verification suites, shared by the command line
// `verify` command and the acceptance runner.
namespace vigl {

struct CheckResult {
  std::string name;
  bool passed = false;
  // Passed, but only inside the tolerated band of a soft criterion.
  bool soft = false;
  std::string detail;
};

struct SuiteOptions {
  // Zero keeps each suite's default.
  std::size_t cases = 0;
  Vertex n_max = 0;
  std::uint64_t seed = 1;
  double failure_prob = 0.05;
  // Skip the exhaustive small-graph sweeps.
  bool quick = false;
};

// girth, cycles, subgraph, matching, apsp, structure, algebra, scaling.
const std::vector<std::string>& suite_names();

// Throws InputError for an unknown suite name.
std::vector<CheckResult> run_suite(const std::string& name, const SuiteOptions& options = {});

}  // namespace vigl
