#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "shearkit/io.hpp"

namespace shearkit {

struct CriterionResult {
  int id = 0;
  std::string name;
  bool pass = false;
  std::string detail;   // measured values, deterministic for a fixed config
  double seconds = 0.0;
};

/// Runs the full acceptance suite at the given configuration. Progress lines
/// (with timings) go to *progress when provided.
std::vector<CriterionResult> run_acceptance(const Config& cfg, std::ostream* progress = nullptr);

}  // namespace shearkit
