#pragma once

#include <optional>
#include <string>
#include <vector>

#include "geac/scenario.hpp"
#include "geac/swing.hpp"

namespace geac {

struct BatchEntry {
  std::string name;
  std::optional<AssessmentReport> report;  // present on success
  std::string error;                       // diagnostic when report is absent
};

/// Assess every scenario on up to `parallelism` worker threads. Entries come
/// back in input order whatever the execution order, and a per-scenario
/// failure becomes an error entry instead of aborting the batch. Scenarios
/// share nothing mutable, so the result is identical for every parallelism.
std::vector<BatchEntry> run_batch(const std::vector<Scenario>& scenarios,
                                  int parallelism,
                                  std::optional<double> kappa_override = {});

}  // namespace geac
