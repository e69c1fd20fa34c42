#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "geac/oscillator.hpp"
#include "geac/swing.hpp"

namespace geac {

// =============================================================================
// Scenario files
// =============================================================================
//
// A scenario pairs one post-fault model with one way of producing the initial
// state, plus optional integrator/analysis overrides. The JSON schema is
// strict at every level: unknown keys are rejected so a typo cannot silently
// change a run.

struct PolynomialModelSpec {
  double damping = 0.0;
  std::vector<double> coeffs;  // restoring coefficients a_1..a_N
  double constant = 0.0;       // tolerated only when numerically zero
  double kappa = 1.0;
};

struct SmibModelSpec {
  SmibParams params;  // post-fault machine constants
  int taylor_order = 3;
  double kappa = 1.0;
};

/// Initial state given directly, in SEP-relative coordinates at t = 0.
struct StateStart {
  double delta = 0.0;
  double omega = 0.0;
};

/// Initial state produced by a fault timeline: rest before t0, fault-on
/// dynamics over [t0, tc), hand-off to the scenario's model at tc. Which
/// pair of fields applies depends on the model variant.
struct FaultStart {
  double t0 = 0.0;
  double tc = 0.0;
  // SMIB models: power limits of the pre-fault and fault-on phases.
  std::optional<double> pmax_pre;
  std::optional<double> pmax_on;
  // Polynomial models: explicit fault-on acceleration polynomial, already in
  // post-fault coordinates, started from rest at pre_delta.
  std::optional<RawPolynomial> fault_on;
  std::optional<double> pre_delta;
};

struct Scenario {
  std::string name;
  std::optional<PolynomialModelSpec> polynomial;
  std::optional<SmibModelSpec> smib;
  std::optional<StateStart> state_start;
  std::optional<FaultStart> fault_start;
  // Files may override rtol, atol, max_time and escape_delta; everything
  // else keeps the analysis defaults.
  IntegrateOptions integrate;
  int max_swings = 50;
};

/// Parse a document holding exactly one scenario object.
/// Throws ParseError on malformed input, ValidationError on schema breaks.
Scenario parse_scenario(const std::string& text);

/// Parse a document holding one scenario object or an array of them.
std::vector<Scenario> parse_scenario_set(const std::string& text);

/// File variants; nameless scenarios inherit the file stem as their name.
Scenario load_scenario(const std::filesystem::path& path);
std::vector<Scenario> load_scenario_set(const std::filesystem::path& path);

/// Construct the post-fault model, optionally overriding the file's kappa.
PolynomialOscillator build_model(const Scenario& sc,
                                 std::optional<double> kappa_override = {});

struct ResolvedScenario {
  std::string name;
  PolynomialOscillator model;
  State init;
  AssessOptions options;
};

/// Materialize the initial state: a state start is taken verbatim, a fault
/// start is integrated through the fault-on phase up to tc and converted to
/// SEP-relative coordinates.
ResolvedScenario resolve(const Scenario& sc,
                         std::optional<double> kappa_override = {});

}  // namespace geac
