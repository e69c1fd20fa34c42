#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "geac/batch.hpp"
#include "geac/equilibria.hpp"
#include "geac/swing.hpp"

namespace geac {

// =============================================================================
// Report and plot-data emission
// =============================================================================

enum class ReportFormat { Table, Structured };

/// CSV with a fixed header, 4-decimal numbers, one row per swing.
std::string render_table(const AssessmentReport& report);
/// Batch variant: adds a leading scenario column. Failed entries carry no
/// swings, so they appear only in the structured rendering.
std::string render_table(const std::vector<BatchEntry>& batch);

/// JSON mirroring AssessmentReport, numbers at 17 significant digits so a
/// re-ingested report reproduces every double bit-exactly.
std::string render_structured(const std::string& name,
                              const AssessmentReport& report);
std::string render_structured(const std::vector<BatchEntry>& batch);

struct NamedReport {
  std::string name;
  AssessmentReport report;
};

/// Inverse of the single-report render_structured.
NamedReport read_report(const std::string& text);

// Plot data as plain numeric columns, one point per line:
//   pf_curve:     delta  f(delta)
//   trajectory:   t  delta  omega  damping*omega
//   equilibria:   location  kind(0 sep, 1 uep, 2 degenerate)  slope
//   vector_field: delta  omega  ddelta/dt  domega/dt   (n_delta*n_omega rows)
std::string render_pf_curve(const PolynomialOscillator& model, double lo,
                            double hi, int n);
std::string render_trajectory(const PolynomialOscillator& model,
                              const Trajectory& traj);
std::string render_equilibria(const EquilibriumSet& eq);
std::string render_vector_field(const PolynomialOscillator& model,
                                double delta_lo, double delta_hi,
                                double omega_lo, double omega_hi, int n_delta,
                                int n_omega);

/// Writes <prefix>_report.csv or <prefix>_report.json per `format`, plus
/// <prefix>_pf_curve.dat, <prefix>_trajectory.dat, <prefix>_equilibria.dat
/// and <prefix>_vector_field.dat. Returns the paths written.
std::vector<std::filesystem::path> emit_outputs(
    const std::string& name, const AssessOutput& out, ReportFormat format,
    const std::filesystem::path& prefix);

/// Batch form: the report file only.
std::vector<std::filesystem::path> emit_outputs(
    const std::vector<BatchEntry>& batch, ReportFormat format,
    const std::filesystem::path& prefix);

}  // namespace geac
