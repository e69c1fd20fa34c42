#include "geac/reproduce.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>

namespace geac {

namespace {

constexpr double kBenchmarkDamping = 4.42e-4;

std::vector<ReferenceCase> benchmark_cases(
    const std::vector<std::vector<double>>& margins) {
  const double d0 = 0.13;
  return {
      {"case 1", State{0.0, d0, -5.2779}, margins[0]},
      {"case 2", State{0.0, d0, -8.3299}, margins[1]},
      {"case 3", State{0.0, d0, -8.3315}, margins[2]},
      {"case 4", State{0.0, d0, -9.4248}, margins[3]},
  };
}

}  // namespace

std::vector<ReferenceModel> reference_study(double kappa) {
  std::vector<ReferenceModel> models;
  models.push_back(
      {"model A",
       PolynomialOscillator(kBenchmarkDamping, {0.2649, -0.0503, -0.04414},
                            kappa),
       benchmark_cases({
           {3.6701, 0.2631, 3.4372, 0.4065, 3.9569, 0.5666, 4.5369, 0.7446},
           {3.3313, 0.00005, 2.4860, 0.1192, 2.9172, 0.2490, 3.3871, 0.3924},
           {3.3311, -0.0600},
           {3.1698, -0.1499},
       })});
  models.push_back(
      {"model B",
       PolynomialOscillator(kBenchmarkDamping, {0.2649, -0.0603, -0.04414},
                            kappa),
       benchmark_cases({
           {4.6069, 0.1798, 4.2444, 0.3142, 4.8655, 0.4643, 5.5558, 0.6305},
           {4.2489, -0.1351},
           {4.2534, -0.1326},
           {4.0862, -0.2172},
       })});
  return models;
}

namespace {

std::vector<std::pair<std::string, bool>> check_orderings(double kappa) {
  std::vector<std::pair<std::string, bool>> out;
  const PolynomialOscillator model(kBenchmarkDamping,
                                   {0.2649, -0.0503, -0.04414}, kappa);

  // Larger fault kicks eat into the surplus: first-swing margins must fall
  // as the initial speed magnitude grows.
  {
    const double speeds[] = {-0.20, -0.35, -0.50, -0.60};
    bool held = true;
    double prev = std::numeric_limits<double>::infinity();
    for (double w0 : speeds) {
      const AssessmentReport rep =
          assess_post_fault(model, State{0.0, 0.13, w0});
      if (rep.records.empty() || !std::isfinite(rep.records[0].margin)) {
        held = false;
        break;
      }
      if (!(rep.records[0].margin < prev)) held = false;
      prev = rep.records[0].margin;
    }
    out.emplace_back(
        "first-swing margin decreases as the initial speed magnitude grows",
        held);
  }

  // Near the forward barrier the tight direction is forward: its margins sit
  // below the neighbouring backward ones.
  {
    const AssessmentReport rep =
        assess_post_fault(model, State{0.0, 0.0, 0.655});
    bool held = rep.records.size() >= 4;
    for (std::size_t i = 0; held && i + 1 < rep.records.size(); i += 2) {
      const SwingRecord& fwd = rep.records[i];
      const SwingRecord& bwd = rep.records[i + 1];
      if (fwd.swing.direction != Direction::Forward ||
          bwd.swing.direction != Direction::Backward ||
          !std::isfinite(fwd.margin) || !std::isfinite(bwd.margin) ||
          !(fwd.margin < bwd.margin))
        held = false;
    }
    out.emplace_back(
        "forward margins sit below adjacent backward margins near "
        "criticality",
        held);
  }

  // Damping drains energy, so revisiting a direction can only look safer.
  {
    const AssessmentReport rep =
        assess_post_fault(model, State{0.0, 0.13, -0.5});
    bool held = rep.records.size() >= 6;
    double prev_f = -std::numeric_limits<double>::infinity();
    double prev_b = prev_f;
    for (const SwingRecord& rec : rep.records) {
      if (!std::isfinite(rec.margin)) continue;
      double& prev =
          rec.swing.direction == Direction::Forward ? prev_f : prev_b;
      if (rec.margin < prev - 1e-9) held = false;
      prev = rec.margin;
    }
    out.emplace_back(
        "same-direction margins never decrease from swing to swing", held);
  }
  return out;
}

}  // namespace

ReproductionStudy run_reproduction(double kappa) {
  ReproductionStudy study;
  study.kappa = kappa;
  for (const ReferenceModel& rm : reference_study(kappa)) {
    for (const ReferenceCase& rc : rm.cases) {
      CaseComparison cmp;
      cmp.model_label = rm.label;
      cmp.case_label = rc.label;
      cmp.init = rc.init;
      cmp.reference_margins = rc.reference_margins;
      cmp.computed = assess_post_fault(rm.model, rc.init);
      study.comparisons.push_back(std::move(cmp));
    }
  }
  study.orderings = check_orderings(kappa);
  return study;
}

namespace {

std::string m4(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4f", v);
  return buf;
}

const char* overall_word(OverallVerdict v) {
  switch (v) {
    case OverallVerdict::Stable: return "stable";
    case OverallVerdict::Unstable: return "unstable";
    case OverallVerdict::Undecided: return "undecided";
  }
  return "undecided";
}

}  // namespace

std::string render_reproduction(const ReproductionStudy& study) {
  std::ostringstream os;
  char buf[160];
  os << "reproduction study (kappa = " << study.kappa << ")\n";

  for (const CaseComparison& cmp : study.comparisons) {
    std::snprintf(buf, sizeof buf, "\n%s, %s: delta0 = %g, omega0 = %g\n",
                  cmp.model_label.c_str(), cmp.case_label.c_str(),
                  cmp.init.delta, cmp.init.omega);
    os << buf;
    os << "  swing  dir    computed   reference       delta\n";

    const std::size_t rows =
        std::max(cmp.computed.records.size(), cmp.reference_margins.size());
    char dir = 'B';  // every benchmark case kicks backward first
    for (std::size_t i = 0; i < rows; ++i) {
      std::string computed = "-", reference = "-", delta = "-";
      if (i < cmp.computed.records.size()) {
        const SwingRecord& rec = cmp.computed.records[i];
        dir = rec.swing.direction == Direction::Forward ? 'F' : 'B';
        computed = m4(rec.margin);
      } else {
        dir = dir == 'B' ? 'F' : 'B';
      }
      if (i < cmp.reference_margins.size())
        reference = m4(cmp.reference_margins[i]);
      if (i < cmp.computed.records.size() &&
          i < cmp.reference_margins.size() &&
          std::isfinite(cmp.computed.records[i].margin))
        delta = m4(cmp.computed.records[i].margin -
                   cmp.reference_margins[i]);
      std::snprintf(buf, sizeof buf, "  %5zu  %c   %10s  %10s  %10s\n",
                    i + 1, dir, computed.c_str(), reference.c_str(),
                    delta.c_str());
      os << buf;
    }
    std::snprintf(buf, sizeof buf,
                  "  computed: %s after %zu swing(s); reference lists %zu "
                  "swing(s)\n",
                  overall_word(cmp.computed.overall),
                  cmp.computed.records.size(),
                  cmp.reference_margins.size());
    os << buf;
  }

  os << "\nqualitative orderings (this implementation's damped stable "
        "runs):\n";
  for (const auto& [description, held] : study.orderings)
    os << "  [" << (held ? "ok" : "FAILED") << "] " << description << "\n";
  return os.str();
}

}  // namespace geac
