// Command line front end: scenario assessment, batch runs, the brute-force
// oracle, critical-kick bisection, classical SMIB closed forms, the
// reference reproduction study, and plot-data dumps.
//
// Exit codes: 0 ok, 1 unstable verdict under --fail-on-unstable,
// 2 input error, 3 numerical failure.

#include <cmath>
#include <cstdio>
#include <exception>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "geac/batch.hpp"
#include "geac/eac_classical.hpp"
#include "geac/equilibria.hpp"
#include "geac/errors.hpp"
#include "geac/oracle.hpp"
#include "geac/report.hpp"
#include "geac/reproduce.hpp"
#include "geac/scenario.hpp"
#include "geac/swing.hpp"

namespace {

using namespace geac;

struct CommonFlags {
  std::string scenario_path;
  std::string out_prefix;
  std::string format = "table";
  std::optional<double> kappa;
  std::optional<double> rtol;
  std::optional<double> atol;
  std::optional<int> max_swings;
  bool fail_on_unstable = false;
};

ReportFormat parse_format(const std::string& format) {
  if (format == "table") return ReportFormat::Table;
  if (format == "structured") return ReportFormat::Structured;
  throw InvalidOptions("--format must be table or structured");
}

void apply_overrides(Scenario& sc, const CommonFlags& flags) {
  if (flags.rtol) sc.integrate.rtol = *flags.rtol;
  if (flags.atol) sc.integrate.atol = *flags.atol;
  if (flags.max_swings) sc.max_swings = *flags.max_swings;
}

const char* overall_word(OverallVerdict v) {
  switch (v) {
    case OverallVerdict::Stable: return "stable";
    case OverallVerdict::Unstable: return "unstable";
    case OverallVerdict::Undecided: return "undecided";
  }
  return "undecided";
}

int run_assess(const CommonFlags& flags) {
  const ReportFormat format = parse_format(flags.format);
  Scenario sc = load_scenario(flags.scenario_path);
  apply_overrides(sc, flags);
  const ResolvedScenario rs = resolve(sc, flags.kappa);
  const AssessOutput out = assess_post_fault_full(rs.model, rs.init, rs.options);

  if (format == ReportFormat::Table)
    std::cout << render_table(out.report);
  else
    std::cout << render_structured(rs.name, out.report);
  std::cout.flush();
  fprintf(stderr, "overall: %s\n", overall_word(out.report.overall));

  if (!flags.out_prefix.empty())
    for (const auto& path : emit_outputs(rs.name, out, format, flags.out_prefix))
      fprintf(stderr, "wrote %s\n", path.c_str());

  if (flags.fail_on_unstable && out.report.overall == OverallVerdict::Unstable)
    return 1;
  return 0;
}

int run_batch_cmd(const std::vector<std::string>& paths,
                  const CommonFlags& flags, int parallelism) {
  const ReportFormat format = parse_format(flags.format);

  // One error entry per unreadable file; scenarios from readable files keep
  // their in-file order.
  std::vector<BatchEntry> pre_failed;
  std::vector<int> slot_of_entry;  // -1: pre-failed, else index into runnable
  std::vector<Scenario> runnable;
  for (const std::string& path : paths) {
    try {
      for (Scenario& sc : load_scenario_set(path)) {
        apply_overrides(sc, flags);
        slot_of_entry.push_back(static_cast<int>(runnable.size()));
        runnable.push_back(std::move(sc));
      }
    } catch (const Error& e) {
      slot_of_entry.push_back(-1);
      pre_failed.push_back(BatchEntry{
          std::filesystem::path(path).stem().string(), std::nullopt,
          e.what()});
    }
  }

  const std::vector<BatchEntry> ran =
      run_batch(runnable, parallelism, flags.kappa);

  std::vector<BatchEntry> entries;
  entries.reserve(slot_of_entry.size());
  std::size_t next_failed = 0;
  for (int slot : slot_of_entry)
    entries.push_back(slot < 0 ? pre_failed[next_failed++] : ran[slot]);

  if (format == ReportFormat::Table)
    std::cout << render_table(entries);
  else
    std::cout << render_structured(entries);
  std::cout.flush();

  bool any_unstable = false;
  for (const BatchEntry& entry : entries) {
    if (!entry.report) {
      fprintf(stderr, "error: %s: %s\n", entry.name.c_str(),
              entry.error.c_str());
    } else {
      fprintf(stderr, "%s: %s\n", entry.name.c_str(),
              overall_word(entry.report->overall));
      any_unstable |= entry.report->overall == OverallVerdict::Unstable;
    }
  }

  if (!flags.out_prefix.empty())
    for (const auto& path : emit_outputs(entries, format, flags.out_prefix))
      fprintf(stderr, "wrote %s\n", path.c_str());

  if (flags.fail_on_unstable && any_unstable) return 1;
  return 0;
}

int run_oracle(const CommonFlags& flags) {
  Scenario sc = load_scenario(flags.scenario_path);
  apply_overrides(sc, flags);
  const ResolvedScenario rs = resolve(sc, flags.kappa);
  const OracleVerdict verdict =
      oracle_classify(rs.model, rs.init, rs.options.integrate);

  const char* word = "undecided";
  if (verdict.classification == OracleClass::Stable) word = "stable";
  if (verdict.classification == OracleClass::Unstable) word = "unstable";
  printf("classification: %s\n", word);
  if (verdict.first_escape_event) {
    const Event& e = *verdict.first_escape_event;
    printf("decided by: %s at t = %.10g, delta = %.10g, omega = %.10g\n",
           e.kind == EventKind::Escape ? "escape" : "uep crossing",
           e.state.t, e.state.delta, e.state.omega);
  }
  return 0;
}

int run_critical(const CommonFlags& flags, const std::string& direction,
                 double lo, double hi) {
  Scenario sc = load_scenario(flags.scenario_path);
  apply_overrides(sc, flags);
  const ResolvedScenario rs = resolve(sc, flags.kappa);
  double sign = 0.0;
  if (direction == "forward") sign = 1.0;
  if (direction == "backward") sign = -1.0;
  if (sign == 0.0)
    throw InvalidOptions("--direction must be forward or backward");

  const double delta0 = rs.init.delta;
  const auto family = [delta0, sign](double c) {
    return State{0.0, delta0, sign * c};
  };
  const CriticalResult result =
      bisect_critical(rs.model, family, lo, hi, rs.options.integrate);
  printf("critical speed magnitude c* = %.10g\n", result.c_star);
  printf("margin at c* = %.6g\n", result.margin_at_critical);
  printf("bisection iterations = %d\n", result.iterations);
  return 0;
}

int run_eac_classical(const SmibScenario& s, std::optional<double> angle,
                      std::optional<int> taylor_order) {
  validate(s);
  const SmibEquilibria eq3 = smib_equilibria(phase_params(s, 3));
  printf("post-fault sep = %.10g rad, bounding uep = %.10g rad\n",
         eq3.delta_s, eq3.delta_u1);
  const double dc = critical_clearing_angle(s);
  printf("critical clearing angle = %.10g rad\n", dc);

  if (angle) {
    const ClassicalMargin m = classical_margin(s, *angle);
    printf("at clearing angle %.10g: a_acc = %.10g, a_dec = %.10g, "
           "margin = %.10g\n",
           *angle, m.a_acc, m.a_dec, m.margin);
    if (taylor_order) {
      const SwingRecord rec = geac_first_swing(s, *angle, *taylor_order);
      printf("polynomial bridge (order %d): first-swing margin = %.10g, "
             "|difference| = %.3g\n",
             *taylor_order, rec.margin, std::abs(rec.margin - m.margin));
    }
  }
  return 0;
}

int run_reproduce(std::optional<double> kappa, const std::string& out_prefix) {
  const ReproductionStudy study = run_reproduction(kappa.value_or(1.0));
  const std::string text = render_reproduction(study);
  std::cout << text;
  std::cout.flush();
  if (!out_prefix.empty()) {
    const std::filesystem::path path = out_prefix + "_reproduction.txt";
    std::ofstream file(path);
    if (!file) throw IoError("cannot open " + path.string() + " for writing");
    file << text;
    if (!file.good()) throw IoError("write failed for " + path.string());
    fprintf(stderr, "wrote %s\n", path.c_str());
  }
  bool all_held = true;
  for (const auto& [description, held] : study.orderings) all_held &= held;
  return all_held ? 0 : 1;
}

int run_vector_field(const CommonFlags& flags, std::optional<double> dmin,
                     std::optional<double> dmax, std::optional<double> wmin,
                     std::optional<double> wmax, int grid) {
  const Scenario sc = load_scenario(flags.scenario_path);
  const PolynomialOscillator model = build_model(sc, flags.kappa);
  const EquilibriumSet eq = find_equilibria(model);
  const double lo =
      dmin.value_or(eq.left_uep ? eq.left_uep->location - 1.0
                                : -escape_bound(eq));
  const double hi =
      dmax.value_or(eq.right_uep ? eq.right_uep->location + 1.0
                                 : escape_bound(eq));
  const std::string data = render_vector_field(
      model, lo, hi, wmin.value_or(-1.0), wmax.value_or(1.0), grid, grid);
  if (flags.out_prefix.empty()) {
    std::cout << data;
    std::cout.flush();
  } else {
    const std::filesystem::path path = flags.out_prefix + "_vector_field.dat";
    std::ofstream file(path);
    if (!file) throw IoError("cannot open " + path.string() + " for writing");
    file << data;
    if (!file.good()) throw IoError("write failed for " + path.string());
    fprintf(stderr, "wrote %s\n", path.c_str());
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Swing-by-swing transient stability assessment for "
               "polynomial oscillators"};
  app.require_subcommand(1);

  CommonFlags flags;
  std::vector<std::string> batch_paths;
  int parallelism = 1;

  const auto add_common = [&](CLI::App* cmd, bool with_scenario = true) {
    if (with_scenario)
      cmd->add_option("--scenario", flags.scenario_path, "Scenario file")
          ->required();
    cmd->add_option("--kappa", flags.kappa,
                    "Override the restoring-term scaling");
    cmd->add_option("--rtol", flags.rtol, "Relative integration tolerance");
    cmd->add_option("--atol", flags.atol, "Absolute integration tolerance");
    cmd->add_option("--max-swings", flags.max_swings,
                    "Swing budget before reporting stops");
  };

  CLI::App* assess = app.add_subcommand("assess", "Assess one scenario");
  add_common(assess);
  assess->add_option("--out", flags.out_prefix, "Output file prefix");
  assess->add_option("--format", flags.format, "table | structured");
  assess->add_flag("--fail-on-unstable", flags.fail_on_unstable,
                   "Exit 1 when the verdict is unstable");

  CLI::App* batch =
      app.add_subcommand("batch", "Assess a set of scenarios in parallel");
  batch->add_option("--scenario", batch_paths,
                    "Scenario file(s); each may hold one scenario or an array")
      ->required();
  batch->add_option("--parallel", parallelism, "Worker thread count")
      ->check(CLI::PositiveNumber);
  batch->add_option("--kappa", flags.kappa,
                    "Override the restoring-term scaling");
  batch->add_option("--rtol", flags.rtol, "Relative integration tolerance");
  batch->add_option("--atol", flags.atol, "Absolute integration tolerance");
  batch->add_option("--max-swings", flags.max_swings,
                    "Swing budget before reporting stops");
  batch->add_option("--out", flags.out_prefix, "Output file prefix");
  batch->add_option("--format", flags.format, "table | structured");
  batch->add_flag("--fail-on-unstable", flags.fail_on_unstable,
                  "Exit 1 when any verdict is unstable");

  CLI::App* oracle = app.add_subcommand(
      "oracle", "Classify a scenario by direct long-horizon simulation");
  add_common(oracle);

  std::string direction = "backward";
  double crit_lo = 0.0, crit_hi = 0.0;
  CLI::App* critical = app.add_subcommand(
      "critical", "Bisect the critical initial speed of a scenario's state");
  add_common(critical);
  critical->add_option("--direction", direction, "forward | backward");
  critical->add_option("--lo", crit_lo, "Speed magnitude known stable");
  critical->add_option("--hi", crit_hi, "Speed magnitude known unstable")
      ->required();

  SmibScenario smib;
  smib.h = 4.5;
  smib.d = 0.0;
  smib.omega_s = 377.0;
  smib.pm = 1.0;
  smib.pmax_pre = 2.0;
  smib.pmax_on = 0.8;
  smib.pmax_post = 1.5;
  std::optional<double> clearing_angle;
  std::optional<int> taylor_order;
  CLI::App* eac = app.add_subcommand(
      "eac-classical", "Closed-form equal-area results for an SMIB fault");
  eac->add_option("--inertia", smib.h, "Inertia constant H [s]");
  eac->add_option("--damping", smib.d, "Damping coefficient D [s]");
  eac->add_option("--sync-speed", smib.omega_s, "Synchronous speed [rad/s]");
  eac->add_option("--pm", smib.pm, "Mechanical power [pu]");
  eac->add_option("--pmax-pre", smib.pmax_pre, "Pre-fault power limit [pu]");
  eac->add_option("--pmax-on", smib.pmax_on, "Fault-on power limit [pu]");
  eac->add_option("--pmax-post", smib.pmax_post, "Post-fault power limit [pu]");
  eac->add_option("--clearing-angle", clearing_angle,
                  "Evaluate margins at this clearing angle [rad]");
  eac->add_option("--taylor-order", taylor_order,
                  "Also run the polynomial first-swing comparison");

  std::optional<double> repro_kappa;
  CLI::App* reproduce = app.add_subcommand(
      "reproduce-paper",
      "Side-by-side study against the published benchmark tables");
  reproduce->add_option("--kappa", repro_kappa,
                        "Restoring-term scaling for the study");
  reproduce->add_option("--out", flags.out_prefix, "Output file prefix");

  std::optional<double> dmin, dmax, wmin, wmax;
  int grid = 25;
  CLI::App* field = app.add_subcommand(
      "vector-field", "Phase-plane vector field grid for a scenario's model");
  field->add_option("--scenario", flags.scenario_path, "Scenario file")
      ->required();
  field->add_option("--kappa", flags.kappa,
                    "Override the restoring-term scaling");
  field->add_option("--delta-min", dmin, "Left angle bound [rad]");
  field->add_option("--delta-max", dmax, "Right angle bound [rad]");
  field->add_option("--omega-min", wmin, "Lower speed bound [rad/s]");
  field->add_option("--omega-max", wmax, "Upper speed bound [rad/s]");
  field->add_option("--grid", grid, "Points per axis")
      ->check(CLI::Range(2, 1000));
  field->add_option("--out", flags.out_prefix, "Output file prefix");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (app.got_subcommand(assess)) return run_assess(flags);
    if (app.got_subcommand(batch))
      return run_batch_cmd(batch_paths, flags, parallelism);
    if (app.got_subcommand(oracle)) return run_oracle(flags);
    if (app.got_subcommand(critical))
      return run_critical(flags, direction, crit_lo, crit_hi);
    if (app.got_subcommand(eac))
      return run_eac_classical(smib, clearing_angle, taylor_order);
    if (app.got_subcommand(reproduce))
      return run_reproduce(repro_kappa, flags.out_prefix);
    if (app.got_subcommand(field))
      return run_vector_field(flags, dmin, dmax, wmin, wmax, grid);
  } catch (const InputError& e) {
    fprintf(stderr, "input error: %s\n", e.what());
    return 2;
  } catch (const NumericalError& e) {
    fprintf(stderr, "numerical failure: %s\n", e.what());
    return 3;
  } catch (const std::exception& e) {
    fprintf(stderr, "error: %s\n", e.what());
    return 3;
  }
  return 2;  // no subcommand dispatched
}
