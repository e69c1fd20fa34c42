#include "geac/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>
#include <string>

#include "json.hpp"

#include "geac/errors.hpp"

namespace geac {

namespace {

using nlohmann::json;

std::string g17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string f4(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.4f", v);
  return buf;
}

// JSON token: a number when finite, a quoted marker otherwise (JSON itself
// has no infinity literal).
std::string num_token(double v) {
  if (std::isfinite(v)) return g17(v);
  if (std::isnan(v)) return "\"nan\"";
  return v > 0 ? "\"inf\"" : "\"-inf\"";
}

std::string quoted(const std::string& s) { return json(s).dump(); }

const char* to_word(Direction d) {
  return d == Direction::Forward ? "forward" : "backward";
}

const char* to_word(EventKind k) {
  switch (k) {
    case EventKind::TurningPoint: return "turning_point";
    case EventKind::UepCross: return "uep_cross";
    case EventKind::AccelZero: return "accel_zero";
    case EventKind::Escape: return "escape";
    case EventKind::Converged: return "converged";
    case EventKind::TimeLimit: return "time_limit";
  }
  return "time_limit";
}

const char* to_word(SwingVerdict v) {
  switch (v) {
    case SwingVerdict::Stable: return "stable";
    case SwingVerdict::Unstable: return "unstable";
    case SwingVerdict::NeverUnstableThisDirection:
      return "never_unstable_this_direction";
  }
  return "stable";
}

const char* to_word(OverallVerdict v) {
  switch (v) {
    case OverallVerdict::Stable: return "stable";
    case OverallVerdict::Unstable: return "unstable";
    case OverallVerdict::Undecided: return "undecided";
  }
  return "undecided";
}

std::string state_token(const State& s) {
  std::ostringstream os;
  os << "{\"t\": " << num_token(s.t) << ", \"delta\": " << num_token(s.delta)
     << ", \"omega\": " << num_token(s.omega) << "}";
  return os.str();
}

void append_record(std::ostream& os, const SwingRecord& rec,
                   const std::string& pad) {
  const Swing& sw = rec.swing;
  os << pad << "{\n";
  os << pad << "  \"swing\": {\n";
  os << pad << "    \"index\": " << sw.index << ",\n";
  os << pad << "    \"direction\": \"" << to_word(sw.direction) << "\",\n";
  os << pad << "    \"start\": " << state_token(sw.start) << ",\n";
  os << pad << "    \"end\": {\"kind\": \"" << to_word(sw.end.kind)
     << "\", \"direction\": \"" << to_word(sw.end.direction)
     << "\", \"level\": " << num_token(sw.end.level)
     << ", \"state\": " << state_token(sw.end.state) << "},\n";
  os << pad << "    \"peak\": " << state_token(sw.peak_ke) << "\n";
  os << pad << "  },\n";
  os << pad << "  \"a_acc\": " << num_token(rec.a_acc) << ",\n";
  os << pad << "  \"a_dec\": " << num_token(rec.a_dec) << ",\n";
  if (rec.a_sur)
    os << pad << "  \"a_sur\": " << num_token(*rec.a_sur) << ",\n";
  os << pad << "  \"margin\": " << num_token(rec.margin) << ",\n";
  os << pad << "  \"verdict\": \"" << to_word(rec.verdict) << "\"\n";
  os << pad << "}";
}

void append_report(std::ostream& os, const std::string& name,
                   const AssessmentReport& report, const std::string& pad) {
  os << pad << "{\n";
  os << pad << "  \"name\": " << quoted(name) << ",\n";
  os << pad << "  \"overall\": \"" << to_word(report.overall) << "\",\n";
  os << pad << "  \"min_margin\": " << num_token(report.min_margin) << ",\n";
  os << pad << "  \"terminating_event\": \""
     << to_word(report.terminating_event) << "\",\n";
  os << pad << "  \"records\": [";
  for (std::size_t i = 0; i < report.records.size(); ++i) {
    os << (i == 0 ? "\n" : ",\n");
    append_record(os, report.records[i], pad + "    ");
  }
  if (!report.records.empty()) os << "\n" << pad << "  ";
  os << "]\n";
  os << pad << "}";
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

void append_rows(std::ostream& os, const AssessmentReport& report,
                 const std::string& row_prefix) {
  for (const SwingRecord& rec : report.records) {
    os << row_prefix << rec.swing.index << ','
       << (rec.swing.direction == Direction::Forward ? 'F' : 'B') << ','
       << f4(rec.a_acc) << ',' << f4(rec.a_dec) << ','
       << (rec.a_sur ? f4(*rec.a_sur) : "") << ',' << f4(rec.margin) << ','
       << to_word(rec.verdict) << '\n';
  }
}

// ---- read-back helpers ----

double to_double(const json& j, const char* what) {
  if (j.is_number()) return j.get<double>();
  if (j.is_string()) {
    const std::string s = j.get<std::string>();
    if (s == "inf") return std::numeric_limits<double>::infinity();
    if (s == "-inf") return -std::numeric_limits<double>::infinity();
    if (s == "nan") return std::numeric_limits<double>::quiet_NaN();
  }
  throw ValidationError(std::string("report: ") + what + " is not a number");
}

double field_double(const json& j, const char* key) {
  if (!j.contains(key))
    throw ValidationError(std::string("report: missing key \"") + key + "\"");
  return to_double(j.at(key), key);
}

std::string field_string(const json& j, const char* key) {
  if (!j.contains(key) || !j.at(key).is_string())
    throw ValidationError(std::string("report: missing string \"") + key +
                          "\"");
  return j.at(key).get<std::string>();
}

Direction direction_from(const std::string& s) {
  if (s == "forward") return Direction::Forward;
  if (s == "backward") return Direction::Backward;
  throw ValidationError("report: unknown direction \"" + s + "\"");
}

EventKind kind_from(const std::string& s) {
  if (s == "turning_point") return EventKind::TurningPoint;
  if (s == "uep_cross") return EventKind::UepCross;
  if (s == "accel_zero") return EventKind::AccelZero;
  if (s == "escape") return EventKind::Escape;
  if (s == "converged") return EventKind::Converged;
  if (s == "time_limit") return EventKind::TimeLimit;
  throw ValidationError("report: unknown event kind \"" + s + "\"");
}

SwingVerdict verdict_from(const std::string& s) {
  if (s == "stable") return SwingVerdict::Stable;
  if (s == "unstable") return SwingVerdict::Unstable;
  if (s == "never_unstable_this_direction")
    return SwingVerdict::NeverUnstableThisDirection;
  throw ValidationError("report: unknown verdict \"" + s + "\"");
}

OverallVerdict overall_from(const std::string& s) {
  if (s == "stable") return OverallVerdict::Stable;
  if (s == "unstable") return OverallVerdict::Unstable;
  if (s == "undecided") return OverallVerdict::Undecided;
  throw ValidationError("report: unknown overall verdict \"" + s + "\"");
}

const json& field_object(const json& j, const char* key) {
  if (!j.contains(key) || !j.at(key).is_object())
    throw ValidationError(std::string("report: missing object \"") + key +
                          "\"");
  return j.at(key);
}

State state_from(const json& j, const char* what) {
  if (!j.is_object())
    throw ValidationError(std::string("report: ") + what + " is not an object");
  State s;
  s.t = field_double(j, "t");
  s.delta = field_double(j, "delta");
  s.omega = field_double(j, "omega");
  return s;
}

void write_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  out << text;
  out.flush();
  if (!out.good()) throw IoError("write failed for " + path.string());
}

void ensure_parent(const std::filesystem::path& prefix) {
  const std::filesystem::path parent = prefix.parent_path();
  if (parent.empty()) return;
  std::error_code ec;
  std::filesystem::create_directories(parent, ec);
  if (ec)
    throw IoError("cannot create directory " + parent.string() + ": " +
                  ec.message());
}

}  // namespace

std::string render_table(const AssessmentReport& report) {
  std::ostringstream os;
  os << "swing_index,direction,a_acc,a_dec,a_sur,margin,verdict\n";
  append_rows(os, report, "");
  return os.str();
}

std::string render_table(const std::vector<BatchEntry>& batch) {
  std::ostringstream os;
  os << "scenario,swing_index,direction,a_acc,a_dec,a_sur,margin,verdict\n";
  for (const BatchEntry& entry : batch)
    if (entry.report)
      append_rows(os, *entry.report, csv_field(entry.name) + ",");
  return os.str();
}

std::string render_structured(const std::string& name,
                              const AssessmentReport& report) {
  std::ostringstream os;
  append_report(os, name, report, "");
  os << "\n";
  return os.str();
}

std::string render_structured(const std::vector<BatchEntry>& batch) {
  std::ostringstream os;
  os << "[";
  for (std::size_t i = 0; i < batch.size(); ++i) {
    os << (i == 0 ? "\n" : ",\n");
    if (batch[i].report) {
      append_report(os, batch[i].name, *batch[i].report, "  ");
    } else {
      os << "  {\"name\": " << quoted(batch[i].name)
         << ", \"error\": " << quoted(batch[i].error) << "}";
    }
  }
  if (!batch.empty()) os << "\n";
  os << "]\n";
  return os.str();
}

NamedReport read_report(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("report: ") + e.what());
  }
  if (!doc.is_object()) throw ValidationError("report: expected an object");

  NamedReport out;
  out.name = field_string(doc, "name");
  out.report.overall = overall_from(field_string(doc, "overall"));
  out.report.min_margin = field_double(doc, "min_margin");
  out.report.terminating_event =
      kind_from(field_string(doc, "terminating_event"));

  if (!doc.contains("records") || !doc.at("records").is_array())
    throw ValidationError("report: missing records array");
  for (const json& jr : doc.at("records")) {
    if (!jr.is_object())
      throw ValidationError("report: record is not an object");
    SwingRecord rec;
    const json& js = field_object(jr, "swing");
    rec.swing.index = static_cast<int>(field_double(js, "index"));
    rec.swing.direction = direction_from(field_string(js, "direction"));
    rec.swing.start = state_from(field_object(js, "start"), "swing.start");
    const json& je = field_object(js, "end");
    rec.swing.end.kind = kind_from(field_string(je, "kind"));
    rec.swing.end.direction = direction_from(field_string(je, "direction"));
    rec.swing.end.level = field_double(je, "level");
    rec.swing.end.state =
        state_from(field_object(je, "state"), "swing.end.state");
    rec.swing.peak_ke = state_from(field_object(js, "peak"), "swing.peak");
    rec.a_acc = field_double(jr, "a_acc");
    rec.a_dec = field_double(jr, "a_dec");
    if (jr.contains("a_sur")) rec.a_sur = to_double(jr.at("a_sur"), "a_sur");
    rec.margin = field_double(jr, "margin");
    rec.verdict = verdict_from(field_string(jr, "verdict"));
    out.report.records.push_back(std::move(rec));
  }
  return out;
}

std::string render_pf_curve(const PolynomialOscillator& model, double lo,
                            double hi, int n) {
  if (!(lo < hi) || n < 2)
    throw InvalidOptions("pf curve needs lo < hi and n >= 2");
  std::ostringstream os;
  char buf[96];
  for (int i = 0; i < n; ++i) {
    const double d = lo + (hi - lo) * i / (n - 1);
    std::snprintf(buf, sizeof buf, "%.10g %.10g\n", d, eval_f(model, d));
    os << buf;
  }
  return os.str();
}

std::string render_trajectory(const PolynomialOscillator& model,
                              const Trajectory& traj) {
  std::ostringstream os;
  char buf[160];
  for (const State& s : traj.samples) {
    std::snprintf(buf, sizeof buf, "%.10g %.10g %.10g %.10g\n", s.t, s.delta,
                  s.omega, model.damping() * s.omega);
    os << buf;
  }
  return os.str();
}

std::string render_equilibria(const EquilibriumSet& eq) {
  std::ostringstream os;
  char buf[96];
  for (const Equilibrium& e : eq.all) {
    int code = 2;
    if (e.kind == EquilibriumKind::Sep) code = 0;
    if (e.kind == EquilibriumKind::Uep) code = 1;
    std::snprintf(buf, sizeof buf, "%.10g %d %.10g\n", e.location, code,
                  e.slope);
    os << buf;
  }
  return os.str();
}

std::string render_vector_field(const PolynomialOscillator& model,
                                double delta_lo, double delta_hi,
                                double omega_lo, double omega_hi, int n_delta,
                                int n_omega) {
  if (!(delta_lo < delta_hi) || !(omega_lo < omega_hi) || n_delta < 2 ||
      n_omega < 2)
    throw InvalidOptions("vector field needs ordered ranges and n >= 2");
  std::ostringstream os;
  char buf[160];
  for (int i = 0; i < n_delta; ++i) {
    const double d = delta_lo + (delta_hi - delta_lo) * i / (n_delta - 1);
    for (int k = 0; k < n_omega; ++k) {
      const double w = omega_lo + (omega_hi - omega_lo) * k / (n_omega - 1);
      double dd = 0.0, dw = 0.0;
      vector_field(model, State{0.0, d, w}, dd, dw);
      std::snprintf(buf, sizeof buf, "%.10g %.10g %.10g %.10g\n", d, w, dd,
                    dw);
      os << buf;
    }
  }
  return os.str();
}

std::vector<std::filesystem::path> emit_outputs(
    const std::string& name, const AssessOutput& out, ReportFormat format,
    const std::filesystem::path& prefix) {
  ensure_parent(prefix);
  std::vector<std::filesystem::path> paths;
  const std::string base = prefix.string();

  const std::filesystem::path report_path =
      base + (format == ReportFormat::Table ? "_report.csv" : "_report.json");
  write_file(report_path, format == ReportFormat::Table
                              ? render_table(out.report)
                              : render_structured(name, out.report));
  paths.push_back(report_path);

  // Display window: the well plus a margin, widened to cover the trajectory.
  const EquilibriumSet& eq = out.equilibria;
  double lo = eq.left_uep ? eq.left_uep->location - 1.0 : -escape_bound(eq);
  double hi = eq.right_uep ? eq.right_uep->location + 1.0 : escape_bound(eq);
  double wmax = 1.0;
  for (const State& s : out.trajectory.samples) {
    lo = std::min(lo, s.delta);
    hi = std::max(hi, s.delta);
    wmax = std::max(wmax, std::abs(s.omega));
  }

  const std::filesystem::path pf_path = base + "_pf_curve.dat";
  write_file(pf_path, render_pf_curve(out.model, lo, hi, 401));
  paths.push_back(pf_path);

  const std::filesystem::path traj_path = base + "_trajectory.dat";
  write_file(traj_path, render_trajectory(out.model, out.trajectory));
  paths.push_back(traj_path);

  const std::filesystem::path eq_path = base + "_equilibria.dat";
  write_file(eq_path, render_equilibria(eq));
  paths.push_back(eq_path);

  const std::filesystem::path field_path = base + "_vector_field.dat";
  write_file(field_path, render_vector_field(out.model, lo, hi, -1.1 * wmax,
                                             1.1 * wmax, 25, 25));
  paths.push_back(field_path);
  return paths;
}

std::vector<std::filesystem::path> emit_outputs(
    const std::vector<BatchEntry>& batch, ReportFormat format,
    const std::filesystem::path& prefix) {
  ensure_parent(prefix);
  const std::filesystem::path report_path =
      prefix.string() +
      (format == ReportFormat::Table ? "_report.csv" : "_report.json");
  write_file(report_path, format == ReportFormat::Table
                              ? render_table(batch)
                              : render_structured(batch));
  return {report_path};
}

}  // namespace geac
