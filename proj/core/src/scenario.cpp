#include "geac/scenario.hpp"

#include <cmath>
#include <fstream>
#include <initializer_list>
#include <sstream>
#include <string>

#include "json.hpp"

#include "geac/eac_classical.hpp"
#include "geac/errors.hpp"
#include "geac/integrator.hpp"

namespace geac {

namespace {

using nlohmann::json;

[[noreturn]] void bad(const std::string& path, const std::string& why) {
  throw ValidationError(path + ": " + why);
}

void require_object(const json& j, const std::string& path) {
  if (!j.is_object()) bad(path, "expected an object");
}

// Strict schema: anything not in the allowed list is an error.
void check_keys(const json& j, const std::string& path,
                std::initializer_list<const char*> allowed) {
  for (const auto& item : j.items()) {
    bool known = false;
    for (const char* k : allowed)
      if (item.key() == k) {
        known = true;
        break;
      }
    if (!known) bad(path, "unknown key \"" + item.key() + "\"");
  }
}

double as_number(const json& j, const std::string& path) {
  if (!j.is_number()) bad(path, "expected a number");
  const double v = j.get<double>();
  if (!std::isfinite(v)) bad(path, "must be finite");
  return v;
}

double need_number(const json& j, const std::string& path, const char* key) {
  if (!j.contains(key)) bad(path, std::string("missing key \"") + key + "\"");
  return as_number(j.at(key), path + "." + key);
}

double opt_number(const json& j, const std::string& path, const char* key,
                  double fallback) {
  if (!j.contains(key)) return fallback;
  return as_number(j.at(key), path + "." + key);
}

int need_integer(const json& j, const std::string& path, const char* key) {
  if (!j.contains(key)) bad(path, std::string("missing key \"") + key + "\"");
  const json& v = j.at(key);
  if (!v.is_number_integer()) bad(path + "." + key, "expected an integer");
  return v.get<int>();
}

std::vector<double> need_array(const json& j, const std::string& path,
                               const char* key) {
  if (!j.contains(key)) bad(path, std::string("missing key \"") + key + "\"");
  const json& arr = j.at(key);
  const std::string apath = path + "." + key;
  if (!arr.is_array()) bad(apath, "expected an array of numbers");
  std::vector<double> out;
  out.reserve(arr.size());
  for (std::size_t i = 0; i < arr.size(); ++i)
    out.push_back(as_number(arr[i], apath + "[" + std::to_string(i) + "]"));
  return out;
}

PolynomialModelSpec parse_polynomial_model(const json& j,
                                           const std::string& path) {
  require_object(j, path);
  check_keys(j, path, {"damping", "coeffs", "constant", "kappa"});
  PolynomialModelSpec spec;
  spec.damping = need_number(j, path, "damping");
  spec.coeffs = need_array(j, path, "coeffs");
  spec.constant = opt_number(j, path, "constant", 0.0);
  spec.kappa = opt_number(j, path, "kappa", 1.0);
  if (spec.coeffs.empty()) bad(path + ".coeffs", "must not be empty");
  return spec;
}

SmibModelSpec parse_smib_model(const json& j, const std::string& path) {
  require_object(j, path);
  check_keys(j, path,
             {"inertia", "damping", "sync_speed", "pm", "pmax",
              "taylor_order", "kappa"});
  SmibModelSpec spec;
  spec.params.h = need_number(j, path, "inertia");
  spec.params.d = need_number(j, path, "damping");
  spec.params.omega_s = need_number(j, path, "sync_speed");
  spec.params.pm = need_number(j, path, "pm");
  spec.params.pmax = need_number(j, path, "pmax");
  spec.taylor_order = need_integer(j, path, "taylor_order");
  spec.kappa = opt_number(j, path, "kappa", 1.0);
  if (spec.taylor_order < 1) bad(path + ".taylor_order", "must be >= 1");
  try {
    validate(spec.params);
  } catch (const InputError& e) {
    bad(path, e.what());
  }
  return spec;
}

FaultStart parse_fault_start(const json& j, const std::string& path,
                             bool model_is_smib) {
  require_object(j, path);
  check_keys(j, path,
             {"t0", "tc", "pmax_pre", "pmax_on", "fault_on", "pre_delta"});
  FaultStart fs;
  fs.t0 = opt_number(j, path, "t0", 0.0);
  fs.tc = need_number(j, path, "tc");
  if (!(fs.tc > fs.t0)) bad(path, "tc must exceed t0");

  const bool smib_fields = j.contains("pmax_pre") || j.contains("pmax_on");
  const bool poly_fields = j.contains("fault_on") || j.contains("pre_delta");
  if (smib_fields && poly_fields)
    bad(path, "mixes SMIB fault fields with polynomial fault fields");
  if (model_is_smib) {
    if (!j.contains("pmax_pre") || !j.contains("pmax_on"))
      bad(path, "SMIB fault needs both pmax_pre and pmax_on");
    fs.pmax_pre = need_number(j, path, "pmax_pre");
    fs.pmax_on = need_number(j, path, "pmax_on");
  } else {
    if (!j.contains("fault_on") || !j.contains("pre_delta"))
      bad(path, "polynomial fault needs both fault_on and pre_delta");
    const json& fo = j.at("fault_on");
    const std::string fpath = path + ".fault_on";
    require_object(fo, fpath);
    check_keys(fo, fpath, {"damping", "coeffs"});
    RawPolynomial raw;
    raw.damping = need_number(fo, fpath, "damping");
    raw.coeffs = need_array(fo, fpath, "coeffs");
    if (raw.coeffs.empty()) bad(fpath + ".coeffs", "must not be empty");
    fs.fault_on = std::move(raw);
    fs.pre_delta = need_number(j, path, "pre_delta");
  }
  return fs;
}

Scenario parse_scenario_json(const json& j, const std::string& path) {
  require_object(j, path);
  check_keys(j, path, {"name", "model", "start", "integrator", "analysis"});

  Scenario sc;
  if (j.contains("name")) {
    if (!j.at("name").is_string()) bad(path + ".name", "expected a string");
    sc.name = j.at("name").get<std::string>();
  }

  if (!j.contains("model")) bad(path, "missing key \"model\"");
  const json& model = j.at("model");
  const std::string mpath = path + ".model";
  require_object(model, mpath);
  check_keys(model, mpath, {"polynomial", "smib"});
  if (model.contains("polynomial") == model.contains("smib"))
    bad(mpath, "exactly one of polynomial or smib is required");
  if (model.contains("polynomial"))
    sc.polynomial =
        parse_polynomial_model(model.at("polynomial"), mpath + ".polynomial");
  else
    sc.smib = parse_smib_model(model.at("smib"), mpath + ".smib");

  if (!j.contains("start")) bad(path, "missing key \"start\"");
  const json& start = j.at("start");
  const std::string spath = path + ".start";
  require_object(start, spath);
  check_keys(start, spath, {"state", "fault"});
  if (start.contains("state") == start.contains("fault"))
    bad(spath, "exactly one of state or fault is required");
  if (start.contains("state")) {
    const json& st = start.at("state");
    const std::string stpath = spath + ".state";
    require_object(st, stpath);
    check_keys(st, stpath, {"delta", "omega"});
    StateStart ss;
    ss.delta = need_number(st, stpath, "delta");
    ss.omega = need_number(st, stpath, "omega");
    sc.state_start = ss;
  } else {
    sc.fault_start = parse_fault_start(start.at("fault"), spath + ".fault",
                                       sc.smib.has_value());
  }

  if (j.contains("integrator")) {
    const json& integ = j.at("integrator");
    const std::string ipath = path + ".integrator";
    require_object(integ, ipath);
    check_keys(integ, ipath, {"rtol", "atol", "max_time", "escape_delta"});
    sc.integrate.rtol = opt_number(integ, ipath, "rtol", sc.integrate.rtol);
    sc.integrate.atol = opt_number(integ, ipath, "atol", sc.integrate.atol);
    sc.integrate.max_time =
        opt_number(integ, ipath, "max_time", sc.integrate.max_time);
    if (integ.contains("escape_delta"))
      sc.integrate.escape_delta = need_number(integ, ipath, "escape_delta");
    if (sc.integrate.rtol <= 0.0) bad(ipath + ".rtol", "must be positive");
    if (sc.integrate.atol <= 0.0) bad(ipath + ".atol", "must be positive");
    if (sc.integrate.max_time <= 0.0)
      bad(ipath + ".max_time", "must be positive");
    if (sc.integrate.escape_delta <= 0.0)
      bad(ipath + ".escape_delta", "must be positive");
  }

  if (j.contains("analysis")) {
    const json& an = j.at("analysis");
    const std::string apath = path + ".analysis";
    require_object(an, apath);
    check_keys(an, apath, {"max_swings"});
    if (an.contains("max_swings")) {
      sc.max_swings = need_integer(an, apath, "max_swings");
      if (sc.max_swings < 1) bad(apath + ".max_swings", "must be >= 1");
    }
  }
  return sc;
}

json parse_document(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("scenario: ") + e.what());
  }
}

std::string slurp(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  if (in.bad()) throw IoError("cannot read " + path.string());
  return buf.str();
}

}  // namespace

Scenario parse_scenario(const std::string& text) {
  const json doc = parse_document(text);
  if (doc.is_array()) bad("scenario", "expected a single scenario object");
  return parse_scenario_json(doc, "scenario");
}

std::vector<Scenario> parse_scenario_set(const std::string& text) {
  const json doc = parse_document(text);
  std::vector<Scenario> out;
  if (doc.is_array()) {
    for (std::size_t i = 0; i < doc.size(); ++i)
      out.push_back(parse_scenario_json(
          doc[i], "scenario[" + std::to_string(i) + "]"));
  } else {
    out.push_back(parse_scenario_json(doc, "scenario"));
  }
  return out;
}

Scenario load_scenario(const std::filesystem::path& path) {
  Scenario sc = parse_scenario(slurp(path));
  if (sc.name.empty()) sc.name = path.stem().string();
  return sc;
}

std::vector<Scenario> load_scenario_set(const std::filesystem::path& path) {
  std::vector<Scenario> set = parse_scenario_set(slurp(path));
  for (std::size_t i = 0; i < set.size(); ++i)
    if (set[i].name.empty())
      set[i].name = path.stem().string() + "[" + std::to_string(i) + "]";
  return set;
}

PolynomialOscillator build_model(const Scenario& sc,
                                 std::optional<double> kappa_override) {
  if (sc.polynomial) {
    const PolynomialModelSpec& p = *sc.polynomial;
    const double kappa = kappa_override.value_or(p.kappa);
    if (p.constant != 0.0)
      return PolynomialOscillator::from_raw(p.damping, p.constant, p.coeffs,
                                            kappa);
    return PolynomialOscillator(p.damping, p.coeffs, kappa);
  }
  const SmibModelSpec& m = *sc.smib;
  return from_smib_taylor(m.params, true, m.taylor_order,
                          kappa_override.value_or(m.kappa));
}

ResolvedScenario resolve(const Scenario& sc,
                         std::optional<double> kappa_override) {
  PolynomialOscillator model = build_model(sc, kappa_override);
  AssessOptions options;
  options.max_swings = sc.max_swings;
  options.integrate = sc.integrate;

  State init{0.0, 0.0, 0.0};
  if (sc.state_start) {
    init.delta = sc.state_start->delta;
    init.omega = sc.state_start->omega;
  } else {
    const FaultStart& fs = *sc.fault_start;
    if (sc.smib) {
      const SmibParams& post = sc.smib->params;
      SmibScenario timeline;
      timeline.h = post.h;
      timeline.d = post.d;
      timeline.omega_s = post.omega_s;
      timeline.pm = post.pm;
      timeline.pmax_pre = *fs.pmax_pre;
      timeline.pmax_on = *fs.pmax_on;
      timeline.pmax_post = post.pmax;
      timeline.t0 = fs.t0;
      timeline.tc = fs.tc;
      const State clearance = fault_on_state_at_time(timeline);
      // Hand off in the post-fault model's SEP-relative coordinates.
      const double sep = smib_equilibria(post).delta_s;
      init = State{clearance.t, clearance.delta - sep, clearance.omega};
    } else {
      RawPolynomialDynamics dyn(*fs.fault_on);
      IntegrateOptions opt;
      opt.max_time = fs.tc - fs.t0;
      opt.escape_delta = 1e6;  // the horizon, not distance, ends this run
      opt.watch_turning = false;
      opt.watch_accel = false;
      const Trajectory traj = integrate_with_events(
          dyn, State{fs.t0, *fs.pre_delta, 0.0}, opt);
      init = traj.samples.back();
    }
  }
  return ResolvedScenario{sc.name, std::move(model), init,
                          std::move(options)};
}

}  // namespace geac
