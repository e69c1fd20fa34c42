#include <cmath>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include "doctest.h"

#include "geac/eac_classical.hpp"
#include "geac/errors.hpp"
#include "geac/scenario.hpp"

using namespace geac;

namespace {

const std::filesystem::path kData = GEAC_TEST_DATA_DIR;

std::string minimal(const std::string& extra = "") {
  return R"({
    "model": { "polynomial": { "damping": 0.0, "coeffs": [0.2649] } },
    "start": { "state": { "delta": 0.1, "omega": 0.0 } })" +
         extra + "\n}";
}

}  // namespace

TEST_SUITE("scenario") {

TEST_CASE("benchmark file parses to the exact model and state") {
  const Scenario sc = load_scenario(kData / "benchmark_A_case1.json");
  CHECK(sc.name == "benchmark_A_case1");
  REQUIRE(sc.polynomial.has_value());
  CHECK(sc.polynomial->damping == 4.42e-4);
  CHECK(sc.polynomial->coeffs ==
        std::vector<double>{0.2649, -0.0503, -0.04414});
  CHECK(sc.polynomial->kappa == 1.0);
  REQUIRE(sc.state_start.has_value());
  CHECK(sc.state_start->delta == 0.13);
  CHECK(sc.state_start->omega == -5.2779);
  CHECK(sc.max_swings == 50);

  const ResolvedScenario rs = resolve(sc);
  CHECK(rs.init.t == 0.0);
  CHECK(rs.init.delta == 0.13);
  CHECK(rs.init.omega == -5.2779);
  CHECK(rs.model.damping() == 4.42e-4);
}

TEST_CASE("unknown keys are rejected at every level") {
  const char* docs[] = {
      R"({"oops": 1,
          "model": {"polynomial": {"damping": 0, "coeffs": [1.0]}},
          "start": {"state": {"delta": 0, "omega": 0}}})",
      R"({"model": {"polynomial": {"damping": 0, "coeffs": [1.0], "x": 2}},
          "start": {"state": {"delta": 0, "omega": 0}}})",
      R"({"model": {"polynomial": {"damping": 0, "coeffs": [1.0]}},
          "start": {"state": {"delta": 0, "omega": 0, "speed": 0}}})",
      R"({"model": {"polynomial": {"damping": 0, "coeffs": [1.0]}},
          "start": {"state": {"delta": 0, "omega": 0}},
          "integrator": {"rtol": 1e-8, "tighten": true}})",
      R"({"model": {"polynomial": {"damping": 0, "coeffs": [1.0]}},
          "start": {"state": {"delta": 0, "omega": 0}},
          "analysis": {"max_swing": 3}})",
  };
  for (const char* doc : docs)
    CHECK_THROWS_AS(parse_scenario(doc), ValidationError);

  CHECK_THROWS_AS(load_scenario(kData / "malformed.json"), ValidationError);
}

TEST_CASE("exactly one model and exactly one start") {
  CHECK_THROWS_AS(
      parse_scenario(
          R"({"model": {},
              "start": {"state": {"delta": 0, "omega": 0}}})"),
      ValidationError);
  CHECK_THROWS_AS(
      parse_scenario(
          R"({"model": {"polynomial": {"damping": 0, "coeffs": [1.0]},
                        "smib": {"inertia": 4.5, "damping": 0,
                                 "sync_speed": 377, "pm": 1, "pmax": 1.5,
                                 "taylor_order": 3}},
              "start": {"state": {"delta": 0, "omega": 0}}})"),
      ValidationError);
  CHECK_THROWS_AS(
      parse_scenario(
          R"({"model": {"polynomial": {"damping": 0, "coeffs": [1.0]}},
              "start": {}})"),
      ValidationError);
  CHECK_THROWS_AS(parse_scenario(R"({"start": {"state":
                      {"delta": 0, "omega": 0}}})"),
                  ValidationError);
}

TEST_CASE("schema type and range violations") {
  // coeffs must be a non-empty numeric array
  CHECK_THROWS_AS(
      parse_scenario(
          R"({"model": {"polynomial": {"damping": 0, "coeffs": []}},
              "start": {"state": {"delta": 0, "omega": 0}}})"),
      ValidationError);
  CHECK_THROWS_AS(
      parse_scenario(
          R"({"model": {"polynomial": {"damping": 0, "coeffs": ["a"]}},
              "start": {"state": {"delta": 0, "omega": 0}}})"),
      ValidationError);
  // taylor_order must be a positive integer
  CHECK_THROWS_AS(
      parse_scenario(
          R"({"model": {"smib": {"inertia": 4.5, "damping": 0,
                                 "sync_speed": 377, "pm": 1, "pmax": 1.5,
                                 "taylor_order": 0}},
              "start": {"state": {"delta": 0, "omega": 0}}})"),
      ValidationError);
  // no post-fault SEP
  CHECK_THROWS_AS(
      parse_scenario(
          R"({"model": {"smib": {"inertia": 4.5, "damping": 0,
                                 "sync_speed": 377, "pm": 2.0, "pmax": 1.5,
                                 "taylor_order": 3}},
              "start": {"state": {"delta": 0, "omega": 0}}})"),
      ValidationError);
  // integrator overrides must be positive
  CHECK_THROWS_AS(parse_scenario(minimal(R"(, "integrator": {"rtol": 0})")),
                  ValidationError);
  CHECK_THROWS_AS(parse_scenario(minimal(R"(, "analysis": {"max_swings": 0})")),
                  ValidationError);
}

TEST_CASE("fault-start field mixing is rejected") {
  const std::string poly_head =
      R"({"model": {"polynomial": {"damping": 0, "coeffs": [1.0]}},)";
  // clears before it occurs
  CHECK_THROWS_AS(
      parse_scenario(poly_head +
                     R"("start": {"fault": {"t0": 1.0, "tc": 0.5,
                        "pre_delta": 0.1,
                        "fault_on": {"damping": 0, "coeffs": [-0.3]}}}})"),
      ValidationError);
  // smib fields with nothing else
  CHECK_THROWS_AS(
      parse_scenario(poly_head +
                     R"("start": {"fault": {"tc": 0.5, "pmax_pre": 2.0}}})"),
      ValidationError);
  // both families at once
  CHECK_THROWS_AS(
      parse_scenario(poly_head +
                     R"("start": {"fault": {"tc": 0.5, "pmax_pre": 2.0,
                        "pmax_on": 0.8, "pre_delta": 0.1,
                        "fault_on": {"damping": 0, "coeffs": [-0.3]}}}})"),
      ValidationError);
  // polynomial fault start missing its polynomial
  CHECK_THROWS_AS(
      parse_scenario(poly_head +
                     R"("start": {"fault": {"tc": 0.5, "pre_delta": 0.1}}})"),
      ValidationError);
  // smib model given polynomial fault fields
  CHECK_THROWS_AS(
      resolve(parse_scenario(
          R"({"model": {"smib": {"inertia": 4.5, "damping": 0,
                                 "sync_speed": 377, "pm": 1, "pmax": 1.5,
                                 "taylor_order": 3}},
              "start": {"fault": {"tc": 0.5, "pre_delta": 0.1,
                        "fault_on": {"damping": 0, "coeffs": [-0.3]}}}})")),
      ValidationError);
}

TEST_CASE("malformed JSON surfaces as a parse error") {
  CHECK_THROWS_AS(parse_scenario("{ not json"), ParseError);
  CHECK_THROWS_AS(load_scenario(kData / "broken_syntax.json"), ParseError);
  CHECK_THROWS_AS(load_scenario(kData / "no_such_file.json"), IoError);
}

TEST_CASE("integrator and analysis overrides reach the resolved options") {
  const Scenario sc = parse_scenario(minimal(
      R"(, "integrator": {"rtol": 1e-8, "atol": 1e-10, "max_time": 33.0,
                          "escape_delta": 9.0},
          "analysis": {"max_swings": 7})"));
  CHECK(sc.integrate.rtol == 1e-8);
  CHECK(sc.integrate.max_time == 33.0);
  CHECK(sc.max_swings == 7);

  const ResolvedScenario rs = resolve(sc);
  CHECK(rs.options.integrate.rtol == 1e-8);
  CHECK(rs.options.integrate.atol == 1e-10);
  CHECK(rs.options.integrate.max_time == 33.0);
  CHECK(rs.options.integrate.escape_delta == 9.0);
  CHECK(rs.options.max_swings == 7);
}

TEST_CASE("kappa scales the restoring coefficients, override wins") {
  const std::string doc =
      R"({"model": {"polynomial": {"damping": 0, "coeffs": [0.2649],
                                   "kappa": 2.0}},
          "start": {"state": {"delta": 0.1, "omega": 0}}})";
  const Scenario sc = parse_scenario(doc);
  const PolynomialOscillator file_kappa = build_model(sc);
  CHECK(file_kappa.kappa() == 2.0);
  CHECK(file_kappa.coeffs()[0] == doctest::Approx(0.5298));
  CHECK(file_kappa.base_coeffs()[0] == 0.2649);

  const PolynomialOscillator overridden = build_model(sc, 3.0);
  CHECK(overridden.kappa() == 3.0);
  CHECK(overridden.coeffs()[0] == doctest::Approx(0.7947));
}

TEST_CASE("polynomial fault start integrates the fault-on dynamics") {
  // fault_on holds a constant acceleration of +0.3, so the clearance state
  // is rest + uniformly accelerated motion.
  const Scenario sc = load_scenario(kData / "poly_fault.json");
  const ResolvedScenario rs = resolve(sc);
  CHECK(rs.init.t == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(rs.init.omega == doctest::Approx(0.3 * 0.5).epsilon(1e-9));
  CHECK(rs.init.delta ==
        doctest::Approx(0.1 + 0.5 * 0.3 * 0.25).epsilon(1e-9));
}

TEST_CASE("smib fault start matches the classical fault-on integration") {
  const Scenario sc = load_scenario(kData / "smib_fault.json");
  const ResolvedScenario rs = resolve(sc);

  SmibScenario ref;
  ref.h = 4.5;
  ref.d = 0.0;
  ref.omega_s = 377.0;
  ref.pm = 1.0;
  ref.pmax_pre = 2.0;
  ref.pmax_on = 0.8;
  ref.pmax_post = 1.5;
  ref.t0 = 0.0;
  ref.tc = 0.25;
  const State clearance = fault_on_state_at_time(ref);
  const double post_sep = smib_equilibria(phase_params(ref, 3)).delta_s;

  CHECK(rs.init.t == doctest::Approx(0.25));
  CHECK(rs.init.omega == doctest::Approx(clearance.omega).epsilon(1e-9));
  CHECK(rs.init.delta ==
        doctest::Approx(clearance.delta - post_sep).epsilon(1e-9));
  CHECK(rs.init.omega > 0.0);
}

TEST_CASE("a set file holds one scenario or many") {
  const auto set = load_scenario_set(kData / "corpus_set.json");
  REQUIRE(set.size() == 5);
  CHECK(set[0].name == "safe");
  CHECK(set[4].name == "smib_flat");

  // single-object files load as a one-element set
  const auto single = load_scenario_set(kData / "undamped_kick.json");
  REQUIRE(single.size() == 1);
  CHECK(single[0].name == "undamped_kick");

  // an unnamed member inherits the stem plus its position
  const auto parsed = parse_scenario_set(
      R"([{"model": {"polynomial": {"damping": 0, "coeffs": [1.0]}},
           "start": {"state": {"delta": 0, "omega": 0}}}])");
  REQUIRE(parsed.size() == 1);

  CHECK(parse_scenario_set("[]").empty());
  // a plain scenario parser refuses arrays
  CHECK_THROWS_AS(
      parse_scenario(
          R"([{"model": {"polynomial": {"damping": 0, "coeffs": [1.0]}},
               "start": {"state": {"delta": 0, "omega": 0}}}])"),
      ValidationError);
}

TEST_CASE("nameless file scenarios take the file stem") {
  namespace fs = std::filesystem;
  const fs::path tmp = fs::temp_directory_path() / "stem_probe.json";
  {
    std::ofstream out(tmp);
    out << minimal();
  }
  const Scenario sc = load_scenario(tmp);
  CHECK(sc.name == "stem_probe");
  fs::remove(tmp);
}

}  // TEST_SUITE
