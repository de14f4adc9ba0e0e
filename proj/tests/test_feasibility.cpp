#include <doctest.h>

#include <cmath>

#include "helm/feasibility.hpp"
#include "helpers.hpp"

using namespace helm;

TEST_CASE("case-study constants from the tuning procedure") {
  const ScenarioConfig cfg = test::case_study_config();
  const FeasibilityReport r = check_scenario(cfg);
  CHECK(r.V_max == doctest::Approx(1.5620).epsilon(1e-3));
  CHECK(r.kappa_max == 0.0025);
  CHECK(r.lemma2_bound == doctest::Approx(0.1333).epsilon(0.01));
  // sigma solved at the look-ahead inequality boundary, then the tube.
  CHECK(r.sigma == doctest::Approx(r.X_max * r.kappa_max / (r.Y_min - 4.0 * r.X_max / 40.0))
                       .epsilon(1e-15));
  CHECK(r.tube_radius_sigma == doctest::Approx((1.0 - r.sigma) / r.kappa_max).epsilon(1e-15));
  CHECK(r.tube_radius_sigma == doctest::Approx(369.983).epsilon(0.005));
  CHECK(r.tube_radius_param == doctest::Approx(400.0));
  CHECK(r.tube_radius_sigma <= r.tube_radius_param);
  CHECK(r.pass());
}

TEST_CASE("assumption 3 margin flips with a slow reference") {
  ScenarioConfig cfg = test::case_study_config();
  const AssumptionVerdicts ok = check_assumptions(cfg.environment, cfg.reference, cfg.vessel);
  CHECK(ok.a3);
  CHECK(ok.a3_margin == doctest::Approx(5.0 - 2.0 * cfg.environment.speed()));

  cfg.reference.constant = 3.0;  // 2*1.562 = 3.124 > 3
  const AssumptionVerdicts bad = check_assumptions(cfg.environment, cfg.reference, cfg.vessel);
  CHECK(!bad.a3);
  CHECK(bad.a3_margin < 0.0);
}

TEST_CASE("zero current passes trivially") {
  ScenarioConfig cfg = test::case_study_config();
  cfg.environment = Environment{0.0, 0.0, 0.0};
  const AssumptionVerdicts v = check_assumptions(cfg.environment, cfg.reference, cfg.vessel);
  CHECK(v.a1);
  CHECK(v.a2);
  CHECK(v.a3);
}

TEST_CASE("growing look-ahead drives sigma to its limit and widens the tube") {
  const ScenarioConfig cfg = test::case_study_config();
  const PathGeometry path = cfg.path.build();
  const FeasibilityReport r = tune(path, cfg.vessel, cfg.environment, cfg.reference, 1e9);
  const double sigma_limit = r.kappa_max * r.X_max / r.Y_min;
  CHECK(r.sigma == doctest::Approx(sigma_limit).epsilon(1e-6));
  CHECK(r.tube_radius_sigma == doctest::Approx((1.0 - sigma_limit) / r.kappa_max).epsilon(1e-6));
}

TEST_CASE("straight line: sigma is zero and the tube unbounded") {
  ScenarioConfig cfg = test::case_study_config();
  cfg.path.kind = PathGeometry::Kind::line;
  const FeasibilityReport r = check_scenario(cfg);
  CHECK(r.sigma == 0.0);
  CHECK(std::isinf(r.tube_radius_sigma));
  CHECK(r.pass());
}

TEST_CASE("look-ahead below the feasible range is rejected") {
  const ScenarioConfig cfg = test::case_study_config();
  const PathGeometry path = cfg.path.build();
  // Y_min - 4*X_max/Delta <= 0 for small Delta.
  const FeasibilityReport r = tune(path, cfg.vessel, cfg.environment, cfg.reference, 5.0);
  CHECK(!r.delta_ok);
  CHECK(!r.pass());
}

TEST_CASE("tight circle violates the curvature bound") {
  ScenarioConfig cfg = test::case_study_config();
  cfg.path.radius = 5.0;
  const FeasibilityReport r = check_scenario(cfg);
  CHECK(r.kappa_max == doctest::Approx(0.2));
  CHECK(!r.lemma2);
  CHECK(!r.pass());
}

TEST_CASE("monotonicity: larger Delta means smaller sigma and larger tube") {
  const ScenarioConfig cfg = test::case_study_config();
  const PathGeometry path = cfg.path.build();
  double prev_sigma = 1e9, prev_tube = -1e9;
  for (double Delta : {35.0, 40.0, 60.0, 100.0, 200.0}) {
    const FeasibilityReport r = tune(path, cfg.vessel, cfg.environment, cfg.reference, Delta);
    REQUIRE(r.delta_ok);
    CHECK(r.sigma < prev_sigma);
    CHECK(r.tube_radius_sigma > prev_tube);
    prev_sigma = r.sigma;
    prev_tube = r.tube_radius_sigma;
  }
}

TEST_CASE("report is a pure function of its inputs") {
  const ScenarioConfig cfg = test::case_study_config();
  const FeasibilityReport a = check_scenario(cfg);
  const FeasibilityReport b = check_scenario(cfg);
  CHECK(report_to_json(a) == report_to_json(b));
  CHECK(report_to_text(a).find("overall") != std::string::npos);
}
