#pragma once

#include <string>

#include "helm/scenario.hpp"

namespace helm {

/// Assumption and lemma verdicts plus the tuned tube geometry for a scenario.
/// tube_radius_param is the parametrisation limit 1/kappa_max; the sigma tube
/// is the smaller region certified by the look-ahead tuning.
struct FeasibilityReport {
  double V_max = 0.0;
  double u_rd_min = 0.0;
  double u_rd_max = 0.0;
  double X_max = 0.0;
  double Y_min = 0.0;
  double kappa_max = 0.0;
  double lemma2_bound = 0.0;  // Y_min / X_max
  double sigma = 0.0;
  double delta_bound = 0.0;   // smallest admissible look-ahead for this sigma
  double tube_radius_param = 0.0;
  double tube_radius_sigma = 0.0;

  bool assumption1 = false;  // current within its bound
  bool assumption2 = false;  // Y negative over the operating interval
  bool assumption3 = false;  // 2*V_max below the slowest reference speed
  bool lemma2 = false;       // kappa_max < Y_min/X_max
  bool lemma3 = false;       // sigma in (0,1) with the curvature margin
  bool delta_ok = false;     // Y_min - 4*X_max/Delta > 0

  double assumption2_margin = 0.0;  // -max Y over the interval
  double assumption3_margin = 0.0;  // u_rd_min - 2*V_max

  bool pass() const {
    return assumption1 && assumption2 && assumption3 && lemma2 && lemma3 && delta_ok;
  }
};

struct AssumptionVerdicts {
  bool a1 = false, a2 = false, a3 = false;
  double a1_margin = 0.0, a2_margin = 0.0, a3_margin = 0.0;
};

/// Assumption checks; Y is affine so the interval extremes suffice.
AssumptionVerdicts check_assumptions(const Environment& env, const ReferenceProfile& ref,
                                     const VesselParams& vessel);

/// Look-ahead tuning: solve the Delta inequality at equality for the smallest
/// admissible sigma, then size the certified tube as (1 - sigma)/kappa_max.
FeasibilityReport tune(const PathGeometry& path, const VesselParams& vessel,
                       const Environment& env, const ReferenceProfile& ref, double Delta);

/// Full per-scenario report (assumptions + tuning).
FeasibilityReport check_scenario(const ScenarioConfig& cfg);

std::string report_to_json(const FeasibilityReport& r);
std::string report_to_text(const FeasibilityReport& r);

}  // namespace helm
