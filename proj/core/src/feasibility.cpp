#include "helm/feasibility.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include <json.hpp>

namespace helm {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// |X| and |Y| extremes over u_r in [-V_max, u_rd_max]; both are affine.
void hydro_extremes(const VesselParams& vessel, double V_max, double u_hi, double& X_max,
                    double& Y_min, double& Y_max_signed) {
  const HydroCoeffs c = hydro_coeffs(vessel);
  const double lo = -V_max;
  X_max = std::max(std::abs(c.X(lo)), std::abs(c.X(u_hi)));
  Y_max_signed = std::max(c.Y(lo), c.Y(u_hi));
  Y_min = std::min(std::abs(c.Y(lo)), std::abs(c.Y(u_hi)));
}

nlohmann::json num_or_sentinel(double v) {
  if (std::isinf(v)) return "inf";
  return v;
}

}  // namespace

AssumptionVerdicts check_assumptions(const Environment& env, const ReferenceProfile& ref,
                                     const VesselParams& vessel) {
  AssumptionVerdicts v;
  v.a1_margin = env.Vmax - env.speed();
  v.a1 = v.a1_margin >= -1e-12;

  double X_max = 0.0, Y_min = 0.0, Y_max_signed = 0.0;
  hydro_extremes(vessel, env.Vmax, ref.max_u_rd(), X_max, Y_min, Y_max_signed);
  v.a2_margin = -Y_max_signed;
  v.a2 = Y_max_signed < 0.0;

  v.a3_margin = ref.min_u_rd() - 2.0 * env.Vmax;
  v.a3 = v.a3_margin > 0.0;
  return v;
}

FeasibilityReport tune(const PathGeometry& path, const VesselParams& vessel,
                       const Environment& env, const ReferenceProfile& ref, double Delta) {
  FeasibilityReport r;
  r.V_max = env.Vmax;
  r.u_rd_min = ref.min_u_rd();
  r.u_rd_max = ref.max_u_rd();
  r.kappa_max = path.kappa_max();
  r.tube_radius_param = path.tube_radius();

  double Y_max_signed = 0.0;
  hydro_extremes(vessel, env.Vmax, r.u_rd_max, r.X_max, r.Y_min, Y_max_signed);
  r.lemma2_bound = r.Y_min / r.X_max;
  r.lemma2 = r.kappa_max < r.lemma2_bound;

  const double denom = r.Y_min - 4.0 * r.X_max / Delta;
  r.delta_ok = denom > 0.0;
  if (r.kappa_max == 0.0) {
    // Straight path: no curvature margin is consumed.
    r.sigma = 0.0;
    r.tube_radius_sigma = kInf;
    r.delta_bound = r.delta_ok ? 0.0 : kInf;
    r.lemma3 = r.delta_ok;
    return r;
  }
  if (!r.delta_ok) {
    r.sigma = kInf;
    r.tube_radius_sigma = 0.0;
    r.delta_bound = kInf;
    r.lemma3 = false;
    return r;
  }
  r.sigma = r.X_max * r.kappa_max / denom;
  r.delta_bound = 4.0 * r.X_max / (r.Y_min - r.X_max * r.kappa_max / r.sigma);
  r.tube_radius_sigma = (1.0 - r.sigma) / r.kappa_max;
  const bool curvature_margin = r.kappa_max < r.sigma * r.lemma2_bound;
  r.lemma3 = r.sigma > 0.0 && r.sigma < 1.0 && curvature_margin;
  return r;
}

FeasibilityReport check_scenario(const ScenarioConfig& cfg) {
  const PathGeometry path = cfg.path.build();
  FeasibilityReport r = tune(path, cfg.vessel, cfg.environment, cfg.reference, cfg.guidance.Delta);
  const AssumptionVerdicts v = check_assumptions(cfg.environment, cfg.reference, cfg.vessel);
  r.assumption1 = v.a1;
  r.assumption2 = v.a2;
  r.assumption3 = v.a3;
  r.assumption2_margin = v.a2_margin;
  r.assumption3_margin = v.a3_margin;
  return r;
}

std::string report_to_json(const FeasibilityReport& r) {
  nlohmann::json j;
  j["V_max"] = r.V_max;
  j["u_rd_min"] = r.u_rd_min;
  j["u_rd_max"] = r.u_rd_max;
  j["X_max"] = r.X_max;
  j["Y_min"] = r.Y_min;
  j["kappa_max"] = r.kappa_max;
  j["lemma2_bound"] = r.lemma2_bound;
  j["sigma"] = num_or_sentinel(r.sigma);
  j["delta_bound"] = num_or_sentinel(r.delta_bound);
  j["tube_radius_param"] = num_or_sentinel(r.tube_radius_param);
  j["tube_radius_sigma"] = num_or_sentinel(r.tube_radius_sigma);
  j["assumption1"] = r.assumption1;
  j["assumption2"] = r.assumption2;
  j["assumption3"] = r.assumption3;
  j["assumption2_margin"] = r.assumption2_margin;
  j["assumption3_margin"] = r.assumption3_margin;
  j["lemma2"] = r.lemma2;
  j["lemma3"] = r.lemma3;
  j["delta_ok"] = r.delta_ok;
  j["pass"] = r.pass();
  return j.dump(2);
}

std::string report_to_text(const FeasibilityReport& r) {
  std::ostringstream out;
  const auto verdict = [](bool b) { return b ? "pass" : "FAIL"; };
  out << "feasibility report\n";
  out << "  V_max                 " << r.V_max << " m/s\n";
  out << "  u_rd range            [" << r.u_rd_min << ", " << r.u_rd_max << "] m/s\n";
  out << "  X_max                 " << r.X_max << "\n";
  out << "  Y_min                 " << r.Y_min << "\n";
  out << "  kappa_max             " << r.kappa_max << " 1/m\n";
  out << "  curvature bound       " << r.lemma2_bound << " 1/m\n";
  out << "  sigma                 " << r.sigma << "\n";
  out << "  tube (parametrised)   " << r.tube_radius_param << " m\n";
  out << "  tube (certified)      " << r.tube_radius_sigma << " m\n";
  out << "  assumption 1 (current bound)    " << verdict(r.assumption1) << "\n";
  out << "  assumption 2 (sway damping)     " << verdict(r.assumption2)
      << "  margin " << r.assumption2_margin << "\n";
  out << "  assumption 3 (2*V_max < u_rd)   " << verdict(r.assumption3)
      << "  margin " << r.assumption3_margin << " m/s\n";
  out << "  curvature feasibility           " << verdict(r.lemma2) << "\n";
  out << "  look-ahead feasibility          " << verdict(r.lemma3 && r.delta_ok) << "\n";
  out << "  overall                         " << verdict(r.pass()) << "\n";
  return out.str();
}

}  // namespace helm
