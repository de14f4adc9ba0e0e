#pragma once

#include <optional>
#include <string>
#include <vector>

#include "helm/control.hpp"
#include "helm/guidance.hpp"
#include "helm/observer.hpp"
#include "helm/path.hpp"
#include "helm/vessel.hpp"

namespace helm {

/// Reference surge-velocity profile: constant, or a piecewise-linear table.
struct ReferenceProfile {
  double constant = 5.0;
  std::vector<double> times;   // empty => constant profile
  std::vector<double> values;

  double u_rd(double t) const;
  double du_rd(double t) const;  // piecewise-constant slope
  double min_u_rd() const;
  double max_u_rd() const;
};

struct PathSpec {
  PathGeometry::Kind kind = PathGeometry::Kind::circle;
  double radius = 400.0;
  double center_x = 0.0, center_y = 0.0;       // circle
  double origin_x = 0.0, origin_y = 0.0;       // line
  double heading = 0.0;                        // line
  double amplitude = 10.0, wavenumber = 0.01;  // sine
  double length = 1000.0;                      // sine

  PathGeometry build() const;
};

struct InitialState {
  double u_r = 0.0, v_r = 0.0, r = 0.0;
  double x = 0.0, y = 0.0, psi = 0.0;
};

struct MonitorSettings {
  std::optional<double> sigma_floor;  // default: tuned sigma of the scenario
  double c_min = 0.05;
  double tau_u_max = 100.0;    // sanity bounds on the actuator signals
  double tau_r_max = 5000.0;
};

struct ObserverSettings {
  ObserverGains gains;
  double Vx_hat0 = 0.0;  // estimator starts at the measured position and
  double Vy_hat0 = 0.0;  // these current values (default zero)
  double noise_std = 0.0;   // optional measurement noise; not covered by the analysis
  unsigned long noise_seed = 0;
};

struct SweepAxis {
  std::string key;
  std::vector<double> values;
};

struct ScenarioConfig {
  VesselParams vessel;
  Environment environment;
  PathSpec path;
  GuidanceGains guidance;
  ControlGains control;
  ObserverSettings observer;
  ReferenceProfile reference;
  InitialState initial;
  double dt = 0.01;
  double t_end = 1000.0;
  long log_every = 1;
  MonitorSettings monitors;
  bool force = false;
  std::vector<SweepAxis> sweep;  // empty for plain runs

  bool operator==(const ScenarioConfig& other) const;
};

/// Parses and validates a scenario file. Vessel parameter files are resolved
/// relative to the scenario file's directory. Unknown keys are rejected.
ScenarioConfig load_scenario(const std::string& path);

/// Parses a scenario from text (vessel must be inline).
ScenarioConfig parse_scenario(const std::string& text);

/// Canonical text form; parse_scenario(serialize_scenario(c)) == c.
std::string serialize_scenario(const ScenarioConfig& cfg);

/// Applies one sweep assignment (dotted key) to a copy of the config.
ScenarioConfig apply_sweep_value(const ScenarioConfig& base, const std::string& key, double value);

}  // namespace helm
