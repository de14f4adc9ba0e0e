#include "helm/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <numbers>
#include <set>
#include <sstream>
#include <tuple>

#include "helm/errors.hpp"
#include "helm/toml.hpp"

namespace helm {

namespace {

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

const std::set<std::string> kKnownKeys = {
    "force",
    "vessel.file",
    "vessel.m11", "vessel.m22", "vessel.m23", "vessel.m33",
    "vessel.d11", "vessel.d22", "vessel.d23", "vessel.d32", "vessel.d33",
    "environment.Vx", "environment.Vy", "environment.Vmax",
    "path.kind", "path.radius", "path.center", "path.origin", "path.heading",
    "path.amplitude", "path.wavenumber", "path.length",
    "guidance.Delta", "guidance.k_delta",
    "control.k_u", "control.k1", "control.k2",
    "observer.kx1", "observer.ky1", "observer.kx2", "observer.ky2",
    "observer.Vx_hat0", "observer.Vy_hat0", "observer.noise_std", "observer.noise_seed",
    "reference.u_rd", "reference.times", "reference.values",
    "initial.u_r", "initial.v_r", "initial.r", "initial.x", "initial.y", "initial.psi",
    "sim.dt", "sim.t_end", "sim.log_every",
    "monitors.sigma_floor", "monitors.c_min", "monitors.tau_u_max", "monitors.tau_r_max",
    "sweep.axis1.key", "sweep.axis1.values", "sweep.axis1.from", "sweep.axis1.to",
    "sweep.axis1.steps",
    "sweep.axis2.key", "sweep.axis2.values", "sweep.axis2.from", "sweep.axis2.to",
    "sweep.axis2.steps",
};

const std::set<std::string> kSweepKeys = {
    "guidance.Delta", "guidance.k_delta", "control.k_u", "control.k1", "control.k2",
    "environment.Vx", "environment.Vy", "environment.angle_deg", "reference.u_rd", "sim.dt",
};

std::optional<SweepAxis> parse_axis(const toml::Table& t, const std::string& prefix) {
  if (!t.contains(prefix + ".key")) return std::nullopt;
  SweepAxis axis;
  axis.key = t.string(prefix + ".key");
  if (kSweepKeys.find(axis.key) == kSweepKeys.end())
    throw ConfigError("sweep: unsupported axis key '" + axis.key + "'");
  if (t.contains(prefix + ".values")) {
    axis.values = t.number_array(prefix + ".values");
  } else {
    const double from = t.number(prefix + ".from");
    const double to = t.number(prefix + ".to");
    const long steps = t.integer(prefix + ".steps");
    if (steps < 1) throw ConfigError("sweep: steps must be >= 1");
    for (long i = 0; i < steps; ++i) {
      const double f = steps == 1 ? 0.0 : static_cast<double>(i) / static_cast<double>(steps - 1);
      axis.values.push_back(from + f * (to - from));
    }
  }
  if (axis.values.empty()) throw ConfigError("sweep: axis '" + axis.key + "' has no values");
  return axis;
}

ScenarioConfig from_table(const toml::Table& t, const std::string& base_dir) {
  for (const auto& e : t.entries()) {
    if (kKnownKeys.find(e.first) == kKnownKeys.end())
      throw ConfigError("scenario: unknown key '" + e.first + "'", e.second.line, e.second.column);
  }

  ScenarioConfig cfg;

  if (t.contains("vessel.file")) {
    std::filesystem::path vp = t.string("vessel.file");
    if (vp.is_relative()) vp = std::filesystem::path(base_dir) / vp;
    cfg.vessel = load_vessel_file(vp.string());
  } else {
    cfg.vessel.m11 = t.number("vessel.m11");
    cfg.vessel.m22 = t.number("vessel.m22");
    cfg.vessel.m23 = t.number("vessel.m23");
    cfg.vessel.m33 = t.number("vessel.m33");
    cfg.vessel.d11 = t.number("vessel.d11");
    cfg.vessel.d22 = t.number("vessel.d22");
    cfg.vessel.d23 = t.number("vessel.d23");
    cfg.vessel.d32 = t.number("vessel.d32");
    cfg.vessel.d33 = t.number("vessel.d33");
    validate(cfg.vessel);
  }

  cfg.environment.Vx = t.number_or("environment.Vx", 0.0);
  cfg.environment.Vy = t.number_or("environment.Vy", 0.0);
  cfg.environment.Vmax = t.number_or("environment.Vmax", cfg.environment.speed());
  if (cfg.environment.speed() > cfg.environment.Vmax + 1e-12)
    throw ConfigError("environment: current magnitude exceeds Vmax");

  const std::string kind = t.string_or("path.kind", "circle");
  if (kind == "circle") {
    cfg.path.kind = PathGeometry::Kind::circle;
    cfg.path.radius = t.number("path.radius");
    if (t.contains("path.center")) {
      const auto c = t.number_array("path.center");
      if (c.size() != 2) throw ConfigError("path.center must have two entries");
      cfg.path.center_x = c[0];
      cfg.path.center_y = c[1];
    }
  } else if (kind == "line") {
    cfg.path.kind = PathGeometry::Kind::line;
    if (t.contains("path.origin")) {
      const auto o = t.number_array("path.origin");
      if (o.size() != 2) throw ConfigError("path.origin must have two entries");
      cfg.path.origin_x = o[0];
      cfg.path.origin_y = o[1];
    }
    cfg.path.heading = t.number_or("path.heading", 0.0);
  } else if (kind == "sine") {
    cfg.path.kind = PathGeometry::Kind::sine;
    cfg.path.amplitude = t.number("path.amplitude");
    cfg.path.wavenumber = t.number("path.wavenumber");
    cfg.path.length = t.number("path.length");
  } else {
    throw ConfigError("path.kind must be one of circle|line|sine, got '" + kind + "'");
  }

  cfg.guidance.Delta = t.number_or("guidance.Delta", 40.0);
  cfg.guidance.k_delta = t.number_or("guidance.k_delta", 0.1);
  validate(cfg.guidance);

  cfg.control.k_u = t.number_or("control.k_u", 0.1);
  cfg.control.k1 = t.number_or("control.k1", 25.0);
  cfg.control.k2 = t.number_or("control.k2", 40.0);
  validate(cfg.control);

  cfg.observer.gains.kx1 = t.number_or("observer.kx1", 1.0);
  cfg.observer.gains.ky1 = t.number_or("observer.ky1", 1.0);
  cfg.observer.gains.kx2 = t.number_or("observer.kx2", 0.1);
  cfg.observer.gains.ky2 = t.number_or("observer.ky2", 0.1);
  validate(cfg.observer.gains);
  cfg.observer.Vx_hat0 = t.number_or("observer.Vx_hat0", 0.0);
  cfg.observer.Vy_hat0 = t.number_or("observer.Vy_hat0", 0.0);
  cfg.observer.noise_std = t.number_or("observer.noise_std", 0.0);
  cfg.observer.noise_seed = static_cast<unsigned long>(t.integer_or("observer.noise_seed", 0));

  if (t.contains("reference.times") || t.contains("reference.values")) {
    cfg.reference.times = t.number_array("reference.times");
    cfg.reference.values = t.number_array("reference.values");
    if (cfg.reference.times.size() != cfg.reference.values.size() || cfg.reference.times.size() < 2)
      throw ConfigError("reference: times/values must have equal length >= 2");
    if (!std::is_sorted(cfg.reference.times.begin(), cfg.reference.times.end()))
      throw ConfigError("reference: times must be non-decreasing");
    cfg.reference.constant = cfg.reference.values.front();
  } else {
    cfg.reference.constant = t.number_or("reference.u_rd", 5.0);
  }
  if (cfg.reference.min_u_rd() <= 0.0) throw ConfigError("reference: u_rd must stay positive");

  cfg.initial.u_r = t.number_or("initial.u_r", 0.0);
  cfg.initial.v_r = t.number_or("initial.v_r", 0.0);
  cfg.initial.r = t.number_or("initial.r", 0.0);
  cfg.initial.x = t.number_or("initial.x", 0.0);
  cfg.initial.y = t.number_or("initial.y", 0.0);
  cfg.initial.psi = t.number_or("initial.psi", 0.0);

  cfg.dt = t.number_or("sim.dt", 0.01);
  cfg.t_end = t.number_or("sim.t_end", 1000.0);
  cfg.log_every = t.integer_or("sim.log_every", 1);
  if (!(cfg.dt > 0.0)) throw ConfigError("sim.dt must be positive");
  if (!(cfg.t_end > 0.0)) throw ConfigError("sim.t_end must be positive");
  if (cfg.log_every < 1) throw ConfigError("sim.log_every must be >= 1");

  if (t.contains("monitors.sigma_floor")) cfg.monitors.sigma_floor = t.number("monitors.sigma_floor");
  cfg.monitors.c_min = t.number_or("monitors.c_min", 0.05);
  cfg.monitors.tau_u_max = t.number_or("monitors.tau_u_max", 100.0);
  cfg.monitors.tau_r_max = t.number_or("monitors.tau_r_max", 5000.0);

  cfg.force = t.boolean_or("force", false);

  if (auto a1 = parse_axis(t, "sweep.axis1")) cfg.sweep.push_back(*a1);
  if (auto a2 = parse_axis(t, "sweep.axis2")) {
    if (cfg.sweep.empty()) throw ConfigError("sweep.axis2 given without sweep.axis1");
    cfg.sweep.push_back(*a2);
  }
  return cfg;
}

}  // namespace

double ReferenceProfile::u_rd(double t) const {
  if (times.empty()) return constant;
  if (t <= times.front()) return values.front();
  if (t >= times.back()) return values.back();
  const auto it = std::upper_bound(times.begin(), times.end(), t);
  const size_t i = static_cast<size_t>(it - times.begin()) - 1;
  const double span = times[i + 1] - times[i];
  if (span <= 0.0) return values[i + 1];
  const double f = (t - times[i]) / span;
  return values[i] + f * (values[i + 1] - values[i]);
}

double ReferenceProfile::du_rd(double t) const {
  if (times.empty()) return 0.0;
  if (t < times.front() || t > times.back()) return 0.0;
  const auto it = std::upper_bound(times.begin(), times.end(), t);
  const size_t i = std::min(static_cast<size_t>(it - times.begin()),
                            times.size() - 1) - 1;
  const double span = times[i + 1] - times[i];
  if (span <= 0.0) return 0.0;
  return (values[i + 1] - values[i]) / span;
}

double ReferenceProfile::min_u_rd() const {
  if (times.empty()) return constant;
  return *std::min_element(values.begin(), values.end());
}

double ReferenceProfile::max_u_rd() const {
  if (times.empty()) return constant;
  return *std::max_element(values.begin(), values.end());
}

PathGeometry PathSpec::build() const {
  switch (kind) {
    case PathGeometry::Kind::circle:
      return PathGeometry::circle(center_x, center_y, radius);
    case PathGeometry::Kind::line:
      return PathGeometry::line(origin_x, origin_y, heading);
    case PathGeometry::Kind::sine:
      return PathGeometry::sine(amplitude, wavenumber, length);
  }
  throw ConfigError("path: invalid kind");
}

bool ScenarioConfig::operator==(const ScenarioConfig& o) const {
  const auto tie_vessel = [](const VesselParams& v) {
    return std::tie(v.m11, v.m22, v.m23, v.m33, v.d11, v.d22, v.d23, v.d32, v.d33);
  };
  const bool sweep_eq = [&] {
    if (sweep.size() != o.sweep.size()) return false;
    for (size_t i = 0; i < sweep.size(); ++i)
      if (sweep[i].key != o.sweep[i].key || sweep[i].values != o.sweep[i].values) return false;
    return true;
  }();
  return tie_vessel(vessel) == tie_vessel(o.vessel) && environment.Vx == o.environment.Vx &&
         environment.Vy == o.environment.Vy && environment.Vmax == o.environment.Vmax &&
         path.kind == o.path.kind && path.radius == o.path.radius &&
         path.center_x == o.path.center_x && path.center_y == o.path.center_y &&
         path.origin_x == o.path.origin_x && path.origin_y == o.path.origin_y &&
         path.heading == o.path.heading && path.amplitude == o.path.amplitude &&
         path.wavenumber == o.path.wavenumber && path.length == o.path.length &&
         guidance.Delta == o.guidance.Delta && guidance.k_delta == o.guidance.k_delta &&
         control.k_u == o.control.k_u && control.k1 == o.control.k1 && control.k2 == o.control.k2 &&
         observer.gains.kx1 == o.observer.gains.kx1 && observer.gains.ky1 == o.observer.gains.ky1 &&
         observer.gains.kx2 == o.observer.gains.kx2 && observer.gains.ky2 == o.observer.gains.ky2 &&
         observer.Vx_hat0 == o.observer.Vx_hat0 && observer.Vy_hat0 == o.observer.Vy_hat0 &&
         observer.noise_std == o.observer.noise_std && observer.noise_seed == o.observer.noise_seed &&
         reference.constant == o.reference.constant && reference.times == o.reference.times &&
         reference.values == o.reference.values && initial.u_r == o.initial.u_r &&
         initial.v_r == o.initial.v_r && initial.r == o.initial.r && initial.x == o.initial.x &&
         initial.y == o.initial.y && initial.psi == o.initial.psi && dt == o.dt &&
         t_end == o.t_end && log_every == o.log_every &&
         monitors.sigma_floor == o.monitors.sigma_floor && monitors.c_min == o.monitors.c_min &&
         monitors.tau_u_max == o.monitors.tau_u_max && monitors.tau_r_max == o.monitors.tau_r_max &&
         force == o.force && sweep_eq;
}

ScenarioConfig load_scenario(const std::string& path) {
  const toml::Table t = toml::parse_file(path);
  const std::string dir = std::filesystem::path(path).parent_path().string();
  return from_table(t, dir.empty() ? "." : dir);
}

ScenarioConfig parse_scenario(const std::string& text) {
  return from_table(toml::parse(text), ".");
}

std::string serialize_scenario(const ScenarioConfig& cfg) {
  std::ostringstream out;
  out << "[vessel]\n";
  out << "m11 = " << fmt(cfg.vessel.m11) << "\nm22 = " << fmt(cfg.vessel.m22) << "\nm23 = "
      << fmt(cfg.vessel.m23) << "\nm33 = " << fmt(cfg.vessel.m33) << "\n";
  out << "d11 = " << fmt(cfg.vessel.d11) << "\nd22 = " << fmt(cfg.vessel.d22) << "\nd23 = "
      << fmt(cfg.vessel.d23) << "\nd32 = " << fmt(cfg.vessel.d32) << "\nd33 = "
      << fmt(cfg.vessel.d33) << "\n";
  out << "\n[environment]\nVx = " << fmt(cfg.environment.Vx) << "\nVy = " << fmt(cfg.environment.Vy)
      << "\nVmax = " << fmt(cfg.environment.Vmax) << "\n";
  out << "\n[path]\n";
  switch (cfg.path.kind) {
    case PathGeometry::Kind::circle:
      out << "kind = \"circle\"\nradius = " << fmt(cfg.path.radius) << "\ncenter = ["
          << fmt(cfg.path.center_x) << ", " << fmt(cfg.path.center_y) << "]\n";
      break;
    case PathGeometry::Kind::line:
      out << "kind = \"line\"\norigin = [" << fmt(cfg.path.origin_x) << ", "
          << fmt(cfg.path.origin_y) << "]\nheading = " << fmt(cfg.path.heading) << "\n";
      break;
    case PathGeometry::Kind::sine:
      out << "kind = \"sine\"\namplitude = " << fmt(cfg.path.amplitude) << "\nwavenumber = "
          << fmt(cfg.path.wavenumber) << "\nlength = " << fmt(cfg.path.length) << "\n";
      break;
  }
  out << "\n[guidance]\nDelta = " << fmt(cfg.guidance.Delta) << "\nk_delta = "
      << fmt(cfg.guidance.k_delta) << "\n";
  out << "\n[control]\nk_u = " << fmt(cfg.control.k_u) << "\nk1 = " << fmt(cfg.control.k1)
      << "\nk2 = " << fmt(cfg.control.k2) << "\n";
  out << "\n[observer]\nkx1 = " << fmt(cfg.observer.gains.kx1) << "\nky1 = "
      << fmt(cfg.observer.gains.ky1) << "\nkx2 = " << fmt(cfg.observer.gains.kx2) << "\nky2 = "
      << fmt(cfg.observer.gains.ky2) << "\n";
  if (cfg.observer.Vx_hat0 != 0.0) out << "Vx_hat0 = " << fmt(cfg.observer.Vx_hat0) << "\n";
  if (cfg.observer.Vy_hat0 != 0.0) out << "Vy_hat0 = " << fmt(cfg.observer.Vy_hat0) << "\n";
  if (cfg.observer.noise_std != 0.0) {
    out << "noise_std = " << fmt(cfg.observer.noise_std) << "\nnoise_seed = "
        << cfg.observer.noise_seed << "\n";
  }
  out << "\n[reference]\n";
  if (cfg.reference.times.empty()) {
    out << "u_rd = " << fmt(cfg.reference.constant) << "\n";
  } else {
    out << "times = [";
    for (size_t i = 0; i < cfg.reference.times.size(); ++i)
      out << (i ? ", " : "") << fmt(cfg.reference.times[i]);
    out << "]\nvalues = [";
    for (size_t i = 0; i < cfg.reference.values.size(); ++i)
      out << (i ? ", " : "") << fmt(cfg.reference.values[i]);
    out << "]\n";
  }
  out << "\n[initial]\nu_r = " << fmt(cfg.initial.u_r) << "\nv_r = " << fmt(cfg.initial.v_r)
      << "\nr = " << fmt(cfg.initial.r) << "\nx = " << fmt(cfg.initial.x) << "\ny = "
      << fmt(cfg.initial.y) << "\npsi = " << fmt(cfg.initial.psi) << "\n";
  out << "\n[sim]\ndt = " << fmt(cfg.dt) << "\nt_end = " << fmt(cfg.t_end) << "\nlog_every = "
      << cfg.log_every << "\n";
  out << "\n[monitors]\n";
  if (cfg.monitors.sigma_floor) out << "sigma_floor = " << fmt(*cfg.monitors.sigma_floor) << "\n";
  out << "c_min = " << fmt(cfg.monitors.c_min) << "\ntau_u_max = " << fmt(cfg.monitors.tau_u_max)
      << "\ntau_r_max = " << fmt(cfg.monitors.tau_r_max) << "\n";
  if (cfg.force) out << "\nforce = true\n";
  for (size_t i = 0; i < cfg.sweep.size(); ++i) {
    out << "\n[sweep.axis" << (i + 1) << "]\nkey = \"" << cfg.sweep[i].key << "\"\nvalues = [";
    for (size_t k = 0; k < cfg.sweep[i].values.size(); ++k)
      out << (k ? ", " : "") << fmt(cfg.sweep[i].values[k]);
    out << "]\n";
  }
  return out.str();
}

ScenarioConfig apply_sweep_value(const ScenarioConfig& base, const std::string& key, double value) {
  ScenarioConfig cfg = base;
  cfg.sweep.clear();
  if (key == "guidance.Delta") {
    cfg.guidance.Delta = value;
  } else if (key == "guidance.k_delta") {
    cfg.guidance.k_delta = value;
  } else if (key == "control.k_u") {
    cfg.control.k_u = value;
  } else if (key == "control.k1") {
    cfg.control.k1 = value;
  } else if (key == "control.k2") {
    cfg.control.k2 = value;
  } else if (key == "environment.Vx") {
    cfg.environment.Vx = value;
    cfg.environment.Vmax = std::max(cfg.environment.Vmax, cfg.environment.speed());
  } else if (key == "environment.Vy") {
    cfg.environment.Vy = value;
    cfg.environment.Vmax = std::max(cfg.environment.Vmax, cfg.environment.speed());
  } else if (key == "environment.angle_deg") {
    // Rotates the current vector, preserving its magnitude.
    const double mag = base.environment.speed();
    const double ang = value * std::numbers::pi / 180.0;
    cfg.environment.Vx = mag * std::cos(ang);
    cfg.environment.Vy = mag * std::sin(ang);
  } else if (key == "reference.u_rd") {
    cfg.reference = ReferenceProfile{};
    cfg.reference.constant = value;
  } else if (key == "sim.dt") {
    cfg.dt = value;
  } else {
    throw ConfigError("sweep: unsupported axis key '" + key + "'");
  }
  return cfg;
}

}  // namespace helm
