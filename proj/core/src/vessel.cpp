#include "helm/vessel.hpp"

#include <cmath>

#include "helm/errors.hpp"
#include "helm/toml.hpp"

namespace helm {

void validate(const VesselParams& p) {
  if (!(p.m11 > 0.0) || !(p.m22 > 0.0) || !(p.m33 > 0.0))
    throw ConfigError("vessel: m11, m22, m33 must be positive");
  if (!(p.coupling_det() > 0.0)) throw ConfigError("vessel: m22*m33 - m23^2 must be positive");
  if (!(p.d11 > 0.0)) throw ConfigError("vessel: d11 must be positive");
}

double Environment::speed() const { return std::hypot(Vx, Vy); }

HydroCoeffs hydro_coeffs(const VesselParams& p) {
  const double det = p.coupling_det();
  HydroCoeffs c;
  c.ax = (p.m23 * p.m23 - p.m11 * p.m33) / det;
  c.bx = (p.d33 * p.m23 - p.d23 * p.m33) / det;
  c.ay = (p.m22 - p.m11) * p.m23 / det;
  c.by = -(p.d22 * p.m33 - p.d32 * p.m23) / det;
  return c;
}

double surge_coupling(const VesselParams& p, double v_r, double r) {
  return (p.m22 * v_r + p.m23 * r) * r / p.m11;
}

double yaw_coupling(const VesselParams& p, double u_r, double v_r, double r) {
  const double det = p.coupling_det();
  const double cv = (p.m23 * p.d22 - p.m22 * (p.d32 + (p.m22 - p.m11) * u_r)) / det;
  const double cr = (p.m23 * (p.d23 + p.m11 * u_r) - p.m22 * (p.d33 + p.m23 * u_r)) / det;
  return cv * v_r + cr * r;
}

VesselDerivatives dynamics(const VesselParams& p, const Environment& env, const VesselState& s,
                           double tau_u, double tau_r) {
  const bool finite = std::isfinite(s.x) && std::isfinite(s.y) && std::isfinite(s.psi) &&
                      std::isfinite(s.u_r) && std::isfinite(s.v_r) && std::isfinite(s.r) &&
                      std::isfinite(tau_u) && std::isfinite(tau_r);
  if (!finite) throw SimFault("dynamics: non-finite state or input", 0.0);

  const HydroCoeffs c = hydro_coeffs(p);
  const double cp = std::cos(s.psi);
  const double sp = std::sin(s.psi);

  VesselDerivatives d;
  d.dx = s.u_r * cp - s.v_r * sp + env.Vx;
  d.dy = s.u_r * sp + s.v_r * cp + env.Vy;
  d.dpsi = s.r;
  d.du_r = surge_coupling(p, s.v_r, s.r) - (p.d11 / p.m11) * s.u_r + tau_u;
  d.dv_r = c.X(s.u_r) * s.r + c.Y(s.u_r) * s.v_r;
  d.dr = yaw_coupling(p, s.u_r, s.v_r, s.r) + tau_r;
  return d;
}

VesselParams load_vessel_file(const std::string& path) {
  const toml::Table t = toml::parse_file(path);
  static const char* keys[] = {"m11", "m22", "m23", "m33", "d11", "d22", "d23", "d32", "d33"};
  for (const auto& e : t.entries()) {
    bool known = false;
    for (const char* k : keys) known = known || (e.first == k);
    if (!known)
      throw ConfigError("vessel file: unknown key '" + e.first + "'", e.second.line,
                        e.second.column);
  }
  VesselParams p;
  p.m11 = t.number("m11");
  p.m22 = t.number("m22");
  p.m23 = t.number("m23");
  p.m33 = t.number("m33");
  p.d11 = t.number("d11");
  p.d22 = t.number("d22");
  p.d23 = t.number("d23");
  p.d32 = t.number("d32");
  p.d33 = t.number("d33");
  validate(p);
  return p;
}

}  // namespace helm
