#pragma once

#include <string>

namespace helm {

/// Inertia and damping entries of the 3-DOF surge/sway/yaw model with
/// non-diagonal sway/yaw coupling. SI units throughout.
struct VesselParams {
  double m11 = 0.0;  // kg
  double m22 = 0.0;  // kg
  double m23 = 0.0;  // kg*m
  double m33 = 0.0;  // kg*m^2
  double d11 = 0.0;
  double d22 = 0.0;
  double d23 = 0.0;
  double d32 = 0.0;
  double d33 = 0.0;

  double coupling_det() const { return m22 * m33 - m23 * m23; }
};

/// Throws ConfigError unless m11, m22, m33, d11 > 0 and m22*m33 - m23^2 > 0.
void validate(const VesselParams& p);

/// Planar pose plus relative (through-water) velocities.
struct VesselState {
  double x = 0.0;    // m
  double y = 0.0;    // m
  double psi = 0.0;  // rad, unwrapped
  double u_r = 0.0;  // m/s
  double v_r = 0.0;  // m/s
  double r = 0.0;    // rad/s
};

struct VesselDerivatives {
  double dx = 0.0, dy = 0.0, dpsi = 0.0, du_r = 0.0, dv_r = 0.0, dr = 0.0;
};

/// Constant irrotational current in the inertial frame.
struct Environment {
  double Vx = 0.0;    // m/s
  double Vy = 0.0;    // m/s
  double Vmax = 0.0;  // bound used by the feasibility checks

  double speed() const;
};

/// Coefficients of the affine sway/yaw hydrodynamic scalars,
/// X(u_r) = ax*u_r + bx and Y(u_r) = ay*u_r + by.
struct HydroCoeffs {
  double ax = 0.0;
  double bx = 0.0;
  double ay = 0.0;
  double by = 0.0;

  double X(double u_r) const { return ax * u_r + bx; }
  double Y(double u_r) const { return ay * u_r + by; }
};

HydroCoeffs hydro_coeffs(const VesselParams& p);

/// Coriolis-type surge coupling (m22*v_r + m23*r)*r / m11.
double surge_coupling(const VesselParams& p, double v_r, double r);

/// Sway/yaw coupling entering the yaw acceleration; linear in (v_r, r).
double yaw_coupling(const VesselParams& p, double u_r, double v_r, double r);

/// Relative-velocity rigid-body dynamics under current (Vx, Vy) and the
/// commanded surge/yaw inputs. Rejects non-finite inputs.
VesselDerivatives dynamics(const VesselParams& p, const Environment& env, const VesselState& s,
                           double tau_u, double tau_r);

/// Reads the nine m/d entries from a flat key/value parameter file.
VesselParams load_vessel_file(const std::string& path);

}  // namespace helm
