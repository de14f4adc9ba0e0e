#pragma once

#include "helm/vessel.hpp"

namespace helm {

/// Gains of the kinematic current observer. The position gains are kx1/ky1,
/// the current-integration gains kx2/ky2. Equal kx2 = ky2 keeps the estimate
/// error inside the V_max ball for the prescribed initialization.
struct ObserverGains {
  double kx1 = 1.0;   // 1/s
  double ky1 = 1.0;   // 1/s
  double kx2 = 0.1;   // 1/s^2
  double ky2 = 0.1;   // 1/s^2
};

void validate(const ObserverGains& g);

struct ObserverState {
  double x_hat = 0.0;
  double y_hat = 0.0;
  double Vx_hat = 0.0;
  double Vy_hat = 0.0;
};

struct ObserverDerivatives {
  double dx_hat = 0.0, dy_hat = 0.0, dVx_hat = 0.0, dVy_hat = 0.0;
};

/// Position-driven estimator of the constant inertial current.
/// meas_x/meas_y are the measured inertial positions.
ObserverDerivatives observer_derivatives(const ObserverState& o, const ObserverGains& g,
                                         const VesselState& s, double meas_x, double meas_y);

/// Current estimate rotated into the path-tangential frame, with the full
/// time derivatives (innovation terms plus frame rotation at gamma_dot).
struct PathFrameEstimates {
  double VT_hat = 0.0;
  double VN_hat = 0.0;
  double dVT_hat = 0.0;
  double dVN_hat = 0.0;
};

PathFrameEstimates path_frame_estimates(const ObserverState& o, double gamma_p, double gamma_dot,
                                        double x_tilde, double y_tilde, const ObserverGains& g);

}  // namespace helm
