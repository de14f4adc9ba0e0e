#include "helm/observer.hpp"

#include <cmath>

#include "helm/errors.hpp"

namespace helm {

void validate(const ObserverGains& g) {
  if (!(g.kx1 > 0.0) || !(g.ky1 > 0.0) || !(g.kx2 > 0.0) || !(g.ky2 > 0.0))
    throw ConfigError("observer: all gains must be strictly positive");
}

ObserverDerivatives observer_derivatives(const ObserverState& o, const ObserverGains& g,
                                         const VesselState& s, double meas_x, double meas_y) {
  const double x_tilde = meas_x - o.x_hat;
  const double y_tilde = meas_y - o.y_hat;
  const double cp = std::cos(s.psi);
  const double sp = std::sin(s.psi);
  ObserverDerivatives d;
  d.dx_hat = s.u_r * cp - s.v_r * sp + o.Vx_hat + g.kx1 * x_tilde;
  d.dy_hat = s.u_r * sp + s.v_r * cp + o.Vy_hat + g.ky1 * y_tilde;
  d.dVx_hat = g.kx2 * x_tilde;
  d.dVy_hat = g.ky2 * y_tilde;
  return d;
}

PathFrameEstimates path_frame_estimates(const ObserverState& o, double gamma_p, double gamma_dot,
                                        double x_tilde, double y_tilde, const ObserverGains& g) {
  const double cg = std::cos(gamma_p);
  const double sg = std::sin(gamma_p);
  PathFrameEstimates e;
  e.VT_hat = o.Vx_hat * cg + o.Vy_hat * sg;
  e.VN_hat = -o.Vx_hat * sg + o.Vy_hat * cg;
  e.dVT_hat = g.kx2 * x_tilde * cg + g.ky2 * y_tilde * sg + e.VN_hat * gamma_dot;
  e.dVN_hat = -g.kx2 * x_tilde * sg + g.ky2 * y_tilde * cg - e.VT_hat * gamma_dot;
  return e;
}

}  // namespace helm
