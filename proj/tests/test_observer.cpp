#include <doctest.h>

#include <cmath>
#include <numbers>

#include "helm/observer.hpp"
#include "helpers.hpp"

using namespace helm;

TEST_CASE("true state is a fixed point of the error dynamics") {
  const ObserverGains g{1.0, 1.0, 0.1, 0.1};
  VesselState s;
  s.x = 12.0;
  s.y = -4.0;
  s.psi = 0.8;
  s.u_r = 3.0;
  s.v_r = -0.2;
  const double Vx = -1.0, Vy = 1.2;
  const ObserverState o{s.x, s.y, Vx, Vy};
  const ObserverDerivatives d = observer_derivatives(o, g, s, s.x, s.y);
  // Estimator derivatives equal the plant kinematics; error derivatives zero.
  const double dx_plant = s.u_r * std::cos(s.psi) - s.v_r * std::sin(s.psi) + Vx;
  const double dy_plant = s.u_r * std::sin(s.psi) + s.v_r * std::cos(s.psi) + Vy;
  CHECK(d.dx_hat == doctest::Approx(dx_plant).epsilon(1e-15));
  CHECK(d.dy_hat == doctest::Approx(dy_plant).epsilon(1e-15));
  CHECK(d.dVx_hat == 0.0);
  CHECK(d.dVy_hat == 0.0);
}

TEST_CASE("prescribed initialization puts the whole error in the current") {
  // x_hat = x, y_hat = y, V_hat = 0 leaves an initial error (0, 0, Vx, Vy).
  const double Vx = -1.0, Vy = 1.2;
  const ObserverState o{700.0, 10.0, 0.0, 0.0};
  const double x_tilde = 700.0 - o.x_hat;
  const double y_tilde = 10.0 - o.y_hat;
  CHECK(x_tilde == 0.0);
  CHECK(y_tilde == 0.0);
  CHECK(std::hypot(Vx - o.Vx_hat, Vy - o.Vy_hat) == doctest::Approx(std::hypot(Vx, Vy)));
}

TEST_CASE("per-axis error system has the expected characteristic polynomial") {
  // [x_tilde; V_tilde]' = [[-k1, 1], [-k2, 0]]: char poly s^2 + k1 s + k2.
  // For k1 = 1, k2 = 0.1 the roots are real and stable.
  const double k1 = 1.0, k2 = 0.1;
  const double disc = k1 * k1 - 4.0 * k2;
  REQUIRE(disc > 0.0);
  const double s1 = 0.5 * (-k1 + std::sqrt(disc));
  const double s2 = 0.5 * (-k1 - std::sqrt(disc));
  CHECK(s1 < 0.0);
  CHECK(s2 < 0.0);
  CHECK(s1 * s2 == doctest::Approx(k2));
  CHECK(s1 + s2 == doctest::Approx(-k1));
}

TEST_CASE("path-frame rotation of the estimate") {
  const ObserverGains g;
  SUBCASE("identity at gamma_p = 0") {
    const ObserverState o{0, 0, -1.0, 1.2};
    const PathFrameEstimates e = path_frame_estimates(o, 0.0, 0.0, 0.0, 0.0, g);
    CHECK(e.VT_hat == doctest::Approx(-1.0));
    CHECK(e.VN_hat == doctest::Approx(1.2));
  }
  SUBCASE("quarter turn") {
    const ObserverState o{0, 0, -1.0, 1.2};
    const PathFrameEstimates e =
        path_frame_estimates(o, std::numbers::pi / 2.0, 0.0, 0.0, 0.0, g);
    CHECK(e.VT_hat == doctest::Approx(1.2));
    CHECK(e.VN_hat == doctest::Approx(1.0));
  }
  SUBCASE("stationary estimate has zero derivatives") {
    const ObserverState o{0, 0, 0.4, -0.7};
    const PathFrameEstimates e = path_frame_estimates(o, 1.1, 0.0, 0.0, 0.0, g);
    CHECK(e.dVT_hat == 0.0);
    CHECK(e.dVN_hat == 0.0);
  }
  SUBCASE("frame rotation couples the components") {
    const ObserverState o{0, 0, 0.4, -0.7};
    const double gamma_dot = 0.02;
    const PathFrameEstimates e = path_frame_estimates(o, 0.3, gamma_dot, 0.0, 0.0, g);
    CHECK(e.dVT_hat == doctest::Approx(e.VN_hat * gamma_dot));
    CHECK(e.dVN_hat == doctest::Approx(-e.VT_hat * gamma_dot));
  }
}

TEST_CASE("gain validation") {
  ObserverGains g;
  g.kx2 = 0.0;
  CHECK_THROWS_AS(validate(g), ConfigError);
}
