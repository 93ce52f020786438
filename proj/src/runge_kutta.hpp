#pragma once

// Explicit Runge-Kutta steppers shared by the manifold integrator. `State`
// must support `a + b` and `double * a`.

#include <algorithm>
#include <cmath>

namespace cavity::detail {

template <typename State, typename Rhs>
State rk4_step(const Rhs& rhs, double t, const State& y, double h) {
  const State k1 = rhs(t, y);
  const State k2 = rhs(t + 0.5 * h, y + (0.5 * h) * k1);
  const State k3 = rhs(t + 0.5 * h, y + (0.5 * h) * k2);
  const State k4 = rhs(t + h, y + h * k3);
  return y + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
}

template <typename State>
struct EmbeddedStep {
  State y;
  State error;
};

/// Dormand-Prince 5(4): fifth-order solution plus the embedded error estimate.
template <typename State, typename Rhs>
EmbeddedStep<State> dopri5_step(const Rhs& rhs, double t, const State& y, double h) {
  const State k1 = rhs(t, y);
  const State k2 = rhs(t + h / 5.0, y + (h / 5.0) * k1);
  const State k3 = rhs(t + 3.0 * h / 10.0, y + h * ((3.0 / 40.0) * k1 + (9.0 / 40.0) * k2));
  const State k4 = rhs(t + 4.0 * h / 5.0,
                       y + h * ((44.0 / 45.0) * k1 + (-56.0 / 15.0) * k2 + (32.0 / 9.0) * k3));
  const State k5 = rhs(t + 8.0 * h / 9.0,
                       y + h * ((19372.0 / 6561.0) * k1 + (-25360.0 / 2187.0) * k2 +
                                (64448.0 / 6561.0) * k3 + (-212.0 / 729.0) * k4));
  const State k6 = rhs(t + h, y + h * ((9017.0 / 3168.0) * k1 + (-355.0 / 33.0) * k2 +
                                       (46732.0 / 5247.0) * k3 + (49.0 / 176.0) * k4 +
                                       (-5103.0 / 18656.0) * k5));
  const State y5 = y + h * ((35.0 / 384.0) * k1 + (500.0 / 1113.0) * k3 + (125.0 / 192.0) * k4 +
                            (-2187.0 / 6784.0) * k5 + (11.0 / 84.0) * k6);
  const State k7 = rhs(t + h, y5);
  // b5 - b4
  const State err = h * ((71.0 / 57600.0) * k1 + (-71.0 / 16695.0) * k3 + (71.0 / 1920.0) * k4 +
                         (-17253.0 / 339200.0) * k5 + (22.0 / 525.0) * k6 + (-1.0 / 40.0) * k7);
  return {y5, err};
}

/// Step-size update for an error ratio `err` (accept iff err <= 1).
inline double next_step_factor(double err) {
  if (err == 0.0) return 5.0;
  return std::clamp(0.9 * std::pow(err, -0.2), 0.2, 5.0);
}

}  // namespace cavity::detail
