#pragma once

#include <functional>
#include <string>
#include <vector>

#include "cavity/core_types.hpp"
#include "cavity/hamiltonian.hpp"

namespace cavity {

enum class Method { RK4, RK45Adaptive };
enum class Mode { RW, NRW };

[[nodiscard]] std::string to_string(Method method);
[[nodiscard]] std::string to_string(Mode mode);
[[nodiscard]] Method parse_method(const std::string& text);
[[nodiscard]] Mode parse_mode(const std::string& text);

struct IntegratorConfig {
  double dt = 0.001;
  double t_end = 30.0;
  int sample_every = 10;
  Method method = Method::RK4;
  double rel_tol = 1e-10;
  double abs_tol = 1e-12;
  /// Evaluate the force with raw instead of normalized amplitudes.
  bool force_unnormalized = false;
};

void validate(const IntegratorConfig& cfg);

/// Output times of integrate(): every dt * sample_every, plus t_end.
[[nodiscard]] std::vector<double> sample_times(const IntegratorConfig& cfg);

struct Trajectory {
  std::vector<TimeSeriesRow> rows;
  SystemParams params_echo;
  IntegratorConfig config_echo;
  Mode mode = Mode::NRW;

  /// Row `i` as a ManifoldState (unnormalized amplitudes).
  [[nodiscard]] ManifoldState row_state(std::size_t i) const;
  [[nodiscard]] std::vector<double> times() const;
  [[nodiscard]] std::vector<double> concurrences() const;
};

using GeneratorAt = std::function<Generator(double)>;

/// One classical RK4 step of dC/dt = G(t) C. Throws NonFiniteState.
[[nodiscard]] ManifoldState step_amplitudes(const ManifoldState& state,
                                            const GeneratorAt& generator_at, double t,
                                            double dt);

/// dp/dt = -2 g f'(x) Im{conj(alpha) beta}, alpha = amplitude of |e,n>,
/// beta = amplitude of |g,n+1>, taken from `state` as given.
[[nodiscard]] double momentum_rate(const SystemParams& params, double x_phase,
                                   const ManifoldState& state);

/// One RK4 step of (x, p) under dx/dt = 2 omega_r p and the force law, with
/// the amplitudes held fixed (normalized before use).
[[nodiscard]] Motion step_motion(const Motion& motion, const ManifoldState& amps,
                                 const SystemParams& params, double dt);

/// Integrates from t = 0 to cfg.t_end. RW mode advances amplitudes and motion
/// as one joint state; NRW mode keeps the atom at the initial x (default 0).
/// Rows are emitted every `sample_every` steps and at t_end.
[[nodiscard]] Trajectory integrate(const SystemParams& params, const ManifoldState& initial,
                                   const IntegratorConfig& cfg, Mode mode,
                                   double nrw_x_phase = 0.0);

}  // namespace cavity
