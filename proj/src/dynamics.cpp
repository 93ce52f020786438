#include "cavity/dynamics.hpp"

#include <algorithm>
#include <cmath>

#include "cavity/metrics.hpp"
#include "runge_kutta.hpp"

namespace cavity {

std::string to_string(Method method) {
  return method == Method::RK4 ? "rk4" : "rk45";
}

std::string to_string(Mode mode) { return mode == Mode::RW ? "rw" : "nrw"; }

Method parse_method(const std::string& text) {
  if (text == "rk4") return Method::RK4;
  if (text == "rk45") return Method::RK45Adaptive;
  throw ConfigError("unknown method '" + text + "' (expected rk4|rk45)");
}

Mode parse_mode(const std::string& text) {
  if (text == "rw") return Mode::RW;
  if (text == "nrw") return Mode::NRW;
  throw ConfigError("unknown mode '" + text + "' (expected rw|nrw)");
}

void validate(const IntegratorConfig& cfg) {
  if (!(cfg.dt > 0.0) || !std::isfinite(cfg.dt)) throw ValidationError("dt must be > 0");
  if (!(cfg.t_end > 0.0) || !std::isfinite(cfg.t_end)) throw ValidationError("t_end must be > 0");
  if (cfg.sample_every < 1) throw ValidationError("sample_every must be >= 1");
  if (!(cfg.rel_tol > 0.0)) throw ValidationError("rel_tol must be > 0");
  if (!(cfg.abs_tol > 0.0)) throw ValidationError("abs_tol must be > 0");
}

namespace {

long long step_count(const IntegratorConfig& cfg) {
  return static_cast<long long>(std::ceil(cfg.t_end / cfg.dt - 1e-9));
}

}  // namespace

std::vector<double> sample_times(const IntegratorConfig& cfg) {
  validate(cfg);
  const long long n_steps = step_count(cfg);
  std::vector<double> out{0.0};
  for (long long k = cfg.sample_every; k < n_steps; k += cfg.sample_every) {
    out.push_back(static_cast<double>(k) * cfg.dt);
  }
  out.push_back(cfg.t_end);
  return out;
}

ManifoldState Trajectory::row_state(std::size_t i) const {
  const TimeSeriesRow& row = rows.at(i);
  AmplitudeVector amps = Eigen::Map<const AmplitudeVector>(row.amps.data(),
                                                           static_cast<Eigen::Index>(row.amps.size()));
  const int n = params_echo.n_photon;
  if (mode == Mode::RW) {
    return ManifoldState(rw_basis(n), amps, Motion{row.x.value_or(0.0), row.p.value_or(0.0)});
  }
  return ManifoldState(nrw_basis(n), amps);
}

std::vector<double> Trajectory::times() const {
  std::vector<double> out;
  out.reserve(rows.size());
  for (const auto& row : rows) out.push_back(row.t);
  return out;
}

std::vector<double> Trajectory::concurrences() const {
  std::vector<double> out;
  out.reserve(rows.size());
  for (const auto& row : rows) out.push_back(row.concurrence);
  return out;
}

// ---------------------------------------------------------------------------

ManifoldState step_amplitudes(const ManifoldState& state, const GeneratorAt& generator_at,
                              double t, double dt) {
  if (!(dt > 0.0)) throw ConfigError("dt must be > 0");
  const auto rhs = [&](double tau, const AmplitudeVector& c) -> AmplitudeVector {
    const Generator gen = generator_at(tau);
    if (gen.dim() != c.size()) throw ConfigError("generator dimension does not match state");
    return gen.matrix * c;
  };
  AmplitudeVector next = detail::rk4_step(rhs, t, state.amps(), dt);
  if (!next.allFinite() || !std::isfinite(next.norm())) throw NonFiniteState("amplitudes became non-finite; reduce dt");
  return state.with_amps(std::move(next));
}

double momentum_rate(const SystemParams& params, double x_phase, const ManifoldState& state) {
  const auto& c = state.amps();
  const Complex alpha = c[0];
  const Complex beta = c[static_cast<Eigen::Index>(state.size()) - 1];
  return -2.0 * params.g * coupling_f_prime(x_phase) * std::imag(std::conj(alpha) * beta);
}

namespace {

/// Amplitudes and classical motion advanced as one vector.
struct Joint {
  AmplitudeVector c;
  double x = 0.0;
  double p = 0.0;

  friend Joint operator+(const Joint& a, const Joint& b) { return {a.c + b.c, a.x + b.x, a.p + b.p}; }
  friend Joint operator*(double s, const Joint& a) { return {s * a.c, s * a.x, s * a.p}; }

  // A finite vector whose norm overflows is just as lost.
  [[nodiscard]] bool finite() const {
    return c.allFinite() && std::isfinite(c.norm()) && std::isfinite(x) && std::isfinite(p);
  }
};

struct MotionOnly {
  double x = 0.0;
  double p = 0.0;

  friend MotionOnly operator+(const MotionOnly& a, const MotionOnly& b) { return {a.x + b.x, a.p + b.p}; }
  friend MotionOnly operator*(double s, const MotionOnly& a) { return {s * a.x, s * a.p}; }
};

double force_from(const SystemParams& params, double x, const AmplitudeVector& c,
                  bool unnormalized) {
  double scale = 1.0;
  if (!unnormalized) {
    const double n = c.norm();
    if (!(n > kZeroNorm)) throw ZeroStateError("state decayed to zero norm");
    scale = 1.0 / (n * n);
  }
  const Complex alpha = c[0];
  const Complex beta = c[c.size() - 1];
  return -2.0 * params.g * coupling_f_prime(x) * scale * std::imag(std::conj(alpha) * beta);
}

class JointRhs {
 public:
  JointRhs(const SystemParams& params, const IntegratorConfig& cfg, Mode mode, double nrw_x)
      : params_(params), cfg_(cfg), mode_(mode), nrw_x_(nrw_x) {
    if (mode_ == Mode::NRW) {
      fixed_ = build_nrw_generator(params_, nrw_x_, 0.0);
      if (fixed_.time_dependent) fixed_.matrix.resize(0, 0);
    }
  }

  Joint operator()(double t, const Joint& y) const {
    if (mode_ == Mode::NRW) {
      if (fixed_.matrix.size() != 0) return {fixed_.matrix * y.c, 0.0, 0.0};
      return {build_nrw_generator(params_, nrw_x_, t).matrix * y.c, 0.0, 0.0};
    }
    const double pdot = force_from(params_, y.x, y.c, cfg_.force_unnormalized);
    const Generator gen = build_rw_generator(params_, Motion{y.x, y.p}, t, pdot);
    return {gen.matrix * y.c, 2.0 * params_.omega_r * y.p, pdot};
  }

 private:
  const SystemParams& params_;
  const IntegratorConfig& cfg_;
  Mode mode_;
  double nrw_x_;
  Generator fixed_;
};

double error_ratio(const Joint& y0, const Joint& y1, const Joint& err, const IntegratorConfig& cfg) {
  double worst = 0.0;
  const auto consider = [&](double e, double a, double b) {
    worst = std::max(worst, std::abs(e) / (cfg.abs_tol + cfg.rel_tol * std::max(a, b)));
  };
  for (Eigen::Index i = 0; i < err.c.size(); ++i) {
    consider(std::abs(err.c[i]), std::abs(y0.c[i]), std::abs(y1.c[i]));
  }
  consider(err.x, std::abs(y0.x), std::abs(y1.x));
  consider(err.p, std::abs(y0.p), std::abs(y1.p));
  return worst;
}

class RowWriter {
 public:
  RowWriter(Mode mode, const ReducedAtomMatrix& sigma, int n_photon)
      : mode_(mode), sigma_(sigma), n_photon_(n_photon) {}

  [[nodiscard]] TimeSeriesRow make(double t, const Joint& y) const {
    TimeSeriesRow row;
    row.t = t;
    row.amps.assign(y.c.data(), y.c.data() + y.c.size());
    row.norm = y.c.norm();
    const ManifoldState state =
        mode_ == Mode::RW ? ManifoldState(rw_basis(n_photon_), y.c, Motion{y.x, y.p})
                          : ManifoldState(nrw_basis(n_photon_), y.c);
    const ManifoldState unit = normalize(state);
    row.concurrence = concurrence(unit);
    row.trace_distance = trace_distance(reduced_atom(unit), sigma_);
    if (mode_ == Mode::RW) {
      row.x = y.x;
      row.p = y.p;
    }
    return row;
  }

 private:
  Mode mode_;
  ReducedAtomMatrix sigma_;
  int n_photon_;
};

void check_finite(const Joint& y, double t) {
  if (!y.finite()) {
    throw NonFiniteState("state became non-finite at t = " + std::to_string(t) + "; reduce dt");
  }
}

}  // namespace

Motion step_motion(const Motion& motion, const ManifoldState& amps, const SystemParams& params,
                   double dt) {
  const ManifoldState unit = normalize(amps);
  const auto rhs = [&](double, const MotionOnly& m) -> MotionOnly {
    return {2.0 * params.omega_r * m.p, momentum_rate(params, m.x, unit)};
  };
  const MotionOnly next = detail::rk4_step(rhs, 0.0, MotionOnly{motion.x, motion.p}, dt);
  if (!std::isfinite(next.x) || !std::isfinite(next.p)) throw NonFiniteState("motion became non-finite");
  return {next.x, next.p};
}

Trajectory integrate(const SystemParams& params, const ManifoldState& initial,
                     const IntegratorConfig& cfg, Mode mode, double nrw_x_phase) {
  validate(params);
  validate(cfg);
  const std::size_t expected = mode == Mode::RW ? 4 : 2;
  if (initial.size() != expected) {
    throw ConfigError("initial state has " + std::to_string(initial.size()) + " slots but mode " +
                      to_string(mode) + " needs " + std::to_string(expected));
  }
  if (initial.n_photon() != params.n_photon) {
    throw ConfigError("initial state photon index does not match n_photon");
  }
  if (std::abs(norm(initial) - 1.0) > 1e-12) throw ConfigError("initial state must be normalized");

  Joint y{initial.amps(), 0.0, 0.0};
  if (mode == Mode::RW) {
    y.x = initial.motion()->x;
    y.p = initial.motion()->p;
  }

  Trajectory traj;
  traj.params_echo = params;
  traj.config_echo = cfg;
  traj.mode = mode;

  const JointRhs rhs(params, cfg, mode, nrw_x_phase);
  const RowWriter writer(mode, reduced_atom(normalize(initial)), params.n_photon);
  traj.rows.push_back(writer.make(0.0, y));

  const long long n_steps = step_count(cfg);

  if (cfg.method == Method::RK4) {
    for (long long k = 0; k < n_steps; ++k) {
      const double t0 = static_cast<double>(k) * cfg.dt;
      const double t1 = k + 1 == n_steps ? cfg.t_end : static_cast<double>(k + 1) * cfg.dt;
      y = detail::rk4_step(rhs, t0, y, t1 - t0);
      check_finite(y, t1);
      if ((k + 1) % cfg.sample_every == 0 || k + 1 == n_steps) traj.rows.push_back(writer.make(t1, y));
    }
    return traj;
  }

  // Adaptive: land exactly on each sample time.
  const long long n_samples = (n_steps + cfg.sample_every - 1) / cfg.sample_every;
  double h = cfg.dt;
  double t = 0.0;
  for (long long s = 1; s <= n_samples; ++s) {
    const double target =
        s == n_samples ? cfg.t_end : static_cast<double>(s * cfg.sample_every) * cfg.dt;
    while (t < target) {
      const bool last = t + h >= target;
      const double step = last ? target - t : h;
      const auto trial = detail::dopri5_step(rhs, t, y, step);
      const double err = error_ratio(y, trial.y, trial.error, cfg);
      if (!std::isfinite(err)) throw NonFiniteState("adaptive step produced non-finite error");
      if (err <= 1.0) {
        t = last ? target : t + step;
        y = trial.y;
        check_finite(y, t);
        if (!last) h = step * detail::next_step_factor(err);
      } else {
        h = step * detail::next_step_factor(err);
        if (h < 1e-14 * std::max(1.0, target)) throw NonFiniteState("adaptive step size underflow");
      }
    }
    traj.rows.push_back(writer.make(t, y));
  }
  return traj;
}

}  // namespace cavity
