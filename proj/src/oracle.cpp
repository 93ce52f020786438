#include "cavity/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include <boost/numeric/odeint.hpp>

#include "cavity/hamiltonian.hpp"

namespace cavity {

namespace odeint = boost::numeric::odeint;

FullState embed(const ManifoldState& state, int n_max) {
  FullState full;
  full.n_max = n_max;
  full.amps = AmplitudeVector::Zero(2 * (n_max + 1));
  for (std::size_t i = 0; i < state.size(); ++i) {
    const BasisLabel& label = state.basis()[i];
    if (label.fock > n_max) throw ConfigError("manifold ket lies above the Fock cutoff");
    full.amps[full_index(label, n_max)] = state.amps()[static_cast<Eigen::Index>(i)];
  }
  return full;
}

Complex amplitude(const FullState& state, const BasisLabel& label) {
  if (label.fock < 0 || label.fock > state.n_max) return {};
  return state.amps[full_index(label, state.n_max)];
}

ManifoldState analytic_rabi(const SystemParams& params, double t) {
  validate(params);
  if (params.gamma_a != 0.0 || params.gamma_c != 0.0 || params.gamma_p != 0.0) {
    throw ConfigError("analytic Rabi solution needs all decay rates zero");
  }
  if (params.eta_L != 0.0 || params.eta_T != 0.0) {
    throw ConfigError("analytic Rabi solution needs both pumps off");
  }
  if (params.atom_frequency() != 0.0 || params.cavity_frequency() != 0.0) {
    throw ConfigError("analytic Rabi solution needs zero detuning");
  }
  const double rabi = params.g * std::sqrt(params.n_photon + 1.0);
  return make_nrw_state(params.n_photon, std::cos(rabi * t), -std::sin(rabi * t));
}

std::vector<MotionSample> motion_series(const Trajectory& trajectory) {
  std::vector<MotionSample> out;
  out.reserve(trajectory.rows.size());
  for (const auto& row : trajectory.rows) {
    if (!row.x || !row.p) throw ConfigError("trajectory carries no motion (NRW mode)");
    out.push_back({row.t, *row.x, *row.p});
  }
  return out;
}

namespace {

using OdeState = std::vector<Complex>;

class MotionInterpolator {
 public:
  explicit MotionInterpolator(const std::vector<MotionSample>& samples) : samples_(samples) {
    if (samples_.empty()) throw ConfigError("empty motion series");
  }

  [[nodiscard]] MotionSample at(double t) const {
    const auto& s = samples_;
    constexpr double slack = 1e-9;
    if (t < s.front().t - slack || t > s.back().t + slack) {
      throw ConfigError("motion series does not cover t = " + std::to_string(t));
    }
    if (s.size() == 1 || t <= s.front().t) return s.front();
    if (t >= s.back().t) return s.back();
    const auto hi = std::upper_bound(s.begin(), s.end(), t,
                                     [](double v, const MotionSample& m) { return v < m.t; });
    const auto lo = hi - 1;
    const double w = (t - lo->t) / (hi->t - lo->t);
    return {t, lo->x + w * (hi->x - lo->x), lo->p + w * (hi->p - lo->p)};
  }

 private:
  const std::vector<MotionSample>& samples_;
};

double top_population(const AmplitudeVector& amps, int n_max) {
  const double total = amps.squaredNorm();
  if (!(total > 0.0)) return 0.0;
  const double top = std::norm(amps[full_index({AtomLevel::Excited, n_max}, n_max)]) +
                     std::norm(amps[full_index({AtomLevel::Ground, n_max}, n_max)]);
  return top / total;
}

}  // namespace

FullPropagation propagate_full(const SystemParams& params, const FullState& initial,
                               const std::optional<std::vector<MotionSample>>& motion,
                               const IntegratorConfig& cfg, double x_phase) {
  validate(params);
  const int n_max = initial.n_max;
  if (n_max < params.n_photon + 3) throw ConfigError("n_max must be at least n_photon + 3");
  if (initial.amps.size() != 2 * (n_max + 1)) throw ConfigError("full state has wrong length");

  std::optional<MotionInterpolator> interp;
  if (motion) interp.emplace(*motion);

  const auto system = [&](const OdeState& psi, OdeState& dpsi, double t) {
    Generator gen;
    if (interp) {
      const MotionSample m = interp->at(t);
      gen = build_full_generator(params, m.x, t, n_max, m.p);
    } else {
      gen = build_full_generator(params, x_phase, t, n_max);
    }
    const Eigen::Map<const AmplitudeVector> in(psi.data(), static_cast<Eigen::Index>(psi.size()));
    Eigen::Map<AmplitudeVector> out(dpsi.data(), static_cast<Eigen::Index>(dpsi.size()));
    out.noalias() = gen.matrix * in;
  };

  const std::vector<double> times = sample_times(cfg);
  OdeState psi(initial.amps.data(), initial.amps.data() + initial.amps.size());

  FullPropagation result;
  result.states.reserve(times.size());
  const auto observer = [&](const OdeState& state, double t) {
    FullState snap;
    snap.t = t;
    snap.n_max = n_max;
    snap.amps = Eigen::Map<const AmplitudeVector>(state.data(), static_cast<Eigen::Index>(state.size()));
    if (!snap.amps.allFinite()) throw NonFiniteState("oracle state became non-finite");
    result.max_top_population = std::max(result.max_top_population, top_population(snap.amps, n_max));
    result.states.push_back(std::move(snap));
  };

  auto stepper = odeint::make_controlled(cfg.abs_tol, cfg.rel_tol,
                                         odeint::runge_kutta_dopri5<OdeState>());
  odeint::integrate_times(stepper, system, psi, times.begin(), times.end(), cfg.dt, observer);

  // integrate_times reports the grid time it was asked for; pin it exactly.
  for (std::size_t i = 0; i < result.states.size() && i < times.size(); ++i) {
    result.states[i].t = times[i];
  }
  result.cutoff_leak = result.max_top_population > 1e-6;
  return result;
}

ManifoldComparison compare_manifold_vs_full(const Trajectory& trajectory,
                                            const std::vector<FullState>& full) {
  if (trajectory.rows.size() != full.size()) {
    throw GridMismatch("trajectory has " + std::to_string(trajectory.rows.size()) +
                       " rows but oracle has " + std::to_string(full.size()) + " states");
  }
  const int n = trajectory.params_echo.n_photon;
  const std::vector<BasisLabel> basis = trajectory.mode == Mode::RW ? rw_basis(n) : nrw_basis(n);

  ManifoldComparison out;
  for (std::size_t i = 0; i < full.size(); ++i) {
    const TimeSeriesRow& row = trajectory.rows[i];
    if (std::abs(row.t - full[i].t) > 1e-9) {
      throw GridMismatch("time mismatch at sample " + std::to_string(i));
    }
    const AmplitudeVector manifold = normalize(trajectory.row_state(i)).amps();
    AmplitudeVector projection(static_cast<Eigen::Index>(basis.size()));
    for (std::size_t j = 0; j < basis.size(); ++j) {
      projection[static_cast<Eigen::Index>(j)] = amplitude(full[i], basis[j]);
    }
    const double total = full[i].amps.squaredNorm();
    const double inside = projection.squaredNorm();
    if (!(inside > 0.0) || !(total > 0.0)) throw ZeroStateError("oracle projection vanished");
    out.max_leakage = std::max(out.max_leakage, std::max(0.0, 1.0 - inside / total));
    out.max_distance = std::max(out.max_distance, (manifold - projection / std::sqrt(inside)).norm());
  }
  return out;
}

}  // namespace cavity
