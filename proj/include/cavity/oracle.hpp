#pragma once

#include <optional>
#include <vector>

#include "cavity/core_types.hpp"
#include "cavity/dynamics.hpp"

namespace cavity {

/// Amplitudes over {e,g} x {0..n_max}, excited block first (see full_index).
struct FullState {
  double t = 0.0;
  AmplitudeVector amps;
  int n_max = 0;
};

/// Embeds a manifold state into the full space.
[[nodiscard]] FullState embed(const ManifoldState& state, int n_max);

/// Amplitude of `label` in `state` (zero when outside the cutoff).
[[nodiscard]] Complex amplitude(const FullState& state, const BasisLabel& label);

/// Closed-form resonant Jaynes-Cummings doublet started in |e,n>:
/// (cos(Omega t), -sin(Omega t)) with Omega = g sqrt(n+1). Requires zero
/// decay, zero pumps and zero detuning; throws ConfigError otherwise.
[[nodiscard]] ManifoldState analytic_rabi(const SystemParams& params, double t);

struct MotionSample {
  double t = 0.0;
  double x = 0.0;
  double p = 0.0;
};

struct FullPropagation {
  std::vector<FullState> states;  // one per sample time
  double max_top_population = 0.0;  // relative to the norm squared
  bool cutoff_leak = false;         // max_top_population > 1e-6
};

[[nodiscard]] std::vector<MotionSample> motion_series(const Trajectory& trajectory);

/// Dense propagation on the Fock-truncated space with an adaptive
/// Dormand-Prince integrator (cfg.rel_tol / cfg.abs_tol), sampled on the same
/// grid as integrate(). Without a motion series the atom sits at `x_phase`
/// and no kinetic term is applied; with one, x and p are interpolated
/// linearly into f(x(t)) and the kinetic diagonal.
[[nodiscard]] FullPropagation propagate_full(const SystemParams& params, const FullState& initial,
                                             const std::optional<std::vector<MotionSample>>& motion,
                                             const IntegratorConfig& cfg, double x_phase = 0.0);

struct ManifoldComparison {
  double max_distance = 0.0;  // Euclidean, both sides normalized
  double max_leakage = 0.0;   // population outside the manifold basis
};

/// Throws GridMismatch when row and state counts or times disagree.
[[nodiscard]] ManifoldComparison compare_manifold_vs_full(const Trajectory& trajectory,
                                                          const std::vector<FullState>& full);

}  // namespace cavity
