#pragma once

#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "cavity/core_types.hpp"

namespace cavity {

/// A matrix element of the effective Hamiltonian that connects a manifold
/// ket to a ket outside the manifold and therefore is not represented.
struct DroppedCoupling {
  std::string term;  // "jc", "pump_L" or "pump_T"
  BasisLabel inside;
  BasisLabel outside;
  double magnitude = 0.0;
};

/// dC/dt = matrix * C on a fixed basis.
struct Generator {
  Eigen::MatrixXcd matrix;
  bool time_dependent = false;
  std::vector<DroppedCoupling> dropped;

  [[nodiscard]] Eigen::Index dim() const { return matrix.rows(); }
};

/// Spatial mode function f(kx) = cos(kx).
[[nodiscard]] double coupling_f(double x_phase);
/// df/d(kx) = -sin(kx).
[[nodiscard]] double coupling_f_prime(double x_phase);

/// Generator on [|e,n>, |g,n+1>] for an atom frozen at `x_phase`. Pump
/// couplings have no matrix elements inside this pair and are reported in
/// Generator::dropped.
[[nodiscard]] Generator build_nrw_generator(const SystemParams& params, double x_phase,
                                            double t);

/// Generator on [|e,n>, |e,n+1>, |g,n>, |g,n+1>] for an atom at `motion`.
/// `momentum_rate` is dp/dt from the force law; it is only read when the
/// prefactor term is enabled.
[[nodiscard]] Generator build_rw_generator(const SystemParams& params, const Motion& motion,
                                           double t, double momentum_rate = 0.0);

/// Index of |atom, m> in the full space: excited block first, then ground.
[[nodiscard]] Eigen::Index full_index(const BasisLabel& label, int n_max);

/// Generator on {e,g} x {0..n_max}. `momentum` adds the kinetic diagonal
/// omega_r p^2 (1 - i gamma_p) when the atomic motion is supplied externally.
[[nodiscard]] Generator build_full_generator(const SystemParams& params, double x_phase,
                                             double t, int n_max,
                                             std::optional<double> momentum = std::nullopt);

}  // namespace cavity
