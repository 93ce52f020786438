#pragma once

#include <vector>

#include "cavity/core_types.hpp"

namespace cavity {

struct Trajectory;

/// Reduced density matrix of the atom, [[p_e, coherence], [conj(coherence), p_g]].
struct ReducedAtomMatrix {
  double p_e = 0.0;
  double p_g = 0.0;
  Complex coherence{};
};

inline constexpr double kNormalizationTolerance = 1e-9;

/// Pure-state concurrence 2|C11 C22 - C12 C21|; for two slots 2|C1 C2|.
/// Throws NotNormalized when the norm differs from 1 by more than 1e-9.
[[nodiscard]] double concurrence(const ManifoldState& state);

/// Partial trace over the Fock label.
[[nodiscard]] ReducedAtomMatrix reduced_atom(const ManifoldState& state);

/// Half the trace norm of rho - sigma, from the closed-form eigenvalues of a
/// Hermitian 2x2 matrix.
[[nodiscard]] double trace_distance(const ReducedAtomMatrix& rho, const ReducedAtomMatrix& sigma);

/// D(rho(t), rho(0)) for every row, on normalized amplitudes.
[[nodiscard]] std::vector<double> trace_distance_series(const Trajectory& trajectory);

}  // namespace cavity
