#include "cavity/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "cavity/dynamics.hpp"

namespace cavity {

namespace {

void require_normalized(const ManifoldState& state) {
  const double n = norm(state);
  if (!(std::abs(n - 1.0) <= kNormalizationTolerance)) {
    throw NotNormalized("state norm " + std::to_string(n) + " is not 1");
  }
}

}  // namespace

double concurrence(const ManifoldState& state) {
  require_normalized(state);
  const auto& c = state.amps();
  const double value = state.size() == 4 ? 2.0 * std::abs(c[0] * c[3] - c[1] * c[2])
                                         : 2.0 * std::abs(c[0] * c[1]);
  // 2|ad - bc| <= |a|^2 + |b|^2 + |c|^2 + |d|^2 holds for any vector.
  if (value > c.squaredNorm() + 1e-12) {
    throw NotNormalized("concurrence exceeds its bound; amplitudes are inconsistent");
  }
  return std::clamp(value, 0.0, 1.0);
}

ReducedAtomMatrix reduced_atom(const ManifoldState& state) {
  require_normalized(state);
  const auto& c = state.amps();
  if (state.size() == 2) return {std::norm(c[0]), std::norm(c[1]), Complex{}};
  return {std::norm(c[0]) + std::norm(c[1]), std::norm(c[2]) + std::norm(c[3]),
          c[0] * std::conj(c[2]) + c[1] * std::conj(c[3])};
}

double trace_distance(const ReducedAtomMatrix& rho, const ReducedAtomMatrix& sigma) {
  const double d_e = rho.p_e - sigma.p_e;
  const double d_g = rho.p_g - sigma.p_g;
  const double off = std::abs(rho.coherence - sigma.coherence);
  const double mean = 0.5 * (d_e + d_g);
  const double radius = std::hypot(0.5 * (d_e - d_g), off);
  return 0.5 * (std::abs(mean + radius) + std::abs(mean - radius));
}

std::vector<double> trace_distance_series(const Trajectory& trajectory) {
  std::vector<double> out;
  if (trajectory.rows.empty()) return out;
  out.reserve(trajectory.rows.size());
  const ReducedAtomMatrix sigma = reduced_atom(normalize(trajectory.row_state(0)));
  for (std::size_t i = 0; i < trajectory.rows.size(); ++i) {
    out.push_back(trace_distance(reduced_atom(normalize(trajectory.row_state(i))), sigma));
  }
  return out;
}

}  // namespace cavity
