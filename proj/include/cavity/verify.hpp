#pragma once

#include <array>
#include <string>
#include <vector>

#include "cavity/core_types.hpp"
#include "cavity/dynamics.hpp"

namespace cavity {

struct CheckResult {
  std::string name;
  bool passed = false;
  std::string detail;
};

struct VerifyOptions {
  /// Step used by the accuracy checks. The convergence check always runs its
  /// own dt ladder.
  double dt = 0.001;
  int random_cases = 10000;
  unsigned seed = 20240611;
};

struct VerifyReport {
  std::vector<CheckResult> checks;

  [[nodiscard]] bool passed() const;
  [[nodiscard]] std::string table() const;
};

/// Error ratios e(h)/e(h/2) for h = dt0, dt0/2, dt0/4, where e is the max
/// amplitude distance to a dt0/16 reference on a common output grid.
[[nodiscard]] std::array<double, 3> convergence_ratios(const SystemParams& params,
                                                       const ManifoldState& initial, Mode mode,
                                                       double dt0, double t_end);

/// Smooth but fast lab-frame problem whose RK4 error stays well above
/// round-off across the convergence ladder.
[[nodiscard]] SystemParams convergence_problem();

[[nodiscard]] CheckResult check_analytic_rabi(double dt);
[[nodiscard]] CheckResult check_doublet_equivalence(double dt);
[[nodiscard]] CheckResult check_convergence_order();
[[nodiscard]] CheckResult check_norm_law(double dt);
[[nodiscard]] CheckResult check_metric_properties(int cases, unsigned seed);

[[nodiscard]] VerifyReport run_verify(const VerifyOptions& options = {});

}  // namespace cavity
