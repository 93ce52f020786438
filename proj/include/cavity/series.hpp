#pragma once

#include <cstddef>
#include <optional>
#include <span>

namespace cavity {

/// Sampled concurrence at or below this counts as "reached zero". Sampling
/// every 0.01/g resolves the true zeros of the default runs to about 0.02.
inline constexpr double kEntanglementZeroTolerance = 0.05;

/// Index of the first turning point (local maximum or minimum), ignoring flat
/// stretches.
[[nodiscard]] std::optional<std::size_t> first_local_extremum(std::span<const double> values);

/// First time at which `values` drops to `tol` or below after having been
/// above it (so a series starting at zero must rise first).
[[nodiscard]] std::optional<double> first_zero_touch(std::span<const double> times,
                                                     std::span<const double> values,
                                                     double tol = kEntanglementZeroTolerance);

/// Starts at zero and peaks at 0.5 or more; later drops to half that peak.
[[nodiscard]] bool rises_then_declines(std::span<const double> values,
                                       double tol = kEntanglementZeroTolerance);

}  // namespace cavity
