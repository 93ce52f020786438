#include "cavity/series.hpp"

#include <algorithm>

namespace cavity {

std::optional<std::size_t> first_local_extremum(std::span<const double> values) {
  int last_sign = 0;
  std::size_t last_change = 0;
  for (std::size_t i = 1; i < values.size(); ++i) {
    const double diff = values[i] - values[i - 1];
    const int sign = (diff > 0.0) - (diff < 0.0);
    if (sign == 0) continue;
    if (last_sign != 0 && sign != last_sign) return last_change;
    last_sign = sign;
    last_change = i;
  }
  return std::nullopt;
}

std::optional<double> first_zero_touch(std::span<const double> times,
                                       std::span<const double> values, double tol) {
  bool armed = false;
  for (std::size_t i = 0; i < values.size() && i < times.size(); ++i) {
    if (values[i] > tol) {
      armed = true;
    } else if (armed) {
      return times[i];
    }
  }
  return std::nullopt;
}

bool rises_then_declines(std::span<const double> values, double tol) {
  if (values.size() < 3 || values.front() > tol) return false;
  const auto peak = first_local_extremum(values);
  if (!peak || values[*peak] < 0.5) return false;
  const double top = values[*peak];
  return std::any_of(values.begin() + static_cast<std::ptrdiff_t>(*peak), values.end(),
                     [&](double v) { return v <= 0.5 * top; });
}

}  // namespace cavity
