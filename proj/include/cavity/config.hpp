#pragma once

#include <numbers>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "cavity/core_types.hpp"
#include "cavity/dynamics.hpp"

namespace cavity {

enum class InitialKind { Separable, Bell, Custom };

/// Everything needed for one run. Defaults are the documented simulation
/// defaults; an empty config document yields exactly this.
struct RunConfig {
  SystemParams params;
  IntegratorConfig integrator;
  Mode mode = Mode::RW;
  InitialKind initial = InitialKind::Separable;
  std::vector<Complex> custom_amps;  // used when initial == Custom
  double x0 = std::numbers::pi / 4.0;
  double p0 = 1.0;
  std::string output = "run";  // base file name, no extension
  bool emit_svg = false;
  std::string note;  // free text copied into the .meta file
};

/// Parses `key = value` lines; '#' starts a comment. Unknown or repeated keys
/// throw ConfigError naming the key and line; invariant violations throw
/// ValidationError.
[[nodiscard]] RunConfig parse_config(std::string_view text);
[[nodiscard]] RunConfig load_config(const std::string& path);

/// Assigns one key from its textual value (no cross-field validation).
void set_key(RunConfig& cfg, const std::string& key, const std::string& value);

/// Keys that take a single number; these are valid sweep axes.
[[nodiscard]] const std::vector<std::string>& numeric_keys();
[[nodiscard]] bool is_numeric_key(const std::string& key);

/// Cross-field validation of a fully assigned config.
void validate(const RunConfig& cfg);

/// Every resolved key with its value, in a form parse_config accepts.
[[nodiscard]] std::vector<std::pair<std::string, std::string>> to_key_values(const RunConfig& cfg);

/// Initial manifold state for the configured mode and initial kind.
[[nodiscard]] ManifoldState initial_state(const RunConfig& cfg);

/// Parses "0.6", "-0.8i", "0.3+0.4i", "i".
[[nodiscard]] Complex parse_complex(std::string_view text);

/// 17 significant digits, which reads back bit-exactly.
[[nodiscard]] std::string format_double(double value);

}  // namespace cavity
