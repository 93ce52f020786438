#include "cavity/scenario.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <thread>

#include "cavity/output.hpp"
#include "cavity/series.hpp"

namespace cavity {

Trajectory simulate(const RunConfig& cfg) {
  validate(cfg);
  return integrate(cfg.params, initial_state(cfg), cfg.integrator, cfg.mode, cfg.x0);
}

ScenarioResult run_scenario(const RunConfig& cfg, const std::filesystem::path& out_dir) {
  ScenarioResult result;
  result.trajectory = simulate(cfg);
  std::filesystem::create_directories(out_dir);

  const auto base = out_dir / cfg.output;
  const auto with_ext = [&](const char* ext) {
    auto p = base;
    p += ext;
    return p;
  };
  write_file_atomic(with_ext(".csv"), trajectory_csv(result.trajectory));
  write_file_atomic(with_ext(".meta"), meta_text(cfg));
  result.files = {with_ext(".csv"), with_ext(".meta")};
  if (cfg.emit_svg) {
    write_file_atomic(with_ext(".svg"), trajectory_svg(result.trajectory, cfg.output));
    result.files.push_back(with_ext(".svg"));
  }
  return result;
}

RunConfig preset_base() {
  RunConfig cfg;
  // With the plain defaults (zero detuning, p0 = 1) the Bell-start concurrence
  // dips to ~1e-4 in both modes and the RW curve turns later than the NRW one.
  cfg.params.omega_a = 0.4;
  cfg.params.omega_c = 1.3;
  cfg.params.eta_T = 0.1;
  cfg.p0 = -1.0;
  cfg.note =
      "figure preset: defaults except omega_a = 0.4, omega_c = 1.3 (pumps at 0, rotating frame,\n"
      "so atom and cavity detunings 0.4 and 1.3), eta_T = 0.1, p0 = -1.\n"
      "These adjustments make the Bell-start minimum stay above zero and the RW turning point\n"
      "precede the NRW one; they are not values taken from any published figure.";
  return cfg;
}

std::vector<RunConfig> preset(const std::string& name) {
  const auto make = [&](Mode mode, InitialKind initial, const std::string& suffix) {
    RunConfig cfg = preset_base();
    cfg.mode = mode;
    cfg.initial = initial;
    cfg.output = name + "_" + suffix;
    cfg.emit_svg = true;
    return cfg;
  };
  using enum Mode;
  using enum InitialKind;
  if (name == "fig1") return {make(RW, Separable, "rw_separable"), make(RW, Bell, "rw_bell")};
  if (name == "fig2") return {make(NRW, Separable, "nrw_separable"), make(NRW, Bell, "nrw_bell")};
  if (name == "fig3") return {make(RW, Separable, "rw_separable"), make(NRW, Separable, "nrw_separable")};
  if (name == "fig4") return {make(RW, Bell, "rw_bell"), make(NRW, Bell, "nrw_bell")};
  if (name == "fig5") return {make(RW, Bell, "rw_bell"), make(NRW, Bell, "nrw_bell")};
  throw ConfigError("unknown preset '" + name + "' (expected fig1..fig5)");
}

unsigned sweep_threads() {
  if (const char* env = std::getenv("CAVITY_SIM_THREADS")) {
    const long n = std::strtol(env, nullptr, 10);
    if (n >= 1) return static_cast<unsigned>(n);
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

std::string sweep_summary_csv(const std::vector<SweepRow>& rows) {
  std::string out = "value,min_concurrence,max_concurrence,first_zero_crossing\n";
  for (const auto& row : rows) {
    out += format_double(row.value) + ',' + format_double(row.min_concurrence) + ',' +
           format_double(row.max_concurrence) + ',' +
           (row.first_zero ? format_double(*row.first_zero) : std::string("none")) + '\n';
  }
  return out;
}

std::vector<SweepRow> run_sweep(const RunConfig& base, const std::string& axis,
                                const std::vector<double>& values,
                                const std::filesystem::path& out_dir, unsigned threads) {
  if (!is_numeric_key(axis)) throw ConfigError("'" + axis + "' is not a numeric config key");
  if (values.empty()) throw ConfigError("sweep needs at least one value");

  std::vector<RunConfig> configs;
  for (std::size_t i = 0; i < values.size(); ++i) {
    RunConfig cfg = base;
    set_key(cfg, axis, format_double(values[i]));
    cfg.output = base.output + "_" + axis + "_" + std::to_string(i);
    validate(cfg);
    configs.push_back(cfg);
  }

  std::vector<std::optional<SweepRow>> slots(values.size());
  std::atomic<std::size_t> next{0};
  std::atomic<bool> failed{false};
  std::exception_ptr first_error;
  std::mutex error_mutex;

  const auto worker = [&] {
    while (!failed) {
      const std::size_t i = next++;
      if (i >= configs.size()) return;
      try {
        const ScenarioResult result = run_scenario(configs[i], out_dir);
        const std::vector<double> c = result.trajectory.concurrences();
        const std::vector<double> t = result.trajectory.times();
        const auto [lo, hi] = std::minmax_element(c.begin(), c.end());
        slots[i] = SweepRow{values[i], *lo, *hi, first_zero_touch(t, c)};
      } catch (...) {
        const std::lock_guard lock(error_mutex);
        if (!first_error) first_error = std::current_exception();
        failed = true;
      }
    }
  };

  const unsigned n_threads =
      std::min<unsigned>(threads ? threads : sweep_threads(), static_cast<unsigned>(configs.size()));
  std::vector<std::thread> pool;
  for (unsigned k = 0; k < n_threads; ++k) pool.emplace_back(worker);
  for (auto& th : pool) th.join();

  std::vector<SweepRow> rows;
  for (const auto& slot : slots) {
    if (slot) rows.push_back(*slot);
  }
  std::filesystem::create_directories(out_dir);
  write_file_atomic(out_dir / (base.output + "_sweep_" + axis + ".csv"), sweep_summary_csv(rows));
  if (first_error) std::rethrow_exception(first_error);
  return rows;
}

}  // namespace cavity
