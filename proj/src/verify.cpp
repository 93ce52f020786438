#include "cavity/verify.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <optional>
#include <random>
#include <sstream>

#include "cavity/metrics.hpp"
#include "cavity/oracle.hpp"

namespace cavity {

namespace {

std::string sci(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3e", v);
  return buf;
}

/// Resonant, lossless, undriven doublet with the atom at an antinode.
SystemParams closed_doublet() {
  SystemParams p;
  p.eta_L = p.eta_T = 0.0;
  p.gamma_a = p.gamma_c = p.gamma_p = 0.0;
  return p;
}

IntegratorConfig grid(double dt, double t_end, double sample_interval = 0.01) {
  IntegratorConfig cfg;
  cfg.dt = dt;
  cfg.t_end = t_end;
  cfg.sample_every = std::max(1, static_cast<int>(std::lround(sample_interval / dt)));
  return cfg;
}

AmplitudeVector random_amps(std::mt19937& rng, int n) {
  std::normal_distribution<double> normal;
  AmplitudeVector v(n);
  for (auto& c : v) c = {normal(rng), normal(rng)};
  return v / v.norm();
}

}  // namespace

bool VerifyReport::passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.passed; });
}

std::string VerifyReport::table() const {
  std::ostringstream os;
  for (const auto& c : checks) {
    char line[160];
    std::snprintf(line, sizeof line, "%-22s %s  %s\n", c.name.c_str(), c.passed ? "PASS" : "FAIL",
                  c.detail.c_str());
    os << line;
  }
  os << (passed() ? "all checks passed\n" : "verification FAILED\n");
  return os.str();
}

std::array<double, 3> convergence_ratios(const SystemParams& params, const ManifoldState& initial,
                                         Mode mode, double dt0, double t_end) {
  const auto run = [&](int refine) {
    IntegratorConfig cfg;
    cfg.dt = dt0 / refine;
    cfg.t_end = t_end;
    cfg.sample_every = 8 * refine;
    return integrate(params, initial, cfg, mode);
  };
  const Trajectory reference = run(16);
  std::array<double, 4> errors{};
  for (int k = 0; k < 4; ++k) {
    const Trajectory traj = run(1 << k);
    if (traj.rows.size() != reference.rows.size()) throw GridMismatch("convergence grids differ");
    double worst = 0.0;
    for (std::size_t i = 0; i < traj.rows.size(); ++i) {
      worst = std::max(worst, (traj.row_state(i).amps() - reference.row_state(i).amps()).norm());
    }
    errors[static_cast<std::size_t>(k)] = worst;
  }
  return {errors[0] / errors[1], errors[1] / errors[2], errors[2] / errors[3]};
}

SystemParams convergence_problem() {
  SystemParams p;
  p.frame = Frame::Lab;
  p.omega_a = p.omega_c = p.omega_L = p.omega_T = 8.0;
  return p;
}

CheckResult check_analytic_rabi(double dt) {
  const SystemParams p = closed_doublet();
  const Trajectory traj = integrate(p, make_nrw_state(0, 1.0, 0.0), grid(dt, 10.0), Mode::NRW, 0.0);
  double amp_err = 0.0, conc_err = 0.0;
  for (std::size_t i = 0; i < traj.rows.size(); ++i) {
    const double t = traj.rows[i].t;
    amp_err = std::max(amp_err, (traj.row_state(i).amps() - analytic_rabi(p, t).amps()).norm());
    conc_err = std::max(conc_err, std::abs(traj.rows[i].concurrence - std::abs(std::sin(2.0 * t))));
  }
  const bool ok = amp_err < 1e-6 && conc_err < 1e-6;
  return {"analytic_rabi", ok, "amplitude err " + sci(amp_err) + ", concurrence err " + sci(conc_err)};
}

CheckResult check_doublet_equivalence(double dt) {
  SystemParams p;
  p.eta_L = p.eta_T = 0.0;
  const double x = std::numbers::pi / 4.0;
  const IntegratorConfig cfg = grid(dt, 30.0);
  const ManifoldState initial = make_nrw_state(p.n_photon, 1.0, 0.0);
  const Trajectory traj = integrate(p, initial, cfg, Mode::NRW, x);
  const FullPropagation full =
      propagate_full(p, embed(initial, p.n_photon + 8), std::nullopt, cfg, x);
  const ManifoldComparison cmp = compare_manifold_vs_full(traj, full.states);
  return {"doublet_equivalence", cmp.max_distance < 1e-6,
          "max distance " + sci(cmp.max_distance) + ", leakage " + sci(cmp.max_leakage)};
}

CheckResult check_convergence_order() {
  const SystemParams p = convergence_problem();
  const double r = 1.0 / std::numbers::sqrt2;
  const auto ratios = convergence_ratios(p, make_rw_state(p.n_photon, r, 0.0, 0.0, r, {0.7, 1.0}),
                                         Mode::RW, 0.004, 4.0);
  bool ok = true;
  std::string detail = "ratios";
  for (double q : ratios) {
    ok = ok && q >= 12.0 && q <= 20.0;
    detail += " " + sci(q);
  }
  return {"convergence_order", ok, detail};
}

CheckResult check_norm_law(double dt) {
  // Cavity loss alone acting on |g,1>.
  SystemParams lossy;
  lossy.g = 0.0;
  lossy.eta_L = lossy.eta_T = 0.0;
  lossy.gamma_a = lossy.gamma_p = 0.0;
  lossy.gamma_c = 0.05;
  const Trajectory decay = integrate(lossy, make_nrw_state(0, 0.0, 1.0), grid(dt, 20.0), Mode::NRW);
  double decay_err = 0.0;
  for (const auto& row : decay.rows) {
    const double expected = std::exp(-2.0 * lossy.gamma_c * row.t);
    decay_err = std::max(decay_err, std::abs(row.norm * row.norm - expected) / expected);
  }

  // Everything on except the loss terms.
  SystemParams closed;
  closed.gamma_a = closed.gamma_c = closed.gamma_p = 0.0;
  const Trajectory unitary = integrate(closed, make_rw_state(0, 1.0, 0.0, 0.0, 0.0, {0.7, 1.0}),
                                       grid(dt, 100.0, 0.1), Mode::RW);
  double drift = 0.0;
  for (const auto& row : unitary.rows) drift = std::max(drift, std::abs(row.norm - 1.0));

  return {"norm_law", decay_err < 1e-8 && drift < 1e-8,
          "decay rel err " + sci(decay_err) + ", closed drift " + sci(drift)};
}

CheckResult check_metric_properties(int cases, unsigned seed) {
  std::mt19937 rng(seed);
  bool bounds = true, symmetric = true, triangle = true, product = true;
  for (int k = 0; k < cases; ++k) {
    const ManifoldState a = make_rw_state(0, 0, 0, 0, 0, {}).with_amps(random_amps(rng, 4));
    const ManifoldState b = make_rw_state(0, 0, 0, 0, 0, {}).with_amps(random_amps(rng, 4));
    const ManifoldState c = make_nrw_state(0, 0, 0).with_amps(random_amps(rng, 2));
    const double ca = concurrence(a);
    const double cc = concurrence(c);
    bounds = bounds && ca >= 0.0 && ca <= 1.0 && cc >= 0.0 && cc <= 1.0;

    const ReducedAtomMatrix ra = reduced_atom(a), rb = reduced_atom(b), rc = reduced_atom(c);
    const double dab = trace_distance(ra, rb), dba = trace_distance(rb, ra);
    const double dbc = trace_distance(rb, rc), dac = trace_distance(ra, rc);
    bounds = bounds && dab >= 0.0 && dab <= 1.0 && dac >= 0.0 && dac <= 1.0;
    symmetric = symmetric && dab == dba;
    triangle = triangle && dac <= dab + dbc + 1e-12;

    const AmplitudeVector atom = random_amps(rng, 2), field = random_amps(rng, 2);
    AmplitudeVector prod(4);
    prod << atom[0] * field[0], atom[0] * field[1], atom[1] * field[0], atom[1] * field[1];
    product = product && concurrence(a.with_amps(prod)) < 1e-12;
  }
  const double r = 1.0 / std::numbers::sqrt2;
  const bool bell = std::abs(concurrence(make_rw_state(0, r, 0, 0, r, {})) - 1.0) < 1e-12;
  const bool ok = bounds && symmetric && triangle && product && bell;
  std::string detail = std::to_string(cases) + " cases:";
  detail += bounds ? "" : " bounds";
  detail += symmetric ? "" : " symmetry";
  detail += triangle ? "" : " triangle";
  detail += product ? "" : " product";
  detail += bell ? "" : " bell";
  if (ok) detail += " ok";
  return {"metric_properties", ok, detail};
}

VerifyReport run_verify(const VerifyOptions& options) {
  VerifyReport report;
  const auto guarded = [&](const char* name, auto&& check) {
    try {
      report.checks.push_back(check());
    } catch (const std::exception& e) {
      report.checks.push_back({name, false, std::string("error: ") + e.what()});
    }
  };
  guarded("analytic_rabi", [&] { return check_analytic_rabi(options.dt); });
  guarded("doublet_equivalence", [&] { return check_doublet_equivalence(options.dt); });
  guarded("convergence_order", [&] { return check_convergence_order(); });
  guarded("norm_law", [&] { return check_norm_law(options.dt); });
  guarded("metric_properties", [&] { return check_metric_properties(options.random_cases, options.seed); });
  return report;
}

}  // namespace cavity
