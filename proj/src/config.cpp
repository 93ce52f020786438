#include "cavity/config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <map>
#include <set>
#include <sstream>

namespace cavity {

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

double parse_double(std::string_view text) {
  text = trim(text);
  if (!text.empty() && text.front() == '+') text.remove_prefix(1);
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (text.empty() || ec != std::errc{} || ptr != text.data() + text.size()) {
    throw ConfigError("'" + std::string(text) + "' is not a number");
  }
  return value;
}

int parse_int(std::string_view text) {
  text = trim(text);
  int value = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (text.empty() || ec != std::errc{} || ptr != text.data() + text.size()) {
    throw ConfigError("'" + std::string(text) + "' is not an integer");
  }
  return value;
}

bool parse_bool(std::string_view text) {
  text = trim(text);
  if (text == "true" || text == "1" || text == "yes") return true;
  if (text == "false" || text == "0" || text == "no") return false;
  throw ConfigError("'" + std::string(text) + "' is not a boolean");
}

void parse_initial_list(RunConfig& cfg, std::string_view text) {
  text = trim(text);
  if (text == "separable") {
    cfg.initial = InitialKind::Separable;
  } else if (text == "bell") {
    cfg.initial = InitialKind::Bell;
  } else {
    cfg.initial = InitialKind::Custom;
    cfg.custom_amps.clear();
    std::size_t start = 0;
    while (start <= text.size()) {
      const auto comma = text.find(',', start);
      const auto token = text.substr(start, comma == std::string_view::npos ? std::string_view::npos
                                                                              : comma - start);
      cfg.custom_amps.push_back(parse_complex(token));
      if (comma == std::string_view::npos) break;
      start = comma + 1;
    }
  }
}

using Setter = std::function<void(RunConfig&, std::string_view)>;

template <typename Member>
Setter real(Member member) {
  return [member](RunConfig& c, std::string_view v) { std::invoke(member, c) = parse_double(v); };
}

const std::map<std::string, Setter>& setters() {
  static const std::map<std::string, Setter> table = {
      {"omega_a", real([](RunConfig& c) -> double& { return c.params.omega_a; })},
      {"omega_c", real([](RunConfig& c) -> double& { return c.params.omega_c; })},
      {"omega_L", real([](RunConfig& c) -> double& { return c.params.omega_L; })},
      {"omega_T", real([](RunConfig& c) -> double& { return c.params.omega_T; })},
      {"g", real([](RunConfig& c) -> double& { return c.params.g; })},
      {"eta_L", real([](RunConfig& c) -> double& { return c.params.eta_L; })},
      {"eta_T", real([](RunConfig& c) -> double& { return c.params.eta_T; })},
      {"gamma_a", real([](RunConfig& c) -> double& { return c.params.gamma_a; })},
      {"gamma_c", real([](RunConfig& c) -> double& { return c.params.gamma_c; })},
      {"gamma_p", real([](RunConfig& c) -> double& { return c.params.gamma_p; })},
      {"omega_r", real([](RunConfig& c) -> double& { return c.params.omega_r; })},
      {"k_wave", real([](RunConfig& c) -> double& { return c.params.k_wave; })},
      {"n_photon", [](RunConfig& c, std::string_view v) { c.params.n_photon = parse_int(v); }},
      {"frame", [](RunConfig& c, std::string_view v) { c.params.frame = parse_frame(std::string(trim(v))); }},
      {"prefactor_term",
       [](RunConfig& c, std::string_view v) {
         c.params.prefactor_term = parse_prefactor_term(std::string(trim(v)));
       }},
      {"dt", real([](RunConfig& c) -> double& { return c.integrator.dt; })},
      {"t_end", real([](RunConfig& c) -> double& { return c.integrator.t_end; })},
      {"sample_every",
       [](RunConfig& c, std::string_view v) { c.integrator.sample_every = parse_int(v); }},
      {"method",
       [](RunConfig& c, std::string_view v) { c.integrator.method = parse_method(std::string(trim(v))); }},
      {"rel_tol", real([](RunConfig& c) -> double& { return c.integrator.rel_tol; })},
      {"abs_tol", real([](RunConfig& c) -> double& { return c.integrator.abs_tol; })},
      {"force_unnormalized",
       [](RunConfig& c, std::string_view v) { c.integrator.force_unnormalized = parse_bool(v); }},
      {"mode", [](RunConfig& c, std::string_view v) { c.mode = parse_mode(std::string(trim(v))); }},
      {"initial", [](RunConfig& c, std::string_view v) { parse_initial_list(c, v); }},
      {"x0", real([](RunConfig& c) -> double& { return c.x0; })},
      {"p0", real([](RunConfig& c) -> double& { return c.p0; })},
      {"output",
       [](RunConfig& c, std::string_view v) {
         const std::string name(trim(v));
         if (name.empty() || name.find('/') != std::string::npos) {
           throw ConfigError("output must be a plain file name");
         }
         c.output = name;
       }},
      {"emit_svg", [](RunConfig& c, std::string_view v) { c.emit_svg = parse_bool(v); }},
  };
  return table;
}

}  // namespace

Complex parse_complex(std::string_view text) {
  text = trim(text);
  if (text.empty()) throw ConfigError("empty amplitude");
  if (text.back() != 'i') return {parse_double(text), 0.0};

  std::string_view body = text.substr(0, text.size() - 1);
  // Split "a+bi" at the last sign that is not part of an exponent.
  std::size_t split = std::string_view::npos;
  for (std::size_t i = body.size(); i-- > 1;) {
    if ((body[i] == '+' || body[i] == '-') && body[i - 1] != 'e' && body[i - 1] != 'E') {
      split = i;
      break;
    }
  }
  const auto imag_of = [](std::string_view s) {
    s = trim(s);
    if (s.empty() || s == "+") return 1.0;
    if (s == "-") return -1.0;
    return parse_double(s);
  };
  if (split == std::string_view::npos) return {0.0, imag_of(body)};
  return {parse_double(body.substr(0, split)), imag_of(body.substr(split))};
}

std::string format_double(double value) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", value);
  return buf;
}

void set_key(RunConfig& cfg, const std::string& key, const std::string& value) {
  const auto it = setters().find(key);
  if (it == setters().end()) throw ConfigError("unknown key '" + key + "'");
  it->second(cfg, value);
}

const std::vector<std::string>& numeric_keys() {
  static const std::vector<std::string> keys = {
      "omega_a", "omega_c", "omega_L", "omega_T", "g",  "eta_L",   "eta_T",   "gamma_a",
      "gamma_c", "gamma_p", "omega_r", "k_wave",  "n_photon", "dt", "t_end", "sample_every",
      "rel_tol", "abs_tol", "x0",      "p0"};
  return keys;
}

bool is_numeric_key(const std::string& key) {
  const auto& keys = numeric_keys();
  return std::find(keys.begin(), keys.end(), key) != keys.end();
}

void validate(const RunConfig& cfg) {
  validate(cfg.params);
  validate(cfg.integrator);
  if (!std::isfinite(cfg.x0) || !std::isfinite(cfg.p0)) {
    throw ValidationError("x0 and p0 must be finite");
  }
  if (cfg.initial == InitialKind::Custom) {
    const std::size_t want = cfg.mode == Mode::RW ? 4 : 2;
    if (cfg.custom_amps.size() != want) {
      throw ValidationError("initial amplitude list needs " + std::to_string(want) +
                            " entries for mode " + to_string(cfg.mode));
    }
    double n2 = 0.0;
    for (const Complex& c : cfg.custom_amps) {
      if (!std::isfinite(c.real()) || !std::isfinite(c.imag())) {
        throw ValidationError("initial amplitudes must be finite");
      }
      n2 += std::norm(c);
    }
    if (!(n2 > 0.0)) throw ValidationError("initial amplitudes must not all be zero");
  }
  if (cfg.params.prefactor_term == PrefactorTerm::Quotient && cfg.mode == Mode::RW &&
      std::abs(cfg.p0) <= 1e-9) {
    throw ValidationError("prefactor_term = quotient needs |p0| > 1e-9");
  }
}

RunConfig parse_config(std::string_view text) {
  RunConfig cfg;
  std::set<std::string> seen;
  std::istringstream in{std::string(text)};
  std::string raw;
  int line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    std::string_view line = raw;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    const std::string where = "line " + std::to_string(line_no);
    if (eq == std::string_view::npos) throw ConfigError(where + ": expected 'key = value'");
    const std::string key(trim(line.substr(0, eq)));
    const std::string value(trim(line.substr(eq + 1)));
    if (!seen.insert(key).second) throw ConfigError(where + ": duplicate key '" + key + "'");
    if (!setters().contains(key)) throw ConfigError(where + ": unknown key '" + key + "'");
    try {
      set_key(cfg, key, value);
    } catch (const ConfigError& e) {
      throw ConfigError(where + ": key '" + key + "': " + e.what());
    }
  }
  validate(cfg);
  return cfg;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str());
}

std::vector<std::pair<std::string, std::string>> to_key_values(const RunConfig& cfg) {
  const auto& p = cfg.params;
  const auto& i = cfg.integrator;
  const auto d = format_double;
  std::string initial;
  switch (cfg.initial) {
    case InitialKind::Separable: initial = "separable"; break;
    case InitialKind::Bell: initial = "bell"; break;
    case InitialKind::Custom:
      for (std::size_t k = 0; k < cfg.custom_amps.size(); ++k) {
        const Complex c = cfg.custom_amps[k];
        if (k) initial += ", ";
        initial += d(c.real()) + (std::signbit(c.imag()) ? "-" : "+") + d(std::abs(c.imag())) + "i";
      }
      break;
  }
  return {
      {"mode", to_string(cfg.mode)},
      {"initial", initial},
      {"x0", d(cfg.x0)},
      {"p0", d(cfg.p0)},
      {"omega_a", d(p.omega_a)},
      {"omega_c", d(p.omega_c)},
      {"omega_L", d(p.omega_L)},
      {"omega_T", d(p.omega_T)},
      {"g", d(p.g)},
      {"eta_L", d(p.eta_L)},
      {"eta_T", d(p.eta_T)},
      {"gamma_a", d(p.gamma_a)},
      {"gamma_c", d(p.gamma_c)},
      {"gamma_p", d(p.gamma_p)},
      {"omega_r", d(p.omega_r)},
      {"k_wave", d(p.k_wave)},
      {"n_photon", std::to_string(p.n_photon)},
      {"frame", to_string(p.frame)},
      {"prefactor_term", to_string(p.prefactor_term)},
      {"dt", d(i.dt)},
      {"t_end", d(i.t_end)},
      {"sample_every", std::to_string(i.sample_every)},
      {"method", to_string(i.method)},
      {"rel_tol", d(i.rel_tol)},
      {"abs_tol", d(i.abs_tol)},
      {"force_unnormalized", i.force_unnormalized ? "true" : "false"},
      {"output", cfg.output},
      {"emit_svg", cfg.emit_svg ? "true" : "false"},
  };
}

ManifoldState initial_state(const RunConfig& cfg) {
  const int n = cfg.params.n_photon;
  const double r = 1.0 / std::numbers::sqrt2;
  const Motion motion{cfg.x0, cfg.p0};
  switch (cfg.initial) {
    case InitialKind::Separable:
      return cfg.mode == Mode::RW ? make_rw_state(n, 1.0, 0.0, 0.0, 0.0, motion)
                                  : make_nrw_state(n, 1.0, 0.0);
    case InitialKind::Bell:
      return cfg.mode == Mode::RW ? make_rw_state(n, r, 0.0, 0.0, r, motion)
                                  : make_nrw_state(n, r, r);
    case InitialKind::Custom:
      break;
  }
  const auto& a = cfg.custom_amps;
  if (cfg.mode == Mode::RW) {
    if (a.size() != 4) throw ValidationError("rw mode needs four initial amplitudes");
    return normalize(make_rw_state(n, a[0], a[1], a[2], a[3], motion));
  }
  if (a.size() != 2) throw ValidationError("nrw mode needs two initial amplitudes");
  return normalize(make_nrw_state(n, a[0], a[1]));
}

}  // namespace cavity
