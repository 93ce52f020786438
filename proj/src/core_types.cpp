#include "cavity/core_types.hpp"

#include <cmath>
#include <sstream>
#include <utility>

namespace cavity {

double SystemParams::cavity_frequency() const {
  return frame == Frame::Rotating ? omega_c - omega_L : omega_c;
}

double SystemParams::atom_frequency() const {
  return frame == Frame::Rotating ? omega_a - omega_T : omega_a;
}

Complex SystemParams::omega_c_complex() const { return {cavity_frequency(), -gamma_c}; }

Complex SystemParams::omega_a_complex() const { return {atom_frequency() / 2.0, -gamma_a}; }

namespace {

void require(bool ok, const std::string& what) {
  if (!ok) throw ValidationError(what);
}

}  // namespace

void validate(const SystemParams& p) {
  for (auto [name, value] : {std::pair{"omega_a", p.omega_a}, {"omega_c", p.omega_c},
                             {"omega_L", p.omega_L}, {"omega_T", p.omega_T},
                             {"g", p.g}, {"eta_L", p.eta_L}, {"eta_T", p.eta_T},
                             {"gamma_a", p.gamma_a}, {"gamma_c", p.gamma_c},
                             {"gamma_p", p.gamma_p}, {"omega_r", p.omega_r},
                             {"k_wave", p.k_wave}}) {
    require(std::isfinite(value), std::string(name) + " must be finite");
  }
  // g is the unit of every rate; 0 switches the atom-field coupling off.
  require(p.g == 1.0 || p.g == 0.0, "g must be 1 (coupling units) or 0 (decoupled)");
  require(p.gamma_a >= 0.0, "gamma_a must be >= 0");
  require(p.gamma_c >= 0.0, "gamma_c must be >= 0");
  require(p.gamma_p >= 0.0, "gamma_p must be >= 0");
  require(p.eta_L >= 0.0, "eta_L must be >= 0");
  require(p.eta_T >= 0.0, "eta_T must be >= 0");
  require(p.omega_r >= 0.0, "omega_r must be >= 0");
  require(p.k_wave > 0.0, "k_wave must be > 0");
  require(p.n_photon >= 0, "n_photon must be >= 0");
  if (p.frame == Frame::Rotating && p.omega_L != p.omega_T) {
    throw ConfigError("rotating frame requires omega_L == omega_T");
  }
}

std::string to_string(Frame frame) { return frame == Frame::Lab ? "lab" : "rotating"; }

std::string to_string(PrefactorTerm term) {
  switch (term) {
    case PrefactorTerm::Off: return "off";
    case PrefactorTerm::Literal: return "literal";
    case PrefactorTerm::Quotient: return "quotient";
  }
  return "off";
}

Frame parse_frame(const std::string& text) {
  if (text == "lab") return Frame::Lab;
  if (text == "rotating") return Frame::Rotating;
  throw ConfigError("unknown frame '" + text + "' (expected lab|rotating)");
}

PrefactorTerm parse_prefactor_term(const std::string& text) {
  if (text == "off") return PrefactorTerm::Off;
  if (text == "literal") return PrefactorTerm::Literal;
  if (text == "quotient") return PrefactorTerm::Quotient;
  throw ConfigError("unknown prefactor_term '" + text + "' (expected off|literal|quotient)");
}

std::string to_string(const BasisLabel& label) {
  std::ostringstream os;
  os << '|' << (label.atom == AtomLevel::Excited ? 'e' : 'g') << ',' << label.fock << '>';
  return os.str();
}

// ---------------------------------------------------------------------------

ManifoldState::ManifoldState(std::vector<BasisLabel> basis, AmplitudeVector amps,
                             std::optional<Motion> motion)
    : basis_(std::move(basis)), amps_(std::move(amps)), motion_(motion) {
  if (basis_.size() != 2 && basis_.size() != 4) {
    throw ConfigError("manifold basis must have 2 or 4 slots");
  }
  if (static_cast<std::size_t>(amps_.size()) != basis_.size()) {
    throw ConfigError("amplitude count does not match basis size");
  }
  for (const BasisLabel& label : basis_) {
    if (label.fock < 0) throw ConfigError("Fock index must be non-negative");
  }
  if (motion_.has_value() != (basis_.size() == 4)) {
    throw ConfigError("motion must be present exactly for the four-slot basis");
  }
  if (!amps_.allFinite()) throw NonFiniteState("non-finite amplitude");
  if (motion_ && !(std::isfinite(motion_->x) && std::isfinite(motion_->p))) {
    throw NonFiniteState("non-finite motion");
  }
}

ManifoldState ManifoldState::with_amps(AmplitudeVector amps) const {
  return ManifoldState(basis_, std::move(amps), motion_);
}

ManifoldState ManifoldState::with_motion(std::optional<Motion> motion) const {
  return ManifoldState(basis_, amps_, motion);
}

std::vector<BasisLabel> nrw_basis(int n) {
  return {{AtomLevel::Excited, n}, {AtomLevel::Ground, n + 1}};
}

std::vector<BasisLabel> rw_basis(int n) {
  return {{AtomLevel::Excited, n},
          {AtomLevel::Excited, n + 1},
          {AtomLevel::Ground, n},
          {AtomLevel::Ground, n + 1}};
}

ManifoldState make_nrw_state(int n, Complex c1, Complex c2) {
  AmplitudeVector amps(2);
  amps << c1, c2;
  return ManifoldState(nrw_basis(n), amps);
}

ManifoldState make_rw_state(int n, Complex c11, Complex c12, Complex c21, Complex c22,
                            Motion motion) {
  AmplitudeVector amps(4);
  amps << c11, c12, c21, c22;
  return ManifoldState(rw_basis(n), amps, motion);
}

double norm(const ManifoldState& state) { return state.amps().norm(); }

ManifoldState normalize(const ManifoldState& state, double zero_norm) {
  const double n = norm(state);
  if (!(n > zero_norm)) throw ZeroStateError("cannot normalize a zero state");
  return state.with_amps(state.amps() / n);
}

}  // namespace cavity
