#pragma once

#include <complex>
#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace cavity {

using Complex = std::complex<double>;
using AmplitudeVector = Eigen::VectorXcd;

// ---------------------------------------------------------------------------
// Errors

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed or inconsistent configuration (unknown key, frame mismatch, ...).
class ConfigError : public Error {
 public:
  using Error::Error;
};

/// A configuration value violates a domain invariant.
class ValidationError : public ConfigError {
 public:
  using ConfigError::ConfigError;
};

/// Raised when a state has decayed to (numerically) nothing.
class ZeroStateError : public Error {
 public:
  using Error::Error;
};

/// Raised when integration produced NaN or Inf; the step size is too large.
class NonFiniteState : public Error {
 public:
  using Error::Error;
};

class QuotientSingular : public Error {
 public:
  using Error::Error;
};

class NotNormalized : public Error {
 public:
  using Error::Error;
};

class GridMismatch : public Error {
 public:
  using Error::Error;
};

// ---------------------------------------------------------------------------
// Parameters

enum class Frame { Lab, Rotating };

/// Whether the prefactor derivative enters the amplitude equations, either as
/// -pdot or as -pdot/p.
enum class PrefactorTerm { Off, Literal, Quotient };

/// Physical parameters. hbar = 1 and every rate or frequency is measured in
/// units of the atom-field coupling g, so time is in units of 1/g. Position is
/// stored as the phase k*x and momentum in units of hbar*k, which makes the
/// kinetic energy omega_r * p^2.
struct SystemParams {
  double omega_a = 0.0;
  double omega_c = 0.0;
  double omega_L = 0.0;
  double omega_T = 0.0;
  double g = 1.0;
  double eta_L = 0.2;
  double eta_T = 0.2;
  double gamma_a = 0.02;
  double gamma_c = 0.05;
  double gamma_p = 0.01;
  double omega_r = 0.1;
  double k_wave = 1.0;
  int n_photon = 0;
  Frame frame = Frame::Rotating;
  PrefactorTerm prefactor_term = PrefactorTerm::Off;

  /// Cavity and atomic frequencies entering the diagonal of the generator:
  /// bare in the lab frame, detuned from the pumps in the rotating frame.
  [[nodiscard]] double cavity_frequency() const;
  [[nodiscard]] double atom_frequency() const;
  [[nodiscard]] Complex omega_c_complex() const;  // cavity_frequency - i*gamma_c
  [[nodiscard]] Complex omega_a_complex() const;  // atom_frequency/2 - i*gamma_a
};

/// Throws ValidationError (or ConfigError for a frame mismatch) when `params`
/// break an invariant.
void validate(const SystemParams& params);

[[nodiscard]] std::string to_string(Frame frame);
[[nodiscard]] std::string to_string(PrefactorTerm term);
[[nodiscard]] Frame parse_frame(const std::string& text);
[[nodiscard]] PrefactorTerm parse_prefactor_term(const std::string& text);

// ---------------------------------------------------------------------------
// States

enum class AtomLevel { Excited, Ground };

struct BasisLabel {
  AtomLevel atom = AtomLevel::Excited;
  int fock = 0;

  friend bool operator==(const BasisLabel&, const BasisLabel&) = default;
};

[[nodiscard]] std::string to_string(const BasisLabel& label);

/// Classical atomic motion: x is the phase k*x, p is in units of hbar*k.
struct Motion {
  double x = 0.0;
  double p = 0.0;
};

/// Amplitudes over the manifold basis. Two slots: [|e,n>, |g,n+1>]. Four
/// slots: [|e,n>, |e,n+1>, |g,n>, |g,n+1>]. Motion is present iff four slots.
class ManifoldState {
 public:
  ManifoldState(std::vector<BasisLabel> basis, AmplitudeVector amps,
                std::optional<Motion> motion = std::nullopt);

  [[nodiscard]] const std::vector<BasisLabel>& basis() const { return basis_; }
  [[nodiscard]] const AmplitudeVector& amps() const { return amps_; }
  [[nodiscard]] const std::optional<Motion>& motion() const { return motion_; }
  [[nodiscard]] std::size_t size() const { return basis_.size(); }
  [[nodiscard]] int n_photon() const { return basis_.front().fock; }

  [[nodiscard]] ManifoldState with_amps(AmplitudeVector amps) const;
  [[nodiscard]] ManifoldState with_motion(std::optional<Motion> motion) const;

 private:
  std::vector<BasisLabel> basis_;
  AmplitudeVector amps_;
  std::optional<Motion> motion_;
};

[[nodiscard]] std::vector<BasisLabel> nrw_basis(int n_photon);
[[nodiscard]] std::vector<BasisLabel> rw_basis(int n_photon);

/// Two-slot state (C1, C2).
[[nodiscard]] ManifoldState make_nrw_state(int n_photon, Complex c1, Complex c2);
/// Four-slot state (C11, C12, C21, C22) with motion.
[[nodiscard]] ManifoldState make_rw_state(int n_photon, Complex c11, Complex c12,
                                          Complex c21, Complex c22, Motion motion);

[[nodiscard]] double norm(const ManifoldState& state);

inline constexpr double kZeroNorm = 1e-300;

/// Divides every amplitude by the norm. Throws ZeroStateError when the norm is
/// at or below `zero_norm`.
[[nodiscard]] ManifoldState normalize(const ManifoldState& state,
                                      double zero_norm = kZeroNorm);

// ---------------------------------------------------------------------------
// Output records

struct TimeSeriesRow {
  double t = 0.0;
  std::vector<Complex> amps;
  double norm = 1.0;
  double concurrence = 0.0;
  double trace_distance = 0.0;
  std::optional<double> x;
  std::optional<double> p;
};

}  // namespace cavity
