#include "cavity/hamiltonian.hpp"

#include <algorithm>
#include <cmath>
#include <span>

namespace cavity {

double coupling_f(double x_phase) { return std::cos(x_phase); }

double coupling_f_prime(double x_phase) { return -std::sin(x_phase); }

namespace {

constexpr Complex kI{0.0, 1.0};

struct Term {
  const char* name;
  BasisLabel target;
  Complex h;  // <target| H_eff |source>
};

/// Everything needed to act with the effective Hamiltonian on one ket.
struct Action {
  const SystemParams& params;
  double f;
  double t;
  Complex kinetic;

  // Off-diagonal parts of H_eff applied to |source>.
  [[nodiscard]] std::vector<Term> off_diagonal(const BasisLabel& source) const {
    const auto& p = params;
    const int m = source.fock;
    const double t_phase = p.frame == Frame::Lab ? t : 0.0;
    const Complex down_L = std::exp(-kI * p.omega_L * t_phase);
    const Complex down_T = std::exp(-kI * p.omega_T * t_phase);

    std::vector<Term> terms;
    terms.reserve(4);
    const bool excited = source.atom == AtomLevel::Excited;
    // i g f (sigma+ a - a^dag sigma-)
    if (excited) {
      terms.push_back({"jc", {AtomLevel::Ground, m + 1}, -kI * p.g * f * std::sqrt(m + 1.0)});
    } else if (m >= 1) {
      terms.push_back({"jc", {AtomLevel::Excited, m - 1}, kI * p.g * f * std::sqrt(double(m))});
    }
    // i eta_L (a^dag e^{-i w_L t} - a e^{i w_L t})
    terms.push_back({"pump_L", {source.atom, m + 1}, kI * p.eta_L * std::sqrt(m + 1.0) * down_L});
    if (m >= 1) {
      terms.push_back(
          {"pump_L", {source.atom, m - 1}, -kI * p.eta_L * std::sqrt(double(m)) * std::conj(down_L)});
    }
    // i eta_T (sigma+ e^{-i w_T t} - sigma- e^{i w_T t})
    if (excited) {
      terms.push_back({"pump_T", {AtomLevel::Ground, m}, -kI * p.eta_T * std::conj(down_T)});
    } else {
      terms.push_back({"pump_T", {AtomLevel::Excited, m}, kI * p.eta_T * down_T});
    }
    return terms;
  }

  [[nodiscard]] Complex diagonal(const BasisLabel& source) const {
    const double s = source.atom == AtomLevel::Excited ? 1.0 : -1.0;
    return params.omega_c_complex() * double(source.fock) + s * params.omega_a_complex() + kinetic;
  }
};

template <typename IndexOf>
Generator assemble(const Action& action, std::span<const BasisLabel> basis, IndexOf index_of) {
  const auto dim = static_cast<Eigen::Index>(basis.size());
  Generator gen;
  gen.matrix = Eigen::MatrixXcd::Zero(dim, dim);
  bool pumped = false;
  for (Eigen::Index j = 0; j < dim; ++j) {
    const BasisLabel& source = basis[static_cast<std::size_t>(j)];
    gen.matrix(j, j) += -kI * action.diagonal(source);
    for (const Term& term : action.off_diagonal(source)) {
      const std::optional<Eigen::Index> i = index_of(term.target);
      if (i) {
        gen.matrix(*i, j) += -kI * term.h;
        if (term.name[0] == 'p' && term.h != Complex{}) pumped = true;
      } else if (std::abs(term.h) > 0.0) {
        gen.dropped.push_back({term.name, source, term.target, std::abs(term.h)});
      }
    }
  }
  const auto& p = action.params;
  gen.time_dependent =
      pumped && p.frame == Frame::Lab && (p.omega_L != 0.0 || p.omega_T != 0.0);
  return gen;
}

Generator assemble_on(const Action& action, const std::vector<BasisLabel>& basis) {
  return assemble(action, basis, [&](const BasisLabel& label) -> std::optional<Eigen::Index> {
    const auto it = std::find(basis.begin(), basis.end(), label);
    if (it == basis.end()) return std::nullopt;
    return static_cast<Eigen::Index>(it - basis.begin());
  });
}

Complex kinetic_term(const SystemParams& params, double momentum) {
  return params.omega_r * momentum * momentum * Complex(1.0, -params.gamma_p);
}

}  // namespace

Generator build_nrw_generator(const SystemParams& params, double x_phase, double t) {
  validate(params);
  const Action action{params, coupling_f(x_phase), t, 0.0};
  return assemble_on(action, nrw_basis(params.n_photon));
}

Generator build_rw_generator(const SystemParams& params, const Motion& motion, double t,
                             double momentum_rate) {
  validate(params);
  const Action action{params, coupling_f(motion.x), t, kinetic_term(params, motion.p)};
  Generator gen = assemble_on(action, rw_basis(params.n_photon));

  switch (params.prefactor_term) {
    case PrefactorTerm::Off:
      break;
    case PrefactorTerm::Literal:
      gen.matrix.diagonal().array() -= momentum_rate;
      break;
    case PrefactorTerm::Quotient:
      if (std::abs(motion.p) <= 1e-9) {
        throw QuotientSingular("prefactor quotient -pdot/p is singular at p = 0");
      }
      gen.matrix.diagonal().array() -= momentum_rate / motion.p;
      break;
  }
  return gen;
}

Eigen::Index full_index(const BasisLabel& label, int n_max) {
  const Eigen::Index block = label.atom == AtomLevel::Excited ? 0 : n_max + 1;
  return block + label.fock;
}

Generator build_full_generator(const SystemParams& params, double x_phase, double t, int n_max,
                               std::optional<double> momentum) {
  validate(params);
  if (n_max < params.n_photon + 3) {
    throw ConfigError("n_max must be at least n_photon + 3");
  }
  std::vector<BasisLabel> basis(static_cast<std::size_t>(2 * (n_max + 1)));
  for (int m = 0; m <= n_max; ++m) {
    basis[static_cast<std::size_t>(full_index({AtomLevel::Excited, m}, n_max))] = {AtomLevel::Excited, m};
    basis[static_cast<std::size_t>(full_index({AtomLevel::Ground, m}, n_max))] = {AtomLevel::Ground, m};
  }
  const Action action{params, coupling_f(x_phase), t,
                      momentum ? kinetic_term(params, *momentum) : Complex{}};
  return assemble(action, basis, [&](const BasisLabel& label) -> std::optional<Eigen::Index> {
    if (label.fock < 0 || label.fock > n_max) return std::nullopt;
    return full_index(label, n_max);
  });
}

}  // namespace cavity
