#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "cavity/hamiltonian.hpp"

using namespace cavity;
using Eigen::MatrixXcd;

namespace {

const Complex I{0.0, 1.0};
constexpr double pi = std::numbers::pi;

SystemParams quiet() {
  SystemParams p;
  p.eta_L = p.eta_T = 0.0;
  p.gamma_a = p.gamma_c = p.gamma_p = 0.0;
  p.omega_r = 0.0;
  return p;
}

double max_abs(const MatrixXcd& m) { return m.cwiseAbs().maxCoeff(); }

SystemParams random_closed(std::mt19937& rng, Frame frame) {
  std::uniform_real_distribution<double> u(0.0, 2.0);
  SystemParams p;
  p.frame = frame;
  p.omega_a = u(rng);
  p.omega_c = u(rng);
  p.omega_L = u(rng);
  p.omega_T = frame == Frame::Rotating ? p.omega_L : u(rng);
  p.eta_L = u(rng);
  p.eta_T = u(rng);
  p.omega_r = u(rng);
  p.gamma_a = p.gamma_c = p.gamma_p = 0.0;
  p.n_photon = static_cast<int>(u(rng) * 2);
  return p;
}

/// H_eff assembled from operator matrices on {e,g} x {0..n_max}, independent
/// of the ket-by-ket builder.
MatrixXcd operator_table_generator(const SystemParams& p, double x, double t, int n_max) {
  const int nf = n_max + 1;
  MatrixXcd a = MatrixXcd::Zero(nf, nf);
  for (int m = 1; m < nf; ++m) a(m - 1, m) = std::sqrt(double(m));
  const MatrixXcd ad = a.adjoint();
  const MatrixXcd num = ad * a;
  MatrixXcd sp = MatrixXcd::Zero(2, 2);  // atom order (e, g)
  sp(0, 1) = 1.0;
  const MatrixXcd sm = sp.adjoint();
  MatrixXcd sz = MatrixXcd::Zero(2, 2);
  sz(0, 0) = 1.0;
  sz(1, 1) = -1.0;
  const MatrixXcd ia = MatrixXcd::Identity(2, 2), id = MatrixXcd::Identity(nf, nf);

  const auto kron = [](const MatrixXcd& A, const MatrixXcd& B) {
    MatrixXcd out(A.rows() * B.rows(), A.cols() * B.cols());
    for (Eigen::Index i = 0; i < A.rows(); ++i)
      for (Eigen::Index j = 0; j < A.cols(); ++j)
        out.block(i * B.rows(), j * B.cols(), B.rows(), B.cols()) = A(i, j) * B;
    return out;
  };

  const double f = std::cos(x);
  const Complex eL = std::exp(-I * p.omega_L * t), eT = std::exp(-I * p.omega_T * t);
  const MatrixXcd H = (p.omega_a / 2.0 - I * p.gamma_a) * kron(sz, id) +
                      (p.omega_c - I * p.gamma_c) * kron(ia, num) +
                      I * p.g * f * (kron(sp, a) - kron(sm, ad)) +
                      I * p.eta_L * (kron(ia, ad) * eL - kron(ia, a) * std::conj(eL)) +
                      I * p.eta_T * (kron(sp, id) * eT - kron(sm, id) * std::conj(eT));
  return -I * H;
}

}  // namespace

TEST_CASE("mode function and its derivative") {
  CHECK(coupling_f(0.0) == 1.0);
  CHECK(coupling_f(pi) == doctest::Approx(-1.0));
  CHECK(std::abs(coupling_f(pi / 2)) < 1e-15);
  CHECK(coupling_f_prime(0.0) == 0.0);
  CHECK(coupling_f_prime(pi / 2) == doctest::Approx(-1.0));

  const double h = 1e-5, theta = 0.7;
  const double fd = (coupling_f(theta + h) - coupling_f(theta - h)) / (2 * h);
  CHECK(std::abs(fd - coupling_f_prime(theta)) < 1e-8);
}

TEST_CASE("NRW generator on resonance is a pure rotation") {
  const Generator gen = build_nrw_generator(quiet(), 0.0, 0.0);
  MatrixXcd expected(2, 2);
  expected << 0.0, 1.0, -1.0, 0.0;
  CHECK(gen.dim() == 2);
  CHECK(max_abs(gen.matrix - expected) < 1e-15);
  CHECK_FALSE(gen.time_dependent);
}

TEST_CASE("atomic decay damps the excited slot and grows the ground slot") {
  SystemParams p = quiet();
  p.gamma_a = 0.5;
  const Generator gen = build_nrw_generator(p, 0.0, 0.0);
  CHECK(gen.matrix(0, 0).real() == doctest::Approx(-0.5));
  CHECK(gen.matrix(1, 1).real() == doctest::Approx(0.5));
}

TEST_CASE("NRW coupling scales with sqrt(n+1) and f(x)") {
  SystemParams p = quiet();
  p.n_photon = 3;
  const Generator gen = build_nrw_generator(p, 0.0, 0.0);
  CHECK(std::abs(gen.matrix(0, 1)) == doctest::Approx(2.0));
  CHECK(gen.matrix(1, 0) == -gen.matrix(0, 1));

  const Generator node = build_nrw_generator(p, pi / 3, 0.0);
  CHECK(node.matrix(0, 1).real() == doctest::Approx(2.0 * 0.5));
}

TEST_CASE("NRW diagonal carries the complex frequencies") {
  SystemParams p;
  p.frame = Frame::Lab;
  p.omega_a = 1.2;
  p.omega_c = 0.7;
  p.n_photon = 2;
  const Generator gen = build_nrw_generator(p, 0.3, 0.0);
  const Complex wc = p.omega_c_complex(), wa = p.omega_a_complex();
  CHECK(std::abs(gen.matrix(0, 0) - (-I * (wc * 2.0 + wa))) < 1e-15);
  CHECK(std::abs(gen.matrix(1, 1) - (-I * (wc * 3.0 - wa))) < 1e-15);
}

TEST_CASE("NRW pumps are reported as dropped couplings") {
  SystemParams p;
  p.frame = Frame::Lab;
  p.omega_L = p.omega_T = 2.0;
  const Generator gen = build_nrw_generator(p, 0.0, 0.4);
  CHECK_FALSE(gen.time_dependent);
  bool saw_L = false, saw_T = false;
  for (const auto& d : gen.dropped) {
    saw_L = saw_L || d.term == "pump_L";
    saw_T = saw_T || d.term == "pump_T";
    CHECK(d.magnitude > 0.0);
  }
  CHECK(saw_L);
  CHECK(saw_T);

  // Lab frame pumps only shift the dropped phases, never the kept block.
  SystemParams none = p;
  none.eta_L = none.eta_T = 0.0;
  CHECK(max_abs(gen.matrix - build_nrw_generator(none, 0.0, 0.4).matrix) == 0.0);
}

TEST_CASE("rotating frame requires a common pump frequency") {
  SystemParams p;
  p.omega_L = 1.0;
  p.omega_T = 2.0;
  CHECK_THROWS_AS((void)build_nrw_generator(p, 0.0, 0.0), ConfigError);
  CHECK_THROWS_AS((void)build_rw_generator(p, {}, 0.0), ConfigError);
  CHECK_THROWS_AS((void)build_full_generator(p, 0.0, 0.0, 5), ConfigError);
}

TEST_CASE("RW generator without pumps is block diagonal") {
  const SystemParams p = quiet();
  const Generator rw = build_rw_generator(p, {0.0, 0.0}, 0.0);
  const Generator nrw = build_nrw_generator(p, 0.0, 0.0);
  CHECK(rw.dim() == 4);
  CHECK(rw.matrix(0, 0) == nrw.matrix(0, 0));
  CHECK(rw.matrix(0, 3) == nrw.matrix(0, 1));
  CHECK(rw.matrix(3, 0) == nrw.matrix(1, 0));
  CHECK(rw.matrix(3, 3) == nrw.matrix(1, 1));
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) {
      const bool in_doublet = (i == 0 || i == 3) && (j == 0 || j == 3);
      if (i != j && !in_doublet) CHECK(rw.matrix(i, j) == Complex{});
    }
  }
}

TEST_CASE("kinetic energy shifts every RW diagonal entry") {
  SystemParams p = quiet();
  p.omega_r = 0.1;
  const Generator moving = build_rw_generator(p, {0.2, 2.0}, 0.0);
  const Generator still = build_rw_generator(p, {0.2, 0.0}, 0.0);
  for (int i = 0; i < 4; ++i) {
    CHECK(std::abs(moving.matrix(i, i) - still.matrix(i, i) - Complex(0.0, -0.4)) < 1e-15);
  }
  p.gamma_p = 0.5;
  const Generator lossy = build_rw_generator(p, {0.2, 2.0}, 0.0);
  CHECK(std::abs(lossy.matrix(0, 0) - still.matrix(0, 0) - Complex(-0.2, -0.4)) < 1e-15);
}

TEST_CASE("transverse pump alone couples the two atom pairs") {
  SystemParams p = quiet();
  p.g = 0.0;
  p.eta_T = 1.0;
  const Generator gen = build_rw_generator(p, {0.0, 0.0}, 0.0);
  MatrixXcd expected = MatrixXcd::Zero(4, 4);
  expected(0, 2) = 1.0;
  expected(2, 0) = -1.0;
  expected(1, 3) = 1.0;
  expected(3, 1) = -1.0;
  CHECK(max_abs(gen.matrix - expected) < 1e-15);
}

TEST_CASE("longitudinal pump alone couples neighbouring Fock slots") {
  SystemParams p = quiet();
  p.g = 0.0;
  p.eta_L = 1.0;
  p.n_photon = 1;
  const Generator gen = build_rw_generator(p, {0.0, 0.0}, 0.0);
  MatrixXcd expected = MatrixXcd::Zero(4, 4);
  const double s = std::sqrt(2.0);
  expected(1, 0) = s;
  expected(0, 1) = -s;
  expected(3, 2) = s;
  expected(2, 3) = -s;
  CHECK(max_abs(gen.matrix - expected) < 1e-15);
  // Everything that would leave {n, n+1} is reported.
  CHECK(gen.dropped.size() == 4);
}

TEST_CASE("lab frame pump phases make the RW generator time dependent") {
  SystemParams p;
  p.frame = Frame::Lab;
  p.omega_L = p.omega_T = 1.5;
  const Generator g0 = build_rw_generator(p, {0.3, 1.0}, 0.0);
  const Generator g1 = build_rw_generator(p, {0.3, 1.0}, 0.8);
  CHECK(g0.time_dependent);
  const Complex expected = std::exp(-I * 1.5 * 0.8) * g0.matrix(1, 0);
  CHECK(std::abs(g1.matrix(1, 0) - expected) < 1e-15);

  p.frame = Frame::Rotating;
  CHECK_FALSE(build_rw_generator(p, {0.3, 1.0}, 0.0).time_dependent);
}

TEST_CASE("prefactor term variants") {
  SystemParams p;
  const Motion m{0.4, 2.0};
  const Generator off = build_rw_generator(p, m, 0.0, 0.3);
  CHECK(off.matrix == build_rw_generator(p, m, 0.0, 0.0).matrix);

  p.prefactor_term = PrefactorTerm::Literal;
  const Generator lit = build_rw_generator(p, m, 0.0, 0.3);
  MatrixXcd diff = lit.matrix - off.matrix;
  CHECK(max_abs(diff - MatrixXcd::Identity(4, 4) * -0.3) < 1e-15);

  p.prefactor_term = PrefactorTerm::Quotient;
  const Generator quo = build_rw_generator(p, m, 0.0, 0.3);
  diff = quo.matrix - off.matrix;
  CHECK(max_abs(diff - MatrixXcd::Identity(4, 4) * -0.15) < 1e-15);

  CHECK_THROWS_AS((void)build_rw_generator(p, {0.4, 0.0}, 0.0, 0.3), QuotientSingular);
  CHECK_THROWS_AS((void)build_rw_generator(p, {0.4, 5e-10}, 0.0, 0.3), QuotientSingular);
}

TEST_CASE("closed-system generators are anti-Hermitian") {
  std::mt19937 rng(11);
  std::uniform_real_distribution<double> u(-3.0, 3.0);
  for (Frame frame : {Frame::Lab, Frame::Rotating}) {
    for (int k = 0; k < 50; ++k) {
      const SystemParams p = random_closed(rng, frame);
      const double x = u(rng), t = u(rng) + 3.0, mom = u(rng);
      const MatrixXcd g2 = build_nrw_generator(p, x, t).matrix;
      const MatrixXcd g4 = build_rw_generator(p, {x, mom}, t).matrix;
      const MatrixXcd gf = build_full_generator(p, x, t, p.n_photon + 5, mom).matrix;
      CHECK(max_abs(g2 + g2.adjoint()) < 1e-12);
      CHECK(max_abs(g4 + g4.adjoint()) < 1e-12);
      CHECK(max_abs(gf + gf.adjoint()) < 1e-12);
    }
  }
}

TEST_CASE("RW doublet block equals NRW plus kinetic diagonal") {
  std::mt19937 rng(3);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int k = 0; k < 50; ++k) {
    SystemParams p;
    p.eta_L = p.eta_T = 0.0;
    p.omega_a = u(rng);
    p.omega_c = u(rng);
    p.gamma_a = u(rng);
    p.gamma_c = u(rng);
    p.gamma_p = u(rng);
    p.omega_r = u(rng);
    p.n_photon = k % 4;
    const Motion m{6 * u(rng), 4 * u(rng) - 2};
    const MatrixXcd rw = build_rw_generator(p, m, 0.0).matrix;
    const MatrixXcd nrw = build_nrw_generator(p, m.x, 0.0).matrix;
    const Complex kin = -I * p.omega_r * m.p * m.p * Complex(1.0, -p.gamma_p);
    const int slot[2] = {0, 3};
    for (int i = 0; i < 2; ++i) {
      for (int j = 0; j < 2; ++j) {
        const Complex expected = nrw(i, j) + (i == j ? kin : Complex{});
        CHECK(std::abs(rw(slot[i], slot[j]) - expected) < 1e-14);
      }
    }
  }
}

TEST_CASE("full generator restricted to the RW span reproduces the RW generator") {
  SystemParams p;
  p.frame = Frame::Lab;
  p.omega_a = 0.9;
  p.omega_c = 1.1;
  p.omega_L = 0.5;
  p.omega_T = 0.7;
  for (int n = 0; n < 3; ++n) {
    p.n_photon = n;
    const Motion m{0.6, -1.3};
    const int n_max = n + 4;
    const double t = 1.7;
    const MatrixXcd full = build_full_generator(p, m.x, t, n_max, m.p).matrix;
    const MatrixXcd rw = build_rw_generator(p, m, t).matrix;
    const auto basis = rw_basis(n);
    for (int i = 0; i < 4; ++i) {
      for (int j = 0; j < 4; ++j) {
        const Complex f = full(full_index(basis[i], n_max), full_index(basis[j], n_max));
        CHECK(std::abs(f - rw(i, j)) < 1e-14);
      }
    }
  }
}

TEST_CASE("full generator without pumps conserves excitation number") {
  SystemParams p;
  p.eta_L = p.eta_T = 0.0;
  const int n_max = 6;
  const MatrixXcd g = build_full_generator(p, 0.5, 0.0, n_max).matrix;
  const auto excitations = [&](Eigen::Index i) {
    return i <= n_max ? i + 1 : i - (n_max + 1);  // |e,m> -> m+1, |g,m> -> m
  };
  for (Eigen::Index i = 0; i < g.rows(); ++i) {
    for (Eigen::Index j = 0; j < g.cols(); ++j) {
      if (excitations(i) != excitations(j)) CHECK(g(i, j) == Complex{});
    }
  }
  // |g,0> is dark.
  const Eigen::Index dark = full_index({AtomLevel::Ground, 0}, n_max);
  CHECK(g.row(dark).cwiseAbs().sum() == doctest::Approx(std::abs(g(dark, dark))));
}

TEST_CASE("free full generator is diagonal") {
  SystemParams p = quiet();
  p.g = 0.0;
  p.frame = Frame::Lab;
  p.omega_a = 1.4;
  p.omega_c = 0.6;
  const int n_max = 4;
  const MatrixXcd g = build_full_generator(p, 0.0, 0.0, n_max).matrix;
  MatrixXcd expected = MatrixXcd::Zero(g.rows(), g.cols());
  for (int m = 0; m <= n_max; ++m) {
    expected(full_index({AtomLevel::Excited, m}, n_max), full_index({AtomLevel::Excited, m}, n_max)) =
        -I * (0.6 * m + 0.7);
    expected(full_index({AtomLevel::Ground, m}, n_max), full_index({AtomLevel::Ground, m}, n_max)) =
        -I * (0.6 * m - 0.7);
  }
  CHECK(max_abs(g - expected) < 1e-15);
}

TEST_CASE("full generator matches an operator-algebra element table") {
  SystemParams p;
  p.frame = Frame::Lab;
  p.omega_a = p.omega_c = p.omega_L = p.omega_T = 0.3;
  p.eta_L = p.eta_T = 0.3;
  p.gamma_a = p.gamma_c = p.gamma_p = 0.3;
  p.omega_r = 0.3;
  const int n_max = 3;
  for (double t : {0.0, 0.9, 2.5}) {
    const MatrixXcd built = build_full_generator(p, 0.4, t, n_max).matrix;
    const MatrixXcd table = operator_table_generator(p, 0.4, t, n_max);
    CHECK(max_abs(built - table) < 1e-14);
  }
}

TEST_CASE("full generator layout and cutoff guard") {
  CHECK(full_index({AtomLevel::Excited, 0}, 4) == 0);
  CHECK(full_index({AtomLevel::Excited, 4}, 4) == 4);
  CHECK(full_index({AtomLevel::Ground, 0}, 4) == 5);
  CHECK(full_index({AtomLevel::Ground, 4}, 4) == 9);

  SystemParams p;
  p.n_photon = 2;
  CHECK(build_full_generator(p, 0.0, 0.0, 5).dim() == 12);
  CHECK_THROWS_AS((void)build_full_generator(p, 0.0, 0.0, 4), ConfigError);
}
