#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <limits>
#include <numbers>
#include <random>

#include "cavity/core_types.hpp"

using namespace cavity;

namespace {
const Complex I{0.0, 1.0};
const double r2 = 1.0 / std::numbers::sqrt2;
}  // namespace

TEST_CASE("norm of simple states") {
  CHECK(norm(make_nrw_state(0, 1.0, 0.0)) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(norm(make_nrw_state(0, 0.6, 0.8 * I)) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(norm(make_rw_state(0, 2.0, 0.0, 0.0, 0.0, {})) == doctest::Approx(2.0).epsilon(1e-15));
}

TEST_CASE("normalize divides by the norm") {
  const ManifoldState a = normalize(make_nrw_state(0, 2.0, 0.0));
  CHECK(a.amps()[0] == Complex(1.0, 0.0));
  CHECK(a.amps()[1] == Complex(0.0, 0.0));

  const ManifoldState b = normalize(make_nrw_state(0, r2, r2));
  CHECK(std::abs(b.amps()[0] - r2) < 1e-15);
  CHECK(std::abs(b.amps()[1] - r2) < 1e-15);

  CHECK_THROWS_AS((void)normalize(make_nrw_state(0, 0.0, 0.0)), ZeroStateError);
  CHECK_THROWS_AS((void)normalize(make_nrw_state(0, 1e-301, 0.0)), ZeroStateError);
}

TEST_CASE("normalize keeps motion and basis") {
  const ManifoldState s = make_rw_state(2, 1.0, I, 0.0, 3.0, {0.3, -0.7});
  const ManifoldState u = normalize(s);
  CHECK(u.basis() == s.basis());
  REQUIRE(u.motion());
  CHECK(u.motion()->x == 0.3);
  CHECK(u.motion()->p == -0.7);
  CHECK(std::abs(norm(u) - 1.0) < 1e-14);
}

TEST_CASE("normalize is idempotent and norm scales with |c|") {
  std::mt19937 rng(7);
  std::normal_distribution<double> normal;
  for (int k = 0; k < 200; ++k) {
    AmplitudeVector v(4);
    for (auto& c : v) c = {normal(rng), normal(rng)};
    const ManifoldState s = make_rw_state(0, 0, 0, 0, 0, {}).with_amps(v);
    const ManifoldState once = normalize(s);
    const ManifoldState twice = normalize(once);
    for (int i = 0; i < 4; ++i) CHECK(std::abs(once.amps()[i] - twice.amps()[i]) < 1e-15);

    const Complex c{normal(rng), normal(rng)};
    const ManifoldState scaled = s.with_amps(c * v);
    CHECK(norm(scaled) == doctest::Approx(std::abs(c) * norm(s)).epsilon(1e-14));
  }
}

TEST_CASE("bases follow the fixed slot order") {
  const auto nrw = nrw_basis(3);
  REQUIRE(nrw.size() == 2);
  CHECK(nrw[0] == BasisLabel{AtomLevel::Excited, 3});
  CHECK(nrw[1] == BasisLabel{AtomLevel::Ground, 4});

  const auto rw = rw_basis(1);
  REQUIRE(rw.size() == 4);
  CHECK(rw[0] == BasisLabel{AtomLevel::Excited, 1});
  CHECK(rw[1] == BasisLabel{AtomLevel::Excited, 2});
  CHECK(rw[2] == BasisLabel{AtomLevel::Ground, 1});
  CHECK(rw[3] == BasisLabel{AtomLevel::Ground, 2});
  CHECK(to_string(rw[3]) == "|g,2>");
}

TEST_CASE("ManifoldState rejects malformed input") {
  AmplitudeVector three(3);
  three.setZero();
  CHECK_THROWS_AS(ManifoldState(rw_basis(0), three, Motion{}), Error);
  CHECK_THROWS_AS(ManifoldState(rw_basis(0), AmplitudeVector::Zero(4)), Error);  // no motion
  CHECK_THROWS_AS(ManifoldState(nrw_basis(0), AmplitudeVector::Zero(2), Motion{}), Error);
  AmplitudeVector bad = AmplitudeVector::Zero(2);
  bad[1] = std::numeric_limits<double>::quiet_NaN();
  CHECK_THROWS_AS(ManifoldState(nrw_basis(0), bad), Error);
  CHECK_THROWS_AS((void)make_nrw_state(-1, 1.0, 0.0), Error);
}

TEST_CASE("default parameters") {
  const SystemParams p;
  CHECK(p.g == 1.0);
  CHECK(p.eta_L == 0.2);
  CHECK(p.eta_T == 0.2);
  CHECK(p.gamma_a == 0.02);
  CHECK(p.gamma_c == 0.05);
  CHECK(p.gamma_p == 0.01);
  CHECK(p.omega_r == 0.1);
  CHECK(p.n_photon == 0);
  CHECK(p.frame == Frame::Rotating);
  CHECK(p.prefactor_term == PrefactorTerm::Off);
  CHECK_NOTHROW(validate(p));
}

TEST_CASE("complex frequencies use detunings in the rotating frame") {
  SystemParams p;
  p.omega_a = 3.0;
  p.omega_c = 5.0;
  p.omega_L = p.omega_T = 1.0;
  CHECK(p.cavity_frequency() == 4.0);
  CHECK(p.atom_frequency() == 2.0);
  CHECK(p.omega_c_complex() == Complex(4.0, -0.05));
  CHECK(p.omega_a_complex() == Complex(1.0, -0.02));
  p.frame = Frame::Lab;
  CHECK(p.cavity_frequency() == 5.0);
  CHECK(p.omega_a_complex() == Complex(1.5, -0.02));
}

TEST_CASE("parameter validation") {
  const auto with = [](auto edit) {
    SystemParams p;
    edit(p);
    return p;
  };
  CHECK_THROWS_AS(validate(with([](SystemParams& p) { p.gamma_a = -1.0; })), ValidationError);
  CHECK_THROWS_AS(validate(with([](SystemParams& p) { p.gamma_c = -0.1; })), ValidationError);
  CHECK_THROWS_AS(validate(with([](SystemParams& p) { p.gamma_p = -0.1; })), ValidationError);
  CHECK_THROWS_AS(validate(with([](SystemParams& p) { p.eta_L = -0.1; })), ValidationError);
  CHECK_THROWS_AS(validate(with([](SystemParams& p) { p.eta_T = -0.1; })), ValidationError);
  CHECK_THROWS_AS(validate(with([](SystemParams& p) { p.n_photon = -1; })), ValidationError);
  CHECK_THROWS_AS(validate(with([](SystemParams& p) { p.g = 2.0; })), ValidationError);
  CHECK_THROWS_AS(validate(with([](SystemParams& p) { p.omega_a = NAN; })), ValidationError);
  CHECK_NOTHROW(validate(with([](SystemParams& p) { p.g = 0.0; })));

  // Rotating frame needs a single pump frequency.
  const SystemParams mismatch = with([](SystemParams& p) { p.omega_L = 1.0; });
  CHECK_THROWS_AS(validate(mismatch), ConfigError);
  SystemParams lab = mismatch;
  lab.frame = Frame::Lab;
  CHECK_NOTHROW(validate(lab));
}

TEST_CASE("enum text round trips") {
  for (Frame f : {Frame::Lab, Frame::Rotating}) CHECK(parse_frame(to_string(f)) == f);
  for (PrefactorTerm t : {PrefactorTerm::Off, PrefactorTerm::Literal, PrefactorTerm::Quotient}) {
    CHECK(parse_prefactor_term(to_string(t)) == t);
  }
  CHECK_THROWS_AS((void)parse_frame("sideways"), ConfigError);
  CHECK_THROWS_AS((void)parse_prefactor_term("maybe"), ConfigError);
}
