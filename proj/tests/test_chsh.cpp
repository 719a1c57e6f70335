#include <doctest.h>

#include <cmath>

#include "nlact/chsh.hpp"
#include "nlact/random.hpp"
#include "nlact/states.hpp"
#include "oracles.hpp"

using namespace nlact;

namespace {

const double r2 = std::sqrt(2.0);
const Eigen::Vector3d ex(1, 0, 0), ez(0, 0, 1);

// canonical settings attaining 2*sqrt(2) on the singlet
ChshSettings singlet_settings() {
  ChshSettings s;
  s.a0 = ez;
  s.a1 = ex;
  s.b0 = -(ez + ex) / r2;
  s.b1 = (ex - ez) / r2;
  return s;
}

Eigen::Vector3d rand_dir(std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  Eigen::Vector3d v(g(rng), g(rng), g(rng));
  return v.normalized();
}

} // namespace

TEST_SUITE("chsh") {

TEST_CASE("correlator on singlet, maximally mixed, and werner states") {
  auto singlet = werner2(1.0);
  CHECK(correlator(singlet, ez, ez) == doctest::Approx(-1.0).epsilon(1e-12));
  CHECK(std::abs(correlator(werner2(0.0), ez, ex)) <= 1e-14);
  auto rng = make_rng(31);
  for (double p : {-0.2, 0.3, 0.85})
    for (int k = 0; k < 5; ++k) {
      Eigen::Vector3d n = rand_dir(rng);
      CHECK(correlator(werner2(p), n, n) == doctest::Approx(-p).epsilon(1e-11));
    }
  CHECK_THROWS_AS(correlator(singlet, 2 * ez, ez), std::invalid_argument);
  CHECK_THROWS_AS(correlator(make_operator({{3}, {3}}, werner_d(3, 0.5).mat), ez, ez),
                  std::invalid_argument);
}

TEST_CASE("chsh_value at the canonical singlet settings") {
  CHECK(chsh_value(werner2(1.0), singlet_settings()) == doctest::Approx(2 * r2).epsilon(1e-12));
  CHECK(chsh_value(werner2(0.8), singlet_settings()) ==
        doctest::Approx(1.6 * r2).epsilon(1e-12));
}

TEST_CASE("degenerate settings collapse to 2 E00") {
  ChshSettings s;
  s.a0 = s.a1 = ez;
  s.b0 = s.b1 = -ez;
  auto rng = make_rng(32);
  for (int k = 0; k < 10; ++k) {
    auto st = random_state({{2}, {2}}, rng);
    const double v = chsh_value(st, s);
    CHECK(v == doctest::Approx(2 * correlator(st, s.a0, s.b0)).epsilon(1e-12));
    CHECK(v <= 2.0 + 1e-12);
  }
}

TEST_CASE("correlation matrix of werner2 is -p I") {
  for (double p : {-0.3, 0.0, 0.6}) {
    Eigen::Matrix3d t = correlation_matrix(werner2(p));
    CHECK((t + p * Eigen::Matrix3d::Identity()).norm() <= 1e-12);
  }
}

TEST_CASE("horodecki maximum on singlet and werner line") {
  CHECK(horodecki_chsh_max(werner2(1.0)).value == doctest::Approx(2 * r2).epsilon(1e-12));
  for (int k = 0; k <= 100; ++k) {
    const double p = k / 100.0;
    CHECK(std::abs(horodecki_chsh_max(werner2(p)).value - 2 * r2 * p) <= 1e-12);
  }
}

TEST_CASE("horodecki settings attain the reported value") {
  auto rng = make_rng(33);
  for (int k = 0; k < 25; ++k) {
    auto st = random_state({{2}, {2}}, rng);
    auto mx = horodecki_chsh_max(st);
    CHECK(std::abs(mx.settings.a0.norm() - 1) <= 1e-12);
    CHECK(std::abs(mx.settings.b1.norm() - 1) <= 1e-12);
    CHECK(std::abs(chsh_value(st, mx.settings) - mx.value) <= 1e-9);
  }
}

TEST_CASE("horodecki dominates sampled settings") {
  auto rng = make_rng(34);
  auto st = random_state({{2}, {2}}, rng);
  const double mx = horodecki_chsh_max(st).value;
  for (int k = 0; k < 100; ++k) {
    ChshSettings s{rand_dir(rng), rand_dir(rng), rand_dir(rng), rand_dir(rng)};
    CHECK(chsh_value(st, s) <= mx + 1e-9);
  }
}

TEST_CASE("product states never violate") {
  auto rng = make_rng(35);
  for (int k = 0; k < 20; ++k) {
    auto st = random_product_state({{2}, {2}}, rng);
    CHECK(horodecki_chsh_max(st).value <= 2.0 + 1e-9);
  }
}

TEST_CASE("horodecki is deterministic under spectral ties") {
  auto a = horodecki_chsh_max(werner2(0.9));
  auto b = horodecki_chsh_max(werner2(0.9));
  CHECK((a.settings.a0 - b.settings.a0).norm() == 0.0);
  CHECK((a.settings.b0 - b.settings.b0).norm() == 0.0);
}

TEST_CASE("horodecki agrees with the grid-search oracle") {
  auto rng = make_rng(36);
  for (int k = 0; k < 6; ++k) {
    auto st = random_state({{2}, {2}}, rng);
    auto brute = oracle::brute_chsh(st.mat);
    CHECK(std::abs(horodecki_chsh_max(st).value - brute.value) <= brute.bound);
    CHECK(horodecki_chsh_max(st).value >= brute.value - 1e-9);
  }
}

TEST_CASE("lemma witness with zero filters vanishes") {
  FilterBank bank;
  bank.ops = {Eigen::Matrix2cd::Zero(), Eigen::Matrix2cd::Zero()};
  CHECK(lemma_witness(werner2(0.7), bank, std::acos(-1.0) / 4).value == 0.0);
}

TEST_CASE("lemma witness with identity filters is the tilted-kernel expectation") {
  FilterBank bank;
  bank.ops = {Eigen::Matrix2cd::Identity(), Eigen::Matrix2cd::Identity()};
  const double th = std::acos(-1.0) / 4;
  for (double p : {0.0, 0.4, 0.9}) // T_xx = T_zz = -p, so tr[rho H] = 1 + sqrt(2) p
    CHECK(lemma_witness(werner2(p), bank, th).value ==
          doctest::Approx(1 + r2 * p).epsilon(1e-12));

  auto rng = make_rng(37);
  for (int k = 0; k < 10; ++k) { // 1 - sqrt(2)(T_xx + T_zz)/2 on any two-qubit state
    auto st = random_state({{2}, {2}}, rng);
    Eigen::Matrix3d t = correlation_matrix(st);
    CHECK(lemma_witness(st, bank, th).value ==
          doctest::Approx(1 - r2 * (t(0, 0) + t(2, 2)) / 2).epsilon(1e-11));
  }
}

TEST_CASE("a one-sided sigma_y filter flips the kernel expectation sign structure") {
  FilterBank bank;
  bank.ops = {pauli(2), Eigen::Matrix2cd::Identity()};
  const double th = std::acos(-1.0) / 4;
  for (double p : {0.0, 0.4, 0.9}) // conjugation by y negates XX and ZZ
    CHECK(lemma_witness(werner2(p), bank, th).value ==
          doctest::Approx(1 - r2 * p).epsilon(1e-12));
}

TEST_CASE("lemma witness shape validation") {
  FilterBank bank;
  bank.ops = {Eigen::Matrix2cd::Identity()};
  CHECK_THROWS_AS(lemma_witness(werner2(0.5), bank, 0.5), std::invalid_argument);
  bank.ops = {Eigen::MatrixXcd::Identity(3, 3), Eigen::Matrix2cd::Identity()};
  CHECK_THROWS_AS(lemma_witness(werner2(0.5), bank, 0.5), std::invalid_argument);
}

TEST_CASE("activation witness against the closed form") {
  auto anc = ancilla_rho();
  for (int k = 0; k <= 100; ++k) {
    const double p = -1.0 / 3 + k * (1 + 1.0 / 3) / 100;
    CHECK(std::abs(activation_witness(anc, werner2(p)) - closed_form_witness(p)) <= 1e-12);
  }
  CHECK(std::abs(activation_witness(anc, werner2(4 * r2 - 5))) <= 1e-12);
}

TEST_CASE("activation witness of the maximally mixed target") {
  auto tau = make_operator({{2}, {2}}, 0.25 * Eigen::Matrix4cd::Identity());
  CHECK(activation_witness(ancilla_rho(), tau) ==
        doctest::Approx((3 - r2) / 12).epsilon(1e-12));
}

TEST_CASE("closed form witness values") {
  CHECK(std::abs(closed_form_witness(4 * r2 - 5)) <= 1e-15);
  CHECK(closed_form_witness(1.0) == doctest::Approx((1 - r2) / 6).epsilon(1e-14));
  CHECK(closed_form_witness(0.0) == doctest::Approx((3 - r2) / 12).epsilon(1e-14));
}

TEST_CASE("witness cost operator is Hermitian and reproduces the witness") {
  auto rng = make_rng(38);
  auto anc = ancilla_rho();
  for (int k = 0; k < 5; ++k) {
    auto tau = random_state({{2}, {2}}, rng);
    auto w = witness_cost_operator(tau, anc.layout, std::acos(-1.0) / 4);
    CHECK(is_hermitian(w.mat));
    const double direct = (anc.mat * w.mat).trace().real();
    CHECK(std::abs(direct - activation_witness(anc, tau)) <= 1e-13);
  }
  CHECK_THROWS_AS(witness_cost_operator(werner_d(3, 0.5), ancilla_rho().layout, 0.7),
                  std::invalid_argument);
}

} // TEST_SUITE
