#include <doctest.h>

#include <cmath>
#include <complex>

#include "nlact/random.hpp"
#include "nlact/states.hpp"
#include "nlact/tensor.hpp"
#include "oracles.hpp"

using namespace nlact;
using C = std::complex<double>;

namespace {

MultipartyOperator single(const Eigen::MatrixXcd& m) {
  return make_operator({{static_cast<int>(m.rows())}}, m);
}

double rel_err(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b) {
  return (a - b).norm() / std::max(1.0, b.norm());
}

} // namespace

TEST_SUITE("tensor") {

TEST_CASE("kron of sigma_x and sigma_z matches the literal matrix") {
  auto k = kron(single(pauli(1)), single(pauli(3)));
  Eigen::Matrix4cd want;
  want << 0, 0, 1, 0,
          0, 0, 0, -1,
          1, 0, 0, 0,
          0, -1, 0, 0;
  CHECK((k.mat - want).norm() == 0.0);
  CHECK(k.layout == PartyLayout{{2}, {2}});
}

TEST_CASE("kron trace is multiplicative") {
  auto rng = make_rng(11);
  Eigen::MatrixXcd a = random_hermitian(3, rng), b = random_hermitian(3, rng);
  auto k = kron(single(a), single(b));
  CHECK(std::abs(k.mat.trace() - a.trace() * b.trace()) <= 1e-12);
}

TEST_CASE("kron agrees with the naive quadruple loop") {
  auto rng = make_rng(12);
  Eigen::MatrixXcd a = random_state_matrix(2, rng), b = random_state_matrix(3, rng);
  auto k = kron(single(a), single(b));
  CHECK((k.mat - oracle::kron_dense(a, b)).norm() <= 1e-14);
}

TEST_CASE("permute_parties round trip on 2x3x2") {
  auto rng = make_rng(13);
  auto x = random_state({{2}, {3}, {2}}, rng);
  auto y = permute_parties(x, {2, 0, 1});
  CHECK(y.layout == PartyLayout{{2}, {2}, {3}});
  auto z = permute_parties(y, {1, 2, 0}); // inverse of (2,0,1)
  CHECK(rel_err(z.mat, x.mat) <= 1e-14);

  auto want = oracle::permute(x.mat, {2, 3, 2}, {2, 0, 1});
  CHECK((y.mat - want).norm() <= 1e-14);
}

TEST_CASE("permute_parties preserves the spectrum") {
  auto rng = make_rng(14);
  auto x = random_state({{2}, {2}, {3}}, rng);
  auto y = permute_parties(x, {1, 2, 0});
  auto ex = hermitian_eig(x.mat), ey = hermitian_eig(y.mat);
  CHECK((ex.values - ey.values).cwiseAbs().maxCoeff() <= 1e-12);
}

TEST_CASE("partial_trace of a product leaves tr(B) * A") {
  auto rng = make_rng(15);
  Eigen::MatrixXcd a = random_state_matrix(2, rng), b = random_hermitian(3, rng);
  auto k = kron(single(a), single(b));
  auto red = partial_trace(k, {0});
  CHECK(red.layout == PartyLayout{{2}});
  CHECK(rel_err(red.mat, b.trace() * a) <= 1e-14);
}

TEST_CASE("partial_trace of I8 down to one qubit is 4 I2") {
  auto id = make_operator({{2}, {2}, {2}}, Eigen::MatrixXcd::Identity(8, 8));
  auto red = partial_trace(id, {1});
  CHECK(red.layout == PartyLayout{{2}});
  CHECK((red.mat - 4.0 * Eigen::Matrix2cd::Identity()).norm() <= 1e-14);
}

TEST_CASE("maximally entangled qubit marginal is I/2") {
  Eigen::VectorXcd phi = max_entangled_ket(2);
  auto st = make_operator({{2}, {2}}, phi * phi.adjoint());
  auto red = partial_trace(st, {0});
  CHECK((red.mat - 0.5 * Eigen::Matrix2cd::Identity()).norm() <= 1e-14);
}

TEST_CASE("partial_trace agrees with the naive oracle on 2x3x2") {
  auto rng = make_rng(16);
  auto x = random_state({{2}, {3}, {2}}, rng);
  const std::vector<int> dims = {2, 3, 2};
  struct Case {
    std::vector<int> keep;
    std::vector<bool> mask;
  };
  for (const auto& c : {Case{{0}, {true, false, false}},
                        Case{{1}, {false, true, false}},
                        Case{{0, 2}, {true, false, true}},
                        Case{{1, 2}, {false, true, true}}}) {
    auto red = partial_trace(x, c.keep);
    auto want = oracle::ptrace(x.mat, dims, c.mask);
    CHECK((red.mat - want).norm() <= 1e-13);
  }
}

TEST_CASE("partial_trace keeps the party grouping of surviving legs") {
  auto rng = make_rng(17);
  auto x = random_state({{2, 2}, {3}}, rng);
  auto red = partial_trace(x, {0, 1});
  CHECK(red.layout == PartyLayout{{2, 2}}); // party 1 lost all legs and is dropped
  auto red2 = partial_trace(x, {1, 2});
  CHECK(red2.layout == PartyLayout{{2}, {3}});
}

TEST_CASE("partial_transpose of a product transposes only the chosen factor") {
  auto rng = make_rng(18);
  Eigen::MatrixXcd a = random_state_matrix(2, rng), b = random_state_matrix(3, rng);
  auto k = kron(single(a), single(b));
  auto pt = partial_transpose(k, {1});
  auto want = oracle::kron_dense(a, b.transpose());
  CHECK((pt.mat - want).norm() <= 1e-14);
  CHECK(pt.layout == k.layout);
}

TEST_CASE("partial_transpose of the maximally entangled state has eigenvalues -1/2, 1/2 x3") {
  Eigen::VectorXcd phi = max_entangled_ket(2);
  auto st = make_operator({{2}, {2}}, phi * phi.adjoint());
  auto pt = partial_transpose(st, {0});
  auto eig = hermitian_eig(pt.mat);
  Eigen::Vector4d want(-0.5, 0.5, 0.5, 0.5);
  CHECK((eig.values - want).cwiseAbs().maxCoeff() <= 1e-12);
}

TEST_CASE("partial_transpose is an involution and a Frobenius isometry") {
  auto rng = make_rng(19);
  auto x = random_state({{2}, {3}, {2}}, rng);
  auto pt = partial_transpose(x, {0, 2});
  CHECK(pt.mat.norm() == doctest::Approx(x.mat.norm()).epsilon(1e-14));
  auto back = partial_transpose(pt, {0, 2});
  CHECK((back.mat - x.mat).norm() == 0.0); // pure index gather, exact
  auto want = oracle::ptranspose(x.mat, {2, 3, 2}, {true, false, true});
  CHECK((pt.mat - want).norm() == 0.0);
}

TEST_CASE("partial_trace commutes with partial_transpose on traced legs") {
  auto rng = make_rng(20);
  auto x = random_state({{2}, {3}, {2}}, rng);
  auto direct = partial_trace(x, {0});
  auto via_pt = partial_trace(partial_transpose(x, {1, 2}), {0});
  CHECK((direct.mat - via_pt.mat).norm() <= 1e-13);
}

TEST_CASE("hermitian_eig on sigma_z") {
  auto eig = hermitian_eig(pauli(3));
  CHECK(eig.values(0) == doctest::Approx(-1.0).epsilon(1e-14));
  CHECK(eig.values(1) == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("hermitian_eig on the pi/4 kernel") {
  auto eig = hermitian_eig(h_theta(std::acos(-1.0) / 4).mat);
  const double r2 = std::sqrt(2.0);
  Eigen::Vector4d want(1 - r2, 1, 1, 1 + r2);
  CHECK((eig.values - want).cwiseAbs().maxCoeff() <= 1e-12);
}

TEST_CASE("hermitian_eig reconstructs a random 6x6 Hermitian") {
  auto rng = make_rng(21);
  Eigen::MatrixXcd h = random_hermitian(6, rng);
  auto eig = hermitian_eig(h);
  Eigen::MatrixXcd rebuilt =
      eig.vectors * eig.values.asDiagonal() * eig.vectors.adjoint();
  CHECK((rebuilt - h).norm() < 1e-10);
  CHECK((eig.vectors.adjoint() * eig.vectors - Eigen::MatrixXcd::Identity(6, 6)).norm() <= 1e-12);
  CHECK(std::abs(eig.values.sum() - h.trace().real()) <= 1e-10 * std::max(1.0, std::abs(h.trace().real())));
}

TEST_CASE("hermitian_eig rejects non-Hermitian input") {
  Eigen::Matrix2cd m;
  m << C(0, 0), C(1, 0), C(0, 0), C(0, 0);
  CHECK_THROWS_AS(hermitian_eig(m), std::invalid_argument);
}

TEST_CASE("project_psd clips the negative part") {
  Eigen::Matrix2cd d = Eigen::Vector2cd(C(2, 0), C(-1, 0)).asDiagonal();
  Eigen::Matrix2cd want = Eigen::Vector2cd(C(2, 0), C(0, 0)).asDiagonal();
  CHECK((project_psd(d) - want).norm() <= 1e-14);
}

TEST_CASE("project_psd is idempotent") {
  auto rng = make_rng(22);
  Eigen::MatrixXcd h = random_hermitian(6, rng);
  Eigen::MatrixXcd p = project_psd(h);
  CHECK((project_psd(p) - p).norm() <= 1e-12);
  CHECK(hermitian_eig(p).values.minCoeff() >= -1e-12);
}

TEST_CASE("project_psd beats 1e4 random PSD candidates in Frobenius distance") {
  auto rng = make_rng(23);
  Eigen::MatrixXcd h = random_hermitian(4, rng);
  Eigen::MatrixXcd p = project_psd(h);
  const double best = (p - h).norm();
  std::normal_distribution<double> g(0.0, 0.3);
  for (int k = 0; k < 10000; ++k) {
    Eigen::MatrixXcd noise = random_hermitian(4, rng) * std::abs(g(rng));
    Eigen::MatrixXcd cand = project_psd(p + noise);
    CHECK((cand - h).norm() >= best - 1e-12);
  }
}

TEST_CASE("trace_distance basics") {
  auto rng = make_rng(24);
  auto x = random_state({{2}, {2}}, rng);
  CHECK(trace_distance(x, x) <= 1e-14);

  Eigen::Matrix2cd k0 = Eigen::Matrix2cd::Zero(), k1 = Eigen::Matrix2cd::Zero();
  k0(0, 0) = 1;
  k1(1, 1) = 1;
  CHECK(trace_distance(single(k0), single(k1)) == doctest::Approx(1.0).epsilon(1e-14));

  auto y = random_state({{2}, {2}}, rng);
  CHECK(std::abs(trace_distance(x, y) - trace_distance(y, x)) <= 1e-14);
}

TEST_CASE("layout validation and shape errors") {
  CHECK_THROWS_AS(validate_layout({}), std::invalid_argument);
  CHECK_THROWS_AS(validate_layout({{2, 0}}), std::invalid_argument);
  CHECK_THROWS_AS(make_operator({{2}, {2}}, Eigen::MatrixXcd::Identity(3, 3)),
                  std::invalid_argument);
  auto rng = make_rng(25);
  auto x = random_state({{2}, {3}}, rng);
  CHECK_THROWS_AS(permute_parties(x, {0, 0}), std::invalid_argument);
  CHECK_THROWS_AS(permute_parties(x, {0}), std::invalid_argument);
  CHECK_THROWS_AS(partial_trace(x, {1, 0}), std::invalid_argument); // not increasing
  CHECK_THROWS_AS(partial_trace(x, {0, 5}), std::invalid_argument);
  CHECK_THROWS_AS(partial_transpose(x, {7}), std::invalid_argument);
  CHECK_THROWS_AS(regroup(x, {{3}, {2}}), std::invalid_argument);
  CHECK(layout_dim({{2, 3}, {4}}) == 24);
  CHECK(party_leg_indices({{2, 2}, {2}}, 1) == std::vector<int>{2});
}

TEST_CASE("check_state flags the obvious failure modes") {
  auto rng = make_rng(26);
  auto good = random_state({{2}, {2}}, rng);
  CHECK(check_state(good.mat).pass);
  CHECK_FALSE(check_state(2.0 * good.mat).pass);        // trace 2
  CHECK_FALSE(check_state(pauli(3)).pass);              // traceless, indefinite
}

} // TEST_SUITE
