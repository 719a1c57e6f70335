#include "nlact/bellmap.hpp"

#include <cmath>
#include <stdexcept>
#include <unsupported/Eigen/KroneckerProduct>

#include "nlact/chsh.hpp"
#include "nlact/filtering.hpp"
#include "nlact/random.hpp"
#include "nlact/states.hpp"

namespace nlact {

Eigen::Vector4d n_theta(double theta) {
  const double c = std::cos(theta), s = std::sin(theta);
  return {1 - c - s, 1 + c - s, 1 - c + s, 1 + c + s};
}

ProjectedMap project_map(const std::vector<std::vector<Eigen::MatrixXcd>>& kraus, int n) {
  if (n < 2) throw std::invalid_argument("project_map: at least two parties required");
  if (kraus.empty()) throw std::invalid_argument("project_map: empty Kraus list");

  std::vector<long> hdims(static_cast<size_t>(n), 0);
  for (const auto& factors : kraus) {
    if (static_cast<int>(factors.size()) != n)
      throw std::invalid_argument("project_map: each Kraus operator needs one factor per party");
    for (int i = 0; i < n; ++i) {
      const auto& f = factors[static_cast<size_t>(i)];
      if (f.cols() != 2 || f.rows() < 2 || f.rows() % 2 != 0)
        throw std::invalid_argument("project_map: factor must map C^2 into H_i (x) C^2");
      if (hdims[static_cast<size_t>(i)] == 0) hdims[static_cast<size_t>(i)] = f.rows() / 2;
      else if (hdims[static_cast<size_t>(i)] != f.rows() / 2)
        throw std::invalid_argument("project_map: inconsistent factor shapes");
    }
  }

  // Output legs come out of the factor chain as (H_1, q_1, ..., H_n, q_n);
  // regather rows to (H_1..H_n, q_1..q_n) so projectors and traces act on
  // contiguous blocks.
  std::vector<int> out_dims, perm;
  long dh = 1;
  for (int i = 0; i < n; ++i) {
    out_dims.push_back(static_cast<int>(hdims[static_cast<size_t>(i)]));
    out_dims.push_back(2);
    dh *= hdims[static_cast<size_t>(i)];
  }
  for (int q = 0; q < n; ++q) perm.push_back(2 * q);
  for (int q = 0; q < n; ++q) perm.push_back(2 * q + 1);
  const std::vector<long> row_map = permuted_index_map(out_dims, perm);

  std::vector<Eigen::MatrixXcd> ks;
  for (const auto& factors : kraus) {
    Eigen::MatrixXcd k = Eigen::MatrixXcd::Identity(1, 1);
    for (const auto& f : factors) k = Eigen::MatrixXcd(Eigen::kroneckerProduct(k, f));
    Eigen::MatrixXcd sorted(k.rows(), k.cols());
    for (long r = 0; r < k.rows(); ++r) sorted.row(r) = k.row(row_map[static_cast<size_t>(r)]);
    ks.push_back(std::move(sorted));
  }

  const long rest = 1L << (n - 2);
  const auto bells = bell_projectors();
  const Eigen::MatrixXcd ih = Eigen::MatrixXcd::Identity(dh, dh);
  const Eigen::MatrixXcd irest = Eigen::MatrixXcd::Identity(rest, rest);
  const double scale = 1.0 / static_cast<double>(rest);

  PartyLayout traced_layout;
  for (int i = 0; i < n; ++i) traced_layout.push_back({static_cast<int>(hdims[static_cast<size_t>(i)])});
  for (int i = 0; i < n; ++i) traced_layout.push_back({2});
  std::vector<int> keep;
  for (int i = 0; i < n; ++i) keep.push_back(i);

  ProjectedMap out;
  for (int s = 0; s < 4; ++s) {
    const Eigen::MatrixXcd cs = Eigen::kroneckerProduct(bells[static_cast<size_t>(s)], irest);
    Eigen::MatrixXcd ys = Eigen::MatrixXcd::Zero(dh * 4 * rest, dh * 4 * rest);
    for (const auto& k : ks) ys += k * cs * k.adjoint();
    for (int r = 0; r < 4; ++r) {
      const Eigen::MatrixXcd br = Eigen::kroneckerProduct(
          ih, Eigen::MatrixXcd(Eigen::kroneckerProduct(bells[static_cast<size_t>(r)], irest)));
      MultipartyOperator full{traced_layout, scale * (br * ys)};
      Eigen::MatrixXcd w = partial_trace(full, keep).mat;
      w = 0.5 * (w + w.adjoint()).eval();
      const std::complex<double> t = w.trace();
      if (std::abs(t.imag()) > 1e-10 || t.real() < -1e-10)
        throw std::runtime_error("project_map: projection produced a non-physical weight");
      out.omega[static_cast<size_t>(r)][static_cast<size_t>(s)] = std::move(w);
      out.m(r, s) = t.real();
    }
  }
  return out;
}

Eigen::Matrix4d m0(double eta) {
  if (!(eta >= 0.0 && eta <= 1.0)) throw std::invalid_argument("m0: eta outside [0, 1]");
  Eigen::Matrix4d m = Eigen::Matrix4d::Identity();
  m(1, 1) = 1 - eta;
  m(1, 2) = eta;
  m(2, 1) = eta;
  m(2, 2) = 1 - eta;
  return m;
}

Eigen::Matrix4d g0() {
  Eigen::Matrix4d g = Eigen::Matrix4d::Zero();
  g.topLeftCorner<2, 2>().setOnes();
  return g;
}

Eq9Report verify_eq9(int trials, const std::vector<int>& dims) {
  if (trials < 1) throw std::invalid_argument("verify_eq9: trials < 1");
  for (int d : dims)
    if (d < 2) throw std::invalid_argument("verify_eq9: dims entries must be >= 2");

  const double pi4 = std::atan(1.0);
  std::mt19937_64 rng = make_rng(0x716f9ull);

  auto run_case = [&](const PartyLayout& tau_layout, const PartyLayout& rho_layout,
                      int rounds, bool reduced) {
    double nu = 1.0;
    for (int i = 0; i < static_cast<int>(tau_layout.size()); ++i)
      nu /= static_cast<double>(party_dim(tau_layout, i));
    double worst = 0.0;
    for (int k = 0; k < rounds; ++k) {
      MultipartyOperator tau = random_state(tau_layout, rng);
      MultipartyOperator rho = random_state(rho_layout, rng);
      MultipartyOperator merged = party_merge(tau, rho);
      FilterBank bank = canonical_filters(tau_layout, reduced);
      const double lhs = lemma_witness(merged, bank, pi4).value;
      const double rhs = nu * activation_witness(rho, tau);
      worst = std::max(worst, std::abs(lhs - rhs) /
                                  std::max({std::abs(lhs), std::abs(rhs), 1e-12}));
    }
    return worst;
  };

  Eq9Report rep;
  for (int d : dims) {
    Eq9Case c;
    c.parties = 2;
    c.d = d;
    c.trials = trials;
    c.max_deviation = run_case({{d}, {d}}, {{d, 2}, {d, 2}}, trials, false);
    rep.cases.push_back(c);
  }

  Eq9Case c3;
  c3.parties = 3;
  c3.d = 0;
  c3.trials = std::max(1, trials / 5);
  c3.max_deviation = run_case({{}, {2}, {2}}, {{2}, {2, 2}, {2}}, c3.trials, true);
  rep.cases.push_back(c3);

  for (const auto& c : rep.cases) rep.max_deviation = std::max(rep.max_deviation, c.max_deviation);
  rep.pass = rep.max_deviation <= 1e-10;
  return rep;
}

} // namespace nlact
