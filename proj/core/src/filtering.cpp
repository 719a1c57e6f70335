#include "nlact/filtering.hpp"

#include <cmath>
#include <functional>
#include <random>
#include <stdexcept>
#include <unsupported/Eigen/KroneckerProduct>

#include "nlact/chsh.hpp"
#include "nlact/random.hpp"
#include "nlact/states.hpp"

namespace nlact {

FilterOutcome apply_filter(const MultipartyOperator& state, const FilterBank& bank) {
  const int n = state.num_parties();
  if (static_cast<int>(bank.ops.size()) != n)
    throw std::invalid_argument("apply_filter: one filter per party required");

  Eigen::MatrixXcd k = Eigen::MatrixXcd::Identity(1, 1);
  std::vector<long> survivors;
  for (int i = 0; i < n; ++i) {
    Eigen::MatrixXcd f = bank.ops[static_cast<size_t>(i)];
    if (bank.direction == FilterDirection::out_of_party) f.adjointInPlace();
    if (f.rows() != party_dim(state.layout, i) || f.cols() < 1)
      throw std::invalid_argument("apply_filter: filter shape does not match party dimension");
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(f);
    const double sigma = svd.singularValues().size() ? svd.singularValues()(0) : 0.0;
    if (sigma > 1.0) f /= sigma; // enforce operator norm <= 1, keep smaller norms
    survivors.push_back(f.cols());
    k = Eigen::MatrixXcd(Eigen::kroneckerProduct(k, f));
  }

  Eigen::MatrixXcd omega = k.adjoint() * state.mat * k;
  const double prob = omega.real().trace();

  FilterOutcome out;
  out.success_probability = std::max(0.0, prob);
  out.possible = prob > 1e-14;

  PartyLayout layout;
  for (long s : survivors)
    if (s > 1) layout.push_back({static_cast<int>(s)});
  if (layout.empty()) layout.push_back({});
  out.post_state = MultipartyOperator{std::move(layout),
                                      out.possible ? Eigen::MatrixXcd(omega / prob) : omega};
  return out;
}

FilterBank canonical_filters(const PartyLayout& tau_layout, bool reduced) {
  validate_layout(tau_layout);
  FilterBank bank;
  bank.direction = FilterDirection::into_party;
  for (int i = 0; i < static_cast<int>(tau_layout.size()); ++i) {
    const long d = party_dim(tau_layout, i);
    const bool qubit = i < 2 || !reduced;
    const long s = qubit ? 2 : 1;
    const double a = 1.0 / std::sqrt(static_cast<double>(d));
    Eigen::MatrixXcd f = Eigen::MatrixXcd::Zero(d * d * s, s);
    for (long t = 0; t < d; ++t)
      for (long q = 0; q < s; ++q) f((t * d + t) * s + q, q) = a;
    bank.ops.push_back(std::move(f));
  }
  return bank;
}

MultipartyOperator party_merge(const MultipartyOperator& a, const MultipartyOperator& b) {
  const int n = a.num_parties();
  if (b.num_parties() != n)
    throw std::invalid_argument("party_merge: party count mismatch");

  MultipartyOperator chain = kron(a, b);
  const int na = static_cast<int>(layout_legs(a.layout).size());

  std::vector<int> a_off(static_cast<size_t>(n), 0), b_off(static_cast<size_t>(n), 0);
  for (int i = 1; i < n; ++i) {
    a_off[static_cast<size_t>(i)] = a_off[static_cast<size_t>(i - 1)]
        + static_cast<int>(a.layout[static_cast<size_t>(i - 1)].size());
    b_off[static_cast<size_t>(i)] = b_off[static_cast<size_t>(i - 1)]
        + static_cast<int>(b.layout[static_cast<size_t>(i - 1)].size());
  }

  std::vector<int> perm;
  PartyLayout merged;
  for (int i = 0; i < n; ++i) {
    std::vector<int> party = a.layout[static_cast<size_t>(i)];
    party.insert(party.end(), b.layout[static_cast<size_t>(i)].begin(),
                 b.layout[static_cast<size_t>(i)].end());
    merged.push_back(std::move(party));
    for (size_t t = 0; t < a.layout[static_cast<size_t>(i)].size(); ++t)
      perm.push_back(a_off[static_cast<size_t>(i)] + static_cast<int>(t));
    for (size_t t = 0; t < b.layout[static_cast<size_t>(i)].size(); ++t)
      perm.push_back(na + b_off[static_cast<size_t>(i)] + static_cast<int>(t));
  }

  PartyLayout flat;
  for (int d : layout_legs(chain.layout)) flat.push_back({d});
  return regroup(permute_parties(regroup(chain, flat), perm), merged);
}

ActivationReport activate(const MultipartyOperator& rho, const MultipartyOperator& tau,
                          double theta) {
  const int n = tau.num_parties();
  if (rho.num_parties() != n)
    throw std::invalid_argument("activate: party count mismatch");

  // Detect whether parties >= 2 carry a Bell-test qubit (reduced layout or not).
  bool reduced = false, full = false;
  for (int i = 2; i < n; ++i) {
    std::vector<int> with_qubit = tau.layout[static_cast<size_t>(i)];
    with_qubit.push_back(2);
    if (rho.layout[static_cast<size_t>(i)] == with_qubit) full = true;
    else if (rho.layout[static_cast<size_t>(i)] == tau.layout[static_cast<size_t>(i)]) reduced = true;
    else throw std::invalid_argument("activate: incompatible layouts");
  }
  if (reduced && full)
    throw std::invalid_argument("activate: mixed reduced/full parties are not supported");

  MultipartyOperator merged = party_merge(tau, rho);
  FilterBank bank = canonical_filters(tau.layout, reduced);
  FilterOutcome outcome = apply_filter(merged, bank);
  if (!outcome.possible)
    throw std::runtime_error("activate: canonical filters have zero success probability");

  ActivationReport rep;
  rep.witness = lemma_witness(merged, bank, theta).value;
  rep.nu = 1.0;
  for (int i = 0; i < n; ++i) rep.nu /= static_cast<double>(party_dim(tau.layout, i));
  const double direct = (rho.mat * witness_cost_operator(tau, rho.layout, theta).mat).trace().real();
  rep.identity_residual =
      std::abs(rep.witness - rep.nu * direct) / std::max(1.0, std::abs(rep.nu * direct));
  rep.success_probability = outcome.success_probability;

  MultipartyOperator post2 = outcome.post_state.num_parties() > 2
      ? partial_trace(outcome.post_state, {0, 1})
      : outcome.post_state;
  rep.chsh_value = horodecki_chsh_max(post2).value;
  rep.post_state = std::move(outcome.post_state);
  return rep;
}

static FilterBank truncation_bank(long d1, long d2) {
  FilterBank bank;
  bank.direction = FilterDirection::into_party;
  for (long d : {d1, d2}) {
    Eigen::MatrixXcd f = Eigen::MatrixXcd::Zero(d, 2);
    f(0, 0) = 1.0;
    f(1, 1) = 1.0;
    bank.ops.push_back(std::move(f));
  }
  return bank;
}

double popescu_threshold(int d, double tol) {
  if (d < 2) throw std::invalid_argument("popescu_threshold: d < 2");
  if (tol <= 0) throw std::invalid_argument("popescu_threshold: tol <= 0");

  FilterBank bank = truncation_bank(d, d);
  auto excess = [&](double p) {
    FilterOutcome out = apply_filter(werner_d(d, p), bank);
    if (!out.possible) throw std::runtime_error("popescu_threshold: filter failed");
    return horodecki_chsh_max(out.post_state).value - 2.0;
  };

  double lo = 0.0, hi = 1.0;
  if (excess(hi) <= 0.0 || excess(lo) >= 0.0)
    throw std::runtime_error("popescu_threshold: no CHSH crossing in (0, 1]");
  while (hi - lo > tol) {
    const double mid = 0.5 * (lo + hi);
    (excess(mid) > 0.0 ? hi : lo) = mid;
  }
  return 0.5 * (lo + hi);
}

namespace {

// minimal Nelder-Mead; good enough for the small nonconvex filter search
std::vector<double> nelder_mead(const std::function<double(const std::vector<double>&)>& f,
                                std::vector<double> x0, double h, int iterations) {
  const size_t n = x0.size();
  std::vector<std::vector<double>> xs(n + 1, x0);
  std::vector<double> fs(n + 1);
  for (size_t j = 0; j < n; ++j) xs[j + 1][j] += h;
  for (size_t j = 0; j <= n; ++j) fs[j] = f(xs[j]);

  std::vector<size_t> order(n + 1);
  for (int it = 0; it < iterations; ++it) {
    for (size_t j = 0; j <= n; ++j) order[j] = j;
    std::sort(order.begin(), order.end(), [&](size_t a, size_t b) { return fs[a] < fs[b]; });
    const size_t best = order[0], worst = order[n], second = order[n - 1];
    if (fs[worst] - fs[best] < 1e-12) break;

    std::vector<double> c(n, 0.0);
    for (size_t j = 0; j <= n; ++j)
      if (j != worst)
        for (size_t t = 0; t < n; ++t) c[t] += xs[j][t] / static_cast<double>(n);

    auto mix = [&](double w) {
      std::vector<double> x(n);
      for (size_t t = 0; t < n; ++t) x[t] = c[t] + w * (c[t] - xs[worst][t]);
      return x;
    };

    std::vector<double> xr = mix(1.0);
    double fr = f(xr);
    if (fr < fs[best]) {
      std::vector<double> xe = mix(2.0);
      double fe = f(xe);
      if (fe < fr) { xs[worst] = std::move(xe); fs[worst] = fe; }
      else { xs[worst] = std::move(xr); fs[worst] = fr; }
    } else if (fr < fs[second]) {
      xs[worst] = std::move(xr);
      fs[worst] = fr;
    } else {
      std::vector<double> xc = mix(fr < fs[worst] ? 0.5 : -0.5);
      double fc = f(xc);
      if (fc < std::min(fr, fs[worst])) { xs[worst] = std::move(xc); fs[worst] = fc; }
      else { // shrink toward best
        for (size_t j = 0; j <= n; ++j) {
          if (j == best) continue;
          for (size_t t = 0; t < n; ++t) xs[j][t] = 0.5 * (xs[j][t] + xs[best][t]);
          fs[j] = f(xs[j]);
        }
      }
    }
  }
  size_t arg = 0;
  for (size_t j = 1; j <= n; ++j)
    if (fs[j] < fs[arg]) arg = j;
  return xs[arg];
}

Eigen::MatrixXcd decode_filter(const std::vector<double>& x, size_t off, long d) {
  Eigen::MatrixXcd f(d, 2);
  for (long r = 0; r < d; ++r)
    for (long c = 0; c < 2; ++c) {
      const size_t base = off + 4 * static_cast<size_t>(r) + 2 * static_cast<size_t>(c);
      f(r, c) = std::complex<double>(x[base], x[base + 1]);
    }
  return f;
}

} // namespace

OptimizeResult optimize_filters_chsh(const MultipartyOperator& state, int restarts,
                                     int iterations, std::uint64_t seed) {
  if (state.num_parties() != 2)
    throw std::invalid_argument("optimize_filters_chsh: bipartite state required");
  const long d1 = party_dim(state.layout, 0);
  const long d2 = party_dim(state.layout, 1);
  if (d1 < 2 || d2 < 2)
    throw std::invalid_argument("optimize_filters_chsh: party dimensions must be >= 2");
  if (restarts < 1) throw std::invalid_argument("optimize_filters_chsh: restarts must be >= 1");
  const size_t npar = 4 * static_cast<size_t>(d1 + d2);

  double best_f = 10.0;
  std::vector<double> best_x;
  auto objective = [&](const std::vector<double>& x) {
    FilterBank bank;
    bank.direction = FilterDirection::into_party;
    Eigen::MatrixXcd f1 = decode_filter(x, 0, d1);
    Eigen::MatrixXcd f2 = decode_filter(x, 4 * static_cast<size_t>(d1), d2);
    for (Eigen::MatrixXcd* f : {&f1, &f2}) {
      Eigen::JacobiSVD<Eigen::MatrixXcd> svd(*f);
      const double sigma = svd.singularValues()(0);
      if (sigma < 1e-12) return 10.0;
      *f /= sigma;
    }
    bank.ops = {f1, f2};
    FilterOutcome out = apply_filter(state, bank);
    if (!out.possible) return 10.0;
    const double value = -horodecki_chsh_max(out.post_state).value;
    if (value < best_f) { best_f = value; best_x = x; }
    return value;
  };

  for (int k = 0; k < std::max(1, restarts); ++k) {
    std::vector<double> x0(npar, 0.0);
    if (k == 0) { // qubit-subspace truncation start
      for (size_t off : {size_t{0}, 4 * static_cast<size_t>(d1)}) {
        x0[off + 0] = 1.0;                                  // (0,0) real
        x0[off + 4 * 1 + 2 * 1] = 1.0;                      // (1,1) real
      }
      objective(x0); // protocol floor is recorded even if the search wanders
    } else {
      std::mt19937_64 rng = make_rng(seed + static_cast<std::uint64_t>(k));
      std::normal_distribution<double> g(0.0, 1.0);
      for (double& v : x0) v = g(rng);
    }
    nelder_mead(objective, x0, 0.3, iterations);
  }

  OptimizeResult res;
  FilterBank bank;
  bank.direction = FilterDirection::into_party;
  Eigen::MatrixXcd f1 = decode_filter(best_x, 0, d1);
  Eigen::MatrixXcd f2 = decode_filter(best_x, 4 * static_cast<size_t>(d1), d2);
  for (Eigen::MatrixXcd* f : {&f1, &f2}) {
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(*f);
    *f /= svd.singularValues()(0);
  }
  bank.ops = {f1, f2};
  FilterOutcome out = apply_filter(state, bank);
  res.chsh = horodecki_chsh_max(out.post_state).value;
  res.filters = std::move(bank);
  res.success_probability = out.success_probability;
  return res;
}

TeleportReport teleport_activation(int d, double p) {
  MultipartyOperator w = werner_d(d, p); // validates d, p
  Eigen::VectorXcd phi = max_entangled_ket(d);
  MultipartyOperator phi_proj{{{d}, {d}}, phi * phi.adjoint()};

  // legs (phiA, phiB, wA, wB) -> (phiA, wA, phiB, wB), parties {0},{1},{2,2}
  MultipartyOperator chain = kron(phi_proj, w);
  PartyLayout flat;
  for (int dim : layout_legs(chain.layout)) flat.push_back({dim});
  MultipartyOperator arranged =
      regroup(permute_parties(regroup(chain, flat), {0, 2, 1, 3}), {{d}, {d}, {d, d}});

  FilterBank bank;
  bank.direction = FilterDirection::into_party;
  bank.ops.push_back(Eigen::MatrixXcd::Identity(d, d));
  bank.ops.push_back(Eigen::MatrixXcd::Identity(d, d));
  bank.ops.push_back(phi); // (d*d) x 1: project both legs of party 2 onto |Phi_d>
  FilterOutcome out = apply_filter(arranged, bank);
  if (!out.possible) throw std::runtime_error("teleport_activation: projection failed");

  TeleportReport rep;
  rep.intermediate_trace_distance = trace_distance(out.post_state, w);
  rep.success_probability = out.success_probability;
  if (d == 2)
    rep.activation = activate(ancilla_rho(), out.post_state, std::atan(1.0));
  return rep;
}

ActivationReport multiparty_demo(double p) {
  MultipartyOperator tau{{{}, {2}, {2}}, werner2(p).mat};
  return activate(ancilla_rho3(), tau, std::atan(1.0));
}

} // namespace nlact
