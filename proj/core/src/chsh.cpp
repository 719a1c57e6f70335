#include "nlact/chsh.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>
#include <unsupported/Eigen/KroneckerProduct>

#include "nlact/states.hpp"

namespace nlact {

static void require_two_qubit(const MultipartyOperator& state, const char* who) {
  if (state.dim() != 4)
    throw std::invalid_argument(std::string(who) + ": expected a two-qubit state");
}

static void require_unit(const Eigen::Vector3d& v, const char* who) {
  if (std::abs(v.norm() - 1.0) > 1e-9)
    throw std::invalid_argument(std::string(who) + ": Bloch vector is not unit-norm");
}

static Eigen::Matrix2cd bloch_op(const Eigen::Vector3d& v) {
  return v.x() * pauli(1) + v.y() * pauli(2) + v.z() * pauli(3);
}

double correlator(const MultipartyOperator& state, const Eigen::Vector3d& a,
                  const Eigen::Vector3d& b) {
  require_two_qubit(state, "correlator");
  require_unit(a, "correlator");
  require_unit(b, "correlator");
  Eigen::Matrix4cd op = Eigen::kroneckerProduct(bloch_op(a), bloch_op(b));
  return (state.mat * op).trace().real();
}

double chsh_value(const MultipartyOperator& state, const ChshSettings& s) {
  return correlator(state, s.a0, s.b0) + correlator(state, s.a0, s.b1)
       + correlator(state, s.a1, s.b0) - correlator(state, s.a1, s.b1);
}

Eigen::Matrix3d correlation_matrix(const MultipartyOperator& state) {
  require_two_qubit(state, "correlation_matrix");
  Eigen::Matrix3d t;
  for (int i = 1; i <= 3; ++i)
    for (int j = 1; j <= 3; ++j) {
      Eigen::Matrix4cd op = Eigen::kroneckerProduct(pauli(i), pauli(j));
      t(i - 1, j - 1) = (state.mat * op).trace().real();
    }
  return t;
}

// deterministic sign fix: the largest-magnitude component is made positive
static Eigen::Vector3d sign_fix(Eigen::Vector3d v) {
  int arg = 0;
  for (int i = 1; i < 3; ++i)
    if (std::abs(v(i)) > std::abs(v(arg))) arg = i;
  return v(arg) < 0 ? Eigen::Vector3d(-v) : v;
}

static Eigen::Vector3d safe_direction(const Eigen::Vector3d& v, const Eigen::Vector3d& fallback) {
  double n = v.norm();
  return n > 1e-12 ? Eigen::Vector3d(v / n) : fallback;
}

ChshMax horodecki_chsh_max(const MultipartyOperator& state) {
  Eigen::Matrix3d t = correlation_matrix(state);
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> es(t.transpose() * t);
  const Eigen::Vector3d ev = es.eigenvalues(); // ascending
  const double m1 = std::max(0.0, ev(2));
  const double m2 = std::max(0.0, ev(1));

  Eigen::Vector3d c = sign_fix(es.eigenvectors().col(2));
  Eigen::Vector3d cp = sign_fix(es.eigenvectors().col(1));
  const double phi = std::atan2(std::sqrt(m2), std::sqrt(m1));

  ChshMax out;
  out.value = 2.0 * std::sqrt(m1 + m2);
  out.settings.b0 = (std::cos(phi) * c + std::sin(phi) * cp).normalized();
  out.settings.b1 = (std::cos(phi) * c - std::sin(phi) * cp).normalized();
  out.settings.a0 = safe_direction(t * c, Eigen::Vector3d(0, 0, 1));
  out.settings.a1 = safe_direction(t * cp, Eigen::Vector3d(1, 0, 0));
  return out;
}

static std::string layout_string(const PartyLayout& layout) {
  std::ostringstream os;
  os << "[";
  for (size_t k = 0; k < layout.size(); ++k) {
    os << (k ? ",[" : "[");
    for (size_t t = 0; t < layout[k].size(); ++t) os << (t ? "," : "") << layout[k][t];
    os << "]";
  }
  os << "]";
  return os.str();
}

WitnessReport lemma_witness(const MultipartyOperator& rho, const FilterBank& filters,
                            double theta) {
  const int n = rho.num_parties();
  if (static_cast<int>(filters.ops.size()) != n)
    throw std::invalid_argument("lemma_witness: one filter per party required");

  Eigen::MatrixXcd k = Eigen::MatrixXcd::Identity(1, 1);
  long rest_dim = 1;
  for (int i = 0; i < n; ++i) {
    Eigen::MatrixXcd f = filters.ops[static_cast<size_t>(i)];
    if (filters.direction == FilterDirection::out_of_party) f.adjointInPlace();
    if (f.rows() != party_dim(rho.layout, i))
      throw std::invalid_argument("lemma_witness: filter shape does not match party dimension");
    if (i < 2 && f.cols() != 2)
      throw std::invalid_argument("lemma_witness: parties 0 and 1 must keep a qubit");
    if (i >= 2) rest_dim *= f.cols();
    k = Eigen::MatrixXcd(Eigen::kroneckerProduct(k, f));
  }

  Eigen::MatrixXcd kernel = Eigen::kroneckerProduct(
      h_theta(theta).mat, Eigen::MatrixXcd::Identity(rest_dim, rest_dim));
  const double value = ((k.adjoint() * rho.mat * k) * kernel).trace().real();

  WitnessReport rep;
  rep.value = value;
  rep.theta = theta;
  {
    std::ostringstream os;
    os << "per-party filters, survivors (";
    for (int i = 0; i < n; ++i) {
      const auto& f = filters.ops[static_cast<size_t>(i)];
      long s = filters.direction == FilterDirection::into_party ? f.cols() : f.rows();
      os << (i ? "," : "") << s;
    }
    os << ")";
    rep.filter_desc = os.str();
  }
  rep.state_desc = "state on layout " + layout_string(rho.layout);
  return rep;
}

MultipartyOperator witness_cost_operator(const MultipartyOperator& tau,
                                         const PartyLayout& ancilla_layout, double theta) {
  const int n = tau.num_parties();
  if (static_cast<int>(ancilla_layout.size()) != n)
    throw std::invalid_argument("witness_cost_operator: party count mismatch");

  // Which parties carry a Bell-test qubit in the ancilla layout.
  std::vector<bool> has_qubit(static_cast<size_t>(n), false);
  for (int i = 0; i < n; ++i) {
    const auto& tl = tau.layout[static_cast<size_t>(i)];
    const auto& al = ancilla_layout[static_cast<size_t>(i)];
    std::vector<int> with_qubit = tl;
    with_qubit.push_back(2);
    if (al == with_qubit) {
      has_qubit[static_cast<size_t>(i)] = true;
    } else if (i >= 2 && al == tl) {
      has_qubit[static_cast<size_t>(i)] = false;
    } else {
      throw std::invalid_argument(
          "witness_cost_operator: ancilla party legs must be the target party legs "
          "plus one test qubit (qubit mandatory for parties 0 and 1)");
    }
  }

  // chain: tau^T legs (party-major), then H legs (q0,q1), then extra qubits.
  MultipartyOperator tau_t{tau.layout, tau.mat.transpose()};
  MultipartyOperator chain = kron(tau_t, h_theta(theta));
  int extra = 0;
  for (int i = 2; i < n; ++i)
    if (has_qubit[static_cast<size_t>(i)]) ++extra;
  for (int e = 0; e < extra; ++e)
    chain = kron(chain, MultipartyOperator{{{2}}, Eigen::MatrixXcd::Identity(2, 2)});

  const auto tau_legs = layout_legs(tau.layout);
  const int n_tau = static_cast<int>(tau_legs.size());
  std::vector<int> tau_offset(static_cast<size_t>(n), 0);
  for (int i = 1; i < n; ++i)
    tau_offset[static_cast<size_t>(i)] = tau_offset[static_cast<size_t>(i - 1)]
        + static_cast<int>(tau.layout[static_cast<size_t>(i - 1)].size());

  std::vector<int> perm;
  int next_extra = n_tau + 2;
  for (int i = 0; i < n; ++i) {
    const int n_i = static_cast<int>(tau.layout[static_cast<size_t>(i)].size());
    for (int t = 0; t < n_i; ++t) perm.push_back(tau_offset[static_cast<size_t>(i)] + t);
    if (has_qubit[static_cast<size_t>(i)]) {
      if (i == 0) perm.push_back(n_tau);
      else if (i == 1) perm.push_back(n_tau + 1);
      else perm.push_back(next_extra++);
    }
  }

  PartyLayout flat;
  for (int d : layout_legs(chain.layout)) flat.push_back({d});
  MultipartyOperator permuted = permute_parties(regroup(chain, flat), perm);
  return regroup(permuted, ancilla_layout);
}

double activation_witness(const MultipartyOperator& rho, const MultipartyOperator& tau) {
  const double pi4 = std::atan(1.0);
  MultipartyOperator cost = witness_cost_operator(tau, rho.layout, pi4);
  return (rho.mat * cost.mat).trace().real();
}

double closed_form_witness(double p) {
  const double r2 = std::sqrt(2.0);
  return (3.0 - r2 - (1.0 + r2) * p) / 12.0;
}

} // namespace nlact
