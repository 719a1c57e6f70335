#pragma once
// Separable-map local filtering, the canonical activation protocol, the
// qubit-subspace filtering threshold, filter optimization, and the
// teleportation / tripartite demos.

#include <cstdint>
#include <optional>

#include "nlact/tensor.hpp"

namespace nlact {

enum class FilterDirection {
  into_party,   // ops[i] maps the surviving space into party i: dim(party_i) x s_i
  out_of_party, // ops[i] maps party i onto the surviving space: s_i x dim(party_i)
};

struct FilterBank {
  std::vector<Eigen::MatrixXcd> ops; // one per party
  FilterDirection direction = FilterDirection::into_party;
};

struct FilterOutcome {
  MultipartyOperator post_state;  // normalized; parties reduced to dim 1 are dropped
  double success_probability = 0; // tr[(⊗K) rho (⊗K)†] with each ‖K_i‖ clamped to <= 1
  bool possible = false;          // success_probability > 1e-14
};

// rho -> (⊗K†) rho (⊗K) / prob for into-party banks (the adjoint sandwich for
// out-of-party banks).  Filters with operator norm > 1 are rescaled to norm 1;
// smaller norms are kept, so scaling a filter by |c| <= 1 scales the
// probability by |c|^2 without changing the post state.
FilterOutcome apply_filter(const MultipartyOperator& state, const FilterBank& bank);

// Canonical activation filters for a target with the given layout: party i
// projects its target legs (total dim d_i) against a mirror block of the
// ancilla with the normalized maximally entangled ket of dimension d_i and
// keeps the ancilla's Bell-test qubit.  Parties 0 and 1 always keep a qubit;
// with reduced=true parties >= 2 keep nothing (their ancilla has no test
// qubit).  Filter shapes match party_merge(target, ancilla) ordering:
// [target legs..., coupling legs..., test qubit].
FilterBank canonical_filters(const PartyLayout& tau_layout, bool reduced);

// kron(a, b) re-interleaved so party i holds [a's party-i legs, b's party-i
// legs]; a and b must have the same party count.
MultipartyOperator party_merge(const MultipartyOperator& a, const MultipartyOperator& b);

struct ActivationReport {
  double witness = 0;             // tr[(tau ⊗ rho) (⊗F)(H_theta ⊗ I)(⊗F)†]
  double nu = 0;                  // prod_i 1/dim(tau party i)
  double identity_residual = 0;   // |witness - nu * direct contraction| (relative)
  double success_probability = 0;
  double chsh_value = 0;          // Horodecki maximum of the post state, parties 0,1
  MultipartyOperator post_state;  // all surviving parties
};

// The canonical protocol: merge tau with the ancilla rho, apply
// canonical_filters, evaluate the witness and the post-filter CHSH maximum
// between parties 0 and 1.  reduced layouts are detected from rho.
ActivationReport activate(const MultipartyOperator& rho, const MultipartyOperator& tau,
                          double theta = 0.78539816339744830962);

// Threshold weight above which werner_d(d, p), filtered onto the span of
// {|0>,|1>} on both sides, violates CHSH.  Monotone bisection to tol.
double popescu_threshold(int d, double tol = 1e-6);

struct OptimizeResult {
  double chsh = 0;
  FilterBank filters;             // into-party, unit operator norm
  double success_probability = 0;
};

// Derivative-free multi-restart search (Nelder-Mead) over per-party d_i x 2
// filters maximizing the post-filter Horodecki CHSH value of a bipartite
// state.  Restart 0 starts from the qubit-subspace truncation, so the result
// is never below that protocol's value.  Deterministic for a fixed seed.
OptimizeResult optimize_filters_chsh(const MultipartyOperator& state, int restarts = 20,
                                     int iterations = 2000, std::uint64_t seed = 20240601);

struct TeleportReport {
  double intermediate_trace_distance = 0; // vs werner_d(d, p)
  double success_probability = 0;         // ideally 1/d^2
  std::optional<ActivationReport> activation; // populated for d = 2
};

// |Phi_d> between parties {0,2} and werner_d(d,p) between {1,2}; party 2
// projects its two legs onto |Phi_d>, leaving werner_d(d,p) between parties
// {0,1}; for d = 2 the reconstructed state is then activated via ancilla_rho().
TeleportReport teleport_activation(int d, double p);

// Tripartite demo: ancilla_rho3() with werner2(p) shared by parties {1,2};
// filters F_0 = I (test qubit), F_1 = |Phi_2>⊗I, F_2 = |Phi_2>.  CHSH is
// tested between parties 0 and 1.  witness < 0 iff p > 4*sqrt(2) - 5.
ActivationReport multiparty_demo(double p);

} // namespace nlact
