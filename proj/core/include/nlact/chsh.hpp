#pragma once
// CHSH correlators and values, the two-qubit Horodecki criterion, and the
// filtering witnesses built on it.

#include <string>

#include "nlact/filtering.hpp"
#include "nlact/tensor.hpp"

namespace nlact {

struct ChshSettings {
  Eigen::Vector3d a0, a1, b0, b1; // Bloch measurement directions, unit norm
};

struct WitnessReport {
  double value = 0;
  double theta = 0;
  std::string filter_desc;
  std::string state_desc;
};

struct ChshMax {
  double value = 0;
  ChshSettings settings; // achieves value via chsh_value to 1e-9
};

// tr[state (a.sigma)⊗(b.sigma)] for a two-qubit state; a, b unit vectors.
double correlator(const MultipartyOperator& state, const Eigen::Vector3d& a,
                  const Eigen::Vector3d& b);

// E00 + E01 + E10 - E11.
double chsh_value(const MultipartyOperator& state, const ChshSettings& s);

// T_ij = Re tr[state sigma_i ⊗ sigma_j], i,j in {1,2,3}.
Eigen::Matrix3d correlation_matrix(const MultipartyOperator& state);

// 2 sqrt(m1 + m2) with m1 >= m2 the largest eigenvalues of T^T T, plus
// settings that attain it (deterministic under spectral ties).
ChshMax horodecki_chsh_max(const MultipartyOperator& state);

// tr[rho (⊗F_i)(H_theta ⊗ I)(⊗F_i)†] for into-party filters; parties 0 and 1
// must keep a qubit.  Filters are used exactly as given (no rescaling).
// A negative value certifies hidden CHSH nonlocality of rho.
WitnessReport lemma_witness(const MultipartyOperator& rho, const FilterBank& filters,
                            double theta);

// The activation witness operator tau^T ⊗ H_theta (⊗ I on any extra test
// qubits), its legs permuted onto the ancilla layout: target legs pair with
// each party's leading coupling legs, H_theta acts on the party-0/1 test
// qubits.  Parties >= 2 may omit the test qubit (reduced layout).
MultipartyOperator witness_cost_operator(const MultipartyOperator& tau,
                                         const PartyLayout& ancilla_layout, double theta);

// tr[rho (tau^T ⊗ H_{pi/4} ⊗ I)] on rho's layout.
double activation_witness(const MultipartyOperator& rho, const MultipartyOperator& tau);

// (3 - sqrt(2) - (1 + sqrt(2)) p)/12: the activation witness of the
// four-qubit ancilla against werner2(p); root at p = 4 sqrt(2) - 5.
double closed_form_witness(double p);

} // namespace nlact
