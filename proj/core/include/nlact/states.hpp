#pragma once
// Constructors for the concrete states and operators used throughout the
// toolkit, plus tabulated reference constants.
//
// Conventions:
//   Pauli order      sigma_0 = I, sigma_1 = x, sigma_2 = y, sigma_3 = z.
//   Bell order       Phi+ , Phi- , Psi+ , Psi-  (indices 0..3).
//   basis            |0>,|1>,...,|d-1>, composite indices row-major.

#include <array>

#include "nlact/tensor.hpp"

namespace nlact {

const Eigen::Matrix2cd& pauli(int k);             // k in 0..3
Eigen::Vector4cd bell_ket(int r);                 // r in 0..3
std::array<Eigen::Matrix4cd, 4> bell_projectors();

Eigen::VectorXcd max_entangled_ket(int d);        // d^{-1/2} sum_s |s,s>
Eigen::MatrixXcd swap_operator(int d);            // S|i,j> = |j,i>
Eigen::MatrixXcd antisym_projector(int d);        // (I - S)/2, trace d(d-1)/2

// I⊗I - cos(t) x⊗x - sin(t) z⊗z on layout {{2},{2}}; t in [0, pi/4].
MultipartyOperator h_theta(double theta);

// p |Psi-><Psi-| + (1-p) I/4 on layout {{2},{2}}; p in [-1/3, 1].
MultipartyOperator werner2(double p);

// 2p P_anti/(d(d-1)) + (1-p) I/d^2 on layout {{d},{d}};
// p in [1 - 2d/(d+1), 1]; PPT iff p <= 1/(d+1).
MultipartyOperator werner_d(int d, double p);
double werner_min_weight(int d);                  // 1 - 2d/(d+1)

// Four-qubit activating ancilla on layout {{2,2},{2,2}}:
// (1/16) sum_ij R_ij s_i ⊗ s_j ⊗ s_i ⊗ s_j.  Party k holds a coupling qubit
// (first leg, contracted against the target state) and a Bell-test qubit.
// Unit trace, PSD, and PPT across the party cut (bound entangled).
MultipartyOperator ancilla_rho();

// Tripartite rearrangement on layout {{2},{2,2},{2}}:
// (1/16) sum_ij R_ij s_j ⊗ s_i ⊗ s_j ⊗ s_i.  Party 0 holds a Bell-test
// qubit, party 1 a coupling + Bell-test pair, party 2 a coupling qubit.
// Equals ancilla_rho() under the leg permutation (0<->1, 2<->3).
MultipartyOperator ancilla_rho3();

// Tabulated per-d reference values (d in 2..6).  p_sep and p_NL_SLO are
// analytic; p_L is a literature bound (0.6595 for d=2, (d-1)/d above);
// p_star_table is the published four-decimal SDP value, kept for comparison.
struct ReferenceConstants {
  int d;
  double p_sep;        // 1/(d+1)
  double p_star_table; // four-decimal reference for the SDP bisection
  double p_L;
  double p_NL_SLO;     // 2(d-1)/((sqrt(2)+1)d - 2)
};
ReferenceConstants reference_constants(int d);

} // namespace nlact
