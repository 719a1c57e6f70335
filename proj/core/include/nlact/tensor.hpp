#pragma once
// Dense complex linear algebra over multiparty tensor-product spaces:
// Kronecker products, leg permutation, partial trace / partial transpose,
// Hermitian eigensystems, PSD projection.
//
// Leg bookkeeping — the one canonical convention used by every module:
//
//   layout          nested list of leg dimensions, one inner list per party,
//                   e.g. {{2,2},{2,2}}.  A party may have zero legs (dim 1).
//   leg index       zero-based and party-major: all legs of party 0 first,
//                   then party 1, and so on.
//   composite index matrix row/col indices are mixed-radix numbers over the
//                   flat leg dims, big-endian: leg 0 is the most significant
//                   digit.  For dims (d0,...,dk): i = ((i0*d1+i1)*d2+...)+ik.
//   kron            kron(A,B) places A's legs before B's legs, consistent
//                   with the composite index above.
//   permute_parties gather convention: new leg q carries old leg perm[q].
//                   The party grouping keeps its shape (leg counts per party
//                   are unchanged); use regroup() to change the grouping.
//   partial_trace   keeps the listed legs (strictly increasing); kept legs
//                   retain their original party grouping, parties left with
//                   no legs are dropped.
//   partial_transpose  transposes the listed legs in place; layout unchanged.

#include <vector>
#include <Eigen/Dense>

namespace nlact {

using PartyLayout = std::vector<std::vector<int>>;

struct MultipartyOperator {
  PartyLayout layout;
  Eigen::MatrixXcd mat;

  Eigen::Index dim() const { return mat.rows(); }
  int num_parties() const { return static_cast<int>(layout.size()); }
};

struct EigenSystem {
  Eigen::VectorXd values;   // ascending
  Eigen::MatrixXcd vectors; // columns, orthonormal
};

// Layout helpers.
long layout_dim(const PartyLayout& layout);
std::vector<int> layout_legs(const PartyLayout& layout);        // flattened dims
long party_dim(const PartyLayout& layout, int party);
std::vector<int> party_leg_indices(const PartyLayout& layout, int party);
void validate_layout(const PartyLayout& layout);
MultipartyOperator make_operator(PartyLayout layout, Eigen::MatrixXcd mat);

// For each new flat index over dims gathered by perm, the old flat index.
// new_dims[q] = dims[perm[q]].  Shared by square and rectangular reshuffles.
std::vector<long> permuted_index_map(const std::vector<int>& dims,
                                     const std::vector<int>& perm);

MultipartyOperator kron(const MultipartyOperator& a, const MultipartyOperator& b);
MultipartyOperator permute_parties(const MultipartyOperator& x, const std::vector<int>& perm);
MultipartyOperator regroup(const MultipartyOperator& x, PartyLayout new_layout);
MultipartyOperator partial_trace(const MultipartyOperator& x, const std::vector<int>& keep);
MultipartyOperator partial_transpose(const MultipartyOperator& x, const std::vector<int>& legs);

bool is_hermitian(const Eigen::MatrixXcd& m, double rel_tol = 1e-10);
EigenSystem hermitian_eig(const Eigen::MatrixXcd& m);      // rejects non-Hermitian
Eigen::MatrixXcd project_psd(const Eigen::MatrixXcd& m);   // Frobenius-nearest PSD
double trace_distance(const MultipartyOperator& a, const MultipartyOperator& b);

// State check: Hermitian to 1e-12, trace 1 to 1e-12, min eigenvalue >= -1e-10.
struct StateCheck {
  double hermiticity_error; // ||M - M*||_F / max(1, ||M||_F)
  double trace_error;       // |tr M - 1|
  double min_eigenvalue;
  bool pass;
};
StateCheck check_state(const Eigen::MatrixXcd& m);

} // namespace nlact
