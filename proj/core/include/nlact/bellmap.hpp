#pragma once

#include <array>
#include <vector>

#include "nlact/tensor.hpp"

namespace nlact {

// Bell-basis weights of the tilted kernel I - cos(theta) XX - sin(theta) ZZ,
// ordered (Phi+, Phi-, Psi+, Psi-). theta is unrestricted here.
Eigen::Vector4d n_theta(double theta);

// Bell-to-Bell projection of a separable map acting on one qubit per party.
// kraus[k] lists the per-party factors of the k-th Kraus operator; factor i
// maps C^2 into H_i (x) C^2, i.e. it has 2*dim(H_i) rows and exactly 2
// columns. omega[r][s] lives on (x)H_i and is positive semidefinite;
// m(r,s) = tr omega[r][s].
struct ProjectedMap {
  std::array<std::array<Eigen::MatrixXcd, 4>, 4> omega;
  Eigen::Matrix4d m = Eigen::Matrix4d::Zero();
};

ProjectedMap project_map(const std::vector<std::vector<Eigen::MatrixXcd>>& kraus, int n);

// one-parameter mixing matrix; fixes the theta = pi/4 kernel weights exactly
Eigen::Matrix4d m0(double eta);

// rank-one template selecting the Phi+/Phi- block
Eigen::Matrix4d g0();

// Randomized check of the filter/trace identity behind the activation
// witness: for random states rho (carrying one test qubit on parties 0 and 1)
// and random ancillae tau, the filtered kernel expectation must equal
// nu * tr[rho (tau^T (x) H (x) I)] with nu the inverse product of tau's party
// dimensions. Runs `trials` bipartite rounds for every d in dims plus a
// reduced tripartite round with trials/5 samples. Deviations are relative.
struct Eq9Case {
  int parties = 0;
  int d = 0; // ancilla party dimension (bipartite rounds only)
  int trials = 0;
  double max_deviation = 0;
};

struct Eq9Report {
  std::vector<Eq9Case> cases;
  double max_deviation = 0;
  bool pass = false;
};

Eq9Report verify_eq9(int trials, const std::vector<int>& dims);

} // namespace nlact
