#pragma once

#include <vector>

#include "nlact/tensor.hpp"

namespace nlact {

// min tr[rho W] over rho >= 0, tr rho = 1, rho^{T_c} >= 0 for each cut c.
// Cuts are flat leg index sets; witness_problem() installs the default cut
// over the first party's legs, the only configuration exercised end to end.
struct SdpProblem {
  MultipartyOperator cost;
  std::vector<std::vector<int>> ppt_cuts;
};

SdpProblem witness_problem(MultipartyOperator w);

struct SdpConfig {
  double eps_cone = 1e-8;  // allowed negativity of rho* and its transposes
  double eps_obj = 1e-8;   // certified duality gap at which the solve stops
  int max_iter = 50000;
  double relaxation = 1.5;
  double step = 0.0;       // proximal step; 0 picks 1 / max(1, ||W||_2)
};

// All solver state stays complex Hermitian; there is no real-symmetric
// doubling anywhere (the equivalence is covered by tests instead).
struct SdpSolution {
  double optimum = 0.0;              // tr[rho* W]
  MultipartyOperator rho_star;       // exactly PSD with unit trace
  double primal_residual = 0.0;      // max block disagreement, Frobenius-relative
  std::vector<double> cone_residuals;// negativity of rho*, then of each cut
  double trace_residual = 0.0;
  int iterations = 0;
  bool converged = false;
  double step = 0.0;
  std::vector<std::vector<int>> ppt_cuts;
  std::vector<Eigen::MatrixXcd> duals;    // PSD certificate per cut
  std::vector<Eigen::MatrixXcd> z_blocks; // governing variables; warm-start food
};

SdpSolution solve_min_witness(const SdpProblem& problem, const SdpConfig& config = {},
                              const SdpSolution* warm = nullptr);
SdpSolution solve_min_witness(const MultipartyOperator& w, const SdpConfig& config = {});

// Certified lower bound lambda_min(W - sum_c S_c^{T_c}) from the PSD duals;
// valid for any PSD S_c, tight at convergence. Throws on unconverged input.
double dual_bound(const SdpProblem& problem, const SdpSolution& solution);
double dual_bound(const MultipartyOperator& w, const SdpSolution& solution);

// werner_d(d, p)^T (x) (I - XX - ZZ)/sqrt(2)-tilted kernel on [d,2] x [d,2]
MultipartyOperator werner_witness_cost(int d, double p);

// Smallest p in [1/(d+1), 1] where the witness minimum turns negative,
// located by bisection. Every probe's sign margin must exceed 3x its
// certified objective gap or the probe is re-solved at tighter eps.
double critical_weight(int d, double tol = 1e-4, const SdpConfig& config = {});

struct CriticalProbe {
  double p = 0.0;
  double optimum = 0.0;
  double gap = 0.0;      // optimum minus certified lower bound
  int iterations = 0;
  double eps_used = 0.0;
};

struct CriticalWeightReport {
  int d = 0;
  double p_star = 0.0;
  double tol = 0.0;
  std::vector<CriticalProbe> probes;
};

CriticalWeightReport critical_weight_detailed(int d, double tol = 1e-4,
                                              const SdpConfig& config = {});

} // namespace nlact
