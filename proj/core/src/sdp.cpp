#include "nlact/sdp.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "nlact/chsh.hpp"
#include "nlact/states.hpp"

namespace nlact {

namespace {

Eigen::MatrixXcd herm(const Eigen::MatrixXcd& a) { return 0.5 * (a + a.adjoint()); }

double min_eigenvalue(const Eigen::MatrixXcd& a) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(herm(a), Eigen::EigenvaluesOnly);
  return es.eigenvalues()(0);
}

double spectral_norm(const Eigen::MatrixXcd& a) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(herm(a), Eigen::EigenvaluesOnly);
  const Eigen::VectorXd& ev = es.eigenvalues();
  return std::max(std::abs(ev(0)), std::abs(ev(ev.size() - 1)));
}

Eigen::MatrixXcd project_psd_mat(const Eigen::MatrixXcd& a) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(herm(a));
  Eigen::VectorXd mu = es.eigenvalues().cwiseMax(0.0);
  return es.eigenvectors() * mu.asDiagonal() * es.eigenvectors().adjoint();
}

// spectral simplex projection onto {X Hermitian, X >= 0, tr X = 1}
Eigen::MatrixXcd project_density(const Eigen::MatrixXcd& a) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(herm(a));
  const Eigen::VectorXd& lam = es.eigenvalues(); // ascending
  const long n = lam.size();
  double cum = 0.0, tau = 0.0;
  for (long j = 0; j < n; ++j) {
    const double v = lam(n - 1 - j);
    cum += v;
    const double cand = (cum - 1.0) / static_cast<double>(j + 1);
    if (v - cand <= 0.0) break;
    tau = cand;
  }
  Eigen::VectorXd mu = (lam.array() - tau).max(0.0).matrix();
  return es.eigenvectors() * mu.asDiagonal() * es.eigenvectors().adjoint();
}

Eigen::MatrixXcd pt(const PartyLayout& layout, const Eigen::MatrixXcd& m,
                    const std::vector<int>& legs) {
  return partial_transpose(MultipartyOperator{layout, m}, legs).mat;
}

} // namespace

SdpProblem witness_problem(MultipartyOperator w) {
  if (!is_hermitian(w.mat)) throw std::invalid_argument("witness_problem: cost must be Hermitian");
  SdpProblem problem;
  problem.ppt_cuts = {party_leg_indices(w.layout, 0)};
  problem.cost = std::move(w);
  return problem;
}

SdpSolution solve_min_witness(const SdpProblem& problem, const SdpConfig& config,
                              const SdpSolution* warm) {
  const MultipartyOperator& w = problem.cost;
  if (w.mat.rows() != w.dim() || w.mat.cols() != w.dim())
    throw std::invalid_argument("solve_min_witness: cost shape does not match layout");
  if (!is_hermitian(w.mat))
    throw std::invalid_argument("solve_min_witness: cost must be Hermitian");
  if (config.max_iter < 1 || config.eps_cone <= 0.0 || config.eps_obj <= 0.0 ||
      config.relaxation <= 0.0 || config.relaxation >= 2.0 || config.step < 0.0)
    throw std::invalid_argument("solve_min_witness: invalid config");

  const long dim = w.dim();
  const auto& cuts = problem.ppt_cuts;
  const size_t m = cuts.size() + 1;
  const double t = config.step > 0.0 ? config.step : 1.0 / std::max(1.0, spectral_norm(w.mat));
  const double lam = config.relaxation;

  std::vector<Eigen::MatrixXcd> z(
      m, Eigen::MatrixXcd::Identity(dim, dim) / static_cast<double>(dim));
  if (warm && warm->z_blocks.size() == m && warm->z_blocks[0].rows() == dim) z = warm->z_blocks;
  std::vector<Eigen::MatrixXcd> x(m);

  SdpSolution sol;
  sol.step = t;
  sol.ppt_cuts = cuts;

  constexpr int check_every = 25;
  for (int it = 1; it <= config.max_iter; ++it) {
    x[0] = project_density(z[0] - t * w.mat);
    for (size_t j = 0; j < cuts.size(); ++j)
      x[j + 1] = pt(w.layout, project_psd_mat(pt(w.layout, z[j + 1], cuts[j])), cuts[j]);

    Eigen::MatrixXcd u = Eigen::MatrixXcd::Zero(dim, dim);
    for (size_t j = 0; j < m; ++j) u += 2.0 * x[j] - z[j];
    u /= static_cast<double>(m);
    for (size_t j = 0; j < m; ++j) z[j] += lam * (u - x[j]);

    sol.iterations = it;
    if (it % check_every == 0 || it == config.max_iter) {
      const double scale = std::max(1.0, x[0].norm());
      double primal = 0.0;
      for (size_t j = 1; j < m; ++j)
        primal = std::max(primal, (x[j] - x[0]).norm() / scale);
      sol.primal_residual = primal;
      sol.cone_residuals.assign(1, std::max(0.0, -min_eigenvalue(x[0])));
      for (size_t j = 0; j < cuts.size(); ++j)
        sol.cone_residuals.push_back(
            std::max(0.0, -min_eigenvalue(pt(w.layout, x[0], cuts[j]))));
      sol.trace_residual = std::abs(x[0].trace().real() - 1.0);
      const bool cones_ok =
          *std::max_element(sol.cone_residuals.begin(), sol.cone_residuals.end()) <=
          config.eps_cone;
      // stop on a certified duality gap: any PSD dual gives a valid lower
      // bound, so block consensus alone is not evidence of optimality
      Eigen::MatrixXcd shifted = w.mat;
      for (size_t j = 0; j < cuts.size(); ++j)
        shifted -= pt(w.layout,
                      project_psd_mat(pt(w.layout, (x[j + 1] - z[j + 1]) / t, cuts[j])),
                      cuts[j]);
      const double gap = std::abs((x[0] * w.mat).trace().real() - min_eigenvalue(shifted));
      if (gap <= config.eps_obj && cones_ok && sol.trace_residual <= 1e-9) {
        sol.converged = true;
        break;
      }
    }
  }

  sol.optimum = (x[0] * w.mat).trace().real();
  sol.rho_star = MultipartyOperator{w.layout, std::move(x[0])};
  for (size_t j = 0; j < cuts.size(); ++j)
    sol.duals.push_back(project_psd_mat(pt(w.layout, (x[j + 1] - z[j + 1]) / t, cuts[j])));
  sol.z_blocks = std::move(z);
  return sol;
}

SdpSolution solve_min_witness(const MultipartyOperator& w, const SdpConfig& config) {
  return solve_min_witness(witness_problem(w), config);
}

double dual_bound(const SdpProblem& problem, const SdpSolution& solution) {
  if (!solution.converged) throw std::invalid_argument("dual_bound: solution did not converge");
  if (solution.duals.size() != problem.ppt_cuts.size())
    throw std::invalid_argument("dual_bound: solution does not match problem");
  Eigen::MatrixXcd shifted = problem.cost.mat;
  for (size_t j = 0; j < solution.duals.size(); ++j)
    shifted -= pt(problem.cost.layout, solution.duals[j], problem.ppt_cuts[j]);
  return min_eigenvalue(shifted);
}

double dual_bound(const MultipartyOperator& w, const SdpSolution& solution) {
  SdpProblem problem;
  problem.cost = w;
  problem.ppt_cuts = solution.ppt_cuts;
  return dual_bound(problem, solution);
}

MultipartyOperator werner_witness_cost(int d, double p) {
  return witness_cost_operator(werner_d(d, p), {{d, 2}, {d, 2}}, std::atan(1.0));
}

CriticalWeightReport critical_weight_detailed(int d, double tol, const SdpConfig& config) {
  if (d < 2 || d > 6) throw std::invalid_argument("critical_weight: d must be in 2..6");
  if (tol <= 0.0) throw std::invalid_argument("critical_weight: tol must be positive");

  CriticalWeightReport rep;
  rep.d = d;
  rep.tol = tol;
  const double p_sep = 1.0 / static_cast<double>(d + 1);

  SdpSolution warm;
  bool have_warm = false;

  auto probe = [&](double p) {
    SdpProblem problem = witness_problem(werner_witness_cost(d, p));
    SdpConfig cfg = config;
    CriticalProbe result;
    bool have_result = false;
    for (int attempt = 0; attempt < 3; ++attempt) {
      SdpSolution sol = solve_min_witness(problem, cfg, have_warm ? &warm : nullptr);
      if (!sol.converged) {
        if (have_result) break; // keep the last certified solve
        throw std::runtime_error("critical_weight: solver did not converge at p = " +
                                 std::to_string(p));
      }
      result.p = p;
      result.optimum = sol.optimum;
      result.gap = std::abs(sol.optimum - dual_bound(problem, sol));
      result.iterations = sol.iterations;
      result.eps_used = cfg.eps_obj;
      warm = std::move(sol);
      have_warm = true;
      have_result = true;
      if (std::abs(result.optimum) > 3.0 * result.gap) break;
      cfg.eps_cone *= 0.1; // sign margin too thin: certify tighter
      cfg.eps_obj *= 0.1;
    }
    rep.probes.push_back(result);
    return result.optimum;
  };

  if (probe(1.0) >= 0.0)
    throw std::runtime_error("critical_weight: witness minimum never turns negative on [p_sep, 1]");
  if (probe(p_sep) < 0.0)
    throw std::runtime_error("critical_weight: witness minimum already negative at p_sep");

  double lo = p_sep, hi = 1.0;
  while (hi - lo > tol) {
    const double mid = 0.5 * (lo + hi);
    (probe(mid) < 0.0 ? hi : lo) = mid;
  }
  rep.p_star = 0.5 * (lo + hi);
  return rep;
}

double critical_weight(int d, double tol, const SdpConfig& config) {
  return critical_weight_detailed(d, tol, config).p_star;
}

} // namespace nlact
