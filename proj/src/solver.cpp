#include "lure/solver.hpp"

namespace lure {

KlOptions solution_kl_options(const LureProblem& prob, double rank_tol) {
  KlOptions opts;
  opts.rank_tol = rank_tol;
  opts.max_rank = prob.m();
  opts.check_semidefinite = false;
  return opts;
}

void attach_factors(const LureProblem& metrics_problem, double rank_tol, LureSolution& sol) {
  const KlFactors kl = extract_kl(metrics_problem, sol.X, solution_kl_options(metrics_problem, rank_tol));
  sol.K = kl.K;
  sol.L = kl.L;
  sol.p = kl.p;
  sol.relative_residual = relative_residual(metrics_problem, sol.X, sol.K, sol.L);
}

LureSolution solve_lure(const LureProblem& prob, const SolveOptions& opts) {
  const double gamma = opts.gamma ? *opts.gamma : choose_gamma(prob, opts.gamma_bracket).gamma;
  const ReducedPencil reduced = reduce_to_ssf1(prob, gamma);
  SdaResult sda = sda_iterate(reduced.pencil, opts.sda);
  if (!sda.G.allFinite()) {
    throw NotBasisForm("the d-semi-unstable subspace has no basis of the form [X; I]");
  }

  LureSolution sol;
  sol.X = numerics::symmetrize(sda.G);
  sol.gamma_used = gamma;
  sol.iterations = sda.trace.iterations();
  sol.trace = std::move(sda.trace);
  attach_factors(prob, opts.rank_tol, sol);
  return sol;
}

double dare_residual(const Ssf1Pencil& reduced, const Matrix& X) {
  const Index n = reduced.N();
  const Matrix& E = reduced.E;
  const Matrix inner = numerics::solve_linear(Matrix::Identity(n, n) - reduced.H * X, E.transpose());
  const Matrix defect = X - E * X * inner - reduced.G;
  const double scale = X.norm();
  return scale > 0.0 ? defect.norm() / scale : defect.norm();
}

}  // namespace lure
