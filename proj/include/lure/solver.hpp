#pragma once

#include <optional>

#include "lure/gamma.hpp"
#include "lure/lure.hpp"
#include "lure/sda.hpp"

namespace lure {

struct SolveOptions {
  /// Fixed Cayley parameter; searched with choose_gamma when empty.
  std::optional<double> gamma;
  std::optional<GammaBracket> gamma_bracket;
  SdaOptions sda;
  double rank_tol = 1e-10;
};

/// Factor options used for reported solutions: p is capped at m and the
/// residual is factored even when rounding makes it slightly indefinite.
KlOptions solution_kl_options(const LureProblem& prob, double rank_tol);

/// Maximal solution of the Lur'e equations: Cayley transform, deflation of
/// the infinite eigenvalues, SDA on the reduced symplectic pencil, X = G_inf.
///
/// Throws GammaUnusable / AllSingular when no usable gamma exists, SingularIGH
/// when the first doubling step breaks down and NotBasisForm when the limit
/// is not finite.
LureSolution solve_lure(const LureProblem& prob, const SolveOptions& opts = {});

/// Attaches K, L, p and the relative residual of `metrics_problem` to X.
void attach_factors(const LureProblem& metrics_problem, double rank_tol, LureSolution& sol);

/// ||X - E X (I - H X)^-1 E' - G||_F / ||X||_F for a symplectic reduced pencil.
double dare_residual(const Ssf1Pencil& reduced, const Matrix& X);

}  // namespace lure
