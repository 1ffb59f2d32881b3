#pragma once

#include "lure/lure.hpp"
#include "lure/solver.hpp"

namespace lure {

/// Same problem with R + eps I. Requires eps >= 0.
LureProblem regularize(const LureProblem& prob, double eps);

/// Riccati data A'X + XA - XGX + Q = 0 obtained by eliminating R.
struct CareData {
  Matrix Ahat;  // A - B R^-1 C'
  Matrix Ghat;  // B R^-1 B'
  Matrix Qhat;  // Q - C R^-1 C'
};

/// Throws SingularR when R is numerically singular.
CareData care_from_lure(const LureProblem& prob);

/// Residual A'X + XA - XGX + Q of the reduced Riccati equation.
Matrix care_residual(const CareData& cd, const Matrix& X);

struct SignOptions {
  /// Converged when ||Z_{k+1} - Z_k||_1 <= tol ||Z_k||_1.
  double tol = 1e-13;
  int max_iter = 100;
  /// Below this relative change, a non-decreasing step means the rounding
  /// floor was reached; the iterate is accepted if ||S^2 - I||_F <= involution_tol ||S||_F.
  double stagnation_threshold = 1e-6;
  double involution_tol = 1e-8;
};

struct SignResult {
  Matrix X;
  /// Converged sign iterate S (S^2 = I).
  Matrix S;
  int iterations = 0;
};

/// Stabilizing solution through the determinant-scaled Newton iteration for
/// the sign of the Hamiltonian [Ahat -Ghat; -Qhat -Ahat']. The stable
/// subspace is read off the range of (I - S)/2.
///
/// Throws SignNoConvergence when the iteration does not settle (eigenvalues on
/// or numerically close to the imaginary axis) and NotGraphForm when the
/// stable subspace has no basis [I; X].
SignResult solve_care_sign(const CareData& cd, const SignOptions& opts = {});

/// R+S: regularize, eliminate R, and solve the Riccati equation by SDA after a
/// Cayley transform of its Hamiltonian, using the gamma chosen for the original
/// problem. Metrics refer to the original problem. Requires eps > 0.
LureSolution solve_rs(const LureProblem& prob, double eps, const SolveOptions& opts = {});

/// R+N: regularize, eliminate R, solve by the sign method. Metrics refer to
/// the original problem. Requires eps > 0.
LureSolution solve_rn(const LureProblem& prob, double eps, const SolveOptions& opts = {},
                      const SignOptions& sign = {});

namespace detail {

// Unchecked variants that also accept eps == 0 (used to compare both
// baselines on problems whose R is already nonsingular).
LureSolution solve_regularized_sda(const LureProblem& prob, double eps, const SolveOptions& opts);
LureSolution solve_regularized_sign(const LureProblem& prob, double eps, const SolveOptions& opts,
                                    const SignOptions& sign);

}  // namespace detail

}  // namespace lure
