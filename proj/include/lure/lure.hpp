#pragma once

#include <optional>
#include <vector>

#include "lure/numerics.hpp"
#include "lure/pencil.hpp"
#include "lure/sda.hpp"

namespace lure {

/// Data of the Lur'e equations
///
///   A'X + XA + Q = K'K,   XB + C = K'L,   R = L'L
///
/// with A n x n, B and C n x m, Q n x n and R m x m. Q and R are symmetrized
/// on construction.
class LureProblem {
 public:
  LureProblem(Matrix A, Matrix B, Matrix C, Matrix Q, Matrix R);

  const Matrix& A() const { return A_; }
  const Matrix& B() const { return B_; }
  const Matrix& C() const { return C_; }
  const Matrix& Q() const { return Q_; }
  const Matrix& R() const { return R_; }
  Index n() const { return A_.rows(); }
  Index m() const { return B_.cols(); }

  /// Copy with R replaced; used by the regularization baselines.
  LureProblem with_R(Matrix R) const;

 private:
  Matrix A_, B_, C_, Q_, R_;
};

/// Maximal solution X with a factorization (K, L) of the LMI residual.
struct LureSolution {
  Matrix X;
  Matrix K;  // p x n
  Matrix L;  // p x m
  Index p = 0;
  double relative_residual = 0.0;
  double gamma_used = 0.0;
  /// Doubling steps (SDA) or Newton steps (sign method).
  int iterations = 0;
  IterationTrace trace;
};

EvenPencil assemble_even_pencil(const LureProblem& prob);

/// Popov function at a real point s outside the spectrum of A:
/// [(sI-A)^-1 B; I]' [Q C; C' R] [(sI-A)^-1 B; I]. Throws PoleHit when
/// sI - A is numerically singular.
Matrix spectral_density(const LureProblem& prob, double s);

/// The (2n+m)-order matrix [0 A-gI B; A'-gI Q C; B' C' R] that is inverted by
/// the reduction.
Matrix bordered_matrix(const LureProblem& prob, double gamma);

/// Symplectic n x n SSF-I of the Cayley-transformed even pencil after the
/// m infinite eigenvalues (mapped to 1) have been deflated.
struct ReducedPencil {
  Ssf1Pencil pencil;
  /// Last m rows of the transformed matrix (the blocks that are dropped).
  Matrix discarded;
  /// max of the relative asymmetry of G and H and ||F - E'||_F / ||E||_F,
  /// measured before symmetrization.
  double structure_defect = 0.0;
  double gamma = 0.0;
};

/// Throws GammaUnusable when the bordered matrix is numerically singular.
ReducedPencil reduce_to_ssf1(const LureProblem& prob, double gamma);

/// [A'X + XA + Q, XB + C; B'X + C', R].
Matrix lmi_residual(const LureProblem& prob, const Matrix& X);

struct KlOptions {
  /// Singular values below rank_tol * sigma_1 are treated as zero.
  double rank_tol = 1e-10;
  /// Optional cap on p; the solvers use m (p equals the normal rank of the
  /// Popov function, which is at most m).
  std::optional<Index> max_rank;
  /// Reject residuals with an eigenvalue below -sqrt(rank_tol) * ||residual||.
  bool check_semidefinite = true;
};

struct KlFactors {
  Matrix K;
  Matrix L;
  Index p = 0;
};

/// [K L] = Sigma_p^{1/2} V_p' from the SVD of the LMI residual at X.
KlFactors extract_kl(const LureProblem& prob, const Matrix& X, const KlOptions& opts = {});

/// ||lmi_residual - [K L]'[K L]||_F / ||lmi_residual||_F, 0 when both are
/// at rounding level.
double relative_residual(const LureProblem& prob, const Matrix& X, const Matrix& K, const Matrix& L);

/// ||X - X_ref||_F / ||X_ref||_F. Throws ZeroReference when X_ref = 0.
double forward_error(const Matrix& X, const Matrix& X_ref);

struct PsdVerdict {
  double omega = 0.0;
  double min_eigenvalue = 0.0;
  bool nonnegative = true;
};

/// Samples Phi(i w) through its 2m x 2m real symmetric embedding and reports
/// the sign of the smallest eigenvalue at each frequency. Advisory only.
/// Throws PoleHit when some i w I - A is numerically singular.
std::vector<PsdVerdict> phi_psd_probe(const LureProblem& prob, const std::vector<double>& frequencies);

}  // namespace lure
