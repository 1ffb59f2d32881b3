#pragma once

// Dense real kernels shared by every other module.
//
// All matrices are Eigen::MatrixXd (column-major). Functions are pure and
// never keep references to their arguments.

#include <Eigen/Dense>

#include "lure/errors.hpp"

namespace lure {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;
using Index = Eigen::Index;

namespace numerics {

/// Machine epsilon of double.
inline constexpr double kEps = 2.220446049250313e-16;

/// LU factorization with partial pivoting plus a 1-norm condition estimate.
///
/// Construction never throws; singular() reports whether a pivot is exactly
/// zero or the estimated condition number exceeds 1/kEps. solve() and
/// solve_transpose() throw SingularMatrix in that case.
class LuFactorization {
 public:
  explicit LuFactorization(const Eigen::Ref<const Matrix>& M);

  Index order() const { return lu_.rows(); }
  bool singular() const { return singular_; }

  /// Lower bound on ||M||_1 * ||M^-1||_1; +inf when singular().
  double cond1() const { return cond1_; }

  Matrix solve(const Eigen::Ref<const Matrix>& rhs) const;
  Matrix solve_transpose(const Eigen::Ref<const Matrix>& rhs) const;

  /// True only for an exactly zero pivot (singular() also covers ill-conditioning).
  bool zero_pivot() const { return zero_pivot_; }

  /// Solve without the conditioning check; callers that tolerate
  /// ill-conditioned systems (e.g. the sign iteration) use this. Throws
  /// SingularMatrix only on an exact zero pivot.
  Matrix solve_unchecked(const Eigen::Ref<const Matrix>& rhs) const;

  /// log|det M|; -inf for an exact zero pivot.
  double log_abs_determinant() const;

 private:
  Matrix raw_solve(const Eigen::Ref<const Matrix>& rhs) const;
  Matrix raw_solve_transpose(const Eigen::Ref<const Matrix>& rhs) const;
  double estimate_inverse_norm1() const;

  Eigen::PartialPivLU<Matrix> lu_;
  bool zero_pivot_ = false;
  bool singular_ = false;
  double cond1_ = 1.0;
};

/// Solves M Z = rhs. Throws SingularMatrix when M is numerically singular.
Matrix solve_linear(const Eigen::Ref<const Matrix>& M, const Eigen::Ref<const Matrix>& rhs);

struct Svd {
  Matrix U;
  Vector sigma;  // nonincreasing, nonnegative
  Matrix V;
};

/// Thin SVD, M = U diag(sigma) V^T. Throws NoConvergence on kernel failure.
Svd svd(const Eigen::Ref<const Matrix>& M);

/// Hager-style lower bound of the 1-norm condition number (at most 5 sweeps).
/// Returns +inf when M is numerically singular in the sense of solve_linear.
double cond1_estimate(const Eigen::Ref<const Matrix>& M);

struct Norms {
  double one;
  double frobenius;
};

Norms norms(const Eigen::Ref<const Matrix>& M);

inline double norm1(const Eigen::Ref<const Matrix>& M) { return norms(M).one; }

/// (M + M^T) / 2.
Matrix symmetrize(const Eigen::Ref<const Matrix>& M);

/// ||M - M^T||_F / ||M||_F, 0 for the zero matrix.
double relative_asymmetry(const Eigen::Ref<const Matrix>& M);

}  // namespace numerics
}  // namespace lure
