#include "lure/numerics.hpp"

#include <cmath>
#include <limits>

namespace lure::numerics {

namespace {

constexpr int kHagerSweeps = 5;

}  // namespace

LuFactorization::LuFactorization(const Eigen::Ref<const Matrix>& M) {
  if (M.rows() != M.cols()) {
    throw InvalidArgument("LU factorization needs a square matrix");
  }
  if (M.size() == 0) {
    return;
  }
  if (!M.allFinite()) {
    zero_pivot_ = true;
    singular_ = true;
    cond1_ = std::numeric_limits<double>::infinity();
    return;
  }
  lu_.compute(M);
  const auto diag = lu_.matrixLU().diagonal();
  for (Index i = 0; i < diag.size(); ++i) {
    if (diag(i) == 0.0) {
      zero_pivot_ = true;
    }
  }
  if (zero_pivot_) {
    singular_ = true;
    cond1_ = std::numeric_limits<double>::infinity();
    return;
  }
  const double cond = norms(M).one * estimate_inverse_norm1();
  if (!std::isfinite(cond) || cond > 1.0 / kEps) {
    singular_ = true;
    cond1_ = std::numeric_limits<double>::infinity();
  } else {
    cond1_ = std::max(cond, 1.0);
  }
}

Matrix LuFactorization::raw_solve(const Eigen::Ref<const Matrix>& rhs) const {
  return lu_.solve(rhs);
}

Matrix LuFactorization::raw_solve_transpose(const Eigen::Ref<const Matrix>& rhs) const {
  return lu_.transpose().solve(rhs);
}

// Hager's estimator with Higham's termination tweak: stop once the
// estimate stops growing or the gradient test says x is a local maximum.
double LuFactorization::estimate_inverse_norm1() const {
  const Index n = lu_.rows();
  Vector x = Vector::Constant(n, 1.0 / static_cast<double>(n));
  double estimate = 0.0;
  for (int sweep = 0; sweep < kHagerSweeps; ++sweep) {
    const Vector y = raw_solve(x);
    const double candidate = y.lpNorm<1>();
    if (sweep > 0 && candidate <= estimate) {
      break;
    }
    estimate = candidate;
    Vector signs(n);
    for (Index i = 0; i < n; ++i) {
      signs(i) = y(i) < 0.0 ? -1.0 : 1.0;
    }
    const Vector z = raw_solve_transpose(signs);
    Index j = 0;
    const double zmax = z.cwiseAbs().maxCoeff(&j);
    if (zmax <= z.dot(x)) {
      break;
    }
    x.setZero();
    x(j) = 1.0;
  }
  return estimate;
}

Matrix LuFactorization::solve(const Eigen::Ref<const Matrix>& rhs) const {
  if (rhs.rows() != order()) {
    throw InvalidArgument("right-hand side row count does not match matrix order");
  }
  if (singular_) {
    throw SingularMatrix("matrix to invert is numerically singular");
  }
  if (order() == 0) {
    return Matrix(0, rhs.cols());
  }
  return raw_solve(rhs);
}

Matrix LuFactorization::solve_transpose(const Eigen::Ref<const Matrix>& rhs) const {
  if (rhs.rows() != order()) {
    throw InvalidArgument("right-hand side row count does not match matrix order");
  }
  if (singular_) {
    throw SingularMatrix("matrix to invert is numerically singular");
  }
  if (order() == 0) {
    return Matrix(0, rhs.cols());
  }
  return raw_solve_transpose(rhs);
}

Matrix LuFactorization::solve_unchecked(const Eigen::Ref<const Matrix>& rhs) const {
  if (rhs.rows() != order()) {
    throw InvalidArgument("right-hand side row count does not match matrix order");
  }
  if (zero_pivot_) {
    throw SingularMatrix("matrix to invert has a zero pivot");
  }
  if (order() == 0) {
    return Matrix(0, rhs.cols());
  }
  return raw_solve(rhs);
}

double LuFactorization::log_abs_determinant() const {
  if (zero_pivot_) {
    return -std::numeric_limits<double>::infinity();
  }
  double sum = 0.0;
  const auto diag = lu_.matrixLU().diagonal();
  for (Index i = 0; i < diag.size(); ++i) {
    sum += std::log(std::abs(diag(i)));
  }
  return sum;
}

Matrix solve_linear(const Eigen::Ref<const Matrix>& M, const Eigen::Ref<const Matrix>& rhs) {
  if (M.rows() != M.cols()) {
    throw InvalidArgument("solve_linear needs a square matrix");
  }
  if (rhs.rows() != M.rows()) {
    throw InvalidArgument("right-hand side row count does not match matrix order");
  }
  return LuFactorization(M).solve(rhs);
}

Svd svd(const Eigen::Ref<const Matrix>& M) {
  if (!M.allFinite()) {
    throw NoConvergence("SVD of a matrix with non-finite entries");
  }
  Eigen::BDCSVD<Matrix> dec(M, Eigen::ComputeThinU | Eigen::ComputeThinV);
  if (dec.info() != Eigen::Success) {
    throw NoConvergence("SVD iteration failed to converge");
  }
  return Svd{dec.matrixU(), dec.singularValues(), dec.matrixV()};
}

double cond1_estimate(const Eigen::Ref<const Matrix>& M) {
  if (M.rows() != M.cols()) {
    throw InvalidArgument("cond1_estimate needs a square matrix");
  }
  if (M.size() == 0) {
    return 1.0;
  }
  return LuFactorization(M).cond1();
}

Norms norms(const Eigen::Ref<const Matrix>& M) {
  if (M.size() == 0) {
    return {0.0, 0.0};
  }
  return {M.cwiseAbs().colwise().sum().maxCoeff(), M.norm()};
}

Matrix symmetrize(const Eigen::Ref<const Matrix>& M) {
  return 0.5 * (M + M.transpose());
}

double relative_asymmetry(const Eigen::Ref<const Matrix>& M) {
  const double scale = M.norm();
  if (scale == 0.0) {
    return 0.0;
  }
  return (M - M.transpose()).norm() / scale;
}

}  // namespace lure::numerics
