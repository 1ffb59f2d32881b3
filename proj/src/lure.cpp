#include "lure/lure.hpp"

#include <cmath>
#include <string>

namespace lure {

namespace {

void require_shape(const Matrix& M, Index rows, Index cols, const char* name) {
  if (M.rows() != rows || M.cols() != cols) {
    throw DimensionMismatch(std::string(name) + " must be " + std::to_string(rows) + "x" + std::to_string(cols) +
                            ", got " + std::to_string(M.rows()) + "x" + std::to_string(M.cols()));
  }
  if (!M.allFinite()) {
    throw InvalidArgument(std::string(name) + " has non-finite entries");
  }
}

}  // namespace

LureProblem::LureProblem(Matrix A, Matrix B, Matrix C, Matrix Q, Matrix R)
    : A_(std::move(A)), B_(std::move(B)), C_(std::move(C)), Q_(std::move(Q)), R_(std::move(R)) {
  const Index n = A_.rows();
  const Index m = B_.cols();
  if (n < 1 || m < 1) {
    throw DimensionMismatch("Lur'e problems need n >= 1 and m >= 1");
  }
  require_shape(A_, n, n, "A");
  require_shape(B_, n, m, "B");
  require_shape(C_, n, m, "C");
  require_shape(Q_, n, n, "Q");
  require_shape(R_, m, m, "R");
  Q_ = numerics::symmetrize(Q_);
  R_ = numerics::symmetrize(R_);
}

LureProblem LureProblem::with_R(Matrix R) const { return LureProblem(A_, B_, C_, Q_, std::move(R)); }

EvenPencil assemble_even_pencil(const LureProblem& prob) {
  const Index n = prob.n();
  const Index m = prob.m();
  const Index order = 2 * n + m;
  EvenPencil p;
  p.n = n;
  p.m = m;
  p.a = Matrix::Zero(order, order);
  p.a.block(0, n, n, n) = prob.A();
  p.a.block(0, 2 * n, n, m) = prob.B();
  p.a.block(n, 0, n, n) = prob.A().transpose();
  p.a.block(n, n, n, n) = prob.Q();
  p.a.block(n, 2 * n, n, m) = prob.C();
  p.a.block(2 * n, 0, m, n) = prob.B().transpose();
  p.a.block(2 * n, n, m, n) = prob.C().transpose();
  p.a.block(2 * n, 2 * n, m, m) = prob.R();
  p.e = Matrix::Zero(order, order);
  p.e.block(0, n, n, n) = -Matrix::Identity(n, n);
  p.e.block(n, 0, n, n) = Matrix::Identity(n, n);
  return p;
}

Matrix spectral_density(const LureProblem& prob, double s) {
  const Index n = prob.n();
  const numerics::LuFactorization lu(s * Matrix::Identity(n, n) - prob.A());
  if (lu.singular()) {
    throw PoleHit("sI - A is numerically singular at s = " + std::to_string(s));
  }
  const Matrix x = lu.solve(prob.B());
  const Matrix xtC = x.transpose() * prob.C();
  const Matrix phi = x.transpose() * prob.Q() * x + xtC + xtC.transpose() + prob.R();
  return numerics::symmetrize(phi);
}

Matrix bordered_matrix(const LureProblem& prob, double gamma) {
  const Index n = prob.n();
  const Index m = prob.m();
  const Matrix shifted = prob.A() - gamma * Matrix::Identity(n, n);
  Matrix M = Matrix::Zero(2 * n + m, 2 * n + m);
  M.block(0, n, n, n) = shifted;
  M.block(0, 2 * n, n, m) = prob.B();
  M.block(n, 0, n, n) = shifted.transpose();
  M.block(n, n, n, n) = prob.Q();
  M.block(n, 2 * n, n, m) = prob.C();
  M.block(2 * n, 0, m, n) = prob.B().transpose();
  M.block(2 * n, n, m, n) = prob.C().transpose();
  M.block(2 * n, 2 * n, m, m) = prob.R();
  return M;
}

ReducedPencil reduce_to_ssf1(const LureProblem& prob, double gamma) {
  if (!(gamma > 0.0)) {
    throw InvalidArgument("Cayley parameter must be positive");
  }
  const Index n = prob.n();
  const Index m = prob.m();
  const numerics::LuFactorization lu(bordered_matrix(prob, gamma));
  if (lu.singular() || lu.cond1() > 1.0 / (100.0 * numerics::kEps)) {
    throw GammaUnusable("bordered matrix is numerically singular for gamma = " + std::to_string(gamma));
  }

  // Only the first 2n columns of [A1 E2] matter; the last m columns of the
  // full transformed matrix are [0; 0; I].
  const Matrix plus = prob.A() + gamma * Matrix::Identity(n, n);
  Matrix rhs = Matrix::Zero(2 * n + m, 2 * n);
  rhs.block(0, n, n, n) = plus;
  rhs.block(n, 0, n, n) = plus.transpose();
  rhs.block(n, n, n, n) = prob.Q();
  rhs.block(2 * n, 0, m, n) = prob.B().transpose();
  rhs.block(2 * n, n, m, n) = prob.C().transpose();
  const Matrix T = lu.solve(rhs);

  // T = [E -G; -H E'; * *]
  const Matrix E = T.block(0, 0, n, n);
  const Matrix G = -T.block(0, n, n, n);
  const Matrix H = -T.block(n, 0, n, n);
  const Matrix F = T.block(n, n, n, n);

  ReducedPencil out;
  const double e_scale = E.norm();
  const double f_defect = e_scale > 0.0 ? (F - E.transpose()).norm() / e_scale : F.norm();
  out.structure_defect =
      std::max({numerics::relative_asymmetry(G), numerics::relative_asymmetry(H), f_defect});
  out.pencil = Ssf1Pencil::make_symplectic(E, G, H);
  out.discarded = T.bottomRows(m);
  out.gamma = gamma;
  return out;
}

Matrix lmi_residual(const LureProblem& prob, const Matrix& X) {
  const Index n = prob.n();
  const Index m = prob.m();
  if (X.rows() != n || X.cols() != n) {
    throw DimensionMismatch("X must be n x n");
  }
  Matrix res(n + m, n + m);
  const Matrix top = prob.A().transpose() * X + X * prob.A() + prob.Q();
  const Matrix off = X * prob.B() + prob.C();
  res.topLeftCorner(n, n) = numerics::symmetrize(top);
  res.topRightCorner(n, m) = off;
  res.bottomLeftCorner(m, n) = off.transpose();
  res.bottomRightCorner(m, m) = prob.R();
  return res;
}

KlFactors extract_kl(const LureProblem& prob, const Matrix& X, const KlOptions& opts) {
  const Index n = prob.n();
  const Index m = prob.m();
  const Matrix res = lmi_residual(prob, X);
  KlFactors out;
  out.K = Matrix(0, n);
  out.L = Matrix(0, m);
  const double res_norm = res.norm();
  if (res_norm == 0.0) {
    return out;
  }
  if (opts.check_semidefinite) {
    Eigen::SelfAdjointEigenSolver<Matrix> eig(res, Eigen::EigenvaluesOnly);
    if (eig.eigenvalues().minCoeff() < -std::sqrt(opts.rank_tol) * res_norm) {
      throw IndefiniteResidual("LMI residual is indefinite: X does not solve the LMI");
    }
  }
  const numerics::Svd dec = numerics::svd(res);
  const double threshold = opts.rank_tol * dec.sigma(0);
  Index p = 0;
  while (p < dec.sigma.size() && dec.sigma(p) > threshold) {
    ++p;
  }
  if (opts.max_rank) {
    p = std::min(p, *opts.max_rank);
  }
  const Matrix KL = dec.sigma.head(p).cwiseSqrt().asDiagonal() * dec.V.leftCols(p).transpose();
  out.K = KL.leftCols(n);
  out.L = KL.rightCols(m);
  out.p = p;
  return out;
}

double relative_residual(const LureProblem& prob, const Matrix& X, const Matrix& K, const Matrix& L) {
  const Index n = prob.n();
  const Index m = prob.m();
  if (K.cols() != n || L.cols() != m || K.rows() != L.rows()) {
    throw DimensionMismatch("K must be p x n and L p x m");
  }
  const Matrix res = lmi_residual(prob, X);
  Matrix KL(K.rows(), n + m);
  KL << K, L;
  const double num = (res - KL.transpose() * KL).norm();
  const double den = res.norm();
  const double scale = 2.0 * prob.A().norm() * X.norm() + prob.B().norm() * X.norm() + prob.Q().norm() +
                       prob.C().norm() + prob.R().norm();
  const double floor = numerics::kEps * scale;
  if (num <= floor && den <= floor) {
    return 0.0;
  }
  return num / den;
}

double forward_error(const Matrix& X, const Matrix& X_ref) {
  if (X.rows() != X_ref.rows() || X.cols() != X_ref.cols()) {
    throw DimensionMismatch("forward_error needs matrices of equal shape");
  }
  const double ref = X_ref.norm();
  if (ref == 0.0) {
    throw ZeroReference("reference solution is zero");
  }
  return (X - X_ref).norm() / ref;
}

std::vector<PsdVerdict> phi_psd_probe(const LureProblem& prob, const std::vector<double>& frequencies) {
  const Index n = prob.n();
  const Index m = prob.m();
  std::vector<PsdVerdict> out;
  out.reserve(frequencies.size());
  for (const double w : frequencies) {
    // (iwI - A)(xr + i xi) = B as a real 2n system.
    Matrix sys = Matrix::Zero(2 * n, 2 * n);
    sys.topLeftCorner(n, n) = -prob.A();
    sys.topRightCorner(n, n) = -w * Matrix::Identity(n, n);
    sys.bottomLeftCorner(n, n) = w * Matrix::Identity(n, n);
    sys.bottomRightCorner(n, n) = -prob.A();
    const numerics::LuFactorization lu(sys);
    if (lu.singular()) {
      throw PoleHit("i w I - A is numerically singular at w = " + std::to_string(w));
    }
    Matrix rhs = Matrix::Zero(2 * n, m);
    rhs.topRows(n) = prob.B();
    const Matrix x = lu.solve(rhs);
    const Matrix xr = x.topRows(n);
    const Matrix xi = x.bottomRows(n);
    const Matrix& Q = prob.Q();
    const Matrix& C = prob.C();
    const Matrix phi_re = numerics::symmetrize(xr.transpose() * Q * xr + xi.transpose() * Q * xi +
                                               xr.transpose() * C + C.transpose() * xr + prob.R());
    Matrix phi_im = xr.transpose() * Q * xi - xi.transpose() * Q * xr - xi.transpose() * C + C.transpose() * xi;
    phi_im = 0.5 * (phi_im - phi_im.transpose());

    Matrix embedding(2 * m, 2 * m);
    embedding << phi_re, -phi_im, phi_im, phi_re;
    const double shift = embedding.norm();
    const numerics::Svd dec = numerics::svd(embedding + shift * Matrix::Identity(2 * m, 2 * m));
    PsdVerdict v;
    v.omega = w;
    v.min_eigenvalue = dec.sigma(dec.sigma.size() - 1) - shift;
    v.nonnegative = v.min_eigenvalue >= -1e-10 * shift;
    out.push_back(v);
  }
  return out;
}

}  // namespace lure
