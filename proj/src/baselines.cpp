#include "lure/baselines.hpp"

#include <cmath>
#include <limits>

#include "lure/gamma.hpp"
#include "lure/pencil.hpp"
#include "lure/sda.hpp"

namespace lure {

LureProblem regularize(const LureProblem& prob, double eps) {
  if (!(eps >= 0.0)) {
    throw InvalidArgument("regularization parameter must be nonnegative");
  }
  Matrix R = prob.R();
  R.diagonal().array() += eps;
  return prob.with_R(std::move(R));
}

CareData care_from_lure(const LureProblem& prob) {
  const numerics::LuFactorization lu(prob.R());
  if (lu.singular()) {
    throw SingularR("R is numerically singular; the Lur'e equations do not reduce to a Riccati equation");
  }
  const Matrix RinvCt = lu.solve(prob.C().transpose());
  const Matrix RinvBt = lu.solve(prob.B().transpose());
  CareData cd;
  cd.Ahat = prob.A() - prob.B() * RinvCt;
  cd.Ghat = numerics::symmetrize(prob.B() * RinvBt);
  cd.Qhat = numerics::symmetrize(prob.Q() - prob.C() * RinvCt);
  return cd;
}

Matrix care_residual(const CareData& cd, const Matrix& X) {
  return cd.Ahat.transpose() * X + X * cd.Ahat - X * cd.Ghat * X + cd.Qhat;
}

SignResult solve_care_sign(const CareData& cd, const SignOptions& opts) {
  const Index n = cd.Ahat.rows();
  Matrix Z(2 * n, 2 * n);
  Z << cd.Ahat, -cd.Ghat, -cd.Qhat, -cd.Ahat.transpose();

  SignResult out;
  bool converged = false;
  double previous_change = std::numeric_limits<double>::infinity();
  for (int k = 0; k < opts.max_iter; ++k) {
    const numerics::LuFactorization lu(Z);
    if (lu.zero_pivot()) {
      throw SignNoConvergence("sign iterate became singular (eigenvalues on the imaginary axis)");
    }
    const double c = std::exp(-lu.log_abs_determinant() / static_cast<double>(2 * n));
    const Matrix inv = lu.solve_unchecked(Matrix::Identity(2 * n, 2 * n));
    Matrix next = 0.5 * (c * Z + inv / c);
    const double change = numerics::norm1(next - Z) / numerics::norm1(Z);
    Z = std::move(next);
    out.iterations = k + 1;
    if (!Z.allFinite()) {
      throw SignNoConvergence("sign iteration diverged");
    }
    if (change <= opts.tol) {
      converged = true;
      break;
    }
    // Rounding floor reached: the change no longer decreases.
    if (change < opts.stagnation_threshold && change >= previous_change) {
      const Matrix defect = Z * Z - Matrix::Identity(2 * n, 2 * n);
      converged = defect.norm() <= opts.involution_tol * Z.norm();
      break;
    }
    previous_change = change;
  }
  if (!converged) {
    throw SignNoConvergence("sign iteration did not converge in " + std::to_string(opts.max_iter) + " steps");
  }

  const Matrix projector = 0.5 * (Matrix::Identity(2 * n, 2 * n) - Z);
  const numerics::Svd dec = numerics::svd(projector);
  const Matrix U1 = dec.U.topLeftCorner(n, n);
  const Matrix U2 = dec.U.bottomLeftCorner(n, n);
  const numerics::LuFactorization lu1(U1);
  if (lu1.singular()) {
    throw NotGraphForm("stable invariant subspace is not of the form [I; X]");
  }
  // X U1 = U2  <=>  U1' X' = U2'
  out.X = numerics::symmetrize(lu1.solve_transpose(U2.transpose()).transpose());
  out.S = std::move(Z);
  return out;
}

namespace detail {

LureSolution solve_regularized_sda(const LureProblem& prob, double eps, const SolveOptions& opts) {
  const double gamma = opts.gamma ? *opts.gamma : choose_gamma(prob, opts.gamma_bracket).gamma;
  const CareData cd = care_from_lure(regularize(prob, eps));
  const Index n = prob.n();

  // Coordinates swapped so the stabilizing solution appears as G of the limit.
  Matrix ham(2 * n, 2 * n);
  ham << -cd.Ahat.transpose(), -cd.Qhat, -cd.Ghat, cd.Ahat;
  const MatrixPencil cay = cayley(MatrixPencil(ham, Matrix::Identity(2 * n, 2 * n)), gamma);
  Ssf1Pencil ssf;
  try {
    ssf = to_ssf1(cay, n, n);
  } catch (const NotReducible& e) {
    throw GammaUnusable(e.what());
  }
  ssf = Ssf1Pencil::make_symplectic(ssf.E, ssf.G, ssf.H);
  SdaResult sda = sda_iterate(ssf, opts.sda);
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

LureSolution solve_regularized_sign(const LureProblem& prob, double eps, const SolveOptions& opts,
                                    const SignOptions& sign) {
  const SignResult res = solve_care_sign(care_from_lure(regularize(prob, eps)), sign);
  LureSolution sol;
  sol.X = res.X;
  sol.iterations = res.iterations;
  attach_factors(prob, opts.rank_tol, sol);
  return sol;
}

}  // namespace detail

LureSolution solve_rs(const LureProblem& prob, double eps, const SolveOptions& opts) {
  if (!(eps > 0.0)) {
    throw InvalidArgument("R+S needs a positive regularization parameter");
  }
  return detail::solve_regularized_sda(prob, eps, opts);
}

LureSolution solve_rn(const LureProblem& prob, double eps, const SolveOptions& opts, const SignOptions& sign) {
  if (!(eps > 0.0)) {
    throw InvalidArgument("R+N needs a positive regularization parameter");
  }
  return detail::solve_regularized_sign(prob, eps, opts, sign);
}

}  // namespace lure
