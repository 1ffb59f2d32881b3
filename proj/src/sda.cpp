#include "lure/sda.hpp"

#include <cmath>
#include <limits>

namespace lure {

std::string to_string(Termination t) {
  switch (t) {
    case Termination::converged:
      return "converged";
    case Termination::stagnated:
      return "stagnated";
    case Termination::max_iter:
      return "max_iter";
    case Termination::singular_igh:
      return "singular_IGH";
  }
  return "unknown";
}

namespace {

Ssf1Pencil step_symplectic(const Ssf1Pencil& p) {
  const Index n = p.N();
  const Matrix igh = Matrix::Identity(n, n) - p.G * p.H;
  const numerics::LuFactorization lu(igh);
  if (lu.singular()) {
    throw SingularIGH("I - GH is numerically singular");
  }
  const Matrix W1 = lu.solve(p.E);  // (I - GH)^-1 E
  const Matrix W2 = lu.solve(p.G);  // (I - GH)^-1 G

  Ssf1Pencil out;
  out.E = p.E * W1;
  out.G = p.G + p.E * W2 * p.E.transpose();
  out.H = p.H + p.E.transpose() * p.H * W1;
  out.F = out.E.transpose();
  out.symplectic = true;
  return out;
}

Ssf1Pencil step_general(const Ssf1Pencil& p) {
  const Index n = p.N();
  const Index m = p.M();
  const numerics::LuFactorization lu_n(Matrix::Identity(n, n) - p.G * p.H);
  const numerics::LuFactorization lu_m(Matrix::Identity(m, m) - p.H * p.G);
  if (lu_n.singular() || lu_m.singular()) {
    throw SingularIGH("I - GH is numerically singular");
  }
  // E_* = E (I - GH)^-1 and F_* = F (I - HG)^-1 via transposed solves.
  const Matrix E_star = lu_n.solve_transpose(p.E.transpose()).transpose();
  const Matrix F_star = lu_m.solve_transpose(p.F.transpose()).transpose();

  Ssf1Pencil out;
  out.G = p.G + E_star * p.G * p.F;
  out.H = p.H + F_star * p.H * p.E;
  out.E = E_star * p.E;
  out.F = F_star * p.F;
  out.symplectic = false;
  return out;
}

double relative_change(const Matrix& next, const Matrix& prev) {
  const double diff = (next - prev).norm();
  if (diff == 0.0) {
    return 0.0;
  }
  const double scale = std::max(next.norm(), prev.norm());
  return diff / scale;
}

}  // namespace

Ssf1Pencil sda_step(const Ssf1Pencil& p) {
  if (p.E.rows() != p.E.cols() || p.F.rows() != p.F.cols() || p.G.rows() != p.N() || p.G.cols() != p.M() ||
      p.H.rows() != p.M() || p.H.cols() != p.N()) {
    throw InvalidArgument("inconsistent SSF-I block sizes");
  }
  return p.symplectic ? step_symplectic(p) : step_general(p);
}

SdaResult sda_iterate(Ssf1Pencil p, const SdaOptions& opts) {
  if (!(opts.tol > 0.0) || opts.max_iter < 1 || opts.stagnation_window < 1) {
    throw InvalidArgument("SDA options need tol > 0, max_iter >= 1 and stagnation_window >= 1");
  }
  SdaResult result;
  IterationTrace& trace = result.trace;

  if (p.E.isZero(0.0) && p.F.isZero(0.0)) {
    trace.reason = Termination::converged;
    result.G = p.G;
    result.H = p.H;
    return result;
  }

  Matrix best_G = p.G;
  Matrix best_H = p.H;
  double best_change = std::numeric_limits<double>::infinity();
  double last_change = std::numeric_limits<double>::infinity();
  int since_improvement = 0;
  // The change can grow for a few steps before the doubling contracts (gamma
  // far from the eigenvalues); stagnation is only tracked after it first drops.
  bool contracting = false;
  trace.reason = Termination::max_iter;

  for (int k = 0; k < opts.max_iter; ++k) {
    Ssf1Pencil next;
    try {
      next = sda_step(p);
    } catch (const SingularIGH&) {
      if (k == 0) {
        throw;
      }
      trace.reason = Termination::singular_igh;
      break;
    }
    IterationStep step;
    if (p.symplectic) {
      step.g_asymmetry = numerics::relative_asymmetry(next.G);
      step.h_asymmetry = numerics::relative_asymmetry(next.H);
      next.G = numerics::symmetrize(next.G);
      next.H = numerics::symmetrize(next.H);
    }
    step.e_norm = next.E.norm();
    step.f_norm = next.F.norm();
    step.g_change = relative_change(next.G, p.G);
    step.h_change = relative_change(next.H, p.H);
    const double change = step.change();
    trace.steps.push_back(step);
    p = std::move(next);

    if (!std::isfinite(change)) {
      trace.reason = Termination::singular_igh;
      break;
    }
    contracting = contracting || (k > 0 && change < last_change);
    last_change = change;
    if (!contracting || change < best_change) {
      best_change = change;
      best_G = p.G;
      best_H = p.H;
      trace.returned_step = k;
      since_improvement = 0;
    } else {
      ++since_improvement;
    }
    if (change <= opts.tol) {
      trace.reason = Termination::converged;
      break;
    }
    if (since_improvement >= opts.stagnation_window) {
      trace.reason = Termination::stagnated;
      break;
    }
  }
  trace.max_iter_warning = trace.reason == Termination::max_iter;
  result.G = std::move(best_G);
  result.H = std::move(best_H);
  return result;
}

std::int64_t flop_estimate(std::int64_t N, std::int64_t M) {
  const double n = static_cast<double>(N);
  const double m = static_cast<double>(M);
  return std::llround(14.0 / 3.0 * (m * m * m + n * n * n) + 6.0 * m * n * (m + n));
}

}  // namespace lure
