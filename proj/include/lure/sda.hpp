#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "lure/pencil.hpp"

namespace lure {

struct SdaOptions {
  /// Stop when the relative change of both G and H falls below tol.
  double tol = 1e-14;
  int max_iter = 60;
  /// Declare stagnation when the change has not improved on its best value
  /// for this many consecutive steps, counted once the change has started to
  /// decrease.
  int stagnation_window = 5;
};

enum class Termination { converged, stagnated, max_iter, singular_igh };

std::string to_string(Termination t);

struct IterationStep {
  double e_norm = 0.0;    // ||E_k||_F of the iterate produced by this step
  double f_norm = 0.0;    // ||F_k||_F
  double g_change = 0.0;  // ||G_{k+1} - G_k||_F / ||G_{k+1}||_F
  double h_change = 0.0;  // ||H_{k+1} - H_k||_F / ||H_{k+1}||_F
  /// Relative asymmetry of G_{k+1}, H_{k+1} before re-symmetrization
  /// (symplectic pencils only, 0 otherwise).
  double g_asymmetry = 0.0;
  double h_asymmetry = 0.0;

  double change() const { return g_change > h_change ? g_change : h_change; }
};

struct IterationTrace {
  std::vector<IterationStep> steps;
  Termination reason = Termination::converged;
  /// Index (into steps) of the iterate that was returned; -1 for the input.
  int returned_step = -1;
  /// Set when max_iter was hit without convergence; the result is still usable.
  bool max_iter_warning = false;

  int iterations() const { return static_cast<int>(steps.size()); }
};

/// One doubling step. Throws SingularIGH when I - GH is numerically singular.
/// For symplectic input only E, G, H are computed (one LU of I - GH) and F is
/// set to E'; G and H are returned as computed, without re-symmetrization.
Ssf1Pencil sda_step(const Ssf1Pencil& p);

struct SdaResult {
  Matrix G;  // G_inf: [G; I] spans the canonical d-semi-unstable subspace
  Matrix H;  // H_inf: [I; H] spans the canonical d-semi-stable subspace
  IterationTrace trace;
};

/// Repeats sda_step until convergence, stagnation or max_iter. A singular
/// I - GH after at least one step ends the iteration with reason
/// singular_igh and returns the best iterate; on the very first step the
/// SingularIGH error is rethrown.
SdaResult sda_iterate(Ssf1Pencil p, const SdaOptions& opts = {});

/// Flop count of one step, 14/3 (M^3 + N^3) + 6 M N (M + N), rounded.
std::int64_t flop_estimate(std::int64_t N, std::int64_t M);

}  // namespace lure
