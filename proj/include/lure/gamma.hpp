#pragma once

#include <functional>
#include <optional>
#include <utility>
#include <vector>

#include "lure/lure.hpp"

namespace lure {

struct GammaEvaluation {
  double gamma = 0.0;
  double f = 0.0;
};

struct GammaSearchResult {
  double gamma = 0.0;
  double f_value = 0.0;
  /// In evaluation order.
  std::vector<GammaEvaluation> evaluations;
  /// Final bracket after the last contraction.
  double final_lo = 0.0;
  double final_hi = 0.0;
};

using GammaBracket = std::pair<double, double>;

/// max(cond1 estimate of the bordered matrix, (||A||_1 + gamma) / (2 gamma)).
/// The first term keeps the initial inversion accurate, the second keeps the
/// transformed eigenvalues away from 1. +inf when the bordered matrix is singular.
double f_gamma(const LureProblem& prob, double gamma);

/// [max(1e-3, 1e-3 ||A||_1), 10 (||A||_1 + 1)].
GammaBracket default_gamma_bracket(const LureProblem& prob);

/// Golden-section search on log10(gamma): `steps` contractions with interior
/// point reuse, i.e. steps + 1 evaluations. Returns the best evaluated point
/// (first one on ties). Throws AllSingular when every evaluation is +inf.
GammaSearchResult golden_section_log(const std::function<double(double)>& f, double lo, double hi, int steps = 5);

/// Five golden-section steps of f_gamma over `bracket` (default bracket when empty).
GammaSearchResult choose_gamma(const LureProblem& prob, std::optional<GammaBracket> bracket = std::nullopt);

}  // namespace lure
