#include "lure/gamma.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace lure {

double f_gamma(const LureProblem& prob, double gamma) {
  if (!(gamma > 0.0)) {
    throw InvalidArgument("gamma must be positive");
  }
  const double clustering = (numerics::norm1(prob.A()) + gamma) / (2.0 * gamma);
  const double cond = numerics::cond1_estimate(bordered_matrix(prob, gamma));
  return std::max(cond, clustering);
}

GammaBracket default_gamma_bracket(const LureProblem& prob) {
  const double a1 = numerics::norm1(prob.A());
  return {std::max(1e-3, 1e-3 * a1), 10.0 * (a1 + 1.0)};
}

GammaSearchResult golden_section_log(const std::function<double(double)>& f, double lo, double hi, int steps) {
  if (!(lo > 0.0) || !(hi > lo) || steps < 1) {
    throw InvalidArgument("golden-section search needs 0 < lo < hi and at least one step");
  }
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  GammaSearchResult out;
  auto eval = [&](double t) {
    const double g = std::pow(10.0, t);
    const double v = f(g);
    out.evaluations.push_back({g, v});
    return v;
  };

  double a = std::log10(lo);
  double b = std::log10(hi);
  double c = b - inv_phi * (b - a);
  double d = a + inv_phi * (b - a);
  double fc = eval(c);
  double fd = eval(d);
  for (int step = 1; step <= steps; ++step) {
    const bool last = step == steps;
    if (fc < fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - inv_phi * (b - a);
      if (!last) {
        fc = eval(c);
      }
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + inv_phi * (b - a);
      if (!last) {
        fd = eval(d);
      }
    }
  }
  out.final_lo = std::pow(10.0, a);
  out.final_hi = std::pow(10.0, b);

  const auto best = std::min_element(out.evaluations.begin(), out.evaluations.end(),
                                     [](const GammaEvaluation& x, const GammaEvaluation& y) { return x.f < y.f; });
  if (!std::isfinite(best->f)) {
    throw AllSingular("every evaluated gamma gave a singular bordered matrix; supply a bracket");
  }
  out.gamma = best->gamma;
  out.f_value = best->f;
  return out;
}

GammaSearchResult choose_gamma(const LureProblem& prob, std::optional<GammaBracket> bracket) {
  const GammaBracket br = bracket.value_or(default_gamma_bracket(prob));
  return golden_section_log([&](double g) { return f_gamma(prob, g); }, br.first, br.second, 5);
}

}  // namespace lure
