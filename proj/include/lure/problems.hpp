#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <string>

#include "lure/lure.hpp"

namespace lure {

/// Seeded generator with a fixed, platform-independent stream: mt19937_64
/// words, uniforms from the top 53 bits, standard normals by Box-Muller
/// (both values of each pair are used).
class Rng {
 public:
  explicit Rng(std::uint64_t seed);

  /// Uniform on [0, 1).
  double uniform();
  /// Standard normal.
  double normal();

  /// Column-major fills.
  Matrix uniform_matrix(Index rows, Index cols);
  Matrix normal_matrix(Index rows, Index cols);

 private:
  std::mt19937_64 engine_;
  std::optional<double> spare_normal_;
};

/// Random stable A = -VV' - W + W' (V, W standard normal), B uniform on
/// [0,1), C = B, Q = 0 and R the m x m matrix of ones (rank 1).
LureProblem gen_p1(Index n, Index m, std::uint64_t seed);

/// A = I + N (upper shift), B = e_n, C = -B, R = 0, Q = -tridiag(1, 2, 1);
/// the maximal solution is X = I with K = 0, L = 0.
LureProblem gen_p3(Index n);

struct ConstructedProblem {
  LureProblem problem;
  Matrix X;
  Matrix K;
  Matrix L;
};

/// Problem with a known solution: Q = K'K - A'X - XA, C = K'L - XB, R = L'L.
///
/// For p == m the factors are drawn so that L is invertible and
/// A - B L^-1 K has a negative definite symmetric part, which makes X the
/// stabilizing and hence maximal solution. For p < m the problem is
/// consistent but its even pencil is singular.
ConstructedProblem gen_constructed(Index n, Index m, Index p, std::uint64_t seed);

/// Known-solution problem with singular R: K and L have m rows, rank(L) =
/// rank(R) = r, and the draw is repeated until the finite zeros of
/// [A - sI, B; K, L] lie in Re s < -0.1, so X is the maximal solution.
/// Requires 1 <= r <= m and n >= m - r.
ConstructedProblem gen_constructed_rank(Index n, Index m, Index r, std::uint64_t seed);

/// Reads a `LURE 1` text file. Throws ParseError (with line and column) on
/// malformed input and DimensionMismatch when a block has the wrong shape.
LureProblem load_problem(const std::string& path);
LureProblem parse_problem(const std::string& text);

/// Writes a `LURE 1` file with 17 significant digits, so save/load is exact.
void save_problem(const LureProblem& prob, const std::string& path);
std::string format_problem(const LureProblem& prob);

enum class ProblemKind { p1, p3, constructed, file };

struct ProblemSpec {
  ProblemKind kind = ProblemKind::p1;
  Index n = 1;
  Index m = 1;
  std::uint64_t seed = 0;
  std::string path;

  /// Short identifier used in reports, e.g. "p1-s3" or "p3".
  std::string id() const;
};

struct GeneratedProblem {
  LureProblem problem;
  /// Known solution when one exists (P3, constructed problems).
  std::optional<Matrix> reference;
};

GeneratedProblem make_problem(const ProblemSpec& spec);

}  // namespace lure
