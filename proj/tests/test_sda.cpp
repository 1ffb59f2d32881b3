#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "lure/problems.hpp"
#include "lure/sda.hpp"
#include "lure/solver.hpp"
#include "oracles.hpp"

using namespace lure;

namespace {

Matrix scalar(double v) { return Matrix::Constant(1, 1, v); }

Ssf1Pencil general_pencil(std::mt19937& gen, Index N, Index M) {
  Ssf1Pencil p;
  p.E = 0.5 * oracle::random_matrix(gen, N, N);
  p.F = 0.5 * oracle::random_matrix(gen, M, M);
  p.G = 0.3 * oracle::random_matrix(gen, N, M);
  p.H = 0.3 * oracle::random_matrix(gen, M, N);
  return p;
}

// Symplectic SSF-I of the scalar Riccati equation 2 a x - g x^2 + q = 0.
Ssf1Pencil scalar_care_pencil(double a, double g, double q, double gamma) {
  Matrix ham(2, 2);
  ham << -a, -q, -g, a;
  const Ssf1Pencil s = to_ssf1(cayley(MatrixPencil(ham, Matrix::Identity(2, 2)), gamma), 1, 1);
  return Ssf1Pencil::make_symplectic(s.E, s.G, s.H);
}

}  // namespace

TEST(SdaStep, ZeroCouplingSquaresDiagonalBlocks) {
  std::mt19937 gen(1);
  Ssf1Pencil p = general_pencil(gen, 2, 3);
  p.G.setZero();
  p.H.setZero();
  const Ssf1Pencil q = sda_step(p);
  EXPECT_LE((q.E - p.E * p.E).norm(), 1e-15);
  EXPECT_LE((q.F - p.F * p.F).norm(), 1e-15);
  EXPECT_EQ(q.G, p.G);
  EXPECT_EQ(q.H, p.H);
}

TEST(SdaStep, ZeroDiagonalBlocksAreFixed) {
  std::mt19937 gen(2);
  Ssf1Pencil p = general_pencil(gen, 2, 2);
  p.E.setZero();
  p.F.setZero();
  const Ssf1Pencil q = sda_step(p);
  EXPECT_EQ(q.E, p.E);
  EXPECT_EQ(q.F, p.F);
  EXPECT_EQ(q.G, p.G);
  EXPECT_EQ(q.H, p.H);
}

TEST(SdaStep, ScalarValues) {
  Ssf1Pencil p;
  p.E = scalar(0.5);
  p.F = scalar(0.5);
  p.G = scalar(0.1);
  p.H = scalar(0.2);
  // Scalar formulas: E1 = E^2/(1-GH), G1 = G + E^2 G/(1-GH), H1 = H + E^2 H/(1-GH).
  const double d = 1.0 - 0.1 * 0.2;
  const Ssf1Pencil q = sda_step(p);
  EXPECT_NEAR(q.E(0, 0), 0.25 / d, 1e-15);
  EXPECT_NEAR(q.F(0, 0), 0.25 / d, 1e-15);
  EXPECT_NEAR(q.G(0, 0), 0.1 + 0.025 / d, 1e-15);
  EXPECT_NEAR(q.H(0, 0), 0.2 + 0.05 / d, 1e-15);
  EXPECT_NEAR(q.E(0, 0), 0.2551020, 5e-8);
  EXPECT_NEAR(q.G(0, 0), 0.1255102, 5e-8);
  EXPECT_NEAR(q.H(0, 0), 0.2510204, 5e-8);

  const Ssf1Pencil s = sda_step(Ssf1Pencil::make_symplectic(scalar(0.5), scalar(0.1), scalar(0.2)));
  EXPECT_NEAR(s.E(0, 0), q.E(0, 0), 1e-16);
  EXPECT_NEAR(s.G(0, 0), q.G(0, 0), 1e-16);
  EXPECT_NEAR(s.H(0, 0), q.H(0, 0), 1e-16);
}

TEST(SdaStep, SymplecticAndGeneralPathsAgree) {
  std::mt19937 gen(3);
  const Matrix G0 = oracle::random_matrix(gen, 3, 3), H0 = oracle::random_matrix(gen, 3, 3);
  const Ssf1Pencil s = Ssf1Pencil::make_symplectic(0.5 * oracle::random_matrix(gen, 3, 3), 0.2 * (G0 + G0.transpose()),
                                                   0.2 * (H0 + H0.transpose()));
  Ssf1Pencil g = s;
  g.symplectic = false;
  const Ssf1Pencil a = sda_step(s), b = sda_step(g);
  EXPECT_LE((a.E - b.E).norm(), 1e-13 * b.E.norm());
  EXPECT_LE((a.F - b.F).norm(), 1e-13 * b.F.norm());
  EXPECT_LE((a.G - b.G).norm(), 1e-13 * b.G.norm());
  EXPECT_LE((a.H - b.H).norm(), 1e-13 * b.H.norm());
  EXPECT_TRUE(a.symplectic);
}

TEST(SdaStep, SingularCouplingThrows) {
  EXPECT_THROW(sda_step(Ssf1Pencil::make_symplectic(scalar(0.5), scalar(1.0), scalar(1.0))), SingularIGH);
}

// One doubling step squares the eigenvalues.
TEST(SdaProperty, StepSquaresEigenvalues) {
  std::mt19937 gen(44);
  int checked = 0;
  for (int trial = 0; trial < 50; ++trial) {
    const Index order = 2 + trial % 3;
    const Index N = 1 + trial % (order - 1);
    const Ssf1Pencil p = general_pencil(gen, N, order - N);
    Ssf1Pencil q;
    try {
      q = sda_step(p);
    } catch (const SingularIGH&) {
      continue;
    }
    const MatrixPencil before = p.assemble(), after = q.assemble();
    std::vector<oracle::Complex> squares;
    for (auto z : oracle::pencil_eigenvalues(before.a, before.e)) squares.push_back(z * z);
    EXPECT_TRUE(oracle::same_multiset(oracle::pencil_eigenvalues(after.a, after.e), squares, 1e-8)) << trial;
    ++checked;
  }
  EXPECT_GE(checked, 45);
}

TEST(SdaIterate, ScalarCareMaximalRoot) {
  // x^2 + 2x - 1 = 0, maximal root -1 + sqrt(2).
  const SdaResult r = sda_iterate(scalar_care_pencil(-1.0, 1.0, 1.0, 1.0));
  EXPECT_NEAR(r.G(0, 0), -1.0 + std::sqrt(2.0), 1e-12);
  EXPECT_EQ(r.trace.reason, Termination::converged);
}

TEST(SdaIterate, ZeroDiagonalBlocksReturnImmediately) {
  Ssf1Pencil p = Ssf1Pencil::make_symplectic(Matrix::Zero(2, 2), Matrix::Identity(2, 2), Matrix::Zero(2, 2));
  const SdaResult r = sda_iterate(p);
  EXPECT_EQ(r.trace.iterations(), 0);
  EXPECT_EQ(r.G, p.G);
}

TEST(SdaIterate, CriticalEigenvalueGivesLinearRateOneHalf) {
  // -2x - x^2 - 1 = -(x + 1)^2: double Hamiltonian eigenvalue at zero,
  // mapped to the unit circle by the Cayley transform.
  const SdaResult r = sda_iterate(scalar_care_pencil(-1.0, 1.0, -1.0, 1.0));
  const auto& st = r.trace.steps;
  ASSERT_GE(st.size(), 12u);
  for (std::size_t k = 4; k < 12; ++k) {
    EXPECT_NEAR(st[k].change() / st[k - 1].change(), 0.5, 0.1) << k;
  }
  EXPECT_NEAR(r.G(0, 0), -1.0, 1e-6);
}

TEST(SdaIterate, FirstStepBreakdownPropagates) {
  EXPECT_THROW(sda_iterate(Ssf1Pencil::make_symplectic(scalar(0.5), scalar(1.0), scalar(1.0))), SingularIGH);
}

TEST(SdaIterate, MaxIterIsASoftWarning) {
  const LureProblem prob = gen_p1(10, 3, 0);
  const ReducedPencil red = reduce_to_ssf1(prob, 2.0);
  SdaOptions o;
  o.max_iter = 2;
  const SdaResult r = sda_iterate(red.pencil, o);
  EXPECT_EQ(r.trace.reason, Termination::max_iter);
  EXPECT_TRUE(r.trace.max_iter_warning);
  EXPECT_EQ(r.trace.iterations(), 2);
  EXPECT_TRUE(r.G.allFinite());
}

TEST(SdaIterate, SymplecticDriftPerStepOnP1) {
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const LureSolution sol = solve_lure(gen_p1(10, 3, seed));
    ASSERT_GT(sol.trace.iterations(), 0);
    for (const IterationStep& s : sol.trace.steps) {
      EXPECT_LE(s.g_asymmetry, 1e-12);
      EXPECT_LE(s.h_asymmetry, 1e-12);
    }
  }
}

TEST(SdaIterate, NormOfEDecaysOnP1) {
  const LureSolution sol = solve_lure(gen_p1(10, 3, 1));
  const auto& st = sol.trace.steps;
  ASSERT_GE(st.size(), 3u);
  EXPECT_LT(st.back().e_norm, st.front().e_norm);
}

TEST(SdaIterate, TerminationNames) {
  EXPECT_EQ(to_string(Termination::converged), "converged");
  EXPECT_EQ(to_string(Termination::stagnated), "stagnated");
  EXPECT_EQ(to_string(Termination::max_iter), "max_iter");
  EXPECT_EQ(to_string(Termination::singular_igh), "singular_IGH");
}

TEST(FlopEstimate, Formula) {
  EXPECT_EQ(flop_estimate(1, 1), 21);
  EXPECT_EQ(flop_estimate(3, 3), 576);  // 64/3 * 27
  EXPECT_EQ(flop_estimate(2, 3), 343);  // 14/3 * 35 + 6 * 6 * 5 = 343.33
}
