#pragma once

#include <complex>
#include <vector>

#include "lure/numerics.hpp"

namespace lure {

/// The pencil a - s e. Both parts have the same shape.
struct MatrixPencil {
  Matrix a;
  Matrix e;

  MatrixPencil() = default;
  MatrixPencil(Matrix a_part, Matrix e_part);

  Index rows() const { return a.rows(); }
  Index cols() const { return a.cols(); }
};

/// Even pencil of a Lur'e problem, stored as the coefficients of the matrix
/// polynomial a + s e:
///
///   [ 0     A - sI  B ]       a = [ 0   A  B ]      e = [  0  -I  0 ]
///   [ A'+sI Q       C ]   ->      [ A'  Q  C ]          [  I   0  0 ]
///   [ B'    C'      R ]           [ B'  C' R ]          [  0   0  0 ]
///
/// a is symmetric and e skew-symmetric by construction (exactly, not to a
/// tolerance).
struct EvenPencil {
  Matrix a;
  Matrix e;
  Index n = 0;
  Index m = 0;

  /// Same polynomial in the a - s e convention used everywhere else, so the
  /// generalized eigenvalues and right deflating subspaces coincide.
  MatrixPencil to_matrix_pencil() const;
};

/// Standard symplectic-like form I:
///
///   a = [ E   0  ]      e = [ I  -G ]
///       [ -H  I_M ]         [ 0   F ]
///
/// with E N x N, F M x M, G N x M, H M x N. `symplectic` is asserted by the
/// producer, never inferred; when set, N == M, F == E^T and G, H are symmetric.
struct Ssf1Pencil {
  Matrix E;
  Matrix F;
  Matrix G;
  Matrix H;
  bool symplectic = false;

  Index N() const { return E.rows(); }
  Index M() const { return F.rows(); }

  /// Builds a symplectic pencil; F is set to E^T and G, H are symmetrized.
  static Ssf1Pencil make_symplectic(const Matrix& E, const Matrix& G, const Matrix& H);

  /// The full (N+M)-order pencil in the layout shown above.
  MatrixPencil assemble() const;
};

/// Cayley transform (a - gamma e, a + gamma e). Maps eigenvalue l to
/// (l - gamma)/(l + gamma) and infinity to 1. Requires gamma > 0.
MatrixPencil cayley(const MatrixPencil& p, double gamma);

/// SSF-I of a square pencil of order N+M through one inversion of the
/// bordered matrix [e(:,0:N) a(:,N:)]. Throws NotReducible when that matrix
/// is numerically singular (estimated condition above 1/(100 eps)).
Ssf1Pencil to_ssf1(const MatrixPencil& p, Index N, Index M, bool symplectic = false);

/// Exact test: a == a^T and e == -e^T.
bool is_even(const MatrixPencil& p);

/// Infinite eigenvalues are reported with an infinite real part.
using Eigenvalue = std::complex<double>;

inline bool is_infinite(const Eigenvalue& z) { return std::isinf(z.real()); }

/// Coefficients c_0..c_k of det(a - s e), expanded exactly over permutations.
/// Order at most 4.
std::vector<double> characteristic_polynomial(const MatrixPencil& p);

/// Roots of det(a - s e) for pencils of order <= 4, with multiplicity; the
/// degree deficit is reported as infinite eigenvalues. Throws SingularPencil
/// when the determinant vanishes identically.
std::vector<Eigenvalue> generalized_eigenvalues_small(const MatrixPencil& p);

}  // namespace lure
