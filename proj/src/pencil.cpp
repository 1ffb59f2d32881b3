#include "lure/pencil.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace lure {

MatrixPencil::MatrixPencil(Matrix a_part, Matrix e_part) : a(std::move(a_part)), e(std::move(e_part)) {
  if (a.rows() != e.rows() || a.cols() != e.cols()) {
    throw InvalidArgument("pencil parts must have the same shape");
  }
}

MatrixPencil EvenPencil::to_matrix_pencil() const { return MatrixPencil(a, -e); }

Ssf1Pencil Ssf1Pencil::make_symplectic(const Matrix& E, const Matrix& G, const Matrix& H) {
  if (E.rows() != E.cols() || G.rows() != E.rows() || G.cols() != E.rows() || H.rows() != E.rows() ||
      H.cols() != E.rows()) {
    throw InvalidArgument("symplectic SSF-I blocks must all be square of the same order");
  }
  Ssf1Pencil p;
  p.E = E;
  p.F = E.transpose();
  p.G = numerics::symmetrize(G);
  p.H = numerics::symmetrize(H);
  p.symplectic = true;
  return p;
}

MatrixPencil Ssf1Pencil::assemble() const {
  const Index n = N();
  const Index m = M();
  Matrix a = Matrix::Zero(n + m, n + m);
  Matrix e = Matrix::Zero(n + m, n + m);
  a.topLeftCorner(n, n) = E;
  a.bottomLeftCorner(m, n) = -H;
  a.bottomRightCorner(m, m).setIdentity();
  e.topLeftCorner(n, n).setIdentity();
  e.topRightCorner(n, m) = -G;
  e.bottomRightCorner(m, m) = F;
  return MatrixPencil(std::move(a), std::move(e));
}

MatrixPencil cayley(const MatrixPencil& p, double gamma) {
  if (!(gamma > 0.0)) {
    throw InvalidArgument("Cayley parameter must be positive");
  }
  return MatrixPencil(p.a - gamma * p.e, p.a + gamma * p.e);
}

Ssf1Pencil to_ssf1(const MatrixPencil& p, Index N, Index M, bool symplectic) {
  if (p.rows() != p.cols() || p.rows() != N + M || N < 0 || M < 0) {
    throw InvalidArgument("to_ssf1 needs a square pencil of order N+M");
  }
  Matrix bordered(N + M, N + M);
  bordered << p.e.leftCols(N), p.a.rightCols(M);
  Matrix rhs(N + M, N + M);
  rhs << p.a.leftCols(N), p.e.rightCols(M);

  const numerics::LuFactorization lu(bordered);
  if (lu.singular() || lu.cond1() > 1.0 / (100.0 * numerics::kEps)) {
    throw NotReducible("a SSF-I of this pencil does not exist: [E1 A2] is numerically singular");
  }
  const Matrix T = lu.solve(rhs);

  // T = [E -G; -H F]
  Ssf1Pencil out;
  out.E = T.topLeftCorner(N, N);
  out.G = -T.topRightCorner(N, M);
  out.H = -T.bottomLeftCorner(M, N);
  out.F = T.bottomRightCorner(M, M);
  out.symplectic = symplectic;
  if (symplectic) {
    if (N != M) {
      throw InvalidArgument("a symplectic SSF-I needs N == M");
    }
    out.F = out.E.transpose();
    out.G = numerics::symmetrize(out.G);
    out.H = numerics::symmetrize(out.H);
  }
  return out;
}

bool is_even(const MatrixPencil& p) {
  if (p.rows() != p.cols()) {
    return false;
  }
  return p.a == p.a.transpose() && p.e == -p.e.transpose();
}

namespace {

using Poly = std::vector<double>;

Poly multiply(const Poly& lhs, const Poly& rhs) {
  Poly out(lhs.size() + rhs.size() - 1, 0.0);
  for (std::size_t i = 0; i < lhs.size(); ++i) {
    for (std::size_t j = 0; j < rhs.size(); ++j) {
      out[i + j] += lhs[i] * rhs[j];
    }
  }
  return out;
}

int permutation_sign(const std::vector<int>& perm) {
  int sign = 1;
  for (std::size_t i = 0; i < perm.size(); ++i) {
    for (std::size_t j = i + 1; j < perm.size(); ++j) {
      if (perm[i] > perm[j]) {
        sign = -sign;
      }
    }
  }
  return sign;
}

std::complex<double> evaluate(const Poly& c, std::complex<double> z) {
  std::complex<double> acc = 0.0;
  for (auto it = c.rbegin(); it != c.rend(); ++it) {
    acc = acc * z + *it;
  }
  return acc;
}

std::complex<double> evaluate_derivative(const Poly& c, std::complex<double> z) {
  std::complex<double> acc = 0.0;
  for (std::size_t k = c.size() - 1; k >= 1; --k) {
    acc = acc * z + static_cast<double>(k) * c[k];
  }
  return acc;
}

}  // namespace

std::vector<double> characteristic_polynomial(const MatrixPencil& p) {
  const Index k = p.rows();
  if (p.cols() != k || k > 4) {
    throw InvalidArgument("characteristic_polynomial supports square pencils of order <= 4");
  }
  Poly total(static_cast<std::size_t>(k) + 1, 0.0);
  std::vector<int> perm(static_cast<std::size_t>(k));
  std::iota(perm.begin(), perm.end(), 0);
  do {
    Poly term{static_cast<double>(permutation_sign(perm))};
    for (Index i = 0; i < k; ++i) {
      const Index j = perm[static_cast<std::size_t>(i)];
      term = multiply(term, Poly{p.a(i, j), -p.e(i, j)});
    }
    for (std::size_t d = 0; d < term.size(); ++d) {
      total[d] += term[d];
    }
  } while (std::next_permutation(perm.begin(), perm.end()));
  return total;
}

std::vector<Eigenvalue> generalized_eigenvalues_small(const MatrixPencil& p) {
  const Index k = p.rows();
  const Poly c = characteristic_polynomial(p);
  const double scale = std::pow(std::max(p.a.norm() + p.e.norm(), 1e-300), static_cast<double>(k));
  double cmax = 0.0;
  for (double v : c) {
    cmax = std::max(cmax, std::abs(v));
  }
  if (k == 0) {
    return {};
  }
  if (cmax <= 1e-13 * scale) {
    throw SingularPencil("det(a - s e) vanishes identically");
  }

  // Leading coefficients at rounding level are a degree drop, i.e. eigenvalues at infinity.
  Index degree = k;
  while (degree > 0 && std::abs(c[static_cast<std::size_t>(degree)]) <= 1e-12 * cmax) {
    --degree;
  }
  std::vector<Eigenvalue> out;
  const Poly trimmed(c.begin(), c.begin() + degree + 1);
  if (degree == 1) {
    out.emplace_back(-trimmed[0] / trimmed[1], 0.0);
  } else if (degree >= 2) {
    Matrix companion = Matrix::Zero(degree, degree);
    for (Index i = 1; i < degree; ++i) {
      companion(i, i - 1) = 1.0;
    }
    for (Index i = 0; i < degree; ++i) {
      companion(i, degree - 1) = -trimmed[static_cast<std::size_t>(i)] / trimmed[static_cast<std::size_t>(degree)];
    }
    Eigen::EigenSolver<Matrix> solver(companion, false);
    for (Index i = 0; i < degree; ++i) {
      std::complex<double> z = solver.eigenvalues()(i);
      // Newton polish; keep a step only if it lowers |p(z)|.
      for (int it = 0; it < 3; ++it) {
        const auto fz = evaluate(trimmed, z);
        const auto dz = evaluate_derivative(trimmed, z);
        if (dz == 0.0) {
          break;
        }
        const auto candidate = z - fz / dz;
        if (std::abs(evaluate(trimmed, candidate)) < std::abs(fz)) {
          z = candidate;
        } else {
          break;
        }
      }
      out.push_back(z);
    }
  }
  for (Index i = degree; i < k; ++i) {
    out.emplace_back(std::numeric_limits<double>::infinity(), 0.0);
  }
  return out;
}

}  // namespace lure
