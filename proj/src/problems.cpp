#include "lure/problems.hpp"

#include <cctype>
#include <cerrno>
#include <cmath>
#include <cstdio>
#include <complex>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <vector>

namespace lure {

Rng::Rng(std::uint64_t seed) : engine_(seed) {}

double Rng::uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

double Rng::normal() {
  if (spare_normal_) {
    const double v = *spare_normal_;
    spare_normal_.reset();
    return v;
  }
  const double u1 = 1.0 - uniform();  // (0, 1]
  const double u2 = uniform();
  const double radius = std::sqrt(-2.0 * std::log(u1));
  const double angle = 2.0 * M_PI * u2;
  spare_normal_ = radius * std::sin(angle);
  return radius * std::cos(angle);
}

Matrix Rng::uniform_matrix(Index rows, Index cols) {
  Matrix M(rows, cols);
  for (Index j = 0; j < cols; ++j) {
    for (Index i = 0; i < rows; ++i) {
      M(i, j) = uniform();
    }
  }
  return M;
}

Matrix Rng::normal_matrix(Index rows, Index cols) {
  Matrix M(rows, cols);
  for (Index j = 0; j < cols; ++j) {
    for (Index i = 0; i < rows; ++i) {
      M(i, j) = normal();
    }
  }
  return M;
}

LureProblem gen_p1(Index n, Index m, std::uint64_t seed) {
  if (n < 1 || m < 1) {
    throw InvalidArgument("P1 needs n, m >= 1");
  }
  Rng rng(seed);
  const Matrix V = rng.normal_matrix(n, n);
  const Matrix W = rng.normal_matrix(n, n);
  const Matrix A = -V * V.transpose() - W + W.transpose();
  const Matrix B = rng.uniform_matrix(n, m);
  return LureProblem(A, B, B, Matrix::Zero(n, n), Matrix::Ones(m, m));
}

LureProblem gen_p3(Index n) {
  if (n < 1) {
    throw InvalidArgument("P3 needs n >= 1");
  }
  Matrix A = Matrix::Identity(n, n);
  Matrix Q = Matrix::Zero(n, n);
  for (Index i = 0; i < n; ++i) {
    Q(i, i) = -2.0;
    if (i + 1 < n) {
      A(i, i + 1) = 1.0;
      Q(i, i + 1) = -1.0;
      Q(i + 1, i) = -1.0;
    }
  }
  Matrix B = Matrix::Zero(n, 1);
  B(n - 1, 0) = 1.0;
  return LureProblem(A, B, -B, Q, Matrix::Zero(1, 1));
}

ConstructedProblem gen_constructed(Index n, Index m, Index p, std::uint64_t seed) {
  if (n < 1 || m < 1 || p < 0 || p > m) {
    throw InvalidArgument("constructed problems need n, m >= 1 and 0 <= p <= m");
  }
  Rng rng(seed);
  const double sn = std::sqrt(static_cast<double>(n));
  const Matrix V = rng.normal_matrix(n, n) / sn;
  const Matrix W = rng.normal_matrix(n, n) / sn;
  const Matrix A = -V * V.transpose() - W + W.transpose() - 0.5 * Matrix::Identity(n, n);
  const Matrix B = rng.normal_matrix(n, m);
  const Matrix X = numerics::symmetrize(rng.normal_matrix(n, n));

  Matrix K;
  Matrix L;
  if (p == m) {
    L = Matrix::Identity(m, m) + 0.5 * rng.normal_matrix(m, m) / std::sqrt(static_cast<double>(m));
    Matrix gain = 0.5 * rng.normal_matrix(m, n);
    // Shrink the feedback until A - B*gain has a negative definite symmetric part.
    for (int attempt = 0; attempt < 64; ++attempt) {
      const Matrix closed = numerics::symmetrize(A - B * gain);
      Eigen::SelfAdjointEigenSolver<Matrix> eig(closed, Eigen::EigenvaluesOnly);
      if (eig.eigenvalues().maxCoeff() < -0.1) {
        break;
      }
      gain *= 0.5;
    }
    K = L * gain;
  } else {
    K = rng.normal_matrix(p, n);
    L = rng.normal_matrix(p, m);
  }
  const Matrix Q = K.transpose() * K - A.transpose() * X - X * A;
  const Matrix C = K.transpose() * L - X * B;
  const Matrix R = L.transpose() * L;
  return ConstructedProblem{LureProblem(A, B, C, Q, R), X, K, L};
}

namespace {

// Finite zeros of [A - sI, B; K, L]: exactly n - (m - r) of them, all with
// real part below -0.1.
bool outer_factor(const Matrix& A, const Matrix& B, const Matrix& K, const Matrix& L, Index expected_finite) {
  const Index n = A.rows(), m = B.cols();
  Matrix a(n + m, n + m), e = Matrix::Zero(n + m, n + m);
  a << A, B, K, L;
  e.topLeftCorner(n, n).setIdentity();
  Eigen::GeneralizedEigenSolver<Matrix> qz(a, e, false);
  if (qz.info() != Eigen::Success) {
    return false;
  }
  const double scale = a.norm();
  Index finite = 0;
  for (Index i = 0; i < n + m; ++i) {
    const std::complex<double> alpha = qz.alphas()(i);
    const double beta = qz.betas()(i);
    if (std::abs(beta) <= 1e-10) {
      if (std::abs(alpha) <= 1e-10 * scale) {
        return false;  // singular pencil
      }
      continue;
    }
    if ((alpha / beta).real() >= -0.1) {
      return false;
    }
    ++finite;
  }
  return finite == expected_finite;
}

}  // namespace

ConstructedProblem gen_constructed_rank(Index n, Index m, Index r, std::uint64_t seed) {
  if (n < 1 || m < 1 || r < 1 || r > m || n < m - r) {
    throw InvalidArgument("rank-deficient constructed problems need 1 <= r <= m and n >= m - r");
  }
  Rng rng(seed);
  const double sn = std::sqrt(static_cast<double>(n));
  const Matrix V = rng.normal_matrix(n, n) / sn;
  const Matrix W = rng.normal_matrix(n, n) / sn;
  const Matrix A = -V * V.transpose() - W + W.transpose() - 0.5 * Matrix::Identity(n, n);
  const Matrix B = rng.normal_matrix(n, m);
  const Matrix X = numerics::symmetrize(rng.normal_matrix(n, n));

  for (int attempt = 0; attempt < 100000; ++attempt) {
    const Matrix L = rng.normal_matrix(m, r) * rng.normal_matrix(r, m) / std::sqrt(static_cast<double>(r));
    const Matrix K = rng.normal_matrix(m, n) / sn;
    if (!outer_factor(A, B, K, L, n - (m - r))) {
      continue;
    }
    const Matrix Q = K.transpose() * K - A.transpose() * X - X * A;
    const Matrix C = K.transpose() * L - X * B;
    const Matrix R = L.transpose() * L;
    return ConstructedProblem{LureProblem(A, B, C, Q, R), X, K, L};
  }
  throw InvalidArgument("no factor pair with stable zeros found");
}

namespace {

struct Line {
  int number;
  std::string text;
};

struct Token {
  std::string text;
  int column;
};

std::vector<Token> tokenize(const std::string& text) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < text.size()) {
    while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) {
      ++i;
    }
    if (i >= text.size()) {
      break;
    }
    const std::size_t start = i;
    while (i < text.size() && !std::isspace(static_cast<unsigned char>(text[i]))) {
      ++i;
    }
    out.push_back({text.substr(start, i - start), static_cast<int>(start) + 1});
  }
  return out;
}

double parse_number(const Token& tok, int line) {
  const char* begin = tok.text.c_str();
  char* end = nullptr;
  errno = 0;
  const double v = std::strtod(begin, &end);
  if (end != begin + tok.text.size() || errno == ERANGE || !std::isfinite(v)) {
    throw ParseError("expected a finite decimal number, got '" + tok.text + "'", line, tok.column);
  }
  return v;
}

long parse_count(const Token& tok, int line) {
  const char* begin = tok.text.c_str();
  char* end = nullptr;
  const long v = std::strtol(begin, &end, 10);
  if (end != begin + tok.text.size() || v < 1) {
    throw ParseError("expected a positive integer, got '" + tok.text + "'", line, tok.column);
  }
  return v;
}

bool is_label(const std::string& line) {
  const auto toks = tokenize(line);
  if (toks.size() != 1) {
    return false;
  }
  const std::string& t = toks.front().text;
  return t == "A" || t == "B" || t == "C" || t == "Q" || t == "R";
}

}  // namespace

LureProblem parse_problem(const std::string& text) {
  std::vector<Line> lines;
  {
    std::istringstream in(text);
    std::string raw;
    int number = 0;
    while (std::getline(in, raw)) {
      ++number;
      if (!raw.empty() && raw.back() == '\r') {
        raw.pop_back();
      }
      const auto first = raw.find_first_not_of(" \t");
      if (first == std::string::npos || raw[first] == '#') {
        continue;
      }
      lines.push_back({number, raw});
    }
  }
  const int last_line = lines.empty() ? 1 : lines.back().number;
  std::size_t cursor = 0;

  if (cursor >= lines.size()) {
    throw ParseError("empty file, expected 'LURE 1'", 1, 1);
  }
  {
    const auto toks = tokenize(lines[cursor].text);
    if (toks.size() != 2 || toks[0].text != "LURE" || toks[1].text != "1") {
      throw ParseError("expected header 'LURE 1'", lines[cursor].number, toks.empty() ? 1 : toks[0].column);
    }
    ++cursor;
  }
  if (cursor >= lines.size()) {
    throw ParseError("missing dimension line 'n m'", last_line, 1);
  }
  Index n = 0;
  Index m = 0;
  {
    const auto toks = tokenize(lines[cursor].text);
    if (toks.size() != 2) {
      throw ParseError("expected dimension line 'n m'", lines[cursor].number, toks.empty() ? 1 : toks[0].column);
    }
    n = parse_count(toks[0], lines[cursor].number);
    m = parse_count(toks[1], lines[cursor].number);
    ++cursor;
  }

  struct BlockShape {
    const char* label;
    Index rows;
    Index cols;
  };
  const BlockShape shapes[] = {{"A", n, n}, {"B", n, m}, {"C", n, m}, {"Q", n, n}, {"R", m, m}};
  std::vector<Matrix> blocks;
  for (const BlockShape& shape : shapes) {
    if (cursor >= lines.size()) {
      throw ParseError(std::string("missing block '") + shape.label + "'", last_line, 1);
    }
    const auto head = tokenize(lines[cursor].text);
    if (head.size() != 1 || head[0].text != shape.label) {
      throw ParseError(std::string("expected block label '") + shape.label + "'", lines[cursor].number,
                       head.empty() ? 1 : head[0].column);
    }
    const int label_line = lines[cursor].number;
    ++cursor;
    std::vector<std::vector<double>> rows;
    while (cursor < lines.size() && !is_label(lines[cursor].text)) {
      const auto toks = tokenize(lines[cursor].text);
      std::vector<double> row;
      row.reserve(toks.size());
      for (const Token& tok : toks) {
        row.push_back(parse_number(tok, lines[cursor].number));
      }
      if (static_cast<Index>(row.size()) != shape.cols) {
        throw DimensionMismatch(std::string("block ") + shape.label + " line " + std::to_string(lines[cursor].number) +
                                ": expected " + std::to_string(shape.cols) + " entries, got " +
                                std::to_string(row.size()));
      }
      rows.push_back(std::move(row));
      ++cursor;
    }
    if (static_cast<Index>(rows.size()) != shape.rows) {
      throw DimensionMismatch(std::string("block ") + shape.label + " (line " + std::to_string(label_line) +
                              "): expected " + std::to_string(shape.rows) + " rows, got " +
                              std::to_string(rows.size()));
    }
    Matrix M(shape.rows, shape.cols);
    for (Index i = 0; i < shape.rows; ++i) {
      for (Index j = 0; j < shape.cols; ++j) {
        M(i, j) = rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
      }
    }
    blocks.push_back(std::move(M));
  }
  return LureProblem(blocks[0], blocks[1], blocks[2], blocks[3], blocks[4]);
}

LureProblem load_problem(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw Error("cannot open problem file '" + path + "'");
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_problem(buf.str());
}

std::string format_problem(const LureProblem& prob) {
  std::string out = "LURE 1\n" + std::to_string(prob.n()) + " " + std::to_string(prob.m()) + "\n";
  const std::pair<const char*, const Matrix*> blocks[] = {
      {"A", &prob.A()}, {"B", &prob.B()}, {"C", &prob.C()}, {"Q", &prob.Q()}, {"R", &prob.R()}};
  char buf[40];
  for (const auto& [label, M] : blocks) {
    out += label;
    out += '\n';
    for (Index i = 0; i < M->rows(); ++i) {
      for (Index j = 0; j < M->cols(); ++j) {
        std::snprintf(buf, sizeof(buf), "%.17g", (*M)(i, j));
        if (j > 0) {
          out += ' ';
        }
        out += buf;
      }
      out += '\n';
    }
  }
  return out;
}

void save_problem(const LureProblem& prob, const std::string& path) {
  std::ofstream out(path);
  if (!out) {
    throw Error("cannot write problem file '" + path + "'");
  }
  out << format_problem(prob);
  if (!out) {
    throw Error("failed writing problem file '" + path + "'");
  }
}

std::string ProblemSpec::id() const {
  switch (kind) {
    case ProblemKind::p1:
      return "p1-s" + std::to_string(seed);
    case ProblemKind::p3:
      return "p3";
    case ProblemKind::constructed:
      return "constructed-s" + std::to_string(seed);
    case ProblemKind::file:
      return path;
  }
  return "unknown";
}

GeneratedProblem make_problem(const ProblemSpec& spec) {
  switch (spec.kind) {
    case ProblemKind::p1:
      return {gen_p1(spec.n, spec.m, spec.seed), std::nullopt};
    case ProblemKind::p3:
      return {gen_p3(spec.n), Matrix::Identity(spec.n, spec.n)};
    case ProblemKind::constructed: {
      ConstructedProblem c = gen_constructed(spec.n, spec.m, spec.m, spec.seed);
      return {std::move(c.problem), std::move(c.X)};
    }
    case ProblemKind::file:
      return {load_problem(spec.path), std::nullopt};
  }
  throw InvalidArgument("unknown problem kind");
}

}  // namespace lure
