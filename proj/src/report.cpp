#include "lure/report.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <thread>

#include "lure/baselines.hpp"
#include "lure/errors.hpp"
#include "lure/solver.hpp"

namespace lure {

std::string to_string(Command c) {
  switch (c) {
    case Command::solve:
      return "solve";
    case Command::bench_p1:
      return "bench-p1";
    case Command::bench_p3:
      return "bench-p3";
    case Command::compare:
      return "compare";
    case Command::gamma_report:
      return "gamma-report";
  }
  return "unknown";
}

std::string to_string(Method m) {
  switch (m) {
    case Method::sda_l:
      return "sda-l";
    case Method::rs:
      return "rs";
    case Method::rn:
      return "rn";
  }
  return "unknown";
}

Method parse_method(const std::string& name) {
  if (name == "sda-l") return Method::sda_l;
  if (name == "rs") return Method::rs;
  if (name == "rn") return Method::rn;
  throw InvalidArgument("unknown method '" + name + "' (expected sda-l, rs or rn)");
}

void RunConfig::validate() const {
  if (problems.empty()) {
    throw InvalidArgument("no problem selected");
  }
  if (command != Command::gamma_report && methods.empty()) {
    throw InvalidArgument("at least one method is required");
  }
  const bool regularized = std::any_of(methods.begin(), methods.end(), [](Method m) { return m != Method::sda_l; });
  if (command != Command::gamma_report && regularized && eps.empty()) {
    throw InvalidArgument("regularized methods need at least one --eps value");
  }
  for (double e : eps) {
    if (!(e > 0.0)) {
      throw InvalidArgument("regularization parameters must be positive");
    }
  }
  if (gamma && !(*gamma > 0.0)) {
    throw InvalidArgument("gamma must be positive");
  }
  if (gamma_bracket && !(gamma_bracket->first > 0.0 && gamma_bracket->first < gamma_bracket->second)) {
    throw InvalidArgument("gamma bracket must satisfy 0 < lo < hi");
  }
}

unsigned worker_count(unsigned requested, std::size_t jobs) {
  unsigned w = requested != 0 ? requested : std::max(1u, std::thread::hardware_concurrency());
  if (const char* cap = std::getenv("LURE_WORKERS")) {
    const long v = std::strtol(cap, nullptr, 10);
    if (v >= 1) {
      w = std::min<unsigned>(w, static_cast<unsigned>(v));
    }
  }
  return static_cast<unsigned>(std::max<std::size_t>(1, std::min<std::size_t>(w, jobs)));
}

namespace {

struct Cell {
  std::size_t problem;
  Method method;
  std::optional<double> eps;
};

ReportRow run_cell(const ProblemSpec& spec, const GeneratedProblem& gen, const Cell& cell, const RunConfig& cfg) {
  ReportRow row;
  row.problem = spec.id();
  row.n = gen.problem.n();
  row.m = gen.problem.m();
  row.method = to_string(cell.method);
  row.eps = cell.eps;

  SolveOptions opts;
  opts.gamma = cfg.gamma;
  opts.gamma_bracket = cfg.gamma_bracket;
  opts.sda = cfg.sda;
  opts.rank_tol = cfg.rank_tol;

  const auto start = std::chrono::steady_clock::now();
  try {
    LureSolution sol;
    switch (cell.method) {
      case Method::sda_l:
        sol = solve_lure(gen.problem, opts);
        break;
      case Method::rs:
        sol = solve_rs(gen.problem, *cell.eps, opts);
        break;
      case Method::rn:
        sol = solve_rn(gen.problem, *cell.eps, opts);
        break;
    }
    row.iterations = sol.iterations;
    if (cell.method != Method::rn) {
      row.gamma = sol.gamma_used;
    }
    if (sol.trace.reason == Termination::singular_igh) {
      row.note = "doubling broke down (I - GH singular)";
    } else if (!sol.X.allFinite()) {
      row.note = "non-finite solution";
    } else {
      row.metric = gen.reference ? forward_error(sol.X, *gen.reference) : sol.relative_residual;
    }
  } catch (const std::exception& e) {
    row.note = e.what();
  }
  row.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return row;
}

std::vector<ReportRow> gamma_rows(const ProblemSpec& spec, const GeneratedProblem& gen, const RunConfig& cfg) {
  std::vector<ReportRow> rows;
  ReportRow base;
  base.problem = spec.id();
  base.n = gen.problem.n();
  base.m = gen.problem.m();

  GammaSearchResult res;
  try {
    res = choose_gamma(gen.problem, cfg.gamma_bracket);
  } catch (const Error& e) {
    ReportRow row = base;
    row.method = "choice";
    row.note = e.what();
    rows.push_back(row);
    return rows;
  }
  int k = 0;
  for (const GammaEvaluation& ev : res.evaluations) {
    ReportRow row = base;
    row.method = "f-gamma";
    row.gamma = ev.gamma;
    row.iterations = k++;
    if (std::isfinite(ev.f)) {
      row.metric = ev.f;
    } else {
      row.note = "bordered matrix singular";
    }
    rows.push_back(row);
  }
  ReportRow choice = base;
  choice.method = "choice";
  choice.gamma = res.gamma;
  choice.iterations = static_cast<int>(res.evaluations.size());
  choice.metric = res.f_value;
  rows.push_back(choice);
  return rows;
}

void parallel_for(std::size_t count, unsigned workers, const std::function<void(std::size_t)>& body) {
  if (workers <= 1) {
    for (std::size_t i = 0; i < count; ++i) body(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (unsigned w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < count; i = next++) body(i);
    });
  }
  for (auto& t : pool) t.join();
}

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

std::vector<std::string> fields(const ReportRow& r, bool timing) {
  return {
      r.problem,
      std::to_string(r.n),
      std::to_string(r.m),
      r.method,
      r.eps ? fmt("%.0e", *r.eps) : "",
      r.gamma ? fmt("%.6g", *r.gamma) : "",
      r.iterations ? std::to_string(*r.iterations) : "",
      r.metric ? fmt("%.3e", *r.metric) : "*",
      r.star() ? "star" : "ok",
      timing && r.seconds ? fmt("%.4f", *r.seconds) : "-",
  };
}

const std::vector<std::string> kHeader{"problem", "n", "m", "method", "eps", "gamma", "iters", "metric", "status", "seconds"};

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

}  // namespace

std::vector<ReportRow> run_rows(const RunConfig& cfg) {
  cfg.validate();
  std::vector<GeneratedProblem> generated;
  generated.reserve(cfg.problems.size());
  for (const ProblemSpec& spec : cfg.problems) {
    generated.push_back(make_problem(spec));
  }

  if (cfg.command == Command::gamma_report) {
    std::vector<std::vector<ReportRow>> parts(cfg.problems.size());
    parallel_for(parts.size(), worker_count(cfg.workers, parts.size()),
                 [&](std::size_t i) { parts[i] = gamma_rows(cfg.problems[i], generated[i], cfg); });
    std::vector<ReportRow> rows;
    for (auto& p : parts) rows.insert(rows.end(), p.begin(), p.end());
    return rows;
  }

  std::vector<Cell> cells;
  for (std::size_t i = 0; i < cfg.problems.size(); ++i) {
    for (Method m : cfg.methods) {
      if (m == Method::sda_l) {
        cells.push_back({i, m, std::nullopt});
      } else {
        for (double e : cfg.eps) cells.push_back({i, m, e});
      }
    }
  }
  std::vector<ReportRow> rows(cells.size());
  parallel_for(cells.size(), worker_count(cfg.workers, cells.size()), [&](std::size_t k) {
    const Cell& c = cells[k];
    rows[k] = run_cell(cfg.problems[c.problem], generated[c.problem], c, cfg);
  });
  return rows;
}

std::string emit_table(const std::vector<ReportRow>& rows, Format format, bool timing) {
  std::ostringstream out;
  if (format == Format::csv) {
    for (std::size_t i = 0; i < kHeader.size(); ++i) out << (i ? "," : "") << kHeader[i];
    out << '\n';
    for (const ReportRow& r : rows) {
      const auto f = fields(r, timing);
      for (std::size_t i = 0; i < f.size(); ++i) out << (i ? "," : "") << csv_field(f[i]);
      out << '\n';
    }
    return out.str();
  }

  std::vector<std::vector<std::string>> table{kHeader};
  for (const ReportRow& r : rows) table.push_back(fields(r, timing));
  std::vector<std::size_t> width(kHeader.size(), 0);
  for (const auto& line : table) {
    for (std::size_t i = 0; i < line.size(); ++i) width[i] = std::max(width[i], line[i].size());
  }
  auto emit_line = [&](const std::vector<std::string>& line) {
    out << '|';
    for (std::size_t i = 0; i < line.size(); ++i) {
      out << ' ' << line[i] << std::string(width[i] - line[i].size(), ' ') << " |";
    }
    out << '\n';
  };
  emit_line(table[0]);
  out << '|';
  for (std::size_t w : width) out << std::string(w + 2, '-') << '|';
  out << '\n';
  for (std::size_t i = 1; i < table.size(); ++i) emit_line(table[i]);
  return out.str();
}

int run(const RunConfig& cfg) {
  const std::vector<ReportRow> rows = run_rows(cfg);
  const std::string text = emit_table(rows, cfg.format, cfg.timing);
  if (cfg.output.empty()) {
    std::cout << text << std::flush;
  } else {
    std::ofstream file(cfg.output, std::ios::binary);
    if (!file) {
      throw InvalidArgument("cannot open output file " + cfg.output);
    }
    file << text;
  }
  for (const ReportRow& r : rows) {
    if (r.star() && !r.note.empty()) {
      std::cerr << r.problem << " n=" << r.n << " " << r.method << (r.eps ? " eps=" + fmt("%.0e", *r.eps) : "") << ": " << r.note
                << '\n';
    }
  }
  const bool any_star = std::any_of(rows.begin(), rows.end(), [](const ReportRow& r) { return r.star(); });
  return any_star ? 2 : 0;
}

}  // namespace lure
