#include <CLI11.hpp>

#include <cstdlib>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "lure/errors.hpp"
#include "lure/report.hpp"

using namespace lure;

namespace {

// "1..5" or "1,2,4".
std::vector<long> parse_index_list(const std::string& text) {
  std::vector<long> out;
  const auto dots = text.find("..");
  try {
    if (dots != std::string::npos) {
      const long lo = std::stol(text.substr(0, dots));
      const long hi = std::stol(text.substr(dots + 2));
      if (hi < lo) throw InvalidArgument("empty range " + text);
      for (long v = lo; v <= hi; ++v) out.push_back(v);
      return out;
    }
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(std::stol(item));
  } catch (const std::logic_error&) {
    throw InvalidArgument("malformed list '" + text + "'");
  }
  if (out.empty()) throw InvalidArgument("empty list");
  return out;
}

std::vector<double> parse_double_list(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(item, &used);
    } catch (const std::logic_error&) {
      used = 0;
    }
    if (used == 0 || used != item.size()) throw InvalidArgument("malformed number '" + item + "'");
    out.push_back(v);
  }
  return out;
}

struct Flags {
  std::string file;
  std::vector<long> p1;
  std::optional<long> p3;
  std::vector<long> constructed;
  std::string seeds;
  std::string n_range = "1..5";
  std::string methods;
  std::string eps;
  std::optional<double> gamma;
  std::string gamma_bracket;
  std::string format = "csv";
  std::string output;
  bool timing = false;
  double tol = 1e-14;
  int max_iter = 60;
  unsigned workers = 0;
};

void add_common(CLI::App* cmd, Flags& f, bool problem_flags, bool method_flags) {
  if (problem_flags) {
    cmd->add_option("--file", f.file, "Problem file in the LURE 1 format");
    cmd->add_option("--p1", f.p1, "Random P1 problem of size n m")->expected(2);
    cmd->add_option("--p3", f.p3, "High-index P3 problem of size n");
    cmd->add_option("--constructed", f.constructed, "Constructed problem with known solution, size n m")->expected(2);
  }
  cmd->add_option("--seed,--seeds", f.seeds, "Seed or seed list, e.g. 3, 0..9 or 1,4");
  if (method_flags) {
    cmd->add_option("--methods", f.methods, "Comma-separated subset of sda-l,rs,rn");
    cmd->add_option("--eps", f.eps, "Comma-separated regularization parameters");
  }
  cmd->add_option("--gamma", f.gamma, "Fixed Cayley parameter");
  cmd->add_option("--gamma-bracket", f.gamma_bracket, "Search bracket lo,hi for gamma");
  cmd->add_option("--format", f.format, "csv or md")->check(CLI::IsMember({"csv", "md"}));
  cmd->add_option("--output,-o", f.output, "Output file (default: standard output)");
  cmd->add_flag("--timing", f.timing, "Fill the seconds column (reports are then not reproducible)");
  cmd->add_option("--tol", f.tol, "Relative SDA stopping tolerance");
  cmd->add_option("--max-iter", f.max_iter, "Maximum SDA steps");
  cmd->add_option("--workers", f.workers, "Worker threads (also capped by LURE_WORKERS)");
}

std::vector<std::uint64_t> seeds_or(const Flags& f, const std::string& fallback) {
  std::vector<std::uint64_t> out;
  for (long s : parse_index_list(f.seeds.empty() ? fallback : f.seeds)) {
    if (s < 0) throw InvalidArgument("seeds must be nonnegative");
    out.push_back(static_cast<std::uint64_t>(s));
  }
  return out;
}

Index positive(long v, const char* what) {
  if (v < 1) throw InvalidArgument(std::string(what) + " must be at least 1");
  return static_cast<Index>(v);
}

std::vector<ProblemSpec> single_source(const Flags& f) {
  const int sources = !f.file.empty() + !f.p1.empty() + f.p3.has_value() + !f.constructed.empty();
  if (sources != 1) throw InvalidArgument("choose exactly one of --file, --p1, --p3, --constructed");
  std::vector<ProblemSpec> out;
  if (!f.file.empty()) {
    ProblemSpec s;
    s.kind = ProblemKind::file;
    s.path = f.file;
    out.push_back(s);
  } else if (f.p3) {
    ProblemSpec s;
    s.kind = ProblemKind::p3;
    s.n = positive(*f.p3, "n");
    out.push_back(s);
  } else {
    const bool p1 = !f.p1.empty();
    const auto& size = p1 ? f.p1 : f.constructed;
    for (std::uint64_t seed : seeds_or(f, "0")) {
      ProblemSpec s;
      s.kind = p1 ? ProblemKind::p1 : ProblemKind::constructed;
      s.n = positive(size[0], "n");
      s.m = positive(size[1], "m");
      s.seed = seed;
      out.push_back(s);
    }
  }
  return out;
}

RunConfig build_config(Command cmd, const Flags& f) {
  RunConfig cfg;
  cfg.command = cmd;
  switch (cmd) {
    case Command::solve:
    case Command::compare:
    case Command::gamma_report:
      cfg.problems = single_source(f);
      break;
    case Command::bench_p1: {
      const std::vector<long> size = f.p1.empty() ? std::vector<long>{10, 3} : f.p1;
      for (std::uint64_t seed : seeds_or(f, "0..9")) {
        ProblemSpec s;
        s.kind = ProblemKind::p1;
        s.n = positive(size[0], "n");
        s.m = positive(size[1], "m");
        s.seed = seed;
        cfg.problems.push_back(s);
      }
      break;
    }
    case Command::bench_p3:
      for (long n : parse_index_list(f.n_range)) {
        ProblemSpec s;
        s.kind = ProblemKind::p3;
        s.n = positive(n, "n");
        cfg.problems.push_back(s);
      }
      break;
  }

  std::string methods = f.methods;
  std::string eps = f.eps;
  if (cmd == Command::compare) {
    if (methods.empty()) methods = "sda-l,rs,rn";
    if (eps.empty()) eps = "1e-6,1e-8,1e-12";
  }
  if (methods.empty()) methods = "sda-l";
  if (eps.empty() && methods != "sda-l") eps = "1e-8";
  cfg.methods.clear();
  std::stringstream ss(methods);
  std::string item;
  while (std::getline(ss, item, ',')) cfg.methods.push_back(parse_method(item));
  if (!eps.empty()) cfg.eps = parse_double_list(eps);

  cfg.gamma = f.gamma;
  if (!f.gamma_bracket.empty()) {
    const std::vector<double> b = parse_double_list(f.gamma_bracket);
    if (b.size() != 2) throw InvalidArgument("--gamma-bracket expects lo,hi");
    cfg.gamma_bracket = GammaBracket{b[0], b[1]};
  }
  cfg.format = f.format == "md" ? Format::md : Format::csv;
  cfg.output = f.output;
  cfg.timing = f.timing;
  if (!(f.tol > 0.0) || f.max_iter < 1) throw InvalidArgument("--tol must be positive and --max-iter at least 1");
  cfg.sda.tol = f.tol;
  cfg.sda.max_iter = f.max_iter;
  cfg.workers = f.workers;
  return cfg;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Lur'e equation solver: structured doubling after a Cayley transform, with regularization baselines"};
  app.require_subcommand(1);

  Flags flags;
  struct Sub {
    CLI::App* app;
    Command cmd;
  };
  std::vector<Sub> subs;
  auto* solve = app.add_subcommand("solve", "Solve one problem (or one per seed)");
  add_common(solve, flags, true, true);
  subs.push_back({solve, Command::solve});

  auto* bench_p1 = app.add_subcommand("bench-p1", "Relative residuals on random P1 problems");
  bench_p1->add_option("--p1", flags.p1, "Problem size n m (default 10 3)")->expected(2);
  add_common(bench_p1, flags, false, true);
  subs.push_back({bench_p1, Command::bench_p1});

  auto* bench_p3 = app.add_subcommand("bench-p3", "Forward errors on the high-index P3 family");
  bench_p3->add_option("--n", flags.n_range, "Sizes, e.g. 1..5");
  add_common(bench_p3, flags, false, true);
  subs.push_back({bench_p3, Command::bench_p3});

  auto* compare = app.add_subcommand("compare", "SDA-L against the regularization baselines");
  add_common(compare, flags, true, true);
  subs.push_back({compare, Command::compare});

  auto* gamma = app.add_subcommand("gamma-report", "Evaluations of the gamma heuristic");
  add_common(gamma, flags, true, false);
  subs.push_back({gamma, Command::gamma_report});

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    for (const Sub& s : subs) {
      if (s.app->parsed()) {
        return run(build_config(s.cmd, flags));
      }
    }
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 1;
}
