#include <gtest/gtest.h>

#include <cstdlib>
#include <sstream>

#include "lure/errors.hpp"
#include "lure/report.hpp"

using namespace lure;

namespace {

std::vector<std::string> split_lines(const std::string& s) {
  std::vector<std::string> out;
  std::istringstream in(s);
  for (std::string line; std::getline(in, line);) out.push_back(line);
  return out;
}

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> out;
  std::string cur;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
        cur += '"';
        ++i;
      } else if (c == '"') {
        quoted = false;
      } else {
        cur += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(cur);
  return out;
}

ProblemSpec p1_spec(std::uint64_t seed) {
  ProblemSpec s;
  s.kind = ProblemKind::p1;
  s.n = 6;
  s.m = 2;
  s.seed = seed;
  return s;
}

}  // namespace

TEST(EmitTable, EmptyIsHeaderOnly) {
  EXPECT_EQ(emit_table({}, Format::csv), "problem,n,m,method,eps,gamma,iters,metric,status,seconds\n");
  EXPECT_EQ(split_lines(emit_table({}, Format::md)).size(), 2u);
}

TEST(EmitTable, CsvFieldsParseBack) {
  ReportRow ok{"p1-s0", 10, 3, "rs", 1e-8, 2.5, 7, 3.75e-8, 0.1234, ""};
  ReportRow star{"odd,name", 3, 1, "sda-l", std::nullopt, 1.0, std::nullopt, std::nullopt, std::nullopt, "breakdown"};
  const auto lines = split_lines(emit_table({ok, star}, Format::csv));
  ASSERT_EQ(lines.size(), 3u);
  const auto a = split_csv(lines[1]);
  ASSERT_EQ(a.size(), 10u);
  EXPECT_EQ(a[0], "p1-s0");
  EXPECT_EQ(a[3], "rs");
  EXPECT_EQ(std::stod(a[4]), 1e-8);
  EXPECT_EQ(std::stod(a[5]), 2.5);
  EXPECT_EQ(a[6], "7");
  EXPECT_NEAR(std::stod(a[7]), 3.75e-8, 1e-11);
  EXPECT_EQ(a[8], "ok");
  EXPECT_EQ(a[9], "-");
  const auto b = split_csv(lines[2]);
  ASSERT_EQ(b.size(), 10u);
  EXPECT_EQ(b[0], "odd,name");
  EXPECT_EQ(b[7], "*");
  EXPECT_EQ(b[8], "star");
}

TEST(EmitTable, TimingColumn) {
  ReportRow ok{"p", 1, 1, "sda-l", std::nullopt, 1.0, 1, 1e-16, 0.5, ""};
  const auto a = split_csv(split_lines(emit_table({ok}, Format::csv, true))[1]);
  EXPECT_EQ(a[9], "0.5000");
}

TEST(EmitTable, MarkdownIsAligned) {
  ReportRow ok{"p1-s0", 10, 3, "sda-l", std::nullopt, 2.5, 7, 1e-15, std::nullopt, ""};
  const auto lines = split_lines(emit_table({ok, ok}, Format::md));
  ASSERT_EQ(lines.size(), 4u);
  for (const auto& l : lines) {
    EXPECT_EQ(l.size(), lines[0].size());
    EXPECT_EQ(l.front(), '|');
    EXPECT_EQ(l.back(), '|');
  }
  EXPECT_EQ(lines[1].find_first_not_of("|-"), std::string::npos);
}

TEST(RunRows, CompareCellCount) {
  RunConfig cfg;
  cfg.command = Command::compare;
  cfg.problems = {p1_spec(0)};
  cfg.methods = {Method::sda_l, Method::rs, Method::rn};
  cfg.eps = {1e-6, 1e-8, 1e-12};
  const auto rows = run_rows(cfg);
  ASSERT_EQ(rows.size(), 7u);
  EXPECT_EQ(rows[0].method, "sda-l");
  EXPECT_FALSE(rows[0].eps.has_value());
  EXPECT_EQ(rows[1].method, "rs");
  EXPECT_EQ(*rows[1].eps, 1e-6);
  EXPECT_FALSE(rows.back().gamma.has_value());
}

TEST(RunRows, DeterministicAcrossWorkerCounts) {
  RunConfig cfg;
  cfg.command = Command::bench_p1;
  for (std::uint64_t s = 0; s < 4; ++s) cfg.problems.push_back(p1_spec(s));
  cfg.methods = {Method::sda_l, Method::rs};
  cfg.eps = {1e-8};
  cfg.workers = 1;
  const std::string one = emit_table(run_rows(cfg), Format::csv);
  cfg.workers = 4;
  EXPECT_EQ(emit_table(run_rows(cfg), Format::csv), one);
  EXPECT_EQ(emit_table(run_rows(cfg), Format::csv), one);
}

TEST(RunRows, GammaReportRows) {
  RunConfig cfg;
  cfg.command = Command::gamma_report;
  cfg.problems = {p1_spec(0)};
  const auto rows = run_rows(cfg);
  ASSERT_EQ(rows.size(), 7u);
  EXPECT_EQ(rows.back().method, "choice");
}

TEST(RunConfig, Validation) {
  RunConfig cfg;
  EXPECT_THROW(cfg.validate(), InvalidArgument);
  cfg.problems = {p1_spec(0)};
  EXPECT_NO_THROW(cfg.validate());
  cfg.methods = {Method::rs};
  EXPECT_THROW(cfg.validate(), InvalidArgument);
  cfg.eps = {0.0};
  EXPECT_THROW(cfg.validate(), InvalidArgument);
  cfg.eps = {1e-8};
  cfg.gamma = -1.0;
  EXPECT_THROW(cfg.validate(), InvalidArgument);
  cfg.gamma.reset();
  cfg.gamma_bracket = GammaBracket{2.0, 1.0};
  EXPECT_THROW(cfg.validate(), InvalidArgument);
}

TEST(Methods, NamesRoundTrip) {
  for (Method m : {Method::sda_l, Method::rs, Method::rn}) EXPECT_EQ(parse_method(to_string(m)), m);
  EXPECT_THROW(parse_method("newton"), InvalidArgument);
  EXPECT_EQ(to_string(Command::gamma_report), "gamma-report");
}

TEST(Workers, EnvironmentCap) {
  unsetenv("LURE_WORKERS");
  EXPECT_EQ(worker_count(8, 3), 3u);
  EXPECT_EQ(worker_count(2, 10), 2u);
  setenv("LURE_WORKERS", "1", 1);
  EXPECT_EQ(worker_count(8, 10), 1u);
  setenv("LURE_WORKERS", "junk", 1);
  EXPECT_EQ(worker_count(3, 10), 3u);
  unsetenv("LURE_WORKERS");
  EXPECT_GE(worker_count(0, 10), 1u);
}
