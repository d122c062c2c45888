#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <limits>
#include <random>
#include <sstream>

#include "cli.hpp"
#include "ibern/errors.hpp"

using namespace ibern;
using namespace ibern::cli;

namespace {

std::filesystem::path scratch(const std::string& name) {
  const auto dir = std::filesystem::temp_directory_path() / "ibern_cli_tests";
  std::filesystem::create_directories(dir);
  return dir / name;
}

std::string write_file(const std::string& name, const std::string& content) {
  const auto path = scratch(name);
  std::ofstream(path) << content;
  return path.string();
}

int run(std::vector<std::string> args) {
  args.insert(args.begin(), "ibern");
  std::vector<char*> argv;
  for (auto& a : args) argv.push_back(a.data());
  return ibern::cli::main(static_cast<int>(argv.size()), argv.data());
}

double column_max_abs(const std::vector<double>& col, const std::vector<double>& t, double lo,
                      double hi) {
  double worst = 0.0;
  for (std::size_t i = 0; i < col.size(); ++i)
    if (t[i] >= lo && t[i] <= hi) worst = std::max(worst, std::abs(col[i]));
  return worst;
}

}  // namespace

TEST_CASE("number formatting round-trips bit-exactly") {
  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> dist(-1e6, 1e6);
  for (int i = 0; i < 2000; ++i) {
    const double x = dist(rng) * std::pow(10.0, static_cast<int>(i % 40) - 20);
    CHECK(parse_real(format_real(x)) == x);
  }
  for (double x : {0.0, -0.0, 1.0, 0.1, 5e-324, std::numeric_limits<double>::max()})
    CHECK(parse_real(format_real(x)) == x);
  CHECK(format_real(0.5) == "0.5");
  CHECK_THROWS_AS((void)parse_real("1.5x"), IoError);
  CHECK_THROWS_AS((void)parse_real(""), IoError);
}

TEST_CASE("CSV round trip") {
  CsvTable t;
  t.header = {"t", "approx_k1"};
  t.rows = {{format_real(0.0), format_real(1.0 / 3.0)}, {format_real(1.0), format_real(-2e-17)}};
  std::stringstream ss;
  write_csv(ss, t);
  const auto back = read_csv(ss);
  CHECK(back.header == t.header);
  CHECK(back.rows == t.rows);
  CHECK(parse_real(back.rows[0][1]) == 1.0 / 3.0);

  std::istringstream ragged("a,b\n1,2\n3\n");
  CHECK_THROWS_AS((void)read_csv(ragged), IoError);
  std::istringstream empty("");
  CHECK_THROWS_AS((void)read_csv(empty), IoError);
}

TEST_CASE("order lists") {
  const auto o = parse_order_list("1,2,3,inf");
  REQUIRE(o.size() == 4);
  CHECK(o[2] == Order::finite(3));
  CHECK(o[3].is_infinite());
  CHECK_THROWS_AS((void)parse_order_list(""), UsageError);
  CHECK_THROWS_AS((void)parse_order_list("1,0"), UsageError);
  CHECK_THROWS_AS((void)parse_order_list("1,x"), UsageError);
}

TEST_CASE("samples files") {
  std::istringstream good("# header comment\n3\n0 # f(0)\n\n0.25\n0.5\n1\n");
  const auto s = read_samples(good);
  CHECK(s.degree() == 3);
  CHECK(s[1] == 0.25);
  std::istringstream short_file("3\n0\n1\n");
  CHECK_THROWS_AS((void)read_samples(short_file), IoError);
  std::istringstream long_file("1\n0\n1\n2\n");
  CHECK_THROWS_AS((void)read_samples(long_file), IoError);
  std::istringstream bad_n("zero\n1\n");
  CHECK_THROWS_AS((void)read_samples(bad_n), IoError);
  std::istringstream bad_value("1\n0\nabc\n");
  CHECK_THROWS_AS((void)read_samples(bad_value), IoError);
  CHECK_THROWS_AS((void)read_samples_file(scratch("missing.txt").string()), IoError);
}

TEST_CASE("uniform grid includes endpoints") {
  const auto g = uniform_grid(0.0, 8.0, 1001);
  CHECK(g.size() == 1001);
  CHECK(g.front() == 0.0);
  CHECK(g.back() == 8.0);
  CHECK(g[500] == 4.0);
  CHECK_THROWS_AS((void)uniform_grid(0.0, 1.0, 1), UsageError);
}

TEST_CASE("approx shape contract") {
  ApproxOptions opt;
  opt.source.function = "sin2pi";
  opt.source.n = 30;
  opt.orders = parse_order_list("1,2,3,inf");
  const auto report = run_approx(opt);
  const auto csv = report.to_csv();
  CHECK(csv.rows.size() == 1001);
  CHECK(csv.header.size() == 10);
  CHECK(csv.header[2] == "approx_k1");
  CHECK(csv.header[9] == "err_kinf");
  for (const auto& row : csv.rows) REQUIRE(row.size() == 10);
  // Endpoints interpolate.
  for (const auto& err : report.errors) {
    CHECK(std::abs(err.front()) < 1e-12);
    CHECK(std::abs(err.back()) < 1e-12);
  }
  const auto meta = report.meta_json();
  CHECK(meta.find("\"operation\": \"approx\"") != std::string::npos);
  CHECK(meta.find("condition_kinf") != std::string::npos);
}

TEST_CASE("approx from a linear samples file") {
  std::string content = "12\n";
  for (int i = 0; i <= 12; ++i) content += format_real(1.0 - 3.0 * i / 12.0) + "\n";
  ApproxOptions opt;
  opt.source.samples_path = write_file("linear.txt", content);
  opt.orders = parse_order_list("1,4,inf");
  const auto report = run_approx(opt);
  CHECK_FALSE(report.has_truth);
  for (const auto& col : report.values)
    for (std::size_t i = 0; i < col.size(); ++i)
      REQUIRE(std::abs(col[i] - (1.0 - 3.0 * report.t[i])) < 1e-11);
}

TEST_CASE("approx source validation") {
  ApproxOptions both;
  both.source.function = "sin2pi";
  both.source.samples_path = "x";
  both.source.n = 4;
  CHECK_THROWS_AS((void)run_approx(both), UsageError);
  ApproxOptions none;
  CHECK_THROWS_AS((void)run_approx(none), UsageError);
  ApproxOptions no_n;
  no_n.source.function = "sin2pi";
  CHECK_THROWS_AS((void)run_approx(no_n), UsageError);
  ApproxOptions half_line;
  half_line.source.function = "expx";
  half_line.source.n = 4;
  CHECK_NOTHROW((void)run_approx(half_line));
  ApproxOptions chi;
  chi.source.function = "unknown";
  chi.source.n = 4;
  CHECK_THROWS_AS((void)run_approx(chi), LookupError);
  ApproxOptions big;
  big.source.function = "sin2pi";
  big.source.n = 40;
  big.orders = {Order::infinity()};
  CHECK_THROWS_AS((void)run_approx(big), ConditioningError);
}

TEST_CASE("derivative command") {
  DerivativeOptions opt;
  opt.source.function = "abshalf";
  opt.source.n = 30;
  opt.orders = parse_order_list("1,2,3");
  const auto report = run_derivative(opt);
  CHECK(report.to_csv().header[2] == "d1_k1");
  for (const auto& col : report.values) CHECK(column_max_abs(col, report.t, 0.0, 1.0) <= 1.2);

  DerivativeOptions lin;
  lin.source.function = "linear";
  lin.source.n = 9;
  lin.orders = parse_order_list("1,3,inf");
  const auto lr = run_derivative(lin);
  for (const auto& col : lr.values)
    for (double v : col) REQUIRE(std::abs(v - 1.0) < 1e-11);

  DerivativeOptions e8;
  e8.source.function = "example8";
  e8.source.n = 30;
  e8.orders = {Order::finite(2)};
  e8.r = 2;
  const auto er = run_derivative(e8);
  double lowest = HUGE_VAL;
  for (std::size_t i = 0; i < er.t.size(); ++i)
    if (er.t[i] >= 0.3 && er.t[i] <= 0.5) lowest = std::min(lowest, er.values[0][i]);
  CHECK(lowest < 0.0);

  DerivativeOptions too_high;
  too_high.source.function = "sin2pi";
  too_high.source.n = 3;
  too_high.r = 4;
  CHECK_THROWS_AS((void)run_derivative(too_high), UsageError);
}

TEST_CASE("integrate command") {
  IntegrateOptions opt;
  opt.function = "expx";
  opt.n = 10;
  opt.order = Order::infinity();
  CHECK(std::abs(run_integrate(opt) - 1.718282) < 5e-7);
  opt.function = "const1";
  opt.a = 2.0;
  opt.b = 5.0;
  opt.order = Order::finite(3);
  CHECK(run_integrate(opt) == doctest::Approx(3.0).epsilon(1e-12));
  IntegrateOptions g;
  g.function = "gauss";
  g.n = 5;
  g.order = Order::finite(5);
  CHECK(std::abs(run_integrate(g) - 0.3413510) < 5e-7);
  IntegrateOptions outside;
  outside.function = "sin2pi";
  outside.n = 5;
  outside.b = 2.0;
  CHECK_THROWS_AS((void)run_integrate(outside), UsageError);
  IntegrateOptions reversed;
  reversed.function = "expx";
  reversed.n = 5;
  reversed.a = 1.0;
  reversed.b = 0.0;
  CHECK_THROWS_AS((void)run_integrate(reversed), UsageError);
}

TEST_CASE("szasz command") {
  SzaszOptions opt;
  opt.function = "chi4";
  opt.n = 10;
  opt.orders = parse_order_list("1,2,3");
  const auto report = run_szasz(opt);
  CHECK(report.values.size() == 3);
  CHECK(report.t.back() == 8.0);
  const double e1 = column_max_abs(report.errors[0], report.t, 0.0, 8.0);
  const double e3 = column_max_abs(report.errors[2], report.t, 0.0, 8.0);
  CHECK(e3 < e1);
  CHECK(report.meta_json().find("\"truncation_M\": \"151\"") != std::string::npos);

  SzaszOptions one;
  one.function = "const1";
  one.n = 10;
  const auto one_report = run_szasz(one);
  for (double v : one_report.errors[0]) REQUIRE(std::abs(v) <= 1e-12);
  SzaszOptions lin;
  lin.function = "linear";
  lin.n = 10;
  lin.orders = parse_order_list("1,2,3");
  const auto lin_report = run_szasz(lin);
  for (const auto& col : lin_report.errors)
    for (double v : col) REQUIRE(std::abs(v) < 10 * 1e-12);

  SzaszOptions unit;
  unit.function = "sin2pi";
  unit.n = 10;
  CHECK_THROWS_AS((void)run_szasz(unit), UsageError);
  SzaszOptions inf;
  inf.function = "chi4";
  inf.n = 10;
  inf.orders = {Order::infinity()};
  CHECK_THROWS_AS((void)run_szasz(inf), UsageError);
}

TEST_CASE("qbernstein command") {
  QBernsteinOptions opt;
  opt.function = "sin2pi";
  opt.n = 30;
  opt.q = 1.1;
  opt.orders = parse_order_list("1,2,3");
  const auto report = run_qbernstein(opt);
  ApproxOptions classical;
  classical.source.function = "sin2pi";
  classical.source.n = 30;
  const auto base = run_approx(classical);
  CHECK(column_max_abs(report.errors[0], report.t, 0.0, 0.9) <
        column_max_abs(base.errors[0], base.t, 0.0, 0.9));
  CHECK(report.meta_json().find("\"nodes\"") != std::string::npos);
  CHECK(report.meta_json().find("max_amplification") != std::string::npos);

  QBernsteinOptions one;
  one.function = "const1";
  one.n = 12;
  one.q = 1.2;
  one.orders = parse_order_list("1,2,3");
  const auto one_report = run_qbernstein(one);
  for (const auto& col : one_report.errors)
    for (double v : col) REQUIRE(std::abs(v) < 1e-12);

  QBernsteinOptions bad = opt;
  bad.q = 1.7;
  CHECK_THROWS_AS((void)run_qbernstein(bad), UsageError);
  bad.q = 0.0;
  CHECK_THROWS_AS((void)run_qbernstein(bad), UsageError);
}

TEST_CASE("tables reproduce the published values") {
  for (int id : {1, 2}) {
    const auto t = run_table(id);
    CHECK(t.entries.size() == 9);
    for (const auto& e : t.entries) CHECK_MESSAGE(e.ok(), e.integrand << " k=" << e.order.to_string());
    CHECK(t.all_ok());
  }
  const auto t1 = run_table(1);
  bool found = false;
  for (const auto& e : t1.entries)
    if (e.order == Order::finite(1) && std::abs(e.published - 1.611471) < 1e-12) found = true;
  CHECK(found);
  CHECK_THROWS_AS((void)run_table(3), UsageError);
}

TEST_CASE("exit codes") {
  CHECK(exit_code_for(UsageError("x")) == kExitUsage);
  CHECK(exit_code_for(LookupError("x")) == kExitUsage);
  CHECK(exit_code_for(DomainError("x")) == kExitUsage);
  CHECK(exit_code_for(IoError("x")) == kExitIo);
  CHECK(exit_code_for(ConditioningError("x", 1e17)) == kExitNumeric);
  CHECK(exit_code_for(ResourceError("x")) == kExitNumeric);

  const auto out = scratch("grid.csv").string();
  CHECK(run({"approx", "--fn", "sin2pi", "--n", "10", "--k", "1,inf", "--grid", "11", "--out", out}) == 0);
  CHECK(std::filesystem::exists(out));
  CHECK(std::filesystem::exists(out + ".meta.json"));
  std::ifstream in(out);
  const auto csv = read_csv(in);
  CHECK(csv.rows.size() == 11);

  CHECK(run({"table", "1"}) == 0);
  CHECK(run({"approx", "--fn", "sin2pi", "--n", "40", "--k", "inf"}) == kExitNumeric);
  CHECK(run({"approx", "--fn", "sin2pi", "--n", "31", "--k", "inf", "--force", "--grid", "3"}) == 0);
  CHECK(run({"approx", "--fn", "nosuch", "--n", "4"}) == kExitUsage);
  CHECK(run({"approx", "--n", "4"}) == kExitUsage);
  CHECK(run({"bogus"}) == kExitUsage);
  CHECK(run({"approx", "--samples", scratch("missing.txt").string()}) == kExitIo);
  CHECK(run({"approx", "--fn", "sin2pi", "--n", "4", "--out", "/nonexistent_dir/x.csv"}) == kExitIo);
  CHECK(run({"qbernstein", "--fn", "sin2pi", "--n", "10", "--q", "2"}) == kExitUsage);
  CHECK(run({"integrate", "--fn", "expx", "--a", "0", "--b", "1", "--n", "10", "--k", "inf"}) == 0);
  CHECK(run({"derivative", "--fn", "sin2pi", "--n", "3", "--r", "5"}) == kExitUsage);
}
