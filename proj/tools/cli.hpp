#pragma once

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "ibern/iterated.hpp"

namespace ibern::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitNumeric = 3;
inline constexpr int kExitIo = 4;

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Maps an in-flight exception to the tool's exit code.
int exit_code_for(const std::exception& e) noexcept;

/// Shortest decimal string that parses back to exactly `value`.
std::string format_real(double value);
/// Strict parse of a whole string as a double; throws IoError.
double parse_real(const std::string& text);

/// Header plus rows of already formatted cells.
struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
};

void write_csv(std::ostream& out, const CsvTable& table);
void write_csv_file(const std::string& path, const CsvTable& table);
/// Reads a header row followed by comma separated rows.
CsvTable read_csv(std::istream& in);

/// "1,2,3,inf" -> orders. Throws UsageError on bad tokens or an empty list.
std::vector<Order> parse_order_list(const std::string& text);

/// Samples file: first non-comment line n, then n+1 values f(i/n). '#'
/// starts a comment anywhere on a line; blank lines are skipped.
UniformSamples read_samples(std::istream& in);
UniformSamples read_samples_file(const std::string& path);

/// Evaluated grid with optional truth and signed errors per order.
struct GridReport {
  std::string operation;
  std::string source;  // function name or samples path
  unsigned n = 0;
  std::vector<std::string> order_labels;
  bool has_truth = false;
  std::string value_prefix = "approx";
  std::vector<double> t;
  std::vector<double> truth;
  std::vector<std::vector<double>> values;  // [order][row]
  std::vector<std::vector<double>> errors;  // [order][row], empty without truth
  /// Extra metadata (q-nodes, truncation index, residuals ...).
  std::vector<std::pair<std::string, std::string>> extra;
  std::vector<double> nodes;

  [[nodiscard]] std::size_t column_count() const;
  [[nodiscard]] CsvTable to_csv() const;
  [[nodiscard]] std::string meta_json() const;
};

struct SourceOptions {
  std::optional<std::string> function;
  std::optional<std::string> samples_path;
  std::optional<unsigned> n;
};

struct ApproxOptions {
  SourceOptions source;
  std::vector<Order> orders{Order::finite(1)};
  std::size_t grid = 1001;
  bool force = false;
};

struct DerivativeOptions {
  SourceOptions source;
  std::vector<Order> orders{Order::finite(1)};
  unsigned r = 1;
  std::size_t grid = 1001;
  bool force = false;
};

struct IntegrateOptions {
  std::string function;
  double a = 0.0;
  double b = 1.0;
  unsigned n = 0;
  Order order = Order::finite(1);
  bool force = false;
};

struct SzaszOptions {
  std::string function;
  unsigned n = 0;
  std::vector<Order> orders{Order::finite(1)};
  double x_max = 8.0;
  double tail_tol = 1e-12;
  std::size_t grid = 1001;
};

struct QBernsteinOptions {
  std::string function;
  unsigned n = 0;
  double q = 1.0;
  std::vector<Order> orders{Order::finite(1)};
  std::size_t grid = 1001;
};

/// Uniform closed grid of `count` points on [lo, hi], endpoints exact.
std::vector<double> uniform_grid(double lo, double hi, std::size_t count);

GridReport run_approx(const ApproxOptions& options);
GridReport run_derivative(const DerivativeOptions& options);
double run_integrate(const IntegrateOptions& options);
GridReport run_szasz(const SzaszOptions& options);
GridReport run_qbernstein(const QBernsteinOptions& options);

struct TableEntry {
  std::string integrand;
  Order order;
  double computed;
  double published;
  double tolerance;

  [[nodiscard]] double deviation() const;
  [[nodiscard]] bool ok() const { return deviation() <= tolerance; }
};

struct TableReport {
  int id = 0;
  unsigned n = 0;
  std::vector<TableEntry> entries;

  [[nodiscard]] bool all_ok() const;
  [[nodiscard]] CsvTable to_csv() const;
  void print(std::ostream& out) const;
};

/// Integral table 1 (n = 5) or 2 (n = 10); throws UsageError otherwise.
TableReport run_table(int id);

/// Full command line entry point; returns the exit code.
int main(int argc, char** argv);

}  // namespace ibern::cli
