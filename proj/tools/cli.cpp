#include "cli.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <numbers>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "ibern/ibern.hpp"

namespace ibern::cli {

int exit_code_for(const std::exception& e) noexcept {
  if (dynamic_cast<const UsageError*>(&e) != nullptr) return kExitUsage;
  if (dynamic_cast<const LookupError*>(&e) != nullptr) return kExitUsage;
  if (dynamic_cast<const IoError*>(&e) != nullptr) return kExitIo;
  if (dynamic_cast<const DomainError*>(&e) != nullptr) return kExitUsage;
  return kExitNumeric;
}

std::string format_real(double value) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, value);
  if (ec != std::errc()) throw IoError("failed to format a number");
  return std::string(buf, ptr);
}

double parse_real(const std::string& text) {
  double value = 0.0;
  const char* first = text.data();
  const char* last = text.data() + text.size();
  while (first != last && std::isspace(static_cast<unsigned char>(*first))) ++first;
  while (last != first && std::isspace(static_cast<unsigned char>(last[-1]))) --last;
  if (first != last && *first == '+') ++first;
  const auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc() || ptr != last || first == last)
    throw IoError("not a number: '" + text + "'");
  return value;
}

void write_csv(std::ostream& out, const CsvTable& table) {
  auto line = [&out](const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) {
      if (i > 0) out << ',';
      out << cells[i];
    }
    out << '\n';
  };
  line(table.header);
  for (const auto& row : table.rows) line(row);
}

void write_csv_file(const std::string& path, const CsvTable& table) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  write_csv(out, table);
  if (!out) throw IoError("write to '" + path + "' failed");
}

CsvTable read_csv(std::istream& in) {
  auto split = [](const std::string& line) {
    std::vector<std::string> cells;
    std::string cell;
    std::istringstream ss(line);
    while (std::getline(ss, cell, ',')) cells.push_back(cell);
    if (!line.empty() && line.back() == ',') cells.emplace_back();
    return cells;
  };
  CsvTable table;
  std::string line;
  if (!std::getline(in, line)) throw IoError("CSV input is empty");
  table.header = split(line);
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    auto cells = split(line);
    if (cells.size() != table.header.size())
      throw IoError("CSV row has " + std::to_string(cells.size()) + " cells, header has " +
                    std::to_string(table.header.size()));
    table.rows.push_back(std::move(cells));
  }
  return table;
}

std::vector<Order> parse_order_list(const std::string& text) {
  std::vector<Order> out;
  std::string token;
  std::istringstream ss(text);
  while (std::getline(ss, token, ',')) {
    token.erase(std::remove_if(token.begin(), token.end(),
                               [](unsigned char c) { return std::isspace(c); }),
                token.end());
    try {
      out.push_back(Order::parse(token));
    } catch (const DomainError& e) {
      throw UsageError(e.what());
    }
  }
  if (out.empty()) throw UsageError("empty k list");
  return out;
}

UniformSamples read_samples(std::istream& in) {
  std::vector<std::string> tokens;
  std::string line;
  while (std::getline(in, line)) {
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream ss(line);
    std::string tok;
    while (ss >> tok) tokens.push_back(tok);
  }
  if (tokens.empty()) throw IoError("samples file is empty");
  unsigned n = 0;
  {
    const auto& head = tokens.front();
    const auto [ptr, ec] = std::from_chars(head.data(), head.data() + head.size(), n);
    if (ec != std::errc() || ptr != head.data() + head.size() || n == 0)
      throw IoError("samples file: first entry must be a positive degree n, got '" + head + "'");
  }
  if (tokens.size() != static_cast<std::size_t>(n) + 2) {
    std::ostringstream msg;
    msg << "samples file: degree " << n << " needs " << n + 1 << " values, found "
        << tokens.size() - 1;
    throw IoError(msg.str());
  }
  std::vector<double> values;
  values.reserve(n + 1);
  for (std::size_t i = 1; i < tokens.size(); ++i) values.push_back(parse_real(tokens[i]));
  return UniformSamples(std::move(values));
}

UniformSamples read_samples_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open samples file '" + path + "'");
  return read_samples(in);
}

std::size_t GridReport::column_count() const {
  return 1 + (has_truth ? 1 : 0) + values.size() * (has_truth ? 2 : 1);
}

CsvTable GridReport::to_csv() const {
  CsvTable table;
  table.header.emplace_back("t");
  if (has_truth) table.header.emplace_back("truth");
  for (const auto& label : order_labels) table.header.push_back(value_prefix + "_k" + label);
  if (has_truth)
    for (const auto& label : order_labels) table.header.push_back("err_k" + label);
  table.rows.reserve(t.size());
  for (std::size_t row = 0; row < t.size(); ++row) {
    std::vector<std::string> cells;
    cells.reserve(column_count());
    cells.push_back(format_real(t[row]));
    if (has_truth) cells.push_back(format_real(truth[row]));
    for (const auto& col : values) cells.push_back(format_real(col[row]));
    if (has_truth)
      for (const auto& col : errors) cells.push_back(format_real(col[row]));
    table.rows.push_back(std::move(cells));
  }
  return table;
}

std::string GridReport::meta_json() const {
  nlohmann::ordered_json j;
  j["operation"] = operation;
  j["source"] = source;
  j["n"] = n;
  j["k"] = order_labels;
  j["grid"] = t.size();
  for (const auto& [key, value] : extra) j[key] = value;
  if (!nodes.empty()) j["nodes"] = nodes;
  return j.dump(2);
}

std::vector<double> uniform_grid(double lo, double hi, std::size_t count) {
  if (count < 2) throw UsageError("grid size must be at least 2");
  std::vector<double> g(count);
  const double width = hi - lo;
  for (std::size_t i = 0; i < count; ++i)
    g[i] = lo + width * (static_cast<double>(i) / static_cast<double>(count - 1));
  g.front() = lo;
  g.back() = hi;
  return g;
}

namespace {

struct ResolvedSource {
  std::string label;
  UniformSamples samples;
  const NamedFunction* function = nullptr;
};

ResolvedSource resolve_source(const SourceOptions& src) {
  if (src.function && src.samples_path)
    throw UsageError("--fn and --samples are mutually exclusive");
  if (!src.function && !src.samples_path) throw UsageError("one of --fn or --samples is required");
  if (src.samples_path) {
    auto samples = read_samples_file(*src.samples_path);
    if (src.n && *src.n != samples.degree()) {
      std::ostringstream msg;
      msg << "--n " << *src.n << " conflicts with degree " << samples.degree()
          << " in the samples file";
      throw UsageError(msg.str());
    }
    return {*src.samples_path, std::move(samples), nullptr};
  }
  const auto& fn = registry_lookup(*src.function);
  if (!src.n) throw UsageError("--n is required with --fn");
  if (*src.n == 0) throw UsageError("--n must be >= 1");
  if (!fn.domain.contains(0.0) || !fn.domain.contains(1.0))
    throw UsageError("function '" + fn.name + "' is not defined on [0, 1]");
  return {fn.name, UniformSamples::from_function(fn.evaluator, *src.n), &fn};
}

std::vector<std::string> labels_of(const std::vector<Order>& orders) {
  std::vector<std::string> out;
  for (auto o : orders) out.push_back(o.to_string());
  return out;
}

std::vector<Order> finite_only(const std::vector<Order>& orders, const char* command) {
  for (auto o : orders)
    if (o.is_infinite())
      throw UsageError(std::string(command) + ": k = inf is not supported; give finite orders");
  return orders;
}

void fill_errors(GridReport& report) {
  if (!report.has_truth) return;
  report.errors.resize(report.values.size());
  for (std::size_t c = 0; c < report.values.size(); ++c) {
    report.errors[c].resize(report.t.size());
    for (std::size_t row = 0; row < report.t.size(); ++row)
      report.errors[c][row] = report.values[c][row] - report.truth[row];
  }
}

}  // namespace

GridReport run_approx(const ApproxOptions& options) {
  const auto src = resolve_source(options.source);
  GridReport report;
  report.operation = "approx";
  report.source = src.label;
  report.n = src.samples.degree();
  report.order_labels = labels_of(options.orders);
  report.t = uniform_grid(0.0, 1.0, options.grid);
  report.has_truth = src.function != nullptr;
  if (report.has_truth)
    for (double t : report.t) report.truth.push_back(src.function->evaluator(t));

  LimitOptions limit;
  limit.force = options.force;
  for (auto order : options.orders) {
    const auto c = coefficients(src.samples, order, limit);
    if (c.residual) {
      report.extra.emplace_back("residual_k" + order.to_string(), format_real(*c.residual));
      report.extra.emplace_back("condition_k" + order.to_string(), format_real(*c.condition));
    }
    std::vector<double> col;
    col.reserve(report.t.size());
    for (double t : report.t) col.push_back(eval_iterated(c, t));
    report.values.push_back(std::move(col));
  }
  fill_errors(report);
  return report;
}

GridReport run_derivative(const DerivativeOptions& options) {
  const auto src = resolve_source(options.source);
  const unsigned n = src.samples.degree();
  if (options.r > n) {
    std::ostringstream msg;
    msg << "derivative order r = " << options.r << " exceeds degree n = " << n;
    throw UsageError(msg.str());
  }
  GridReport report;
  report.operation = "derivative";
  report.source = src.label;
  report.n = n;
  report.order_labels = labels_of(options.orders);
  report.value_prefix = "d" + std::to_string(options.r);
  report.extra.emplace_back("r", std::to_string(options.r));
  report.t = uniform_grid(0.0, 1.0, options.grid);
  if (src.function != nullptr) {
    if (auto d = src.function->derivative(options.r)) {
      report.has_truth = true;
      for (double t : report.t) report.truth.push_back((*d)(t));
    }
  }
  LimitOptions limit;
  limit.force = options.force;
  for (auto order : options.orders) {
    std::vector<double> col;
    col.reserve(report.t.size());
    if (order.is_infinite()) {
      const auto c = limit_coefficients(src.samples, limit);
      for (double t : report.t) col.push_back(derivative_of(c, options.r, t));
    } else {
      const IteratedDerivative d(src.samples, order.k(), options.r);
      for (double t : report.t) col.push_back(d(t));
    }
    report.values.push_back(std::move(col));
  }
  fill_errors(report);
  return report;
}

double run_integrate(const IntegrateOptions& options) {
  const auto& fn = registry_lookup(options.function);
  if (!(options.a < options.b)) throw UsageError("integrate: need a < b");
  if (options.n == 0) throw UsageError("integrate: --n must be >= 1");
  if (!fn.domain.contains(options.a) || !fn.domain.contains(options.b))
    throw UsageError("integrate: [a, b] leaves the domain of '" + fn.name + "'");
  LimitOptions limit;
  limit.force = options.force;
  return quadrature(fn.evaluator, options.a, options.b, options.n, options.order, limit);
}

GridReport run_szasz(const SzaszOptions& options) {
  const auto& fn = registry_lookup(options.function);
  if (options.n == 0) throw UsageError("szasz: --n must be >= 1");
  if (!fn.domain.contains(options.x_max) || !fn.domain.unbounded())
    throw UsageError("szasz: function '" + fn.name + "' is not defined on [0, inf)");
  const auto orders = finite_only(options.orders, "szasz");
  const SzaszContext ctx(options.n, options.x_max, options.tail_tol);

  GridReport report;
  report.operation = "szasz";
  report.source = fn.name;
  report.n = options.n;
  report.order_labels = labels_of(orders);
  report.extra.emplace_back("x_max", format_real(ctx.x_max()));
  report.extra.emplace_back("tail_tol", format_real(ctx.tail_tol()));
  report.extra.emplace_back("truncation_M", std::to_string(ctx.truncation()));
  report.extra.emplace_back("tail_mass", format_real(ctx.tail_mass()));
  report.t = uniform_grid(0.0, ctx.x_max(), options.grid);
  report.has_truth = true;
  for (double x : report.t) report.truth.push_back(fn.evaluator(x));
  for (auto order : orders) {
    const SzaszIterated s(fn.evaluator, ctx, order.k());
    std::vector<double> col;
    col.reserve(report.t.size());
    for (double x : report.t) col.push_back(s(x));
    report.values.push_back(std::move(col));
  }
  fill_errors(report);
  return report;
}

GridReport run_qbernstein(const QBernsteinOptions& options) {
  const auto& fn = registry_lookup(options.function);
  if (options.n == 0) throw UsageError("qbernstein: --n must be >= 1");
  if (!(options.q > 0.0 && options.q <= kMaxQ)) {
    std::ostringstream msg;
    msg << "qbernstein: q = " << options.q << " is outside the supported range (0, " << kMaxQ
        << "]";
    throw UsageError(msg.str());
  }
  if (!fn.domain.contains(0.0) || !fn.domain.contains(1.0))
    throw UsageError("qbernstein: function '" + fn.name + "' is not defined on [0, 1]");
  const auto orders = finite_only(options.orders, "qbernstein");
  const QContext ctx(options.q, options.n);
  std::vector<double> node_values;
  for (double x : ctx.nodes()) node_values.push_back(fn.evaluator(x));

  GridReport report;
  report.operation = "qbernstein";
  report.source = fn.name;
  report.n = options.n;
  report.order_labels = labels_of(orders);
  report.extra.emplace_back("q", format_real(options.q));
  report.nodes.assign(ctx.nodes().begin(), ctx.nodes().end());
  report.t = uniform_grid(0.0, 1.0, options.grid);
  double amplification = 0.0;
  for (double t : report.t) amplification = std::max(amplification, ctx.amplification(t));
  report.extra.emplace_back("max_amplification", format_real(amplification));
  report.has_truth = true;
  for (double t : report.t) report.truth.push_back(fn.evaluator(t));
  for (auto order : orders) {
    const QIterated qi(ctx, node_values, order.k());
    std::vector<double> col;
    col.reserve(report.t.size());
    for (double t : report.t) col.push_back(qi(t));
    report.values.push_back(std::move(col));
  }
  fill_errors(report);
  return report;
}

double TableEntry::deviation() const { return std::abs(computed - published); }

bool TableReport::all_ok() const {
  return std::all_of(entries.begin(), entries.end(), [](const auto& e) { return e.ok(); });
}

CsvTable TableReport::to_csv() const {
  CsvTable table;
  table.header = {"integrand", "k", "computed", "published", "abs_deviation", "tolerance", "ok"};
  for (const auto& e : entries) {
    table.rows.push_back({e.integrand, e.order.to_string(), format_real(e.computed),
                          format_real(e.published), format_real(e.deviation()),
                          format_real(e.tolerance), e.ok() ? "1" : "0"});
  }
  return table;
}

void TableReport::print(std::ostream& out) const {
  out << "Integrals over [0, 1] by the iterated Bernstein quadrature, n = " << n << "\n";
  out << std::left << std::setw(10) << "integrand" << std::setw(5) << "k" << std::right
      << std::setw(14) << "computed" << std::setw(14) << "published" << std::setw(12)
      << "|dev|" << "  status\n";
  const auto flags = out.flags();
  for (const auto& e : entries) {
    out << std::left << std::setw(10) << e.integrand << std::setw(5) << e.order.to_string()
        << std::right << std::fixed << std::setprecision(8) << std::setw(14) << e.computed
        << std::setw(14) << e.published << std::scientific << std::setprecision(2)
        << std::setw(12) << e.deviation() << "  " << (e.ok() ? "ok" : "MISMATCH") << "\n";
    out.flags(flags);
  }
}

namespace {

struct Published {
  const char* integrand;
  const char* values[3];  // k = 1, 5, inf
};

// Tolerance is half a unit in the last printed digit, never below 5e-7.
double print_tolerance(const std::string& text) {
  const auto dot = text.find('.');
  const int decimals = dot == std::string::npos ? 0 : static_cast<int>(text.size() - dot - 1);
  return std::max(5e-7, 0.5 * std::pow(10.0, -decimals));
}

}  // namespace

TableReport run_table(int id) {
  static constexpr Published kTable1[] = {
      {"pisin", {"1.611471", "2.005416", "1.999203"}},
      {"exp", {"1.746528", "1.718369", "1.718282"}},
      {"phi", {"0.3371903", "0.3413510", "0.3413443"}},
  };
  static constexpr Published kTable2[] = {
      {"pisin", {"1.803203", "2.000146", "2.000000"}},
      {"exp", {"1.732389", "1.718285", "1.718282"}},
      {"phi", {"0.3392624", "0.341345", "0.3413447"}},
  };
  if (id != 1 && id != 2) throw UsageError("table id must be 1 or 2");
  const auto& rows = id == 1 ? kTable1 : kTable2;

  TableReport report;
  report.id = id;
  report.n = id == 1 ? 5 : 10;
  const Order orders[3] = {Order::finite(1), Order::finite(5), Order::infinity()};
  const char* registry_names[3] = {"sinpi", "expx", "gauss"};
  for (int r = 0; r < 3; ++r) {
    const auto& fn = registry_lookup(registry_names[r]);
    for (int c = 0; c < 3; ++c) {
      const std::string text = rows[r].values[c];
      report.entries.push_back({rows[r].integrand, orders[c],
                                quadrature(fn.evaluator, 0.0, 1.0, report.n, orders[c]),
                                parse_real(text), print_tolerance(text)});
    }
  }
  return report;
}

namespace {

void emit(const GridReport& report, const std::string& out_path) {
  if (out_path.empty() || out_path == "-") {
    write_csv(std::cout, report.to_csv());
    return;
  }
  write_csv_file(out_path, report.to_csv());
  const std::string meta_path = out_path + ".meta.json";
  std::ofstream meta(meta_path);
  if (!meta) throw IoError("cannot open '" + meta_path + "' for writing");
  meta << report.meta_json() << '\n';
}

void warn(const std::string& message) { std::cerr << "warning: " << message << '\n'; }

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Iterated Bernstein, Szasz-Mirakyan and q-Bernstein approximation"};
  app.require_subcommand(1);

  std::string fn;
  std::string samples;
  unsigned n = 0;
  std::string k_list = "1";
  unsigned r = 1;
  double q = 1.0;
  double a = 0.0;
  double b = 1.0;
  std::size_t grid = 1001;
  double x_max = kDefaultSzaszXMax;
  double tail_tol = kDefaultSzaszTailTol;
  std::string out;
  bool force = false;
  int table_id = 1;

  auto add_common = [&](CLI::App* cmd, bool with_samples) {
    cmd->add_option("--fn", fn, "built-in function name");
    if (with_samples) cmd->add_option("--samples", samples, "samples file (n, then f(i/n))");
    cmd->add_option("--n", n, "degree / rate scale");
    cmd->add_option("--k", k_list, "comma separated orders, e.g. 1,2,3,inf")->capture_default_str();
    cmd->add_option("--grid", grid, "number of grid points")->capture_default_str();
    cmd->add_option("--out", out, "output CSV path (default: stdout)");
  };

  auto* approx = app.add_subcommand("approx", "evaluate iterated Bernstein approximants on a grid");
  add_common(approx, true);
  approx->add_flag("--force", force, "allow k = inf above the conditioning cap");

  auto* derivative = app.add_subcommand("derivative", "derivatives of iterated approximants");
  add_common(derivative, true);
  derivative->add_option("--r", r, "derivative order")->capture_default_str();
  derivative->add_flag("--force", force, "allow k = inf above the conditioning cap");

  auto* integrate = app.add_subcommand("integrate", "integral-free quadrature on [a, b]");
  integrate->add_option("--fn", fn, "built-in function name")->required();
  integrate->add_option("--a", a, "lower limit")->capture_default_str();
  integrate->add_option("--b", b, "upper limit")->capture_default_str();
  integrate->add_option("--n", n, "degree")->required();
  integrate->add_option("--k", k_list, "order (integer or inf)")->capture_default_str();
  integrate->add_flag("--force", force, "allow k = inf above the conditioning cap");

  auto* table = app.add_subcommand("table", "reproduce the integral tables (1: n = 5, 2: n = 10)");
  table->add_option("id,--id", table_id, "table id (1 or 2)")->capture_default_str();
  table->add_option("--out", out, "CSV path (default: CSV after the table on stdout)");

  auto* szasz = app.add_subcommand("szasz", "iterated Szasz-Mirakyan approximants on [0, xmax]");
  add_common(szasz, false);
  szasz->add_option("--xmax", x_max, "right end of the working domain")->capture_default_str();
  szasz->add_option("--tail-tol", tail_tol, "Poisson tail tolerance")->capture_default_str();

  auto* qbern = app.add_subcommand("qbernstein", "iterated q-Bernstein approximants");
  add_common(qbern, false);
  qbern->add_option("--q", q, "q parameter in (0, 1.5]")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    auto source = [&]() {
      SourceOptions s;
      if (!fn.empty()) s.function = fn;
      if (!samples.empty()) s.samples_path = samples;
      if (n != 0) s.n = n;
      return s;
    };

    if (approx->parsed()) {
      ApproxOptions o{source(), parse_order_list(k_list), grid, force};
      for (auto order : o.orders)
        if (order.is_infinite() && o.source.n && *o.source.n > kDefaultConditioningCap && force)
          warn("k = inf above the conditioning cap; results may be meaningless");
      emit(run_approx(o), out);
    } else if (derivative->parsed()) {
      DerivativeOptions o{source(), parse_order_list(k_list), r, grid, force};
      emit(run_derivative(o), out);
    } else if (integrate->parsed()) {
      const auto orders = parse_order_list(k_list);
      if (orders.size() != 1) throw UsageError("integrate takes a single order");
      const double value = run_integrate({fn, a, b, n, orders.front(), force});
      std::cout << std::setprecision(10) << value << '\n';
    } else if (table->parsed()) {
      const auto report = run_table(table_id);
      report.print(std::cout);
      if (out.empty()) {
        std::cout << '\n';
        write_csv(std::cout, report.to_csv());
      } else {
        write_csv_file(out, report.to_csv());
      }
      if (!report.all_ok()) {
        std::cerr << "error: table " << table_id << " deviates from the published values\n";
        return kExitNumeric;
      }
    } else if (szasz->parsed()) {
      if (fn.empty()) throw UsageError("--fn is required");
      if (n == 0) throw UsageError("--n is required");
      emit(run_szasz({fn, n, parse_order_list(k_list), x_max, tail_tol, grid}), out);
    } else if (qbern->parsed()) {
      if (fn.empty()) throw UsageError("--fn is required");
      if (n == 0) throw UsageError("--n is required");
      if (q > kRecommendedMaxQ && q <= kMaxQ)
        warn("q above 1.3: the approximation near t = 1 degrades");
      if (q > 0.0 && q < 1.0) warn("q < 1: the q-Bernstein operator does not approximate f");
      emit(run_qbernstein({fn, n, q, parse_order_list(k_list), grid}), out);
    }
  } catch (const ConditioningError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitNumeric;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return exit_code_for(e);
  }
  return kExitOk;
}

}  // namespace ibern::cli
