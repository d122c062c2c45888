#include "ibern/functions.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "ibern/dense.hpp"
#include "ibern/errors.hpp"

namespace ibern {
namespace {

using std::numbers::pi;

double sign(double x) { return (x > 0.0) - (x < 0.0); }

NamedFunction make(std::string name, Interval domain, std::function<double(double)> f,
                   std::function<double(double)> d1, std::function<double(double)> d2,
                   std::string note) {
  return NamedFunction{std::move(name), domain, std::move(f), std::move(d1), std::move(d2),
                       std::move(note)};
}

}  // namespace

std::optional<std::function<double(double)>> NamedFunction::derivative(unsigned r) const {
  switch (r) {
    case 0:
      return evaluator;
    case 1:
      if (first_derivative) return first_derivative;
      break;
    case 2:
      if (second_derivative) return second_derivative;
      break;
    default:
      break;
  }
  return std::nullopt;
}

Example8Parts example8_parts(double r, double delta) {
  if (!(r > 0.0) || !(delta > 0.0) || !(delta < 2.0 / 3.0)) {
    std::ostringstream msg;
    msg << "example8: need r > 0 and 0 < delta < 2/3 (got r = " << r << ", delta = " << delta
        << ")";
    throw ConstructionError(msg.str());
  }
  Example8Parts p{};
  const double td = 2.0 / 3.0 - delta;
  p.t_delta = td;
  // v solves 10 v^2 + 30 t_d v + 25 t_d^2 - r^2 = 0, which puts (0, 0) and
  // (t_d, -3 t_d) on the circle; the "+" root keeps the centre above the arc.
  const double disc = 900.0 * td * td - 40.0 * (25.0 * td * td - r * r);
  if (disc < 0.0) {
    std::ostringstream msg;
    msg << "example8: negative discriminant " << disc << " for r = " << r;
    throw ConstructionError(msg.str());
  }
  p.v = (-30.0 * td + std::sqrt(disc)) / 20.0;
  if (!(p.v > 0.0) || !(p.v < r)) {
    std::ostringstream msg;
    msg << "example8: centre height v = " << p.v << " is not in (0, r); increase r";
    throw ConstructionError(msg.str());
  }
  p.u = std::sqrt(r * r - p.v * p.v);

  const double du = td - p.u;
  const double root = std::sqrt(r * r - du * du);
  const double f0 = p.v - root;
  const double f1 = du / root;
  const double f2 = r * r / (root * root * root);

  // p(1) = 0 and p^(j)(t_d) = f0^(j)(t_d) for j = 0, 1, 2.
  SquareMatrix a(4);
  const double rows[4][4] = {{1.0, 1.0, 1.0, 1.0},
                             {1.0, td, td * td, td * td * td},
                             {0.0, 1.0, 2.0 * td, 3.0 * td * td},
                             {0.0, 0.0, 2.0, 6.0 * td}};
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) a(i, j) = rows[i][j];
  const double rhs[4] = {0.0, f0, f1, f2};
  try {
    const LuFactorization lu(a);
    const auto c = lu.solve(rhs);
    for (int i = 0; i < 4; ++i) p.cubic[i] = c[i];
  } catch (const ConditioningError& e) {
    throw ConstructionError(std::string("example8: cubic coefficient system: ") + e.what());
  }
  return p;
}

NamedFunction build_example8(double r, double delta) {
  const auto p = example8_parts(r, delta);
  const double r2 = r * r;
  const double td = p.t_delta;
  const double u = p.u;
  const double v = p.v;
  const double a0 = p.cubic[0], a1 = p.cubic[1], a2 = p.cubic[2], a3 = p.cubic[3];

  auto f = [=](double t) {
    if (t <= td) return v - std::sqrt(r2 - (t - u) * (t - u));
    return a0 + t * (a1 + t * (a2 + t * a3));
  };
  auto d1 = [=](double t) {
    if (t <= td) return (t - u) / std::sqrt(r2 - (t - u) * (t - u));
    return a1 + t * (2.0 * a2 + 3.0 * a3 * t);
  };
  auto d2 = [=](double t) {
    if (t <= td) return r2 / std::pow(r2 - (t - u) * (t - u), 1.5);
    return 2.0 * a2 + 6.0 * a3 * t;
  };
  std::ostringstream note;
  note << "circle arc (radius " << r << ") on [0, " << td << "], C^2 cubic to f(1) = 0";
  return make("example8", kUnitInterval, f, d1, d2, note.str());
}

FunctionRegistry::FunctionRegistry() {
  const double inv_sqrt_2pi = 1.0 / std::sqrt(2.0 * pi);

  functions_.push_back(make(
      "sin2pi", kUnitInterval, [](double t) { return std::sin(2 * pi * t); },
      [](double t) { return 2 * pi * std::cos(2 * pi * t); },
      [](double t) { return -4 * pi * pi * std::sin(2 * pi * t); }, "sin(2 pi t), smooth"));

  functions_.push_back(make(
      "signsq", kUnitInterval, [](double t) { return sign(t - 0.5) * (t - 0.5) * (t - 0.5); },
      [](double t) { return 2 * std::abs(t - 0.5); },
      [](double t) { return 2 * sign(t - 0.5); },
      "sign(t - 0.5)(t - 0.5)^2, C^1 but not C^2 at 0.5"));

  functions_.push_back(make(
      "abshalf", kUnitInterval, [](double t) { return std::abs(t - 0.5); },
      [](double t) { return sign(t - 0.5); }, [](double) { return 0.0; },
      "|t - 0.5|, not differentiable at 0.5 (derivatives reported as 0 there)"));

  functions_.push_back(make(
      "chi4", kHalfLine, [](double x) { return 0.25 * x * std::exp(-x / 2); },
      [](double x) { return 0.25 * std::exp(-x / 2) * (1 - x / 2); },
      [](double x) { return 0.25 * std::exp(-x / 2) * (x / 4 - 1); },
      "0.25 x exp(-x/2) on [0, inf), the chi-square(4) density"));

  functions_.push_back(make(
      "sinpi", kUnitInterval, [](double x) { return pi * std::sin(pi * x); },
      [](double x) { return pi * pi * std::cos(pi * x); },
      [](double x) { return -pi * pi * pi * std::sin(pi * x); },
      "pi sin(pi x), integrates to 2 over [0, 1]"));

  functions_.push_back(make(
      "expx", kHalfLine, [](double x) { return std::exp(x); }, [](double x) { return std::exp(x); },
      [](double x) { return std::exp(x); }, "exp(x)"));

  functions_.push_back(make(
      "gauss", kHalfLine, [=](double x) { return inv_sqrt_2pi * std::exp(-x * x / 2); },
      [=](double x) { return -x * inv_sqrt_2pi * std::exp(-x * x / 2); },
      [=](double x) { return (x * x - 1) * inv_sqrt_2pi * std::exp(-x * x / 2); },
      "standard normal density"));

  functions_.push_back(make(
      "example7", kUnitInterval,
      [](double t) {
        return t < 0.5 ? t * (t - 1) : -0.25 + (2.0 / 3.0) * std::pow(t - 0.5, 1.5);
      },
      [](double t) { return t < 0.5 ? 2 * t - 1 : std::sqrt(t - 0.5); }, nullptr,
      "convex, C^1, second derivative unbounded at 0.5^+"));

  functions_.push_back(build_example8(70.0, 0.05));

  functions_.push_back(make(
      "const1", kHalfLine, [](double) { return 1.0; }, [](double) { return 0.0; },
      [](double) { return 0.0; }, "constant 1"));

  functions_.push_back(make(
      "linear", kHalfLine, [](double x) { return x; }, [](double) { return 1.0; },
      [](double) { return 0.0; }, "identity x"));

  functions_.push_back(make(
      "cubiclin", kUnitInterval, [](double t) { return t * t * t + t; },
      [](double t) { return 3 * t * t + 1; }, [](double t) { return 6 * t; },
      "t^3 + t, strictly increasing"));

  functions_.push_back(make(
      "quartic", kUnitInterval, [](double t) { return t * t * t * t; },
      [](double t) { return 4 * t * t * t; }, [](double t) { return 12 * t * t; }, "t^4"));
}

const FunctionRegistry& FunctionRegistry::builtin() {
  static const FunctionRegistry registry;
  return registry;
}

bool FunctionRegistry::contains(std::string_view name) const noexcept {
  for (const auto& f : functions_)
    if (f.name == name) return true;
  return false;
}

const NamedFunction& FunctionRegistry::lookup(std::string_view name) const {
  for (const auto& f : functions_)
    if (f.name == name) return f;
  std::ostringstream msg;
  msg << "unknown function '" << name << "'; available:";
  for (const auto& f : functions_) msg << ' ' << f.name;
  throw LookupError(msg.str());
}

std::vector<std::string> FunctionRegistry::names() const {
  std::vector<std::string> out;
  out.reserve(functions_.size());
  for (const auto& f : functions_) out.push_back(f.name);
  return out;
}

}  // namespace ibern
