#pragma once

#include <functional>
#include <limits>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace ibern {

struct Interval {
  double lo = 0.0;
  double hi = 1.0;

  [[nodiscard]] bool contains(double x) const noexcept { return x >= lo && x <= hi; }
  [[nodiscard]] bool unbounded() const noexcept {
    return hi == std::numeric_limits<double>::infinity();
  }
};

inline constexpr Interval kUnitInterval{0.0, 1.0};
inline constexpr Interval kHalfLine{0.0, std::numeric_limits<double>::infinity()};

/// A test function with its domain and, where known in closed form, its
/// first and second derivatives.
struct NamedFunction {
  std::string name;
  Interval domain = kUnitInterval;
  std::function<double(double)> evaluator;
  std::function<double(double)> first_derivative;
  std::function<double(double)> second_derivative;
  std::string note;

  double operator()(double x) const { return evaluator(x); }

  /// Derivative of order r when the registry knows it (r = 0 is f itself).
  [[nodiscard]] std::optional<std::function<double(double)>> derivative(unsigned r) const;
};

/// The circle-arc-plus-cubic function: a circle of radius r through the
/// origin on [0, t_d], t_d = 2/3 - delta, joined C^2 at t_d to the cubic that
/// vanishes at t = 1. Strictly convex for large r.
///
/// Throws ConstructionError when the centre height has no positive root or
/// the cubic's coefficient system is singular.
[[nodiscard]] NamedFunction build_example8(double r, double delta);

/// Cubic coefficients a_0..a_3 of the right-hand piece of build_example8.
struct Example8Parts {
  double t_delta;
  double u;
  double v;
  double cubic[4];
};
[[nodiscard]] Example8Parts example8_parts(double r, double delta);

/// Built-in functions by name. Built once; read-only afterwards.
class FunctionRegistry {
 public:
  [[nodiscard]] static const FunctionRegistry& builtin();

  /// Throws LookupError naming the available functions.
  [[nodiscard]] const NamedFunction& lookup(std::string_view name) const;
  [[nodiscard]] bool contains(std::string_view name) const noexcept;
  [[nodiscard]] std::vector<std::string> names() const;

 private:
  FunctionRegistry();
  std::vector<NamedFunction> functions_;
};

[[nodiscard]] inline const NamedFunction& registry_lookup(std::string_view name) {
  return FunctionRegistry::builtin().lookup(name);
}

}  // namespace ibern
