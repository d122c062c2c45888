#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "ibern/bernstein.hpp"
#include "ibern/dense.hpp"

namespace ibern {

/// Iteration order: a positive integer k, or the k -> infinity limit.
class Order {
 public:
  [[nodiscard]] static Order finite(unsigned k);
  [[nodiscard]] static constexpr Order infinity() noexcept { return Order(0); }

  [[nodiscard]] constexpr bool is_infinite() const noexcept { return k_ == 0; }
  /// Finite order; 0 for infinity.
  [[nodiscard]] constexpr unsigned k() const noexcept { return k_; }

  /// "inf" or the decimal k.
  [[nodiscard]] std::string to_string() const;
  /// Parses "inf" or a positive integer; throws DomainError otherwise.
  [[nodiscard]] static Order parse(const std::string& token);

  friend constexpr bool operator==(Order, Order) noexcept = default;

 private:
  constexpr explicit Order(unsigned k) noexcept : k_(k) {}
  unsigned k_;
};

/// Iteration count beyond which the recurrence is refused.
inline constexpr unsigned kMaxIterations = 1'000'000;
/// The recurrence stops once successive iterates differ by less than this.
inline constexpr double kIterationStallTolerance = 1e-15;
/// Largest degree for which the limit solve runs without an explicit force.
inline constexpr unsigned kDefaultConditioningCap = 30;

/// Coefficients F_n^(k) of an iterated approximant in the degree-n
/// Bernstein basis.
struct IterCoefficients {
  unsigned n = 0;
  Order order = Order::finite(1);
  std::vector<double> coeffs;
  /// Limit order only: ||X B - F^(1)||_inf of the solved system.
  std::optional<double> residual;
  /// Limit order only: 1-norm condition number of B_n.
  std::optional<double> condition;
  /// Finite order: iterations actually performed (may stop early on stall).
  unsigned iterations = 0;
};

/// Runs F <- F (I - A) + F1 starting at F = F1, k - 1 times, for any
/// node-sampling operator matrix A. Stops early once an update changes the
/// iterate by less than kIterationStallTolerance.
/// Returns the final iterate; `performed` receives the update count.
[[nodiscard]] std::vector<double> iterate_node_coefficients(std::span<const double> base,
                                                            const SquareMatrix& op,
                                                            unsigned k,
                                                            unsigned* performed = nullptr);

/// F_n^(k) by the recurrence. Throws DomainError for k = 0 or k > kMaxIterations.
[[nodiscard]] IterCoefficients iterate_coefficients(const UniformSamples& samples, unsigned k);
[[nodiscard]] IterCoefficients iterate_coefficients(const UniformSamples& samples,
                                                    const BernsteinMatrix& op, unsigned k);

struct LimitOptions {
  unsigned conditioning_cap = kDefaultConditioningCap;
  bool force = false;
  /// Condition numbers above this are rejected even when forced.
  double max_condition = 1e15;
};

/// F_n^(inf): solves X B_n = F^(1) with a pivoted LU factorization of B_n^T.
/// Throws ConditioningError when n exceeds the cap without force, or the
/// system is singular or worse conditioned than options.max_condition.
[[nodiscard]] IterCoefficients limit_coefficients(const UniformSamples& samples,
                                                  const LimitOptions& options = {});

/// Dispatches on Order.
[[nodiscard]] IterCoefficients coefficients(const UniformSamples& samples, Order order,
                                            const LimitOptions& options = {});

/// F_n^(k) . B_n(t).
[[nodiscard]] double eval_iterated(const IterCoefficients& coeffs, double t);

/// B_{ni}^(k)(t): the iterated approximant of the indicator of node i.
[[nodiscard]] double iterated_basis(unsigned n, unsigned i, unsigned k, double t);

/// B^(k) f(t) - B^(k+1) f(t), the computable surrogate for the error of B^(k) f.
[[nodiscard]] double error_estimate(const UniformSamples& samples, unsigned k, double t);

}  // namespace ibern
