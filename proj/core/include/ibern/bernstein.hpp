#pragma once

#include <cmath>
#include <concepts>
#include <cstddef>
#include <span>
#include <vector>

#include "ibern/dense.hpp"

namespace ibern {

/// Largest n for which binomial() accumulates in exact integer arithmetic.
/// Above it the coefficient is exp(lgamma(...)) and carries ~1e-13 relative
/// rounding.
inline constexpr unsigned kExactBinomialMax = 60;
/// Largest n accepted by binomial(); C(n, n/2) overflows double past ~1029.
inline constexpr unsigned kBinomialMax = 1020;

/// C(n, i) as a double. Throws DomainError for i > n or n > kBinomialMax.
[[nodiscard]] double binomial(unsigned n, unsigned i);

/// All n+1 Bernstein basis values B_{n0}(t) .. B_{nn}(t), via the triangular
/// recurrence B_{k,j} = (1-t) B_{k-1,j} + t B_{k-1,j-1}. Exact at t = 0 and
/// t = 1 (0^0 = 1). Degree 0 yields {1}.
[[nodiscard]] std::vector<double> basis_vector(unsigned n, double t);

/// B_{ni}(t) = C(n,i) t^i (1-t)^(n-i) >= 0.
[[nodiscard]] double basis_eval(unsigned n, unsigned i, double t);

/// Throws DomainError unless 0 <= t <= 1.
void check_unit_interval(double t, const char* what);

/// The n+1 values f(i/n), i = 0..n, that drive every approximant of degree n.
class UniformSamples {
 public:
  /// Throws InputError when fewer than two values are given or any value
  /// is non-finite.
  explicit UniformSamples(std::vector<double> values);

  template <std::invocable<double> F>
  [[nodiscard]] static UniformSamples from_function(F&& f, unsigned n) {
    std::vector<double> v(n + 1);
    for (unsigned i = 0; i <= n; ++i) v[i] = f(static_cast<double>(i) / n);
    return UniformSamples(std::move(v));
  }

  [[nodiscard]] unsigned degree() const noexcept {
    return static_cast<unsigned>(values_.size() - 1);
  }
  [[nodiscard]] std::span<const double> values() const noexcept { return values_; }
  [[nodiscard]] double operator[](std::size_t i) const noexcept { return values_[i]; }

 private:
  std::vector<double> values_;
};

/// Classical Bernstein polynomial: sum_i values[i] B_{ni}(t).
[[nodiscard]] double bernstein_apply(const UniformSamples& samples, double t);

/// Evaluates sum_i coeffs[i] B_{ni}(t) with n = coeffs.size() - 1.
[[nodiscard]] double bernstein_sum(std::span<const double> coeffs, double t);

/// The operator matrix with entries (i, j) = B_{ni}(j/n). Right-multiplying a
/// row vector of node samples by it yields the node samples of the
/// Bernstein approximant. Columns sum to one.
class BernsteinMatrix {
 public:
  /// Throws DomainError for n = 0.
  explicit BernsteinMatrix(unsigned n);

  [[nodiscard]] unsigned degree() const noexcept { return n_; }
  [[nodiscard]] const SquareMatrix& matrix() const noexcept { return m_; }
  [[nodiscard]] double operator()(std::size_t i, std::size_t j) const noexcept {
    return m_(i, j);
  }

  /// x * B for a row vector x of length n+1.
  [[nodiscard]] std::vector<double> left_multiply(std::span<const double> x) const {
    return m_.left_multiply(x);
  }

 private:
  unsigned n_;
  SquareMatrix m_;
};

[[nodiscard]] inline BernsteinMatrix bernstein_matrix(unsigned n) {
  return BernsteinMatrix(n);
}

}  // namespace ibern
