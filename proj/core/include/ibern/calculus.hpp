#pragma once

#include <concepts>
#include <cstddef>
#include <span>
#include <sstream>
#include <vector>

#include "ibern/bernstein.hpp"
#include "ibern/errors.hpp"
#include "ibern/iterated.hpp"

namespace ibern {

/// r-th forward difference with unit index step:
/// sum_{m=0}^r C(r,m) (-1)^m values[i + r - m].
/// Throws DomainError when i + r runs past the end.
[[nodiscard]] double forward_difference(std::span<const double> values, unsigned r, std::size_t i);

/// All r-th forward differences of node samples on the grid h = 1/n.
struct DifferenceTable {
  unsigned n = 0;
  double h = 0.0;
  unsigned order = 0;
  /// n + 1 - r entries; entry i is the r-th difference at node i/n.
  std::vector<double> values;
};

[[nodiscard]] DifferenceTable difference_table(std::span<const double> values, unsigned r);

/// n! / (n - r)!.
[[nodiscard]] double falling_factorial(unsigned n, unsigned r);

/// r-th derivative of the polynomial sum_i coeffs[i] B_{ni}(t):
/// n!/(n-r)! sum_i (Delta^r coeffs)_i B_{n-r,i}(t). r = 0 is plain evaluation.
[[nodiscard]] double derivative_of(const IterCoefficients& coeffs, unsigned r, double t);

/// Evaluates d^r/dt^r B_n^(k) f on many points through the double sum
/// (n!/(n-r)!) sum_i sum_j (-1)^(j-1) C(k,j) Delta^r(B_n^(j-1) f)(i/n) B_{n-r,i}(t).
/// The iterate-sample vectors F^(1) B^(j-1) are built once at construction.
class IteratedDerivative {
 public:
  /// Throws DomainError for k = 0 or r > n.
  IteratedDerivative(const UniformSamples& samples, unsigned k, unsigned r);

  [[nodiscard]] double operator()(double t) const;

  [[nodiscard]] unsigned degree() const noexcept { return n_; }
  [[nodiscard]] unsigned order() const noexcept { return r_; }

 private:
  unsigned n_;
  unsigned k_;
  unsigned r_;
  /// Row j-1 holds Delta^r of F^(1) B^(j-1), j = 1..k.
  std::vector<std::vector<double>> differences_;
  /// r = 0 only.
  IterCoefficients passthrough_;
};

/// One-shot d^r/dt^r B_n^(k) f(t).
[[nodiscard]] double derivative_eval(const UniformSamples& samples, unsigned k, unsigned r,
                                     double t);

/// S_ni(x) = int_0^x B_ni(t) dt = (1/(n+1)) sum_{j=i+1}^{n+1} B_{n+1,j}(x).
[[nodiscard]] double basis_integral(unsigned n, unsigned i, double x);

/// All S_n0(x) .. S_nn(x) at once.
[[nodiscard]] std::vector<double> basis_integral_vector(unsigned n, double x);

/// int_0^x of the approximant: coeffs . S_n(x).
[[nodiscard]] double integral_eval(const IterCoefficients& coeffs, double x);

/// Integral-free quadrature of g over [a, b]: samples
/// f(t) = (b - a) g(a + (b - a) t) at i/n, forms F_n^(k) and returns
/// (1/(n+1)) sum_i F_i.
/// Throws DomainError unless a < b, and InputError naming the node when g is
/// not finite there.
template <std::invocable<double> G>
double quadrature(G&& g, double a, double b, unsigned n, Order order,
                  const LimitOptions& options = {});

[[nodiscard]] double quadrature_from_samples(const UniformSamples& scaled, Order order,
                                             const LimitOptions& options = {});

template <std::invocable<double> G>
double quadrature(G&& g, double a, double b, unsigned n, Order order,
                  const LimitOptions& options) {
  if (!(a < b)) {
    std::ostringstream msg;
    msg << "quadrature: need a < b (got a = " << a << ", b = " << b << ")";
    throw DomainError(msg.str());
  }
  if (n == 0) throw DomainError("quadrature: degree n must be >= 1");
  const double width = b - a;
  std::vector<double> v(n + 1);
  for (unsigned i = 0; i <= n; ++i) {
    const double x = a + width * (static_cast<double>(i) / n);
    const double gx = g(x);
    if (!std::isfinite(gx)) {
      std::ostringstream msg;
      msg << "quadrature: integrand is not finite at node " << i << " (x = " << x << ")";
      throw InputError(msg.str());
    }
    v[i] = width * gx;
  }
  return quadrature_from_samples(UniformSamples(std::move(v)), order, options);
}

}  // namespace ibern
