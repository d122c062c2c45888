#include "ibern/calculus.hpp"

#include <numeric>

namespace ibern {

double forward_difference(std::span<const double> values, unsigned r, std::size_t i) {
  if (i + r >= values.size()) {
    std::ostringstream msg;
    msg << "forward_difference: order " << r << " at index " << i << " needs "
        << i + r + 1 << " values, have " << values.size();
    throw DomainError(msg.str());
  }
  double acc = 0.0;
  for (unsigned m = 0; m <= r; ++m) {
    const double term = binomial(r, m) * values[i + r - m];
    acc += (m % 2 == 0) ? term : -term;
  }
  return acc;
}

DifferenceTable difference_table(std::span<const double> values, unsigned r) {
  if (values.size() < 2) throw InputError("difference_table: need at least two values");
  const auto n = static_cast<unsigned>(values.size() - 1);
  if (r > n) throw DomainError("difference_table: order exceeds degree");
  DifferenceTable table{n, 1.0 / n, r, {}};
  // Repeated first differences; same result as the binomial sum, fewer flops.
  table.values.assign(values.begin(), values.end());
  for (unsigned level = 0; level < r; ++level) {
    for (std::size_t i = 0; i + 1 < table.values.size(); ++i)
      table.values[i] = table.values[i + 1] - table.values[i];
    table.values.pop_back();
  }
  return table;
}

double falling_factorial(unsigned n, unsigned r) {
  double acc = 1.0;
  for (unsigned j = 0; j < r; ++j) acc *= static_cast<double>(n - j);
  return acc;
}

double derivative_of(const IterCoefficients& coeffs, unsigned r, double t) {
  check_unit_interval(t, "derivative_of");
  if (r == 0) return eval_iterated(coeffs, t);
  const auto n = static_cast<unsigned>(coeffs.coeffs.size() - 1);
  if (r > n) throw DomainError("derivative_of: derivative order exceeds degree");
  const auto table = difference_table(coeffs.coeffs, r);
  return falling_factorial(n, r) * bernstein_sum(table.values, t);
}

IteratedDerivative::IteratedDerivative(const UniformSamples& samples, unsigned k, unsigned r)
    : n_(samples.degree()), k_(k), r_(r) {
  if (k == 0) throw DomainError("derivative_eval: iteration order k must be >= 1");
  if (r > n_) {
    std::ostringstream msg;
    msg << "derivative_eval: derivative order " << r << " exceeds degree " << n_;
    throw DomainError(msg.str());
  }
  if (r == 0) {
    passthrough_ = iterate_coefficients(samples, k);
    return;
  }
  const BernsteinMatrix op(n_);
  std::vector<double> iterate(samples.values().begin(), samples.values().end());
  differences_.reserve(k);
  for (unsigned j = 1; j <= k; ++j) {
    if (j > 1) iterate = op.left_multiply(iterate);
    differences_.push_back(difference_table(iterate, r).values);
  }
}

double IteratedDerivative::operator()(double t) const {
  check_unit_interval(t, "derivative_eval");
  if (r_ == 0) return eval_iterated(passthrough_, t);
  const auto b = basis_vector(n_ - r_, t);
  double outer = 0.0;
  for (unsigned j = 1; j <= k_; ++j) {
    const auto& d = differences_[j - 1];
    const double inner = std::inner_product(d.begin(), d.end(), b.begin(), 0.0);
    const double weight = binomial(k_, j);
    outer += (j % 2 == 1) ? weight * inner : -weight * inner;
  }
  return falling_factorial(n_, r_) * outer;
}

double derivative_eval(const UniformSamples& samples, unsigned k, unsigned r, double t) {
  check_unit_interval(t, "derivative_eval");
  return IteratedDerivative(samples, k, r)(t);
}

std::vector<double> basis_integral_vector(unsigned n, double x) {
  check_unit_interval(x, "basis_integral");
  const auto up = basis_vector(n + 1, x);
  // S_ni = (1/(n+1)) * tail sum of the degree-(n+1) basis beyond index i.
  std::vector<double> s(n + 1);
  double tail = 0.0;
  for (unsigned i = n + 1; i-- > 0;) {
    tail += up[i + 1];
    s[i] = tail / (n + 1);
  }
  return s;
}

double basis_integral(unsigned n, unsigned i, double x) {
  if (i > n) {
    std::ostringstream msg;
    msg << "basis_integral: index " << i << " exceeds degree " << n;
    throw DomainError(msg.str());
  }
  return basis_integral_vector(n, x)[i];
}

double integral_eval(const IterCoefficients& coeffs, double x) {
  const auto s = basis_integral_vector(static_cast<unsigned>(coeffs.coeffs.size() - 1), x);
  return std::inner_product(s.begin(), s.end(), coeffs.coeffs.begin(), 0.0);
}

double quadrature_from_samples(const UniformSamples& scaled, Order order,
                               const LimitOptions& options) {
  const auto c = coefficients(scaled, order, options);
  const double sum = std::accumulate(c.coeffs.begin(), c.coeffs.end(), 0.0);
  return sum / static_cast<double>(c.n + 1);
}

}  // namespace ibern
