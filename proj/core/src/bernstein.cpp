#include "ibern/bernstein.hpp"

#include <cstdint>
#include <numeric>
#include <sstream>

#include "ibern/errors.hpp"

namespace ibern {

double binomial(unsigned n, unsigned i) {
  if (i > n) {
    std::ostringstream msg;
    msg << "binomial(" << n << ", " << i << "): i exceeds n";
    throw DomainError(msg.str());
  }
  if (n > kBinomialMax) {
    std::ostringstream msg;
    msg << "binomial: n = " << n << " exceeds the supported maximum " << kBinomialMax;
    throw DomainError(msg.str());
  }
  const unsigned r = std::min(i, n - i);
  if (n <= kExactBinomialMax) {
    // c * (n - j) / (j + 1) is an integer; dividing out the common factor
    // first keeps every intermediate at or below the final C(n, j + 1).
    std::uint64_t c = 1;
    for (unsigned j = 0; j < r; ++j) {
      const std::uint64_t g = std::gcd(c, std::uint64_t{j + 1});
      c = (c / g) * ((n - j) / ((j + 1) / g));
    }
    return static_cast<double>(c);
  }
  const double log_c = std::lgamma(n + 1.0) - std::lgamma(r + 1.0) -
                       std::lgamma(static_cast<double>(n - r) + 1.0);
  return std::round(std::exp(log_c));
}

void check_unit_interval(double t, const char* what) {
  if (!(t >= 0.0 && t <= 1.0)) {
    std::ostringstream msg;
    msg << what << ": t = " << t << " is outside [0, 1]";
    throw DomainError(msg.str());
  }
}

std::vector<double> basis_vector(unsigned n, double t) {
  check_unit_interval(t, "basis_vector");
  const double s = 1.0 - t;
  std::vector<double> b(n + 1, 0.0);
  b[0] = 1.0;
  for (unsigned k = 1; k <= n; ++k) {
    for (unsigned j = k; j >= 1; --j) b[j] = t * b[j - 1] + s * b[j];
    b[0] *= s;
  }
  return b;
}

double basis_eval(unsigned n, unsigned i, double t) {
  if (i > n) {
    std::ostringstream msg;
    msg << "basis_eval: index " << i << " exceeds degree " << n;
    throw DomainError(msg.str());
  }
  check_unit_interval(t, "basis_eval");
  // Only the band of the triangle that feeds entry i is needed: at level k
  // entries j in [i - (n - k), i].
  const double s = 1.0 - t;
  std::vector<double> b(i + 1, 0.0);
  b[0] = 1.0;
  for (unsigned k = 1; k <= n; ++k) {
    const unsigned hi = std::min(k, i);
    const unsigned lo = (i + k > n) ? i + k - n : 0;
    for (unsigned j = hi; j >= std::max(lo, 1u); --j) b[j] = t * b[j - 1] + s * b[j];
    if (lo == 0) b[0] *= s;
  }
  return b[i];
}

UniformSamples::UniformSamples(std::vector<double> values) : values_(std::move(values)) {
  if (values_.size() < 2) throw InputError("UniformSamples: need at least two values (n >= 1)");
  for (std::size_t i = 0; i < values_.size(); ++i) {
    if (!std::isfinite(values_[i])) {
      std::ostringstream msg;
      msg << "UniformSamples: value at node " << i << " is not finite";
      throw InputError(msg.str());
    }
  }
}

double bernstein_sum(std::span<const double> coeffs, double t) {
  if (coeffs.empty()) throw InputError("bernstein_sum: empty coefficient vector");
  const auto b = basis_vector(static_cast<unsigned>(coeffs.size() - 1), t);
  double acc = 0.0;
  for (std::size_t i = 0; i < b.size(); ++i) acc += coeffs[i] * b[i];
  return acc;
}

double bernstein_apply(const UniformSamples& samples, double t) {
  return bernstein_sum(samples.values(), t);
}

BernsteinMatrix::BernsteinMatrix(unsigned n) : n_(n) {
  if (n == 0) throw DomainError("bernstein_matrix: degree n = 0 is degenerate");
  m_ = SquareMatrix(n + 1);
  for (unsigned j = 0; j <= n; ++j) {
    const auto col = basis_vector(n, static_cast<double>(j) / n);
    for (unsigned i = 0; i <= n; ++i) m_(i, j) = col[i];
  }
}

}  // namespace ibern
