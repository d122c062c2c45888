#include "ibern/iterated.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <sstream>

#include "ibern/errors.hpp"

namespace ibern {

Order Order::finite(unsigned k) {
  if (k == 0) throw DomainError("iteration order k must be >= 1 (k = 0 is the identity)");
  return Order(k);
}

std::string Order::to_string() const {
  return is_infinite() ? std::string("inf") : std::to_string(k_);
}

Order Order::parse(const std::string& token) {
  if (token == "inf") return infinity();
  unsigned k = 0;
  const auto* first = token.data();
  const auto* last = token.data() + token.size();
  const auto [ptr, ec] = std::from_chars(first, last, k);
  if (ec != std::errc() || ptr != last || k == 0)
    throw DomainError("invalid iteration order '" + token + "' (expected a positive integer or inf)");
  return finite(k);
}

std::vector<double> iterate_node_coefficients(std::span<const double> base,
                                              const SquareMatrix& op, unsigned k,
                                              unsigned* performed) {
  if (k == 0) throw DomainError("iteration order k must be >= 1");
  if (k > kMaxIterations) {
    std::ostringstream msg;
    msg << "iteration order " << k << " exceeds the cap " << kMaxIterations;
    throw DomainError(msg.str());
  }
  std::vector<double> f(base.begin(), base.end());
  unsigned done = 0;
  for (unsigned step = 1; step < k; ++step) {
    const auto fa = op.left_multiply(f);
    double change = 0.0;
    for (std::size_t i = 0; i < f.size(); ++i) {
      const double delta = base[i] - fa[i];
      f[i] += delta;
      change = std::max(change, std::abs(delta));
    }
    ++done;
    if (change < kIterationStallTolerance) break;
  }
  if (performed != nullptr) *performed = done;
  return f;
}

IterCoefficients iterate_coefficients(const UniformSamples& samples, const BernsteinMatrix& op,
                                      unsigned k) {
  if (op.degree() != samples.degree())
    throw InputError("iterate_coefficients: matrix degree does not match samples");
  IterCoefficients out;
  out.n = samples.degree();
  out.order = Order::finite(k);
  out.coeffs = iterate_node_coefficients(samples.values(), op.matrix(), k, &out.iterations);
  return out;
}

IterCoefficients iterate_coefficients(const UniformSamples& samples, unsigned k) {
  if (k == 0) throw DomainError("iteration order k must be >= 1 (k = 0 is the identity)");
  if (k == 1) {
    IterCoefficients out;
    out.n = samples.degree();
    out.coeffs.assign(samples.values().begin(), samples.values().end());
    return out;
  }
  return iterate_coefficients(samples, BernsteinMatrix(samples.degree()), k);
}

constexpr int kRefinementSteps = 4;

namespace {

// B_n in extended precision, (i, j) at [i * (n + 1) + j], for refinement
// residuals. Same triangular recurrence as basis_vector.
std::vector<long double> extended_bernstein_matrix(unsigned n) {
  std::vector<long double> m((n + 1) * (n + 1));
  std::vector<long double> b(n + 1);
  for (unsigned j = 0; j <= n; ++j) {
    const long double t = static_cast<long double>(j) / n;
    const long double s = 1.0L - t;
    std::fill(b.begin(), b.end(), 0.0L);
    b[0] = 1.0L;
    for (unsigned k = 1; k <= n; ++k) {
      for (unsigned i = k; i >= 1; --i) b[i] = t * b[i - 1] + s * b[i];
      b[0] *= s;
    }
    for (unsigned i = 0; i <= n; ++i) m[i * (n + 1) + j] = b[i];
  }
  return m;
}

}  // namespace

IterCoefficients limit_coefficients(const UniformSamples& samples, const LimitOptions& options) {
  const unsigned n = samples.degree();
  const BernsteinMatrix op(n);
  // X B = F  <=>  B^T X^T = F^T.
  const LuFactorization lu(op.matrix().transposed());
  const double cond = lu.condition_1();

  std::ostringstream msg;
  if (n > options.conditioning_cap && !options.force) {
    msg << "limit approximant refused for n = " << n << " above the conditioning cap "
        << options.conditioning_cap << " (condition estimate " << cond
        << "); pass force to override";
    throw ConditioningError(msg.str(), cond);
  }
  if (!(cond <= options.max_condition)) {
    msg << "Bernstein matrix for n = " << n << " is too ill-conditioned (condition estimate "
        << cond << ")";
    throw ConditioningError(msg.str(), cond);
  }

  IterCoefficients out;
  out.n = n;
  out.order = Order::infinity();
  out.coeffs = lu.solve(samples.values());
  // Iterative refinement with residuals accumulated in extended precision
  // recovers most of the accuracy the condition number would otherwise cost.
  const auto f = samples.values();
  const auto wide = extended_bernstein_matrix(n);
  std::vector<double> r(n + 1);
  double best = HUGE_VAL;
  for (int step = 0; step < kRefinementSteps; ++step) {
    double size = 0.0;
    for (unsigned j = 0; j <= n; ++j) {
      long double acc = f[j];
      for (unsigned i = 0; i <= n; ++i)
        acc -= static_cast<long double>(out.coeffs[i]) * wide[i * (n + 1) + j];
      r[j] = static_cast<double>(acc);
      size = std::max(size, std::abs(r[j]));
    }
    if (size == 0.0 || size >= best) break;
    best = size;
    const auto d = lu.solve(r);
    for (unsigned i = 0; i <= n; ++i) out.coeffs[i] += d[i];
  }
  out.residual = max_abs_difference(op.left_multiply(out.coeffs), samples.values());
  out.condition = cond;
  return out;
}

IterCoefficients coefficients(const UniformSamples& samples, Order order,
                              const LimitOptions& options) {
  if (order.is_infinite()) return limit_coefficients(samples, options);
  return iterate_coefficients(samples, order.k());
}

double eval_iterated(const IterCoefficients& coeffs, double t) {
  return bernstein_sum(coeffs.coeffs, t);
}

double iterated_basis(unsigned n, unsigned i, unsigned k, double t) {
  if (i > n) {
    std::ostringstream msg;
    msg << "iterated_basis: index " << i << " exceeds degree " << n;
    throw DomainError(msg.str());
  }
  check_unit_interval(t, "iterated_basis");
  std::vector<double> indicator(n + 1, 0.0);
  indicator[i] = 1.0;
  return eval_iterated(iterate_coefficients(UniformSamples(std::move(indicator)), k), t);
}

double error_estimate(const UniformSamples& samples, unsigned k, double t) {
  check_unit_interval(t, "error_estimate");
  const BernsteinMatrix op(samples.degree());
  const auto fk = iterate_coefficients(samples, op, k);
  const auto fk1 = iterate_coefficients(samples, op, k + 1);
  // Both share the basis vector; evaluate the difference directly.
  std::vector<double> diff(fk.coeffs.size());
  for (std::size_t i = 0; i < diff.size(); ++i) diff[i] = fk.coeffs[i] - fk1.coeffs[i];
  return bernstein_sum(diff, t);
}

}  // namespace ibern
