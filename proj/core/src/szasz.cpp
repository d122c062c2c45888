#include "ibern/szasz.hpp"

#include <algorithm>
#include <boost/math/distributions/poisson.hpp>
#include <vector>

namespace ibern {
namespace {

double poisson_pmf(double mean, std::size_t i) {
  if (mean == 0.0) return i == 0 ? 1.0 : 0.0;
  // Evaluated as a gamma-function derivative, which keeps full relative
  // accuracy where the naive log-space formula loses ~mean * eps.
  return boost::math::pdf(boost::math::poisson_distribution<double>(mean), static_cast<double>(i));
}

// Poisson(mean) probabilities for i = 0..count-1. Recurses outward from the
// mode so that no intermediate over- or underflows before the true value does.
std::vector<double> poisson_weights(double mean, std::size_t count) {
  std::vector<double> w(count, 0.0);
  if (count == 0) return w;
  if (mean == 0.0) {
    w[0] = 1.0;
    return w;
  }
  const auto mode = std::min(static_cast<std::size_t>(mean), count - 1);
  w[mode] = poisson_pmf(mean, mode);
  for (std::size_t i = mode + 1; i < count; ++i) {
    w[i] = w[i - 1] * mean / static_cast<double>(i);
    if (w[i] == 0.0) break;
  }
  for (std::size_t i = mode; i-- > 0;) {
    w[i] = w[i + 1] * static_cast<double>(i + 1) / mean;
    if (w[i] == 0.0) break;
  }
  return w;
}

// One column of the truncated operator: P(i; mean = j) for i in [lo, lo + size).
struct Band {
  std::size_t lo = 0;
  std::vector<double> values;
};

// Entries below this fraction of tail_tol are dropped from the bands; their
// total contribution is far below the truncation tolerance.
constexpr double kBandCutFactor = 1e-6;

Band poisson_band(double mean, std::size_t limit, double cut) {
  Band band;
  if (mean == 0.0) {
    band.values = {1.0};
    return band;
  }
  const auto mode = std::min(static_cast<std::size_t>(mean), limit);
  const double peak = poisson_pmf(mean, mode);
  std::vector<double> up;
  for (std::size_t i = mode + 1; i <= limit; ++i) {
    const double prev = up.empty() ? peak : up.back();
    const double v = prev * mean / static_cast<double>(i);
    if (v < cut) break;
    up.push_back(v);
  }
  std::vector<double> down;
  std::size_t lo = mode;
  {
    double v = peak;
    while (lo > 0) {
      const double next = v * static_cast<double>(lo) / mean;
      if (next < cut) break;
      --lo;
      v = next;
      down.push_back(v);
    }
  }
  band.lo = lo;
  band.values.reserve(down.size() + 1 + up.size());
  band.values.assign(down.rbegin(), down.rend());
  band.values.push_back(peak);
  band.values.insert(band.values.end(), up.begin(), up.end());
  return band;
}

}  // namespace

double poisson_basis(unsigned n, unsigned i, double x) {
  if (!(x >= 0.0)) {
    std::ostringstream msg;
    msg << "poisson_basis: x = " << x << " is negative";
    throw DomainError(msg.str());
  }
  return poisson_pmf(n * x, i);
}

double poisson_tail_mass(double mean, std::size_t m) {
  if (mean == 0.0) return 0.0;
  if (static_cast<double>(m + 1) < mean) {
    // Tail holds most of the mass; the head is the short sum.
    const auto w = poisson_weights(mean, m + 1);
    double head = 0.0;
    for (double v : w) head += v;
    return std::max(0.0, 1.0 - head);
  }
  double term = poisson_pmf(mean, m + 1);
  double sum = 0.0;
  for (std::size_t i = m + 1; term > 0.0; ++i) {
    sum += term;
    if (term < sum * 1e-18) break;
    term *= mean / static_cast<double>(i + 1);
  }
  return sum;
}

std::size_t poisson_truncation_index(double mean, double tail_tol, std::size_t lower_bound) {
  auto m = std::max(lower_bound, static_cast<std::size_t>(std::ceil(mean)));
  while (poisson_tail_mass(mean, m) >= tail_tol) ++m;
  return m;
}

SzaszContext::SzaszContext(unsigned n, double x_max, double tail_tol, std::size_t hard_cap)
    : n_(n), x_max_(x_max), tail_tol_(tail_tol), m_(0), hard_cap_(hard_cap), tail_mass_(0.0) {
  if (n == 0) throw DomainError("SzaszContext: n must be >= 1");
  if (!(x_max > 0.0) || !std::isfinite(x_max))
    throw DomainError("SzaszContext: x_max must be a positive finite number");
  if (!(tail_tol > 0.0 && tail_tol <= 1e-6))
    throw DomainError("SzaszContext: tail_tol must lie in (0, 1e-6]");
  const double mean = n * x_max;
  m_ = poisson_truncation_index(mean, tail_tol, static_cast<std::size_t>(std::ceil(mean)));
  tail_mass_ = poisson_tail_mass(mean, m_);
  if (m_ > hard_cap_) {
    std::ostringstream msg;
    msg << "SzaszContext: truncation index M = " << m_ << " exceeds the hard cap " << hard_cap_;
    throw ResourceError(msg.str());
  }
}

SzaszContext::SzaszContext(unsigned n, double x_max, double tail_tol, std::size_t m,
                           std::size_t hard_cap, double tail_mass)
    : n_(n), x_max_(x_max), tail_tol_(tail_tol), m_(m), hard_cap_(hard_cap),
      tail_mass_(tail_mass) {}

SzaszContext SzaszContext::with_truncation(unsigned n, double x_max, double tail_tol,
                                           std::size_t m, std::size_t hard_cap) {
  const SzaszContext base(n, x_max, tail_tol, hard_cap);
  if (m < base.m_) {
    std::ostringstream msg;
    msg << "SzaszContext: truncation M = " << m << " leaves Poisson tail mass "
        << poisson_tail_mass(n * x_max, m) << " >= tail_tol " << tail_tol
        << " (smallest valid M is " << base.m_ << ")";
    throw DomainError(msg.str());
  }
  return SzaszContext(n, x_max, tail_tol, m, hard_cap, poisson_tail_mass(n * x_max, m));
}

void SzaszContext::check_domain(double x) const {
  if (!(x >= 0.0 && x <= x_max_)) {
    std::ostringstream msg;
    msg << "Szasz evaluation point x = " << x << " is outside [0, " << x_max_ << "]";
    throw DomainError(msg.str());
  }
}

double SzaszContext::truncation_defect(double x) const {
  check_domain(x);
  const auto w = poisson_weights(n_ * x, m_ + 1);
  double s = 0.0;
  for (double v : w) s += v;
  return 1.0 - s;
}

std::vector<std::size_t> SzaszContext::iteration_levels(unsigned k) const {
  if (k == 0) throw DomainError("Szasz iteration order k must be >= 1");
  std::vector<std::size_t> levels{m_};
  for (unsigned l = 1; l < k; ++l) {
    const auto prev = levels.back();
    levels.push_back(poisson_truncation_index(static_cast<double>(prev), tail_tol_, prev));
  }
  if (levels.back() > hard_cap_) {
    std::ostringstream msg;
    msg << "Szasz iteration needs " << levels.back() + 1 << " nodes, above the hard cap "
        << hard_cap_;
    throw ResourceError(msg.str());
  }
  return levels;
}

std::vector<double> szasz_node_samples(const RealFunction& fn, unsigned n, std::size_t count) {
  std::vector<double> v(count);
  for (std::size_t i = 0; i < count; ++i) {
    const double x = static_cast<double>(i) / n;
    v[i] = fn(x);
    if (!std::isfinite(v[i])) {
      std::ostringstream msg;
      msg << "Szasz: function value at node " << i << " (x = " << x << ") is not finite";
      throw InputError(msg.str());
    }
  }
  return v;
}

double szasz_apply(const RealFunction& fn, const SzaszContext& ctx, double x) {
  ctx.check_domain(x);
  const auto f = szasz_node_samples(fn, ctx.n(), ctx.truncation() + 1);
  const auto w = poisson_weights(ctx.n() * x, f.size());
  double acc = 0.0;
  for (std::size_t i = 0; i < f.size(); ++i) acc += f[i] * w[i];
  return acc;
}

SzaszIterated::SzaszIterated(const RealFunction& fn, const SzaszContext& ctx, unsigned k)
    : ctx_(ctx) {
  const auto levels = ctx.iteration_levels(k);
  const std::size_t size = levels.back() + 1;
  working_size_ = size;
  const auto base = szasz_node_samples(fn, ctx.n(), size);
  coeffs_ = base;
  if (k > 1) {
    std::vector<Band> columns(size);
    const double cut = ctx.tail_tol() * kBandCutFactor;
    for (std::size_t j = 0; j < size; ++j)
      columns[j] = poisson_band(static_cast<double>(j), size - 1, cut);
    std::vector<double> next(size);
    for (unsigned step = 1; step < k; ++step) {
      for (std::size_t j = 0; j < size; ++j) {
        const auto& band = columns[j];
        double acc = 0.0;
        for (std::size_t r = 0; r < band.values.size(); ++r)
          acc += coeffs_[band.lo + r] * band.values[r];
        next[j] = coeffs_[j] - acc + base[j];
      }
      coeffs_.swap(next);
    }
  }
  coeffs_.resize(ctx.truncation() + 1);
}

double SzaszIterated::operator()(double x) const {
  ctx_.check_domain(x);
  const auto w = poisson_weights(ctx_.n() * x, coeffs_.size());
  double acc = 0.0;
  for (std::size_t i = 0; i < coeffs_.size(); ++i) acc += coeffs_[i] * w[i];
  return acc;
}

double szasz_iterated(const RealFunction& fn, const SzaszContext& ctx, unsigned k, double x) {
  ctx.check_domain(x);
  return SzaszIterated(fn, ctx, k)(x);
}

}  // namespace ibern
