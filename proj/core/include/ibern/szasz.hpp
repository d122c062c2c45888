#pragma once

#include <cmath>
#include <concepts>
#include <cstddef>
#include <functional>
#include <sstream>
#include <vector>

#include "ibern/errors.hpp"

namespace ibern {

/// P_ni(x) = exp(-nx) (nx)^i / i!, accurate to a few ulp for any mean.
/// Throws DomainError for x < 0.
[[nodiscard]] double poisson_basis(unsigned n, unsigned i, double x);

/// Smallest M >= lower_bound with sum_{i > M} Poisson(mean)(i) < tail_tol,
/// found by direct summation of the tail.
[[nodiscard]] std::size_t poisson_truncation_index(double mean, double tail_tol,
                                                   std::size_t lower_bound = 0);

/// Mass of Poisson(mean) strictly above M, by direct summation.
[[nodiscard]] double poisson_tail_mass(double mean, std::size_t m);

inline constexpr double kDefaultSzaszXMax = 8.0;
inline constexpr double kDefaultSzaszTailTol = 1e-12;
inline constexpr std::size_t kDefaultSzaszHardCap = 50'000;

/// Truncation state for the Szasz-Mirakyan operator on [0, x_max].
///
/// M is the largest sample index used when evaluating the operator. The
/// Poisson(n x_max) mass beyond M is below tail_tol, so for |f| <= C on the
/// nodes the dropped part of the series is at most tail_tol * C.
class SzaszContext {
 public:
  /// Derives M from the tail condition. Throws ResourceError when M exceeds
  /// hard_cap, and DomainError for n = 0,
  /// x_max <= 0, or tail_tol outside (0, 1e-6].
  SzaszContext(unsigned n, double x_max = kDefaultSzaszXMax,
               double tail_tol = kDefaultSzaszTailTol,
               std::size_t hard_cap = kDefaultSzaszHardCap);

  /// Uses the given M after checking it satisfies the tail condition.
  [[nodiscard]] static SzaszContext with_truncation(unsigned n, double x_max, double tail_tol,
                                                    std::size_t m,
                                                    std::size_t hard_cap = kDefaultSzaszHardCap);

  [[nodiscard]] unsigned n() const noexcept { return n_; }
  [[nodiscard]] double x_max() const noexcept { return x_max_; }
  [[nodiscard]] double tail_tol() const noexcept { return tail_tol_; }
  [[nodiscard]] std::size_t truncation() const noexcept { return m_; }
  [[nodiscard]] std::size_t hard_cap() const noexcept { return hard_cap_; }
  /// Poisson(n x_max) mass beyond M.
  [[nodiscard]] double tail_mass() const noexcept { return tail_mass_; }

  /// 1 - sum_{i <= M} P_ni(x): the basis mass lost to truncation at x.
  [[nodiscard]] double truncation_defect(double x) const;

  /// Index sets for k-fold iteration. Level 0 is M; level l+1 is the
  /// truncation index for a Poisson mean equal to level l, so columns up to
  /// level l of the operator matrix keep all but tail_tol of their mass.
  /// Returns k entries. Throws ResourceError past the hard cap.
  [[nodiscard]] std::vector<std::size_t> iteration_levels(unsigned k) const;

  /// Throws DomainError unless 0 <= x <= x_max.
  void check_domain(double x) const;

 private:
  SzaszContext(unsigned n, double x_max, double tail_tol, std::size_t m, std::size_t hard_cap,
               double tail_mass);

  unsigned n_;
  double x_max_;
  double tail_tol_;
  std::size_t m_;
  std::size_t hard_cap_;
  double tail_mass_;
};

using RealFunction = std::function<double(double)>;

/// f(i/n) for i = 0..count-1; InputError on the first non-finite value.
[[nodiscard]] std::vector<double> szasz_node_samples(const RealFunction& fn, unsigned n,
                                                     std::size_t count);

/// sum_{i=0}^{M} fn(i/n) P_ni(x).
[[nodiscard]] double szasz_apply(const RealFunction& fn, const SzaszContext& ctx, double x);

/// The k-th iterated Szasz-Mirakyan approximant, precomputed for repeated
/// evaluation.
///
/// Works on a finite surrogate: node samples f(i/n) for i up to the last
/// iteration level L, the matrix P_ni(j/n) for i, j <= L, and the
/// coefficient recurrence F <- F (I - S) + F1. After k - 1 steps entries
/// i <= M are accurate to the tail tolerance; evaluation sums those only.
class SzaszIterated {
 public:
  SzaszIterated(const RealFunction& fn, const SzaszContext& ctx, unsigned k);

  [[nodiscard]] double operator()(double x) const;

  [[nodiscard]] const std::vector<double>& coefficients() const noexcept { return coeffs_; }
  /// Size of the index set the recurrence ran on (L + 1).
  [[nodiscard]] std::size_t working_size() const noexcept { return working_size_; }

 private:
  SzaszContext ctx_;
  std::vector<double> coeffs_;
  std::size_t working_size_;
};

[[nodiscard]] double szasz_iterated(const RealFunction& fn, const SzaszContext& ctx, unsigned k,
                                    double x);

}  // namespace ibern
