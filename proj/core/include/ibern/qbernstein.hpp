#pragma once

#include <span>
#include <vector>

#include "ibern/dense.hpp"

namespace ibern {

/// |q - 1| below this is treated as q = 1.
inline constexpr double kQOneGuard = 1e-12;
/// Supported q range is (0, kMaxQ].
inline constexpr double kMaxQ = 1.5;
/// Above this q the approximation near t = 1 degrades quickly.
inline constexpr double kRecommendedMaxQ = 1.3;

/// [x]_q = (1 - q^x) / (1 - q), and x itself at q = 1.
/// Throws DomainError for q <= 0.
[[nodiscard]] double q_number(double x, double q);

/// Gaussian binomial: 1 at r = 0, 0 outside [0, n], otherwise the product
/// prod_{i<r} [(n-i)/(r-i)]_{q^(r-i)}. Throws DomainError for q <= 0.
[[nodiscard]] double q_binomial(unsigned n, int r, double q);

/// q, degree n and the nodes t_i = [i]_q / [n]_q.
///
/// For 0 < q < 1 the basis and operator evaluate fine, but the q-Bernstein
/// operator then does not converge to f as n grows.
class QContext {
 public:
  /// Throws DomainError for n = 0 or q outside (0, kMaxQ].
  QContext(double q, unsigned n);

  [[nodiscard]] double q() const noexcept { return q_; }
  [[nodiscard]] unsigned degree() const noexcept { return n_; }
  [[nodiscard]] std::span<const double> nodes() const noexcept { return nodes_; }
  [[nodiscard]] bool classical() const noexcept { return classical_; }
  [[nodiscard]] bool above_recommended_q() const noexcept { return q_ > kRecommendedMaxQ; }

  /// Q_{n0}(t) .. Q_{nn}(t); throws DomainError for t outside [0, 1].
  [[nodiscard]] std::vector<double> basis_vector(double t) const;

  /// sum_i |Q_ni(t)|: the factor by which errors in the node values can be
  /// amplified at t. Equals 1 for q <= 1; for q > 1 it grows quickly with n
  /// near t = 1 (about 3e11 at q = 1.2, n = 20, t = 0.9).
  [[nodiscard]] double amplification(double t) const;
  /// Entries (i, j) = Q_ni(t_j).
  [[nodiscard]] SquareMatrix operator_matrix() const;

 private:
  double q_;
  unsigned n_;
  bool classical_;
  std::vector<double> nodes_;
  std::vector<double> binomials_;
};

/// Q_ni(t) = [n choose i]_q t^i prod_{j=1}^{n-i} (1 - t q^(j-1)).
[[nodiscard]] double q_basis(const QContext& ctx, unsigned i, double t);

/// sum_i node_values[i] Q_ni(t); node_values[i] must be f(t_i).
/// Throws InputError on length mismatch.
[[nodiscard]] double q_apply(const QContext& ctx, std::span<const double> node_values, double t);

/// The k-th iterated q-Bernstein polynomial, coefficients computed once.
class QIterated {
 public:
  QIterated(const QContext& ctx, std::span<const double> node_values, unsigned k);

  [[nodiscard]] double operator()(double t) const;
  [[nodiscard]] const std::vector<double>& coefficients() const noexcept { return coeffs_; }

 private:
  QContext ctx_;
  std::vector<double> coeffs_;
};

[[nodiscard]] double q_iterated(const QContext& ctx, std::span<const double> node_values,
                                unsigned k, double t);

}  // namespace ibern
