#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace ibern {

/// Dense square matrix, row-major.
class SquareMatrix {
 public:
  SquareMatrix() = default;
  explicit SquareMatrix(std::size_t size, double fill = 0.0)
      : size_(size), data_(size * size, fill) {}

  [[nodiscard]] static SquareMatrix identity(std::size_t size);

  [[nodiscard]] std::size_t size() const noexcept { return size_; }

  double& operator()(std::size_t i, std::size_t j) noexcept {
    return data_[i * size_ + j];
  }
  double operator()(std::size_t i, std::size_t j) const noexcept {
    return data_[i * size_ + j];
  }

  [[nodiscard]] std::span<const double> row(std::size_t i) const noexcept {
    return {data_.data() + i * size_, size_};
  }

  /// Row vector times matrix: (x A)_j = sum_i x_i a_ij.
  [[nodiscard]] std::vector<double> left_multiply(std::span<const double> x) const;
  /// Matrix times column vector.
  [[nodiscard]] std::vector<double> right_multiply(std::span<const double> x) const;

  [[nodiscard]] SquareMatrix transposed() const;
  [[nodiscard]] SquareMatrix operator*(const SquareMatrix& rhs) const;

  [[nodiscard]] double norm_1() const noexcept;
  [[nodiscard]] double norm_inf() const noexcept;

 private:
  std::size_t size_ = 0;
  std::vector<double> data_;
};

/// LU factorization with partial (row) pivoting, P A = L U.
///
/// Throws ConditioningError if a pivot is exactly zero.
class LuFactorization {
 public:
  explicit LuFactorization(SquareMatrix a);

  [[nodiscard]] std::size_t size() const noexcept { return lu_.size(); }

  /// Solves A x = b.
  [[nodiscard]] std::vector<double> solve(std::span<const double> b) const;

  /// 1-norm condition number ||A||_1 ||A^-1||_1. The inverse norm is
  /// obtained column by column from solves against unit vectors.
  [[nodiscard]] double condition_1() const;

 private:
  SquareMatrix lu_;
  std::vector<std::size_t> perm_;
  double norm_1_ = 0.0;
};

[[nodiscard]] double max_abs_difference(std::span<const double> a,
                                        std::span<const double> b);

}  // namespace ibern
