#include "ibern/dense.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "ibern/errors.hpp"

namespace ibern {

SquareMatrix SquareMatrix::identity(std::size_t size) {
  SquareMatrix m(size);
  for (std::size_t i = 0; i < size; ++i) m(i, i) = 1.0;
  return m;
}

std::vector<double> SquareMatrix::left_multiply(std::span<const double> x) const {
  if (x.size() != size_) throw InputError("left_multiply: length mismatch");
  std::vector<double> out(size_, 0.0);
  for (std::size_t i = 0; i < size_; ++i) {
    const double xi = x[i];
    if (xi == 0.0) continue;
    const double* r = data_.data() + i * size_;
    for (std::size_t j = 0; j < size_; ++j) out[j] += xi * r[j];
  }
  return out;
}

std::vector<double> SquareMatrix::right_multiply(std::span<const double> x) const {
  if (x.size() != size_) throw InputError("right_multiply: length mismatch");
  std::vector<double> out(size_, 0.0);
  for (std::size_t i = 0; i < size_; ++i) {
    const double* r = data_.data() + i * size_;
    double acc = 0.0;
    for (std::size_t j = 0; j < size_; ++j) acc += r[j] * x[j];
    out[i] = acc;
  }
  return out;
}

SquareMatrix SquareMatrix::transposed() const {
  SquareMatrix t(size_);
  for (std::size_t i = 0; i < size_; ++i)
    for (std::size_t j = 0; j < size_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

SquareMatrix SquareMatrix::operator*(const SquareMatrix& rhs) const {
  if (rhs.size_ != size_) throw InputError("matrix product: size mismatch");
  SquareMatrix out(size_);
  for (std::size_t i = 0; i < size_; ++i)
    for (std::size_t l = 0; l < size_; ++l) {
      const double a = (*this)(i, l);
      if (a == 0.0) continue;
      for (std::size_t j = 0; j < size_; ++j) out(i, j) += a * rhs(l, j);
    }
  return out;
}

double SquareMatrix::norm_1() const noexcept {
  double best = 0.0;
  for (std::size_t j = 0; j < size_; ++j) {
    double s = 0.0;
    for (std::size_t i = 0; i < size_; ++i) s += std::abs((*this)(i, j));
    best = std::max(best, s);
  }
  return best;
}

double SquareMatrix::norm_inf() const noexcept {
  double best = 0.0;
  for (std::size_t i = 0; i < size_; ++i) {
    double s = 0.0;
    for (double v : row(i)) s += std::abs(v);
    best = std::max(best, s);
  }
  return best;
}

LuFactorization::LuFactorization(SquareMatrix a)
    : lu_(std::move(a)), perm_(lu_.size()), norm_1_(lu_.norm_1()) {
  const std::size_t n = lu_.size();
  for (std::size_t i = 0; i < n; ++i) perm_[i] = i;

  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    double best = std::abs(lu_(col, col));
    for (std::size_t r = col + 1; r < n; ++r) {
      const double v = std::abs(lu_(r, col));
      if (v > best) {
        best = v;
        pivot = r;
      }
    }
    if (best == 0.0) {
      std::ostringstream msg;
      msg << "matrix is singular (zero pivot in column " << col << ")";
      throw ConditioningError(msg.str(), HUGE_VAL);
    }
    if (pivot != col) {
      for (std::size_t j = 0; j < n; ++j) std::swap(lu_(col, j), lu_(pivot, j));
      std::swap(perm_[col], perm_[pivot]);
    }
    const double inv = 1.0 / lu_(col, col);
    for (std::size_t r = col + 1; r < n; ++r) {
      const double factor = lu_(r, col) * inv;
      lu_(r, col) = factor;
      if (factor == 0.0) continue;
      for (std::size_t j = col + 1; j < n; ++j) lu_(r, j) -= factor * lu_(col, j);
    }
  }
}

std::vector<double> LuFactorization::solve(std::span<const double> b) const {
  const std::size_t n = lu_.size();
  if (b.size() != n) throw InputError("LU solve: length mismatch");
  std::vector<double> x(n);
  for (std::size_t i = 0; i < n; ++i) {
    double acc = b[perm_[i]];
    for (std::size_t j = 0; j < i; ++j) acc -= lu_(i, j) * x[j];
    x[i] = acc;
  }
  for (std::size_t i = n; i-- > 0;) {
    double acc = x[i];
    for (std::size_t j = i + 1; j < n; ++j) acc -= lu_(i, j) * x[j];
    x[i] = acc / lu_(i, i);
  }
  return x;
}

double LuFactorization::condition_1() const {
  const std::size_t n = lu_.size();
  double inv_norm = 0.0;
  std::vector<double> e(n, 0.0);
  for (std::size_t j = 0; j < n; ++j) {
    e[j] = 1.0;
    const auto col = solve(e);
    e[j] = 0.0;
    double s = 0.0;
    for (double v : col) s += std::abs(v);
    inv_norm = std::max(inv_norm, s);
  }
  return norm_1_ * inv_norm;
}

double max_abs_difference(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) throw InputError("max_abs_difference: length mismatch");
  double best = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) best = std::max(best, std::abs(a[i] - b[i]));
  return best;
}

}  // namespace ibern
