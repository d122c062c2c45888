#include "ibern/qbernstein.hpp"

#include <cmath>
#include <sstream>

#include "ibern/bernstein.hpp"
#include "ibern/errors.hpp"
#include "ibern/iterated.hpp"

namespace ibern {
namespace {

void check_q(double q, const char* what) {
  if (!(q > 0.0) || !std::isfinite(q)) {
    std::ostringstream msg;
    msg << what << ": q = " << q << " must be positive";
    throw DomainError(msg.str());
  }
}

bool near_one(double q) { return std::abs(q - 1.0) < kQOneGuard; }

}  // namespace

double q_number(double x, double q) {
  check_q(q, "q_number");
  if (near_one(q)) return x;
  // expm1 keeps full relative accuracy as q approaches the guard band.
  const double lq = std::log(q);
  return std::expm1(x * lq) / std::expm1(lq);
}

double q_binomial(unsigned n, int r, double q) {
  check_q(q, "q_binomial");
  if (r < 0 || static_cast<unsigned>(r) > n) return 0.0;
  if (r == 0) return 1.0;
  const auto ur = static_cast<unsigned>(r);
  if (near_one(q)) return binomial(n, ur);
  double acc = 1.0;
  for (unsigned i = 0; i < ur; ++i) {
    const double base = std::pow(q, static_cast<double>(ur - i));
    acc *= q_number(static_cast<double>(n - i) / static_cast<double>(ur - i), base);
  }
  return acc;
}

QContext::QContext(double q, unsigned n) : q_(q), n_(n), classical_(near_one(q)) {
  check_q(q, "QContext");
  if (q > kMaxQ) {
    std::ostringstream msg;
    msg << "QContext: q = " << q << " is above the supported maximum " << kMaxQ;
    throw DomainError(msg.str());
  }
  if (n == 0) throw DomainError("QContext: degree n must be >= 1");
  nodes_.resize(n + 1);
  binomials_.resize(n + 1);
  const double denom = q_number(n, q);
  for (unsigned i = 0; i <= n; ++i) {
    nodes_[i] = classical_ ? static_cast<double>(i) / n : q_number(i, q) / denom;
    binomials_[i] = q_binomial(n, static_cast<int>(i), q);
  }
  nodes_[0] = 0.0;
  nodes_[n] = 1.0;
}

std::vector<double> QContext::basis_vector(double t) const {
  check_unit_interval(t, "q_basis");
  std::vector<double> out(n_ + 1);
  // suffix[m] = prod_{j=1}^{m} (1 - t q^(j-1)).
  std::vector<double> suffix(n_ + 1);
  suffix[0] = 1.0;
  double qp = 1.0;
  for (unsigned m = 1; m <= n_; ++m) {
    suffix[m] = suffix[m - 1] * (1.0 - t * qp);
    qp *= q_;
  }
  double tp = 1.0;
  for (unsigned i = 0; i <= n_; ++i) {
    out[i] = binomials_[i] * tp * suffix[n_ - i];
    tp *= t;
  }
  return out;
}

double QContext::amplification(double t) const {
  double acc = 0.0;
  for (double b : basis_vector(t)) acc += std::abs(b);
  return acc;
}

SquareMatrix QContext::operator_matrix() const {
  SquareMatrix m(n_ + 1);
  for (unsigned j = 0; j <= n_; ++j) {
    const auto col = basis_vector(nodes_[j]);
    for (unsigned i = 0; i <= n_; ++i) m(i, j) = col[i];
  }
  return m;
}

double q_basis(const QContext& ctx, unsigned i, double t) {
  if (i > ctx.degree()) {
    std::ostringstream msg;
    msg << "q_basis: index " << i << " exceeds degree " << ctx.degree();
    throw DomainError(msg.str());
  }
  return ctx.basis_vector(t)[i];
}

double q_apply(const QContext& ctx, std::span<const double> node_values, double t) {
  if (node_values.size() != ctx.degree() + 1) {
    std::ostringstream msg;
    msg << "q_apply: expected " << ctx.degree() + 1 << " node values, got " << node_values.size();
    throw InputError(msg.str());
  }
  const auto b = ctx.basis_vector(t);
  double acc = 0.0;
  for (std::size_t i = 0; i < b.size(); ++i) acc += node_values[i] * b[i];
  return acc;
}

QIterated::QIterated(const QContext& ctx, std::span<const double> node_values, unsigned k)
    : ctx_(ctx) {
  if (node_values.size() != ctx.degree() + 1) {
    std::ostringstream msg;
    msg << "q_iterated: expected " << ctx.degree() + 1 << " node values, got "
        << node_values.size();
    throw InputError(msg.str());
  }
  if (k == 0) throw DomainError("q_iterated: k must be >= 1");
  if (k == 1) {
    coeffs_.assign(node_values.begin(), node_values.end());
  } else {
    coeffs_ = iterate_node_coefficients(node_values, ctx.operator_matrix(), k);
  }
}

double QIterated::operator()(double t) const { return q_apply(ctx_, coeffs_, t); }

double q_iterated(const QContext& ctx, std::span<const double> node_values, unsigned k,
                  double t) {
  check_unit_interval(t, "q_iterated");
  return QIterated(ctx, node_values, k)(t);
}

}  // namespace ibern
