#include <doctest.h>

#include <cmath>
#include <limits>
#include <random>

#include "ibern/errors.hpp"
#include "ibern/iterated.hpp"
#include "ibern/qbernstein.hpp"
#include "oracles.hpp"

using namespace ibern;

TEST_CASE("q-numbers") {
  CHECK(q_number(0.0, 1.7) == 0.0);
  CHECK(q_number(4.5, 1.0) == 4.5);
  CHECK(q_number(3.0, 2.0) == doctest::Approx(7.0).epsilon(1e-15));
  CHECK(q_number(3.0, 1.0 + 1e-13) == 3.0);
  // Just outside the guard band the value is continuous in q.
  CHECK(q_number(3.0, 1.0 + 1e-11) == doctest::Approx(3.0).epsilon(1e-9));
  CHECK(q_number(5.0, 0.5) == doctest::Approx(1.9375).epsilon(1e-15));
  CHECK_THROWS_AS((void)q_number(2.0, 0.0), DomainError);
  CHECK_THROWS_AS((void)q_number(2.0, -1.0), DomainError);
}

TEST_CASE("q-binomials") {
  CHECK(q_binomial(4, 2, 2.0) == doctest::Approx(35.0).epsilon(1e-14));
  CHECK(q_binomial(4, 5, 2.0) == 0.0);
  CHECK(q_binomial(4, -1, 2.0) == 0.0);
  CHECK(q_binomial(4, 0, 2.0) == 1.0);
  for (unsigned n = 0; n <= 20; ++n)
    for (unsigned r = 0; r <= n; ++r) {
      CHECK(q_binomial(n, static_cast<int>(r), 1.0) == binomial(n, r));
      for (double q : {0.5, 0.9, 1.1, 1.3})
        CHECK(q_binomial(n, static_cast<int>(r), q) ==
              doctest::Approx(oracle::q_binomial_quotient(n, r, q)).epsilon(1e-11));
    }
  CHECK_THROWS_AS((void)q_binomial(3, 1, 0.0), DomainError);
}

TEST_CASE("context validation and nodes") {
  CHECK_THROWS_AS(QContext(0.0, 5), DomainError);
  CHECK_THROWS_AS(QContext(1.6, 5), DomainError);
  CHECK_THROWS_AS(QContext(1.1, 0), DomainError);
  CHECK(QContext(1.0, 4).classical());
  CHECK(QContext(1.4, 4).above_recommended_q());
  CHECK_FALSE(QContext(1.2, 4).above_recommended_q());
  for (double q : {1.05, 1.1, 1.5})
    for (unsigned n = 2; n <= 20; ++n) {
      const QContext ctx(q, n);
      const auto nodes = ctx.nodes();
      CHECK(nodes[0] == 0.0);
      CHECK(nodes[n] == 1.0);
      for (unsigned i = 1; i < n; ++i) {
        REQUIRE(nodes[i] < static_cast<double>(i) / n);
        REQUIRE(nodes[i] > nodes[i - 1]);
      }
    }
}

TEST_CASE("q-basis") {
  const QContext ctx(1.2, 6);
  CHECK(q_basis(ctx, 0, 0.0) == 1.0);
  for (unsigned i = 1; i <= 6; ++i) CHECK(q_basis(ctx, i, 0.0) == 0.0);
  CHECK_THROWS_AS((void)q_basis(ctx, 7, 0.5), DomainError);
  CHECK_THROWS_AS((void)q_basis(ctx, 1, 1.5), DomainError);
  // Partition of unity holds for every q.
  for (double t : {0.1, 0.5, 0.95}) {
    double sum = 0.0;
    for (double b : ctx.basis_vector(t)) sum += b;
    CHECK(sum == doctest::Approx(1.0).epsilon(1e-13));
  }
  // Direct product formula.
  const double t = 0.3;
  const unsigned i = 2;
  double want = oracle::q_binomial_quotient(6, i, 1.2) * std::pow(t, i);
  for (unsigned j = 1; j <= 6 - i; ++j) want *= 1.0 - t * std::pow(1.2, j - 1.0);
  CHECK(q_basis(ctx, i, t) == doctest::Approx(want).epsilon(1e-13));
}

TEST_CASE("q = 1 reduces to the classical operators") {
  std::mt19937_64 rng(31);
  for (unsigned n = 1; n <= 20; ++n) {
    const QContext ctx(1.0, n);
    const auto v = oracle::random_vector(rng, n + 1);
    const UniformSamples s(v);
    for (double t : {0.0, 0.21, 0.5, 0.87, 1.0}) {
      for (unsigned i = 0; i <= n; ++i) REQUIRE(std::abs(q_basis(ctx, i, t) - basis_eval(n, i, t)) < 1e-12);
      REQUIRE(std::abs(q_apply(ctx, v, t) - bernstein_apply(s, t)) < 1e-13);
      for (unsigned k : {1u, 2u, 4u})
        REQUIRE(std::abs(q_iterated(ctx, v, k, t) - eval_iterated(iterate_coefficients(s, k), t)) < 1e-12);
    }
  }
}

TEST_CASE("q-operators preserve constants and linear functions") {
  const QContext ctx8(1.2, 8);
  const std::vector<double> c(9, -1.25);
  const std::vector<double> x(ctx8.nodes().begin(), ctx8.nodes().end());
  for (int j = 0; j <= 50; ++j) {
    const double t = j / 50.0;
    CHECK(q_apply(ctx8, c, t) == doctest::Approx(-1.25).epsilon(1e-13));
    CHECK(std::abs(q_apply(ctx8, x, t) - t) < 1e-13);
  }
}

TEST_CASE("q-iterates preserve linear functions up to the basis amplification") {
  constexpr double eps = std::numeric_limits<double>::epsilon();
  for (double q : {1.05, 1.1, 1.2})
    for (unsigned n = 1; n <= 20; ++n) {
      const QContext ctx(q, n);
      std::vector<double> lin(n + 1);
      for (unsigned i = 0; i <= n; ++i) lin[i] = 0.5 - 2.0 * ctx.nodes()[i];
      double amplification = 0.0;
      for (int j = 0; j <= 20; ++j) amplification = std::max(amplification, ctx.amplification(j / 20.0));
      // Rounding of the node values alone moves the result by up to
      // ~eps * amplification; 1e-10 is reachable only while that stays small.
      const double noise = 1.5 * eps * amplification;
      for (unsigned k = 1; k <= 4; ++k) {
        const QIterated it(ctx, lin, k);
        const double tol = noise < 1e-11 ? 1e-10 : 100.0 * k * noise;
        for (int j = 0; j <= 20; ++j) {
          const double t = j / 20.0;
          REQUIRE(std::abs(it(t) - (0.5 - 2.0 * t)) < tol);
        }
      }
      if (q <= 1.1 || n <= 10) CHECK(noise < 1e-11);
    }
}

TEST_CASE("amplification") {
  CHECK(QContext(1.0, 10).amplification(0.7) == doctest::Approx(1.0));
  CHECK(QContext(0.8, 10).amplification(0.7) == doctest::Approx(1.0));
  CHECK(QContext(1.2, 20).amplification(0.9) > 1e11);
}

TEST_CASE("q-iterated basics and errors") {
  const QContext ctx(1.1, 5);
  std::vector<double> v(6);
  for (unsigned i = 0; i <= 5; ++i) v[i] = std::sin(2 * M_PI * ctx.nodes()[i]);
  CHECK(q_iterated(ctx, v, 1, 0.4) == doctest::Approx(q_apply(ctx, v, 0.4)).epsilon(1e-15));
  CHECK(q_iterated(ctx, v, 3, 0.0) == doctest::Approx(v[0]));
  CHECK(q_iterated(ctx, v, 3, 1.0) == doctest::Approx(v[5]));
  CHECK_THROWS_AS((void)q_apply(ctx, std::vector<double>(4, 0.0), 0.5), InputError);
  CHECK_THROWS_AS(QIterated(ctx, std::vector<double>(7, 0.0), 2), InputError);
  CHECK_THROWS_AS(QIterated(ctx, v, 0), DomainError);
}

TEST_CASE("q = 1.1 improves sin(2 pi t) away from the right end") {
  const unsigned n = 30;
  const QContext ctx(1.1, n);
  const auto f = [](double t) { return std::sin(2 * M_PI * t); };
  std::vector<double> v(n + 1);
  for (unsigned i = 0; i <= n; ++i) v[i] = f(ctx.nodes()[i]);
  const auto s = UniformSamples::from_function(f, n);
  double classical = 0.0;
  double q1 = 0.0;
  double q3 = 0.0;
  const QIterated it1(ctx, v, 1);
  const QIterated it3(ctx, v, 3);
  for (int j = 0; j <= 900; ++j) {
    const double t = j / 1000.0;
    classical = std::max(classical, std::abs(bernstein_apply(s, t) - f(t)));
    q1 = std::max(q1, std::abs(it1(t) - f(t)));
    q3 = std::max(q3, std::abs(it3(t) - f(t)));
  }
  CHECK(q1 < classical);
  CHECK(q3 < classical);
}
