// dseries.hpp
//
// Exact formal Dirichlet series arithmetic: integer coefficient tables
// a_1..a_nmax for series sum a_n n^-s, Dirichlet convolution, and the
// coefficient-mismatch search used by the identity checks. Everything in
// here is exact integer arithmetic; no rounding ever occurs.

#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "numlab/hiprec.hpp"

namespace numlab {

// Coefficient table, 1-indexed: coeff(n) is the coefficient of n^-s.
class DirichletCoeffs {
 public:
  explicit DirichletCoeffs(std::int64_t n_max)
      : a_(static_cast<std::size_t>(n_max) + 1, mpz_class(0)) {
    if (n_max < 1) throw std::domain_error("DirichletCoeffs: n_max must be >= 1");
  }

  std::int64_t n_max() const { return static_cast<std::int64_t>(a_.size()) - 1; }

  const mpz_class& coeff(std::int64_t n) const { return a_.at(static_cast<std::size_t>(n)); }
  mpz_class& coeff(std::int64_t n) { return a_.at(static_cast<std::size_t>(n)); }

  friend bool operator==(const DirichletCoeffs& x, const DirichletCoeffs& y) {
    return x.a_ == y.a_;
  }

 private:
  std::vector<mpz_class> a_;
};

// Identity for Dirichlet convolution: a_1 = 1, all other a_n = 0.
inline DirichletCoeffs series_unit(std::int64_t n_max) {
  DirichletCoeffs u(n_max);
  u.coeff(1) = 1;
  return u;
}

// Coefficients of 2/zeta(s): a_n = 2 mu(n), since 1/zeta(s) = sum mu(n) n^-s.
inline DirichletCoeffs series_two_over_zeta(std::int64_t n_max) {
  DirichletCoeffs t(n_max);
  for (std::int64_t n = 1; n <= n_max; ++n)
    t.coeff(n) = 2 * mobius(static_cast<std::uint64_t>(n));
  return t;
}

// stride 1: coefficients of P(s)  (a_n = 1 iff n prime)
// stride 2: coefficients of P(2s) (a_n = 1 iff n = p^2, from n^-s = p^-2s)
inline DirichletCoeffs series_prime_indicator(std::int64_t n_max, int stride) {
  if (stride != 1 && stride != 2)
    throw std::domain_error("series_prime_indicator: stride must be 1 or 2");
  DirichletCoeffs t(n_max);
  const auto primes = primes_up_to(static_cast<std::uint64_t>(n_max));
  for (std::uint64_t p : primes) {
    if (stride == 1) {
      t.coeff(static_cast<std::int64_t>(p)) = 1;
    } else if (p * p <= static_cast<std::uint64_t>(n_max)) {
      t.coeff(static_cast<std::int64_t>(p * p)) = 1;
    }
  }
  return t;
}

// Dirichlet convolution: c_n = sum_{d|n} a_d b_{n/d}, exact.
inline DirichletCoeffs convolve(const DirichletCoeffs& a, const DirichletCoeffs& b) {
  if (a.n_max() != b.n_max())
    throw std::invalid_argument("convolve: n_max mismatch");
  const std::int64_t n_max = a.n_max();
  DirichletCoeffs c(n_max);
  for (std::int64_t d = 1; d <= n_max; ++d) {
    if (a.coeff(d) == 0) continue;
    for (std::int64_t m = 1; d * m <= n_max; ++m) {
      if (b.coeff(m) == 0) continue;
      c.coeff(d * m) += a.coeff(d) * b.coeff(m);
    }
  }
  return c;
}

// Coefficientwise integer combination; the constant lands on a_1
// (the constant function c of s is c * 1^-s).
inline DirichletCoeffs linear_combine(
    const std::vector<std::pair<long, const DirichletCoeffs*>>& terms, long constant) {
  if (terms.empty()) throw std::invalid_argument("linear_combine: no terms");
  const std::int64_t n_max = terms.front().second->n_max();
  for (const auto& [scale, table] : terms)
    if (table->n_max() != n_max)
      throw std::invalid_argument("linear_combine: n_max mismatch");
  DirichletCoeffs out(n_max);
  out.coeff(1) = constant;
  for (const auto& [scale, table] : terms)
    for (std::int64_t n = 1; n <= n_max; ++n)
      out.coeff(n) += scale * table->coeff(n);
  return out;
}

struct CoeffMismatch {
  std::int64_t index;
  mpz_class lhs;
  mpz_class rhs;
};

// Smallest n with a_n != b_n, or nullopt if the tables agree everywhere.
inline std::optional<CoeffMismatch> first_mismatch(const DirichletCoeffs& a,
                                                   const DirichletCoeffs& b) {
  if (a.n_max() != b.n_max())
    throw std::invalid_argument("first_mismatch: n_max mismatch");
  for (std::int64_t n = 1; n <= a.n_max(); ++n)
    if (a.coeff(n) != b.coeff(n))
      return CoeffMismatch{n, a.coeff(n), b.coeff(n)};
  return std::nullopt;
}

}  // namespace numlab
