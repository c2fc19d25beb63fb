// hiprec.hpp
//
// Precision management and the special functions every identity check in
// this library leans on:
//
//   - PrecisionContext / HiReal : MPFR-backed reals carrying a requested
//     decimal-digit guarantee plus guard digits.
//   - Rational                  : exact GMP rationals (Bernoulli numbers).
//   - mobius, primes_up_to      : elementary number-theoretic helpers.
//   - bernoulli                 : exact B_n from the defining recurrence.
//   - zeta_even                 : zeta(2k) via Euler's formula.
//   - zeta_real                 : zeta(s), real s > 1, Euler-Maclaurin with
//                                 a certified truncation bound.
//   - prime_zeta                : P(s) = sum mu(k)/k log zeta(ks), with a
//                                 certified geometric tail.
//
// All functions are pure: results depend only on the context and the
// arguments, and contexts are immutable after construction.

#pragma once

#include <gmpxx.h>
#include <mpfr.h>

#include <cstdint>
#include <mutex>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace numlab {

inline constexpr const char* kVersion = "1.0.0";

// Raised when a computation detects that the working precision cannot
// certify the quantity it was asked for (distinct from domain errors).
class PrecisionError : public std::runtime_error {
 public:
  explicit PrecisionError(const std::string& what) : std::runtime_error(what) {}
};

// ---------------------------------------------------------------------------
// PrecisionContext
// ---------------------------------------------------------------------------

class PrecisionContext {
 public:
  PrecisionContext(long decimal_digits, long guard_digits)
      : decimal_digits_(decimal_digits), guard_digits_(guard_digits) {
    if (decimal_digits < 10)
      throw std::domain_error("PrecisionContext: decimal_digits must be >= 10");
    if (guard_digits < 1)
      throw std::domain_error("PrecisionContext: guard_digits must be >= 1");
  }

  long decimal_digits() const { return decimal_digits_; }
  long guard_digits() const { return guard_digits_; }

  // Working precision in bits: all requested + guard digits, plus slack so
  // that rounding stays well below the guard band.
  mpfr_prec_t work_bits() const {
    const double log2_10 = 3.3219280948873623;
    return static_cast<mpfr_prec_t>(
               (double)(decimal_digits_ + guard_digits_) * log2_10) +
           32;
  }

  // Series tails are truncated below this absolute threshold.
  long target_digits() const { return decimal_digits_ + guard_digits_; }

 private:
  long decimal_digits_;
  long guard_digits_;
};

inline PrecisionContext make_context(long decimal_digits) {
  return PrecisionContext(decimal_digits, 15);
}

// ---------------------------------------------------------------------------
// HiReal: RAII wrapper around mpfr_t with value semantics
// ---------------------------------------------------------------------------

class HiReal {
 public:
  HiReal() { mpfr_init2(v_, 64); }
  explicit HiReal(mpfr_prec_t bits) { mpfr_init2(v_, bits); }
  HiReal(const PrecisionContext& ctx, long value) {
    mpfr_init2(v_, ctx.work_bits());
    mpfr_set_si(v_, value, MPFR_RNDN);
  }
  ~HiReal() { mpfr_clear(v_); }

  HiReal(const HiReal& other) {
    mpfr_init2(v_, mpfr_get_prec(other.v_));
    mpfr_set(v_, other.v_, MPFR_RNDN);
  }
  HiReal(HiReal&& other) noexcept {
    mpfr_init2(v_, 64);
    mpfr_swap(v_, other.v_);
  }
  HiReal& operator=(const HiReal& other) {
    if (this != &other) {
      mpfr_set_prec(v_, mpfr_get_prec(other.v_));
      mpfr_set(v_, other.v_, MPFR_RNDN);
    }
    return *this;
  }
  HiReal& operator=(HiReal&& other) noexcept {
    mpfr_swap(v_, other.v_);
    return *this;
  }

  mpfr_prec_t precision() const { return mpfr_get_prec(v_); }
  mpfr_ptr raw() { return v_; }
  mpfr_srcptr raw() const { return v_; }

  double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }
  long to_long() const { return mpfr_get_si(v_, MPFR_RNDN); }
  bool is_nan() const { return mpfr_nan_p(v_) != 0; }
  int sign() const { return mpfr_sgn(v_); }

  // Scientific-notation string with the given number of significant digits.
  std::string str(long significant_digits) const {
    char* s = nullptr;
    mpfr_asprintf(&s, "%.*Re", (int)significant_digits - 1, v_);
    std::string out(s);
    mpfr_free_str(s);
    return out;
  }

  // -- arithmetic (result carries the larger operand precision) --

  friend HiReal operator+(const HiReal& a, const HiReal& b) {
    HiReal r(join(a, b));
    mpfr_add(r.v_, a.v_, b.v_, MPFR_RNDN);
    return r;
  }
  friend HiReal operator-(const HiReal& a, const HiReal& b) {
    HiReal r(join(a, b));
    mpfr_sub(r.v_, a.v_, b.v_, MPFR_RNDN);
    return r;
  }
  friend HiReal operator*(const HiReal& a, const HiReal& b) {
    HiReal r(join(a, b));
    mpfr_mul(r.v_, a.v_, b.v_, MPFR_RNDN);
    return r;
  }
  friend HiReal operator/(const HiReal& a, const HiReal& b) {
    HiReal r(join(a, b));
    mpfr_div(r.v_, a.v_, b.v_, MPFR_RNDN);
    return r;
  }
  friend HiReal operator+(const HiReal& a, long b) {
    HiReal r(a.precision());
    mpfr_add_si(r.v_, a.v_, b, MPFR_RNDN);
    return r;
  }
  friend HiReal operator-(const HiReal& a, long b) {
    HiReal r(a.precision());
    mpfr_sub_si(r.v_, a.v_, b, MPFR_RNDN);
    return r;
  }
  friend HiReal operator+(long a, const HiReal& b) { return b + a; }
  friend HiReal operator-(long a, const HiReal& b) {
    HiReal r(b.precision());
    mpfr_si_sub(r.v_, a, b.v_, MPFR_RNDN);
    return r;
  }
  friend HiReal operator*(const HiReal& a, long b) {
    HiReal r(a.precision());
    mpfr_mul_si(r.v_, a.v_, b, MPFR_RNDN);
    return r;
  }
  friend HiReal operator*(long a, const HiReal& b) { return b * a; }
  friend HiReal operator/(const HiReal& a, long b) {
    HiReal r(a.precision());
    mpfr_div_si(r.v_, a.v_, b, MPFR_RNDN);
    return r;
  }
  friend HiReal operator/(long a, const HiReal& b) {
    HiReal r(b.precision());
    mpfr_si_div(r.v_, a, b.v_, MPFR_RNDN);
    return r;
  }
  HiReal operator-() const {
    HiReal r(precision());
    mpfr_neg(r.v_, v_, MPFR_RNDN);
    return r;
  }
  HiReal& operator+=(const HiReal& o) { return *this = *this + o; }
  HiReal& operator-=(const HiReal& o) { return *this = *this - o; }
  HiReal& operator*=(const HiReal& o) { return *this = *this * o; }
  HiReal& operator/=(const HiReal& o) { return *this = *this / o; }

  friend bool operator==(const HiReal& a, const HiReal& b) { return mpfr_cmp(a.v_, b.v_) == 0; }
  friend bool operator!=(const HiReal& a, const HiReal& b) { return mpfr_cmp(a.v_, b.v_) != 0; }
  friend bool operator<(const HiReal& a, const HiReal& b) { return mpfr_cmp(a.v_, b.v_) < 0; }
  friend bool operator>(const HiReal& a, const HiReal& b) { return mpfr_cmp(a.v_, b.v_) > 0; }
  friend bool operator<=(const HiReal& a, const HiReal& b) { return mpfr_cmp(a.v_, b.v_) <= 0; }
  friend bool operator>=(const HiReal& a, const HiReal& b) { return mpfr_cmp(a.v_, b.v_) >= 0; }
  friend bool operator<(const HiReal& a, long b) { return mpfr_cmp_si(a.v_, b) < 0; }
  friend bool operator>(const HiReal& a, long b) { return mpfr_cmp_si(a.v_, b) > 0; }
  friend bool operator<=(const HiReal& a, long b) { return mpfr_cmp_si(a.v_, b) <= 0; }
  friend bool operator>=(const HiReal& a, long b) { return mpfr_cmp_si(a.v_, b) >= 0; }
  friend bool operator==(const HiReal& a, long b) { return mpfr_cmp_si(a.v_, b) == 0; }

  // -- elementary functions --

  friend HiReal sqrt(const HiReal& a) {
    HiReal r(a.precision());
    mpfr_sqrt(r.v_, a.v_, MPFR_RNDN);
    return r;
  }
  friend HiReal root4(const HiReal& a) {
    HiReal r(a.precision());
    mpfr_rootn_ui(r.v_, a.v_, 4, MPFR_RNDN);
    return r;
  }
  friend HiReal log(const HiReal& a) {
    HiReal r(a.precision());
    mpfr_log(r.v_, a.v_, MPFR_RNDN);
    return r;
  }
  friend HiReal log2(const HiReal& a) {
    HiReal r(a.precision());
    mpfr_log2(r.v_, a.v_, MPFR_RNDN);
    return r;
  }
  friend HiReal exp(const HiReal& a) {
    HiReal r(a.precision());
    mpfr_exp(r.v_, a.v_, MPFR_RNDN);
    return r;
  }
  friend HiReal sin(const HiReal& a) {
    HiReal r(a.precision());
    mpfr_sin(r.v_, a.v_, MPFR_RNDN);
    return r;
  }
  friend HiReal sinh(const HiReal& a) {
    HiReal r(a.precision());
    mpfr_sinh(r.v_, a.v_, MPFR_RNDN);
    return r;
  }
  friend HiReal abs(const HiReal& a) {
    HiReal r(a.precision());
    mpfr_abs(r.v_, a.v_, MPFR_RNDN);
    return r;
  }
  // a * 2^k (exact)
  friend HiReal ldexp2(const HiReal& a, long k) {
    HiReal r(a.precision());
    if (k >= 0)
      mpfr_mul_2ui(r.v_, a.v_, (unsigned long)k, MPFR_RNDN);
    else
      mpfr_div_2ui(r.v_, a.v_, (unsigned long)(-k), MPFR_RNDN);
    return r;
  }
  friend HiReal pow_si(const HiReal& a, long e) {
    HiReal r(a.precision());
    mpfr_pow_si(r.v_, a.v_, e, MPFR_RNDN);
    return r;
  }
  // n^x for unsigned n
  friend HiReal ui_pow(unsigned long n, const HiReal& x) {
    HiReal r(x.precision());
    mpfr_ui_pow(r.v_, n, x.raw(), MPFR_RNDN);
    return r;
  }

 private:
  static mpfr_prec_t join(const HiReal& a, const HiReal& b) {
    return a.precision() > b.precision() ? a.precision() : b.precision();
  }
  mpfr_t v_;
};

// -- context-bound constructors --

inline HiReal make_real(const PrecisionContext& ctx, long value) {
  return HiReal(ctx, value);
}

inline HiReal make_real(const PrecisionContext& ctx, const std::string& decimal) {
  HiReal r(ctx.work_bits());
  if (mpfr_set_str(r.raw(), decimal.c_str(), 10, MPFR_RNDN) != 0)
    throw std::invalid_argument("make_real: unparsable decimal literal: " + decimal);
  return r;
}

inline HiReal make_real_q(const PrecisionContext& ctx, const mpq_class& q) {
  HiReal r(ctx.work_bits());
  mpfr_set_q(r.raw(), q.get_mpq_t(), MPFR_RNDN);
  return r;
}

inline HiReal const_pi(const PrecisionContext& ctx) {
  HiReal r(ctx.work_bits());
  mpfr_const_pi(r.raw(), MPFR_RNDN);
  return r;
}

// 10^e at working precision.
inline HiReal pow10(const PrecisionContext& ctx, long e) {
  HiReal r(ctx.work_bits());
  mpfr_set_si(r.raw(), 10, MPFR_RNDN);
  mpfr_pow_si(r.raw(), r.raw(), e, MPFR_RNDN);
  return r;
}

// ---------------------------------------------------------------------------
// Exact rationals and elementary number theory
// ---------------------------------------------------------------------------

using Rational = mpq_class;

// mu(n): 0 if n has a squared prime factor, else (-1)^(#prime factors).
inline int mobius(std::uint64_t n) {
  if (n == 0) throw std::domain_error("mobius: n must be >= 1");
  if (n == 1) return 1;
  int factors = 0;
  for (std::uint64_t p = 2; p * p <= n; ++p) {
    if (n % p == 0) {
      n /= p;
      if (n % p == 0) return 0;
      ++factors;
    }
  }
  if (n > 1) ++factors;
  return (factors % 2 == 0) ? 1 : -1;
}

// Ascending primes <= limit (sieve of Eratosthenes). Empty for limit < 2.
inline std::vector<std::uint64_t> primes_up_to(std::uint64_t limit) {
  std::vector<std::uint64_t> primes;
  if (limit < 2) return primes;
  std::vector<bool> composite(limit + 1, false);
  for (std::uint64_t p = 2; p <= limit; ++p) {
    if (composite[p]) continue;
    primes.push_back(p);
    for (std::uint64_t q = p * p; q <= limit; q += p) composite[q] = true;
  }
  return primes;
}

namespace detail {

// Exact Bernoulli numbers from sum_{k=0}^{m} C(m+1,k) B_k = 0 (B_1 = -1/2),
// memoized. The mutex keeps concurrent callers safe; results are values.
inline Rational bernoulli_cached(std::size_t n) {
  static std::vector<Rational> table{Rational(1), Rational(-1, 2)};
  static std::mutex mu;
  std::lock_guard<std::mutex> lock(mu);
  while (table.size() <= n) {
    const std::size_t m = table.size();
    Rational acc(0);
    mpz_class binom(1);  // C(m+1, k), starting at k = 0
    for (std::size_t k = 0; k < m; ++k) {
      acc += Rational(binom) * table[k];
      binom *= (unsigned long)(m + 1 - k);
      mpz_divexact_ui(binom.get_mpz_t(), binom.get_mpz_t(), (unsigned long)(k + 1));
    }
    acc /= -(long)(m + 1);
    table.push_back(acc);
  }
  return table[n];
}

}  // namespace detail

// Exact B_index for even index (the odd ones past B_1 vanish; asking for
// them signals a logic bug upstream, so they are rejected).
inline Rational bernoulli(long index) {
  if (index < 0) throw std::domain_error("bernoulli: index must be >= 0");
  if (index % 2 != 0)
    throw std::domain_error("bernoulli: odd index rejected (B_odd vanish for index > 1)");
  return detail::bernoulli_cached((std::size_t)index);
}

// ---------------------------------------------------------------------------
// zeta(2k) via Euler's formula:  zeta(2k) = (-1)^(k-1) (2 pi)^(2k) B_2k / (2 (2k)!)
// ---------------------------------------------------------------------------

inline HiReal zeta_even(const PrecisionContext& ctx, long k) {
  if (k < 1) throw std::domain_error("zeta_even: k must be >= 1");
  const long tk = 2 * k;
  Rational q = detail::bernoulli_cached((std::size_t)tk);
  mpz_class fact;
  mpz_fac_ui(fact.get_mpz_t(), (unsigned long)tk);
  q /= Rational(2 * fact);
  if (k % 2 == 0) q = -q;  // (-1)^(k-1)
  HiReal two_pi = ldexp2(const_pi(ctx), 1);
  HiReal r(ctx.work_bits());
  mpfr_pow_si(r.raw(), two_pi.raw(), tk, MPFR_RNDN);
  return r * make_real_q(ctx, q);
}

// ---------------------------------------------------------------------------
// zeta(s) for real s > 1 via Euler-Maclaurin
//
//   zeta(s) = sum_{n<N} n^-s + N^(1-s)/(s-1) + N^-s/2
//           + sum_{k=1..M} B_2k/(2k)! * s(s+1)...(s+2k-2) * N^(-s-2k+1) + R_M
//
// For real s > 0 the remainder satisfies |R_M| <= |first omitted term|, so
// the loop below stops exactly when that term certifies the target. If the
// asymptotic terms start growing before the target is reached, N doubles.
// Very large s short-circuits to direct summation with an integral tail
// bound.
// ---------------------------------------------------------------------------

namespace detail {

inline HiReal zeta_em_attempt(const PrecisionContext& ctx, const HiReal& s,
                              unsigned long big_n, const HiReal& eps, bool* ok) {
  const mpfr_prec_t wb = ctx.work_bits() + 32;
  HiReal minus_s = -s;
  HiReal sum(wb);
  mpfr_set_zero(sum.raw(), 1);

  HiReal t(wb);
  for (unsigned long n = 1; n < big_n; ++n) {
    mpfr_ui_pow(t.raw(), n, minus_s.raw(), MPFR_RNDN);
    mpfr_add(sum.raw(), sum.raw(), t.raw(), MPFR_RNDN);
  }

  // N^(1-s)/(s-1) + N^-s/2
  HiReal n_pow_1ms(wb);
  HiReal one_minus_s = 1 - s;
  mpfr_ui_pow(n_pow_1ms.raw(), big_n, one_minus_s.raw(), MPFR_RNDN);
  sum += n_pow_1ms / (s - 1);
  HiReal n_pow_ms(wb);
  mpfr_ui_pow(n_pow_ms.raw(), big_n, minus_s.raw(), MPFR_RNDN);
  sum += ldexp2(n_pow_ms, -1);

  // Correction terms. Incremental pieces:
  //   poch    = s (s+1) ... (s+2k-2)
  //   n_fac   = N^(-s-2k+1)
  //   coeff   = B_2k / (2k)!   (exact rational)
  HiReal poch = s;
  HiReal n_fac = n_pow_ms / (long)big_n;
  mpz_class fact(2);  // (2k)! for k = 1
  const long k_cap = 4 * (long)big_n + 16;
  HiReal prev_abs(wb);
  bool have_prev = false;

  for (long k = 1; k <= k_cap; ++k) {
    Rational coeff = bernoulli_cached((std::size_t)(2 * k)) / Rational(fact);
    HiReal term = make_real_q(ctx, coeff) * poch * n_fac;
    HiReal mag = abs(term);
    if (mag < eps) {
      // Remainder after the terms already added is bounded by this first
      // omitted term, which is below target.
      *ok = true;
      return sum;
    }
    if (have_prev && mag > prev_abs) break;  // divergent regime: bigger N
    sum += term;
    prev_abs = mag;
    have_prev = true;
    // advance to k+1
    poch = poch * (s + (2 * k - 1)) * (s + 2 * k);
    n_fac = n_fac / (long)big_n / (long)big_n;
    fact *= (unsigned long)(2 * k + 1);
    fact *= (unsigned long)(2 * k + 2);
  }
  *ok = false;
  return sum;
}

}  // namespace detail

inline HiReal zeta_real(const PrecisionContext& ctx, const HiReal& s) {
  // Domain: real s > 1; the pole approach is supported down to 1 + 1e-8.
  {
    HiReal min_s = 1 + pow10(ctx, -8);
    if (!(s >= min_s))
      throw std::domain_error("zeta_real: requires real s >= 1 + 1e-8");
  }
  const long tgt = ctx.target_digits() + 2;
  HiReal eps = pow10(ctx, -tgt);

  // Direct summation when 2^-s alone is below target: the full tail
  // N^-s + N^(1-s)/(s-1) certifies immediately.
  const double s_d = s.to_double();
  if (s_d * 0.3010299956639812 > (double)tgt + 4) {
    const mpfr_prec_t wb = ctx.work_bits() + 32;
    HiReal minus_s = -s;
    HiReal sum(wb);
    mpfr_set_si(sum.raw(), 1, MPFR_RNDN);
    HiReal t(wb);
    unsigned long n = 2;
    for (;; ++n) {
      mpfr_ui_pow(t.raw(), n, minus_s.raw(), MPFR_RNDN);
      if (abs(t) < eps) break;
      mpfr_add(sum.raw(), sum.raw(), t.raw(), MPFR_RNDN);
    }
    return sum;
  }

  unsigned long big_n = 16;
  if ((unsigned long)tgt > big_n) big_n = (unsigned long)tgt;
  for (; big_n <= (1ul << 24); big_n *= 2) {
    bool ok = false;
    HiReal r = detail::zeta_em_attempt(ctx, s, big_n, eps, &ok);
    if (ok) return r;
  }
  throw PrecisionError("zeta_real: Euler-Maclaurin failed to certify the target");
}

// ---------------------------------------------------------------------------
// Prime zeta function P(s) = sum_{k>=1} mu(k)/k log zeta(ks), real s > 1.
//
// Truncation: stop once 2^(-k s) < 10^-(digits+guard+2). For ks >= 2 the
// term magnitude obeys |log zeta(ks)| < 2 * 2^(-ks), so the discarded tail
// is geometric and two orders below the guard band.
// ---------------------------------------------------------------------------

inline HiReal prime_zeta(const PrecisionContext& ctx, const HiReal& s) {
  {
    HiReal min_s = 1 + pow10(ctx, -8);
    if (!(s >= min_s))
      throw std::domain_error("prime_zeta: requires real s >= 1 + 1e-8");
  }
  const long tgt = ctx.target_digits() + 2;
  const double s_d = s.to_double();
  const double ln10_over_ln2 = 3.321928094887362;

  HiReal sum(ctx.work_bits() + 32);
  mpfr_set_zero(sum.raw(), 1);
  for (std::uint64_t k = 1;; ++k) {
    if ((double)k * s_d > (double)tgt * ln10_over_ln2 && k > 1) break;
    const int mu = mobius(k);
    if (mu == 0) continue;
    HiReal z = zeta_real(ctx, s * (long)k);
    HiReal term = log(z) / (long)k;
    if (mu < 0)
      sum -= term;
    else
      sum += term;
  }
  return sum;
}

}  // namespace numlab
