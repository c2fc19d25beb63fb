// bineuclid.hpp
//
// The binary-Euclid series discrepancy. Three evaluations of the same
// function:
//
//   f_direct           f(x) = sum_{k>=1} 2^-k / (1 + 2^k x)
//   f_closed_incorrect the power-series closed form claimed for 0 < x < 2,
//                      which is wrong by a tiny periodic term
//   f_closed_correct   the Mellin-corrected form on (0,1):
//                      f_closed_incorrect(x) + x P(lg x)
//
// with P(t) = (2 pi / ln 2) sum_{n>=1} sin(2 n pi t) / sinh(2 n pi^2 / ln 2),
// a 1-periodic function bounded by 7.8e-12 (smallest denominator
// sinh(2 pi^2 / ln 2) > 1.16e12). The discrepancy is invisible at 8-digit
// precision and plain at 40 digits.

#pragma once

#include <stdexcept>
#include <vector>

#include "numlab/hiprec.hpp"

namespace numlab {

// Global bound on |P(t)|, t real (sum of all term amplitudes).
inline constexpr double kPeriodicTermBound = 7.8e-12;

struct PeriodicTermEval {
  HiReal t;
  HiReal value;
  long terms_used = 0;
};

// f(x) = sum 2^-k / (1 + 2^k x); the tail past K is below sum_{k>K} 2^-k.
inline HiReal f_direct(const PrecisionContext& ctx, const HiReal& x) {
  if (!(x > 0)) throw std::domain_error("f_direct: requires x > 0");
  const long tgt = ctx.target_digits();
  HiReal eps = pow10(ctx, -tgt);
  HiReal sum = make_real(ctx, 0);
  HiReal pow2k = make_real(ctx, 1);  // 2^k
  for (long k = 1;; ++k) {
    pow2k = ldexp2(pow2k, 1);
    HiReal term = 1 / (pow2k * (1 + pow2k * x));  // 2^-k/(1+2^k x) = 1/(2^k + 4^k x)
    sum += term;
    if (1 / pow2k < eps) break;  // geometric tail certificate
  }
  return sum;
}

// The claimed closed form (0 < x < 2):
//   1 + x lg x + x/2 - x^2/(1+x) + sum_{k>=1} (-1)^k x^(k+1) / (2^k - 1)
// Alternating series with strictly decreasing terms (ratio < x/2), so the
// truncated tail is below the first omitted term.
inline HiReal f_closed_incorrect(const PrecisionContext& ctx, const HiReal& x) {
  if (!(x > 0) || !(x < 2))
    throw std::domain_error("f_closed_incorrect: requires 0 < x < 2");
  const long tgt = ctx.target_digits();
  HiReal eps = pow10(ctx, -tgt);
  HiReal sum = 1 + x * log2(x) + ldexp2(x, -1) - x * x / (1 + x);
  HiReal xpow = x;           // x^k ... maintained as x^(k+1) below
  HiReal pow2k = make_real(ctx, 1);
  for (long k = 1;; ++k) {
    xpow = xpow * x;         // x^(k+1)
    pow2k = ldexp2(pow2k, 1);
    HiReal term = xpow / (pow2k - 1);
    if (term < eps) break;
    if (k % 2 == 1)
      sum -= term;
    else
      sum += term;
  }
  return sum;
}

// P(t): each term shrinks by a factor exp(2 pi^2 / ln 2) ~ 2.3e12, so
// 1 + ceil(digits/12) terms suffice; the loop stops once the next
// denominator alone exceeds the target.
inline PeriodicTermEval periodic_term(const PrecisionContext& ctx, const HiReal& t) {
  const long tgt = ctx.target_digits();
  HiReal big = pow10(ctx, tgt);
  HiReal pi = const_pi(ctx);
  HiReal ln2 = log(make_real(ctx, 2));
  HiReal two_pi_t = ldexp2(pi * t, 1);
  HiReal sinh_arg_step = ldexp2(pi * pi, 1) / ln2;  // 2 pi^2 / ln 2
  HiReal sum = make_real(ctx, 0);
  long n = 1;
  for (;; ++n) {
    HiReal den = sinh(sinh_arg_step * n);
    if (den > big) break;
    sum += sin(two_pi_t * n) / den;
  }
  PeriodicTermEval out;
  out.t = t;
  out.value = ldexp2(pi, 1) / ln2 * sum;
  out.terms_used = n - 1;
  return out;
}

// Corrected closed form, valid on (0,1): add the periodic term x P(lg x).
inline HiReal f_closed_correct(const PrecisionContext& ctx, const HiReal& x) {
  if (!(x > 0) || !(x < 1))
    throw std::domain_error("f_closed_correct: requires 0 < x < 1");
  return f_closed_incorrect(ctx, x) + x * periodic_term(ctx, log2(x)).value;
}

struct DiscrepancyRow {
  HiReal x;
  HiReal difference;     // f_direct(x) - f_closed_incorrect(x)
  HiReal periodic_part;  // x * P(lg x)
};

// Per x: the measured Eq.-(7) defect alongside its predicted value.
inline std::vector<DiscrepancyRow> discrepancy_scan(const PrecisionContext& ctx,
                                                    const std::vector<HiReal>& xs) {
  std::vector<DiscrepancyRow> rows;
  rows.reserve(xs.size());
  for (const HiReal& x : xs) {
    if (!(x > 0) || !(x < 1))
      throw std::domain_error("discrepancy_scan: requires 0 < x < 1");
    DiscrepancyRow row{x, f_direct(ctx, x) - f_closed_incorrect(ctx, x),
                       x * periodic_term(ctx, log2(x)).value};
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace numlab
