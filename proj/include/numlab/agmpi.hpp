// agmpi.hpp
//
// The two AGM-based pi iterations and their certificates:
//
//   GL1  (Gauss-Legendre, quadratic):   0 < e'_n  < pi^2 2^(n+4)  exp(-2^(n+1) pi)
//   BB4  (Borwein-Borwein quartic):     0 < e''_n < pi^2 2^(2n+4) exp(-2^(2n+1) pi)
//
// plus the equivalence check pi''_n = pi'_2n (exact in exact arithmetic;
// rounding-limited here). The reference pi is GL1 itself, run at elevated
// precision for enough iterations that its own error bound certifies every
// digit we compare against - no baked-in digit constants anywhere.

#pragma once

#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include "numlab/hiprec.hpp"

namespace numlab {

enum class AgmAlgorithm { GL1, BB4 };

inline const char* to_string(AgmAlgorithm a) {
  return a == AgmAlgorithm::GL1 ? "GL1" : "BB4";
}

struct AgmTrace {
  AgmAlgorithm algorithm;
  std::vector<HiReal> iterates;  // pi'_n or pi''_n
  std::vector<HiReal> errors;    // pi_ref - iterate (strictly positive)
  std::vector<HiReal> bounds;    // RHS of the matching error bound
  long digits_used = 0;
};

// log10 of the error bound; cheap double estimate used for planning only
// (the certified comparisons use the exact HiReal bound below).
inline double agm_bound_log10(AgmAlgorithm alg, long n) {
  const double log10_2 = 0.30102999566398120;
  const double pi_ln10 = 1.3643763538418412;  // pi / ln 10
  const long e1 = alg == AgmAlgorithm::GL1 ? n + 4 : 2 * n + 4;
  const long e2 = alg == AgmAlgorithm::GL1 ? n + 1 : 2 * n + 1;
  return 0.99429977035 + (double)e1 * log10_2 - std::ldexp(pi_ln10, (int)e2);
}

// Exact evaluation of the Eq.-style bound at working precision.
inline HiReal agm_error_bound(const PrecisionContext& ctx, AgmAlgorithm alg, long n) {
  if (n < 0) throw std::domain_error("agm_error_bound: n must be >= 0");
  const long e1 = alg == AgmAlgorithm::GL1 ? n + 4 : 2 * n + 4;
  const long e2 = alg == AgmAlgorithm::GL1 ? n + 1 : 2 * n + 1;
  HiReal pi = const_pi(ctx);
  HiReal b = exp(-ldexp2(pi, e2));
  return ldexp2(pi * pi * b, e1);
}

// Smallest n whose GL1 bound is below 10^-digits.
inline long gl1_iterations_for_digits(long digits) {
  for (long n = 0; n < 200; ++n)
    if (agm_bound_log10(AgmAlgorithm::GL1, n) < -(double)digits) return n;
  throw std::domain_error("gl1_iterations_for_digits: digit target out of range");
}

namespace detail {

// Bare GL1 loop: returns the final iterate pi'_(n_max-1) at the given
// precision. Shared by reference_pi and the trace runner.
inline HiReal gl1_core(mpfr_prec_t bits, long n_max, std::vector<HiReal>* iterates) {
  HiReal a(bits), b(bits), s(bits), a1(bits), c1(bits), out(bits);
  mpfr_set_si(a.raw(), 1, MPFR_RNDN);
  mpfr_set_si(b.raw(), 2, MPFR_RNDN);
  mpfr_sqrt(b.raw(), b.raw(), MPFR_RNDN);
  mpfr_si_div(b.raw(), 1, b.raw(), MPFR_RNDN);
  mpfr_set_si(s.raw(), 1, MPFR_RNDN);
  mpfr_div_2ui(s.raw(), s.raw(), 2, MPFR_RNDN);

  for (long n = 0; n < n_max; ++n) {
    a1 = ldexp2(a + b, -1);
    c1 = a - a1;
    out = a1 * a1 / s;
    if (iterates) iterates->push_back(out);
    if (n < n_max - 1) {
      if (s.sign() <= 0)
        throw PrecisionError("GL1: s_n <= 0, working precision exhausted");
      b = sqrt(a * b);
      s = s - ldexp2(c1 * c1, n);
      a = a1;
    }
  }
  return out;
}

}  // namespace detail

// pi accurate to 10^-(digits+10), self-certified by the GL1 bound: the
// iteration count is chosen so the bound itself is below that target.
inline HiReal reference_pi(const PrecisionContext& ctx) {
  const long digits = ctx.decimal_digits();
  const long n_ref = gl1_iterations_for_digits(digits + 10);
  PrecisionContext inner(digits + 20, ctx.guard_digits());
  HiReal pi = detail::gl1_core(inner.work_bits(), n_ref + 1, nullptr);
  HiReal r(ctx.work_bits());
  mpfr_set(r.raw(), pi.raw(), MPFR_RNDN);
  return r;
}

namespace detail {

inline AgmTrace finish_trace(const PrecisionContext& ctx, AgmAlgorithm alg,
                             std::vector<HiReal> iterates) {
  AgmTrace t;
  t.algorithm = alg;
  t.digits_used = ctx.decimal_digits();
  HiReal pi = reference_pi(ctx);
  for (std::size_t n = 0; n < iterates.size(); ++n) {
    t.errors.push_back(pi - iterates[n]);
    t.bounds.push_back(agm_error_bound(ctx, alg, (long)n));
  }
  t.iterates = std::move(iterates);
  return t;
}

}  // namespace detail

inline AgmTrace gl1_run(const PrecisionContext& ctx, long n_max) {
  if (n_max < 1) throw std::domain_error("gl1_run: n_max must be >= 1");
  if (ctx.decimal_digits() < 20)
    throw std::domain_error("gl1_run: context must carry >= 20 digits");
  std::vector<HiReal> iterates;
  detail::gl1_core(ctx.work_bits(), n_max, &iterates);
  return detail::finish_trace(ctx, AgmAlgorithm::GL1, std::move(iterates));
}

inline AgmTrace bb4_run(const PrecisionContext& ctx, long n_max) {
  if (n_max < 1) throw std::domain_error("bb4_run: n_max must be >= 1");
  if (ctx.decimal_digits() < 20)
    throw std::domain_error("bb4_run: context must carry >= 20 digits");
  const mpfr_prec_t bits = ctx.work_bits();
  std::vector<HiReal> iterates;

  HiReal y(bits), z(bits);
  mpfr_set_si(y.raw(), 2, MPFR_RNDN);
  mpfr_sqrt(y.raw(), y.raw(), MPFR_RNDN);
  mpfr_sub_si(y.raw(), y.raw(), 1, MPFR_RNDN);  // y_0 = sqrt(2) - 1
  z = ldexp2(y * y, 1);                         // z_0 = 2 y_0^2

  for (long n = 0; n < n_max; ++n) {
    if (z.sign() <= 0)
      throw PrecisionError("BB4: z_n <= 0, working precision exhausted");
    iterates.push_back(1 / z);
    if (n < n_max - 1) {
      HiReal y2 = y * y;
      HiReal t = root4(1 - y2 * y2);
      y = (1 - t) / (1 + t);
      HiReal onep = 1 + y;
      HiReal onep2 = onep * onep;
      z = z * onep2 * onep2 - ldexp2(y * (1 + y + y * y), 2 * n + 3);
    }
  }
  return detail::finish_trace(ctx, AgmAlgorithm::BB4, std::move(iterates));
}

// ---------------------------------------------------------------------------
// Certificates
// ---------------------------------------------------------------------------

enum class IterateStatus { Pass, BoundViolation, InsufficientPrecision };

struct IterateCheck {
  long n;
  HiReal error;
  HiReal bound;
  IterateStatus status;
};

struct BoundsReport {
  std::vector<IterateCheck> checks;
  bool all_pass = false;
};

// Verifies 0 < e_n < bound(n) for each iterate. Iterates whose bound lies
// within 10 digits of the trace precision cannot be certified either way
// and are flagged InsufficientPrecision rather than failed.
inline BoundsReport check_bounds(const AgmTrace& trace) {
  BoundsReport report;
  report.all_pass = true;
  for (std::size_t n = 0; n < trace.iterates.size(); ++n) {
    IterateCheck c{(long)n, trace.errors[n], trace.bounds[n], IterateStatus::Pass};
    const double bound_digits = -agm_bound_log10(trace.algorithm, (long)n);
    if (bound_digits + 10.0 > (double)trace.digits_used) {
      c.status = IterateStatus::InsufficientPrecision;
    } else if (!(trace.errors[n] > 0 && trace.errors[n] < trace.bounds[n])) {
      c.status = IterateStatus::BoundViolation;
    }
    if (c.status != IterateStatus::Pass) report.all_pass = false;
    report.checks.push_back(std::move(c));
  }
  return report;
}

struct EquivalenceReport {
  std::vector<HiReal> deviations;  // |pi''_n - pi'_2n| for n = 0..n_max-1
  HiReal max_deviation;
  HiReal tolerance;  // 10^-(digits-5), rounding slack
  long digits_used = 0;
  bool ok = false;
};

// Runs both algorithms and measures |pi''_n - pi'_2n| for n < n_max.
// Exact arithmetic would give identical values; at working precision the
// deviation must stay below the rounding allowance 10^-(digits-5).
inline EquivalenceReport check_equivalence(const PrecisionContext& ctx, long n_max) {
  if (n_max < 1) throw std::domain_error("check_equivalence: n_max must be >= 1");
  {
    const double needed = -agm_bound_log10(AgmAlgorithm::BB4, n_max - 1) + 10.0;
    if ((double)ctx.decimal_digits() < needed)
      throw PrecisionError(
          "check_equivalence: context carries " + std::to_string(ctx.decimal_digits()) +
          " digits but the smallest bound involved needs about " +
          std::to_string((long)needed));
  }
  AgmTrace gl = gl1_run(ctx, 2 * n_max - 1);
  AgmTrace bb = bb4_run(ctx, n_max);
  EquivalenceReport rep;
  rep.digits_used = ctx.decimal_digits();
  rep.tolerance = pow10(ctx, -(ctx.decimal_digits() - 5));
  rep.max_deviation = make_real(ctx, 0);
  for (long n = 0; n < n_max; ++n) {
    HiReal dev = abs(bb.iterates[(std::size_t)n] - gl.iterates[(std::size_t)(2 * n)]);
    if (dev > rep.max_deviation) rep.max_deviation = dev;
    rep.deviations.push_back(std::move(dev));
  }
  rep.ok = rep.max_deviation < rep.tolerance;
  return rep;
}

}  // namespace numlab
