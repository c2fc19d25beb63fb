// multable.hpp
//
// Exact M(N) = |{ i j : 0 <= i < N, 0 <= j < N }| via a segmented bitmap
// over the product range [0, (N-1)^2], plus the companion statistics the
// reports need: the empirical fit M*(N) = N^2 / (0.71 + lg lg N), the easy
// lower bound N^2 / (2 log N) (valid for N >= 4), and the exponent
// estimate log(N^2/M) / log log N, whose limit is the Erdos constant
// c = 1 - (1 + ln ln 2)/ln 2 ~ 0.086 but which converges far too slowly to
// be measured at desk scale.

#pragma once

#include <algorithm>
#include <bit>
#include <chrono>
#include <cstdint>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

#include "numlab/hiprec.hpp"

namespace numlab {

// Largest table size whose product range still fits the 64-bit index type.
inline constexpr std::uint64_t kMaxMultableN = 3037000499ull + 1ull;

inline constexpr std::uint64_t kMinMemoryBudgetBytes = 1ull << 16;  // one segment

struct MultableResult {
  std::uint64_t n = 0;        // table size N
  std::uint64_t m_value = 0;  // exact M(N), 0-based definition
  std::optional<std::uint64_t> m_value_one_based;  // |{ij : 0 < i,j <= N}|
  std::optional<HiReal> mstar;                     // N^2/(0.71 + lg lg N), N >= 4
  std::optional<HiReal> ratio;                     // M / M*
  std::optional<HiReal> exponent_estimate;         // log(N^2/M)/log log N, N >= 4
  HiReal lower_bound;                              // N^2/(2 log N)
  double elapsed_seconds = 0.0;
};

// The empirical fit M*(N); lg lg N needs N >= 4 to stay positive.
inline HiReal mstar(const PrecisionContext& ctx, std::uint64_t n) {
  if (n < 4) throw std::domain_error("mstar: requires N >= 4");
  HiReal nn = make_real(ctx, (long)n);
  HiReal lglg = log2(log2(nn));
  return nn * nn / (make_real(ctx, "0.71") + lglg);
}

namespace detail {

// Distinct products {i j : 1 <= i <= j <= U}, counted by marking bits in
// windows of the product range [1, U^2]. The count is independent of the
// window size: every product is marked in exactly one window.
inline std::uint64_t count_products_upper(std::uint64_t u, std::uint64_t budget_bytes) {
  if (u == 0) return 0;
  const std::uint64_t top = u * u;  // largest product
  std::uint64_t span = budget_bytes * 8;
  if (span > top) span = top;
  const std::size_t words = (std::size_t)((span + 63) / 64);
  std::vector<std::uint64_t> bits(words);

  std::uint64_t total = 0;
  for (std::uint64_t lo = 1; lo <= top; lo += span) {
    const std::uint64_t hi = (top - lo < span) ? top + 1 : lo + span;  // window [lo, hi)
    std::fill(bits.begin(), bits.end(), 0);
    for (std::uint64_t i = 1; i <= u; ++i) {
      std::uint64_t j = (lo + i - 1) / i;
      if (j < i) j = i;
      const std::uint64_t j_end = (hi - 1) / i < u ? (hi - 1) / i : u;
      for (std::uint64_t idx = i * j - lo; j <= j_end; ++j, idx += i)
        bits[(std::size_t)(idx >> 6)] |= 1ull << (idx & 63);
    }
    for (std::size_t w = 0; w < words; ++w) total += (std::uint64_t)std::popcount(bits[w]);
  }
  return total;
}

}  // namespace detail

// Exact M(N) with statistics. The marking pass is deterministic for every
// segmentation, so results are identical across memory budgets.
inline MultableResult count_distinct_products(std::uint64_t n, std::uint64_t memory_budget_bytes,
                                              const PrecisionContext& ctx,
                                              bool include_one_based = false) {
  if (n < 2) throw std::domain_error("count_distinct_products: requires N >= 2");
  if (n > kMaxMultableN)
    throw std::domain_error("count_distinct_products: N exceeds the 64-bit product range (N <= " +
                            std::to_string(kMaxMultableN) + ")");
  if (memory_budget_bytes < kMinMemoryBudgetBytes)
    throw std::domain_error("count_distinct_products: memory budget below one segment (64 KiB)");

  const auto t0 = std::chrono::steady_clock::now();
  MultableResult r;
  r.n = n;
  // Products 0 and 1 are always present for N >= 2; the bitmap covers the rest.
  r.m_value = detail::count_products_upper(n - 1, memory_budget_bytes) + 1;
  if (include_one_based)
    r.m_value_one_based = detail::count_products_upper(n, memory_budget_bytes);
  r.elapsed_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

  HiReal nn = make_real(ctx, (long)n);
  r.lower_bound = nn * nn / ldexp2(log(nn), 1);
  if (n >= 4) {
    r.mstar = mstar(ctx, n);
    HiReal m = make_real(ctx, (long)r.m_value);
    r.ratio = m / *r.mstar;
    r.exponent_estimate = log(nn * nn / m) / log(log(nn));
  }
  return r;
}

// Raw bitmap of the product set {ij : 0 <= i, j < N} for cross-checking:
// bit k of byte b (little-endian within the byte) marks product index
// 8b + k; the stream covers indices 0 .. (N-1)^2, zero-padded to a byte.
// Output is identical for every memory budget.
inline void dump_product_bitmap(std::uint64_t n, std::uint64_t memory_budget_bytes,
                                std::ostream& out) {
  if (n < 2) throw std::domain_error("dump_product_bitmap: requires N >= 2");
  if (n > kMaxMultableN)
    throw std::domain_error("dump_product_bitmap: N exceeds the 64-bit product range");
  if (memory_budget_bytes < kMinMemoryBudgetBytes)
    throw std::domain_error("dump_product_bitmap: memory budget below one segment (64 KiB)");

  const std::uint64_t u = n - 1;
  const std::uint64_t top = u * u;                       // bit range [0, top]
  const std::uint64_t span = (memory_budget_bytes / 8) * 64;  // word-aligned window
  const std::size_t words = (std::size_t)((span + 63) / 64);
  std::vector<std::uint64_t> bits(words);

  for (std::uint64_t lo = 0; lo <= top; lo += span) {
    const std::uint64_t hi = (top - lo < span) ? top + 1 : lo + span;  // [lo, hi)
    std::fill(bits.begin(), bits.end(), 0);
    if (lo == 0) bits[0] |= 1;  // the product 0
    for (std::uint64_t i = 1; i <= u; ++i) {
      std::uint64_t j = (lo + i - 1) / i;
      if (j < i) j = i;
      const std::uint64_t j_end = (hi - 1) / i < u ? (hi - 1) / i : u;
      for (std::uint64_t idx = i * j - lo; j <= j_end; ++j, idx += i)
        bits[(std::size_t)(idx >> 6)] |= 1ull << (idx & 63);
    }
    const std::uint64_t n_bytes = (hi - lo + 7) / 8;
    for (std::uint64_t b = 0; b < n_bytes; ++b)
      out.put((char)((bits[(std::size_t)(b >> 3)] >> (8 * (b & 7))) & 0xFF));
  }
}

// ---------------------------------------------------------------------------
// Conjecture report
// ---------------------------------------------------------------------------

struct ConjectureRow {
  std::uint64_t n;
  std::uint64_t m_value;
  HiReal eq11_ratio;   // M(N) lg lg N / N^2, the quantity conjectured -> 1
  HiReal mstar_ratio;  // M(N) / M*(N)
  std::optional<HiReal> exponent_estimate;
};

struct ConjectureReport {
  std::vector<ConjectureRow> rows;
  HiReal erdos_exponent;  // c = 1 - (1 + ln ln 2)/ln 2
  std::string conjecture_label;
  std::string asymptotics_note;
};

inline ConjectureReport conjecture_report(const PrecisionContext& ctx,
                                          const std::vector<MultableResult>& results) {
  ConjectureReport rep;
  HiReal ln2 = log(make_real(ctx, 2));
  rep.erdos_exponent = 1 - (1 + log(ln2)) / ln2;
  rep.conjecture_label =
      "lim M(N) lglg N / N^2 = 1: falsified by Erdos (1960) - "
      "slow divergence not visible at desk scale";
  rep.asymptotics_note =
      "M(N) = N^2/(log N)^(c+o(1)) with c ~ 0.086 (Erdos 1960), sharpened by "
      "Ford (2008) to M(N) =~ N^2/((log N)^c (loglog N)^(3/2)); neither rate is "
      "measurable for N <= 2^17, so this table reports the exponent estimate "
      "without asserting convergence.";
  for (const MultableResult& r : results) {
    HiReal nn = make_real(ctx, (long)r.n);
    HiReal m = make_real(ctx, (long)r.m_value);
    ConjectureRow row{r.n, r.m_value, m * log2(log2(nn)) / (nn * nn),
                      r.ratio ? *r.ratio : HiReal(ctx.work_bits()), r.exponent_estimate};
    rep.rows.push_back(std::move(row));
  }
  return rep;
}

}  // namespace numlab
