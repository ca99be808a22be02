#pragma once

// Exact period and preperiod structure of the last-digit sequence of n^n in
// base b. The eventual period is lcm(b, lambda(b)); indices that break
// periodicity are characterized by a divisibility predicate on b, which
// forces every break below the largest prime-power exponent of b. Empirical
// verification cross-checks both against windows of computed values.

#include <optional>

#include "selfpow/digits.hpp"

namespace selfpow {

/// Closed index range [lo, hi], indices starting at 1.
struct Window {
  u64 lo = 1;
  u64 hi = 1;
  friend bool operator==(const Window&, const Window&) = default;
};

struct WindowTooSmallError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// The closed-form preperiod candidate per prime power p^s of b, under the
/// two possible readings of the inner rounding: 1 - p(1 + ceil(-s/p)) and
/// 1 - p(1 + floor(-s/p)). Reported for comparison only; the preperiod the
/// library trusts comes from the break predicate.
struct PreperiodFormulaReading {
  u64 prime = 0;
  u32 exponent = 0;
  i64 ceiling_reading = 0;
  i64 floor_reading = 0;
};

struct PeriodReport {
  u64 b = 0;
  u64 theoretical_period = 0;
  u64 empirical_period = 0;
  u64 empirical_start = 0;
  std::vector<u64> break_indices;
  std::vector<PreperiodFormulaReading> formula_readings;
  i64 formula_start_ceiling = 1;  // max(1, max per-prime ceiling reading)
  i64 formula_start_floor = 1;
  bool formula_ceiling_matches = false;  // vs the predicate-derived start
  bool formula_floor_matches = false;
  Window window;
};

/// lcm(b, lambda(b)).
u64 theoretical_period(const BaseProfile& profile);

/// True iff the last-digit sequence differs at m and m + theoretical period:
/// some prime p of m with multiplicity k satisfies p^(k*m + 1) | b.
bool breaks_at(u64 m, const BaseProfile& profile);

/// Break indices of the sequence, ascending. All lie strictly below the
/// largest prime-power exponent of b.
std::vector<u64> break_indices(const BaseProfile& profile);

/// 1 + the largest break index, or 1 when no index breaks.
u64 preperiod_start(const BaseProfile& profile);

/// True iff every prime power p^s of b has s <= p (no break exists).
bool is_periodic_from_start(const BaseProfile& profile);

/// Last-digit values over a window, values[i] = value at n = window.lo + i.
std::vector<u32> last_digit_values(const BaseProfile& profile, Window window);

struct EmpiricalPeriod {
  u64 period = 0;
  u64 start = 0;
};

/// Least n in the window with value(n) != value(n + t), if any.
std::optional<u64> refute_period(const BaseProfile& profile, u64 t, Window window);

/// Minimal t and earliest start such that the window is t-periodic from
/// start onward. Only divisors of the theoretical period are candidates
/// (the minimal period of an eventually periodic sequence divides every
/// period); a candidate counts only when its violation-free tail spans at
/// least one full theoretical period plus t, which rules out divisors that
/// merely look periodic near the window edge. Requires window length >= 3
/// theoretical periods, else WindowTooSmallError.
EmpiricalPeriod empirical_period(const BaseProfile& profile, Window window);

/// Everything above in one consistency-checked bundle. Throws
/// std::logic_error if the empirical findings contradict the predicate
/// (that would be an implementation bug, not a property of b).
PeriodReport period_report(const BaseProfile& profile, Window window);

/// Default verification window [1, 6 * theoretical period], clamped to the
/// index cap.
Window default_window(const BaseProfile& profile);

}  // namespace selfpow
