#include "selfpow/periodicity.hpp"

#include <algorithm>

namespace selfpow {
namespace {

u32 max_exponent(const BaseProfile& profile) {
  u32 s = 0;
  for (const auto& pp : profile.factors.factors) s = std::max(s, pp.exponent);
  return s;
}

u128 window_length(Window w) {
  if (w.lo == 0 || w.hi < w.lo) {
    throw std::invalid_argument("window must satisfy 1 <= lo <= hi");
  }
  return u128{w.hi} - w.lo + 1;
}

}  // namespace

u64 theoretical_period(const BaseProfile& profile) { return profile.eventual_period; }

bool breaks_at(u64 m, const BaseProfile& profile) {
  if (m == 0) throw std::invalid_argument("breaks_at: index must be >= 1");
  for (const auto& [p, s] : profile.factors.factors) {
    if (m % p != 0) continue;
    u64 rest = m;
    u32 k = 0;
    while (rest % p == 0) {
      rest /= p;
      ++k;
    }
    // need k*m + 1 <= s; s < 32, so any k*m >= 32 is already out
    if (u128{k} * m + 1 <= s) return true;
  }
  return false;
}

std::vector<u64> break_indices(const BaseProfile& profile) {
  std::vector<u64> out;
  const u32 s_max = max_exponent(profile);
  for (u64 m = 1; m + 1 <= s_max; ++m) {  // k*m + 1 <= s forces m < s_max
    if (breaks_at(m, profile)) out.push_back(m);
  }
  return out;
}

u64 preperiod_start(const BaseProfile& profile) {
  const std::vector<u64> breaks = break_indices(profile);
  return breaks.empty() ? 1 : breaks.back() + 1;
}

bool is_periodic_from_start(const BaseProfile& profile) {
  for (const auto& [p, s] : profile.factors.factors) {
    if (s > p) return false;
  }
  return true;
}

std::vector<u32> last_digit_values(const BaseProfile& profile, Window window) {
  const u128 len = window_length(window);
  if (len > (u128{1} << 32)) {
    throw std::invalid_argument("window too large to materialize");
  }
  std::vector<u32> values;
  values.reserve(static_cast<std::size_t>(len));
  for (u64 n = window.lo; n <= window.hi; ++n) {
    values.push_back(static_cast<u32>(last_digit_value(n, profile)));
  }
  return values;
}

std::optional<u64> refute_period(const BaseProfile& profile, u64 t, Window window) {
  if (t == 0) throw std::invalid_argument("refute_period: t must be >= 1");
  window_length(window);
  for (u64 n = window.lo; n + t <= window.hi; ++n) {
    if (last_digit_value(n, profile) != last_digit_value(n + t, profile)) return n;
  }
  return std::nullopt;
}

namespace {

// Shared worker: minimal accepted divisor period over precomputed values.
EmpiricalPeriod minimal_period_from_values(const BaseProfile& profile,
                                           const std::vector<u32>& values, Window window) {
  const u64 h = profile.eventual_period;
  for (u64 t : divisors(factorize(h))) {
    // latest violation of t-periodicity in the window
    std::optional<u64> last_violation;
    for (u64 n = window.hi - t; n >= window.lo; --n) {
      if (values[n - window.lo] != values[n + t - window.lo]) {
        last_violation = n;
        break;
      }
      if (n == window.lo) break;
    }
    const u64 start = last_violation ? *last_violation + 1 : window.lo;
    const u128 tail = u128{window.hi} - start + 1;
    if (tail >= u128{h} + t) return {t, start};
  }
  // h itself always qualifies on a >= 3h window; reaching here is a bug
  throw std::logic_error("empirical_period: no divisor of the theoretical period qualified");
}

}  // namespace

EmpiricalPeriod empirical_period(const BaseProfile& profile, Window window) {
  const u128 len = window_length(window);
  const u64 h = profile.eventual_period;
  if (len < u128{3} * h) {
    throw WindowTooSmallError("window shorter than 3 theoretical periods");
  }
  const std::vector<u32> values = last_digit_values(profile, window);
  return minimal_period_from_values(profile, values, window);
}

PeriodReport period_report(const BaseProfile& profile, Window window) {
  PeriodReport report;
  report.b = profile.b;
  report.window = window;
  report.theoretical_period = theoretical_period(profile);
  report.break_indices = break_indices(profile);

  const EmpiricalPeriod emp = empirical_period(profile, window);
  report.empirical_period = emp.period;
  report.empirical_start = emp.start;

  for (const auto& [p, s] : profile.factors.factors) {
    PreperiodFormulaReading reading;
    reading.prime = p;
    reading.exponent = s;
    const i64 ip = static_cast<i64>(p);
    const i64 is = static_cast<i64>(s);
    // ceil(-s/p) = -floor(s/p), floor(-s/p) = -ceil(s/p)
    reading.ceiling_reading = 1 - ip * (1 - is / ip);
    reading.floor_reading = 1 - ip * (1 - (is + ip - 1) / ip);
    report.formula_readings.push_back(reading);
    report.formula_start_ceiling = std::max(report.formula_start_ceiling, reading.ceiling_reading);
    report.formula_start_floor = std::max(report.formula_start_floor, reading.floor_reading);
  }

  const u64 predicate_start = preperiod_start(profile);
  report.formula_ceiling_matches =
      report.formula_start_ceiling == static_cast<i64>(predicate_start);
  report.formula_floor_matches = report.formula_start_floor == static_cast<i64>(predicate_start);

  // Internal consistency: the empirical findings must agree with the
  // predicate-derived structure.
  if (report.theoretical_period % report.empirical_period != 0) {
    throw std::logic_error("period_report: empirical period does not divide the theoretical one");
  }
  if (window.lo == 1 && report.empirical_period == report.theoretical_period &&
      report.empirical_start != predicate_start) {
    throw std::logic_error("period_report: empirical start disagrees with the break predicate");
  }
  return report;
}

Window default_window(const BaseProfile& profile) {
  const u64 h = profile.eventual_period;
  const u128 hi = u128{6} * h;
  constexpr u128 cap = (u128{1} << 63) - 1;
  return Window{1, static_cast<u64>(std::min(hi, cap))};
}

}  // namespace selfpow
