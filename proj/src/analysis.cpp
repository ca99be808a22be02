#include "selfpow/analysis.hpp"

#include <algorithm>
#include <atomic>
#include <mutex>
#include <sstream>
#include <stdexcept>
#include <thread>

namespace selfpow {
namespace {

// Index arguments to the digit maps must stay below 2^63.
constexpr u64 kIndexLimit = u64{1} << 63;

void require(bool ok, const char* what) {
  if (!ok) throw std::invalid_argument(what);
}

CheckResult scaled_pair_check(const BaseProfile& profile, u64 lhs_scale, u64 rhs_scale,
                              u64 n_max) {
  CheckResult result;
  for (u64 n = 1; n <= n_max; ++n) {
    const u64 lhs = last_nonzero_value(lhs_scale * n, profile);
    const u64 rhs = last_nonzero_value(rhs_scale * n, profile);
    if (lhs != rhs) {
      result.passed = false;
      result.counterexample = Counterexample{n, lhs, rhs};
      return result;
    }
  }
  return result;
}

}  // namespace

CheckResult check_fractality_prime(u64 p, u64 n_max) {
  require(is_prime(p), "check_fractality_prime: p must be prime");
  require(n_max >= 1, "check_fractality_prime: n_max must be positive");
  require(u128{p} * n_max < kIndexLimit, "check_fractality_prime: p * n_max too large");
  return scaled_pair_check(base_profile(p), 1, p, n_max);
}

CheckResult check_fractality_prime_power(u64 p, u32 t, u64 n_max,
                                         std::optional<u64> exponent_step) {
  require(is_prime(p), "check_fractality_prime_power: p must be prime");
  require(t > 1, "check_fractality_prime_power: exponent must exceed 1");
  require(n_max >= 1, "check_fractality_prime_power: n_max must be positive");
  u128 base = 1;
  for (u32 i = 0; i < t; ++i) {
    base *= p;
    require(base < (u128{1} << 32), "check_fractality_prime_power: p^t too large for a base");
  }
  u128 scaled = base;
  const u64 step = exponent_step.value_or(euler_phi(factorize(t)));
  require(step >= 1, "check_fractality_prime_power: step must be positive");
  for (u64 i = 0; i < step; ++i) {
    scaled *= p;
    require(scaled < kIndexLimit, "check_fractality_prime_power: p^(t+step) too large");
  }
  require(scaled * n_max < kIndexLimit,
          "check_fractality_prime_power: p^(t+step) * n_max too large");
  return scaled_pair_check(base_profile(static_cast<u64>(base)), static_cast<u64>(base),
                           static_cast<u64>(scaled), n_max);
}

CheckResult verify_shift_identity(const BaseProfile& profile, u64 n_max) {
  require(profile.is_two_power_tower,
          "verify_shift_identity: base must be 2^(2^s)");
  require(n_max >= 1 && n_max + profile.b < kIndexLimit,
          "verify_shift_identity: n_max + b too large");
  CheckResult result;
  for (u64 n = 1; n <= n_max; ++n) {
    const u64 lhs = last_nonzero_value(n, profile);
    const u64 rhs = last_nonzero_value(n + profile.b, profile);
    if (lhs != rhs) {
      result.passed = false;
      result.counterexample = Counterexample{n, lhs, rhs};
      return result;
    }
  }
  return result;
}

std::vector<u32> last_nonzero_values(const BaseProfile& profile, u64 n_lo, u64 n_hi) {
  require(1 <= n_lo && n_lo <= n_hi, "last_nonzero_values: bad range");
  require(n_hi - n_lo < (u64{1} << 32), "last_nonzero_values: range too long");
  std::vector<u32> values;
  values.reserve(n_hi - n_lo + 1);
  for (u64 n = n_lo; n <= n_hi; ++n) {
    values.push_back(static_cast<u32>(last_nonzero_value(n, profile)));
  }
  return values;
}

std::optional<u64> witness_for_period(const BaseProfile& profile, u64 t, u64 n_start,
                                      u64 n_max) {
  require(t >= 1, "witness_for_period: lag must be positive");
  require(n_start >= 1, "witness_for_period: start must be positive");
  require(n_max + t >= n_max && n_max + t < kIndexLimit,
          "witness_for_period: n_max + t too large");
  for (u64 n = n_start; n <= n_max; ++n) {
    if (last_nonzero_value(n, profile) != last_nonzero_value(n + t, profile)) return n;
  }
  return std::nullopt;
}

std::vector<u64> WitnessTable::none_found() const {
  std::vector<u64> missing;
  for (u64 t = 1; t <= entries.size(); ++t) {
    if (!entries[t - 1]) missing.push_back(t);
  }
  for (const ExtraLag& lag : extra_lags) {
    if (!lag.witness) missing.push_back(lag.t);
  }
  return missing;
}

WitnessTable nonperiodicity_scan(const BaseProfile& profile, u64 t_max, u64 n_max) {
  require(t_max >= 1, "nonperiodicity_scan: t_max must be positive");
  require(n_max >= 1, "nonperiodicity_scan: n_max must be positive");
  require(n_max + t_max >= n_max && n_max + t_max < kIndexLimit,
          "nonperiodicity_scan: n_max + t_max too large");
  const std::vector<u32> values = last_nonzero_values(profile, 1, n_max + t_max);
  WitnessTable table;
  table.b = profile.b;
  table.t_max = t_max;
  table.n_max = n_max;
  table.entries.resize(t_max);
  for (u64 t = 1; t <= t_max; ++t) {
    for (u64 n = 1; n <= n_max; ++n) {
      if (values[n - 1] != values[n + t - 1]) {
        table.entries[t - 1] = n;
        break;
      }
    }
  }
  if (profile.b > t_max) {
    table.extra_lags.push_back(
        WitnessTable::ExtraLag{profile.b, witness_for_period(profile, profile.b, 1, n_max)});
  }
  return table;
}

LevelSetReport level_set_check(const BaseProfile& profile, u64 n_max) {
  require(profile.is_even_squarefree, "level_set_check: base must be even and square-free");
  require(n_max >= 1 && u128{profile.b} * n_max < kIndexLimit,
          "level_set_check: b * n_max too large");
  LevelSetReport report;
  report.b = profile.b;
  report.half = profile.b / 2;
  report.n_max = n_max;
  for (u64 n = 1; n <= n_max; ++n) {
    if (last_nonzero_value(n, profile) == report.half) report.by_sequence.push_back(n);
    if (last_nonzero_of(n, profile.b) == report.half) report.by_value.push_back(n);
  }
  // Family at level i starts at half * b^(i-1) and advances by b^i.
  std::vector<u64> covered;
  for (u32 level = 1;; ++level) {
    u128 first = report.half;
    for (u32 i = 1; i < level; ++i) first *= profile.b;
    if (first > n_max) break;
    ProgressionFamily family;
    family.level = level;
    family.first = static_cast<u64>(first);
    // step = b^i = 2 * first, so it fits u64 whenever first <= n_max < 2^63.
    const u128 step = first * 2;
    family.step = static_cast<u64>(step);
    for (u128 m = first; m <= n_max; m += step) {
      family.members.push_back(static_cast<u64>(m));
    }
    covered.insert(covered.end(), family.members.begin(), family.members.end());
    report.families.push_back(std::move(family));
  }
  std::sort(covered.begin(), covered.end());

  report.consistent = true;
  auto record_mismatch = [&](const char* label, const std::vector<u64>& a,
                             const std::vector<u64>& b) {
    if (a == b) return;
    report.consistent = false;
    if (!report.mismatch.empty()) return;
    std::ostringstream out;
    out << label << ": first difference at n=";
    std::size_t i = 0;
    while (i < a.size() && i < b.size() && a[i] == b[i]) ++i;
    if (i < a.size() && i < b.size()) {
      out << a[i] << " vs " << b[i];
    } else {
      out << (i < a.size() ? a[i] : b[i]) << " (missing on one side)";
    }
    report.mismatch = out.str();
  };
  record_mismatch("sequence digit vs own digit", report.by_sequence, report.by_value);
  record_mismatch("own digit vs progression cover", report.by_value, covered);
  return report;
}

std::string_view verdict_name(Verdict v) {
  return v == Verdict::kWitnessedNonperiodic ? "WITNESSED_NONPERIODIC"
                                             : "PERIODIC_CANDIDATE";
}

ScanEntry classify_scan(const WitnessTable& table, const BaseProfile& profile) {
  ScanEntry entry;
  entry.b = table.b;
  entry.none_found = table.none_found();
  entry.verdict = entry.none_found.empty() ? Verdict::kWitnessedNonperiodic
                                           : Verdict::kPeriodicCandidate;
  const bool candidate = entry.verdict == Verdict::kPeriodicCandidate;
  entry.conjecture_relevant = candidate != profile.is_two_power_tower;
  return entry;
}

std::vector<ScanEntry> conjecture_scan(u64 b_lo, u64 b_hi, u64 t_max, u64 n_max,
                                       unsigned threads,
                                       const std::function<void(u64)>& progress) {
  require(b_lo >= 2 && b_lo <= b_hi && b_hi < (u64{1} << 32),
          "conjecture_scan: bad base range");
  std::vector<ScanEntry> entries(b_hi - b_lo + 1);
  parallel_for(entries.size(), threads, [&](std::size_t i) {
    const u64 b = b_lo + i;
    const BaseProfile profile = base_profile(b);
    entries[i] = classify_scan(nonperiodicity_scan(profile, t_max, n_max), profile);
    if (progress) progress(b);
  });
  return entries;
}

void parallel_for(std::size_t count, unsigned threads,
                  const std::function<void(std::size_t)>& body) {
  if (count == 0) return;
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, count));
  if (threads <= 1) {
    for (std::size_t i = 0; i < count; ++i) body(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::atomic<bool> abort{false};
  std::mutex error_lock;
  std::exception_ptr error;
  auto worker = [&] {
    while (!abort.load(std::memory_order_relaxed)) {
      const std::size_t i = next.fetch_add(1, std::memory_order_relaxed);
      if (i >= count) return;
      try {
        body(i);
      } catch (...) {
        std::scoped_lock lock(error_lock);
        if (!error) error = std::current_exception();
        abort.store(true, std::memory_order_relaxed);
        return;
      }
    }
  };
  std::vector<std::thread> pool;
  pool.reserve(threads);
  for (unsigned i = 0; i < threads; ++i) pool.emplace_back(worker);
  for (auto& thread : pool) thread.join();
  if (error) std::rethrow_exception(error);
}

}  // namespace selfpow
