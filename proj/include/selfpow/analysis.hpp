#pragma once

// Scale-invariance checks, witness searches and structure reports for the
// last-non-zero-digit sequence of n^n. Everything here produces bounded
// evidence: a scan that fails to refute a candidate period reports a
// candidate, never a theorem.

#include <functional>
#include <optional>
#include <string>

#include "selfpow/periodicity.hpp"

namespace selfpow {

/// A concrete index where an identity failed, with both side values.
struct Counterexample {
  u64 n = 0;
  u64 lhs = 0;
  u64 rhs = 0;
};

struct CheckResult {
  bool passed = true;
  std::optional<Counterexample> counterexample;
};

/// Verify that scaling n by the prime p leaves the last non-zero digit of
/// n^n in base p unchanged, for all n <= n_max. Requires p prime and
/// p * n_max < 2^63.
CheckResult check_fractality_prime(u64 p, u64 n_max);

/// Verify, in base p^t with t > 1, that indices p^t n and p^(t + step) n
/// give the same last non-zero digit for all n <= n_max. The default step
/// phi(t) is valid only when t is a power of p: the p-exponent of the
/// self-power shifts by phi(t) * p^(t+phi(t)) * n mod t, which need not
/// vanish otherwise (the least counterexample is then n = 1). The step
/// t * phi(t) is valid for every prime p and every t > 1. Throws
/// std::invalid_argument when p^(t + step) * n_max would overflow the
/// index cap.
CheckResult check_fractality_prime_power(u64 p, u32 t, u64 n_max,
                                         std::optional<u64> exponent_step = std::nullopt);

/// Verify that the last-non-zero-digit sequence in base b = 2^(2^s) is
/// b-periodic from n = 1 (not merely eventually), for all n <= n_max.
/// Throws std::invalid_argument unless the profile is a two-power tower.
CheckResult verify_shift_identity(const BaseProfile& profile, u64 n_max);

/// Last-non-zero-digit values for n in [n_lo, n_hi], values[i] at n_lo + i.
std::vector<u32> last_nonzero_values(const BaseProfile& profile, u64 n_lo, u64 n_hi);

/// Least n in [n_start, n_max] where the digit differs at lag t, or nothing.
std::optional<u64> witness_for_period(const BaseProfile& profile, u64 t, u64 n_start,
                                      u64 n_max);

/// For each candidate period T = 1..t_max, the least witness n <= n_max with
/// a differing digit at lag T, or NONE_FOUND. entries[T-1] is T's slot.
/// When b > t_max the lag T = b is additionally tested (in extra_lags):
/// the conjecturally periodic bases have period exactly b, so a scan that
/// never tried a base's own size would misarticulate them as witnessed.
struct WitnessTable {
  struct ExtraLag {
    u64 t = 0;
    std::optional<u64> witness;
  };

  u64 b = 0;
  u64 t_max = 0;
  u64 n_max = 0;
  std::vector<std::optional<u64>> entries;
  std::vector<ExtraLag> extra_lags;

  std::vector<u64> none_found() const;  // lags without a witness, ascending
};

WitnessTable nonperiodicity_scan(const BaseProfile& profile, u64 t_max, u64 n_max);

/// One arithmetic family half * b^(level-1) + k * b^level, k >= 0,
/// intersected with [1, n_max].
struct ProgressionFamily {
  u32 level = 0;
  u64 first = 0;
  u64 step = 0;
  std::vector<u64> members;
};

/// For even square-free b with half = b/2: the set of n whose n^n digit is
/// half, the set of n whose own digit is half, and the covering by
/// progression families. The three descriptions must coincide.
struct LevelSetReport {
  u64 b = 0;
  u64 half = 0;
  u64 n_max = 0;
  std::vector<u64> by_sequence;  // digit of n^n equals half
  std::vector<u64> by_value;     // digit of n itself equals half
  std::vector<ProgressionFamily> families;
  bool consistent = false;
  std::string mismatch;  // empty when consistent
};

/// Requires b even and square-free, with b * n_max < 2^63.
LevelSetReport level_set_check(const BaseProfile& profile, u64 n_max);

enum class Verdict { kWitnessedNonperiodic, kPeriodicCandidate };

std::string_view verdict_name(Verdict v);

struct ScanEntry {
  u64 b = 0;
  Verdict verdict = Verdict::kWitnessedNonperiodic;
  std::vector<u64> none_found;     // candidate periods without a witness
  bool conjecture_relevant = false;  // verdict disagrees with the 2^(2^s) classification
};

/// Verdict for one base from its witness table.
ScanEntry classify_scan(const WitnessTable& table, const BaseProfile& profile);

/// Classify every base in [b_lo, b_hi]: a base is a PERIODIC_CANDIDATE when
/// some T <= t_max has no witness n <= n_max, else WITNESSED_NONPERIODIC.
/// Parallel over bases; the result order and content are independent of the
/// thread count. progress, if given, is called once per finished base from
/// worker threads (unordered).
std::vector<ScanEntry> conjecture_scan(u64 b_lo, u64 b_hi, u64 t_max, u64 n_max,
                                       unsigned threads = 0,
                                       const std::function<void(u64)>& progress = {});

/// Run body(i) for i in [0, count) on up to `threads` workers (0 = hardware
/// concurrency). Exceptions from workers are rethrown on the caller.
void parallel_for(std::size_t count, unsigned threads,
                  const std::function<void(std::size_t)>& body);

}  // namespace selfpow
