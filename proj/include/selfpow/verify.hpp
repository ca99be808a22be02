#pragma once

// Named invariant suites behind `selfpow verify`: structural claims about
// the last-digit sequence (props), scale-invariance and structure of the
// last-non-zero-digit sequence (lemmas), and the fast-vs-exact grid
// comparison (oracle). Each check reports pass/fail plus a minimal
// counterexample string on failure.

#include <string>
#include <vector>

#include "selfpow/analysis.hpp"

namespace selfpow {

struct SuiteCheck {
  std::string name;
  bool passed = true;
  std::string detail;  // empty on pass; counterexample on failure
};

struct SuiteResult {
  std::string suite;
  std::vector<SuiteCheck> checks;

  bool passed() const;
};

/// Last-digit structure for every base b <= b_max:
///   - the break predicate agrees with observed values at every m <= m_max,
///   - the sequence repeats with the eventual period from the derived start
///     across three full periods,
///   - every proper divisor of the eventual period is refuted by a witness,
///   - the periodic-from-start criterion (s_i <= p_i) agrees with the
///     predicate-derived start being 1.
SuiteResult run_prop_suite(u64 b_max = 500, u64 m_max = 64);

/// Scale invariance and structure of the last-non-zero-digit sequence:
/// prime bases, prime-power bases, the 2^(2^s) shift identity, and the
/// half-digit progression structure for even square-free bases.
SuiteResult run_lemma_suite(u64 prime_n_max = 10000, u64 prime_power_n_max = 1000,
                            u64 shift_n_max = 100000, u64 level_n_max = 10000);

/// Fast valuation/CRT route against the exact n^n route on the full grid
/// 1 <= n <= n_max, 2 <= b <= b_max. Each n^n is materialized once and
/// shared across bases.
SuiteResult run_oracle_suite(u64 n_max = 1500, u64 b_max = 100);

}  // namespace selfpow
