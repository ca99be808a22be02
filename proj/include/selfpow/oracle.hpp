#pragma once

// Exact-arithmetic route for the last-non-zero-digit sequence: materialize
// n^n with arbitrary precision and read the digit off directly. Used by
// tests and --verify mode as the independent cross-check of the fast
// valuation/CRT path; keep it out of scan loops.

#include <gmpxx.h>

#include "selfpow/digits.hpp"

namespace selfpow {

/// Largest n for which the exact n^n route is considered tractable by
/// default. A knob, not a hard limit of the arithmetic.
inline constexpr u64 kDefaultOracleBound = 2000;

/// n^n as an exact integer.
mpz_class self_power(u64 n);

/// Last non-zero digit of an exact x >= 1 in base b: (x / b^v) mod b with
/// v the exact base-b valuation of x. Throws std::invalid_argument for x <= 0.
u64 last_nonzero_of(const mpz_class& x, u64 b);
Digit last_nonzero_digit_exact(const mpz_class& x, u64 b);

/// Last non-zero digit of n^n by exact exponentiation. Throws
/// std::invalid_argument when n exceeds the oracle bound.
u64 last_nonzero_oracle_value(u64 n, u64 b, u64 oracle_bound = kDefaultOracleBound);
Digit last_nonzero_digit_oracle(u64 n, u64 b, u64 oracle_bound = kDefaultOracleBound);

}  // namespace selfpow
