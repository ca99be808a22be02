#pragma once

// The two digit sequences of n^n in base b: the last digit (n^n mod b) and
// the last non-zero digit, computed without ever materializing n^n. The
// independent exact-arithmetic route lives in oracle.hpp so this fast path
// stays free of arbitrary-precision types.

#include "selfpow/arith.hpp"

namespace selfpow {

enum class DigitKind { kLast, kLastNonzero };

/// A digit value in base b. Last digits satisfy 0 <= value < base; last
/// non-zero digits satisfy 1 <= value < base.
class Digit {
 public:
  Digit(u64 value, u64 base, DigitKind kind) : value_(value), base_(base), kind_(kind) {
    if (base < 2) throw std::invalid_argument("Digit: base must be >= 2");
    if (value >= base) throw std::invalid_argument("Digit: value out of range");
    if (kind == DigitKind::kLastNonzero && value == 0) {
      throw std::invalid_argument("Digit: last non-zero digit cannot be 0");
    }
  }

  u64 value() const { return value_; }
  u64 base() const { return base_; }
  DigitKind kind() const { return kind_; }

  friend bool operator==(const Digit&, const Digit&) = default;

 private:
  u64 value_;
  u64 base_;
  DigitKind kind_;
};

/// Everything scan loops need about a base b, computed from one
/// factorization: prime powers q_i = p_i^(s_i) with their Carmichael values,
/// lambda(b), the eventual period lcm(b, lambda(b)), rad(b), and structural
/// flags. Immutable; share freely across threads.
struct BaseProfile {
  u64 b = 0;
  Factorization factors;
  std::vector<u64> prime_powers;     // p_i^(s_i), same order as factors
  std::vector<u64> prime_power_lambda;
  u64 lambda = 1;
  u64 eventual_period = 1;           // lcm(b, lambda(b))
  u64 rad = 1;
  bool is_even_squarefree = false;
  bool is_odd_prime_power = false;
  bool is_two_power_tower = false;   // b = 2^(2^s), s >= 0
};

/// Profile for 2 <= b < 2^32. Throws std::invalid_argument outside that range.
BaseProfile base_profile(u64 b);

/// Last digit of n^n in base b, i.e. n^n mod b, via exponent reduction.
/// Requires 1 <= n < 2^63.
u64 last_digit_value(u64 n, const BaseProfile& profile);
Digit last_digit(u64 n, const BaseProfile& profile);

/// Last non-zero digit of x itself (not of x^x) in base b, for machine
/// integers: strip trailing base-b zeros, then reduce. Requires x >= 1.
u64 last_nonzero_of(u64 x, u64 b);

/// Last non-zero digit of n^n in base b, never materializing n^n.
/// Requires 1 <= n < 2^63.
///
/// With b = prod p_i^(s_i):
///   1. e_i = v_{p_i}(n); c = n with all p_i stripped, so gcd(c, b) = 1.
///   2. v = min_i floor(n * e_i / s_i) is the number of trailing zero digits
///      of n^n in base b (0 when n is coprime to b).
///   3. The target is m = n^n / b^v = c^n * prod p_i^(E_i) with
///      E_i = n * e_i - v * s_i (128-bit exponent arithmetic).
///   4. m mod q_j per prime power q_j: the coprime factors via reduced
///      exponents; the p_j^(E_j) factor is 0 if E_j >= s_j, else exact.
///   5. CRT-combine; the result m mod b is nonzero because at least one
///      E_j stays below s_j.
u64 last_nonzero_value(u64 n, const BaseProfile& profile);
Digit last_nonzero_digit(u64 n, const BaseProfile& profile);

}  // namespace selfpow
