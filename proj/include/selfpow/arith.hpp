#pragma once

// Exact integer and modular arithmetic kernels: 64-bit factorization
// (trial division + deterministic Miller-Rabin + Pollard-Brent),
// multiplicative functions, CRT for pairwise coprime moduli, and an
// exponent-reduction rule that is valid for non-coprime bases.
//
// All moduli are capped at 2^63 - 1 so that every modular product fits in
// an unsigned 128-bit intermediate; the cap is enforced at API boundaries.

#include <compare>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

namespace selfpow {

using u32 = std::uint32_t;
using u64 = std::uint64_t;
using i64 = std::int64_t;
using u128 = unsigned __int128;

/// Largest modulus accepted anywhere in the library.
inline constexpr u64 kModulusCap = (u64{1} << 63) - 1;

/// Exponents live in [0, 2^127 - 1].
inline constexpr u128 kExponentCap = ~u128{0} >> 1;

/// A non-negative exponent up to 2^127 - 1. Exponents are a distinct type:
/// raw machine integers do not silently mix into exponent arithmetic, and
/// products like n * e_i (up to ~2^69 here) cannot overflow 64 bits.
class Exponent {
 public:
  constexpr explicit Exponent(u64 v) : v_(v) {}

  /// a * b as an exponent. Throws std::overflow_error past the cap.
  static constexpr Exponent product(u64 a, u64 b) {
    if (b != 0 && u128{a} > kExponentCap / b) {
      throw std::overflow_error("Exponent::product overflows");
    }
    return Exponent(u128{a} * b, Raw{});
  }

  /// 2^k. k must be <= 126.
  static constexpr Exponent pow2(unsigned k) {
    if (k > 126) throw std::overflow_error("Exponent::pow2 overflows");
    return Exponent(u128{1} << k, Raw{});
  }

  constexpr Exponent operator+(Exponent rhs) const {
    if (v_ > kExponentCap - rhs.v_) {
      throw std::overflow_error("Exponent addition overflows");
    }
    return Exponent(v_ + rhs.v_, Raw{});
  }

  constexpr Exponent operator-(Exponent rhs) const {
    if (rhs.v_ > v_) throw std::underflow_error("Exponent subtraction underflows");
    return Exponent(v_ - rhs.v_, Raw{});
  }

  /// this * k. Throws std::overflow_error past the cap.
  constexpr Exponent times(u64 k) const {
    if (k != 0 && v_ > kExponentCap / k) {
      throw std::overflow_error("Exponent::times overflows");
    }
    return Exponent(v_ * k, Raw{});
  }

  /// Floor division by a positive machine integer.
  constexpr Exponent div(u64 k) const { return Exponent(v_ / k, Raw{}); }

  constexpr u64 mod(u64 m) const { return static_cast<u64>(v_ % m); }

  constexpr bool is_zero() const { return v_ == 0; }

  constexpr unsigned bit_length() const {
    unsigned n = 0;
    for (u128 v = v_; v != 0; v >>= 1) ++n;
    return n;
  }

  /// The raw 128-bit value; for powering loops and tests.
  constexpr u128 raw() const { return v_; }

  friend constexpr bool operator==(Exponent a, Exponent b) { return a.v_ == b.v_; }
  friend constexpr std::strong_ordering operator<=>(Exponent a, Exponent b) {
    if (a.v_ < b.v_) return std::strong_ordering::less;
    if (a.v_ > b.v_) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
  }

 private:
  // Tagged so the wide constructor never competes with Exponent(u64) in
  // overload resolution for plain integer literals.
  struct Raw {};
  constexpr Exponent(u128 v, Raw) : v_(v) {}
  u128 v_;
};

struct PrimePower {
  u64 prime = 0;
  u32 exponent = 0;
  friend bool operator==(const PrimePower&, const PrimePower&) = default;
};

/// Canonical factorization: primes strictly increasing, exponents >= 1,
/// and the product of all p^a equals `value`. Empty factor list iff value = 1.
struct Factorization {
  std::vector<PrimePower> factors;
  u64 value = 1;
  friend bool operator==(const Factorization&, const Factorization&) = default;
};

/// Deterministic primality test for any 64-bit n (fixed Miller-Rabin
/// witness set, no probabilistic error below 2^64).
bool is_prime(u64 n);

/// Factorize n >= 1. Trial division by primes <= 10^5, then Miller-Rabin
/// plus Pollard-Brent for what remains. Deterministic across runs.
/// Throws std::invalid_argument for n = 0.
Factorization factorize(u64 n);

/// phi(n) = prod p^(a-1) (p - 1).
u64 euler_phi(const Factorization& f);

/// Carmichael lambda: lambda(2) = 1, lambda(4) = 2, lambda(2^a) = 2^(a-2)
/// for a >= 3, lambda(p^a) = phi(p^a) for odd p, lcm over prime powers.
u64 carmichael(const Factorization& f);

/// Product of the distinct primes of n; rad(1) = 1.
u64 radical(const Factorization& f);

/// All divisors of the factored value, sorted ascending.
std::vector<u64> divisors(const Factorization& f);

/// (a * b) mod m with a 128-bit intermediate. Requires m in [1, kModulusCap].
constexpr u64 mul_mod(u64 a, u64 b, u64 m) {
  return static_cast<u64>(u128{a} * b % m);
}

/// a^e mod m by binary powering; e = 0 gives 1 mod m. m in [1, kModulusCap].
u64 mod_pow(u64 base, Exponent e, u64 m);

/// Smallest-footprint exponent r with a^e == a^r (mod m) for EVERY residue a,
/// coprime or not: r = e when e < threshold, otherwise r == e (mod lambda(m))
/// lifted into [threshold, threshold + lambda(m)), where
/// threshold = max(lambda(m), bit-length of m). The bit-length floor keeps
/// r at least as large as every prime-power exponent of m, which is what
/// makes the reduction valid for a sharing factors with m. Requires m >= 2.
Exponent reduced_exponent(Exponent e, u64 m);

/// Same, with lambda(m) already known (profiles cache it for scan loops).
Exponent reduced_exponent(Exponent e, u64 m, u64 lambda_m);

/// One congruence x == value (mod modulus).
struct Residue {
  u64 value = 0;
  u64 modulus = 1;
};

/// Combine congruences with pairwise coprime moduli into the unique
/// x < prod(moduli). Throws std::invalid_argument on an empty part list,
/// on value >= modulus, or on non-coprime moduli; std::overflow_error if
/// the combined modulus would exceed kModulusCap.
u64 crt_combine(std::span<const Residue> parts);

/// Largest k with p^k | x. Requires x >= 1 and p >= 2.
u32 p_adic_valuation(u128 x, u64 p);

}  // namespace selfpow
