#include "selfpow/digits.hpp"

#include <numeric>

namespace selfpow {
namespace {

constexpr u64 kBaseCap = u64{1} << 32;
constexpr u64 kIndexCap = u64{1} << 63;

void check_index(u64 n) {
  if (n == 0 || n >= kIndexCap) {
    throw std::invalid_argument("sequence index must satisfy 1 <= n < 2^63");
  }
}

bool two_power_tower(const Factorization& f) {
  if (f.factors.size() != 1 || f.factors[0].prime != 2) return false;
  const u32 s = f.factors[0].exponent;
  return (s & (s - 1)) == 0;  // s itself a power of two (s >= 1)
}

u64 prime_power_carmichael(u64 p, u32 a) {
  if (p == 2) return a == 1 ? 1 : a == 2 ? 2 : u64{1} << (a - 2);
  u64 l = p - 1;
  for (u32 i = 1; i < a; ++i) l *= p;
  return l;
}

}  // namespace

BaseProfile base_profile(u64 b) {
  if (b < 2 || b >= kBaseCap) {
    throw std::invalid_argument("base_profile: base must satisfy 2 <= b < 2^32");
  }
  BaseProfile profile;
  profile.b = b;
  profile.factors = factorize(b);
  profile.lambda = carmichael(profile.factors);
  profile.eventual_period = std::lcm(b, profile.lambda);
  profile.rad = radical(profile.factors);
  for (const auto& [p, s] : profile.factors.factors) {
    u64 q = 1;
    for (u32 i = 0; i < s; ++i) q *= p;
    profile.prime_powers.push_back(q);
    profile.prime_power_lambda.push_back(prime_power_carmichael(p, s));
  }
  const bool squarefree = profile.rad == b;
  profile.is_even_squarefree = squarefree && b % 2 == 0;
  profile.is_odd_prime_power = profile.factors.factors.size() == 1 && b % 2 == 1;
  profile.is_two_power_tower = two_power_tower(profile.factors);
  return profile;
}

u64 last_digit_value(u64 n, const BaseProfile& profile) {
  check_index(n);
  const Exponent r = reduced_exponent(Exponent(n), profile.b, profile.lambda);
  return mod_pow(n % profile.b, r, profile.b);
}

Digit last_digit(u64 n, const BaseProfile& profile) {
  return Digit(last_digit_value(n, profile), profile.b, DigitKind::kLast);
}

u64 last_nonzero_of(u64 x, u64 b) {
  if (x == 0) throw std::invalid_argument("last_nonzero_of: x must be >= 1");
  if (b < 2) throw std::invalid_argument("last_nonzero_of: base must be >= 2");
  while (x % b == 0) x /= b;
  return x % b;
}

u64 last_nonzero_value(u64 n, const BaseProfile& profile) {
  check_index(n);
  const auto& pps = profile.factors.factors;
  const std::size_t k = pps.size();

  // Strip the primes of b out of n: c is the b-coprime part.
  u64 c = n;
  u32 e[32];
  bool coprime = true;
  for (std::size_t i = 0; i < k; ++i) {
    u32 ei = 0;
    while (c % pps[i].prime == 0) {
      c /= pps[i].prime;
      ++ei;
    }
    e[i] = ei;
    coprime = coprime && ei == 0;
  }

  if (coprime) {
    // No trailing zeros: the last non-zero digit is the last digit.
    return mod_pow(n % profile.b,
                   reduced_exponent(Exponent(n), profile.b, profile.lambda),
                   profile.b);
  }

  // v = number of trailing zero digits of n^n in base b.
  Exponent v = Exponent::product(n, e[0]).div(pps[0].exponent);
  for (std::size_t i = 1; i < k; ++i) {
    const Exponent vi = Exponent::product(n, e[i]).div(pps[i].exponent);
    if (vi < v) v = vi;
  }

  // Per-prime-power residues of m = n^n / b^v, then CRT.
  Residue parts[32];
  for (std::size_t j = 0; j < k; ++j) {
    const u64 q = profile.prime_powers[j];
    const u64 lam_q = profile.prime_power_lambda[j];
    const Exponent big_e_j = Exponent::product(n, e[j]) - v.times(pps[j].exponent);
    u64 m_j;
    if (big_e_j >= Exponent(pps[j].exponent)) {
      m_j = 0;
    } else {
      // exact p_j^(E_j), E_j < s_j so this stays below q
      m_j = 1;
      for (u64 t = big_e_j.raw(); t > 0; --t) m_j *= pps[j].prime;
      m_j %= q;
      if (c != 1) {
        m_j = mul_mod(m_j, mod_pow(c % q, reduced_exponent(Exponent(n), q, lam_q), q), q);
      }
      for (std::size_t i = 0; i < k; ++i) {
        if (i == j || e[i] == 0) continue;
        const Exponent big_e_i = Exponent::product(n, e[i]) - v.times(pps[i].exponent);
        if (big_e_i.is_zero()) continue;
        m_j = mul_mod(m_j, mod_pow(pps[i].prime % q, reduced_exponent(big_e_i, q, lam_q), q), q);
      }
    }
    parts[j] = Residue{m_j, q};
  }
  const u64 m = crt_combine(std::span<const Residue>(parts, k));
  return m;
}

Digit last_nonzero_digit(u64 n, const BaseProfile& profile) {
  return Digit(last_nonzero_value(n, profile), profile.b, DigitKind::kLastNonzero);
}

}  // namespace selfpow
