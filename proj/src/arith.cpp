#include "selfpow/arith.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <numeric>

namespace selfpow {
namespace {

constexpr u64 kTrialBound = 100'000;

const std::vector<u32>& trial_primes() {
  static const std::vector<u32> primes = [] {
    std::vector<bool> composite(kTrialBound + 1, false);
    std::vector<u32> out;
    for (u64 i = 2; i <= kTrialBound; ++i) {
      if (composite[i]) continue;
      out.push_back(static_cast<u32>(i));
      for (u64 j = i * i; j <= kTrialBound; j += i) composite[j] = true;
    }
    return out;
  }();
  return primes;
}

u64 pow_u64(u64 base, Exponent e, u64 m) {
  u64 result = 1 % m;
  u64 b = base % m;
  for (u128 bits = e.raw(); bits != 0; bits >>= 1) {
    if (bits & 1) result = mul_mod(result, b, m);
    b = mul_mod(b, b, m);
  }
  return result;
}

bool miller_rabin(u64 n) {
  // Valid for every n < 2^64 with this fixed witness set.
  static constexpr std::array<u64, 7> kWitnesses = {2,      325,     9375,
                                                    28178,  450775,  9780504,
                                                    1795265022};
  const int r = std::countr_zero(n - 1);
  const u64 d = (n - 1) >> r;
  for (u64 a : kWitnesses) {
    const u64 base = a % n;
    if (base == 0) continue;
    u64 x = pow_u64(base, Exponent(d), n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int i = 1; i < r; ++i) {
      x = mul_mod(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

// Pollard's rho, Brent cycle finding, deterministic parameter schedule.
// Precondition: n composite, odd, with no prime factor <= kTrialBound.
u64 pollard_brent(u64 n) {
  for (u64 c = 1;; ++c) {
    auto step = [n, c](u64 x) { return (mul_mod(x, x, n) + c) % n; };
    u64 x = 2, y = 2, d = 1;
    u64 power = 1, lam = 1;
    u64 saved_y = y;
    while (d == 1) {
      if (power == lam) {
        x = y;
        power <<= 1;
        lam = 0;
      }
      // batch gcd: accumulate |x - y| products, check every 128 steps
      u64 prod = 1;
      const u64 batch = std::min<u64>(128, power - lam);
      saved_y = y;
      for (u64 i = 0; i < batch; ++i) {
        y = step(y);
        prod = mul_mod(prod, x > y ? x - y : y - x, n);
      }
      lam += batch;
      d = std::gcd(prod, n);
    }
    if (d == n) {
      // backtrack one step at a time from the last batch
      y = saved_y;
      do {
        y = step(y);
        d = std::gcd(x > y ? x - y : y - x, n);
      } while (d == 1);
    }
    if (d != n) return d;
  }
}

void factor_recursive(u64 n, std::vector<u64>& primes_out) {
  if (n == 1) return;
  if (is_prime(n)) {
    primes_out.push_back(n);
    return;
  }
  const u64 d = pollard_brent(n);
  factor_recursive(d, primes_out);
  factor_recursive(n / d, primes_out);
}

// Extended gcd: returns g = gcd(a, b) and x with a*x == g (mod b).
struct Egcd {
  u64 g;
  u64 x;  // already reduced mod b
};

Egcd extended_gcd_mod(u64 a, u64 b) {
  i64 old_s = 1, s = 0;
  u64 old_r = a, r = b;
  while (r != 0) {
    const u64 q = old_r / r;
    const u64 next_r = old_r - q * r;
    const i64 next_s = old_s - static_cast<i64>(q) * s;
    old_r = r;
    r = next_r;
    old_s = s;
    s = next_s;
  }
  i64 x = old_s % static_cast<i64>(b);
  if (x < 0) x += static_cast<i64>(b);
  return {old_r, static_cast<u64>(x)};
}

}  // namespace

bool is_prime(u64 n) {
  if (n < 2) return false;
  for (u64 p : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
    if (n % p == 0) return n == p;
  }
  if (n < 41 * 41) return true;
  return miller_rabin(n);
}

Factorization factorize(u64 n) {
  if (n == 0) throw std::invalid_argument("factorize: n must be >= 1");
  Factorization f;
  f.value = n;
  for (u32 p : trial_primes()) {
    if (u64{p} * p > n) break;
    if (n % p != 0) continue;
    u32 a = 0;
    while (n % p == 0) {
      n /= p;
      ++a;
    }
    f.factors.push_back({p, a});
  }
  if (n > 1) {
    if (n <= kTrialBound * kTrialBound || is_prime(n)) {
      // After trial division up to sqrt cutoff, a cofactor below the square
      // of the bound is prime.
      f.factors.push_back({n, 1});
    } else {
      std::vector<u64> rest;
      factor_recursive(n, rest);
      std::sort(rest.begin(), rest.end());
      for (std::size_t i = 0; i < rest.size();) {
        std::size_t j = i;
        while (j < rest.size() && rest[j] == rest[i]) ++j;
        f.factors.push_back({rest[i], static_cast<u32>(j - i)});
        i = j;
      }
    }
  }
  return f;
}

u64 euler_phi(const Factorization& f) {
  u64 phi = 1;
  for (const auto& [p, a] : f.factors) {
    phi *= p - 1;
    for (u32 i = 1; i < a; ++i) phi *= p;
  }
  return phi;
}

u64 carmichael(const Factorization& f) {
  u64 lambda = 1;
  for (const auto& [p, a] : f.factors) {
    u64 lpp;
    if (p == 2) {
      lpp = a == 1 ? 1 : a == 2 ? 2 : u64{1} << (a - 2);
    } else {
      lpp = p - 1;
      for (u32 i = 1; i < a; ++i) lpp *= p;
    }
    lambda = std::lcm(lambda, lpp);
  }
  return lambda;
}

u64 radical(const Factorization& f) {
  u64 rad = 1;
  for (const auto& [p, a] : f.factors) rad *= p;
  return rad;
}

std::vector<u64> divisors(const Factorization& f) {
  std::vector<u64> out{1};
  for (const auto& [p, a] : f.factors) {
    const std::size_t n = out.size();
    u64 pk = 1;
    for (u32 k = 1; k <= a; ++k) {
      pk *= p;
      for (std::size_t i = 0; i < n; ++i) out.push_back(out[i] * pk);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

u64 mod_pow(u64 base, Exponent e, u64 m) {
  if (m == 0 || m > kModulusCap) {
    throw std::invalid_argument("mod_pow: modulus out of range");
  }
  return pow_u64(base, e, m);
}

Exponent reduced_exponent(Exponent e, u64 m, u64 lambda_m) {
  if (m < 2) throw std::invalid_argument("reduced_exponent: m must be >= 2");
  if (m > kModulusCap) throw std::invalid_argument("reduced_exponent: modulus out of range");
  const u64 threshold = std::max<u64>(lambda_m, std::bit_width(m));
  if (e < Exponent(threshold)) return e;
  // r == e (mod lambda), lifted to at least the threshold so that r also
  // clears every prime-power exponent of m (bit_width(m) > log2 m >= s_i).
  u64 r = lambda_m + e.mod(lambda_m);
  while (r < threshold) r += lambda_m;
  return Exponent(r);
}

Exponent reduced_exponent(Exponent e, u64 m) {
  if (m < 2) throw std::invalid_argument("reduced_exponent: m must be >= 2");
  return reduced_exponent(e, m, carmichael(factorize(m)));
}

u64 crt_combine(std::span<const Residue> parts) {
  if (parts.empty()) throw std::invalid_argument("crt_combine: no parts");
  for (const Residue& part : parts) {
    if (part.modulus == 0 || part.modulus > kModulusCap) {
      throw std::invalid_argument("crt_combine: modulus out of range");
    }
    if (part.value >= part.modulus) {
      throw std::invalid_argument("crt_combine: residue not reduced");
    }
  }
  u64 x = parts[0].value;
  u64 q = parts[0].modulus;
  for (const Residue& part : parts.subspan(1)) {
    if (u128{q} * part.modulus > kModulusCap) {
      throw std::overflow_error("crt_combine: combined modulus exceeds cap");
    }
    const auto [g, inv] = extended_gcd_mod(q % part.modulus, part.modulus);
    if (g != 1) throw std::invalid_argument("crt_combine: moduli not coprime");
    // x + q * t == part.value (mod part.modulus)
    const u64 delta = (part.value + part.modulus - x % part.modulus) % part.modulus;
    const u64 t = mul_mod(delta, inv, part.modulus);
    x += q * t;
    q *= part.modulus;
  }
  return x;
}

u32 p_adic_valuation(u128 x, u64 p) {
  if (x == 0) throw std::invalid_argument("p_adic_valuation: x must be >= 1");
  if (p < 2) throw std::invalid_argument("p_adic_valuation: p must be >= 2");
  u32 v = 0;
  while (x % p == 0) {
    x /= p;
    ++v;
  }
  return v;
}

}  // namespace selfpow
