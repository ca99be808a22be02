#include "selfpow/oracle.hpp"

namespace selfpow {

mpz_class self_power(u64 n) {
  if (n == 0) throw std::invalid_argument("self_power: n must be >= 1");
  mpz_class base;
  mpz_import(base.get_mpz_t(), 1, 1, sizeof(n), 0, 0, &n);
  mpz_class out;
  mpz_pow_ui(out.get_mpz_t(), base.get_mpz_t(), static_cast<unsigned long>(n));
  return out;
}

u64 last_nonzero_of(const mpz_class& x, u64 b) {
  if (b < 2) throw std::invalid_argument("last_nonzero_of: base must be >= 2");
  if (x <= 0) throw std::invalid_argument("last_nonzero_of: x must be >= 1");
  mpz_class base(static_cast<unsigned long>(b));
  mpz_class stripped;
  mpz_remove(stripped.get_mpz_t(), x.get_mpz_t(), base.get_mpz_t());
  return mpz_fdiv_ui(stripped.get_mpz_t(), static_cast<unsigned long>(b));
}

Digit last_nonzero_digit_exact(const mpz_class& x, u64 b) {
  return Digit(last_nonzero_of(x, b), b, DigitKind::kLastNonzero);
}

u64 last_nonzero_oracle_value(u64 n, u64 b, u64 oracle_bound) {
  if (n == 0) throw std::invalid_argument("oracle: n must be >= 1");
  if (n > oracle_bound) {
    throw std::invalid_argument("oracle: n exceeds the oracle bound");
  }
  return last_nonzero_of(self_power(n), b);
}

Digit last_nonzero_digit_oracle(u64 n, u64 b, u64 oracle_bound) {
  return Digit(last_nonzero_oracle_value(n, b, oracle_bound), b, DigitKind::kLastNonzero);
}

}  // namespace selfpow
