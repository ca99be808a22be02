#include "selfpow/verify.hpp"

#include <algorithm>
#include <sstream>

#include "selfpow/oracle.hpp"

namespace selfpow {
namespace {

SuiteCheck pass_check(std::string name) { return SuiteCheck{std::move(name), true, {}}; }

SuiteCheck fail_check(std::string name, std::string detail) {
  return SuiteCheck{std::move(name), false, std::move(detail)};
}

SuiteCheck from_result(std::string name, const CheckResult& result) {
  if (result.passed) return pass_check(std::move(name));
  const Counterexample& ce = *result.counterexample;
  std::ostringstream out;
  out << "n=" << ce.n << ": " << ce.lhs << " != " << ce.rhs;
  return fail_check(std::move(name), out.str());
}

}  // namespace

bool SuiteResult::passed() const {
  return std::all_of(checks.begin(), checks.end(),
                     [](const SuiteCheck& c) { return c.passed; });
}

SuiteResult run_prop_suite(u64 b_max, u64 m_max) {
  SuiteResult result{"props", {}};
  SuiteCheck predicate = pass_check("break-predicate grid");
  SuiteCheck eventual = pass_check("eventual-period windows");
  SuiteCheck minimal = pass_check("minimal-period refutation");
  SuiteCheck from_start = pass_check("periodic-from-start criterion");

  for (u64 b = 2; b <= b_max; ++b) {
    const BaseProfile profile = base_profile(b);
    const u64 h = profile.eventual_period;
    const u64 start = preperiod_start(profile);
    // One window serves every check below: the break grid needs m_max + h,
    // the period checks need start + 3h and witnesses up to 3h + h/2.
    const Window window{1, 4 * h + m_max};
    const std::vector<u32> values = last_digit_values(profile, window);
    auto value_at = [&](u64 n) { return values[n - 1]; };

    if (predicate.passed) {
      for (u64 m = 1; m <= m_max; ++m) {
        const bool predicted = breaks_at(m, profile);
        const bool observed = value_at(m) != value_at(m + h);
        if (predicted != observed) {
          std::ostringstream out;
          out << "b=" << b << " m=" << m << ": predicate says "
              << (predicted ? "break" : "no break") << " but S(m)=" << value_at(m)
              << ", S(m+" << h << ")=" << value_at(m + h);
          predicate = fail_check(predicate.name, out.str());
          break;
        }
      }
    }

    if (eventual.passed) {
      for (u64 n = start; n + h <= start + 3 * h; ++n) {
        if (value_at(n) != value_at(n + h)) {
          std::ostringstream out;
          out << "b=" << b << ": S(" << n << ")=" << value_at(n) << " != S(" << n + h
              << ")=" << value_at(n + h) << " despite start " << start;
          eventual = fail_check(eventual.name, out.str());
          break;
        }
      }
    }

    if (minimal.passed) {
      for (const u64 t : divisors(factorize(h))) {
        if (t == h) continue;
        bool refuted = false;
        for (u64 n = 1; n + t <= window.hi; ++n) {
          if (value_at(n) != value_at(n + t)) {
            refuted = true;
            break;
          }
        }
        if (!refuted) {
          std::ostringstream out;
          out << "b=" << b << ": proper divisor " << t << " of " << h
              << " has no witness in [1, " << window.hi - t << "]";
          minimal = fail_check(minimal.name, out.str());
          break;
        }
      }
    }

    if (from_start.passed && is_periodic_from_start(profile) != (start == 1)) {
      std::ostringstream out;
      out << "b=" << b << ": criterion says "
          << (is_periodic_from_start(profile) ? "periodic" : "preperiodic")
          << " but derived start is " << start;
      from_start = fail_check(from_start.name, out.str());
    }
  }

  result.checks = {std::move(predicate), std::move(eventual), std::move(minimal),
                   std::move(from_start)};
  return result;
}

SuiteResult run_lemma_suite(u64 prime_n_max, u64 prime_power_n_max, u64 shift_n_max,
                            u64 level_n_max) {
  SuiteResult result{"lemmas", {}};
  for (const u64 p : {2, 3, 5, 7, 11, 13}) {
    std::ostringstream name;
    name << "prime-fractality p=" << p;
    result.checks.push_back(from_result(name.str(), check_fractality_prime(p, prime_n_max)));
  }
  for (const auto [p, t] : std::initializer_list<std::pair<u64, u32>>{
           {3, 2}, {2, 3}, {2, 4}, {5, 2}, {3, 3}}) {
    const u64 phi_t = euler_phi(factorize(t));
    {
      // The t*phi(t) index step holds for every (p, t).
      std::ostringstream name;
      name << "prime-power-fractality (step t*phi(t)) p=" << p << " t=" << t;
      result.checks.push_back(from_result(
          name.str(), check_fractality_prime_power(p, t, prime_power_n_max, t * phi_t)));
    }
    // The phi(t) step holds iff t is a power of p; otherwise n = 1 refutes
    // it, and that refutation is pinned here so it cannot silently vanish.
    u32 reduced = t;
    while (reduced % p == 0) reduced /= static_cast<u32>(p);
    const bool step_valid = reduced == 1;
    std::ostringstream name;
    name << (step_valid ? "prime-power-fractality (step phi(t)) p="
                        : "prime-power-fractality phi(t)-step refuted p=")
         << p << " t=" << t;
    const CheckResult stated = check_fractality_prime_power(p, t, prime_power_n_max);
    if (step_valid) {
      result.checks.push_back(from_result(name.str(), stated));
    } else if (stated.passed || stated.counterexample->n != 1) {
      result.checks.push_back(fail_check(
          name.str(), stated.passed ? "expected a counterexample at n=1, found none"
                                    : "counterexample moved away from n=1"));
    } else {
      result.checks.push_back(pass_check(name.str()));
    }
  }
  for (const u64 b : {2, 4, 16, 256}) {
    std::ostringstream name;
    name << "tower-shift b=" << b;
    result.checks.push_back(
        from_result(name.str(), verify_shift_identity(base_profile(b), shift_n_max)));
  }
  for (const u64 b : {2, 6, 10, 14, 22, 26, 30}) {
    std::ostringstream name;
    name << "half-digit-structure b=" << b;
    const LevelSetReport report = level_set_check(base_profile(b), level_n_max);
    if (report.consistent) {
      result.checks.push_back(pass_check(name.str()));
    } else {
      result.checks.push_back(fail_check(name.str(), report.mismatch));
    }
  }
  return result;
}

SuiteResult run_oracle_suite(u64 n_max, u64 b_max) {
  SuiteResult result{"oracle", {}};
  SuiteCheck last = pass_check("last digit vs exact");
  SuiteCheck nonzero = pass_check("last non-zero digit vs exact");

  std::vector<BaseProfile> profiles;
  profiles.reserve(b_max - 1);
  for (u64 b = 2; b <= b_max; ++b) profiles.push_back(base_profile(b));

  for (u64 n = 1; n <= n_max && (last.passed || nonzero.passed); ++n) {
    const mpz_class power = self_power(n);
    for (const BaseProfile& profile : profiles) {
      if (last.passed) {
        const u64 fast = last_digit_value(n, profile);
        const u64 exact = mpz_fdiv_ui(power.get_mpz_t(), profile.b);
        if (fast != exact) {
          std::ostringstream out;
          out << "n=" << n << " b=" << profile.b << ": fast " << fast << " != exact "
              << exact;
          last = fail_check(last.name, out.str());
        }
      }
      if (nonzero.passed) {
        const u64 fast = last_nonzero_value(n, profile);
        const u64 exact = last_nonzero_of(power, profile.b);
        if (fast != exact) {
          std::ostringstream out;
          out << "n=" << n << " b=" << profile.b << ": fast " << fast << " != exact "
              << exact;
          nonzero = fail_check(nonzero.name, out.str());
        }
      }
    }
  }

  result.checks = {std::move(last), std::move(nonzero)};
  return result;
}

}  // namespace selfpow
