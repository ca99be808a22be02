#include <algorithm>
#include <atomic>

#include "doctest.h"
#include "selfpow/analysis.hpp"
#include "selfpow/oracle.hpp"

using namespace selfpow;

TEST_CASE("check_fractality_prime passes for small primes") {
  for (const u64 p : {2, 3, 5, 7, 11, 13}) {
    CAPTURE(p);
    const CheckResult r = check_fractality_prime(p, 2000);
    REQUIRE(r.passed);
  }
  CHECK_THROWS_AS(check_fractality_prime(6, 100), std::invalid_argument);
  CHECK_THROWS_AS(check_fractality_prime(3, 0), std::invalid_argument);
}

TEST_CASE("check_fractality_prime_power: phi(t) step holds iff t is a power of p") {
  CHECK(check_fractality_prime_power(2, 4, 500).passed);
  CHECK(check_fractality_prime_power(3, 3, 500).passed);

  const CheckResult r9 = check_fractality_prime_power(3, 2, 500);
  REQUIRE_FALSE(r9.passed);
  CHECK(r9.counterexample->n == 1);
  CHECK(r9.counterexample->lhs == 1);  // digit at 9
  CHECK(r9.counterexample->rhs == 3);  // digit at 27

  const CheckResult r8 = check_fractality_prime_power(2, 3, 500);
  REQUIRE_FALSE(r8.passed);
  CHECK(r8.counterexample->n == 1);
  CHECK(r8.counterexample->lhs == 1);
  CHECK(r8.counterexample->rhs == 2);

  const CheckResult r25 = check_fractality_prime_power(5, 2, 500);
  REQUIRE_FALSE(r25.passed);
  CHECK(r25.counterexample->n == 1);
  CHECK(r25.counterexample->lhs == 1);
  CHECK(r25.counterexample->rhs == 5);
}

TEST_CASE("check_fractality_prime_power: t*phi(t) step holds for all pairs") {
  for (const auto [p, t] : std::initializer_list<std::pair<u64, u32>>{
           {3, 2}, {2, 3}, {2, 4}, {5, 2}, {3, 3}, {7, 2}, {2, 5}}) {
    const u64 step = u64{t} * euler_phi(factorize(t));
    CAPTURE(p);
    CAPTURE(t);
    REQUIRE(check_fractality_prime_power(p, t, 500, step).passed);
  }
}

TEST_CASE("check_fractality_prime_power rejects bad parameters") {
  CHECK_THROWS_AS(check_fractality_prime_power(4, 2, 100), std::invalid_argument);
  CHECK_THROWS_AS(check_fractality_prime_power(3, 1, 100), std::invalid_argument);
  // 3^25 overflows the 32-bit base cap
  CHECK_THROWS_AS(check_fractality_prime_power(3, 25, 100), std::invalid_argument);
  // base fits but scaled index would overflow 2^63
  CHECK_THROWS_AS(check_fractality_prime_power(2, 31, u64{1} << 40), std::invalid_argument);
}

TEST_CASE("verify_shift_identity on towers; first base-4 block matches the oracle") {
  CHECK(verify_shift_identity(base_profile(2), 5000).passed);
  CHECK(verify_shift_identity(base_profile(4), 5000).passed);
  CHECK(verify_shift_identity(base_profile(16), 5000).passed);
  CHECK(verify_shift_identity(base_profile(256), 5000).passed);
  CHECK_THROWS_AS(verify_shift_identity(base_profile(8), 100), std::invalid_argument);
  CHECK_THROWS_AS(verify_shift_identity(base_profile(10), 100), std::invalid_argument);

  std::vector<u64> block;
  for (u64 n = 1; n <= 4; ++n) block.push_back(last_nonzero_oracle_value(n, 4));
  CHECK(block == std::vector<u64>{1, 1, 3, 1});
  for (u64 n = 1; n <= 4; ++n) {
    CHECK(last_nonzero_value(n, base_profile(4)) == block[n - 1]);
  }
}

TEST_CASE("witness_for_period: least witnesses and NONE_FOUND") {
  const BaseProfile b4 = base_profile(4);
  CHECK_FALSE(witness_for_period(b4, 4, 1, 100000).has_value());

  const BaseProfile b3 = base_profile(3);
  const auto w3 = witness_for_period(b3, 6, 1, 10000);
  REQUIRE(w3.has_value());
  CHECK(*w3 <= 10000);
  CHECK(last_nonzero_value(*w3, b3) != last_nonzero_value(*w3 + 6, b3));
  // minimality + oracle re-validation of the inequality
  for (u64 n = 1; n < *w3; ++n) {
    REQUIRE(last_nonzero_value(n, b3) == last_nonzero_value(n + 6, b3));
  }
  CHECK(last_nonzero_oracle_value(*w3, 3) != last_nonzero_oracle_value(*w3 + 6, 3));

  const BaseProfile b10 = base_profile(10);
  const auto w10 = witness_for_period(b10, 20, 1, 10000);
  REQUIRE(w10.has_value());
  CHECK(last_nonzero_oracle_value(*w10, 10) != last_nonzero_oracle_value(*w10 + 20, 10));

  CHECK_FALSE(witness_for_period(b3, 6, *w3 + 1, *w3).has_value());  // empty range
}

TEST_CASE("nonperiodicity_scan: witness tables") {
  const WitnessTable t16 = nonperiodicity_scan(base_profile(16), 100, 20000);
  CHECK(t16.none_found() == std::vector<u64>{16, 32, 48, 64, 80, 96});
  CHECK(t16.extra_lags.empty());  // 16 <= t_max, own lag already covered

  const WitnessTable t2 = nonperiodicity_scan(base_profile(2), 50, 1000);
  CHECK(t2.none_found().size() == 50);  // constant sequence: nothing witnessed

  const WitnessTable t9 = nonperiodicity_scan(base_profile(9), 60, 20000);
  CHECK(t9.none_found().empty());
  for (u64 t = 1; t <= 60; ++t) {
    const auto& w = t9.entries[t - 1];
    REQUIRE(w.has_value());
    CAPTURE(t);
    REQUIRE(last_nonzero_value(*w, base_profile(9)) !=
            last_nonzero_value(*w + t, base_profile(9)));
    if (*w <= 1000) {
      REQUIRE(last_nonzero_oracle_value(*w, 9) != last_nonzero_oracle_value(*w + t, 9));
    }
  }

  // a base above t_max gets its own size as an extra candidate lag
  const WitnessTable t256 = nonperiodicity_scan(base_profile(256), 10, 5000);
  REQUIRE(t256.extra_lags.size() == 1);
  CHECK(t256.extra_lags[0].t == 256);
  CHECK_FALSE(t256.extra_lags[0].witness.has_value());
  CHECK(t256.none_found() == std::vector<u64>{256});

  const WitnessTable t150 = nonperiodicity_scan(base_profile(150), 10, 5000);
  REQUIRE(t150.extra_lags.size() == 1);
  CHECK(t150.extra_lags[0].t == 150);
  CHECK(t150.extra_lags[0].witness.has_value());  // 150 is no period of a non-tower base
}

TEST_CASE("level_set_check: half-digit structure") {
  const LevelSetReport r10 = level_set_check(base_profile(10), 200);
  CHECK(r10.consistent);
  CHECK(r10.half == 5);
  // family level 1: 5, 15, 25, ...; level 2: 50, 150; level 3: 500 (> 200)
  REQUIRE(r10.families.size() == 2);
  CHECK(r10.families[0].first == 5);
  CHECK(r10.families[0].step == 10);
  CHECK(r10.families[1].first == 50);
  CHECK(r10.families[1].step == 100);
  CHECK(r10.families[1].members == std::vector<u64>{50, 150});
  CHECK(std::count(r10.by_sequence.begin(), r10.by_sequence.end(), 50) == 1);
  CHECK(last_nonzero_value(50, base_profile(10)) == 5);  // 50^50 / 10^50 = 5^50, ends in 5

  const LevelSetReport r2 = level_set_check(base_profile(2), 100);
  CHECK(r2.consistent);
  CHECK(r2.by_sequence.size() == 100);  // constant sequence: every n qualifies

  CHECK(level_set_check(base_profile(6), 2000).consistent);
  CHECK(level_set_check(base_profile(30), 2000).consistent);

  CHECK_THROWS_AS(level_set_check(base_profile(9), 100), std::invalid_argument);
  CHECK_THROWS_AS(level_set_check(base_profile(12), 100), std::invalid_argument);
}

TEST_CASE("classify_scan and conjecture_scan verdicts") {
  const std::vector<ScanEntry> entries = conjecture_scan(2, 20, 100, 20000);
  REQUIRE(entries.size() == 19);
  std::vector<u64> candidates;
  for (const ScanEntry& e : entries) {
    if (e.verdict == Verdict::kPeriodicCandidate) candidates.push_back(e.b);
    CHECK_FALSE(e.conjecture_relevant);
  }
  CHECK(candidates == std::vector<u64>{2, 4, 16});

  CHECK(verdict_name(Verdict::kPeriodicCandidate) == "PERIODIC_CANDIDATE");
  CHECK(verdict_name(Verdict::kWitnessedNonperiodic) == "WITNESSED_NONPERIODIC");

  const std::vector<ScanEntry> none = conjecture_scan(5, 9, 100, 20000);
  for (const ScanEntry& e : none) CHECK(e.verdict == Verdict::kWitnessedNonperiodic);

  const std::vector<ScanEntry> tower = conjecture_scan(256, 256, 100, 20000);
  REQUIRE(tower.size() == 1);
  CHECK(tower[0].verdict == Verdict::kPeriodicCandidate);
  CHECK(tower[0].none_found == std::vector<u64>{256});
  CHECK_FALSE(tower[0].conjecture_relevant);

  CHECK_THROWS_AS(conjecture_scan(1, 5, 10, 100), std::invalid_argument);
  CHECK_THROWS_AS(conjecture_scan(9, 5, 10, 100), std::invalid_argument);
}

TEST_CASE("scan results are identical across thread counts") {
  const std::vector<ScanEntry> serial = conjecture_scan(2, 40, 30, 3000, 1);
  const std::vector<ScanEntry> parallel = conjecture_scan(2, 40, 30, 3000, 4);
  REQUIRE(serial.size() == parallel.size());
  for (std::size_t i = 0; i < serial.size(); ++i) {
    CHECK(serial[i].b == parallel[i].b);
    CHECK(serial[i].verdict == parallel[i].verdict);
    CHECK(serial[i].none_found == parallel[i].none_found);
    CHECK(serial[i].conjecture_relevant == parallel[i].conjecture_relevant);
  }
}

TEST_CASE("parallel_for: covers every index once and propagates exceptions") {
  std::vector<std::atomic<int>> hits(1000);
  parallel_for(1000, 4, [&](std::size_t i) { hits[i].fetch_add(1); });
  for (const auto& h : hits) CHECK(h.load() == 1);

  parallel_for(0, 4, [&](std::size_t) { FAIL("body must not run for count 0"); });

  CHECK_THROWS_AS(
      parallel_for(100, 4,
                   [](std::size_t i) {
                     if (i == 37) throw std::runtime_error("boom");
                   }),
      std::runtime_error);
}

TEST_CASE("progress callback fires once per base") {
  std::atomic<u64> calls{0};
  conjecture_scan(2, 12, 10, 500, 2, [&](u64) { calls.fetch_add(1); });
  CHECK(calls.load() == 11);
}
