// Acceptance gate: twelve end-to-end criteria, one [PASS]/[FAIL] line each.
// Every criterion carries a wall-clock budget that is enforced, not just
// reported.  Criteria 1 and 12 exercise the real CLI binary; the rest go
// through the library.  Exits 0 only if all twelve hold.

#include "selfpow/analysis.hpp"
#include "selfpow/arith.hpp"
#include "selfpow/digits.hpp"
#include "selfpow/periodicity.hpp"
#include "selfpow/verify.hpp"

#include "json.hpp"

#include <chrono>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>
#include <sys/wait.h>
#include <vector>

using namespace selfpow;

namespace {

struct CliResult {
  int exit_code = -1;
  std::string out;
};

CliResult run_cli(const std::string& args) {
  const std::string cmd = std::string(SELFPOW_CLI_PATH) + " " + args + " 2>/dev/null";
  CliResult result;
  FILE* pipe = popen(cmd.c_str(), "r");
  if (pipe == nullptr) return result;
  char buf[4096];
  std::size_t got = 0;
  while ((got = std::fread(buf, 1, sizeof buf, pipe)) > 0) result.out.append(buf, got);
  const int status = pclose(pipe);
  result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return result;
}

int criteria_passed = 0;
int criteria_total = 0;

// Runs one criterion, enforcing its wall-clock budget.  `body` returns true
// on success and may push explanatory lines for the failure report.
void criterion(int id, const std::string& name, double budget_seconds,
               const std::function<bool(std::vector<std::string>&)>& body) {
  std::vector<std::string> details;
  const auto start = std::chrono::steady_clock::now();
  bool ok = false;
  try {
    ok = body(details);
  } catch (const std::exception& e) {
    details.push_back(std::string("exception: ") + e.what());
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (secs > budget_seconds) {
    ok = false;
    details.push_back("exceeded time budget");
  }
  ++criteria_total;
  if (ok) ++criteria_passed;
  std::printf("[%s] criterion %2d: %s (%.2fs, budget %gs)\n", ok ? "PASS" : "FAIL", id,
              name.c_str(), secs, budget_seconds);
  for (const std::string& line : details) std::printf("        %s\n", line.c_str());
  std::fflush(stdout);
}

}  // namespace

int main() {
  criterion(1, "base-10 period analysis via the CLI", 1.0, [](std::vector<std::string>& details) {
    const CliResult r = run_cli("period 10 --format json");
    if (r.exit_code != 0) {
      details.push_back("CLI exited with code " + std::to_string(r.exit_code));
      return false;
    }
    const auto record = nlohmann::json::parse(r.out, nullptr, false);
    if (record.is_discarded()) {
      details.push_back("CLI output is not valid JSON");
      return false;
    }
    const auto& results = record["results"];
    return results["theoretical"] == 20 && results["empirical"] == 20 && results["start"] == 1;
  });

  criterion(2, "base-3 opening terms and settled cycle", 1.0, [](std::vector<std::string>& details) {
    const BaseProfile profile = base_profile(3);
    const std::vector<u32> expected = {1, 1, 0, 1, 2, 0, 1, 1, 0, 1, 2, 0, 1, 1, 0, 1,
                                       2, 0, 1, 1, 0, 1, 2, 0, 1, 1, 0, 1, 2, 0, 1};
    if (last_digit_values(profile, Window{1, 31}) != expected) {
      details.push_back("opening 31 terms do not match the frozen listing");
      return false;
    }
    const EmpiricalPeriod ep = empirical_period(profile, default_window(profile));
    if (ep.period != 6 || ep.start != 1) {
      details.push_back("expected the sequence to be 6-periodic from the first index");
      return false;
    }
    return last_digit_values(profile, Window{1, 6}) == std::vector<u32>{1, 1, 0, 1, 2, 0};
  });

  criterion(3, "break predicate matches observed jumps (b <= 500, m <= 64)", 30.0,
            [](std::vector<std::string>& details) {
              for (u64 b = 2; b <= 500; ++b) {
                const BaseProfile profile = base_profile(b);
                const u64 h = profile.eventual_period;
                for (u64 m = 1; m <= 64; ++m) {
                  const bool predicted = breaks_at(m, profile);
                  const bool observed =
                      last_digit_value(m, profile) != last_digit_value(m + h, profile);
                  if (predicted != observed) {
                    details.push_back("mismatch at b=" + std::to_string(b) +
                                      " m=" + std::to_string(m));
                    return false;
                  }
                }
              }
              return true;
            });

  criterion(4, "eventual period holds and every proper divisor is refuted (b <= 500)", 120.0,
            [](std::vector<std::string>& details) {
              for (u64 b = 2; b <= 500; ++b) {
                const BaseProfile profile = base_profile(b);
                const u64 h = profile.eventual_period;
                const u64 start = preperiod_start(profile);
                const Window window{start, start + 4 * h};
                const std::vector<u32> values = last_digit_values(profile, window);
                const auto value_at = [&](u64 n) { return values[n - window.lo]; };
                for (u64 n = start; n < start + 3 * h; ++n) {
                  if (value_at(n) != value_at(n + h)) {
                    details.push_back("period " + std::to_string(h) + " broken at n=" +
                                      std::to_string(n) + " for b=" + std::to_string(b));
                    return false;
                  }
                }
                for (const u64 d : divisors(profile.factors)) {
                  if (d == h) continue;
                  bool refuted = false;
                  for (u64 n = start; n + d <= window.hi && !refuted; ++n) {
                    refuted = value_at(n) != value_at(n + d);
                  }
                  if (!refuted) {
                    details.push_back("divisor " + std::to_string(d) +
                                      " not refuted for b=" + std::to_string(b));
                    return false;
                  }
                }
              }
              return true;
            });

  criterion(5, "periodic-from-start criterion (b <= 500)", 5.0,
            [](std::vector<std::string>& details) {
              for (u64 b = 2; b <= 500; ++b) {
                const BaseProfile profile = base_profile(b);
                if (is_periodic_from_start(profile) != (preperiod_start(profile) == 1)) {
                  details.push_back("criterion disagrees with the start index at b=" +
                                    std::to_string(b));
                  return false;
                }
              }
              return true;
            });

  criterion(6, "fast digits agree with exact big-integer powers (n <= 1500, b <= 100)", 120.0,
            [](std::vector<std::string>& details) {
              const SuiteResult suite = run_oracle_suite(1500, 100);
              for (const SuiteCheck& check : suite.checks) {
                if (!check.passed) details.push_back(check.name + ": " + check.detail);
              }
              return suite.passed();
            });

  criterion(7, "prime-base scaling identity (p in {2,3,5,7,11,13}, n <= 10^4)", 5.0,
            [](std::vector<std::string>& details) {
              for (const u64 p : {2, 3, 5, 7, 11, 13}) {
                const CheckResult result = check_fractality_prime(p, 10000);
                if (!result.passed) {
                  const Counterexample& c = *result.counterexample;
                  details.push_back("p=" + std::to_string(p) + ": n=" + std::to_string(c.n) +
                                    " gives " + std::to_string(c.lhs) + " vs " +
                                    std::to_string(c.rhs));
                  return false;
                }
              }
              return true;
            });

  criterion(8, "prime-power scaling identity with totient step (five pairs, n <= 10^3)", 5.0,
            [](std::vector<std::string>& details) {
              const std::vector<std::pair<u64, u32>> pairs = {
                  {3, 2}, {2, 3}, {2, 4}, {5, 2}, {3, 3}};
              bool all = true;
              for (const auto& [p, t] : pairs) {
                const CheckResult result = check_fractality_prime_power(p, t, 1000);
                if (result.passed) continue;
                all = false;
                const Counterexample& c = *result.counterexample;
                details.push_back("p=" + std::to_string(p) + " t=" + std::to_string(t) +
                                  ": n=" + std::to_string(c.n) + " gives digit " +
                                  std::to_string(c.lhs) + " under p^t scaling but " +
                                  std::to_string(c.rhs) + " under p^(t+phi(t)) scaling");
              }
              if (!all) {
                details.push_back(
                    "note: the totient-step identity provably holds only when t is itself a "
                    "power of p; the step t*phi(t) holds for all five pairs "
                    "(see `selfpow verify --suite lemmas`)");
              }
              return all;
            });

  criterion(9, "tower-base shift identity (b in {2,4,16,256}, n <= 10^5)", 10.0,
            [](std::vector<std::string>& details) {
              for (const u64 b : {2, 4, 16, 256}) {
                const CheckResult result = verify_shift_identity(base_profile(b), 100000);
                if (!result.passed) {
                  const Counterexample& c = *result.counterexample;
                  details.push_back("b=" + std::to_string(b) + ": n=" + std::to_string(c.n) +
                                    " gives " + std::to_string(c.lhs) + " vs " +
                                    std::to_string(c.rhs));
                  return false;
                }
              }
              return true;
            });

  criterion(10, "half-digit level sets (b in {2,6,10,14,22,26,30}, n <= 10^4)", 10.0,
            [](std::vector<std::string>& details) {
              for (const u64 b : {2, 6, 10, 14, 22, 26, 30}) {
                const LevelSetReport report = level_set_check(base_profile(b), 10000);
                if (!report.consistent) {
                  details.push_back("b=" + std::to_string(b) + ": " + report.mismatch);
                  return false;
                }
              }
              return true;
            });

  criterion(11, "non-periodicity witnesses for every lag T <= 100 (ten bases, n <= 10^5)", 60.0,
            [](std::vector<std::string>& details) {
              for (const u64 b : {3, 5, 7, 9, 25, 27, 8, 6, 10, 30}) {
                const WitnessTable table = nonperiodicity_scan(base_profile(b), 100, 100000);
                const std::vector<u64> missing = table.none_found();
                if (!missing.empty()) {
                  details.push_back("b=" + std::to_string(b) + ": no witness for lag " +
                                    std::to_string(missing.front()));
                  return false;
                }
              }
              return true;
            });

  criterion(12, "conjecture scan over 2..300 flags exactly the two-power towers (CLI)", 600.0,
            [](std::vector<std::string>& details) {
              const CliResult r = run_cli("scan --bmax 300 --tmax 100 --nmax 100000 --format json");
              if (r.exit_code != 0) {
                details.push_back("CLI exited with code " + std::to_string(r.exit_code));
                return false;
              }
              std::istringstream stream(r.out);
              std::string line, last;
              while (std::getline(stream, line)) {
                if (!line.empty()) last = line;
              }
              const auto summary = nlohmann::json::parse(last, nullptr, false);
              if (summary.is_discarded()) {
                details.push_back("scan summary line is not valid JSON");
                return false;
              }
              const auto expected = nlohmann::json::array({2, 4, 16, 256});
              if (summary["results"]["candidates"] != expected) {
                details.push_back("candidates: " + summary["results"]["candidates"].dump());
                return false;
              }
              return summary["results"]["mismatches"].empty();
            });

  std::printf("acceptance: %d/%d criteria passed\n", criteria_passed, criteria_total);
  return criteria_passed == criteria_total ? 0 : 1;
}
