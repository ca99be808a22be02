// selfpow: last digit and last non-zero digit of n^n in base b, period
// structure of the last-digit sequence, witness scans for non-periodicity,
// and the invariant suites. One subcommand per operation; text, json and
// csv output; all computations deterministic and thread-count independent.

#include <atomic>
#include <iostream>
#include <mutex>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "selfpow/oracle.hpp"
#include "selfpow/verify.hpp"

namespace {

using ordered_json = nlohmann::ordered_json;
using namespace selfpow;

constexpr int kExitOk = 0;
constexpr int kExitVerifyFailed = 1;
constexpr int kExitUsage = 2;
constexpr int kExitCrossCheck = 3;
constexpr int kExitWindowTooSmall = 4;

enum class Format { kText, kJson, kCsv };

Format parse_format(const std::string& name) {
  if (name == "text") return Format::kText;
  if (name == "json") return Format::kJson;
  if (name == "csv") return Format::kCsv;
  throw CLI::ValidationError("--format", "expected text, json or csv");
}

ordered_json record(const char* subcommand, ordered_json inputs, ordered_json results) {
  return ordered_json{{"schema_version", 1},
                      {"subcommand", subcommand},
                      {"inputs", std::move(inputs)},
                      {"results", std::move(results)}};
}

void emit(const ordered_json& j) { std::cout << j.dump() << '\n'; }

std::string join(const std::vector<u64>& values, const char* sep) {
  std::ostringstream out;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i) out << sep;
    out << values[i];
  }
  return out.str();
}

// --- digit ---------------------------------------------------------------

struct DigitArgs {
  std::vector<u64> positionals;
  std::vector<u64> emit_window;
  bool last_nonzero = false;
  bool verify = false;
  u64 oracle_bound = kDefaultOracleBound;
  std::string format = "text";
};

int run_digit(const DigitArgs& args) {
  const Format format = parse_format(args.format);
  const char* kind_name = args.last_nonzero ? "last_nonzero" : "last";

  if (!args.emit_window.empty()) {
    if (args.positionals.size() != 1) {
      std::cerr << "digit: --emit-sequence takes a single base argument\n";
      return kExitUsage;
    }
    const u64 b = args.positionals[0];
    const u64 lo = args.emit_window[0];
    const u64 hi = args.emit_window[1];
    const BaseProfile profile = base_profile(b);
    std::vector<u32> values;
    if (args.last_nonzero) {
      values = last_nonzero_values(profile, lo, hi);
    } else {
      if (lo < 1 || lo > hi) throw std::invalid_argument("digit: bad sequence range");
      values = last_digit_values(profile, Window{lo, hi});
    }
    if (format == Format::kJson) {
      emit(record("digit",
                  {{"b", b}, {"window", {lo, hi}}, {"kind", kind_name}},
                  {{"values", values}}));
    } else if (format == Format::kCsv) {
      std::cout << "n," << (args.last_nonzero ? "lnz" : "last") << '\n';
      for (std::size_t i = 0; i < values.size(); ++i) {
        std::cout << lo + i << ',' << values[i] << '\n';
      }
    } else {
      for (std::size_t i = 0; i < values.size(); ++i) {
        std::cout << (i ? ", " : "") << values[i];
      }
      std::cout << '\n';
    }
    return kExitOk;
  }

  if (args.positionals.size() != 2) {
    std::cerr << "digit: expected n and b\n";
    return kExitUsage;
  }
  const u64 n = args.positionals[0];
  const u64 b = args.positionals[1];
  const BaseProfile profile = base_profile(b);
  const u64 value = args.last_nonzero ? last_nonzero_value(n, profile)
                                      : last_digit_value(n, profile);

  std::string oracle_check;
  if (args.verify) {
    if (n > args.oracle_bound) {
      oracle_check = "skipped";
    } else {
      const mpz_class power = self_power(n);
      const u64 exact = args.last_nonzero ? last_nonzero_of(power, b)
                                          : mpz_fdiv_ui(power.get_mpz_t(), b);
      if (exact != value) {
        std::cerr << "digit: cross-check mismatch at n=" << n << " b=" << b << ": fast "
                  << value << ", exact " << exact << '\n';
        return kExitCrossCheck;
      }
      oracle_check = "match";
    }
  }

  if (format == Format::kJson) {
    ordered_json results{{"value", value}};
    if (args.verify) results["oracle_check"] = oracle_check;
    emit(record("digit", {{"n", n}, {"b", b}, {"kind", kind_name}}, std::move(results)));
  } else {
    std::cout << value << '\n';
    if (oracle_check == "skipped") {
      std::cerr << "digit: oracle skipped (n exceeds --oracle-bound " << args.oracle_bound
                << ")\n";
    }
  }
  return kExitOk;
}

// --- period --------------------------------------------------------------

struct PeriodArgs {
  u64 b = 0;
  u64 from = 1;
  u64 window_hi = 0;  // 0: default 6 * theoretical period
  std::string format = "text";
};

int run_period(const PeriodArgs& args) {
  const Format format = parse_format(args.format);
  const BaseProfile profile = base_profile(args.b);
  Window window = default_window(profile);
  if (args.from != 1 || args.window_hi != 0) {
    window.lo = args.from;
    if (args.window_hi != 0) window.hi = args.window_hi;
    if (window.lo < 1 || window.lo > window.hi) {
      throw std::invalid_argument("period: bad window");
    }
  }
  const PeriodReport report = period_report(profile, window);

  if (format == Format::kJson) {
    emit(record("period",
                {{"b", report.b}, {"window", {report.window.lo, report.window.hi}}},
                {{"theoretical", report.theoretical_period},
                 {"empirical", report.empirical_period},
                 {"start", report.empirical_start},
                 {"breaks", report.break_indices}}));
  } else if (format == Format::kCsv) {
    std::cout << "b,H,empirical,start,breaks\n"
              << report.b << ',' << report.theoretical_period << ','
              << report.empirical_period << ',' << report.empirical_start << ','
              << join(report.break_indices, ";") << '\n';
  } else {
    const std::vector<u32> cycle = last_digit_values(
        profile,
        Window{report.empirical_start, report.empirical_start + report.empirical_period - 1});
    std::cout << "b = " << report.b << '\n'
              << "theoretical period  " << report.theoretical_period << '\n'
              << "empirical period    " << report.empirical_period << '\n'
              << "periodic from       " << report.empirical_start << '\n'
              << "breaks              "
              << (report.break_indices.empty() ? "(none)" : join(report.break_indices, ", "))
              << '\n'
              << "cycle               (";
    for (std::size_t i = 0; i < cycle.size(); ++i) {
      std::cout << (i ? ", " : "") << cycle[i];
    }
    std::cout << ")\n"
              << "closed-form start   ceiling reading " << report.formula_start_ceiling
              << (report.formula_ceiling_matches ? " (matches)" : " (differs)")
              << ", floor reading " << report.formula_start_floor
              << (report.formula_floor_matches ? " (matches)" : " (differs)") << '\n';
  }

  if (report.empirical_period != report.theoretical_period) {
    std::cerr << "period: empirical period " << report.empirical_period
              << " contradicts theoretical " << report.theoretical_period << '\n';
    return kExitCrossCheck;
  }
  return kExitOk;
}

// --- scan ----------------------------------------------------------------

struct ScanArgs {
  u64 bmin = 2;
  u64 bmax = 0;
  u64 tmax = 100;
  u64 nmax = 100000;
  unsigned threads = 0;
  std::string format = "text";
};

int run_scan(const ScanArgs& args) {
  const Format format = parse_format(args.format);
  if (args.bmin < 2 || args.bmax < args.bmin) {
    throw std::invalid_argument("scan: need 2 <= --bmin <= --bmax");
  }
  if (args.bmax >= (u64{1} << 32)) throw std::invalid_argument("scan: --bmax too large");

  const std::size_t count = args.bmax - args.bmin + 1;
  std::vector<WitnessTable> tables(count);
  std::vector<ScanEntry> entries(count);
  std::atomic<std::size_t> done{0};
  const std::size_t tick = std::max<std::size_t>(1, count / 20);
  parallel_for(count, args.threads, [&](std::size_t i) {
    const BaseProfile profile = base_profile(args.bmin + i);
    tables[i] = nonperiodicity_scan(profile, args.tmax, args.nmax);
    entries[i] = classify_scan(tables[i], profile);
    const std::size_t finished = done.fetch_add(1) + 1;
    if (finished % tick == 0 || finished == count) {
      std::cerr << "scan: " << finished << '/' << count << " bases\n";
    }
  });

  std::vector<u64> candidates;
  std::vector<u64> mismatches;
  for (const ScanEntry& entry : entries) {
    if (entry.verdict == Verdict::kPeriodicCandidate) candidates.push_back(entry.b);
    if (entry.conjecture_relevant) mismatches.push_back(entry.b);
  }

  if (format == Format::kJson) {
    for (std::size_t i = 0; i < count; ++i) {
      ordered_json witnesses = ordered_json::array();
      for (const auto& w : tables[i].entries) {
        if (w) {
          witnesses.push_back(*w);
        } else {
          witnesses.push_back(nullptr);
        }
      }
      ordered_json extra = ordered_json::array();
      for (const auto& lag : tables[i].extra_lags) {
        extra.push_back(ordered_json{
            {"T", lag.t}, {"witness", lag.witness ? ordered_json(*lag.witness) : nullptr}});
      }
      emit(record("scan",
                  {{"b", entries[i].b}, {"tmax", args.tmax}, {"nmax", args.nmax}},
                  {{"verdict", verdict_name(entries[i].verdict)},
                   {"none_found", entries[i].none_found},
                   {"witnesses", std::move(witnesses)},
                   {"extra_lags", std::move(extra)}}));
    }
    emit(record("scan",
                {{"bmin", args.bmin}, {"bmax", args.bmax}, {"tmax", args.tmax},
                 {"nmax", args.nmax}},
                {{"candidates", candidates}, {"mismatches", mismatches}}));
  } else if (format == Format::kCsv) {
    std::cout << "b,T,witness_n\n";
    for (const WitnessTable& table : tables) {
      for (u64 t = 1; t <= table.t_max; ++t) {
        std::cout << table.b << ',' << t << ',';
        if (table.entries[t - 1]) std::cout << *table.entries[t - 1];
        std::cout << '\n';
      }
      for (const auto& lag : table.extra_lags) {
        std::cout << table.b << ',' << lag.t << ',';
        if (lag.witness) std::cout << *lag.witness;
        std::cout << '\n';
      }
    }
    std::cerr << "scan: candidates " << (candidates.empty() ? "(none)" : join(candidates, ", "))
              << '\n';
  } else {
    for (const ScanEntry& entry : entries) {
      std::cout << "b=" << entry.b << ' ' << verdict_name(entry.verdict);
      if (!entry.none_found.empty()) {
        std::cout << " (no witness for T=" << join(entry.none_found, ",") << ")";
      }
      if (entry.conjecture_relevant) std::cout << " [unexpected]";
      std::cout << '\n';
    }
    std::cout << "candidates: " << (candidates.empty() ? "(none)" : join(candidates, ", "))
              << '\n';
  }
  return kExitOk;
}

// --- verify --------------------------------------------------------------

struct VerifyArgs {
  std::string suite = "all";
  u64 props_bmax = 500;
  u64 props_mmax = 64;
  u64 prime_nmax = 10000;
  u64 power_nmax = 1000;
  u64 shift_nmax = 100000;
  u64 level_nmax = 10000;
  u64 oracle_nmax = 1500;
  u64 oracle_bmax = 100;
  std::string format = "text";
};

int run_verify(const VerifyArgs& args) {
  const Format format = parse_format(args.format);
  std::vector<SuiteResult> results;
  if (args.suite == "props" || args.suite == "all") {
    results.push_back(run_prop_suite(args.props_bmax, args.props_mmax));
  }
  if (args.suite == "lemmas" || args.suite == "all") {
    results.push_back(run_lemma_suite(args.prime_nmax, args.power_nmax, args.shift_nmax,
                                      args.level_nmax));
  }
  if (args.suite == "oracle" || args.suite == "all") {
    results.push_back(run_oracle_suite(args.oracle_nmax, args.oracle_bmax));
  }
  if (results.empty()) {
    std::cerr << "verify: unknown suite '" << args.suite
              << "' (expected props, lemmas, oracle or all)\n";
    return kExitUsage;
  }

  bool all_passed = true;
  for (const SuiteResult& suite : results) all_passed &= suite.passed();

  if (format == Format::kJson) {
    ordered_json suites = ordered_json::array();
    for (const SuiteResult& suite : results) {
      ordered_json checks = ordered_json::array();
      for (const SuiteCheck& check : suite.checks) {
        ordered_json entry{{"name", check.name}, {"passed", check.passed}};
        if (!check.passed) entry["detail"] = check.detail;
        checks.push_back(std::move(entry));
      }
      suites.push_back(ordered_json{
          {"suite", suite.suite}, {"passed", suite.passed()}, {"checks", std::move(checks)}});
    }
    emit(record("verify", {{"suite", args.suite}},
                {{"passed", all_passed}, {"suites", std::move(suites)}}));
  } else {
    for (const SuiteResult& suite : results) {
      std::cout << "suite " << suite.suite << ": "
                << (suite.passed() ? "pass" : "FAIL") << '\n';
      for (const SuiteCheck& check : suite.checks) {
        std::cout << "  [" << (check.passed ? "pass" : "FAIL") << "] " << check.name;
        if (!check.passed) std::cout << " — " << check.detail;
        std::cout << '\n';
      }
    }
    std::cout << (all_passed ? "PASS" : "FAIL") << '\n';
  }
  return all_passed ? kExitOk : kExitVerifyFailed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"last digit and last non-zero digit of n^n in base b"};
  app.require_subcommand(1);

  DigitArgs digit_args;
  CLI::App* digit = app.add_subcommand("digit", "single digit value, or a sequence dump");
  digit->add_option("values", digit_args.positionals, "n and b (or just b with --emit-sequence)")
      ->expected(1, 2);
  digit->add_flag("--last-nonzero", digit_args.last_nonzero,
                  "last non-zero digit instead of last digit");
  digit->add_flag("--verify", digit_args.verify, "cross-check against the exact n^n route");
  digit->add_option("--oracle-bound", digit_args.oracle_bound,
                    "largest n the exact route will attempt")
      ->capture_default_str();
  digit->add_option("--emit-sequence", digit_args.emit_window,
                    "dump values for n in [lo, hi] instead of a single n")
      ->expected(2);
  digit->add_option("--format", digit_args.format, "text, json or csv")->capture_default_str();

  PeriodArgs period_args;
  CLI::App* period = app.add_subcommand("period", "period and preperiod structure of a base");
  period->add_option("b", period_args.b, "base")->required();
  period->add_option("--from", period_args.from, "window start")->capture_default_str();
  period->add_option("--window", period_args.window_hi,
                     "window end (default: 6 * theoretical period)");
  period->add_option("--format", period_args.format, "text, json or csv")
      ->capture_default_str();

  ScanArgs scan_args;
  CLI::App* scan = app.add_subcommand("scan", "witness scan over a range of bases");
  scan->add_option("--bmin", scan_args.bmin, "first base")->capture_default_str();
  scan->add_option("--bmax", scan_args.bmax, "last base")->required();
  scan->add_option("--tmax", scan_args.tmax, "largest candidate period")
      ->capture_default_str();
  scan->add_option("--nmax", scan_args.nmax, "witness search bound")->capture_default_str();
  scan->add_option("--threads", scan_args.threads, "worker threads (0 = all cores)")
      ->capture_default_str();
  scan->add_option("--format", scan_args.format, "text, json or csv")->capture_default_str();

  VerifyArgs verify_args;
  CLI::App* verify = app.add_subcommand("verify", "run the invariant suites");
  verify->add_option("--suite", verify_args.suite, "props, lemmas, oracle or all")
      ->capture_default_str();
  verify->add_option("--bmax", verify_args.props_bmax, "props: largest base")
      ->capture_default_str();
  verify->add_option("--mmax", verify_args.props_mmax, "props: break-grid index bound")
      ->capture_default_str();
  verify->add_option("--prime-nmax", verify_args.prime_nmax, "lemmas: prime fractality bound")
      ->capture_default_str();
  verify->add_option("--power-nmax", verify_args.power_nmax,
                     "lemmas: prime-power fractality bound")
      ->capture_default_str();
  verify->add_option("--shift-nmax", verify_args.shift_nmax, "lemmas: shift identity bound")
      ->capture_default_str();
  verify->add_option("--level-nmax", verify_args.level_nmax,
                     "lemmas: half-digit structure bound")
      ->capture_default_str();
  verify->add_option("--oracle-nmax", verify_args.oracle_nmax, "oracle: grid n bound")
      ->capture_default_str();
  verify->add_option("--oracle-bmax", verify_args.oracle_bmax, "oracle: grid base bound")
      ->capture_default_str();
  verify->add_option("--format", verify_args.format, "text or json")->capture_default_str();

  try {
    app.parse(argc, argv);
    if (digit->parsed()) return run_digit(digit_args);
    if (period->parsed()) return run_period(period_args);
    if (scan->parsed()) return run_scan(scan_args);
    return run_verify(verify_args);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  } catch (const WindowTooSmallError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitWindowTooSmall;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::overflow_error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return kExitCrossCheck;
  }
}
