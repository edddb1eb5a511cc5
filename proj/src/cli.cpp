#include "factexp/cli.hpp"

#include <CLI11.hpp>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <json.hpp>
#include <optional>

#include "factexp/construction.hpp"
#include "factexp/digits.hpp"
#include "factexp/error.hpp"
#include "factexp/experiments.hpp"
#include "factexp/report.hpp"

namespace factexp::cli {
namespace {

using nlohmann::json;

std::string dump(const json& j) { return j.dump(2) + "\n"; }

std::vector<std::string_view> split(std::string_view text, char sep) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  while (true) {
    const std::size_t pos = text.find(sep, start);
    parts.push_back(text.substr(start, pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return parts;
}

std::vector<std::uint64_t> parse_pattern(std::string_view text, const std::vector<std::uint64_t>& mods) {
  const bool parity = std::all_of(mods.begin(), mods.end(), [](std::uint64_t m) { return m == 2; });
  std::vector<std::uint64_t> pattern;
  if (text.find(',') != std::string_view::npos) {
    pattern = parse_count_list(text);
  } else if (text.find('-') != std::string_view::npos) {
    for (auto part : split(text, '-')) pattern.push_back(parse_count(part));
  } else if (parity && text.size() == mods.size()) {
    for (char c : text) {
      if (c != '0' && c != '1') throw UsageError("parity pattern must be a bitstring");
      pattern.push_back(static_cast<std::uint64_t>(c - '0'));
    }
  } else {
    pattern.push_back(parse_count(text));
  }
  return pattern;
}

unsigned resolve_threads(const std::optional<std::string>& flag) {
  std::string text;
  if (flag) {
    text = *flag;
  } else if (const char* env = std::getenv("FACTEXP_THREADS"); env && *env) {
    text = env;
  } else {
    return 1;
  }
  const std::uint64_t threads = parse_count(text);
  if (threads < 1 || threads > 1024) throw UsageError("thread count must be in [1, 1024]");
  return static_cast<unsigned>(threads);
}

std::string resolve_output(const std::string& out) {
  if (out.empty() || out == "-") return out;
  const char* dir = std::getenv("FACTEXP_OUT_DIR");
  std::filesystem::path path(out);
  if (dir && *dir && path.is_relative()) path = std::filesystem::path(dir) / path;
  return path.string();
}

json rational_json(const Rational& r) {
  return {{"numerator", r.numerator}, {"denominator", r.denominator}};
}

// Raw flag values; numbers are parsed after CLI11 so that every numeric error
// maps onto the usage exit code.
struct Flags {
  std::string prime, n, mod, primes, mods, limit, pattern, out, format = "csv";
  std::string k = "1", prefix = "16", chunk = "1048576";
  std::optional<std::string> threads;
  std::optional<double> c1, c3, x, log_x;
};

}  // namespace

std::uint64_t parse_count(std::string_view text) {
  if (text.empty()) throw UsageError("expected a nonnegative integer, got an empty string");
  const std::string original(text);
  std::string_view mantissa = text;
  std::uint64_t exponent = 0;
  if (const auto e = text.find_first_of("eE"); e != std::string_view::npos) {
    mantissa = text.substr(0, e);
    const auto exp_text = text.substr(e + 1);
    if (exp_text.empty() || exp_text.size() > 3 ||
        exp_text.find_first_not_of("0123456789") != std::string_view::npos) {
      throw UsageError("bad exponent in '" + original + "'");
    }
    exponent = std::stoull(std::string(exp_text));
  }
  std::string digits;
  std::size_t fraction = 0;
  bool seen_point = false;
  for (char c : mantissa) {
    if (c == '.' && !seen_point) {
      seen_point = true;
    } else if (c >= '0' && c <= '9') {
      digits += c;
      if (seen_point) ++fraction;
    } else {
      throw UsageError("expected a nonnegative integer, got '" + original + "'");
    }
  }
  if (digits.empty()) throw UsageError("expected a nonnegative integer, got '" + original + "'");
  // Strip fractional digits against the exponent; leftovers must be zeros.
  while (fraction > exponent) {
    if (digits.back() != '0') throw UsageError("'" + original + "' is not an integer");
    digits.pop_back();
    --fraction;
  }
  exponent -= fraction;
  unsigned __int128 value = 0;
  for (char c : digits) {
    value = value * 10 + static_cast<unsigned>(c - '0');
    if (value > UINT64_MAX) throw UsageError("'" + original + "' exceeds 64 bits");
  }
  for (std::uint64_t i = 0; i < exponent && value != 0; ++i) {
    value *= 10;
    if (value > UINT64_MAX) throw UsageError("'" + original + "' exceeds 64 bits");
  }
  return static_cast<std::uint64_t>(value);
}

std::vector<std::uint64_t> parse_count_list(std::string_view text) {
  std::vector<std::uint64_t> out;
  for (auto part : split(text, ',')) out.push_back(parse_count(part));
  return out;
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Prime exponents of factorials: construction, verification and scans", "factexp"};
  app.require_subcommand(1);
  Flags f;

  auto* exponent = app.add_subcommand("exponent", "Print e_p(n), the exponent of p in n!");
  exponent->add_option("--prime", f.prime, "prime p")->required();
  exponent->add_option("--n", f.n, "argument n")->required();

  auto* lambda = app.add_subcommand("lambda", "Print the lambda certificate for (p, m)");
  lambda->add_option("--prime", f.prime, "prime p")->required();
  lambda->add_option("--mod", f.mod, "modulus m, not divisible by p")->required();

  auto* construct = app.add_subcommand("construct", "Build the q-additive function for (p, m)");
  construct->add_option("--prime", f.prime, "prime p")->required();
  construct->add_option("--mod", f.mod, "modulus m, not divisible by p")->required();
  construct->add_option("--k", f.k, "system size for the error exponent")->capture_default_str();
  construct->add_option("--prefix", f.prefix, "table entries to print")->capture_default_str();

  auto* verify = app.add_subcommand("verify", "Check f(n) = e_p(n) mod m for all n < limit");
  verify->add_option("--prime", f.prime, "prime p")->required();
  verify->add_option("--mod", f.mod, "modulus m, not divisible by p")->required();
  verify->add_option("--limit", f.limit, "exclusive upper bound N")->required();

  auto add_scan_flags = [&](CLI::App* sub, bool with_mods) {
    sub->add_option("--primes", f.primes, "comma-separated distinct primes")->required();
    if (with_mods) sub->add_option("--mods", f.mods, "comma-separated moduli")->required();
    sub->add_option("--limit", f.limit, "exclusive upper bound N (1e6 accepted)")->required();
    sub->add_option("--chunk", f.chunk, "stream re-seed interval")->capture_default_str();
    sub->add_option("--threads", f.threads, "worker threads (env FACTEXP_THREADS)");
    sub->add_option("--format", f.format, "csv or json")->capture_default_str();
    sub->add_option("--out", f.out, "output path, '-' for stdout (env FACTEXP_OUT_DIR)");
  };
  auto* scan = app.add_subcommand("scan", "Joint residue histogram and discrepancy");
  add_scan_flags(scan, true);
  auto* pattern = app.add_subcommand("pattern", "Minimal witness, hits and max gap of a pattern");
  add_scan_flags(pattern, true);
  pattern->add_option("--pattern", f.pattern, "residues: 1,0 or 1-0 or bitstring 10")->required();
  auto* coverage = app.add_subcommand("coverage", "Witnesses for every parity pattern");
  add_scan_flags(coverage, false);

  auto* kofx = app.add_subcommand("kofx", "Evaluate k(x) = floor(c1 (ln x/(ln ln x)^6)^(1/9))");
  auto* x_opt = kofx->add_option("--x", f.x, "x > e");
  auto* logx_opt = kofx->add_option("--log-x", f.log_x, "ln x > 1, for x beyond double range");
  x_opt->excludes(logx_opt);
  logx_opt->excludes(x_opt);
  kofx->add_option("--c1", f.c1, "absolute constant c1 > 0")->required();

  auto* threshold = app.add_subcommand("threshold", "Natural-log threshold on N for k odd primes");
  threshold->add_option("--k", f.k, "number of odd primes")->required();
  threshold->add_option("--c3", f.c3, "absolute constant c3 > 0")->required();
  threshold->add_option("--prime", f.prime, "p_k, defaults to the k-th odd prime");

  std::vector<std::string> args(argv + 1, argv + argc);
  std::reverse(args.begin(), args.end());
  try {
    app.parse(args);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kUsageError;
  }

  try {
    if (exponent->parsed()) {
      out << legendre_exponent(parse_count(f.n), parse_count(f.prime)) << "\n";
    } else if (lambda->parsed()) {
      const auto cert = lambda_index(parse_count(f.prime), parse_count(f.mod));
      out << dump({{"p", cert.p},
                   {"m", cert.m},
                   {"lambda", cert.lambda},
                   {"m_prime", cert.m_prime},
                   {"m_dprime", cert.m_dprime},
                   {"mu", cert.mu}});
    } else if (construct->parsed()) {
      const std::uint64_t p = parse_count(f.prime);
      const std::uint64_t m = parse_count(f.mod);
      const std::uint64_t k = parse_count(f.k);
      const std::uint64_t prefix = parse_count(f.prefix);
      const auto result = build_function(p, m);
      const auto table = result.f.table();
      json delta = nullptr;
      try {
        delta = rational_json(theorem1_delta(k, p, m));
      } catch (const OverflowError&) {
        // Reported as null: the exact denominator has no 64-bit form.
      }
      out << dump({{"p", p},
                   {"m", m},
                   {"k", k},
                   {"lambda", result.certificate.lambda},
                   {"q", result.q},
                   {"weights", result.weights},
                   {"table_prefix", std::vector<std::int64_t>(
                                        table.begin(), table.begin() + std::min<std::uint64_t>(
                                                                           prefix, table.size()))},
                   {"F", result.F},
                   {"d", result.d},
                   {"delta", delta}});
    } else if (verify->parsed()) {
      const auto report =
          verify_congruence(parse_count(f.prime), parse_count(f.mod), parse_count(f.limit));
      json cx = report.counterexample ? json(*report.counterexample) : json(nullptr);
      out << dump({{"p", report.p},
                   {"m", report.m},
                   {"limit", report.limit},
                   {"checked", report.checked},
                   {"pass", report.pass()},
                   {"counterexample", cx}});
      if (!report.pass()) {
        err << "congruence fails at n=" << *report.counterexample << "\n";
        return kDomainError;
      }
    } else if (scan->parsed() || pattern->parsed() || coverage->parsed()) {
      const Format format = parse_format(f.format);
      const unsigned threads = resolve_threads(f.threads);
      const std::string destination = resolve_output(f.out);
      ScanConfig config;
      config.primes = parse_count_list(f.primes);
      config.limit = parse_count(f.limit);
      config.chunk_size = parse_count(f.chunk);
      if (coverage->parsed()) {
        emit(pattern_coverage(config.primes, config.limit, threads, config.chunk_size), format,
             destination, out);
      } else {
        config.mods = parse_count_list(f.mods);
        config.validate();
        if (scan->parsed()) {
          const auto hist = joint_histogram(config, threads);
          emit(hist, discrepancy(hist), format, destination, out);
        } else {
          const auto residues = parse_pattern(f.pattern, config.mods);
          emit(config, pattern_search(config, residues, threads), format, destination, out);
        }
      }
    } else if (kofx->parsed()) {
      if (!f.x && !f.log_x) throw UsageError("kofx needs --x or --log-x");
      const double log_x = f.log_x ? *f.log_x : std::log(*f.x);
      const std::uint64_t k = f.log_x ? k_of_log_x(*f.log_x, *f.c1) : k_of_x(*f.x, *f.c1);
      out << dump({{"log_x", round_significant(log_x)}, {"c1", *f.c1}, {"k", k}});
    } else if (threshold->parsed()) {
      const std::uint64_t k = parse_count(f.k);
      if (k < 1) throw DomainError("k must be at least 1");
      const std::uint64_t p_k = f.prime.empty() ? nth_odd_prime(k) : parse_count(f.prime);
      const double log_n = theorem2_log_threshold({f.c1.value_or(0.0), *f.c3, k}, p_k);
      out << dump({{"k", k},
                   {"p_k", p_k},
                   {"c3", *f.c3},
                   {"log_threshold", round_significant(log_n)}});
    }
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << "\n";
    return kUsageError;
  } catch (const DomainError& e) {
    err << "error: " << e.what() << "\n";
    return kDomainError;
  } catch (const InternalError& e) {
    err << "internal error: " << e.what() << "\n";
    return kDomainError;
  }
  return kOk;
}

}  // namespace factexp::cli
