#pragma once

#include <cstdint>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace factexp::cli {

enum ExitCode : int { kOk = 0, kDomainError = 1, kUsageError = 2 };

// Malformed command line (bad number, missing flag, unknown subcommand).
class UsageError : public std::runtime_error {
 public:
  explicit UsageError(const std::string& what) : std::runtime_error(what) {}
};

/// Exact nonnegative integer from "1000000", "1e6" or "2.5e3". Fractional
/// results and values past 64 bits are UsageErrors.
std::uint64_t parse_count(std::string_view text);

/// Comma-separated list of parse_count values.
std::vector<std::uint64_t> parse_count_list(std::string_view text);

/// Runs one subcommand. Environment overrides: FACTEXP_THREADS supplies the
/// thread count when --threads is absent; FACTEXP_OUT_DIR prefixes relative
/// --out paths.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace factexp::cli
