#pragma once

#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "factexp/experiments.hpp"

namespace factexp {

enum class Format { kCsv, kJson };

/// "csv" or "json"; anything else is a DomainError.
Format parse_format(std::string_view name);

/// Rounds to 12 significant digits so that emitted floats are stable.
double round_significant(double value);

// Renderers. Output is a pure function of the report: sorted JSON keys, rows
// in lexicographic tuple order, floats at 12 significant digits.
std::string render_histogram(const ResidueHistogram& hist, const DiscrepancyReport& disc,
                             Format format);
std::string render_pattern(const ScanConfig& config, const PatternReport& report, Format format);
std::string render_coverage(const CoverageReport& report, Format format);

/// Writes text to `destination`, or to `console` when destination is empty or "-".
/// An unwritable destination is a DomainError.
void write_output(const std::string& text, const std::string& destination, std::ostream& console);

void emit(const ResidueHistogram& hist, const DiscrepancyReport& disc, Format format,
          const std::string& destination, std::ostream& console);
void emit(const ScanConfig& config, const PatternReport& report, Format format,
          const std::string& destination, std::ostream& console);
void emit(const CoverageReport& report, Format format, const std::string& destination,
          std::ostream& console);

}  // namespace factexp
