#include "factexp/report.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <json.hpp>
#include <sstream>

#include "factexp/error.hpp"

namespace factexp {
namespace {

using nlohmann::json;

bool all_parity(const std::vector<std::uint64_t>& mods) {
  for (std::uint64_t m : mods) {
    if (m != 2) return false;
  }
  return true;
}

json optional_json(const std::optional<std::uint64_t>& v) {
  return v ? json(*v) : json(nullptr);
}

std::string optional_csv(const std::optional<std::uint64_t>& v) {
  return v ? std::to_string(*v) : std::string();
}

json pattern_fields(const PatternReport& r, bool parity) {
  return {{"pattern", format_pattern(r.pattern, parity)},
          {"residues", r.pattern},
          {"minimal_n", optional_json(r.minimal_n)},
          {"hits", r.hits},
          {"max_gap", optional_json(r.max_gap)}};
}

std::string pattern_row(const PatternReport& r, bool parity) {
  return format_pattern(r.pattern, parity) + "," + optional_csv(r.minimal_n) + "," +
         std::to_string(r.hits) + "," + optional_csv(r.max_gap) + "\n";
}

constexpr std::string_view kPatternHeader = "pattern,minimal_n,hits,max_gap\n";

std::string dump(const json& j) { return j.dump(2) + "\n"; }

}  // namespace

Format parse_format(std::string_view name) {
  if (name == "csv") return Format::kCsv;
  if (name == "json") return Format::kJson;
  throw DomainError("unknown output format '" + std::string(name) + "' (expected csv or json)");
}

double round_significant(double value) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", value);
  return std::strtod(buf, nullptr);
}

std::string render_histogram(const ResidueHistogram& hist, const DiscrepancyReport& disc,
                             Format format) {
  const auto& indexer = hist.indexer();
  const auto order = indexer.lexicographic_order();
  const ScanConfig& config = hist.config();
  if (format == Format::kCsv) {
    std::ostringstream out;
    for (std::size_t i = 1; i <= config.primes.size(); ++i) out << "a_" << i << ',';
    out << "count\n";
    for (std::uint64_t index : order) {
      for (std::uint64_t a : indexer.decode(index)) out << a << ',';
      out << hist.counts()[index] << '\n';
    }
    return out.str();
  }
  json counts = json::array();
  for (std::uint64_t index : order) {
    counts.push_back({{"residues", indexer.decode(index)}, {"count", hist.counts()[index]}});
  }
  json doc = {{"primes", config.primes},
              {"mods", config.mods},
              {"limit", config.limit},
              {"chunk_size", config.chunk_size},
              {"counts", counts},
              {"discrepancy",
               {{"main_term", round_significant(disc.main_term)},
                {"max_abs_dev", round_significant(disc.max_abs_dev)},
                {"max_rel_dev", round_significant(disc.max_rel_dev)},
                {"worst_class", disc.worst_class}}}};
  return dump(doc);
}

std::string render_pattern(const ScanConfig& config, const PatternReport& report, Format format) {
  const bool parity = all_parity(config.mods);
  if (format == Format::kCsv) return std::string(kPatternHeader) + pattern_row(report, parity);
  json doc = pattern_fields(report, parity);
  doc["primes"] = config.primes;
  doc["mods"] = config.mods;
  doc["limit"] = config.limit;
  return dump(doc);
}

std::string render_coverage(const CoverageReport& report, Format format) {
  const ClassIndexer indexer(std::vector<std::uint64_t>(report.primes.size(), 2));
  const auto order = indexer.lexicographic_order();
  if (format == Format::kCsv) {
    std::string out(kPatternHeader);
    for (std::uint64_t index : order) out += pattern_row(report.patterns[index], true);
    return out;
  }
  json patterns = json::array();
  for (std::uint64_t index : order) patterns.push_back(pattern_fields(report.patterns[index], true));
  json doc = {{"primes", report.primes},
              {"limit", report.limit},
              {"covered_prefix", report.covered_prefix},
              {"patterns", patterns}};
  return dump(doc);
}

void write_output(const std::string& text, const std::string& destination, std::ostream& console) {
  if (destination.empty() || destination == "-") {
    console << text;
    return;
  }
  std::ofstream file(destination, std::ios::binary | std::ios::trunc);
  if (!file) throw DomainError("cannot open output file '" + destination + "'");
  file << text;
  file.close();
  if (!file) throw DomainError("failed writing output file '" + destination + "'");
}

void emit(const ResidueHistogram& hist, const DiscrepancyReport& disc, Format format,
          const std::string& destination, std::ostream& console) {
  write_output(render_histogram(hist, disc, format), destination, console);
}

void emit(const ScanConfig& config, const PatternReport& report, Format format,
          const std::string& destination, std::ostream& console) {
  write_output(render_pattern(config, report, format), destination, console);
}

void emit(const CoverageReport& report, Format format, const std::string& destination,
          std::ostream& console) {
  write_output(render_coverage(report, format), destination, console);
}

}  // namespace factexp
