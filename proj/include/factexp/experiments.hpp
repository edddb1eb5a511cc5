#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace factexp {

using ResidueTuple = std::vector<std::uint64_t>;

/// What to scan: e_{p_i}(n) mod m_i for 0 <= n < limit. chunk_size sets how
/// often the per-prime streams are re-seeded from scratch; it never changes
/// results.
struct ScanConfig {
  std::vector<std::uint64_t> primes;
  std::vector<std::uint64_t> mods;
  std::uint64_t limit = 0;
  std::uint64_t chunk_size = std::uint64_t{1} << 20;

  static constexpr std::uint64_t kMaxClasses = std::uint64_t{1} << 24;

  /// Throws DomainError on a malformed config.
  void validate() const;
  std::uint64_t class_count() const;
};

/// Mixed-radix class index: a_1 + m_1 (a_2 + m_2 (...)).
class ClassIndexer {
 public:
  explicit ClassIndexer(std::vector<std::uint64_t> mods);

  std::uint64_t size() const { return size_; }
  std::span<const std::uint64_t> strides() const { return strides_; }
  std::uint64_t encode(std::span<const std::uint64_t> residues) const;
  ResidueTuple decode(std::uint64_t index) const;
  /// Flat indices in lexicographic tuple order (a_1 most significant).
  std::vector<std::uint64_t> lexicographic_order() const;

 private:
  std::vector<std::uint64_t> mods_;
  std::vector<std::uint64_t> strides_;
  std::uint64_t size_;
};

class ResidueHistogram {
 public:
  ResidueHistogram(ScanConfig config, std::vector<std::uint64_t> counts);

  const ScanConfig& config() const { return config_; }
  const ClassIndexer& indexer() const { return indexer_; }
  std::span<const std::uint64_t> counts() const { return counts_; }
  std::uint64_t count(std::span<const std::uint64_t> residues) const;
  std::uint64_t total() const;

  friend bool operator==(const ResidueHistogram& a, const ResidueHistogram& b) {
    return a.config_.primes == b.config_.primes && a.config_.mods == b.config_.mods &&
           a.config_.limit == b.config_.limit && a.counts_ == b.counts_;
  }

 private:
  ScanConfig config_;
  ClassIndexer indexer_;
  std::vector<std::uint64_t> counts_;
};

/// Joint counts of (e_{p_1}(n) mod m_1, ..., e_{p_k}(n) mod m_k) over
/// [0, limit). Bit-identical for every chunk size and thread count.
ResidueHistogram joint_histogram(const ScanConfig& config, unsigned threads = 1);

struct DiscrepancyReport {
  double main_term = 0.0;
  double max_abs_dev = 0.0;
  double max_rel_dev = 0.0;
  ResidueTuple worst_class;
};

/// Deviation from limit / prod(m_i); ties go to the lexicographically
/// smallest class.
DiscrepancyReport discrepancy(const ResidueHistogram& hist);

struct PatternReport {
  ResidueTuple pattern;
  std::optional<std::uint64_t> minimal_n;
  std::uint64_t hits = 0;
  std::optional<std::uint64_t> max_gap;  // largest distance between consecutive witnesses
};

PatternReport pattern_search(const ScanConfig& config, std::span<const std::uint64_t> pattern,
                             unsigned threads = 1);

struct CoverageReport {
  std::vector<std::uint64_t> primes;
  std::uint64_t limit = 0;
  /// One report per parity pattern; index bit i is the parity for primes[i].
  std::vector<PatternReport> patterns;
  /// Largest k' <= k such that every parity pattern over primes[0..k') has a
  /// witness below limit.
  std::size_t covered_prefix = 0;
};

/// Per-pattern witness statistics for all 2^k parity patterns. k <= 24.
CoverageReport pattern_coverage(std::span<const std::uint64_t> primes, std::uint64_t limit,
                                unsigned threads = 1, std::uint64_t chunk_size = 1 << 20);

/// e_2(n) mod 2, from the binary digits of n above the lowest.
unsigned parity_of_e2(std::uint64_t n);

/// "0110" for parity patterns, "1-0-3" otherwise.
std::string format_pattern(std::span<const std::uint64_t> pattern, bool parity);

}  // namespace factexp
