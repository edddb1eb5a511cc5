#include "factexp/experiments.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <exception>
#include <set>
#include <string>
#include <thread>

#include "factexp/arith.hpp"
#include "factexp/error.hpp"
#include "factexp/exponent_stream.hpp"

namespace factexp {
namespace {

// Calls visit(n, class_index) for every n in [begin, end). Streams are seeded
// from scratch at every multiple of chunk_size.
template <typename Visit>
void scan_range(const ScanConfig& config, std::span<const std::uint64_t> strides,
                std::uint64_t begin, std::uint64_t end, Visit&& visit) {
  const std::size_t k = config.primes.size();
  std::vector<ExponentStream> streams;
  streams.reserve(k);
  for (std::uint64_t chunk = begin; chunk < end;) {
    const std::uint64_t chunk_end =
        std::min(end, (chunk / config.chunk_size + 1) * config.chunk_size);
    streams.clear();
    std::uint64_t index = 0;
    for (std::size_t i = 0; i < k; ++i) {
      streams.emplace_back(config.primes[i], chunk, config.mods[i]);
      index += streams[i].residue() * strides[i];
    }
    for (std::uint64_t n = chunk;; ++n) {
      visit(n, index);
      if (n + 1 == chunk_end) break;
      for (std::size_t i = 0; i < k; ++i) {
        const std::uint64_t before = streams[i].residue();
        if (streams[i].step() != 0) index += (streams[i].residue() - before) * strides[i];
      }
    }
    chunk = chunk_end;
  }
}

// Splits [0, limit) into `threads` contiguous runs of whole chunks, scans each
// on its own thread into a private Partial, and returns the partials in range
// order.
template <typename Partial, typename Make, typename Visit>
std::vector<Partial> scan_blocks(const ScanConfig& config, unsigned threads, Make&& make,
                                 Visit&& visit) {
  const ClassIndexer indexer(config.mods);
  const std::uint64_t chunks = (config.limit - 1) / config.chunk_size + 1;
  const std::uint64_t blocks = std::max<std::uint64_t>(1, std::min<std::uint64_t>(threads, chunks));
  auto chunk_start = [&](std::uint64_t b) {
    const auto c = static_cast<std::uint64_t>(static_cast<unsigned __int128>(chunks) * b / blocks);
    return static_cast<std::uint64_t>(
        std::min<unsigned __int128>(static_cast<unsigned __int128>(c) * config.chunk_size,
                                    config.limit));
  };

  std::vector<Partial> partials;
  partials.reserve(blocks);
  for (std::uint64_t b = 0; b < blocks; ++b) partials.push_back(make());
  std::vector<std::exception_ptr> errors(blocks);

  auto work = [&](std::uint64_t b) {
    try {
      Partial& partial = partials[b];
      scan_range(config, indexer.strides(), chunk_start(b), chunk_start(b + 1),
                 [&](std::uint64_t n, std::uint64_t index) { visit(partial, n, index); });
    } catch (...) {
      errors[b] = std::current_exception();
    }
  };
  if (blocks == 1) {
    work(0);
  } else {
    std::vector<std::jthread> workers;
    workers.reserve(blocks);
    for (std::uint64_t b = 0; b < blocks; ++b) workers.emplace_back(work, b);
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return partials;
}

// Witness statistics for one pattern over one contiguous range.
struct WitnessRun {
  std::uint64_t first = 0;
  std::uint64_t last = 0;
  std::uint64_t hits = 0;
  std::uint64_t max_gap = 0;

  void observe(std::uint64_t n) {
    if (hits == 0) {
      first = n;
    } else {
      max_gap = std::max(max_gap, n - last);
    }
    last = n;
    ++hits;
  }

  // Appends a run covering a later range.
  void append(const WitnessRun& later) {
    if (later.hits == 0) return;
    if (hits == 0) {
      *this = later;
      return;
    }
    max_gap = std::max({max_gap, later.max_gap, later.first - last});
    last = later.last;
    hits += later.hits;
  }

  PatternReport report(ResidueTuple pattern) const {
    PatternReport r;
    r.pattern = std::move(pattern);
    r.hits = hits;
    if (hits > 0) r.minimal_n = first;
    if (hits > 1) r.max_gap = max_gap;
    return r;
  }
};

}  // namespace

void ScanConfig::validate() const {
  if (primes.empty()) throw DomainError("scan needs at least one prime");
  if (primes.size() != mods.size()) {
    throw DomainError("scan needs one modulus per prime: " + std::to_string(primes.size()) +
                      " primes, " + std::to_string(mods.size()) + " moduli");
  }
  std::set<std::uint64_t> seen;
  for (std::uint64_t p : primes) {
    require_prime(p, "scan prime");
    if (!seen.insert(p).second) throw DomainError("scan primes must be distinct");
  }
  for (std::uint64_t m : mods) {
    if (m < 2) throw DomainError("scan moduli must be at least 2, got " + std::to_string(m));
  }
  if (limit < 1) throw DomainError("scan limit must be positive");
  if (chunk_size < 1) throw DomainError("chunk size must be positive");
  class_count();
}

std::uint64_t ScanConfig::class_count() const {
  std::uint64_t classes = 1;
  for (std::uint64_t m : mods) {
    const auto next = checked_mul(classes, m);
    if (!next || *next > kMaxClasses) {
      throw DomainError("residue class count exceeds the cap of " + std::to_string(kMaxClasses));
    }
    classes = *next;
  }
  return classes;
}

ClassIndexer::ClassIndexer(std::vector<std::uint64_t> mods) : mods_(std::move(mods)), size_(1) {
  strides_.reserve(mods_.size());
  for (std::uint64_t m : mods_) {
    strides_.push_back(size_);
    size_ *= m;
  }
}

std::uint64_t ClassIndexer::encode(std::span<const std::uint64_t> residues) const {
  if (residues.size() != mods_.size()) throw DomainError("residue tuple has the wrong length");
  std::uint64_t index = 0;
  for (std::size_t i = 0; i < residues.size(); ++i) {
    if (residues[i] >= mods_[i]) throw DomainError("residue out of range for its modulus");
    index += residues[i] * strides_[i];
  }
  return index;
}

ResidueTuple ClassIndexer::decode(std::uint64_t index) const {
  ResidueTuple out(mods_.size());
  for (std::size_t i = 0; i < mods_.size(); ++i) {
    out[i] = index % mods_[i];
    index /= mods_[i];
  }
  return out;
}

std::vector<std::uint64_t> ClassIndexer::lexicographic_order() const {
  std::vector<std::uint64_t> order;
  order.reserve(size_);
  ResidueTuple tuple(mods_.size(), 0);
  for (std::uint64_t produced = 0; produced < size_; ++produced) {
    order.push_back(encode(tuple));
    // Odometer with the last component fastest.
    for (std::size_t i = mods_.size(); i-- > 0;) {
      if (++tuple[i] < mods_[i]) break;
      tuple[i] = 0;
    }
  }
  return order;
}

ResidueHistogram::ResidueHistogram(ScanConfig config, std::vector<std::uint64_t> counts)
    : config_(std::move(config)), indexer_(config_.mods), counts_(std::move(counts)) {
  if (counts_.size() != indexer_.size()) throw DomainError("count vector has the wrong size");
}

std::uint64_t ResidueHistogram::count(std::span<const std::uint64_t> residues) const {
  return counts_[indexer_.encode(residues)];
}

std::uint64_t ResidueHistogram::total() const {
  std::uint64_t sum = 0;
  for (std::uint64_t c : counts_) sum += c;
  return sum;
}

ResidueHistogram joint_histogram(const ScanConfig& config, unsigned threads) {
  config.validate();
  const std::uint64_t classes = config.class_count();
  auto partials = scan_blocks<std::vector<std::uint64_t>>(
      config, threads, [&] { return std::vector<std::uint64_t>(classes, 0); },
      [](std::vector<std::uint64_t>& counts, std::uint64_t, std::uint64_t index) {
        ++counts[index];
      });
  std::vector<std::uint64_t> counts = std::move(partials.front());
  for (std::size_t b = 1; b < partials.size(); ++b) {
    for (std::uint64_t c = 0; c < classes; ++c) counts[c] += partials[b][c];
  }
  return ResidueHistogram(config, std::move(counts));
}

DiscrepancyReport discrepancy(const ResidueHistogram& hist) {
  const auto& indexer = hist.indexer();
  DiscrepancyReport report;
  report.main_term =
      static_cast<double>(hist.config().limit) / static_cast<double>(indexer.size());
  std::optional<std::uint64_t> worst;
  for (std::uint64_t index : indexer.lexicographic_order()) {
    const double dev = std::fabs(static_cast<double>(hist.counts()[index]) - report.main_term);
    if (!worst || dev > report.max_abs_dev) {
      report.max_abs_dev = dev;
      worst = index;
    }
  }
  report.max_rel_dev = report.main_term > 0 ? report.max_abs_dev / report.main_term : 0.0;
  report.worst_class = indexer.decode(*worst);
  return report;
}

PatternReport pattern_search(const ScanConfig& config, std::span<const std::uint64_t> pattern,
                             unsigned threads) {
  config.validate();
  if (pattern.size() != config.primes.size()) {
    throw DomainError("pattern length " + std::to_string(pattern.size()) + " does not match " +
                      std::to_string(config.primes.size()) + " primes");
  }
  const std::uint64_t target = ClassIndexer(config.mods).encode(pattern);
  auto partials = scan_blocks<WitnessRun>(
      config, threads, [] { return WitnessRun{}; },
      [target](WitnessRun& run, std::uint64_t n, std::uint64_t index) {
        if (index == target) run.observe(n);
      });
  WitnessRun total;
  for (const auto& run : partials) total.append(run);
  return total.report(ResidueTuple(pattern.begin(), pattern.end()));
}

CoverageReport pattern_coverage(std::span<const std::uint64_t> primes, std::uint64_t limit,
                                unsigned threads, std::uint64_t chunk_size) {
  if (primes.size() > 24) throw DomainError("coverage supports at most 24 primes");
  ScanConfig config{std::vector<std::uint64_t>(primes.begin(), primes.end()),
                    std::vector<std::uint64_t>(primes.size(), 2), limit, chunk_size};
  config.validate();
  const std::uint64_t patterns = config.class_count();
  // With every modulus 2 the class index is the parity bitmask itself.
  auto partials = scan_blocks<std::vector<WitnessRun>>(
      config, threads, [&] { return std::vector<WitnessRun>(patterns); },
      [](std::vector<WitnessRun>& runs, std::uint64_t n, std::uint64_t index) {
        runs[index].observe(n);
      });

  CoverageReport report;
  report.primes = config.primes;
  report.limit = limit;
  const ClassIndexer indexer(config.mods);
  std::vector<bool> found(patterns, false);
  for (std::uint64_t idx = 0; idx < patterns; ++idx) {
    WitnessRun run;
    for (const auto& partial : partials) run.append(partial[idx]);
    found[idx] = run.hits > 0;
    report.patterns.push_back(run.report(indexer.decode(idx)));
  }
  for (std::size_t prefix = 1; prefix <= primes.size(); ++prefix) {
    const std::uint64_t mask = (std::uint64_t{1} << prefix) - 1;
    std::vector<bool> seen(mask + 1, false);
    for (std::uint64_t idx = 0; idx < patterns; ++idx) {
      if (found[idx]) seen[idx & mask] = true;
    }
    if (!std::all_of(seen.begin(), seen.end(), [](bool b) { return b; })) break;
    report.covered_prefix = prefix;
  }
  return report;
}

unsigned parity_of_e2(std::uint64_t n) {
  return static_cast<unsigned>(std::popcount(n >> 1) & 1);
}

std::string format_pattern(std::span<const std::uint64_t> pattern, bool parity) {
  std::string out;
  for (std::size_t i = 0; i < pattern.size(); ++i) {
    if (!parity && i > 0) out += '-';
    out += std::to_string(pattern[i]);
  }
  return out;
}

}  // namespace factexp
