#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "factexp/rational.hpp"

namespace factexp {

/// A completely q-additive integer function: f(0) = 0 and
/// f(a q^k + b) = f(a) + f(b) for a >= 1, k >= 1, 0 <= b < q^k. Equivalently
/// f(n) is the sum of a fixed digit function over the base-q digits of n.
///
/// The base is held as q = radix^power. A function built from an explicit
/// value table has radix = q and power = 1. A function built from digit
/// weights has f(a) = sum_j a_j w_j over the base-radix digits of a < q; its
/// value table is materialized on request when q fits the table cap, and
/// otherwise values are computed on demand, which lets q exceed 64 bits.
class QAdditiveFunction {
 public:
  static constexpr std::uint64_t kMaxTableSize = std::uint64_t{1} << 24;

  /// q = table.size(); requires table[0] == 0 and 2 <= q <= kMaxTableSize.
  static QAdditiveFunction from_table(std::vector<std::int64_t> table);

  enum class Storage { kOnDemand, kEagerTable };

  /// q = radix^weights.size(). kEagerTable fills the value table when q is
  /// within kMaxTableSize and falls back to on-demand values past it.
  static QAdditiveFunction from_digit_weights(std::uint64_t radix,
                                              std::vector<std::int64_t> weights,
                                              Storage storage = Storage::kOnDemand);

  std::uint64_t radix() const { return radix_; }
  std::uint64_t power() const { return power_; }
  /// q, or nullopt when it does not fit 64 bits.
  std::optional<std::uint64_t> q() const { return q_; }
  std::uint64_t q_mod(std::uint64_t m) const;

  bool has_table() const { return !table_.empty(); }
  std::span<const std::int64_t> table() const { return table_; }
  std::span<const std::int64_t> digit_weights() const { return weights_; }

  /// f(r) for a single base-q digit r < q.
  std::int64_t value(std::uint64_t r) const;

  std::int64_t operator()(std::uint64_t n) const;

 private:
  QAdditiveFunction() = default;

  std::uint64_t radix_ = 0;
  std::uint64_t power_ = 0;
  std::optional<std::uint64_t> q_;
  std::vector<std::int64_t> table_;
  std::vector<std::int64_t> weights_;
};

/// Sum of f over the base-q digits of n.
std::int64_t evaluate(const QAdditiveFunction& f, std::uint64_t n);

struct QAdditiveInvariants {
  std::int64_t F;   // f(1)
  std::uint64_t d;  // gcd(m, (q-1)F, f(r) - rF for 2 <= r <= q-1), in [1, m]
  friend bool operator==(const QAdditiveInvariants&, const QAdditiveInvariants&) = default;
};

QAdditiveInvariants derive_invariants(const QAdditiveFunction& f, std::uint64_t m);

struct KimEntry {
  QAdditiveFunction f;
  std::uint64_t m;
};

/// k-tuple of (q_i, m_i, f_i) with F_i and d_i derived up front.
class KimSystem {
 public:
  explicit KimSystem(std::vector<KimEntry> entries);

  std::size_t size() const { return entries_.size(); }
  const KimEntry& entry(std::size_t i) const { return entries_[i]; }
  const QAdditiveInvariants& invariants(std::size_t i) const { return invariants_[i]; }

 private:
  std::vector<KimEntry> entries_;
  std::vector<QAdditiveInvariants> invariants_;
};

struct HypothesisReport {
  bool pairwise_coprime_bases = false;
  std::vector<bool> gcd_F_d_one;
  bool pairwise_coprime_d = false;
  bool all_pass = false;
};

HypothesisReport check_system(const KimSystem& system);

/// 1/(120 k^2 q^3 m^2). Throws OverflowError when the denominator passes 64 bits.
Rational error_exponent_k(std::uint64_t k, std::uint64_t q, std::uint64_t m);

/// Same, with q and m the maxima over the system.
Rational error_exponent_k(const KimSystem& system);

}  // namespace factexp
