#include "factexp/qadditive.hpp"

#include <algorithm>
#include <numeric>
#include <string>

#include "factexp/arith.hpp"
#include "factexp/error.hpp"

namespace factexp {
namespace {

std::int64_t checked_add(std::int64_t a, std::int64_t b) {
  std::int64_t out;
  if (__builtin_add_overflow(a, b, &out)) {
    throw OverflowError("q-additive value exceeds 64 bits");
  }
  return out;
}

std::int64_t checked_scale(std::int64_t a, std::uint64_t digit) {
  std::int64_t out;
  if (__builtin_mul_overflow(a, static_cast<std::int64_t>(digit), &out)) {
    throw OverflowError("q-additive value exceeds 64 bits");
  }
  return out;
}

// Least nonnegative residue of a signed value.
std::uint64_t reduce(__int128 x, std::uint64_t m) {
  __int128 r = x % static_cast<__int128>(m);
  if (r < 0) r += m;
  return static_cast<std::uint64_t>(r);
}

void require_modulus(std::uint64_t m) {
  if (m < 2) throw DomainError("modulus must be at least 2, got " + std::to_string(m));
}

}  // namespace

QAdditiveFunction QAdditiveFunction::from_table(std::vector<std::int64_t> table) {
  if (table.size() < 2) throw DomainError("value table needs q >= 2 entries");
  if (table.size() > kMaxTableSize) {
    throw DomainError("value table size " + std::to_string(table.size()) +
                      " exceeds the cap of " + std::to_string(kMaxTableSize));
  }
  if (table[0] != 0) throw DomainError("value table must have f(0) = 0");
  QAdditiveFunction f;
  f.radix_ = table.size();
  f.power_ = 1;
  f.q_ = table.size();
  f.table_ = std::move(table);
  return f;
}

QAdditiveFunction QAdditiveFunction::from_digit_weights(std::uint64_t radix,
                                                        std::vector<std::int64_t> weights,
                                                        Storage storage) {
  if (radix < 2) throw DomainError("radix must be at least 2, got " + std::to_string(radix));
  if (weights.empty()) throw DomainError("digit weights must be nonempty");
  QAdditiveFunction f;
  f.radix_ = radix;
  f.power_ = weights.size();
  f.q_ = checked_pow(radix, weights.size());
  f.weights_ = std::move(weights);
  if (storage == Storage::kEagerTable && f.q_ && *f.q_ <= kMaxTableSize) {
    f.table_.resize(*f.q_);
    for (std::uint64_t a = 0; a < *f.q_; ++a) {
      std::int64_t v = 0;
      std::uint64_t rest = a;
      for (std::size_t j = 0; rest != 0; ++j, rest /= radix) {
        v = checked_add(v, checked_scale(f.weights_[j], rest % radix));
      }
      f.table_[a] = v;
    }
  }
  return f;
}

std::uint64_t QAdditiveFunction::q_mod(std::uint64_t m) const {
  return pow_mod(radix_, power_, m);
}

std::int64_t QAdditiveFunction::value(std::uint64_t r) const {
  if (q_ && r >= *q_) {
    throw DomainError("digit " + std::to_string(r) + " out of range for q = " +
                      std::to_string(*q_));
  }
  if (!table_.empty()) return table_[r];
  std::int64_t v = 0;
  for (std::size_t j = 0; r != 0; ++j, r /= radix_) {
    v = checked_add(v, checked_scale(weights_[j], r % radix_));
  }
  return v;
}

std::int64_t QAdditiveFunction::operator()(std::uint64_t n) const {
  if (!q_) return value(n);  // every 64-bit n is a single base-q digit
  const std::uint64_t q = *q_;
  std::int64_t total = 0;
  for (; n != 0; n /= q) total = checked_add(total, value(n % q));
  return total;
}

std::int64_t evaluate(const QAdditiveFunction& f, std::uint64_t n) { return f(n); }

QAdditiveInvariants derive_invariants(const QAdditiveFunction& f, std::uint64_t m) {
  require_modulus(m);
  const std::int64_t F = f.value(1);
  const std::uint64_t F_mod = reduce(F, m);
  const std::uint64_t q_minus_one = (f.q_mod(m) + m - 1) % m;
  // gcd(m, x) = gcd(m, x mod m), so every term is reduced first.
  std::uint64_t d = std::gcd(m, mul_mod(q_minus_one, F_mod, m));

  if (f.has_table()) {
    const auto table = f.table();
    for (std::uint64_t r = 2; r < table.size() && d != 1; ++r) {
      const __int128 term = static_cast<__int128>(table[r]) - static_cast<__int128>(r) * F;
      d = std::gcd(d, reduce(term, m));
    }
  } else {
    // Without a table, f(r) - rF = sum_j r_j (w_j - radix^j F) is linear in
    // the base-radix digits of r and the j = 0 coefficient vanishes. Each
    // r = radix^j with 1 <= j < power lies in [2, q-1], so the gcd over all r
    // equals the gcd over those coefficients.
    const auto weights = f.digit_weights();
    std::uint64_t radix_pow = f.radix() % m;
    for (std::size_t j = 1; j < weights.size() && d != 1; ++j) {
      const std::uint64_t shifted = mul_mod(radix_pow, F_mod, m);
      d = std::gcd(d, reduce(static_cast<__int128>(weights[j]) - shifted, m));
      radix_pow = mul_mod(radix_pow, f.radix(), m);
    }
  }
  return {F, d};
}

KimSystem::KimSystem(std::vector<KimEntry> entries) : entries_(std::move(entries)) {
  if (entries_.empty()) throw DomainError("a Kim system needs at least one entry");
  invariants_.reserve(entries_.size());
  for (const auto& e : entries_) invariants_.push_back(derive_invariants(e.f, e.m));
}

HypothesisReport check_system(const KimSystem& system) {
  HypothesisReport report;
  const std::size_t k = system.size();
  report.pairwise_coprime_bases = true;
  report.pairwise_coprime_d = true;
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = i + 1; j < k; ++j) {
      // gcd(a^s, b^t) = 1 iff gcd(a, b) = 1 for s, t >= 1.
      if (std::gcd(system.entry(i).f.radix(), system.entry(j).f.radix()) != 1) {
        report.pairwise_coprime_bases = false;
      }
      if (std::gcd(system.invariants(i).d, system.invariants(j).d) != 1) {
        report.pairwise_coprime_d = false;
      }
    }
  }
  report.all_pass = report.pairwise_coprime_bases && report.pairwise_coprime_d;
  report.gcd_F_d_one.reserve(k);
  for (std::size_t i = 0; i < k; ++i) {
    const auto& inv = system.invariants(i);
    const bool ok = std::gcd(reduce(inv.F, inv.d), inv.d) == 1;
    report.gcd_F_d_one.push_back(ok);
    report.all_pass = report.all_pass && ok;
  }
  return report;
}

Rational error_exponent_k(std::uint64_t k, std::uint64_t q, std::uint64_t m) {
  if (k < 1) throw DomainError("k must be at least 1");
  if (q < 2) throw DomainError("q must be at least 2, got " + std::to_string(q));
  require_modulus(m);
  std::optional<std::uint64_t> den = 120;
  for (std::uint64_t factor : {k, k, q, q, q, m, m}) {
    if (den) den = checked_mul(*den, factor);
  }
  if (!den) {
    throw OverflowError("denominator 120 k^2 q^3 m^2 exceeds 64 bits (k=" + std::to_string(k) +
                        ", q=" + std::to_string(q) + ", m=" + std::to_string(m) + ")");
  }
  return {1, *den};
}

Rational error_exponent_k(const KimSystem& system) {
  std::uint64_t q = 0;
  std::uint64_t m = 0;
  for (std::size_t i = 0; i < system.size(); ++i) {
    const auto qi = system.entry(i).f.q();
    if (!qi) throw OverflowError("system base q exceeds 64 bits");
    q = std::max(q, *qi);
    m = std::max(m, system.entry(i).m);
  }
  return error_exponent_k(system.size(), q, m);
}

}  // namespace factexp
