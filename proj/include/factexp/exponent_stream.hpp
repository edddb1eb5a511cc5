#pragma once

#include <cstdint>
#include <optional>
#include <vector>

namespace factexp {

struct StreamStep {
  std::uint64_t n;
  std::uint64_t exponent;
  friend bool operator==(const StreamStep&, const StreamStep&) = default;
};

/// Tracks e_p(n) over consecutive n. The cursor is kept as a base-p odometer,
/// so stepping to n + 1 costs one digit per trailing (p - 1) digit of n and the
/// carry count is exactly v_p(n + 1). Amortized O(1) per step.
///
/// Single owner: movable between threads, not shareable.
class ExponentStream {
 public:
  /// Starts at `start` with e_p(start) computed from scratch. With a modulus,
  /// residue() also reports e_p(cursor) mod modulus.
  explicit ExponentStream(std::uint64_t prime, std::uint64_t start = 0,
                          std::optional<std::uint64_t> modulus = std::nullopt);

  std::uint64_t prime() const { return prime_; }
  std::uint64_t cursor() const { return cursor_; }
  std::uint64_t exponent() const { return exponent_; }
  std::optional<std::uint64_t> modulus() const { return modulus_; }
  /// e_p(cursor) mod modulus, or the full exponent without a modulus.
  std::uint64_t residue() const { return residue_; }

  /// Moves to cursor + 1 and returns (cursor + 1, e_p(cursor + 1)).
  StreamStep advance();

  /// Like advance() but returns only v_p(cursor + 1), the increment applied.
  unsigned step();

 private:
  std::uint64_t prime_;
  std::uint64_t cursor_;
  std::uint64_t exponent_;
  std::optional<std::uint64_t> modulus_;
  std::uint64_t residue_;
  std::vector<std::uint64_t> digits_;
};

}  // namespace factexp
