#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

namespace factexp {

std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, std::uint64_t m);
std::uint64_t pow_mod(std::uint64_t base, std::uint64_t exp, std::uint64_t m);

/// Deterministic Miller-Rabin. The first twelve prime witnesses are
/// sufficient for every 64-bit input.
bool is_prime(std::uint64_t n);

/// a * b, or nullopt when the product does not fit 64 bits.
std::optional<std::uint64_t> checked_mul(std::uint64_t a, std::uint64_t b);
std::optional<std::uint64_t> checked_pow(std::uint64_t base, std::uint64_t exp);

/// Prime factorization by trial division, as (prime, multiplicity) pairs in
/// increasing prime order. n = 1 gives an empty list.
std::vector<std::pair<std::uint64_t, unsigned>> factorize(std::uint64_t n);

/// Throws DomainError naming `what` unless p is prime.
void require_prime(std::uint64_t p, const char* what);

}  // namespace factexp
