#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "factexp/qadditive.hpp"
#include "factexp/rational.hpp"

namespace factexp {

std::uint64_t euler_phi(std::uint64_t n);

struct ModulusSplit {
  std::uint64_t m_prime;   // prime powers of m whose primes divide p - 1
  std::uint64_t m_dprime;  // the part of m coprime to p - 1
  friend bool operator==(const ModulusSplit&, const ModulusSplit&) = default;
};

ModulusSplit split_modulus(std::uint64_t p, std::uint64_t m);

/// Minimal lambda with (p^lambda - 1)/(p - 1) = 0 mod m, together with the
/// a-priori bound mu = m' phi(m'') that guarantees the search terminates.
struct LambdaCertificate {
  std::uint64_t p;
  std::uint64_t m;
  std::uint64_t lambda;
  std::uint64_t m_prime;
  std::uint64_t m_dprime;
  std::uint64_t mu;
};

/// Requires p prime, m >= 2 and p not dividing m.
LambdaCertificate lambda_index(std::uint64_t p, std::uint64_t m);

/// The completely p^lambda-additive function whose value on a base-p digit
/// block a_0 .. a_{lambda-1} is sum_j a_j (p^j - 1)/(p - 1). It agrees with
/// e_p(n) modulo m for every n.
struct ConstructionResult {
  std::uint64_t p;
  std::uint64_t m;
  LambdaCertificate certificate;
  std::uint64_t q;
  QAdditiveFunction f;
  std::int64_t F;
  std::uint64_t d;
  std::vector<std::int64_t> weights;
};

/// Exact construction with an eager value table. Rejects p | m and tables
/// over QAdditiveFunction::kMaxTableSize.
ConstructionResult build_function(std::uint64_t p, std::uint64_t m);

/// Same function with every digit weight reduced mod m. Congruent to the exact
/// function mod m, so it has the same F mod m and d, but it needs neither the
/// table cap nor a 64-bit q. Suited to hypothesis checks on large grids.
QAdditiveFunction build_reduced_function(std::uint64_t p, std::uint64_t m);

struct CongruenceReport {
  std::uint64_t p;
  std::uint64_t m;
  std::uint64_t limit;
  std::uint64_t checked;
  std::optional<std::uint64_t> counterexample;
  bool pass() const { return !counterexample; }
};

/// Checks f(n) = e_p(n) (mod m) for 0 <= n < limit, both sides from scratch.
CongruenceReport verify_congruence(std::uint64_t p, std::uint64_t m, std::uint64_t limit);

/// 1/(120 k^2 p^(3m) m^2). Throws OverflowError when the denominator passes 64 bits.
Rational theorem1_delta(std::uint64_t k, std::uint64_t p, std::uint64_t m);

struct Theorem2Params {
  double c1;
  double c3;
  std::uint64_t k;
};

/// Natural-log threshold 480 k^2 p_k^6 (ln c3 + k ln 2 + ln(k)/2 + 2 ln p_k).
/// Any N with ln N above it has a witness for every parity pattern over the
/// first k odd primes. Requires p_k to be the k-th odd prime. Reads k and c3
/// only; c1 belongs to k(x).
double theorem2_log_threshold(const Theorem2Params& params, std::uint64_t p_k);

/// floor(c1 (ln x / (ln ln x)^6)^(1/9)). Rejects x <= e and c1 <= 0.
std::uint64_t k_of_x(double x, double c1);
/// Same, taking ln x directly so that x beyond double range is reachable.
std::uint64_t k_of_log_x(double log_x, double c1);

/// i-th odd prime, 1-based: 3, 5, 7, 11, ...
std::uint64_t nth_odd_prime(std::uint64_t i);

}  // namespace factexp
