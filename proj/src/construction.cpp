#include "factexp/construction.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "factexp/arith.hpp"
#include "factexp/digits.hpp"
#include "factexp/error.hpp"

namespace factexp {
namespace {

void require_coprime_hypothesis(std::uint64_t p, std::uint64_t m) {
  require_prime(p, "p");
  if (m < 2) throw DomainError("modulus m must be at least 2, got " + std::to_string(m));
  if (m % p == 0) {
    throw DomainError("hypothesis p does not divide m violated: p=" + std::to_string(p) +
                      " divides m=" + std::to_string(m));
  }
}

std::string pm(std::uint64_t p, std::uint64_t m) {
  return "(p=" + std::to_string(p) + ", m=" + std::to_string(m) + ")";
}

}  // namespace

std::uint64_t euler_phi(std::uint64_t n) {
  if (n == 0) throw DomainError("euler_phi is undefined at 0");
  std::uint64_t phi = n;
  for (const auto& [prime, mult] : factorize(n)) phi = phi / prime * (prime - 1);
  return phi;
}

ModulusSplit split_modulus(std::uint64_t p, std::uint64_t m) {
  require_prime(p, "p");
  if (m < 2) throw DomainError("modulus m must be at least 2, got " + std::to_string(m));
  ModulusSplit split{1, 1};
  for (const auto& [prime, mult] : factorize(m)) {
    const std::uint64_t part = *checked_pow(prime, mult);
    if ((p - 1) % prime == 0) {
      split.m_prime *= part;
    } else {
      split.m_dprime *= part;
    }
  }
  return split;
}

LambdaCertificate lambda_index(std::uint64_t p, std::uint64_t m) {
  require_coprime_hypothesis(p, m);
  const ModulusSplit split = split_modulus(p, m);
  const std::uint64_t mu = split.m_prime * euler_phi(split.m_dprime);

  // repunit holds (1 + p + ... + p^(lambda-1)) mod m, power holds p^lambda mod m.
  std::uint64_t lambda = 1;
  std::uint64_t repunit = 1 % m;
  std::uint64_t power = p % m;
  while (repunit != 0) {
    if (lambda >= mu) {
      throw InternalError("repunit search passed the bound mu=" + std::to_string(mu) + " for " +
                          pm(p, m));
    }
    repunit = (repunit + power) % m;
    power = mul_mod(power, p, m);
    ++lambda;
  }
  if (lambda < 2 || mu > m) {
    throw InternalError("certificate bounds 2 <= lambda <= mu <= m fail for " + pm(p, m));
  }
  return {p, m, lambda, split.m_prime, split.m_dprime, mu};
}

ConstructionResult build_function(std::uint64_t p, std::uint64_t m) {
  const LambdaCertificate cert = lambda_index(p, m);
  const auto q = checked_pow(p, cert.lambda);
  if (!q || *q > QAdditiveFunction::kMaxTableSize) {
    throw DomainError("table size p^lambda = " + std::to_string(p) + "^" +
                      std::to_string(cert.lambda) + " exceeds the cap of " +
                      std::to_string(QAdditiveFunction::kMaxTableSize) + " for " + pm(p, m));
  }
  std::vector<std::int64_t> weights(cert.lambda);
  std::int64_t w = 0;
  for (auto& slot : weights) {
    slot = w;
    w = w * static_cast<std::int64_t>(p) + 1;
  }
  QAdditiveFunction f = QAdditiveFunction::from_digit_weights(
      p, weights, QAdditiveFunction::Storage::kEagerTable);
  const QAdditiveInvariants inv = derive_invariants(f, m);
  if (inv.F != 0 || inv.d != 1) {
    throw InternalError("construction produced F=" + std::to_string(inv.F) +
                        ", d=" + std::to_string(inv.d) + " for " + pm(p, m));
  }
  return {p, m, cert, *q, std::move(f), inv.F, inv.d, std::move(weights)};
}

QAdditiveFunction build_reduced_function(std::uint64_t p, std::uint64_t m) {
  const LambdaCertificate cert = lambda_index(p, m);
  std::vector<std::int64_t> weights(cert.lambda);
  std::uint64_t w = 0;
  for (auto& slot : weights) {
    slot = static_cast<std::int64_t>(w);
    w = (mul_mod(w, p, m) + 1) % m;
  }
  return QAdditiveFunction::from_digit_weights(p, std::move(weights));
}

CongruenceReport verify_congruence(std::uint64_t p, std::uint64_t m, std::uint64_t limit) {
  const LambdaCertificate cert = lambda_index(p, m);
  const auto q = checked_pow(p, cert.lambda);
  const QAdditiveFunction f = (q && *q <= QAdditiveFunction::kMaxTableSize)
                                  ? build_function(p, m).f
                                  : build_reduced_function(p, m);
  const auto mm = static_cast<__int128>(m);
  CongruenceReport report{p, m, limit, 0, std::nullopt};
  for (std::uint64_t n = 0; n < limit; ++n) {
    const __int128 diff = static_cast<__int128>(f(n)) - legendre_exponent(n, p);
    ++report.checked;
    if (diff % mm != 0) {
      report.counterexample = n;
      break;
    }
  }
  return report;
}

Rational theorem1_delta(std::uint64_t k, std::uint64_t p, std::uint64_t m) {
  if (k < 1) throw DomainError("k must be at least 1");
  require_prime(p, "p");
  if (m < 2) throw DomainError("modulus m must be at least 2, got " + std::to_string(m));
  const auto three_m = checked_mul(3, m);
  const auto p_part = three_m ? checked_pow(p, *three_m) : std::nullopt;
  std::optional<std::uint64_t> den = 120;
  for (auto factor : {std::optional{k}, std::optional{k}, p_part, std::optional{m},
                      std::optional{m}}) {
    den = (den && factor) ? checked_mul(*den, *factor) : std::nullopt;
  }
  if (!den) {
    throw OverflowError("denominator 120 k^2 p^(3m) m^2 exceeds 64 bits (k=" + std::to_string(k) +
                        ", p=" + std::to_string(p) + ", m=" + std::to_string(m) + ")");
  }
  return {1, *den};
}

double theorem2_log_threshold(const Theorem2Params& params, std::uint64_t p_k) {
  if (!(params.c3 > 0.0)) throw DomainError("constant c3 must be strictly positive");
  if (params.k < 1) throw DomainError("k must be at least 1");
  const std::uint64_t expected = nth_odd_prime(params.k);
  if (p_k != expected) {
    throw DomainError("p_k must be the k-th odd prime: k=" + std::to_string(params.k) +
                      " gives " + std::to_string(expected) + ", got " + std::to_string(p_k));
  }
  const double k = static_cast<double>(params.k);
  const double p = static_cast<double>(p_k);
  const double inverse_delta = 480.0 * k * k * std::pow(p, 6);
  return inverse_delta *
         (std::log(params.c3) + k * std::log(2.0) + 0.5 * std::log(k) + 2.0 * std::log(p));
}

std::uint64_t k_of_log_x(double log_x, double c1) {
  if (!(c1 > 0.0) || !std::isfinite(c1)) throw DomainError("c1 must be strictly positive");
  if (!(log_x > 1.0) || !std::isfinite(log_x)) {
    throw DomainError("k(x) needs x > e, i.e. ln x > 1");
  }
  const double value = c1 * std::pow(log_x / std::pow(std::log(log_x), 6), 1.0 / 9.0);
  if (!std::isfinite(value) || value >= 0x1p63) throw OverflowError("k(x) exceeds 64 bits");
  return static_cast<std::uint64_t>(std::floor(value));
}

std::uint64_t k_of_x(double x, double c1) {
  if (!(x > std::exp(1.0))) throw DomainError("k(x) needs x > e");
  return k_of_log_x(std::log(x), c1);
}

std::uint64_t nth_odd_prime(std::uint64_t i) {
  if (i < 1) throw DomainError("odd prime index is 1-based");
  // The (i+1)-th prime is below n (ln n + ln ln n) for n = i + 1 >= 6.
  const double n = static_cast<double>(i + 1);
  const double bound = n < 6 ? 15.0 : n * (std::log(n) + std::log(std::log(n))) + 1.0;
  if (bound > 4e9) throw DomainError("odd prime index too large for the sieve");
  const auto limit = static_cast<std::size_t>(bound);
  std::vector<bool> composite(limit + 1, false);
  std::uint64_t seen = 0;
  for (std::size_t c = 3; c <= limit; c += 2) {
    if (composite[c]) continue;
    if (++seen == i) return c;
    for (std::size_t mult = c * c; mult <= limit; mult += 2 * c) composite[mult] = true;
  }
  throw InternalError("sieve bound too small for odd prime index " + std::to_string(i));
}

}  // namespace factexp
