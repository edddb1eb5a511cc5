#include "factexp/construction.hpp"

#include <gtest/gtest.h>

#include <boost/multiprecision/cpp_int.hpp>
#include <cmath>

#include "factexp/arith.hpp"
#include "factexp/digits.hpp"
#include "factexp/error.hpp"
#include "support/oracles.hpp"

namespace factexp {
namespace {

using boost::multiprecision::cpp_int;

TEST(EulerPhiTest, Examples) {
  EXPECT_EQ(euler_phi(1), 1u);
  EXPECT_EQ(euler_phi(5), 4u);
  EXPECT_EQ(euler_phi(12), 4u);
  EXPECT_THROW(euler_phi(0), DomainError);
}

TEST(EulerPhiTest, MatchesCoprimeCount) {
  for (std::uint64_t n = 1; n <= 2000; ++n) EXPECT_EQ(euler_phi(n), oracle::coprime_count(n));
}

TEST(SplitModulusTest, Examples) {
  EXPECT_EQ(split_modulus(3, 5), (ModulusSplit{1, 5}));
  EXPECT_EQ(split_modulus(3, 4), (ModulusSplit{4, 1}));
  EXPECT_EQ(split_modulus(7, 12), (ModulusSplit{12, 1}));
  EXPECT_EQ(split_modulus(3, 3), (ModulusSplit{1, 3}));  // p | m is allowed here
}

TEST(SplitModulusTest, DefiningProperties) {
  for (std::uint64_t p : oracle::primes_up_to(60)) {
    for (std::uint64_t m = 2; m <= 200; ++m) {
      const auto [mp, mdp] = split_modulus(p, m);
      EXPECT_EQ(mp * mdp, m);
      EXPECT_EQ(std::gcd(mp, mdp), 1u);
      EXPECT_EQ(std::gcd(mdp, p - 1), 1u);
      for (std::uint64_t r = 2; r <= mp; ++r) {
        if (mp % r == 0 && oracle::trial_prime(r)) EXPECT_EQ((p - 1) % r, 0u);
      }
    }
  }
}

TEST(LambdaIndexTest, Examples) {
  EXPECT_EQ(lambda_index(3, 2).lambda, 2u);
  const auto c35 = lambda_index(3, 5);
  EXPECT_EQ(c35.lambda, 4u);
  EXPECT_EQ(c35.mu, 4u);
  // Repunits in base 5 mod 3: 1, 6 = 0.
  EXPECT_EQ(oracle::repunit_order(5, 3), std::optional<std::uint64_t>(2));
  EXPECT_EQ(lambda_index(5, 3).lambda, 2u);
}

TEST(LambdaIndexTest, RejectsHypothesisViolations) {
  EXPECT_THROW(lambda_index(3, 3), DomainError);
  EXPECT_THROW(lambda_index(3, 12), DomainError);
  EXPECT_THROW(lambda_index(4, 3), DomainError);
  EXPECT_THROW(lambda_index(3, 1), DomainError);
  try {
    lambda_index(5, 10);
    FAIL();
  } catch (const DomainError& e) {
    EXPECT_NE(std::string(e.what()).find("does not divide"), std::string::npos);
  }
}

TEST(LambdaIndexTest, CertificateInvariantsOnGrid) {
  for (std::uint64_t p : oracle::primes_up_to(100)) {
    for (std::uint64_t m = 2; m <= 50; ++m) {
      if (m % p == 0) continue;
      const auto cert = lambda_index(p, m);
      EXPECT_EQ(oracle::repunit_order(p, m), std::optional<std::uint64_t>(cert.lambda));
      EXPECT_GE(cert.lambda, 2u);
      EXPECT_LE(cert.lambda, cert.mu);
      EXPECT_LE(cert.mu, m);
      EXPECT_EQ(cert.mu, cert.m_prime * oracle::coprime_count(cert.m_dprime));
      EXPECT_EQ(cert.m_prime * cert.m_dprime, m);
    }
  }
}

TEST(BuildFunctionTest, ThreeModTwo) {
  const auto r = build_function(3, 2);
  EXPECT_EQ(r.q, 9u);
  const std::vector<std::int64_t> expected{0, 0, 0, 1, 1, 1, 2, 2, 2};
  EXPECT_TRUE(std::equal(r.f.table().begin(), r.f.table().end(), expected.begin(), expected.end()));
  EXPECT_EQ(r.F, 0);
  EXPECT_EQ(r.d, 1u);
  EXPECT_EQ(r.f.table()[3], 1);
  EXPECT_EQ(r.weights, (std::vector<std::int64_t>{0, 1}));
}

TEST(BuildFunctionTest, TableMatchesDigitWeightsAndInvariants) {
  for (std::uint64_t p : oracle::primes_up_to(100)) {
    for (std::uint64_t m = 2; m <= 50; ++m) {
      if (m % p == 0) continue;
      const auto q = checked_pow(p, lambda_index(p, m).lambda);
      if (!q || *q > QAdditiveFunction::kMaxTableSize) {
        EXPECT_THROW(build_function(p, m), DomainError);
        continue;
      }
      const auto r = build_function(p, m);
      EXPECT_EQ(r.f.table()[0], 0);
      EXPECT_EQ(r.f.table()[1], 0);
      EXPECT_EQ(r.f.table()[p], 1);
      // table[a] = sum_j a_j (p^j - 1)/(p - 1), weights from the closed form.
      for (std::uint64_t a = 0; a < r.q; a += 1 + r.q / 500) {
        std::int64_t v = 0;
        std::int64_t pj = 1;
        for (std::uint64_t x = a; x != 0; x /= p, pj *= static_cast<std::int64_t>(p)) {
          v += static_cast<std::int64_t>(x % p) * ((pj - 1) / static_cast<std::int64_t>(p - 1));
        }
        EXPECT_EQ(r.f.table()[a], v);
      }
      EXPECT_EQ(derive_invariants(r.f, m), (QAdditiveInvariants{0, 1}));
    }
  }
}

TEST(BuildFunctionTest, FoldedWeightFormula) {
  // f(n) = sum_j n_j (p^(j mod lambda) - 1)/(p - 1) over all base-p digits.
  for (auto [p, m] : std::vector<std::pair<std::uint64_t, std::uint64_t>>{
           {3, 2}, {3, 5}, {5, 3}, {7, 4}, {13, 10}, {11, 7}}) {
    const auto r = build_function(p, m);
    const std::uint64_t lambda = r.certificate.lambda;
    std::uniform_int_distribution<std::uint64_t> n_dist(0, 1ull << 62);
    for (int i = 0; i < 10000; ++i) {
      const std::uint64_t n = n_dist(oracle::rng());
      cpp_int expected = 0;
      std::uint64_t j = 0;
      for (std::uint64_t x = n; x != 0; x /= p, ++j) {
        cpp_int pj = boost::multiprecision::pow(cpp_int(p), static_cast<unsigned>(j % lambda));
        expected += cpp_int(x % p) * ((pj - 1) / (p - 1));
      }
      ASSERT_EQ(cpp_int(r.f(n)), expected) << "p=" << p << " m=" << m << " n=" << n;
    }
  }
}

TEST(BuildFunctionTest, RejectsOverCapAndHypothesis) {
  EXPECT_THROW(build_function(3, 3), DomainError);
  // lambda(97, 47) is large enough that 97^lambda passes the cap.
  EXPECT_GT(lambda_index(97, 47).lambda, 3u);
  EXPECT_THROW(build_function(97, 47), DomainError);
}

TEST(BuildReducedFunctionTest, CongruentToExact) {
  for (auto [p, m] : std::vector<std::pair<std::uint64_t, std::uint64_t>>{
           {3, 2}, {3, 5}, {5, 3}, {7, 4}, {13, 10}, {2, 9}}) {
    const auto exact = build_function(p, m);
    const auto reduced = build_reduced_function(p, m);
    for (std::uint64_t n = 0; n < 20000; ++n) {
      ASSERT_EQ(((exact.f(n) - reduced(n)) % static_cast<std::int64_t>(m)), 0);
    }
    EXPECT_EQ(derive_invariants(reduced, m), (QAdditiveInvariants{0, 1}));
  }
}

TEST(BuildReducedFunctionTest, LargeBaseStillTracksExponent) {
  const auto f = build_reduced_function(97, 47);
  EXPECT_FALSE(f.has_table());
  EXPECT_EQ(derive_invariants(f, 47), (QAdditiveInvariants{0, 1}));
  std::uniform_int_distribution<std::uint64_t> n_dist(0, UINT64_MAX);
  for (int i = 0; i < 2000; ++i) {
    const std::uint64_t n = n_dist(oracle::rng());
    EXPECT_EQ(static_cast<std::uint64_t>(f(n)) % 47, oracle::floor_sum(n, 97) % 47);
  }
}

TEST(VerifyCongruenceTest, Examples) {
  EXPECT_TRUE(verify_congruence(3, 2, 10000).pass());
  EXPECT_TRUE(verify_congruence(3, 5, 10000).pass());
  const auto one = verify_congruence(5, 3, 1);
  EXPECT_TRUE(one.pass());
  EXPECT_EQ(one.checked, 1u);
  EXPECT_THROW(verify_congruence(5, 10, 100), DomainError);
}

TEST(VerifyCongruenceTest, FallsBackPastTableCap) {
  const auto report = verify_congruence(97, 47, 100000);
  EXPECT_TRUE(report.pass());
  EXPECT_EQ(report.checked, 100000u);
}

TEST(Theorem1DeltaTest, Examples) {
  EXPECT_EQ(theorem1_delta(1, 3, 2), (Rational{1, 349920}));
  EXPECT_EQ(theorem1_delta(2, 3, 2), (Rational{1, 1399680}));
  EXPECT_EQ(theorem1_delta(1, 5, 2), (Rational{1, 7500000}));
  EXPECT_THROW(theorem1_delta(1, 3, 20), OverflowError);
  EXPECT_THROW(theorem1_delta(1, 4, 2), DomainError);
}

TEST(Theorem1DeltaTest, NeverExceedsSystemExponent) {
  for (std::uint64_t p : oracle::primes_up_to(100)) {
    for (std::uint64_t m = 2; m <= 50; ++m) {
      if (m % p == 0) continue;
      const std::uint64_t lambda = lambda_index(p, m).lambda;
      const cpp_int base = cpp_int(120) * m * m;
      const cpp_int theorem1_den = base * boost::multiprecision::pow(cpp_int(p), 3 * m);
      const cpp_int kim_den = base * boost::multiprecision::pow(cpp_int(p), 3 * lambda);
      EXPECT_GE(theorem1_den, kim_den);
      try {
        const Rational t1 = theorem1_delta(1, p, m);
        EXPECT_EQ(cpp_int(t1.denominator), theorem1_den);
        const Rational k1 = error_exponent_k(1, *checked_pow(p, lambda), m);
        EXPECT_LE(t1, k1);
      } catch (const OverflowError&) {
        EXPECT_GT(theorem1_den, cpp_int(UINT64_MAX));
      }
    }
  }
}

TEST(Theorem2Test, LogThreshold) {
  const double expected = 349920.0 * (std::log(2.0) + 2.0 * std::log(3.0));
  const double got = theorem2_log_threshold({1.0, 1.0, 1}, 3);
  EXPECT_NEAR(got, expected, 1e-9 * expected);
  EXPECT_NEAR(got, 1.0114e6, 1e2);
  EXPECT_NEAR(theorem2_log_threshold({1.0, std::exp(1.0), 1}, 3), expected + 349920.0, 1e-6 * expected);
  EXPECT_GT(theorem2_log_threshold({1.0, 1.0, 2}, 5), got);
  EXPECT_THROW(theorem2_log_threshold({1.0, 0.0, 1}, 3), DomainError);
  EXPECT_THROW(theorem2_log_threshold({1.0, 1.0, 1}, 5), DomainError);
  EXPECT_THROW(theorem2_log_threshold({1.0, 1.0, 0}, 3), DomainError);
}

TEST(Theorem2Test, KOfX) {
  EXPECT_EQ(k_of_x(1e100, 1.0), 0u);
  const double lx = 100.0 * std::log(10.0);
  EXPECT_NEAR(std::pow(lx / std::pow(std::log(lx), 6), 1.0 / 9.0), 0.59, 0.01);
  EXPECT_THROW(k_of_x(1e100, 0.0), DomainError);
  EXPECT_THROW(k_of_x(2.0, 1.0), DomainError);
  EXPECT_THROW(k_of_log_x(1.0, 1.0), DomainError);
  // ln x = 1e6: (1e6 / ln(1e6)^6)^(1/9) with c1 = 10.
  const double ratio = 1e6 / std::pow(std::log(1e6), 6);
  EXPECT_EQ(k_of_log_x(1e6, 10.0), static_cast<std::uint64_t>(std::floor(10.0 * std::pow(ratio, 1.0 / 9.0))));
}

TEST(Theorem2Test, KOfXMonotoneWhereIncreasing) {
  // ln x / (ln ln x)^6 increases once ln ln x > 6.
  for (double c1 : {1.0, 10.0, 1000.0}) {
    std::uint64_t previous = 0;
    for (double log_x = std::exp(6.0) + 1; log_x < 1e100; log_x *= 1.5) {
      const std::uint64_t k = k_of_log_x(log_x, c1);
      EXPECT_GE(k, previous) << "ln x = " << log_x;
      previous = k;
    }
    EXPECT_GT(previous, 0u);
  }
}

TEST(NthOddPrimeTest, Examples) {
  EXPECT_EQ(nth_odd_prime(1), 3u);
  EXPECT_EQ(nth_odd_prime(2), 5u);
  EXPECT_EQ(nth_odd_prime(10), 31u);
  EXPECT_THROW(nth_odd_prime(0), DomainError);
  const auto primes = oracle::primes_up_to(20000);
  for (std::size_t i = 1; i < primes.size(); ++i) EXPECT_EQ(nth_odd_prime(i), primes[i]);
}

}  // namespace
}  // namespace factexp
