#include <gtest/gtest.h>

#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>

#include "oracle.hpp"
#include "prwpv/binomial.hpp"

namespace prwpv::binomial {
namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

TEST(BinomialParams, RejectsInvalid) {
  EXPECT_THROW(BinomialParams(0, 0.5), std::domain_error);
  EXPECT_THROW(BinomialParams(10, -0.1), std::domain_error);
  EXPECT_THROW(BinomialParams(10, 1.5), std::domain_error);
  EXPECT_THROW(BinomialParams(10, std::nan("")), std::domain_error);
  EXPECT_NO_THROW(BinomialParams(1, 0.0));
  EXPECT_NO_THROW(BinomialParams(1, 1.0));
}

TEST(LogPmf, Examples) {
  EXPECT_DOUBLE_EQ(log_pmf({1, 0.5}, 0), std::log(0.5));
  // 100 ln 0.9
  EXPECT_NEAR(log_pmf({100, 0.1}, 0), -10.53605156578263074, 1e-13);
  EXPECT_EQ(log_pmf({4, 0.0}, 0), 0.0);
}

TEST(LogPmf, DegenerateAndDomain) {
  EXPECT_EQ(log_pmf({4, 0.0}, 1), kNegInf);
  EXPECT_EQ(log_pmf({4, 1.0}, 4), 0.0);
  EXPECT_EQ(log_pmf({4, 1.0}, 3), kNegInf);
  EXPECT_THROW(log_pmf({4, 0.3}, -1), std::domain_error);
  EXPECT_THROW(log_pmf({4, 0.3}, 5), std::domain_error);
}

TEST(LogPmf, MatchesExactRationalForSmallN) {
  for (std::int64_t n : {2, 7, 19, 30}) {
    for (double p : {0.01, 0.3, 0.5, 0.77, 0.999}) {
      for (std::int64_t k = 0; k <= n; ++k) {
        const double want = oracle::to_double(oracle::mass(n, p, k, k));
        EXPECT_LE(oracle::rel_err(std::exp(log_pmf({n, p}, k)), want), 1e-13)
            << "n=" << n << " p=" << p << " k=" << k;
      }
    }
  }
}

TEST(Cdf, Examples) {
  const BinomialParams b{100, 0.1};
  EXPECT_EQ(cdf(b, 100), 1.0);
  EXPECT_LE(oracle::rel_err(cdf(b, 0), 2.656139888758746e-05), 1e-13);
  EXPECT_LE(oracle::rel_err(cdf(b, 7), 0.20605086180401005), 1e-13);
  // 3.1 * P(<= 7) rounds to the 0.6388 PRW step
  EXPECT_NEAR(3.1 * cdf(b, 7), 0.6388, 5e-5);
}

TEST(Cdf, SaturatesOutOfRange) {
  const BinomialParams b{20, 0.4};
  EXPECT_EQ(cdf(b, -1), 0.0);
  EXPECT_EQ(cdf(b, -1000), 0.0);
  EXPECT_EQ(cdf(b, 20), 1.0);
  EXPECT_EQ(cdf(b, 21), 1.0);
  EXPECT_EQ(cdf({20, 0.0}, 0), 1.0);
  EXPECT_EQ(cdf({20, 1.0}, 19), 0.0);
  EXPECT_EQ(cdf({20, 1.0}, 20), 1.0);
}

TEST(Sf, Examples) {
  const BinomialParams b{100, 0.1};
  EXPECT_EQ(sf(b, 0), 1.0);
  EXPECT_EQ(sf(b, 101), 0.0);
  EXPECT_LE(oracle::rel_err(sf(b, 100), 1.0000000000000056e-100), 1e-13);
  EXPECT_NEAR(log_sf(b, 100), 100.0 * std::log(0.1), 1e-12);
}

TEST(Sf, DegenerateP) {
  EXPECT_EQ(sf({5, 0.0}, 1), 0.0);
  EXPECT_EQ(sf({5, 0.0}, 0), 1.0);
  EXPECT_EQ(sf({5, 1.0}, 5), 1.0);
  EXPECT_EQ(log_sf({5, 0.3}, 6), kNegInf);
}

TEST(LogSf, StaysFiniteWhereSfUnderflows) {
  const BinomialParams b{2000, 0.01};
  EXPECT_EQ(sf(b, 2000), 0.0);
  const double ls = log_sf(b, 2000);
  EXPECT_TRUE(std::isfinite(ls));
  EXPECT_NEAR(ls, 2000.0 * std::log(0.01), 1e-9);
}

TEST(Cdf, ExactOracleAllSmallN) {
  for (std::int64_t n = 1; n <= 30; ++n) {
    for (double p : {0.001, 0.05, 0.1, 0.25, 0.5, 0.6180339887, 0.9, 0.999}) {
      for (std::int64_t k = 0; k < n; ++k) {
        const double want = oracle::cdf(n, p, k);
        ASSERT_LE(oracle::rel_err(cdf({n, p}, k), want), 1e-12)
            << "n=" << n << " p=" << p << " k=" << k;
      }
    }
  }
}

TEST(Cdf, HighPrecisionOracleLargeN) {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> unif(0.001, 0.999);
  for (std::int64_t n : {200, 1000, 5000, 10000}) {
    for (int trial = 0; trial < 4; ++trial) {
      const double p = unif(rng);
      const double mean = static_cast<double>(n) * p;
      const double sd = std::sqrt(mean * (1.0 - p));
      for (double z : {-6.0, -2.0, 0.0, 1.5}) {
        const auto k = static_cast<std::int64_t>(std::floor(mean + z * sd));
        if (k < 0 || k >= n) continue;
        const double want = oracle::mass_highprec(n, p, 0, k);
        EXPECT_LE(oracle::rel_err(cdf({n, p}, k), want), 1e-12)
            << "n=" << n << " p=" << p << " k=" << k;
        const double want_sf = oracle::mass_highprec(n, p, k + 1, n);
        EXPECT_LE(oracle::rel_err(sf({n, p}, k + 1), want_sf), 1e-12)
            << "sf n=" << n << " p=" << p << " t=" << k + 1;
      }
    }
  }
}

TEST(Cdf, ComplementsSf) {
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<std::int64_t> nd(1, 500);
  std::uniform_real_distribution<double> pd(0.0, 1.0);
  for (int trial = 0; trial < 300; ++trial) {
    const std::int64_t n = nd(rng);
    const double p = pd(rng);
    if (p == 0.0) continue;
    const BinomialParams b{n, p};
    for (std::int64_t k = 0; k < n; k += std::max<std::int64_t>(1, n / 17)) {
      EXPECT_NEAR(cdf(b, k) + sf(b, k + 1), 1.0, 1e-12) << "n=" << n << " p=" << p << " k=" << k;
    }
  }
}

TEST(Cdf, MonotoneInKAndAntitoneInP) {
  std::mt19937_64 rng(13);
  std::uniform_int_distribution<std::int64_t> nd(1, 300);
  std::uniform_real_distribution<double> pd(0.0, 1.0);
  for (int trial = 0; trial < 200; ++trial) {
    const std::int64_t n = nd(rng);
    double p1 = pd(rng);
    double p2 = pd(rng);
    if (p1 > p2) std::swap(p1, p2);
    for (std::int64_t k = -1; k <= n; ++k) {
      EXPECT_LE(cdf({n, p1}, k - 1), cdf({n, p1}, k));
      if (k < n) {
        EXPECT_GE(cdf({n, p1}, k), cdf({n, p2}, k)) << "n=" << n << " k=" << k;
      }
    }
  }
}

}  // namespace
}  // namespace prwpv::binomial
