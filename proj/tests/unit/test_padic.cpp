#include <cmath>
#include <vector>

#include <gtest/gtest.h>

#include "oracle.hpp"
#include "padyn/errors.hpp"
#include "padyn/padic.hpp"
#include "padyn/rng.hpp"

using namespace padyn;

namespace {

std::vector<Digit> digits_of(const PadicInt& a) { return {a.digits().begin(), a.digits().end()}; }

PadicInt random_unit(oracle::Gen& g, Prime p, std::size_t N) {
  auto d = g.digits(p.value(), N);
  if (d[0] == 0) d[0] = 1 + static_cast<Digit>(g.below(p.value() - 1));
  return PadicInt(p, d);
}

}  // namespace

TEST(Prime, AcceptsOddPrimes) {
  EXPECT_EQ(Prime(3).value(), 3U);
  EXPECT_EQ(Prime(2147483647).value(), 2147483647U);
}

TEST(Prime, RejectsTwoCompositesAndTooLarge) {
  EXPECT_THROW(Prime(2), InvalidPrime);
  EXPECT_THROW(Prime(1), InvalidPrime);
  EXPECT_THROW(Prime(9), InvalidPrime);
  EXPECT_THROW(Prime(4294967291U), InvalidPrime);
}

TEST(FromInteger, BaseExpansion) {
  EXPECT_EQ(digits_of(from_integer(5, Prime(3), 4)), (std::vector<Digit>{2, 1, 0, 0}));
  EXPECT_EQ(digits_of(from_integer(0, Prime(5), 3)), (std::vector<Digit>{0, 0, 0}));
  EXPECT_EQ(digits_of(from_integer(49, Prime(7), 3)), (std::vector<Digit>{0, 0, 1}));
  EXPECT_EQ(digits_of(from_integer(100, Prime(3), 2)), (std::vector<Digit>{1, 0}));
}

TEST(FromInteger, BigValuesMatchOracle) {
  oracle::Gen g(11);
  for (int trial = 0; trial < 50; ++trial) {
    const Prime p(g.prime());
    const std::size_t N = 1 + g.below(80);
    const oracle::Big v = oracle::value(g.digits(p.value(), N + 3), p.value());
    EXPECT_EQ(digits_of(from_integer(v, p, N)), oracle::digits(v, p.value(), N));
    EXPECT_EQ(digits_of(from_signed(-v, p, N)), oracle::digits(-v, p.value(), N));
  }
}

TEST(FromInteger, RequiresPositivePrecision) { EXPECT_THROW(from_integer(1, Prime(3), 0), InvalidArgument); }

TEST(PadicInt, RejectsDigitsOutOfRange) { EXPECT_THROW(PadicInt(Prime(3), {0, 3}), InvalidDigit); }

TEST(Digit, ReadsAndBounds) {
  const auto a = from_integer(5, Prime(3), 4);
  EXPECT_EQ(a.digit(1), 1U);
  EXPECT_EQ(PadicInt::zero(Prime(5), 6).digit(5), 0U);
  EXPECT_EQ(teichmuller(2, Prime(5), 3).digit(2), 2U);
  EXPECT_THROW((void)a.digit(4), PrecisionExhausted);
}

TEST(PartialSum, Examples) {
  const auto a = from_integer(5, Prime(3), 4);
  EXPECT_EQ(a.partial_sum(1), 5);
  EXPECT_EQ(a.partial_sum(0), 2);
  EXPECT_EQ(teichmuller(2, Prime(5), 3).partial_sum(2), 57);
  EXPECT_THROW((void)a.partial_sum(4), PrecisionExhausted);
}

TEST(PartialSum, DifferencesAreDigitTerms) {
  oracle::Gen g(12);
  for (int trial = 0; trial < 30; ++trial) {
    const Prime p(g.prime());
    const auto a = PadicInt(p, g.digits(p.value(), 40));
    for (std::size_t n = 1; n < 40; ++n) {
      EXPECT_EQ(a.partial_sum(n) - a.partial_sum(n - 1), BigInt(a.digit(n)) * oracle::power(p.value(), n));
    }
    EXPECT_LT(a.partial_sum(39), oracle::power(p.value(), 40));
  }
}

TEST(Arithmetic, Examples) {
  const Prime p3(3), p5(5);
  EXPECT_EQ(digits_of(from_integer(2, p3, 3) + from_integer(1, p3, 3)), (std::vector<Digit>{0, 1, 0}));
  EXPECT_TRUE((from_integer(17, p5, 4) * from_integer(0, p5, 4)).is_zero());
  EXPECT_EQ(digits_of(from_integer(4, p5, 3) * from_integer(6, p5, 3)), (std::vector<Digit>{4, 4, 0}));
  EXPECT_EQ(digits_of(-from_integer(1, p3, 4)), (std::vector<Digit>{2, 2, 2, 2}));
}

TEST(Arithmetic, PrecisionIsMinimumOfOperands) {
  const Prime p(7);
  const auto a = from_integer(10, p, 5);
  const auto b = from_integer(3, p, 8);
  EXPECT_EQ((a + b).precision(), 5U);
  EXPECT_EQ((a * b).precision(), 5U);
  EXPECT_EQ((b - a).precision(), 5U);
}

TEST(Arithmetic, PrimeMismatch) {
  const auto a = from_integer(1, Prime(3), 3);
  const auto b = from_integer(1, Prime(5), 3);
  EXPECT_THROW((void)(a + b), PrimeMismatch);
  EXPECT_THROW((void)(a * b), PrimeMismatch);
  EXPECT_THROW((void)(a - b), PrimeMismatch);
}

// Every ring operation agrees with big-integer arithmetic mod p^{n+1}, across
// the schoolbook, packed and wide-slot multiplication paths.
TEST(Arithmetic, MatchesBigIntegerOracle) {
  oracle::Gen g(13);
  for (int trial = 0; trial < 200; ++trial) {
    const Prime p(g.prime());
    const std::size_t na = 1 + g.below(trial % 4 == 0 ? 400 : 70);
    const std::size_t nb = 1 + g.below(trial % 4 == 0 ? 400 : 70);
    const PadicInt a(p, g.digits(p.value(), na));
    const PadicInt b(p, g.digits(p.value(), nb));
    const auto A = oracle::value(a.digits(), p.value());
    const auto B = oracle::value(b.digits(), p.value());
    const std::size_t N = std::min(na, nb);
    ASSERT_EQ(digits_of(a + b), oracle::digits(A + B, p.value(), N)) << "p=" << p.value();
    ASSERT_EQ(digits_of(a - b), oracle::digits(A - B, p.value(), N)) << "p=" << p.value();
    ASSERT_EQ(digits_of(a * b), oracle::digits(A * B, p.value(), N)) << "p=" << p.value() << " N=" << N;
    ASSERT_EQ(digits_of(-a), oracle::digits(-A, p.value(), na));
    const std::int64_t k = g.between(-1000000007, 1000000007);
    ASSERT_EQ(digits_of(scale(a, k)), oracle::digits(A * k, p.value(), na));
    const std::size_t n = g.below(N);
    ASSERT_EQ((a * b).partial_sum(n), oracle::mod(a.partial_sum(n) * b.partial_sum(n), oracle::power(p.value(), n + 1)));
    ASSERT_EQ((a + b).partial_sum(n), oracle::mod(a.partial_sum(n) + b.partial_sum(n), oracle::power(p.value(), n + 1)));
  }
}

TEST(Arithmetic, LongProductsMatchOracle) {
  oracle::Gen g(14);
  for (std::uint32_t pv : {3U, 13U, 2147483647U}) {
    const Prime p(pv);
    const PadicInt a(p, g.digits(pv, 3000));
    const PadicInt b(p, g.digits(pv, 2500));
    const auto A = oracle::value(a.digits(), pv);
    const auto B = oracle::value(b.digits(), pv);
    EXPECT_EQ(digits_of(a * b), oracle::digits(A * B, pv, 2500));
  }
}

TEST(Arithmetic, ScaleByExtremes) {
  const Prime p(5);
  const auto a = from_integer(7, p, 30);
  const auto A = oracle::Big(7);
  for (std::int64_t k : {std::numeric_limits<std::int64_t>::min(), std::numeric_limits<std::int64_t>::max(),
                         std::int64_t{0}, std::int64_t{-1}}) {
    EXPECT_EQ(digits_of(scale(a, k)), oracle::digits(A * k, 5, 30));
  }
}

TEST(Pow, MatchesOracle) {
  oracle::Gen g(15);
  for (int trial = 0; trial < 30; ++trial) {
    const Prime p(g.prime());
    const PadicInt a(p, g.digits(p.value(), 25));
    const std::uint64_t e = g.below(500);
    const oracle::Big expect =
        boost::multiprecision::powm(oracle::value(a.digits(), p.value()), oracle::Big(e), oracle::power(p.value(), 25));
    EXPECT_EQ(digits_of(pow(a, e)), oracle::digits(expect, p.value(), 25));
  }
}

TEST(ValUnit, Examples) {
  const auto vu = val_unit(from_integer(18, Prime(3), 5));
  EXPECT_EQ(vu.val, 2U);
  EXPECT_EQ(digits_of(vu.unit), (std::vector<Digit>{2, 0, 0}));

  const auto one = val_unit(from_integer(1, Prime(7), 4));
  EXPECT_EQ(one.val, 0U);
  EXPECT_EQ(one.unit, from_integer(1, Prime(7), 4));

  const auto mixed = val_unit(from_integer(25, Prime(5), 6) * teichmuller(3, Prime(5), 4));
  EXPECT_EQ(mixed.val, 2U);
  EXPECT_EQ(mixed.unit.digit(0), 3U);
  EXPECT_EQ(mixed.unit.precision(), 2U);
}

TEST(ValUnit, AllZeroThrows) { EXPECT_THROW((void)val_unit(PadicInt::zero(Prime(3), 5)), AllDigitsZero); }

TEST(ValUnit, RecomposeReproducesSource) {
  oracle::Gen g(16);
  for (int trial = 0; trial < 100; ++trial) {
    const Prime p(g.prime());
    auto d = g.digits(p.value(), 30);
    const std::size_t lead = g.below(10);
    for (std::size_t i = 0; i < lead; ++i) d[i] = 0;
    if (std::all_of(d.begin(), d.end(), [](Digit x) { return x == 0; })) d[29] = 1;
    const PadicInt s(p, d);
    const auto vu = val_unit(s);
    EXPECT_NE(vu.unit.digit(0), 0U);
    EXPECT_EQ(vu.unit.precision() + vu.val, s.precision());
    EXPECT_EQ(recompose(vu), s);
    // p^val * unit as a product of p-adic integers.
    EXPECT_EQ(from_integer(oracle::power(p.value(), vu.val), p, s.precision()) *
                  PadicInt(p, [&] {
                    auto u = digits_of(vu.unit);
                    u.resize(s.precision(), 0);
                    return u;
                  }()),
              s);
  }
}

TEST(InverseUnit, Examples) {
  EXPECT_EQ(inverse_unit(from_integer(1, Prime(3), 5)), from_integer(1, Prime(3), 5));
  const auto inv2 = inverse_unit(from_integer(2, Prime(5), 3));
  EXPECT_EQ(digits_of(inv2), (std::vector<Digit>{3, 2, 2}));
  EXPECT_EQ(oracle::value(inv2.digits(), 5), oracle::inverse(2, 125));
  EXPECT_THROW((void)inverse_unit(from_integer(5, Prime(5), 3)), NotAUnit);
}

TEST(InverseUnit, MatchesExtendedEuclidAndIsInvolution) {
  oracle::Gen g(17);
  for (int trial = 0; trial < 60; ++trial) {
    const Prime p(g.prime());
    const std::size_t N = 1 + g.below(trial % 5 == 0 ? 700 : 60);
    const auto u = random_unit(g, p, N);
    const auto inv = inverse_unit(u);
    const auto m = oracle::power(p.value(), N);
    ASSERT_EQ(oracle::value(inv.digits(), p.value()), oracle::inverse(oracle::value(u.digits(), p.value()), m));
    ASSERT_EQ(u * inv, PadicInt::one(p, N));
    ASSERT_EQ(inverse_unit(inv), u);
  }
}

TEST(Teichmuller, Examples) {
  EXPECT_EQ(teichmuller(1, Prime(7), 10), PadicInt::one(Prime(7), 10));
  EXPECT_EQ(digits_of(teichmuller(2, Prime(5), 3)), (std::vector<Digit>{2, 1, 2}));
  for (std::uint32_t pv : {3U, 5U, 11U}) {
    const auto m1 = teichmuller(pv - 1, Prime(pv), 12);
    EXPECT_EQ(digits_of(m1), std::vector<Digit>(12, pv - 1));
    EXPECT_EQ(m1 * m1, PadicInt::one(Prime(pv), 12));
  }
  EXPECT_THROW((void)teichmuller(0, Prime(5), 3), InvalidArgument);
  EXPECT_THROW((void)teichmuller(5, Prime(5), 3), InvalidArgument);
}

TEST(Teichmuller, RootOfUnityCongruentToResidue) {
  for (std::uint32_t pv : {3U, 5U, 7U, 11U, 13U, 101U}) {
    const Prime p(pv);
    for (std::size_t N : {1UL, 2UL, 7UL, 33UL, 64UL}) {
      for (std::uint32_t a = 1; a < pv; ++a) {
        const auto eta = teichmuller(a, p, N);
        ASSERT_EQ(eta.digit(0), a);
        ASSERT_EQ(pow(eta, pv - 1), PadicInt::one(p, N)) << "p=" << pv << " a=" << a << " N=" << N;
        ASSERT_EQ(oracle::value(eta.digits(), pv), oracle::teichmuller(a, pv, N));
      }
    }
  }
}

TEST(Teichmuller, FrobeniusAndNewtonAgree) {
  for (std::uint32_t pv : {3U, 5U, 7U, 13U, 65537U}) {
    const Prime p(pv);
    for (std::size_t N : {1UL, 5UL, 64UL, 300UL}) {
      for (std::uint32_t a : {1U, 2U, pv - 1}) {
        ASSERT_EQ(teichmuller_by_frobenius(a, p, N), teichmuller_by_newton(a, p, N)) << pv << " " << N << " " << a;
      }
    }
  }
  // Above the cutoff the dispatcher takes the Newton route.
  EXPECT_EQ(teichmuller(2, Prime(5), kFrobeniusCutoff + 50), teichmuller_by_frobenius(2, Prime(5), kFrobeniusCutoff + 50));
}

TEST(Teichmuller, LiftsAreDistinctAndClosedUnderMultiplication) {
  for (std::uint32_t pv : {3U, 5U, 7U, 11U, 13U}) {
    const Prime p(pv);
    const std::size_t N = 40;
    std::vector<PadicInt> lifts;
    for (std::uint32_t a = 1; a < pv; ++a) lifts.push_back(teichmuller(a, p, N));
    for (std::uint32_t a = 1; a < pv; ++a) {
      for (std::uint32_t b = 1; b < pv; ++b) {
        const auto prod = lifts[a - 1] * lifts[b - 1];
        const std::uint32_t c = static_cast<std::uint32_t>((std::uint64_t{a} * b) % pv);
        ASSERT_EQ(prod, lifts[c - 1]);
      }
    }
  }
}

TEST(Shifted, DropsLowDigits) {
  const auto a = from_integer(5, Prime(3), 4);
  EXPECT_EQ(a.shifted(1), from_integer(1, Prime(3), 3));
  EXPECT_EQ(a.shifted(4).precision(), 0U);
  EXPECT_THROW((void)a.shifted(5), PrecisionExhausted);
  EXPECT_EQ(a.truncated(2), from_integer(5, Prime(3), 2));
  EXPECT_THROW((void)a.truncated(5), PrecisionExhausted);
}

TEST(RandomPadic, DeterministicAndSeedSensitive) {
  const Prime p(7);
  EXPECT_EQ(random_padic(42, p, 100), random_padic(42, p, 100));
  EXPECT_FALSE(random_padic(42, p, 100) == random_padic(43, p, 100));
  // A longer draw extends a shorter one from the same seed.
  EXPECT_EQ(random_padic(42, p, 200).truncated(100), random_padic(42, p, 100));
}

TEST(RandomPadic, DigitHistogramWithinFiveSigma) {
  for (std::uint32_t pv : {3U, 5U, 13U}) {
    const std::size_t N = 100000;
    const auto a = random_padic(2024, Prime(pv), N);
    std::vector<std::size_t> hist(pv, 0);
    for (Digit d : a.digits()) ++hist[d];
    const double mu = static_cast<double>(N) / pv;
    const double sigma = std::sqrt(N * (1.0 / pv) * (1.0 - 1.0 / pv));
    for (auto h : hist) EXPECT_LE(std::abs(static_cast<double>(h) - mu), 5 * sigma);
  }
}

TEST(DigitStream, UniformStaysInRange) {
  DigitStream s(9);
  for (int i = 0; i < 10000; ++i) EXPECT_LT(s.uniform(3), 3U);
  EXPECT_NE(derive_seed(1, 0), derive_seed(1, 1));
  EXPECT_EQ(derive_seed(5, 7), derive_seed(5, 7));
}

TEST(CheckedPower, OverflowIsReported) {
  EXPECT_EQ(checked_power(3, 4), 81U);
  EXPECT_THROW((void)checked_power(3, 41), InvalidArgument);
}
