#include <gtest/gtest.h>

#include <boost/math/special_functions/bernoulli.hpp>

#include "gbm/chi_oracle.hpp"
#include "gbm/error.hpp"

using namespace gbm;

namespace {

ExactRational q(long long n, long long d = 1) { return ExactRational(n, d); }

Errc code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error thrown";
  return Errc::configuration;
}

bool is_prime(int p) {
  if (p < 2) return false;
  for (int d = 2; d * d <= p; ++d)
    if (p % d == 0) return false;
  return true;
}

}  // namespace

TEST(Bernoulli, Examples) {
  EXPECT_EQ(bernoulli(0), q(1));
  EXPECT_EQ(bernoulli(1), q(-1, 2));
  EXPECT_EQ(bernoulli(2), q(1, 6));
  EXPECT_EQ(bernoulli(4), q(-1, 30));
  EXPECT_EQ(bernoulli(12), q(-691, 2730));
  EXPECT_EQ(bernoulli(7), q(0));
  EXPECT_EQ(code_of([] { bernoulli(202); }), Errc::capability);
  EXPECT_EQ(code_of([] { bernoulli(-2); }), Errc::range);
  EXPECT_NO_THROW(bernoulli(200));
}

TEST(Bernoulli, AgreesWithFloatingPointTable) {
  for (int g = 1; g <= 30; ++g) {
    const double ref = boost::math::bernoulli_b2n<double>(g);
    EXPECT_NEAR(static_cast<double>(bernoulli(2 * g)) / ref, 1.0, 1e-14) << g;
  }
}

TEST(BernoulliProperties, VonStaudtClausenDenominators) {
  for (int m = 2; m <= 40; m += 2) {
    BigInt expected = 1;
    for (int p = 2; p <= m + 1; ++p)
      if (is_prime(p) && m % (p - 1) == 0) expected *= p;
    EXPECT_EQ(boost::multiprecision::denominator(bernoulli(m)), expected) << "B_" << m;
  }
}

TEST(ZetaNeg, Examples) {
  EXPECT_EQ(zeta_neg(1), q(-1, 12));
  EXPECT_EQ(zeta_neg(2), q(1, 120));
  EXPECT_EQ(zeta_neg(3), q(-1, 252));
  EXPECT_EQ(code_of([] { zeta_neg(0); }), Errc::range);
}

TEST(ZetaNegProperties, DefinitionAndAlternatingSign) {
  for (int g = 1; g <= 20; ++g) {
    EXPECT_EQ(zeta_neg(g), -bernoulli(2 * g) / (2 * g));
    EXPECT_EQ(zeta_neg(g) > 0, g % 2 == 0) << g;
  }
}

TEST(ChiPunctured, Examples) {
  EXPECT_EQ(chi_punctured(2), q(1, 120));
  EXPECT_EQ(chi_punctured(3), q(-1, 252));
  EXPECT_EQ(code_of([] { chi_punctured(1); }), Errc::range);
}

TEST(ChiClosed, Examples) {
  EXPECT_EQ(chi_closed(2), q(-1, 240));
  EXPECT_EQ(chi_closed(3), q(1, 1008));
  EXPECT_EQ(code_of([] { chi_closed(1); }), Errc::range);
}

TEST(ChiClosedProperties, TimesTwoMinusTwoGIsPunctured) {
  for (int g = 2; g <= 20; ++g) EXPECT_EQ(chi_closed(g) * (2 - 2 * g), chi_punctured(g)) << g;
}

TEST(ChiSp, Examples) {
  EXPECT_EQ(chi_sp(1), q(-1, 12));
  EXPECT_EQ(chi_sp(2), q(-1, 1440));
  EXPECT_EQ(chi_sp(3), q(1, 362880));
  EXPECT_EQ(code_of([] { chi_sp(0); }), Errc::range);
}

TEST(ChiFiniteCover, Examples) {
  EXPECT_EQ(chi_finite_cover(q(-1, 6), 12), q(-2));
  EXPECT_EQ(chi_finite_cover(q(-1, 12), 24), q(-2));
  EXPECT_EQ(chi_finite_cover(q(7, 13), 1), q(7, 13));
  EXPECT_EQ(chi_orbifold_from_cover(q(-2), 12), q(-1, 6));
  EXPECT_EQ(code_of([] { chi_finite_cover(q(1), 0); }), Errc::range);
}

TEST(ChiFiniteCoverProperties, IndicesCompose) {
  for (int g = 2; g <= 8; ++g)
    for (long long a : {1, 2, 3, 12})
      for (long long b : {1, 5, 24}) {
        const ExactRational c = chi_punctured(g);
        EXPECT_EQ(chi_finite_cover(c, a * b), chi_finite_cover(chi_finite_cover(c, a), b));
      }
}

TEST(TeichDim, Examples) {
  const TeichDim t = teich_dim(1, 1);
  EXPECT_EQ(t.d, 1);
  EXPECT_EQ(t.dim_T, 2);
  EXPECT_EQ(t.dim_C, 0);
  const TeichDim s = teich_dim(2, 0);
  EXPECT_EQ(s.d, 3);
  EXPECT_EQ(s.dim_T, 6);
  EXPECT_EQ(s.dim_C, 2);
  EXPECT_EQ(code_of([] { teich_dim(0, 3); }), Errc::range);
}

TEST(Rational, RoundTripsThroughStrings) {
  EXPECT_EQ(to_string(q(-2)), "-2/1");
  EXPECT_EQ(to_string(q(1, 120)), "1/120");
  EXPECT_EQ(parse_rational("-691/2730"), q(-691, 2730));
  EXPECT_EQ(parse_rational("6/4"), q(3, 2));
  EXPECT_EQ(parse_rational("5"), q(5));
  EXPECT_THROW(parse_rational("1/0"), Error);
  EXPECT_THROW(parse_rational("abc"), Error);
}
