#include <gtest/gtest.h>

#include <random>

#include "asw/errors.hpp"
#include "asw/parse.hpp"
#include "asw/series.hpp"

using namespace asw;

namespace {

struct SeriesTest : ::testing::Test {
  FFRing k{FieldParams::standard(3, 1)};
  KRing F{k, PrecisionWindow::square(16)};
  KRing exact{k};
  KSeries parse(const char* s) const { return parse_series(k, s); }
};

}  // namespace

TEST_F(SeriesTest, ValuationIsTFirst) {
  EXPECT_EQ(valuation(parse("S^2*T^-1 + S^-3*T^-1 + T^5")), (ExpVec{-3, -1}));
  EXPECT_EQ(valuation(exact.one()), (ExpVec{0, 0}));
  EXPECT_EQ(valuation(parse("S^5 + T")), (ExpVec{5, 0}));
  EXPECT_THROW(valuation(exact.zero()), ZeroValuation);
}

TEST_F(SeriesTest, MonomialProduct) {
  EXPECT_TRUE(exact.equal(exact.mul(parse("S^-1*T^-1"), parse("S*T")), exact.one()));
}

TEST_F(SeriesTest, GeometricInverse) {
  const KSeries u = parse("1 + 2*S*T");
  const KSeries inv = F.inv_unit(u);
  for (int n = 0; n <= 16; ++n) {
    ASSERT_TRUE(inv.known(n, n));
    const FFElem* c = inv.coeff(n, n);
    ASSERT_NE(c, nullptr);
    EXPECT_EQ(*c, k.pow(k.from_int(1), n));  // (-2)^n = 1 in F_3
  }
  EXPECT_TRUE(F.agree(F.mul(u, inv), F.one()));
}

TEST_F(SeriesTest, InverseWithMonomialFactor) {
  const KSeries f = parse("S^2*(1 + T)");
  const KSeries inv = F.inv_unit(f);
  EXPECT_TRUE(F.agree(F.mul(f, inv), F.one()));
  EXPECT_EQ(*inv.coeff(-2, 0), k.one());
  EXPECT_EQ(*inv.coeff(-2, 1), k.from_int(-1));
  // S + T = T (1 + S/T) is a unit of k((T))((S))
  EXPECT_TRUE(F.agree(F.mul(parse("S + T"), F.inv_unit(parse("S + T"))), F.one()));
  EXPECT_THROW(F.inv_unit(F.zero()), Error);
}

TEST_F(SeriesTest, DlogOfProducts) {
  const auto d = dlog_unit(F, parse("S*(1 + T)"));
  EXPECT_TRUE(F.agree(d.ds, parse("S^-1")));
  EXPECT_TRUE(F.agree(d.dt, F.inv_unit(parse("1 + T"))));
}

TEST_F(SeriesTest, WedgeAndResidue) {
  const auto dS = dlog_unit(F, F.S());
  const auto dT = dlog_unit(F, F.T());
  const auto st = wedge(F, dS, dT);
  EXPECT_TRUE(F.agree(st.f, parse("S^-1*T^-1")));
  EXPECT_EQ(residue(F, st), k.one());
  EXPECT_TRUE(wedge(F, dS, dS).f.vanishes());
  EXPECT_EQ(residue(F, TwoForm<FFElem>{parse("S^-1")}), k.zero());
}

TEST_F(SeriesTest, UnitWedgeS) {
  // dlog(1 + aST) ^ dlog S = -a (1 + aST)^-1 dS ^ dT
  const KSeries u = parse("1 + a*S*T");
  const auto w = wedge(F, dlog_unit(F, u), dlog_unit(F, F.S()));
  EXPECT_TRUE(F.agree(w.f, F.mul(F.constant(k.neg(k.generator())), F.inv_unit(u))));
}

TEST_F(SeriesTest, ResidueOfExpansion) {
  const KSeries g = F.mul(parse("S^-1*T^-1"), F.inv_unit(parse("1 + S*T")));
  EXPECT_EQ(residue(F, TwoForm<FFElem>{g}), k.one());
}

TEST_F(SeriesTest, ResidueRefusesUnknownCoefficient) {
  const KRing small(k, PrecisionWindow::square(2));
  const KSeries g = small.inv_unit(parse("1 + S*T^-1"));
  EXPECT_THROW(residue_of_product(small, parse("S^-4*T^3"), TwoForm<FFElem>{g}), WindowTooSmall);
}

TEST_F(SeriesTest, CappedArithmeticAgreesWithExact) {
  std::mt19937_64 rng(5);
  auto any = [&](int r) {
    KSeries f = exact.zero();
    for (int n = 0; n < 3; ++n) {
      const int s = static_cast<int>(rng() % (2 * r + 1)) - r;
      const int t = static_cast<int>(rng() % (2 * r + 1)) - r;
      f = exact.add(f, exact.monomial(k.from_int(static_cast<std::int64_t>(rng() % 2) + 1), s, t));
    }
    return f;
  };
  for (int n = 0; n < 300; ++n) {
    const KSeries a = any(6), b = any(6);
    const KSeries capped = F.mul(F.frobenius(F.truncate(a)), F.truncate(b));
    const KSeries full = exact.mul(exact.frobenius(a), b);
    // every coefficient the capped product claims to know is correct
    capped.for_each_term([&](int s, int t, const FFElem& c) {
      const FFElem* e = full.coeff(s, t);
      EXPECT_TRUE(e && *e == c);
    });
    full.for_each_term([&](int s, int t, const FFElem&) {
      if (capped.known(s, t)) EXPECT_NE(capped.coeff(s, t), nullptr);
    });
  }
}

TEST_F(SeriesTest, DerivativesFollowExponents) {
  EXPECT_TRUE(exact.equal(exact.derivative_s(parse("S^4*T^2")), parse("4*S^3*T^2")));
  EXPECT_TRUE(exact.equal(exact.derivative_t(parse("S^4*T^3")), exact.zero()));  // 3 = 0 in F_3
}
