#include <gtest/gtest.h>

#include "asw/acceptance.hpp"
#include "asw/milnor.hpp"
#include "asw/parse.hpp"
#include "asw/symbol.hpp"

using namespace asw;

namespace {

struct MilnorTest : ::testing::Test {
  FieldParams fp = FieldParams::standard(2, 1);
  K2Group grp{FFRing(fp), 2};
  const FFRing& k = grp.field();
  PrecisionWindow window;
  KSeries s(const char* text) const { return parse_series(k, text); }
};

}  // namespace

TEST_F(MilnorTest, FactorUnit) {
  const auto one = factor_unit(k, s("1 + S*T"), window);
  ASSERT_EQ(one.size(), 1u);
  EXPECT_EQ(one[0].i, 1);
  EXPECT_EQ(one[0].j, 1);
  const auto two = factor_unit(k, s("(1 + S*T)*(1 + T^2)"), window);
  ASSERT_EQ(two.size(), 2u);
  EXPECT_EQ(std::make_pair(two[0].i, two[0].j), std::make_pair(0, 2));
  EXPECT_EQ(std::make_pair(two[1].i, two[1].j), std::make_pair(1, 1));
  EXPECT_TRUE(factor_unit(k, s("1"), window).empty());
  EXPECT_THROW(factor_unit(k, s("1 + S^-1"), window), NotPrincipalUnit);
}

TEST_F(MilnorTest, TameSymbols) {
  EXPECT_EQ(normalize_symbol(grp, s("S"), s("T"), window), grp.st(1));
  EXPECT_EQ(normalize_symbol(grp, s("T"), s("S"), window), grp.st(3));
  EXPECT_EQ(normalize_symbol(grp, s("S^2*T"), s("S^3*T^5"), window), grp.st(2 * 5 - 1 * 3));
}

TEST_F(MilnorTest, ExponentConversionForEvenJ) {
  const CanonicalK2 y = normalize_symbol(grp, s("1 + S*T^2"), s("S"), window);
  ASSERT_EQ(y.gens.size(), 1u);
  EXPECT_EQ(y.gens[0].kind, GenKind::T);
  EXPECT_EQ(std::make_tuple(y.gens[0].i, y.gens[0].j, y.gens[0].n), std::make_tuple(1, 2, std::int64_t{2}));
}

TEST_F(MilnorTest, UnsupportedPair) {
  EXPECT_THROW(normalize_symbol(grp, s("1 + S"), s("1 + T"), window), UnsupportedPair);
}

TEST_F(MilnorTest, CanonicalizeMergesAndDrops) {
  const CanonicalK2 a = grp.unit_symbol(GenKind::S, 1, 1, k.one(), 1);
  EXPECT_EQ(grp.merge(a, a).gens[0].n, 2);
  EXPECT_TRUE(grp.power(a, 4).is_trivial());
  EXPECT_TRUE(grp.merge(a, grp.power(a, -1)).is_trivial());
}

TEST_F(MilnorTest, UnitSymbolInvariants) {
  acceptance::Sampler rng(3);
  for (const auto& cfg : acceptance::configs()) {
    const K2Group g(FFRing(FieldParams::standard(cfg.p, cfg.d)), cfg.m);
    for (int n = 0; n < 50; ++n)
      for (const auto& gen : rng.symbol(g, 12).gens) EXPECT_TRUE(generator_invariant(gen.kind, gen.i, gen.j, cfg.p));
  }
}

TEST(Milnor, DlogOfTSymbolOddP) {
  const FieldParams fp = FieldParams::standard(3, 1);
  const ZqRing zq(fp, 2);
  const K2Group grp(FFRing(fp), 2);
  const PrecisionWindow cap = PrecisionWindow::square(12);
  const ZRing R(zq, cap);
  // dlog{1 + a S T^2, T} = a i (1 + [a] S T^2)^-1 S^{i-1} T^{j-1} dS ^ dT with a = 2, i = 1, j = 2
  const CanonicalK2 y{0, {{GenKind::T, 1, 2, grp.field().from_int(2), 1}}};
  const ZqElem A = zq.teichmuller(grp.field().from_int(2));
  const ZSeries expected = R.mul(R.monomial(A, 0, 1), R.inv_unit(R.add(R.one(), R.monomial(A, 1, 2))));
  EXPECT_TRUE(R.agree(lift_and_dlog(y, zq, cap).f, expected));
  EXPECT_TRUE(lift_and_dlog(CanonicalK2{}, zq, cap).f.vanishes());
  const ZSeries st = lift_and_dlog(grp.st(1), zq, cap).f;
  EXPECT_EQ(st.term_count(), 1u);
  EXPECT_EQ(*st.coeff(-1, -1), zq.one());
}

TEST(Milnor, SteinbergPairsTrivially) {
  const Pairing P(FieldParams::standard(3, 1), 2);
  const KRing F(P.reducer().field());
  acceptance::Sampler rng(99);
  for (int n = 0; n < 30; ++n) {
    const KSeries f = F.monomial(rng.nonzero(P.reducer().field()), rng.uniform(-6, 6), rng.uniform(-6, 6));
    const CanonicalK2 y = normalize_symbol(P.group(), f, F.neg(f), P.window());
    const CanonicalASW x = rng.canonical(P.reducer().zq(), 8);
    EXPECT_EQ(P.theorem1(x, y).v, 0);
  }
}

TEST(Milnor, ConversionPairsIdentically) {
  // For p not dividing i or j the S- and T-renderings of {1 + a S^i T^j, .} agree under pairing.
  const Pairing P(FieldParams::standard(3, 1), 2);
  const K2Group& grp = P.group();
  acceptance::Sampler rng(5);
  for (int i = 1; i <= 4; ++i)
    for (int j = -4; j <= 4; ++j) {
      if (i % 3 == 0 || j % 3 == 0) continue;
      const FFElem a = rng.nonzero(grp.field());
      const CanonicalK2 as_s = grp.unit_symbol(GenKind::S, i, j, a, 1);
      const CanonicalK2 as_t{0, {{GenKind::T, i, j, a, mod_floor(-static_cast<std::int64_t>(j) * inv_mod(i, 9), 9)}}};
      for (int n = 0; n < 5; ++n) {
        const CanonicalASW x = rng.canonical(P.reducer().zq(), 8);
        EXPECT_EQ(P.theorem1(x, as_s), P.theorem1(x, as_t)) << i << " " << j;
      }
    }
}
