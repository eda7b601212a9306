#include <gtest/gtest.h>

#include "asw/acceptance.hpp"
#include "asw/parse.hpp"
#include "asw/symbol.hpp"

using namespace asw;

TEST(RatioMatch, Cases) {
  EXPECT_EQ(ratio_match(2, 4, 1, 2), 2);
  EXPECT_EQ(ratio_match(0, 6, 0, 3), 2);
  EXPECT_FALSE(ratio_match(1, 2, 1, 1));
  EXPECT_FALSE(ratio_match(1, 0, 0, 1));
  EXPECT_FALSE(ratio_match(-2, -4, 1, 2));
  EXPECT_EQ(ratio_match(6, -10, 3, -5), 2);
}

TEST(Pairing, WorkedExampleP3) {
  const Pairing P(FieldParams::standard(3, 1), 1);
  const FFRing& k = P.reducer().field();
  const auto x = parse_witt(k, 1, "[S^-1*T^-1]");
  const auto y = parse_symbol(P.group(), "{1+S*T, S}", P.window());
  const auto xc = P.reducer().reduce(x, false).canonical;
  EXPECT_EQ(P.theorem1(xc, y).v, 2);
  EXPECT_EQ(P.parshin(x, y).v, 2);
  EXPECT_EQ(P.closed_form(xc, y).v, 2);
}

TEST(Pairing, ConstantAgainstST) {
  const Pairing P(FieldParams::standard(2, 1), 2);
  const auto x = parse_witt(P.reducer().field(), 2, "[1, 0]");
  EXPECT_EQ(P.parshin(x, P.group().st(1)).v, 1);
  EXPECT_EQ(P.via_reduction(x, P.group().st(1)).v, 1);
  CanonicalASW c3;
  c3.c = 3;
  EXPECT_EQ(P.theorem1(c3, P.group().st(1)).v, 3);
}

TEST(Pairing, TermsAgainstSTVanish) {
  const Pairing P(FieldParams::standard(5, 1), 1);
  const ZqRing& zq = P.reducer().zq();
  for (const CanonKey key : {CanonKey{1, 1}, CanonKey{0, 2}, CanonKey{3, -4}}) {
    CanonicalASW x;
    x.terms[key] = zq.from_int(3);
    EXPECT_EQ(P.theorem1(x, P.group().st(1)).v, 0);
    EXPECT_EQ(P.closed_form(x, P.group().st(1)).v, 0);
  }
}

TEST(Pairing, NoRatioMatchIsZero) {
  const Pairing P(FieldParams::standard(3, 1), 1);
  CanonicalASW x;
  x.terms[{1, 2}] = P.reducer().zq().one();
  const CanonicalK2 y{0, {{GenKind::S, 1, 1, P.group().field().one(), 1}}};
  EXPECT_EQ(P.closed_form(x, y).v, 0);
  EXPECT_EQ(P.theorem1(x, y).v, 0);
}

TEST(Pairing, CharTwoLengthTwoSigns) {
  // The values that separate 1 + [a]ST from 1 - [-a]ST as lifts.
  const Pairing P(FieldParams::standard(2, 1), 2);
  const FFRing& k = P.reducer().field();
  const auto x = parse_witt(k, 2, "[S^-1*T^-1]");
  const auto ys = parse_symbol(P.group(), "{1+S*T, S}", P.window());
  const auto yt = parse_symbol(P.group(), "{1+S*T, T}", P.window());
  const auto xc = P.reducer().reduce(x, false).canonical;
  EXPECT_EQ(P.parshin(x, ys).v, 1);
  EXPECT_EQ(P.theorem1(xc, ys).v, 1);
  EXPECT_EQ(P.parshin(x, yt).v, 3);
  EXPECT_EQ(P.theorem1(xc, yt).v, 3);
}

TEST(Pairing, WpIsInTheKernel) {
  const Pairing P(FieldParams::standard(3, 1), 2);
  const FFRing& k = P.reducer().field();
  const WittRing<KRing> W(KRing(k), 2);
  acceptance::Sampler rng(8);
  for (int n = 0; n < 20; ++n) {
    const auto z = rng.witt(k, 2, 3);
    const auto y = rng.symbol(P.group(), 8);
    EXPECT_EQ(P.parshin(wp(W, z), y).v, 0);
  }
}

TEST(Schmid, OneVariableExamples) {
  const FFRing f2(FieldParams::standard(2, 1));
  EXPECT_EQ(schmid_one_dim(f2, parse_series(f2, "S^-1"), parse_series(f2, "1 + S"), GenKind::S).v, 1);
  EXPECT_EQ(schmid_one_dim(f2, parse_series(f2, "S"), parse_series(f2, "1 + S"), GenKind::S).v, 0);
  const FFRing f9(FieldParams::standard(3, 2));
  const KSeries c = parse_series(f9, "a");
  EXPECT_EQ(schmid_one_dim(f9, c, parse_series(f9, "T"), GenKind::T).v, f9.trace_int(f9.generator()));
  EXPECT_THROW(schmid_one_dim(f9, parse_series(f9, "S*T"), parse_series(f9, "T"), GenKind::T), InvalidArgument);
}
