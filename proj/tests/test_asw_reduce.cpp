#include <gtest/gtest.h>

#include "asw/acceptance.hpp"
#include "asw/asw_reduce.hpp"
#include "asw/parse.hpp"

using namespace asw;

namespace {

CanonicalASW canon(std::int64_t c, std::map<CanonKey, ZqElem> terms) { return CanonicalASW{c, std::move(terms)}; }

}  // namespace

TEST(CanonicalKey, Cone) {
  EXPECT_TRUE(is_canonical_key(1, 1, 2));
  EXPECT_TRUE(is_canonical_key(0, 1, 3));
  EXPECT_TRUE(is_canonical_key(3, -5, 2));
  EXPECT_FALSE(is_canonical_key(2, 2, 2));
  EXPECT_FALSE(is_canonical_key(0, -1, 2));
  EXPECT_FALSE(is_canonical_key(-1, 4, 5));
  EXPECT_FALSE(is_canonical_key(0, 0, 3));
}

TEST(Reduce, PthPowerDescends) {
  const AswReducer R(FieldParams::standard(2, 1), 1);
  const auto r = R.reduce(parse_witt(R.field(), 1, "[S^-2]"));
  EXPECT_EQ(r.canonical, canon(0, {{{1, 0}, R.zq().one()}}));
  EXPECT_TRUE(R.verify(parse_witt(R.field(), 1, "[S^-2]"), r));
}

TEST(Reduce, PositiveConeVanishes) {
  const AswReducer R(FieldParams::standard(3, 1), 1);
  const auto x = parse_witt(R.field(), 1, "[T]");
  const auto r = R.reduce(x);
  EXPECT_TRUE(r.canonical.is_zero());
  EXPECT_TRUE(R.verify(x, r));
  // the witness is -(T + T^3 + T^9 + ...)
  EXPECT_EQ(*r.witness.coords[0].coeff(0, 9), R.field().from_int(-1));
}

TEST(Reduce, ConstantOverPrimeField) {
  const AswReducer R(FieldParams::standard(5, 1), 1);
  const auto r = R.reduce(parse_witt(R.field(), 1, "[1]"));
  EXPECT_EQ(r.canonical, canon(1, {}));
}

TEST(Reduce, ConstantOverExtensionUsesTrace) {
  const AswReducer R(FieldParams::standard(2, 2), 2);
  // Tr(a) = 1 = Tr(alpha), so [a] is beta up to wp.
  const auto x = parse_witt(R.field(), 2, "[a, 0]");
  const auto r = R.reduce(x);
  EXPECT_TRUE(R.verify(x, r));
  EXPECT_EQ(r.canonical.c % 2, 1);
  EXPECT_TRUE(r.canonical.terms.empty());
  EXPECT_TRUE(R.reduce(parse_witt(R.field(), 2, "[1, 0]"), false).canonical.c % 2 == 0);
}

TEST(Reduce, EmbedThenReduceIsIdentity) {
  for (const auto& cfg : acceptance::configs()) {
    const AswReducer R(FieldParams::standard(cfg.p, cfg.d), cfg.m);
    acceptance::Sampler rng(17 + static_cast<std::uint64_t>(cfg.p * 10 + cfg.m));
    for (int n = 0; n < 20; ++n) {
      const CanonicalASW xc = rng.canonical(R.zq(), 10);
      const auto r = R.reduce(R.embed(xc));
      EXPECT_EQ(r.canonical, xc) << cfg.str() << " " << to_string(R.zq(), xc);
      EXPECT_TRUE(r.outside.is_zero());
    }
  }
}

TEST(Reduce, AdditiveOnCanonicalParts) {
  for (const auto& cfg : acceptance::configs()) {
    const AswReducer R(FieldParams::standard(cfg.p, cfg.d), cfg.m);
    const WittRing<KRing> W(KRing(R.field()), cfg.m);
    acceptance::Sampler rng(29 + static_cast<std::uint64_t>(cfg.p * 10 + cfg.m));
    for (int n = 0; n < 20; ++n) {
      const auto x = rng.witt(R.field(), cfg.m, 8);
      const auto y = rng.witt(R.field(), cfg.m, 8);
      const auto rx = R.reduce(x, false), ry = R.reduce(y, false), rs = R.reduce(W.add(x, y), false);
      EXPECT_EQ(rs.canonical, R.add(rx.canonical, ry.canonical)) << cfg.str();
    }
  }
}

TEST(Reduce, DistinctCanonicalsStayDistinct) {
  const AswReducer R(FieldParams::standard(3, 1), 2);
  const WittRing<KRing> W(KRing(R.field()), 2);
  acceptance::Sampler rng(41);
  for (int n = 0; n < 30; ++n) {
    const CanonicalASW a = rng.canonical(R.zq(), 8), b = rng.canonical(R.zq(), 8);
    if (a == b) continue;
    EXPECT_FALSE(R.reduce(W.sub(R.embed(a), R.embed(b)), false).canonical.is_zero());
  }
}

TEST(Reduce, InputOutsideWindowIsRejected) {
  const AswReducer R(FieldParams::standard(2, 1), 1, PrecisionWindow::square(4));
  EXPECT_THROW(R.reduce(parse_witt(R.field(), 1, "[S^-9]")), WindowTooSmall);
  EXPECT_THROW(R.reduce(parse_witt(R.field(), 1, "[1, 0]")), ParseError);
}

TEST(Lift, CanonicalAndHat) {
  const ZqRing zq(FieldParams::standard(3, 1), 3);
  const ZSeries f = lift_canonical(canon(0, {{{1, 1}, zq.one()}}), zq);
  EXPECT_EQ(f.term_count(), 1u);
  EXPECT_EQ(*f.coeff(-1, -1), zq.one());
  EXPECT_EQ(*lift_canonical(canon(2, {}), zq).coeff(0, 0), zq.from_int(2));
  const FFRing& k = zq.field();
  const auto h = hat_lift(parse_witt(k, 1, "[2*S^-1]"), zq);
  EXPECT_EQ(*h.coords[0].coeff(-1, 0), zq.from_int(26));  // [2] = -1 mod 27
}
