#include <gtest/gtest.h>

#include <random>

#include "asw/errors.hpp"
#include "asw/ring_tower.hpp"
#include "asw/witt.hpp"

using namespace asw;

namespace {

// Z/n as a ring object for ghost tests over the integers.
struct IntMod {
  using value_type = std::int64_t;
  std::int64_t n;
  std::int64_t p;
  std::int64_t zero() const { return 0; }
  std::int64_t one() const { return 1 % n; }
  std::int64_t from_int(std::int64_t v) const { return mod_floor(v, n); }
  std::int64_t add(std::int64_t a, std::int64_t b) const { return mod_floor(a + b, n); }
  std::int64_t sub(std::int64_t a, std::int64_t b) const { return mod_floor(a - b, n); }
  std::int64_t neg(std::int64_t a) const { return mod_floor(-a, n); }
  std::int64_t mul(std::int64_t a, std::int64_t b) const { return mod_floor(a * b, n); }
  std::int64_t scale(std::int64_t a, std::int64_t k) const { return mod_floor(a * k, n); }
  bool is_zero(std::int64_t a) const { return a == 0; }
  bool equal(std::int64_t a, std::int64_t b) const { return a == b; }
  std::int64_t pow(std::int64_t a, std::uint64_t e) const { return ring_pow(*this, a, e); }
  std::int64_t characteristic() const { return n; }
  std::int64_t prime() const { return p; }
};

}  // namespace

TEST(Ghost, SmallVectorsOverZqp) {
  const ZqRing z2(FieldParams::standard(2, 1), 6);
  const auto g = ghost_map(z2, WittVec<ZqElem>{{z2.from_int(3), z2.from_int(5)}});
  EXPECT_EQ(g.comps, (std::vector<ZqElem>{z2.from_int(3), z2.from_int(19)}));
  const auto w = ghost_inverse(z2, GhostVec<ZqElem>{{z2.from_int(3), z2.from_int(19)}});
  EXPECT_EQ(w.coords, (std::vector<ZqElem>{z2.from_int(3), z2.from_int(5)}));
  EXPECT_THROW(ghost_inverse(z2, GhostVec<ZqElem>{{z2.from_int(1), z2.from_int(2)}}), DivisibilityError);
}

TEST(Ghost, TeichmullerHasConstantGhost) {
  const ZqRing z3(FieldParams::standard(3, 1), 5);
  const ZqElem c = z3.teichmuller(z3.field().from_int(2));
  const auto w = ghost_inverse(z3, GhostVec<ZqElem>{{c, c, c}});
  EXPECT_EQ(w.coords, (std::vector<ZqElem>{c, z3.zero(), z3.zero()}));
  // over F_9 the ghost of [g] is (t, t^3, t^9)
  const ZqRing zq(FieldParams::standard(3, 2), 5);
  const ZqElem t = zq.teichmuller(zq.field().generator());
  const auto wt = ghost_inverse(zq, GhostVec<ZqElem>{{t, zq.pow(t, 3), zq.pow(t, 9)}});
  EXPECT_EQ(wt.coords, (std::vector<ZqElem>{t, zq.zero(), zq.zero()}));
  const auto g = ghost_map(zq, WittVec<ZqElem>{{zq.one(), zq.zero(), zq.zero()}});
  EXPECT_EQ(g.comps, (std::vector<ZqElem>{zq.one(), zq.one(), zq.one()}));
}

TEST(WittRing, FromIntOverFp) {
  const FFRing f2(FieldParams::standard(2, 1));
  const WittRing<FFRing> W(f2, 3);
  EXPECT_EQ(W.from_int(3).coords, (std::vector<FFElem>{f2.one(), f2.one(), f2.zero()}));
  const FFRing f5(FieldParams::standard(5, 1));
  const WittRing<FFRing> W5(f5, 3);
  EXPECT_EQ(W5.mul(W5.from_int(7), W5.from_int(11)), W5.from_int(77));
  EXPECT_EQ(W5.from_int(77).coords, (std::vector<FFElem>{f5.from_int(2), f5.from_int(4), f5.from_int(1)}));
}

TEST(WittRing, LengthTwoAdditionInCharTwo) {
  const FFRing f4(FieldParams::make(2, {1, 1, 1}));
  const WittRing<FFRing> W(f4, 2);
  for (std::int64_t a0 = 0; a0 < 4; ++a0)
    for (std::int64_t b0 = 0; b0 < 4; ++b0)
      for (std::int64_t a1 = 0; a1 < 4; a1 += 3) {
        const FFElem x0 = f4.element(a0), y0 = f4.element(b0), x1 = f4.element(a1), y1 = f4.element(3 - a1);
        const auto s = W.add({{x0, x1}}, {{y0, y1}});
        EXPECT_EQ(s.coords[0], f4.add(x0, y0));
        EXPECT_EQ(s.coords[1], f4.add(f4.add(x1, y1), f4.mul(x0, y0)));
      }
}

TEST(WittRing, GroupLawAndTeichmuller) {
  const FFRing k(FieldParams::standard(3, 2));
  const WittRing<FFRing> W(k, 3);
  std::mt19937_64 rng(11);
  auto any = [&] { return k.element(static_cast<std::int64_t>(rng() % static_cast<std::uint64_t>(k.size()))); };
  for (int n = 0; n < 100; ++n) {
    const WittVec<FFElem> a{{any(), any(), any()}};
    const WittVec<FFElem> b{{any(), any(), any()}};
    EXPECT_TRUE(W.is_zero(W.add(a, W.neg(a))));
    EXPECT_EQ(W.sub(W.add(a, b), b), a);
    const FFElem u = any(), v = any();
    EXPECT_EQ(W.mul(W.teichmuller(u), W.teichmuller(v)), W.teichmuller(k.mul(u, v)));
  }
}

TEST(WittRing, ArtinSchreierOperator) {
  const FFRing f4(FieldParams::make(2, {1, 1, 1}));
  const WittRing<FFRing> W(f4, 2);
  const FFElem g = f4.generator();
  const FFElem g2 = f4.mul(g, g);
  const auto r = wp(W, WittVec<FFElem>{{g, f4.zero()}});
  EXPECT_EQ(r.coords[0], f4.add(g2, g));
  EXPECT_EQ(r.coords[1], f4.add(g2, f4.mul(g2, g)));
  EXPECT_TRUE(W.is_zero(wp(W, W.zero())));
  const WittRing<FFRing> W1(f4, 1);
  EXPECT_EQ(wp(W1, WittVec<FFElem>{{g}}).coords[0], f4.sub(f4.frobenius(g), g));
}

TEST(WittRing, VerschiebungIsMultiplicationByPOverFp) {
  const FFRing f3(FieldParams::standard(3, 1));
  const WittRing<FFRing> W(f3, 3);
  for (int n = 0; n < 27; ++n) {
    const auto x = W.from_int(n);
    EXPECT_EQ(W.verschiebung(x), W.from_int(3 * n));
  }
}

TEST(UniversalPolys, IntegralForSmallParameters) {
  for (std::int64_t p : {2, 3, 5})
    for (int m = 1; m <= 3; ++m) EXPECT_NO_THROW(UniversalWittPolys::generate(p, m));
  const auto polys = UniversalWittPolys::get(2, 2);
  EXPECT_EQ(polys->sum.size(), 2u);
}

TEST(WittRing, GhostOfSumOverIntegersModPowers) {
  // Ghost components are additive for vectors over Z/2^8.
  const IntMod zn{256, 2};
  const WittRing<IntMod> W(zn, 3);
  std::mt19937_64 rng(3);
  for (int n = 0; n < 50; ++n) {
    WittVec<std::int64_t> a, b;
    for (int h = 0; h < 3; ++h) {
      a.coords.push_back(static_cast<std::int64_t>(rng() % 256));
      b.coords.push_back(static_cast<std::int64_t>(rng() % 256));
    }
    const auto ga = ghost_map(zn, a), gb = ghost_map(zn, b), gs = ghost_map(zn, W.add(a, b));
    for (int h = 0; h < 3; ++h) EXPECT_EQ(gs.comps[h], zn.add(ga.comps[h], gb.comps[h]));
  }
}
