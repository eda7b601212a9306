#include <gtest/gtest.h>

#include <random>

#include "asw/errors.hpp"
#include "asw/ring_tower.hpp"

using namespace asw;

namespace {

FFElem ff(const FFRing& k, std::initializer_list<std::int64_t> c) {
  FFElem a;
  std::size_t i = 0;
  for (auto v : c) a.c[i++] = mod_floor(v, k.prime());
  return a;
}

}  // namespace

TEST(FieldParams, RejectsBadInput) {
  EXPECT_THROW(FieldParams::make(4, {1, 1}), InvalidArgument);
  EXPECT_THROW(FieldParams::make(2, {1, 0, 1}), InvalidArgument);  // x^2 + 1 = (x + 1)^2
  EXPECT_THROW(FieldParams::make(3, {1, 1, 2}), InvalidArgument);  // not monic
  EXPECT_NO_THROW(FieldParams::make(2, {1, 1, 1}));
}

TEST(FieldParams, ShippedModuliAreIrreducible) {
  for (std::int64_t p : {2, 3, 5})
    for (int d = 1; d <= 3; ++d) EXPECT_NO_THROW(FieldParams::standard(p, d)) << p << " " << d;
}

TEST(FFRing, FieldAxiomsExhaustiveF9) {
  const FFRing k(FieldParams::standard(3, 2));
  for (std::int64_t i = 1; i < k.size(); ++i) {
    const FFElem a = k.element(i);
    EXPECT_EQ(k.mul(a, k.inv(a)), k.one());
    EXPECT_EQ(k.frobenius(k.pth_root(a)), a);
    EXPECT_EQ(k.index_of(a), i);
  }
}

TEST(FFRing, Trace) {
  const FFRing f3(FieldParams::standard(3, 1));
  EXPECT_EQ(f3.trace_int(f3.from_int(2)), 2);
  EXPECT_EQ(f3.trace_int(f3.zero()), 0);
  const FFRing f4(FieldParams::make(2, {1, 1, 1}));
  EXPECT_EQ(f4.trace_int(f4.generator()), 1);  // g + g^2 = 1
}

TEST(FFRing, PthRootInF4) {
  const FFRing f4(FieldParams::make(2, {1, 1, 1}));
  const FFElem g = f4.generator();
  EXPECT_EQ(f4.pth_root(g), f4.mul(g, g));
  EXPECT_EQ(f4.pth_root(f4.zero()), f4.zero());
  EXPECT_EQ(f4.pth_root(f4.one()), f4.one());
}

TEST(FFRing, ArtinSchreierSolvableIffTraceZero) {
  const FFRing k(FieldParams::standard(5, 2));
  for (std::int64_t i = 0; i < k.size(); ++i) {
    const FFElem b = k.element(i);
    const auto w = k.solve_artin_schreier(b);
    EXPECT_EQ(w.has_value(), k.trace_int(b) == 0);
    if (w) EXPECT_EQ(k.sub(k.frobenius(*w), *w), b);
  }
}

TEST(ZqRing, TeichmullerOfTwoMod9) {
  const ZqRing zq(FieldParams::standard(3, 1), 2);
  EXPECT_EQ(zq.teichmuller(zq.field().from_int(2)), zq.from_int(8));
  EXPECT_EQ(zq.teichmuller(zq.field().zero()), zq.zero());
  EXPECT_EQ(zq.teichmuller(zq.field().one()), zq.one());
}

TEST(ZqRing, TeichmullerIsMultiplicativeAndFixed) {
  const ZqRing zq(FieldParams::standard(2, 3), 5);
  const FFRing& k = zq.field();
  for (std::int64_t i = 0; i < k.size(); ++i) {
    const ZqElem t = zq.teichmuller(k.element(i));
    EXPECT_EQ(zq.pow(t, static_cast<std::uint64_t>(k.size())), t);
    EXPECT_EQ(zq.reduce(t), k.element(i));
    for (std::int64_t j = 0; j < k.size(); ++j)
      EXPECT_EQ(zq.mul(t, zq.teichmuller(k.element(j))), zq.teichmuller(k.mul(k.element(i), k.element(j))));
  }
}

TEST(ZqRing, SigmaActsOnTeichmullerByFrobenius) {
  const FieldParams f4 = FieldParams::make(2, {1, 1, 1});
  const ZqRing zq(f4, 2);
  const FFElem g = zq.field().generator();
  EXPECT_EQ(zq.sigma(zq.teichmuller(g)), zq.teichmuller(zq.field().mul(g, g)));
  const ZqElem z = zq.add(zq.teichmuller(g), zq.from_int(2));
  EXPECT_EQ(zq.sigma(zq.sigma(z)), z);
  const ZqRing zp(FieldParams::standard(5, 1), 3);
  EXPECT_EQ(zp.sigma(zp.from_int(17)), zp.from_int(17));
}

TEST(ZqRing, TraceOfTeichmullerGenerator) {
  const ZqRing zq(FieldParams::make(2, {1, 1, 1}), 2);
  EXPECT_EQ(zq.trace(zq.teichmuller(zq.field().generator())), 3);
  EXPECT_EQ(zq.trace(zq.zero()), 0);
}

TEST(ZqRing, TeichDigits) {
  const ZqRing zq(FieldParams::standard(2, 1), 3);
  const FFRing& k = zq.field();
  EXPECT_EQ(zq.teich_digits(zq.from_int(2), 3), (std::vector<FFElem>{k.zero(), k.one(), k.zero()}));
  // 3 = [1] + 2[1]
  EXPECT_EQ(zq.teich_digits(zq.from_int(3), 3), (std::vector<FFElem>{k.one(), k.one(), k.zero()}));
  EXPECT_EQ(zq.teich_digits(zq.from_int(7), 3), (std::vector<FFElem>{k.one(), k.one(), k.one()}));
}

TEST(ZqRing, TeichDigitsRoundTrip) {
  const ZqRing zq(FieldParams::standard(3, 2), 4);
  std::mt19937_64 rng(7);
  for (int n = 0; n < 200; ++n) {
    ZqElem z;
    for (int i = 0; i < 2; ++i) z.c[i] = static_cast<std::int64_t>(rng() % zq.modulus());
    EXPECT_EQ(zq.from_teich_digits(zq.teich_digits(z, 4)), z);
  }
}

TEST(ZqRing, ValuationAndDivision) {
  const ZqRing zq(FieldParams::standard(3, 1), 4);
  EXPECT_EQ(zq.valuation(zq.from_int(18)), 2);
  EXPECT_EQ(zq.valuation(zq.zero()), 4);
  EXPECT_EQ(zq.div_p_pow(zq.from_int(18), 2), zq.from_int(2));
  EXPECT_THROW(zq.div_p_pow(zq.from_int(4), 1), DivisibilityError);
}

TEST(ZqRing, InverseOfUnits) {
  const ZqRing zq(FieldParams::standard(5, 2), 3);
  const ZqElem a = zq.add(zq.generator(), zq.from_int(7));
  EXPECT_EQ(zq.mul(a, zq.inv(a)), zq.one());
  EXPECT_THROW(zq.inv(zq.from_int(5)), NotAUnit);
}
