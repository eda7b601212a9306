#pragma once

// Upper ramification data for the two-dimensional Artin-Schreier-Witt theory.
//
// Exponent vectors are compared T-first: (a1, a2) < (b1, b2) iff a2 < b2, or a2 == b2 and a1 < b1.

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <optional>
#include <vector>

#include "asw/errors.hpp"
#include "asw/milnor.hpp"
#include "asw/ring_tower.hpp"
#include "asw/symbol.hpp"

namespace asw {

struct RamVector {
  std::int64_t r1 = 0;
  std::int64_t r2 = 0;
  friend bool operator==(const RamVector&, const RamVector&) = default;
};

inline bool ram_less(std::int64_t a1, std::int64_t a2, const RamVector& r) {
  return a2 != r.r2 ? a2 < r.r2 : a1 < r.r1;
}

/// Least l >= 0 with (p^l m1, p^l m2) not below r; nullopt when every multiple stays below
/// (m2 == 0 < r2).
inline std::optional<int> ell(std::int64_t p, const RamVector& r, int m1, int m2) {
  if (r.r1 < 0 || r.r2 < 0) throw BadIndex("ramification vector must be componentwise >= 0");
  if (m1 < 0 || m2 < 0 || (m1 == 0 && m2 == 0)) throw BadIndex("index must lie in Z^2_{>=0} \\ {0}");
  if (std::gcd(m1, m2) % p == 0) throw BadIndex("index must not be divisible by p");
  if (m2 == 0 && r.r2 > 0) return std::nullopt;
  std::int64_t a1 = m1, a2 = m2;
  for (int l = 0;; ++l, a1 *= p, a2 *= p)
    if (!ram_less(a1, a2, r)) return l;
}

struct IndexBox {
  int m1_max = 8;
  int m2_max = 8;
};

/// Indices (m1, m2) of the box with p not dividing gcd, in T-first order.
inline std::vector<std::pair<int, int>> ram_indices(std::int64_t p, const IndexBox& box) {
  std::vector<std::pair<int, int>> out;
  for (int m2 = 0; m2 <= box.m2_max; ++m2)
    for (int m1 = 0; m1 <= box.m1_max; ++m1)
      if ((m1 != 0 || m2 != 0) && std::gcd(m1, m2) % p != 0) out.emplace_back(m1, m2);
  return out;
}

struct RamProfileEntry {
  int m1 = 0;
  int m2 = 0;
  int exponent = 0;  // min(l, m)
  friend bool operator==(const RamProfileEntry&, const RamProfileEntry&) = default;
};
using RamProfile = std::vector<RamProfileEntry>;

inline RamProfile ram_profile(std::int64_t p, const RamVector& r, int m, const IndexBox& box) {
  RamProfile out;
  for (const auto& [m1, m2] : ram_indices(p, box)) {
    const auto l = ell(p, r, m1, m2);
    out.push_back({m1, m2, l ? std::min(*l, m) : m});
  }
  return out;
}

/// Digit k of every generator exponent must vanish whenever (p^k i, p^k j) < r. {S,T}^e is ignored.
inline bool u_membership(std::int64_t p, int m, const CanonicalK2& y, const RamVector& r) {
  for (const auto& g : y.gens) {
    std::int64_t n = mod_floor(g.n, int_pow(p, m));
    std::int64_t a1 = g.i, a2 = g.j;
    for (int k = 0; k < m; ++k, n /= p, a1 *= p, a2 *= p)
      if (n % p != 0 && ram_less(a1, a2, r)) return false;
  }
  return true;
}

struct PhiEntry {
  int m1 = 0;
  int m2 = 0;
  ZqElem value;
  friend bool operator==(const PhiEntry&, const PhiEntry&) = default;
};

/// Component at (m1, m2): sum over generators with (m1, m2) = q (i, j) of n * eps * [-a]^q,
/// eps = j for S-type and -i for T-type.
inline std::vector<PhiEntry> phi_map(const ZqRing& zq, const CanonicalK2& y, const IndexBox& box) {
  const FFRing& k = zq.field();
  std::vector<PhiEntry> out;
  for (const auto& [m1, m2] : ram_indices(zq.prime(), box)) {
    ZqElem acc = zq.zero();
    for (const auto& g : y.gens) {
      const auto q = ratio_match(m1, m2, g.i, g.j);
      if (!q) continue;
      const std::int64_t eps = g.kind == GenKind::S ? g.j : -static_cast<std::int64_t>(g.i);
      const ZqElem term = zq.pow(zq.teichmuller(k.neg(g.a)), static_cast<std::uint64_t>(*q));
      acc = zq.add(acc, zq.scale(term, mod_floor(eps * mod_floor(g.n, zq.modulus()), zq.modulus())));
    }
    out.push_back({m1, m2, acc});
  }
  return out;
}

/// True when every component of phi lies in p^{min(l, m)} Z_q.
inline bool phi_in_profile(const ZqRing& zq, int m, const std::vector<PhiEntry>& phi, const RamVector& r) {
  for (const auto& e : phi) {
    const auto l = ell(zq.prime(), r, e.m1, e.m2);
    const int need = l ? std::min(*l, m) : m;
    if (zq.valuation(zq.truncate(e.value, m)) < need) return false;
  }
  return true;
}

}  // namespace asw
