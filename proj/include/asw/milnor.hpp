#pragma once

// Canonical products of topological Milnor K_2 symbols modulo p^m.
//
//   y = {S,T}^e * prod {1 + a S^i T^j, S}^n  (S-type: p !| j)
//               * prod {1 + a S^i T^j, T}^n  (T-type: p !| i, p | j)
//
// Prime-to-p content (constants, {-1, .}) is discarded.

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include "asw/asw_reduce.hpp"
#include "asw/errors.hpp"
#include "asw/ring.hpp"
#include "asw/ring_tower.hpp"
#include "asw/series.hpp"

namespace asw {

enum class GenKind { S, T };

struct K2Generator {
  GenKind kind = GenKind::S;
  int i = 0;
  int j = 0;
  FFElem a;
  std::int64_t n = 0;
  friend bool operator==(const K2Generator&, const K2Generator&) = default;
};

inline bool generator_invariant(GenKind kind, int i, int j, std::int64_t p) {
  if (kind == GenKind::S) return j % p != 0 && (i >= 1 || (i == 0 && j >= 1));
  return i >= 1 && i % p != 0 && j % p == 0;
}

struct CanonicalK2 {
  std::int64_t e = 0;
  std::vector<K2Generator> gens;  // sorted by (kind, i, j, a), exponents nonzero
  friend bool operator==(const CanonicalK2&, const CanonicalK2&) = default;
  bool is_trivial() const { return e == 0 && gens.empty(); }
};

struct UnitFactor {
  int i = 0;
  int j = 0;
  FFElem a;
  friend bool operator==(const UnitFactor&, const UnitFactor&) = default;
};

/// Symbol arithmetic modulo p^m.
class K2Group {
 public:
  K2Group(FFRing k, int m) : k_(std::move(k)), m_(m), pm_(int_pow(k_.prime(), m)) {
    if (m < 1) throw InvalidArgument("Witt length must be >= 1");
  }

  const FFRing& field() const { return k_; }
  int length() const { return m_; }
  std::int64_t modulus() const { return pm_; }

  CanonicalK2 st(std::int64_t e) const { return CanonicalK2{mod_floor(e, pm_), {}}; }

  /// Brings gens into sorted, merged form. Each generator must already satisfy the invariant.
  CanonicalK2 canonicalize(CanonicalK2 y) const {
    std::map<std::tuple<int, int, int, std::int64_t>, K2Generator> merged;
    for (const auto& g : y.gens) {
      if (!generator_invariant(g.kind, g.i, g.j, k_.prime()))
        throw InvalidArgument("generator (" + std::to_string(g.i) + "," + std::to_string(g.j) +
                              ") violates the canonical index conditions");
      if (k_.is_zero(g.a)) throw InvalidArgument("generator coefficient must be nonzero");
      const auto key = std::make_tuple(static_cast<int>(g.kind), g.i, g.j, k_.index_of(g.a));
      auto [it, inserted] = merged.try_emplace(key, g);
      if (!inserted) it->second.n += g.n;
    }
    CanonicalK2 out{mod_floor(y.e, pm_), {}};
    for (auto& [key, g] : merged) {
      g.n = mod_floor(g.n, pm_);
      if (g.n != 0) out.gens.push_back(g);
    }
    return out;
  }

  CanonicalK2 merge(const CanonicalK2& a, const CanonicalK2& b) const {
    CanonicalK2 r{a.e + b.e, a.gens};
    r.gens.insert(r.gens.end(), b.gens.begin(), b.gens.end());
    return canonicalize(std::move(r));
  }

  CanonicalK2 power(const CanonicalK2& y, std::int64_t k) const {
    const std::int64_t km = mod_floor(k, pm_);
    CanonicalK2 r{y.e * km, y.gens};
    for (auto& g : r.gens) g.n = mod_floor(g.n, pm_) * km;
    return canonicalize(std::move(r));
  }

  /// {1 + a S^i T^j, S or T}^n rewritten into canonical generators; (i, j) in the positive cone.
  CanonicalK2 unit_symbol(GenKind second, int i, int j, FFElem a, std::int64_t n) const {
    const std::int64_t p = k_.prime();
    if (!is_positive_exponent(i, j)) throw NotPrincipalUnit("unit factor exponent is not in the principal cone");
    n = mod_floor(n, pm_);
    // (1 + a S^{pi} T^{pj}) = (1 + a^{1/p} S^i T^j)^p.
    while (n != 0 && i % p == 0 && j % p == 0) {
      a = k_.pth_root(a);
      i /= static_cast<int>(p);
      j /= static_cast<int>(p);
      n = mod_floor(n * p, pm_);
    }
    CanonicalK2 out;
    if (n == 0) return out;
    // {u,S}^i {u,T}^j = 1 for u = 1 + a S^i T^j.
    if (second == GenKind::S) {
      if (j % p != 0)
        out.gens.push_back({GenKind::S, i, j, a, n});
      else
        out.gens.push_back({GenKind::T, i, j, a, mulmod(n, mod_floor(-j, pm_) * inv_mod(mod_floor(i, pm_), pm_))});
    } else {
      if (j % p == 0)
        out.gens.push_back({GenKind::T, i, j, a, n});
      else if (i != 0)
        out.gens.push_back({GenKind::S, i, j, a, mulmod(n, mod_floor(-i, pm_) * inv_mod(mod_floor(j, pm_), pm_))});
    }
    return canonicalize(std::move(out));
  }

 private:
  std::int64_t mulmod(std::int64_t a, std::int64_t b) const { return mod_floor(mod_floor(a, pm_) * mod_floor(b, pm_), pm_); }

  FFRing k_;
  int m_;
  std::int64_t pm_;
};

namespace detail {

struct Monomial {
  FFElem c;
  int s = 0;
  int t = 0;
};

inline Monomial leading_monomial(const KSeries& f) {
  if (f.comps.empty()) throw InvalidArgument("zero series has no leading monomial");
  const auto& [s, line] = *f.comps.begin();
  if (line.terms.empty()) throw InvalidArgument("leading monomial is not known");
  return Monomial{line.terms.begin()->second, s, line.terms.begin()->first};
}

inline bool is_monomial(const KSeries& f) { return f.exact() && f.term_count() == 1; }

inline bool known_on(const KSeries& f, const PrecisionWindow& w) { return covers(f, w); }

}  // namespace detail

/// Greedy factorization u = prod (1 + a S^i T^j) in increasing S-first order of (i, j).
inline std::vector<UnitFactor> factor_unit(const FFRing& k, const KSeries& u, const PrecisionWindow& window) {
  bool principal = u.known(0, 0) && u.coeff(0, 0) && k.equal(*u.coeff(0, 0), k.one());
  u.for_each_term([&](int s, int t, const FFElem&) {
    if (!(s == 0 && t == 0) && !is_positive_exponent(s, t)) principal = false;
  });
  if (!principal) throw NotPrincipalUnit("series is not 1 + (terms of positive order)");
  PrecisionWindow cap = window;
  for (int attempt = 0; attempt < 4; ++attempt, cap = cap.widened()) {
    const KRing F(k, cap);
    KSeries cur = F.truncate(u);
    std::vector<UnitFactor> out;
    while (true) {
      std::optional<UnitFactor> next;
      for (const auto& [s, line] : cur.comps) {
        for (const auto& [t, c] : line.terms)
          if (!(s == 0 && t == 0)) {
            next = UnitFactor{s, t, c};
            break;
          }
        if (next) break;
      }
      if (!next) break;
      out.push_back(*next);
      const KSeries factor = F.add(F.one(), F.monomial(next->a, next->i, next->j));
      cur = F.mul(cur, F.inv_unit(factor));
    }
    if (detail::known_on(cur, window)) return out;
  }
  throw WindowTooSmall("factor_unit: precision loss exceeds " + window.str());
}

/// Class of {f, g} for f, g nonzero Laurent polynomials, at least one a monomial.
inline CanonicalK2 normalize_symbol(const K2Group& grp, const KSeries& f, const KSeries& g, const PrecisionWindow& window) {
  if (f.vanishes() || g.vanishes()) throw InvalidArgument("symbol entries must be nonzero");
  const FFRing& k = grp.field();
  const KRing F(k);
  const bool fm = detail::is_monomial(f);
  const bool gm = detail::is_monomial(g);
  if (!fm && !gm) throw UnsupportedPair("symbols of two non-monomial units are not supported");
  const auto lf = detail::leading_monomial(f);
  const auto lg = detail::leading_monomial(g);
  CanonicalK2 out = grp.st(static_cast<std::int64_t>(lf.s) * lg.t - static_cast<std::int64_t>(lg.s) * lf.t);

  // {u, c S^a T^b} = {u,S}^a {u,T}^b.
  auto unit_part = [&](const KSeries& h, const detail::Monomial& lead, int a, int b) {
    const KSeries unit = F.mul(h, F.monomial(k.inv(lead.c), -lead.s, -lead.t));
    for (const auto& fac : factor_unit(k, unit, window)) {
      if (a != 0) out = grp.merge(out, grp.unit_symbol(GenKind::S, fac.i, fac.j, fac.a, a));
      if (b != 0) out = grp.merge(out, grp.unit_symbol(GenKind::T, fac.i, fac.j, fac.a, b));
    }
  };
  if (!fm) unit_part(f, lf, lg.s, lg.t);
  if (!gm) unit_part(g, lg, -lf.s, -lf.t);
  return out;
}

/// n dlog(1 - [-a] S^i T^j) ^ dlog(S or T) summed over generators, plus e dlog S ^ dlog T.
inline TwoForm<ZqElem> lift_and_dlog(const CanonicalK2& y, const ZqRing& zq, const PrecisionWindow& cap) {
  const ZRing R(zq, cap);
  ZSeries acc = R.monomial(zq.from_int(y.e), -1, -1);
  for (const auto& g : y.gens) {
    // 1 - [-a] S^i T^j; for p = 2 this differs from 1 + [a] S^i T^j.
    const ZqElem A = zq.neg(zq.teichmuller(zq.field().neg(g.a)));
    const ZSeries u = R.add(R.one(), R.monomial(A, g.i, g.j));
    const std::int64_t factor = g.kind == GenKind::S ? -static_cast<std::int64_t>(g.j) : static_cast<std::int64_t>(g.i);
    const ZqElem coef = zq.scale(A, mod_floor(factor * mod_floor(g.n, zq.modulus()), zq.modulus()));
    acc = R.add(acc, R.mul(R.monomial(coef, g.i - 1, g.j - 1), R.inv_unit(u)));
  }
  return TwoForm<ZqElem>{acc};
}

}  // namespace asw
