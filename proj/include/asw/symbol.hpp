#pragma once

// The pairing W_m(K) x K_2(K) -> Z/p^m, three ways:
//   theorem1:    Tr Res(x~ dlog y~) on canonical representatives
//   parshin:     ghost components of the coefficientwise Teichmüller lift, ghost inversion, trace
//   closed_form: direct sum over matching (x-term, generator) pairs

#include <algorithm>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "asw/asw_reduce.hpp"
#include "asw/errors.hpp"
#include "asw/milnor.hpp"
#include "asw/ring_tower.hpp"
#include "asw/series.hpp"
#include "asw/witt.hpp"

namespace asw {

struct SymbolValue {
  std::int64_t v = 0;
  friend bool operator==(const SymbolValue&, const SymbolValue&) = default;
};

/// q >= 1 with (m, n) = q (i, j), if any.
inline std::optional<int> ratio_match(int m, int n, int i, int j) {
  if (i == 0 && j == 0) return std::nullopt;
  if (i != 0) {
    if (m % i != 0) return std::nullopt;
    const int q = m / i;
    if (q < 1 || n != q * j) return std::nullopt;
    return q;
  }
  if (m != 0 || n % j != 0) return std::nullopt;
  const int q = n / j;
  if (q < 1) return std::nullopt;
  return q;
}

namespace detail {

// Smallest symmetric cap that reaches the S^-1 T^-1 coefficient of f * w for this f.
inline PrecisionWindow residue_cap(const ZSeries& f) {
  int radius = 8;
  f.for_each_term([&](int s, int t, const ZqElem&) { radius = std::max({radius, std::abs(s) + 1, std::abs(t) + 1}); });
  return PrecisionWindow::square(radius);
}

inline ZqElem residue_against(const ZqRing& zq, const ZSeries& f, const CanonicalK2& y) {
  PrecisionWindow cap = residue_cap(f);
  for (int attempt = 0; attempt < 5; ++attempt, cap = cap.widened()) {
    try {
      const ZRing R(zq, cap);
      return residue_of_product(R, f, lift_and_dlog(y, zq, cap));
    } catch (const WindowTooSmall&) {
    }
  }
  throw WindowTooSmall("residue: no cap up to " + cap.str() + " determines the residue");
}

}  // namespace detail

class Pairing {
 public:
  Pairing(const FieldParams& params, int m, PrecisionWindow window = {})
      : params_(params), m_(m), window_(window), reducer_(params, m, window), group_(FFRing(params), m) {}

  const FieldParams& params() const { return params_; }
  int length() const { return m_; }
  const PrecisionWindow& window() const { return window_; }
  const AswReducer& reducer() const { return reducer_; }
  const K2Group& group() const { return group_; }
  std::int64_t modulus() const { return reducer_.modulus(); }

  SymbolValue theorem1(const CanonicalASW& x, const CanonicalK2& y) const {
    const ZqRing& zq = reducer_.zq();
    const ZqElem r = detail::residue_against(zq, lift_canonical(x, zq), y);
    return {mod_floor(zq.trace(r), modulus())};
  }

  SymbolValue parshin(const WittVec<KSeries>& x, const CanonicalK2& y) const {
    if (x.length() != m_) throw InvalidArgument("parshin: Witt vector has the wrong length");
    std::optional<DivisibilityError> last;
    for (int n = m_ + 1; n <= 2 * m_ + 2; n += 2) {
      try {
        return parshin_at(x, y, n);
      } catch (const DivisibilityError& e) {
        last = e;
      }
    }
    throw *last;
  }

  SymbolValue closed_form(const CanonicalASW& x, const CanonicalK2& y) const {
    const ZqRing& zq = reducer_.zq();
    const FFRing& k = reducer_.field();
    const std::int64_t pm = modulus();
    std::int64_t acc = mod_floor(y.e, pm) * mod_floor(zq.trace(zq.scale(reducer_.beta().beta, x.c)), pm) % pm;
    for (const auto& g : y.gens) {
      const ZqElem minus_a = zq.teichmuller(k.neg(g.a));
      const std::int64_t eps = g.kind == GenKind::S ? g.j : -static_cast<std::int64_t>(g.i);
      for (const auto& [key, c] : x.terms) {
        const auto q = ratio_match(key.first, key.second, g.i, g.j);
        if (!q) continue;
        const std::int64_t tr = zq.trace(zq.mul(c, zq.pow(minus_a, static_cast<std::uint64_t>(*q))));
        acc = mod_floor(acc + mod_floor(eps * mod_floor(g.n, pm), pm) * mod_floor(tr, pm), pm);
      }
    }
    return {acc};
  }

  /// The pairing of an arbitrary Witt vector by reduction followed by `closed_form`.
  SymbolValue via_reduction(const WittVec<KSeries>& x, const CanonicalK2& y) const {
    return closed_form(reducer_.reduce(x, false).canonical, y);
  }

 private:
  SymbolValue parshin_at(const WittVec<KSeries>& x, const CanonicalK2& y, int n) const {
    const ZqRing zq(params_, n);
    const ZRing exact(zq);
    const auto xh = hat_lift(x, zq);
    const auto gh = ghost_map(exact, WittVec<ZSeries>{xh.coords});
    GhostVec<ZqElem> res;
    for (const auto& g : gh.comps) res.comps.push_back(detail::residue_against(zq, g, y));
    const auto w = ghost_inverse(zq, res);
    std::vector<FFElem> digits;
    for (const auto& c : w.coords) digits.push_back(zq.reduce(c));
    const ZqRing& zm = reducer_.zq();
    return {mod_floor(zm.trace(zm.from_teich_digits(digits)), modulus())};
  }

  FieldParams params_;
  int m_;
  PrecisionWindow window_;
  AswReducer reducer_;
  K2Group group_;
};

/// Tr Res(x du/u) for x, u in one variable (S when var == GenKind::S, else T); length 1.
inline SymbolValue schmid_one_dim(const FFRing& k, const KSeries& x, const KSeries& u, GenKind var,
                                  const PrecisionWindow& cap = {}) {
  const KRing F(k, cap);
  const bool in_s = var == GenKind::S;
  auto one_variable = [&](const KSeries& f) {
    bool ok = true;
    f.for_each_term([&](int s, int t, const FFElem&) { ok = ok && (in_s ? t == 0 : s == 0); });
    return ok;
  };
  if (!one_variable(x) || !one_variable(u)) throw InvalidArgument("schmid_one_dim: inputs must involve one variable");
  const KSeries du = in_s ? F.derivative_s(u) : F.derivative_t(u);
  const KSeries prod = F.mul(x, F.mul(du, F.inv_unit(u)));
  const int s = in_s ? -1 : 0;
  const int t = in_s ? 0 : -1;
  if (!prod.known(s, t)) throw WindowTooSmall("schmid_one_dim: residue outside the known region");
  const FFElem* c = prod.coeff(s, t);
  return {c ? k.trace_int(*c) : 0};
}

}  // namespace asw
