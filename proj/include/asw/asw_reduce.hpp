#pragma once

// Canonical representatives of W_m(K)/wp W_m(K) for K = k((T))((S)).
//
// A class is written c*beta + sum c_ij [S^-i T^-j] with c in Z/p^m, c_ij in W_m(k), and keys
// (i, j) in the negative cone of K (i >= 1, or i = 0 and j >= 1) with p not dividing gcd(i, j).

#include <cstdint>
#include <map>
#include <numeric>
#include <optional>
#include <utility>
#include <vector>

#include "asw/errors.hpp"
#include "asw/ring.hpp"
#include "asw/ring_tower.hpp"
#include "asw/series.hpp"
#include "asw/witt.hpp"

namespace asw {

using KSeries = Series2<FFElem>;
using KRing = SeriesRing<FFRing>;
using ZSeries = Series2<ZqElem>;
using ZRing = SeriesRing<ZqRing>;
using CanonKey = std::pair<int, int>;

inline bool is_canonical_key(int i, int j, std::int64_t p) {
  if (!(i >= 1 || (i == 0 && j >= 1))) return false;
  return std::gcd(i, j) % p != 0;
}

struct CanonicalASW {
  std::int64_t c = 0;                  // coefficient of beta, mod p^m
  std::map<CanonKey, ZqElem> terms;    // (i, j) -> coefficient of S^-i T^-j, mod p^m
  friend bool operator==(const CanonicalASW&, const CanonicalASW&) = default;
  bool is_zero() const { return c == 0 && terms.empty(); }
};

/// True when f is known on the whole window (upper edges included).
inline bool covers(const KSeries& f, const PrecisionWindow& w) {
  if (f.sprec <= w.s_max) return false;
  for (const auto& [s, comp] : f.comps) {
    if (s > w.s_max) break;
    if (comp.prec <= w.t_max) return false;
  }
  return true;
}

inline ZSeries lift_canonical(const CanonicalASW& xc, const ZqRing& zq) {
  ZSeries r;
  const Beta beta = make_beta(zq);
  const ZqElem cb = zq.scale(beta.beta, xc.c);
  if (!zq.is_zero(cb)) r.comps[0].terms.emplace(0, cb);
  for (const auto& [key, coef] : xc.terms) {
    const ZqElem v = zq.embed(coef);
    if (!zq.is_zero(v)) r.comps[-key.first].terms.emplace(-key.second, v);
  }
  return r;
}

/// Coefficientwise Teichmüller lift of each coordinate.
inline WittVec<ZSeries> hat_lift(const WittVec<KSeries>& x, const ZqRing& zq) {
  WittVec<ZSeries> out;
  for (const auto& f : x.coords)
    out.coords.push_back(map_coefficients(zq, f, [&](const FFElem& a) { return zq.teichmuller(a); }));
  return out;
}

class AswReducer {
 public:
  struct Result {
    CanonicalASW canonical;  // terms with S^-i T^-j inside the window
    CanonicalASW outside;    // further known terms; needed only for the identity with the witness
    WittVec<KSeries> witness;
    PrecisionWindow working;  // cap of the series ring the witness lives in
  };

  AswReducer(const FieldParams& params, int m, PrecisionWindow window = {})
      : k_(params), zq_(params, m), beta_(make_beta(zq_)), m_(m), window_(window) {
    if (m < 1) throw InvalidArgument("Witt length must be >= 1");
  }

  const FFRing& field() const { return k_; }
  const ZqRing& zq() const { return zq_; }
  const Beta& beta() const { return beta_; }
  int length() const { return m_; }
  const PrecisionWindow& window() const { return window_; }
  std::int64_t modulus() const { return zq_.modulus(); }

  KRing series_ring(std::optional<PrecisionWindow> cap = std::nullopt) const { return KRing(k_, cap ? cap : window_); }
  WittRing<KRing> witt_ring(std::optional<PrecisionWindow> cap = std::nullopt) const {
    return WittRing<KRing>(series_ring(cap), m_);
  }

  Result reduce(const WittVec<KSeries>& x, bool want_witness = true) const {
    if (x.length() != m_) throw InvalidArgument("reduce: Witt vector has the wrong length");
    for (const auto& f : x.coords)
      f.for_each_term([&](int s, int t, const FFElem&) {
        if (!window_.contains(s, t))
          throw WindowTooSmall("reduce: input term S^" + std::to_string(s) + "*T^" + std::to_string(t) +
                               " lies outside " + window_.str());
      });
    PrecisionWindow cap = window_;
    for (int attempt = 0; attempt < 8; ++attempt, cap = cap.widened()) {
      const KRing F(k_, cap);
      auto part = reduce_level(F, x, m_, want_witness);
      if (!part) continue;
      Result r;
      for (auto& [key, coef] : part->canonical.terms)
        (window_.contains(-key.first, -key.second) ? r.canonical : r.outside).terms.emplace(key, coef);
      r.canonical.c = part->canonical.c;
      r.witness = std::move(part->witness);
      r.working = cap;
      if (want_witness && !verify(x, r)) continue;
      return r;
    }
    throw WindowTooSmall("reduce: precision loss exceeds " + window_.str());
  }

  /// c*beta (+) sum c_ij (x) [S^-i T^-j] as a Witt vector of length `len`.
  WittVec<KSeries> embed(const CanonicalASW& xc, const KRing& F, int len) const {
    const WittRing<KRing> W(F, len);
    const ZqElem cb = zq_.scale(beta_.beta, xc.c);
    WittVec<KSeries> acc = W.zero();
    const auto cd = zq_.teich_digits(cb, len);
    for (int h = 0; h < len; ++h) acc.coords[h] = F.constant(cd[h]);
    const std::int64_t p = k_.prime();
    for (const auto& [key, coef] : xc.terms) {
      const auto digits = zq_.teich_digits(coef, len);
      WittVec<KSeries> v = W.zero();
      std::int64_t ph = 1;
      for (int h = 0; h < len; ++h, ph *= p)
        v.coords[h] = F.truncate(F.monomial(digits[h], static_cast<int>(-key.first * ph), static_cast<int>(-key.second * ph)));
      acc = W.add(acc, v);
    }
    return acc;
  }
  WittVec<KSeries> embed(const CanonicalASW& xc) const { return embed(xc, series_ring(), m_); }

  /// x (-) embed(canonical + outside) == wp(witness), known on the whole window.
  bool verify(const WittVec<KSeries>& x, const Result& r) const {
    const KRing F(k_, r.working);
    const WittRing<KRing> W(F, m_);
    const auto lhs = W.sub(x, embed(add(r.canonical, r.outside), F, m_));
    const auto rhs = wp(W, r.witness);
    for (int h = 0; h < m_; ++h) {
      const auto diff = F.sub(lhs.coords[h], rhs.coords[h]);
      if (!diff.vanishes() || !covers(diff, window_)) return false;
    }
    return true;
  }

  CanonicalASW add(const CanonicalASW& a, const CanonicalASW& b) const {
    CanonicalASW r;
    r.c = mod_floor(a.c + b.c, zq_.modulus());
    r.terms = a.terms;
    for (const auto& [key, coef] : b.terms) {
      auto [it, inserted] = r.terms.try_emplace(key, coef);
      if (inserted) continue;
      it->second = zq_.add(it->second, coef);
      if (zq_.is_zero(it->second)) r.terms.erase(it);
    }
    return r;
  }
  CanonicalASW neg(const CanonicalASW& a) const {
    CanonicalASW r;
    r.c = mod_floor(-a.c, zq_.modulus());
    for (const auto& [key, coef] : a.terms) r.terms.emplace(key, zq_.neg(coef));
    return r;
  }

 private:
  struct Partial {
    CanonicalASW canonical;  // modulo p^len
    WittVec<KSeries> witness;
  };

  struct Level0 {
    std::int64_t c = 0;
    std::map<CanonKey, FFElem> terms;
    KSeries witness;
  };

  // Returns nullopt when x0 is not known well enough to pin down the canonical part on the window.
  std::optional<Level0> reduce_first(const KRing& F, const KSeries& x0) const {
    const std::int64_t p = k_.prime();
    Level0 out;
    FFElem constant = k_.zero();

    // Positive part P = wp(-(P + F(P) + F^2(P) + ...)); Frobenius carries the precision of x0.
    KSeries pos;
    pos.sprec = x0.sprec;
    for (const auto& [s, comp] : x0.comps) {
      if (s < 0) continue;
      Laurent1<FFElem> line;
      line.prec = comp.prec;
      for (const auto& [t, c] : comp.terms)
        if (is_positive_exponent(s, t)) line.terms.emplace(t, c);
      if (!line.exact_zero()) pos.comps.emplace(s, std::move(line));
    }
    KSeries w = F.zero();
    for (KSeries cur = F.truncate(pos); !cur.exact_zero();) {
      w = F.sub(w, cur);
      if (cur.term_count() == 0) break;
      cur = F.frobenius(cur);
    }

    for (const auto& [s, comp] : x0.comps) {
      if (s > 0) break;
      // Unknown terms S^s T^t (t >= prec) descend to S^{s/p^e} T^{t/p^e}.
      if (s < 0 && comp.prec < kExact) {
        std::int64_t pe = p;
        for (; s % pe == 0; pe *= p) {
          const int bound = static_cast<int>((comp.prec + mod_floor(-comp.prec, pe)) / pe);
          if (bound <= window_.t_max) return std::nullopt;
          KSeries unknown;
          unknown.comps[static_cast<int>(s / pe)].prec = bound;
          w = F.add(w, unknown);
        }
      }
      for (const auto& [t, c] : comp.terms) {
        if (s == 0 && t >= 0) {
          if (t == 0) constant = c;
          continue;
        }
        // c*m^{p^e} = c' * m + wp(sum of roots).
        FFElem cr = c;
        int sr = s, tr = t;
        while (sr % p == 0 && tr % p == 0) {
          cr = k_.pth_root(cr);
          sr /= static_cast<int>(p);
          tr /= static_cast<int>(p);
          w = F.add(w, F.monomial(cr, sr, tr));
        }
        auto [it, inserted] = out.terms.try_emplace(CanonKey{-sr, -tr}, cr);
        if (!inserted) {
          it->second = k_.add(it->second, cr);
          if (k_.is_zero(it->second)) out.terms.erase(it);
        }
      }
    }
    out.c = mod_floor(k_.trace_int(constant) * inv_mod(k_.trace_int(beta_.alpha), p), p);
    const auto root = k_.solve_artin_schreier(k_.sub(constant, k_.scale(beta_.alpha, out.c)));
    if (!root) throw Error("reduce: trace-zero constant has no Artin-Schreier root");
    w = F.add(w, F.constant(*root));
    out.witness = std::move(w);
    return out;
  }

  std::optional<Partial> reduce_level(const KRing& F, const WittVec<KSeries>& x, int len, bool want_witness) const {
    if (!covers(x.coords[0], window_)) return std::nullopt;
    const std::int64_t p = k_.prime();
    auto level0 = reduce_first(F, x.coords[0]);
    if (!level0) return std::nullopt;
    Level0& first = *level0;
    Partial out;
    out.canonical.c = first.c;
    for (const auto& [key, coef] : first.terms) out.canonical.terms.emplace(key, zq_.truncate(zq_.teichmuller(coef), len));
    const WittRing<KRing> W(F, len);
    if (len == 1) {
      if (want_witness) out.witness = WittVec<KSeries>{{first.witness}};
      return out;
    }
    const WittVec<KSeries> e0 = embed(out.canonical, F, len);
    const WittVec<KSeries> w0 = W.teichmuller(first.witness);
    const auto z = W.sub(W.sub(x, e0), wp(W, w0));
    if (!z.coords[0].vanishes()) throw Error("reduce: first coordinate did not cancel");
    const WittVec<KSeries> rest{W.tail(z)};
    auto sub = reduce_level(F, rest, len - 1, want_witness);
    if (!sub) return std::nullopt;

    const std::int64_t pl = int_pow(p, len);
    out.canonical.c = mod_floor(first.c + p * sub->canonical.c, pl);
    for (const auto& [key, coef] : sub->canonical.terms) {
      const ZqElem lifted = zq_.scale(coef, p);
      auto [it, inserted] = out.canonical.terms.try_emplace(key, zq_.truncate(lifted, len));
      if (!inserted) it->second = zq_.truncate(zq_.add(it->second, lifted), len);
      if (zq_.is_zero(it->second)) out.canonical.terms.erase(it);
    }
    if (want_witness) {
      // x = e0 (+) wp[w0] (+) V(x'), and V(y) = p*y (-) wp(V y).
      const WittRing<KRing> W1(F, len - 1);
      const auto inner = W1.sub(sub->witness, embed(sub->canonical, F, len - 1));
      out.witness = W.add(w0, W.verschiebung(inner));
    }
    return out;
  }

  FFRing k_;
  ZqRing zq_;
  Beta beta_;
  int m_;
  PrecisionWindow window_;
};

}  // namespace asw
