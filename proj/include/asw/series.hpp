#pragma once

// Bivariate Laurent series over a coefficient ring, truncated with tracked precision.
//
// Elements live in C((T))((S)): a series is sum_s f_s(T) S^s where every f_s is a Laurent
// series in T. A value records the S-precision `sprec` (components s >= sprec unknown) and,
// per component, the T-precision `prec` (coefficients t >= prec unknown). kExact marks an
// exact bound. All arithmetic propagates these bounds, so a coefficient that is reported
// is always correct.

#include <algorithm>
#include <cstdint>
#include <limits>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "asw/errors.hpp"
#include "asw/ring.hpp"

namespace asw {

inline constexpr int kExact = std::numeric_limits<int>::max() / 4;

inline int prec_add(int a, int b) {
  if (a >= kExact || b >= kExact) return kExact;
  return a + b;
}

/// Exponent pair ordered as on Z^2 for k((S))((T)): the T-exponent decides first.
struct ExpVec {
  int s = 0;
  int t = 0;
  friend bool operator==(const ExpVec&, const ExpVec&) = default;
  friend bool operator<(const ExpVec& a, const ExpVec& b) {
    if (a.t != b.t) return a.t < b.t;
    return a.s < b.s;
  }
  friend ExpVec operator+(const ExpVec& a, const ExpVec& b) { return {a.s + b.s, a.t + b.t}; }
};

/// Order of the field C((T))((S)) in which the series arithmetic converges: S first.
inline bool s_first_less(int s1, int t1, int s2, int t2) { return s1 != s2 ? s1 < s2 : t1 < t2; }

/// Monomials S^s T^t with s >= 1, or s = 0 and t >= 1.
inline bool is_positive_exponent(int s, int t) { return s >= 1 || (s == 0 && t >= 1); }

/// Inclusive exponent bounds. Truncation keeps s <= s_max and t <= t_max; the lower bounds
/// only describe the region a caller wants to be known.
struct PrecisionWindow {
  int s_min = -64;
  int s_max = 64;
  int t_min = -64;
  int t_max = 64;

  static PrecisionWindow square(int radius) { return {-radius, radius, -radius, radius}; }
  bool contains(int s, int t) const { return s >= s_min && s <= s_max && t >= t_min && t <= t_max; }
  PrecisionWindow widened() const { return {2 * s_min, 2 * s_max, 2 * t_min, 2 * t_max}; }
  friend bool operator==(const PrecisionWindow&, const PrecisionWindow&) = default;
  std::string str() const {
    return "[" + std::to_string(s_min) + "," + std::to_string(s_max) + "]x[" + std::to_string(t_min) + "," +
           std::to_string(t_max) + "]";
  }
};

template <class V>
struct Laurent1 {
  std::map<int, V> terms;
  int prec = kExact;

  bool exact_zero() const { return terms.empty() && prec >= kExact; }
  /// Lower bound for the valuation.
  int valuation() const { return terms.empty() ? prec : std::min(terms.begin()->first, prec); }
  friend bool operator==(const Laurent1&, const Laurent1&) = default;
};

template <class V>
struct Series2 {
  std::map<int, Laurent1<V>> comps;
  int sprec = kExact;

  bool exact() const {
    if (sprec < kExact) return false;
    for (const auto& [s, c] : comps)
      if (c.prec < kExact) return false;
    return true;
  }
  bool exact_zero() const { return comps.empty() && sprec >= kExact; }
  /// True when no known coefficient is nonzero.
  bool vanishes() const {
    for (const auto& [s, c] : comps)
      if (!c.terms.empty()) return false;
    return true;
  }
  bool known(int s, int t) const {
    if (s >= sprec) return false;
    auto it = comps.find(s);
    return it == comps.end() || t < it->second.prec;
  }
  const V* coeff(int s, int t) const {
    auto it = comps.find(s);
    if (it == comps.end()) return nullptr;
    auto jt = it->second.terms.find(t);
    return jt == it->second.terms.end() ? nullptr : &jt->second;
  }
  /// T-precision of component s (kExact when exact, INT_MIN-like when s >= sprec).
  int tprec(int s) const {
    if (s >= sprec) return -kExact;
    auto it = comps.find(s);
    return it == comps.end() ? kExact : it->second.prec;
  }
  /// Lower bound for the S-valuation.
  int s_valuation() const { return comps.empty() ? sprec : std::min(comps.begin()->first, sprec); }
  std::size_t term_count() const {
    std::size_t n = 0;
    for (const auto& [s, c] : comps) n += c.terms.size();
    return n;
  }
  template <class F>
  void for_each_term(F&& f) const {
    for (const auto& [s, c] : comps)
      for (const auto& [t, v] : c.terms) f(s, t, v);
  }
  friend bool operator==(const Series2&, const Series2&) = default;
};

template <class V>
struct OneForm {
  Series2<V> ds;  // coefficient of dS
  Series2<V> dt;  // coefficient of dT
};

/// f dS ^ dT.
template <class V>
struct TwoForm {
  Series2<V> f;
};

/// Ring object for Series2 over the coefficient ring C, truncating results to an optional window.
template <CommutativeRing C>
class SeriesRing {
 public:
  using coeff_type = typename C::value_type;
  using value_type = Series2<coeff_type>;
  using line_type = Laurent1<coeff_type>;

  explicit SeriesRing(C coeffs, std::optional<PrecisionWindow> cap = std::nullopt)
      : coeffs_(std::move(coeffs)), cap_(cap) {}

  const C& coeffs() const { return coeffs_; }
  const std::optional<PrecisionWindow>& cap() const { return cap_; }
  SeriesRing with_cap(std::optional<PrecisionWindow> cap) const { return SeriesRing(coeffs_, cap); }

  std::int64_t characteristic() const { return coeffs_.characteristic(); }
  std::int64_t prime() const { return coeffs_.prime(); }

  value_type zero() const { return {}; }
  value_type one() const { return constant(coeffs_.one()); }
  value_type from_int(std::int64_t n) const { return constant(coeffs_.from_int(n)); }
  value_type constant(const coeff_type& c) const { return monomial(c, 0, 0); }
  value_type monomial(const coeff_type& c, int s, int t) const {
    value_type r;
    if (!coeffs_.is_zero(c)) r.comps[s].terms.emplace(t, c);
    return r;
  }
  value_type S() const { return monomial(coeffs_.one(), 1, 0); }
  value_type T() const { return monomial(coeffs_.one(), 0, 1); }

  value_type add(const value_type& a, const value_type& b) const { return combine(a, b, false); }
  value_type sub(const value_type& a, const value_type& b) const { return combine(a, b, true); }
  value_type neg(const value_type& a) const {
    value_type r = a;
    for (auto& [s, c] : r.comps)
      for (auto& [t, v] : c.terms) v = coeffs_.neg(v);
    return r;
  }
  value_type scale(const value_type& a, const coeff_type& c) const {
    value_type r;
    r.sprec = a.sprec;
    for (const auto& [s, comp] : a.comps) {
      line_type out;
      out.prec = comp.prec;
      for (const auto& [t, v] : comp.terms) {
        coeff_type w = coeffs_.mul(v, c);
        if (!coeffs_.is_zero(w)) out.terms.emplace(t, std::move(w));
      }
      if (!out.exact_zero()) r.comps.emplace(s, std::move(out));
    }
    return r;
  }
  /// Multiplication by the monomial S^ds T^dt.
  value_type shift(const value_type& a, int ds, int dt) const {
    value_type r;
    r.sprec = prec_add(a.sprec, ds);
    for (const auto& [s, comp] : a.comps) {
      line_type out;
      out.prec = prec_add(comp.prec, dt);
      for (const auto& [t, v] : comp.terms) out.terms.emplace(t + dt, v);
      r.comps.emplace(s + ds, std::move(out));
    }
    return truncate(std::move(r));
  }

  value_type mul(const value_type& a, const value_type& b) const {
    if (a.exact_zero() || b.exact_zero()) return {};
    const int va = a.s_valuation();
    const int vb = b.s_valuation();
    int sprec = std::min(prec_add(va, b.sprec), prec_add(vb, a.sprec));
    const int tcap = cap_ ? cap_->t_max + 1 : kExact;
    if (cap_) {
      const int limit = cap_->s_max + 1;
      const int top = (a.comps.empty() ? va : a.comps.rbegin()->first) + (b.comps.empty() ? vb : b.comps.rbegin()->first);
      if (sprec > limit && (sprec < kExact || top >= limit)) sprec = limit;
    }
    value_type r;
    r.sprec = sprec;
    for (const auto& [s1, c1] : a.comps) {
      if (s1 + vb >= sprec) break;
      for (const auto& [s2, c2] : b.comps) {
        const int s = s1 + s2;
        if (s >= sprec) break;
        line_type prod = mul_line(c1, c2, tcap);
        auto it = r.comps.find(s);
        if (it == r.comps.end())
          r.comps.emplace(s, std::move(prod));
        else
          it->second = add_line(it->second, prod, false);
      }
    }
    drop_exact_zero(r);
    return r;
  }

  value_type pow(const value_type& a, std::uint64_t e) const { return ring_pow(*this, a, e); }

  value_type frobenius(const value_type& a) const
    requires CharPRing<C>
  {
    const int p = static_cast<int>(coeffs_.prime());
    value_type r;
    r.sprec = a.sprec >= kExact ? kExact : a.sprec * p;
    for (const auto& [s, comp] : a.comps) {
      line_type out;
      out.prec = comp.prec >= kExact ? kExact : comp.prec * p;
      for (const auto& [t, v] : comp.terms) out.terms.emplace(t * p, coeffs_.frobenius(v));
      r.comps.emplace(s * p, std::move(out));
    }
    return truncate(std::move(r));
  }

  bool is_zero(const value_type& a) const { return a.exact_zero(); }
  bool equal(const value_type& a, const value_type& b) const { return a == b; }
  /// Equality on the region where both are known.
  bool agree(const value_type& a, const value_type& b) const { return sub(a, b).vanishes(); }

  value_type truncate(value_type a) const {
    if (!cap_) return a;
    const int limit = cap_->s_max + 1;
    const int tcap = cap_->t_max + 1;
    bool beyond = a.sprec < kExact && a.sprec > limit;
    for (auto it = a.comps.lower_bound(limit); it != a.comps.end(); it = a.comps.erase(it)) beyond = true;
    if (beyond) a.sprec = std::min(a.sprec, limit);
    for (auto& [s, comp] : a.comps) truncate_line(comp, tcap);
    return a;
  }

  value_type derivative_s(const value_type& a) const {
    value_type r;
    r.sprec = a.sprec >= kExact ? kExact : a.sprec - 1;
    for (const auto& [s, comp] : a.comps) {
      line_type out;
      out.prec = comp.prec;
      for (const auto& [t, v] : comp.terms) {
        coeff_type w = coeffs_.mul(v, coeffs_.from_int(s));
        if (!coeffs_.is_zero(w)) out.terms.emplace(t, std::move(w));
      }
      if (!out.exact_zero()) r.comps.emplace(s - 1, std::move(out));
    }
    return r;
  }

  value_type derivative_t(const value_type& a) const {
    value_type r;
    r.sprec = a.sprec;
    for (const auto& [s, comp] : a.comps) {
      line_type out;
      out.prec = comp.prec >= kExact ? kExact : comp.prec - 1;
      for (const auto& [t, v] : comp.terms) {
        coeff_type w = coeffs_.mul(v, coeffs_.from_int(t));
        if (!coeffs_.is_zero(w)) out.terms.emplace(t - 1, std::move(w));
      }
      if (!out.exact_zero()) r.comps.emplace(s, std::move(out));
    }
    return r;
  }

  /// Inverse of a series whose leading monomial (S-first order) has a unit coefficient.
  /// Non-monomial inputs need a window: the inverse is computed up to the cap.
  value_type inv_unit(const value_type& f) const {
    if (f.comps.empty()) throw NotAUnit("inverse of a series with no known terms");
    const auto& [s0, c0] = *f.comps.begin();
    if (s0 >= f.sprec || c0.terms.empty() || c0.terms.begin()->first >= c0.prec)
      throw NotAUnit("leading monomial of the series is not known");
    const int t0 = c0.terms.begin()->first;
    const coeff_type lead = c0.terms.begin()->second;
    if constexpr (requires(const C& r, const coeff_type& x) { r.is_unit(x); }) {
      if (!coeffs_.is_unit(lead)) throw NotAUnit("leading coefficient is not a unit");
    }
    const coeff_type lead_inv = coeffs_.inv(lead);
    const value_type g = shift_exact(scale(f, lead_inv), -s0, -t0);
    const bool monomial = f.exact() && f.term_count() == 1;
    if (monomial) return shift_exact(constant(lead_inv), -s0, -t0);
    if (!cap_) throw WindowTooSmall("inverse of a non-monomial series needs a precision window");

    const int tcap_g = prec_add(cap_->t_max + 1, t0);
    const int n_max = std::min(prec_add(cap_->s_max, s0), g.sprec - 1);
    std::vector<line_type> big_g;
    line_type g0;
    if (auto it = g.comps.find(0); it != g.comps.end()) g0 = it->second;
    line_type h0 = g0;
    h0.terms.erase(0);
    const line_type inv0 = inv_line(h0, tcap_g);
    if (n_max >= 0) big_g.push_back(inv0);
    for (int n = 1; n <= n_max; ++n) {
      line_type acc;
      for (int r = 1; r <= n; ++r) {
        auto it = g.comps.find(r);
        if (it == g.comps.end()) continue;
        acc = add_line(acc, mul_line(it->second, big_g[n - r], tcap_g), false);
      }
      line_type gn = mul_line(acc, inv0, tcap_g);
      for (auto& [t, v] : gn.terms) v = coeffs_.neg(v);
      big_g.push_back(std::move(gn));
    }
    value_type out;
    out.sprec = std::min(g.sprec, n_max + 1);
    for (int n = 0; n < static_cast<int>(big_g.size()); ++n)
      if (!big_g[n].exact_zero()) out.comps.emplace(n, std::move(big_g[n]));
    drop_exact_zero(out);
    return truncate(shift_exact(scale(out, lead_inv), -s0, -t0));
  }

 private:
  value_type shift_exact(const value_type& a, int ds, int dt) const {
    value_type r;
    r.sprec = prec_add(a.sprec, ds);
    for (const auto& [s, comp] : a.comps) {
      line_type out;
      out.prec = prec_add(comp.prec, dt);
      for (const auto& [t, v] : comp.terms) out.terms.emplace(t + dt, v);
      r.comps.emplace(s + ds, std::move(out));
    }
    return r;
  }

  static void drop_exact_zero(value_type& r) {
    for (auto it = r.comps.begin(); it != r.comps.end();) {
      if (it->first >= r.sprec || it->second.exact_zero())
        it = r.comps.erase(it);
      else
        ++it;
    }
  }

  void truncate_line(line_type& c, int tcap) const {
    if (tcap >= kExact) return;
    bool beyond = c.prec < kExact && c.prec > tcap;
    for (auto it = c.terms.lower_bound(tcap); it != c.terms.end(); it = c.terms.erase(it)) beyond = true;
    if (beyond) c.prec = std::min(c.prec, tcap);
  }

  value_type combine(const value_type& a, const value_type& b, bool subtract) const {
    value_type r;
    r.sprec = std::min(a.sprec, b.sprec);
    for (const auto& [s, c] : a.comps)
      if (s < r.sprec) r.comps.emplace(s, c);
    for (const auto& [s, c] : b.comps) {
      if (s >= r.sprec) break;
      auto it = r.comps.find(s);
      if (it == r.comps.end()) {
        line_type neg = c;
        if (subtract)
          for (auto& [t, v] : neg.terms) v = coeffs_.neg(v);
        r.comps.emplace(s, std::move(neg));
      } else {
        it->second = add_line(it->second, c, subtract);
      }
    }
    drop_exact_zero(r);
    return r;
  }

  line_type add_line(const line_type& a, const line_type& b, bool subtract) const {
    line_type r;
    r.prec = std::min(a.prec, b.prec);
    for (const auto& [t, v] : a.terms) {
      if (t >= r.prec) break;
      r.terms.emplace(t, v);
    }
    for (const auto& [t, v] : b.terms) {
      if (t >= r.prec) break;
      auto it = r.terms.find(t);
      if (it == r.terms.end()) {
        r.terms.emplace(t, subtract ? coeffs_.neg(v) : v);
      } else {
        it->second = subtract ? coeffs_.sub(it->second, v) : coeffs_.add(it->second, v);
        if (coeffs_.is_zero(it->second)) r.terms.erase(it);
      }
    }
    return r;
  }

  line_type mul_line(const line_type& a, const line_type& b, int tcap) const {
    if (a.exact_zero() || b.exact_zero()) return {};
    int prec = std::min(prec_add(a.valuation(), b.prec), prec_add(b.valuation(), a.prec));
    if (tcap < kExact && prec > tcap) {
      const int top = (a.terms.empty() ? 0 : a.terms.rbegin()->first) + (b.terms.empty() ? 0 : b.terms.rbegin()->first);
      if (prec < kExact || top >= tcap) prec = tcap;
    }
    line_type r;
    r.prec = prec;
    const int bmin = b.terms.empty() ? 0 : b.terms.begin()->first;
    for (const auto& [t1, v1] : a.terms) {
      if (t1 + bmin >= prec) break;
      for (const auto& [t2, v2] : b.terms) {
        const int t = t1 + t2;
        if (t >= prec) break;
        coeff_type w = coeffs_.mul(v1, v2);
        auto it = r.terms.find(t);
        if (it == r.terms.end()) {
          if (!coeffs_.is_zero(w)) r.terms.emplace(t, std::move(w));
        } else {
          it->second = coeffs_.add(it->second, w);
          if (coeffs_.is_zero(it->second)) r.terms.erase(it);
        }
      }
    }
    return r;
  }

  // (1 + h)^{-1} for a T-series h of positive valuation, known below tcap.
  line_type inv_line(const line_type& h, int tcap) const {
    line_type result;
    result.terms.emplace(0, coeffs_.one());
    if (h.exact_zero()) return result;
    if (h.valuation() < 1) throw NotAUnit("unit part has a non-positive T-exponent term");
    if (tcap >= kExact) throw WindowTooSmall("inverse of an infinite T-series needs a window");
    line_type neg_h = h;
    for (auto& [t, v] : neg_h.terms) v = coeffs_.neg(v);
    line_type term = result;
    while (true) {
      term = mul_line(term, neg_h, tcap);
      if (term.valuation() >= tcap) {
        result.prec = std::min(result.prec, std::min(term.prec, tcap));
        break;
      }
      result = add_line(result, term, false);
    }
    return result;
  }

  C coeffs_;
  std::optional<PrecisionWindow> cap_;
};

/// Leading exponent under the T-first order: minimal T-exponent, then minimal S-exponent there.
template <class V>
ExpVec valuation(const Series2<V>& f) {
  std::optional<ExpVec> best;
  f.for_each_term([&](int s, int t, const V&) {
    const ExpVec e{s, t};
    if (!best || e < *best) best = e;
  });
  if (!best) throw ZeroValuation();
  return *best;
}

template <CommutativeRing C>
OneForm<typename C::value_type> dlog_unit(const SeriesRing<C>& ring, const Series2<typename C::value_type>& f) {
  const auto inv = ring.inv_unit(f);
  return {ring.mul(ring.derivative_s(f), inv), ring.mul(ring.derivative_t(f), inv)};
}

template <CommutativeRing C>
TwoForm<typename C::value_type> wedge(const SeriesRing<C>& ring, const OneForm<typename C::value_type>& u,
                                      const OneForm<typename C::value_type>& v) {
  return {ring.sub(ring.mul(u.ds, v.dt), ring.mul(u.dt, v.ds))};
}

/// Coefficient of S^-1 T^-1 dS^dT.
template <CommutativeRing C>
typename C::value_type residue(const SeriesRing<C>& ring, const TwoForm<typename C::value_type>& w) {
  if (!w.f.known(-1, -1)) throw WindowTooSmall("residue: S^-1 T^-1 lies outside the known region");
  const auto* c = w.f.coeff(-1, -1);
  return c ? *c : ring.coeffs().zero();
}

/// residue(f * w) without forming the whole product.
template <CommutativeRing C>
typename C::value_type residue_of_product(const SeriesRing<C>& ring, const Series2<typename C::value_type>& f,
                                          const TwoForm<typename C::value_type>& w) {
  const auto& cr = ring.coeffs();
  auto acc = cr.zero();
  const auto& g = w.f;
  if (f.exact_zero() || g.exact_zero()) return acc;
  const int sprec = std::min(prec_add(f.s_valuation(), g.sprec), prec_add(g.s_valuation(), f.sprec));
  if (sprec <= -1) throw WindowTooSmall("residue: S-precision of the product does not reach S^-1");
  for (const auto& [s1, c1] : f.comps) {
    auto it = g.comps.find(-1 - s1);
    if (it == g.comps.end()) continue;
    const auto& c2 = it->second;
    const int prec = std::min(prec_add(c1.valuation(), c2.prec), prec_add(c2.valuation(), c1.prec));
    if (prec <= -1) throw WindowTooSmall("residue: T-precision of the product does not reach T^-1");
    for (const auto& [t1, v1] : c1.terms) {
      auto jt = c2.terms.find(-1 - t1);
      if (jt != c2.terms.end()) acc = cr.add(acc, cr.mul(v1, jt->second));
    }
  }
  return acc;
}

/// Applies fn to every coefficient (landing in `target`), keeping exponents and precision.
template <CommutativeRing R, class V, class Fn>
Series2<typename R::value_type> map_coefficients(const R& target, const Series2<V>& f, Fn&& fn) {
  Series2<typename R::value_type> r;
  r.sprec = f.sprec;
  for (const auto& [s, comp] : f.comps) {
    Laurent1<typename R::value_type> out;
    out.prec = comp.prec;
    for (const auto& [t, v] : comp.terms) {
      auto w = fn(v);
      if (!target.is_zero(w)) out.terms.emplace(t, std::move(w));
    }
    if (!out.exact_zero()) r.comps.emplace(s, std::move(out));
  }
  return r;
}

}  // namespace asw
