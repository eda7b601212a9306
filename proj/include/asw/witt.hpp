#pragma once

// Truncated p-typical Witt vectors over an arbitrary coefficient ring.
//
// Ring operations use the universal sum/difference/product/negation polynomials, generated
// once per (p, m) from the ghost identities over Q and checked to be integral.

#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "asw/errors.hpp"
#include "asw/ring.hpp"

namespace asw {

template <class V>
struct WittVec {
  std::vector<V> coords;
  int length() const { return static_cast<int>(coords.size()); }
  friend bool operator==(const WittVec&, const WittVec&) = default;
};

template <class V>
struct GhostVec {
  std::vector<V> comps;
  friend bool operator==(const GhostVec&, const GhostVec&) = default;
};

namespace detail {

using Rational = boost::multiprecision::cpp_rational;
using Exponents = std::vector<std::uint16_t>;

class RationalPoly {
 public:
  explicit RationalPoly(int nvars = 0) : nvars_(nvars) {}

  static RationalPoly variable(int nvars, int index, int power = 1) {
    RationalPoly r(nvars);
    Exponents e(static_cast<std::size_t>(nvars), 0);
    e[static_cast<std::size_t>(index)] = static_cast<std::uint16_t>(power);
    r.terms_[e] = 1;
    return r;
  }

  const std::map<Exponents, Rational>& terms() const { return terms_; }

  RationalPoly& operator+=(const RationalPoly& o) {
    for (const auto& [e, c] : o.terms_) accumulate(e, c);
    return *this;
  }
  RationalPoly& operator-=(const RationalPoly& o) {
    for (const auto& [e, c] : o.terms_) accumulate(e, -c);
    return *this;
  }
  RationalPoly scaled(const Rational& k) const {
    RationalPoly r(nvars_);
    if (k == 0) return r;
    for (const auto& [e, c] : terms_) r.terms_[e] = c * k;
    return r;
  }
  RationalPoly operator*(const RationalPoly& o) const {
    RationalPoly r(nvars_);
    for (const auto& [e1, c1] : terms_)
      for (const auto& [e2, c2] : o.terms_) {
        Exponents e(e1.size());
        for (std::size_t i = 0; i < e.size(); ++i) e[i] = static_cast<std::uint16_t>(e1[i] + e2[i]);
        r.accumulate(e, c1 * c2);
      }
    return r;
  }
  RationalPoly pow(std::uint64_t k) const {
    RationalPoly acc(nvars_);
    acc.terms_[Exponents(static_cast<std::size_t>(nvars_), 0)] = 1;
    RationalPoly base = *this;
    while (k > 0) {
      if (k & 1U) acc = acc * base;
      k >>= 1U;
      if (k > 0) base = base * base;
    }
    return acc;
  }

 private:
  void accumulate(const Exponents& e, const Rational& c) {
    auto [it, inserted] = terms_.try_emplace(e, c);
    if (!inserted) {
      it->second += c;
      if (it->second == 0) terms_.erase(it);
    }
  }

  int nvars_;
  std::map<Exponents, Rational> terms_;
};

struct PolyTerm {
  std::vector<std::pair<int, int>> factors;  // (variable, exponent)
  BigInt coef;
};
using IntPoly = std::vector<PolyTerm>;

inline IntPoly to_integral(const RationalPoly& f, const std::string& what) {
  IntPoly out;
  for (const auto& [e, c] : f.terms()) {
    if (boost::multiprecision::denominator(c) != 1)
      throw Error("universal Witt polynomial " + what + " is not integral");
    PolyTerm t;
    for (std::size_t i = 0; i < e.size(); ++i)
      if (e[i] != 0) t.factors.emplace_back(static_cast<int>(i), e[i]);
    t.coef = boost::multiprecision::numerator(c);
    out.push_back(std::move(t));
  }
  return out;
}

}  // namespace detail

/// Universal polynomials for W_m over Z, in variables X_0..X_{m-1}, Y_0..Y_{m-1}.
struct UniversalWittPolys {
  std::int64_t p = 2;
  int m = 1;
  std::vector<detail::IntPoly> sum, diff, prod, neg;

  static UniversalWittPolys generate(std::int64_t p, int m) {
    using detail::RationalPoly;
    const int nv = 2 * m;
    UniversalWittPolys out{p, m, {}, {}, {}, {}};
    std::vector<RationalPoly> s, dif, pr, ng;
    auto ghost_of = [&](int offset, int n) {
      RationalPoly g(nv);
      BigInt ph = 1;
      for (int i = 0; i <= n; ++i) {
        g += RationalPoly::variable(nv, offset + i, static_cast<int>(int_pow(p, n - i))).scaled(detail::Rational(ph));
        ph *= p;
      }
      return g;
    };
    auto solve = [&](RationalPoly target, const std::vector<RationalPoly>& prev, int n) {
      BigInt ph = 1;
      for (int i = 0; i < n; ++i) {
        target -= prev[static_cast<std::size_t>(i)].pow(static_cast<std::uint64_t>(int_pow(p, n - i))).scaled(detail::Rational(ph));
        ph *= p;
      }
      return target.scaled(detail::Rational(BigInt(1), ph));
    };
    for (int n = 0; n < m; ++n) {
      const RationalPoly gx = ghost_of(0, n);
      const RationalPoly gy = ghost_of(m, n);
      RationalPoly gs = gx;
      gs += gy;
      RationalPoly gd = gx;
      gd -= gy;
      s.push_back(solve(gs, s, n));
      dif.push_back(solve(gd, dif, n));
      pr.push_back(solve(gx * gy, pr, n));
      ng.push_back(solve(gx.scaled(-1), ng, n));
      const std::string tag = "(p=" + std::to_string(p) + ", n=" + std::to_string(n) + ")";
      out.sum.push_back(detail::to_integral(s.back(), "sum " + tag));
      out.diff.push_back(detail::to_integral(dif.back(), "difference " + tag));
      out.prod.push_back(detail::to_integral(pr.back(), "product " + tag));
      out.neg.push_back(detail::to_integral(ng.back(), "negation " + tag));
    }
    return out;
  }

  /// Cached, thread-safe accessor.
  static std::shared_ptr<const UniversalWittPolys> get(std::int64_t p, int m) {
    static std::mutex mu;
    static std::map<std::pair<std::int64_t, int>, std::shared_ptr<const UniversalWittPolys>> cache;
    {
      std::lock_guard<std::mutex> lock(mu);
      auto it = cache.find({p, m});
      if (it != cache.end()) return it->second;
    }
    auto built = std::make_shared<const UniversalWittPolys>(generate(p, m));
    std::lock_guard<std::mutex> lock(mu);
    return cache.try_emplace({p, m}, std::move(built)).first->second;
  }
};

/// W_m(R) as a ring object.
template <CommutativeRing R>
class WittRing {
 public:
  using base_value = typename R::value_type;
  using value_type = WittVec<base_value>;

  WittRing(R base, int length)
      : base_(std::move(base)), m_(length), polys_(UniversalWittPolys::get(base_.prime(), length)) {
    if (length < 1) throw InvalidArgument("Witt length must be >= 1");
    const std::int64_t ch = base_.characteristic();
    auto reduce_all = [&](const std::vector<detail::IntPoly>& src) {
      std::vector<std::vector<Term>> out;
      for (const auto& poly : src) {
        std::vector<Term> terms;
        for (const auto& t : poly) {
          base_value c = from_bigint(base_, t.coef);
          if (base_.is_zero(c)) continue;
          terms.push_back(Term{t.factors, std::move(c)});
        }
        out.push_back(std::move(terms));
      }
      return out;
    };
    (void)ch;
    sum_ = reduce_all(polys_->sum);
    diff_ = reduce_all(polys_->diff);
    prod_ = reduce_all(polys_->prod);
    neg_ = reduce_all(polys_->neg);
  }

  const R& base() const { return base_; }
  int length() const { return m_; }
  std::int64_t prime() const { return base_.prime(); }
  std::int64_t characteristic() const { return 0; }

  value_type zero() const { return value_type{std::vector<base_value>(static_cast<std::size_t>(m_), base_.zero())}; }
  value_type one() const { return teichmuller(base_.one()); }
  value_type teichmuller(const base_value& x) const {
    value_type r = zero();
    r.coords[0] = x;
    return r;
  }
  value_type from_int(std::int64_t n) const {
    value_type acc = zero();
    const bool negative = n < 0;
    value_type unit = one();
    for (std::int64_t k = negative ? -n : n; k > 0; k >>= 1) {
      if (k & 1) acc = add(acc, unit);
      if (k > 1) unit = add(unit, unit);
    }
    return negative ? neg(acc) : acc;
  }

  value_type add(const value_type& a, const value_type& b) const { return eval2(sum_, a, b); }
  value_type sub(const value_type& a, const value_type& b) const { return eval2(diff_, a, b); }
  value_type mul(const value_type& a, const value_type& b) const { return eval2(prod_, a, b); }
  value_type neg(const value_type& a) const { return eval2(neg_, a, zero()); }
  bool is_zero(const value_type& a) const {
    for (const auto& c : a.coords)
      if (!base_.is_zero(c)) return false;
    return true;
  }
  bool equal(const value_type& a, const value_type& b) const { return a == b; }

  /// w * [c]: coordinate h is multiplied by c^{p^h}.
  value_type scalar_teich(const value_type& w, const base_value& c) const {
    value_type r = w;
    base_value cp = c;
    for (int h = 0; h < m_; ++h) {
      r.coords[h] = base_.mul(r.coords[h], cp);
      if (h + 1 < m_) cp = pow_p_power(base_, cp, 1);
    }
    return r;
  }

  /// Coordinatewise p-th power; the Witt Frobenius in characteristic p.
  value_type frobenius(const value_type& a) const
    requires CharPRing<R>
  {
    value_type r = a;
    for (auto& c : r.coords) c = base_.frobenius(c);
    return r;
  }

  /// V: (x_0, ..., x_{m-1}) of length m-1 or m -> (0, x_0, ..., x_{m-2}).
  value_type verschiebung(const value_type& a) const {
    value_type r = zero();
    for (int h = 1; h < m_ && h - 1 < a.length(); ++h) r.coords[h] = a.coords[h - 1];
    return r;
  }

  /// Shift to the left: (x_1, ..., x_{m-1}) in W_{m-1}.
  std::vector<base_value> tail(const value_type& a) const { return {a.coords.begin() + 1, a.coords.end()}; }

  GhostVec<base_value> ghost(const value_type& w) const { return ghost_map(base_, w); }

  /// Pads or truncates to this ring's length.
  value_type resize(value_type a) const {
    a.coords.resize(static_cast<std::size_t>(m_), base_.zero());
    return a;
  }

 private:
  struct Term {
    std::vector<std::pair<int, int>> factors;
    base_value coef;
  };

  // Cache of x^e for one variable.
  class PowerCache {
   public:
    PowerCache(const R& ring, const base_value& x) : ring_(ring) { frob_.push_back(x); }
    base_value get(int e) {
      auto it = cache_.find(e);
      if (it != cache_.end()) return it->second;
      base_value v = compute(e);
      cache_.emplace(e, v);
      return v;
    }

   private:
    base_value compute(int e) {
      if constexpr (CharPRing<R>) {
        const int p = static_cast<int>(ring_.prime());
        base_value acc = ring_.one();
        bool first = true;
        for (int k = 0; e > 0; ++k, e /= p) {
          while (static_cast<int>(frob_.size()) <= k) frob_.push_back(ring_.frobenius(frob_.back()));
          const int digit = e % p;
          if (digit == 0) continue;
          base_value f = ring_pow(ring_, frob_[static_cast<std::size_t>(k)], static_cast<std::uint64_t>(digit));
          acc = first ? f : ring_.mul(acc, f);
          first = false;
        }
        return acc;
      } else {
        return ring_pow(ring_, frob_.front(), static_cast<std::uint64_t>(e));
      }
    }

    const R& ring_;
    std::vector<base_value> frob_;
    std::map<int, base_value> cache_;
  };

  value_type eval2(const std::vector<std::vector<Term>>& polys, const value_type& a, const value_type& b) const {
    if (a.length() != m_ || b.length() != m_) throw InvalidArgument("Witt vector length mismatch");
    std::vector<PowerCache> caches;
    caches.reserve(static_cast<std::size_t>(2 * m_));
    for (int i = 0; i < m_; ++i) caches.emplace_back(base_, a.coords[i]);
    for (int i = 0; i < m_; ++i) caches.emplace_back(base_, b.coords[i]);
    std::vector<bool> zero_var(static_cast<std::size_t>(2 * m_));
    for (int i = 0; i < m_; ++i) {
      zero_var[i] = base_.is_zero(a.coords[i]);
      zero_var[m_ + i] = base_.is_zero(b.coords[i]);
    }
    value_type r = zero();
    for (int n = 0; n < m_; ++n) {
      base_value acc = base_.zero();
      for (const auto& term : polys[n]) {
        bool vanishes = false;
        for (const auto& [v, e] : term.factors)
          if (zero_var[v]) {
            vanishes = true;
            break;
          }
        if (vanishes) continue;
        base_value mono;
        bool first = true;
        for (const auto& [v, e] : term.factors) {
          base_value f = caches[v].get(e);
          mono = first ? std::move(f) : base_.mul(mono, f);
          first = false;
        }
        if (first)
          acc = base_.add(acc, term.coef);
        else
          acc = base_.add(acc, base_.mul(mono, term.coef));
      }
      r.coords[n] = std::move(acc);
    }
    return r;
  }

  R base_;
  int m_;
  std::shared_ptr<const UniversalWittPolys> polys_;
  std::vector<std::vector<Term>> sum_, diff_, prod_, neg_;
};

/// Ghost components g^{(h)} = sum_{i<=h} p^i x_i^{p^{h-i}}.
template <CommutativeRing R>
GhostVec<typename R::value_type> ghost_map(const R& ring, const WittVec<typename R::value_type>& w) {
  const int m = w.length();
  GhostVec<typename R::value_type> g;
  // powers[i] holds x_i^{p^{h-i}} for the current h.
  std::vector<typename R::value_type> powers = w.coords;
  for (int h = 0; h < m; ++h) {
    auto acc = ring.zero();
    std::int64_t ph = 1;
    for (int i = 0; i <= h; ++i) {
      acc = ring.add(acc, ring.mul(powers[i], ring.from_int(ph)));
      ph *= ring.prime();
    }
    g.comps.push_back(std::move(acc));
    if (h + 1 < m)
      for (int i = 0; i <= h; ++i) powers[i] = ring_pow(ring, powers[i], static_cast<std::uint64_t>(ring.prime()));
  }
  return g;
}

/// Inverts the ghost map over a ring with exact division by p (Z_q/p^N). Coordinate h is
/// determined modulo p^{N-h}; throws DivisibilityError when the input is not a ghost vector.
template <CommutativeRing R>
  requires requires(const R& r, const typename R::value_type& a) { r.div_p_pow(a, 1); }
WittVec<typename R::value_type> ghost_inverse(const R& ring, const GhostVec<typename R::value_type>& g) {
  const int m = static_cast<int>(g.comps.size());
  WittVec<typename R::value_type> w;
  for (int h = 0; h < m; ++h) {
    auto rest = g.comps[h];
    std::int64_t pi = 1;
    for (int i = 0; i < h; ++i) {
      const auto term = ring_pow(ring, w.coords[i], static_cast<std::uint64_t>(int_pow(ring.prime(), h - i)));
      rest = ring.sub(rest, ring.mul(term, ring.from_int(pi)));
      pi *= ring.prime();
    }
    w.coords.push_back(ring.div_p_pow(rest, h));
  }
  return w;
}

/// The Artin-Schreier-Witt operator F - id.
template <CharPRing R>
WittVec<typename R::value_type> wp(const WittRing<R>& W, const WittVec<typename R::value_type>& x) {
  return W.sub(W.frobenius(x), x);
}

}  // namespace asw
