#pragma once

// Acceptance suite shared by the test binary and `asw selftest`.

#include <chrono>
#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "asw/asw_reduce.hpp"
#include "asw/format.hpp"
#include "asw/milnor.hpp"
#include "asw/ramification.hpp"
#include "asw/ring_tower.hpp"
#include "asw/symbol.hpp"
#include "asw/witt.hpp"

namespace asw::acceptance {

struct Config {
  std::int64_t p;
  int d;
  int m;
  std::string str() const { return "(p=" + std::to_string(p) + ",d=" + std::to_string(d) + ",m=" + std::to_string(m) + ")"; }
};

inline const std::vector<Config>& configs() {
  static const std::vector<Config> list = {{2, 1, 1}, {2, 1, 2}, {2, 1, 3}, {2, 2, 2}, {3, 1, 1}, {3, 1, 2}, {5, 1, 1}};
  return list;
}

struct Report {
  int id = 0;
  std::string title;
  bool passed = true;
  std::size_t cases = 0;
  double seconds = 0;
  std::string failure;  // first failing case
  std::string line() const {
    std::ostringstream os;
    os << (passed ? "[PASS] " : "[FAIL] ") << id << " " << title << ": " << cases << " cases";
    os.setf(std::ios::fixed);
    os.precision(1);
    os << " (" << seconds << "s)";
    if (!passed) os << " -- " << failure;
    return os.str();
  }
};

struct Options {
  std::uint64_t seed = 0x5eed2d1ULL;
  double scale = 1.0;  // multiplies every case count
  int input_radius = 12;
};

/// Random objects for property checks.
class Sampler {
 public:
  Sampler(std::uint64_t seed) : rng_(seed) {}

  int uniform(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }
  std::int64_t uniform64(std::int64_t lo, std::int64_t hi) { return std::uniform_int_distribution<std::int64_t>(lo, hi)(rng_); }
  bool coin() { return uniform(0, 1) == 1; }

  FFElem nonzero(const FFRing& k) { return k.element(uniform64(1, k.size() - 1)); }
  FFElem any(const FFRing& k) { return k.element(uniform64(0, k.size() - 1)); }
  ZqElem zq_any(const ZqRing& zq) {
    ZqElem z;
    for (int i = 0; i < zq.degree(); ++i) z.c[i] = uniform64(0, zq.modulus() - 1);
    return z;
  }

  KSeries laurent(const FFRing& k, int terms, int radius) {
    const KRing F(k);
    KSeries f = F.zero();
    for (int n = 0; n < terms; ++n) f = F.add(f, F.monomial(nonzero(k), uniform(-radius, radius), uniform(-radius, radius)));
    return f;
  }

  WittVec<KSeries> witt(const FFRing& k, int m, int radius) {
    WittVec<KSeries> x;
    for (int h = 0; h < m; ++h) x.coords.push_back(uniform(0, 3) == 0 ? KSeries{} : laurent(k, uniform(1, 3), radius));
    return x;
  }

  std::pair<int, int> positive_exponent(int radius) {
    while (true) {
      const int i = uniform(0, radius);
      const int j = uniform(-radius, radius);
      if (is_positive_exponent(i, j)) return {i, j};
    }
  }

  std::pair<int, int> canonical_key(std::int64_t p, int radius) {
    while (true) {
      const int i = uniform(0, radius);
      const int j = uniform(-radius, radius);
      if (is_canonical_key(i, j, p)) return {i, j};
    }
  }

  CanonicalK2 symbol(const K2Group& grp, int radius) {
    CanonicalK2 y = grp.st(uniform64(0, grp.modulus() - 1));
    const int gens = uniform(0, 3);
    for (int g = 0; g < gens; ++g) {
      const auto [i, j] = positive_exponent(radius);
      y = grp.merge(y, grp.unit_symbol(coin() ? GenKind::S : GenKind::T, i, j, nonzero(grp.field()),
                                       uniform64(1, grp.modulus() - 1)));
    }
    return y;
  }

  CanonicalASW canonical(const ZqRing& zq, int radius) {
    CanonicalASW x;
    x.c = uniform64(0, zq.modulus() - 1);
    const int terms = uniform(0, 3);
    for (int n = 0; n < terms; ++n) {
      const ZqElem c = zq_any(zq);
      if (!zq.is_zero(c)) x.terms[canonical_key(zq.prime(), radius)] = c;
    }
    return x;
  }

  std::mt19937_64& engine() { return rng_; }

 private:
  std::mt19937_64 rng_;
};

namespace detail {

inline std::size_t scaled(std::size_t n, const Options& o) {
  return std::max<std::size_t>(1, static_cast<std::size_t>(static_cast<double>(n) * o.scale + 0.5));
}

inline std::string witt_str(const FFRing& k, const WittVec<KSeries>& x) {
  std::string out = "[";
  for (int h = 0; h < x.length(); ++h) out += (h ? ", " : "") + to_string(k, x.coords[h], PrecisionWindow::square(1 << 20));
  return out + "]";
}

// Runs `body` per configuration, stopping at the first failure.
template <class Body>
Report run(int id, std::string title, Body&& body) {
  Report r{id, std::move(title), true, 0, 0, {}};
  const auto start = std::chrono::steady_clock::now();
  try {
    body(r);
  } catch (const std::exception& e) {
    r.passed = false;
    r.failure = std::string("exception: ") + e.what() + (r.failure.empty() ? "" : " [" + r.failure + "]");
  }
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return r;
}

inline bool check(Report& r, bool ok, const std::string& what) {
  ++r.cases;
  if (!ok && r.passed) {
    r.passed = false;
    r.failure = what;
  }
  return ok;
}

}  // namespace detail

/// 1: theorem1(reduce x) = parshin(x) = closed_form(reduce x).
inline Report three_way(const Options& o) {
  return detail::run(1, "three-way oracle equivalence", [&](Report& r) {
    Sampler rng(o.seed + 1);
    for (const auto& cfg : configs()) {
      const Pairing P(FieldParams::standard(cfg.p, cfg.d), cfg.m);
      const FFRing& k = P.reducer().field();
      for (std::size_t n = 0; n < detail::scaled(500, o); ++n) {
        const auto x = rng.witt(k, cfg.m, o.input_radius);
        const auto y = rng.symbol(P.group(), o.input_radius);
        r.failure = cfg.str() + " x=" + detail::witt_str(k, x) + " y=" + to_string(k, y);
        const auto red = P.reducer().reduce(x, false).canonical;
        const auto a = P.theorem1(red, y);
        const auto b = P.parshin(x, y);
        const auto c = P.closed_form(red, y);
        if (!detail::check(r, a == b && b == c,
                           r.failure + " theorem1=" + std::to_string(a.v) + " parshin=" + std::to_string(b.v) +
                               " closed=" + std::to_string(c.v)))
          return;
      }
    }
    r.failure.clear();
  });
}

/// 2: [c beta, {S,T}) = Tr(c beta) and [c [S^-m T^-n], {S,T}) = 0.
inline Report proof_cases(const Options& o) {
  return detail::run(2, "proof-case vectors", [&](Report& r) {
    Sampler rng(o.seed + 2);
    for (const auto& cfg : configs()) {
      const Pairing P(FieldParams::standard(cfg.p, cfg.d), cfg.m);
      const ZqRing& zq = P.reducer().zq();
      const std::int64_t pm = P.modulus();
      const CanonicalK2 st = P.group().st(1);
      // Tr(beta) as the sum of the Galois conjugates.
      ZqElem conj_sum = zq.zero();
      ZqElem conj = P.reducer().beta().beta;
      for (int i = 0; i < cfg.d; ++i, conj = zq.sigma(conj)) conj_sum = zq.add(conj_sum, conj);
      if (!detail::check(r, zq.degree() == 1 || conj_sum.c[1] == 0, cfg.str() + " trace of beta not rational")) return;
      for (std::size_t n = 0; n < detail::scaled(50, o); ++n) {
        CanonicalASW xc;
        xc.c = rng.uniform64(0, pm - 1);
        const std::int64_t expect = mod_floor(xc.c * conj_sum.c[0], pm);
        const auto emb = P.reducer().embed(xc);
        const auto vals = {P.theorem1(xc, st).v, P.closed_form(xc, st).v, P.parshin(emb, st).v};
        for (auto v : vals)
          if (!detail::check(r, v == expect, cfg.str() + " c=" + std::to_string(xc.c) + " got " + std::to_string(v) +
                                                 " expected " + std::to_string(expect)))
            return;
        CanonicalASW xt;
        ZqElem c = rng.zq_any(zq);
        if (zq.is_zero(c)) c = zq.one();
        xt.terms[rng.canonical_key(cfg.p, o.input_radius)] = c;
        const auto embt = P.reducer().embed(xt);
        const auto tvals = {P.theorem1(xt, st).v, P.closed_form(xt, st).v, P.parshin(embt, st).v};
        for (auto v : tvals)
          if (!detail::check(r, v == 0, cfg.str() + " x=" + to_string(zq, xt) + " got " + std::to_string(v))) return;
      }
    }
  });
}

/// 3: wp-kernel, additivity in x, multiplicativity in y, y^{p^m} = 1.
inline Report kernel_linearity(const Options& o) {
  return detail::run(3, "wp-kernel and linearity", [&](Report& r) {
    Sampler rng(o.seed + 3);
    for (const auto& cfg : configs()) {
      const Pairing P(FieldParams::standard(cfg.p, cfg.d), cfg.m);
      const FFRing& k = P.reducer().field();
      const WittRing<KRing> W(KRing(k), cfg.m);
      const std::int64_t pm = P.modulus();
      for (std::size_t n = 0; n < detail::scaled(200, o); ++n) {
        const auto x = rng.witt(k, cfg.m, o.input_radius);
        const auto x2 = rng.witt(k, cfg.m, o.input_radius);
        const auto z = rng.witt(k, cfg.m, 3);
        const auto y = rng.symbol(P.group(), o.input_radius);
        const auto y2 = rng.symbol(P.group(), o.input_radius);
        const std::string ctx = cfg.str() + " x=" + detail::witt_str(k, x) + " y=" + to_string(k, y);
        r.failure = ctx + " z=" + detail::witt_str(k, z);
        const auto base = P.parshin(x, y).v;
        const auto shifted = W.add(wp(W, z), x);
        if (!detail::check(r, P.parshin(shifted, y).v == base && P.via_reduction(shifted, y).v == base,
                           ctx + " z=" + detail::witt_str(k, z) + ": wp(z) changes the value"))
          return;
        const auto sum = P.parshin(W.add(x, x2), y).v;
        if (!detail::check(r, sum == mod_floor(base + P.parshin(x2, y).v, pm),
                           ctx + " x'=" + detail::witt_str(k, x2) + ": not additive in x"))
          return;
        const auto red = P.reducer().reduce(x, false).canonical;
        const auto prod = P.theorem1(red, P.group().merge(y, y2)).v;
        if (!detail::check(r, prod == mod_floor(base + P.theorem1(red, y2).v, pm),
                           ctx + " y'=" + to_string(k, y2) + ": not multiplicative in y"))
          return;
        if (!detail::check(r, P.theorem1(red, P.group().power(y, pm)).v == 0, ctx + ": y^{p^m} pairs nontrivially"))
          return;
      }
    }
    r.failure.clear();
  });
}

/// 4: {f, -f} and {f, 1 - f} pair to zero.
inline Report steinberg(const Options& o) {
  return detail::run(4, "Steinberg relations through normalization", [&](Report& r) {
    Sampler rng(o.seed + 4);
    for (const auto& cfg : configs()) {
      const Pairing P(FieldParams::standard(cfg.p, cfg.d), cfg.m);
      const FFRing& k = P.reducer().field();
      const ZqRing& zq = P.reducer().zq();
      const KRing F(k);
      for (std::size_t n = 0; n < detail::scaled(100, o); ++n) {
        const KSeries f = F.monomial(rng.nonzero(k), rng.uniform(-o.input_radius, o.input_radius),
                                     rng.uniform(-o.input_radius, o.input_radius));
        std::vector<CanonicalK2> ys = {normalize_symbol(P.group(), f, F.neg(f), P.window())};
        const KSeries g = F.sub(F.one(), f);
        if (!g.vanishes()) ys.push_back(normalize_symbol(P.group(), f, g, P.window()));
        const auto x = rng.canonical(zq, o.input_radius);
        for (const auto& y : ys)
          if (!detail::check(r, P.theorem1(x, y).v == 0 && P.closed_form(x, y).v == 0,
                             cfg.str() + " f=" + to_string(k, f, P.window()) + " x=" + to_string(zq, x) + " y=" +
                                 to_string(k, y)))
            return;
      }
    }
  });
}

/// 5: x (-) embed(canonical) = wp(witness) on the window; cone and coprimality invariants.
inline Report reduction_soundness(const Options& o) {
  return detail::run(5, "reduction soundness", [&](Report& r) {
    Sampler rng(o.seed + 5);
    for (const auto& cfg : configs()) {
      const AswReducer R(FieldParams::standard(cfg.p, cfg.d), cfg.m);
      const FFRing& k = R.field();
      const ZqRing& zq = R.zq();
      for (std::size_t n = 0; n < detail::scaled(200, o); ++n) {
        const auto x = rng.witt(k, cfg.m, o.input_radius);
        const auto res = R.reduce(x);
        bool invariants = res.canonical.c >= 0 && res.canonical.c < R.modulus();
        for (const auto& part : {res.canonical, res.outside})
          for (const auto& [key, c] : part.terms)
            invariants = invariants && is_canonical_key(key.first, key.second, cfg.p) && !zq.is_zero(c) &&
                         zq.equal(zq.truncate(c, cfg.m), c);
        if (!detail::check(r, invariants && R.verify(x, res),
                           cfg.str() + " x=" + detail::witt_str(k, x) + " canonical=" + to_string(zq, res.canonical)))
          return;
      }
    }
  });
}

/// 6: one-variable inputs reduce to the Schmid-Witt symbol (m = 1).
inline Report one_dimensional(const Options& o) {
  return detail::run(6, "one-dimensional degeneration", [&](Report& r) {
    Sampler rng(o.seed + 6);
    std::vector<std::pair<std::int64_t, int>> fields;
    for (const auto& cfg : configs())
      if (std::find(fields.begin(), fields.end(), std::make_pair(cfg.p, cfg.d)) == fields.end())
        fields.emplace_back(cfg.p, cfg.d);
    for (const auto& [p, d] : fields) {
      const Pairing P(FieldParams::standard(p, d), 1);
      const FFRing& k = P.reducer().field();
      const KRing F(k);
      for (std::size_t n = 0; n < detail::scaled(100, o); ++n) {
        const bool in_s = rng.coin();
        auto var_mono = [&](const FFElem& c, int e) { return in_s ? F.monomial(c, e, 0) : F.monomial(c, 0, e); };
        KSeries x = F.zero();
        for (int t = rng.uniform(1, 3); t > 0; --t) x = F.add(x, var_mono(rng.nonzero(k), rng.uniform(-o.input_radius, o.input_radius)));
        KSeries u = F.one();
        for (int t = rng.uniform(1, 3); t > 0; --t) u = F.add(u, var_mono(rng.nonzero(k), rng.uniform(1, o.input_radius)));
        u = F.mul(u, var_mono(rng.nonzero(k), rng.uniform(-3, 3)));
        const CanonicalK2 y = in_s ? normalize_symbol(P.group(), u, F.T(), P.window())
                                   : normalize_symbol(P.group(), F.S(), u, P.window());
        const auto red = P.reducer().reduce(WittVec<KSeries>{{x}}, false).canonical;
        const auto lhs = P.theorem1(red, y).v;
        const auto rhs = schmid_one_dim(k, x, u, in_s ? GenKind::S : GenKind::T, P.window()).v;
        if (!detail::check(r, lhs == rhs,
                           "(p=" + std::to_string(p) + ",d=" + std::to_string(d) + ") x=" + to_string(k, x, P.window()) +
                               " u=" + to_string(k, u, P.window()) + " pairing=" + std::to_string(lhs) +
                               " schmid=" + std::to_string(rhs)))
          return;
      }
    }
  });
}

/// 7: ghost inversion, digit round trips, integrality, additivity of wp.
inline Report witt_infrastructure(const Options& o) {
  return detail::run(7, "Witt and ghost infrastructure", [&](Report& r) {
    Sampler rng(o.seed + 7);
    for (const auto& cfg : configs()) {
      const FieldParams fp = FieldParams::standard(cfg.p, cfg.d);
      const int N = cfg.m + 1;
      const ZqRing zq(fp, N);
      const ZqRing zm(fp, cfg.m);
      for (std::size_t n = 0; n < detail::scaled(200, o); ++n) {
        WittVec<ZqElem> w;
        for (int h = 0; h < cfg.m; ++h) w.coords.push_back(rng.zq_any(zq));
        const auto back = ghost_inverse(zq, ghost_map(zq, w));
        bool same = true;
        for (int h = 0; h < cfg.m; ++h) same = same && zq.equal(zq.truncate(back.coords[h], N - h), zq.truncate(w.coords[h], N - h));
        if (!detail::check(r, same, cfg.str() + " ghost_inverse(ghost(w)) != w")) return;
        const ZqElem z = rng.zq_any(zm);
        if (!detail::check(r, zm.equal(zm.from_teich_digits(zm.teich_digits(z, cfg.m)), z),
                           cfg.str() + " teich digit round trip failed for " + to_string(zm, z)))
          return;
      }
      const auto polys = UniversalWittPolys::generate(cfg.p, cfg.m);
      detail::check(r, static_cast<int>(polys.sum.size()) == cfg.m, cfg.str() + " universal polynomials");
      const FFRing k(fp);
      const WittRing<FFRing> W(k, cfg.m);
      for (std::size_t n = 0; n < detail::scaled(200, o); ++n) {
        WittVec<FFElem> a, b;
        for (int h = 0; h < cfg.m; ++h) {
          a.coords.push_back(rng.any(k));
          b.coords.push_back(rng.any(k));
        }
        if (!detail::check(r, wp(W, W.add(a, b)) == W.add(wp(W, a), wp(W, b)), cfg.str() + " wp is not additive")) return;
      }
    }
  });
}

/// 8: U^r membership <=> phi lies in the ramification profile; spot values of ell.
inline Report ramification_duality(const Options& o) {
  return detail::run(8, "ramification duality", [&](Report& r) {
    Sampler rng(o.seed + 8);
    detail::check(r, ell(2, {0, 5}, 3, 1) == 3, "ell(p=2, r=(0,5), (3,1)) != 3");
    detail::check(r, ell(3, {4, 0}, 1, 0) == 2, "ell(p=3, r=(4,0), (1,0)) != 2");
    detail::check(r, ell(5, {0, 0}, 2, 7) == 0, "ell(r=(0,0)) != 0");
    const IndexBox box{8, 8};
    for (const auto& cfg : configs()) {
      const FieldParams fp = FieldParams::standard(cfg.p, cfg.d);
      const K2Group grp(FFRing(fp), cfg.m);
      const ZqRing zq(fp, cfg.m);
      const auto indices = ram_indices(cfg.p, box);
      for (std::size_t n = 0; n < detail::scaled(200, o); ++n) {
        CanonicalK2 y = grp.st(rng.uniform64(0, grp.modulus() - 1));
        std::vector<std::pair<int, int>> used;
        for (int g = rng.uniform(0, 4); g > 0; --g) {
          const auto idx = indices[static_cast<std::size_t>(rng.uniform(0, static_cast<int>(indices.size()) - 1))];
          if (std::find(used.begin(), used.end(), idx) != used.end()) continue;
          used.push_back(idx);
          const GenKind kind = idx.second % cfg.p != 0 ? GenKind::S : GenKind::T;
          // Small exponents (often divisible by p) exercise the digit conditions.
          const std::int64_t e = int_pow(cfg.p, rng.uniform(0, cfg.m - 1)) * rng.uniform64(1, cfg.p - 1);
          y = grp.merge(y, CanonicalK2{0, {{kind, idx.first, idx.second, rng.nonzero(grp.field()), e}}});
        }
        const auto phi = phi_map(zq, y, box);
        for (int t = 0; t < 20; ++t) {
          const RamVector rv{rng.uniform(0, 10), rng.uniform(0, 10)};
          if (!detail::check(r, u_membership(cfg.p, cfg.m, y, rv) == phi_in_profile(zq, cfg.m, phi, rv),
                             cfg.str() + " y=" + to_string(grp.field(), y) + " r=(" + std::to_string(rv.r1) + "," +
                                 std::to_string(rv.r2) + ")"))
            return;
        }
      }
    }
  });
}

/// 9: ratio test is stable under (l1, l2) -> p^h (l1, l2).
inline Report ratio_stability(const Options&) {
  return detail::run(9, "ratio-stability predicate", [&](Report& r) {
    for (std::int64_t p : {2, 3, 5}) {
      for (int i = 1; i <= 30; ++i)
        for (int j = 1; j <= 30; ++j) {
          if (std::gcd(i, j) % p == 0) continue;
          for (int l1 = 0; l1 <= 30; ++l1)
            for (int l2 = 0; l2 <= 30; ++l2) {
              if (std::gcd(l1, l2) % p == 0) continue;
              const bool base = ratio_match(l1, l2, i, j).has_value();
              std::int64_t ph = 1;
              for (int h = 0; h <= 3; ++h, ph *= p) {
                const bool scaled = ratio_match(static_cast<int>(l1 * ph), static_cast<int>(l2 * ph), i, j).has_value();
                if (!detail::check(r, scaled == base,
                                   "p=" + std::to_string(p) + " i=" + std::to_string(i) + " j=" + std::to_string(j) +
                                       " l=(" + std::to_string(l1) + "," + std::to_string(l2) + ") h=" + std::to_string(h)))
                  return;
              }
            }
        }
    }
  });
}

inline std::vector<Report> run_all(const Options& o, const std::function<void(const Report&)>& on_report = {}) {
  std::vector<Report> out;
  for (auto fn : {three_way, proof_cases, kernel_linearity, steinberg, reduction_soundness, one_dimensional,
                  witt_infrastructure, ramification_duality, ratio_stability}) {
    out.push_back(fn(o));
    if (on_report) on_report(out.back());
  }
  return out;
}

}  // namespace asw::acceptance
