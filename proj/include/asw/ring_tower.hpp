#pragma once

// Residue field k = GF(p^d) and its unramified lift Z_q = W(k) truncated at p^N.

#include <array>
#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "asw/errors.hpp"
#include "asw/ring.hpp"

namespace asw {

inline constexpr int kMaxDegree = 6;

/// Element of k in the polynomial basis 1, a, ..., a^{d-1}.
struct FFElem {
  std::array<std::int64_t, kMaxDegree> c{};
  friend auto operator<=>(const FFElem&, const FFElem&) = default;
};

/// Element of Z_q / p^N in the same polynomial basis, modulus lifted coefficientwise.
struct ZqElem {
  std::array<std::int64_t, kMaxDegree> c{};
  friend auto operator<=>(const ZqElem&, const ZqElem&) = default;
};

namespace detail {

using Poly = std::vector<std::int64_t>;  // low -> high, coefficients mod p

inline void trim(Poly& f) {
  while (!f.empty() && f.back() == 0) f.pop_back();
}

inline Poly poly_mod(Poly a, const Poly& m, std::int64_t p) {
  trim(a);
  const std::int64_t lead_inv = inv_mod(m.back(), p);
  while (a.size() >= m.size()) {
    const std::int64_t factor = a.back() * lead_inv % p;
    const std::size_t shift = a.size() - m.size();
    for (std::size_t i = 0; i < m.size(); ++i)
      a[shift + i] = mod_floor(a[shift + i] - factor * m[i], p);
    trim(a);
  }
  return a;
}

inline Poly poly_mulmod(const Poly& a, const Poly& b, const Poly& m, std::int64_t p) {
  if (a.empty() || b.empty()) return {};
  Poly r(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] = (r[i + j] + a[i] * b[j]) % p;
  return poly_mod(std::move(r), m, p);
}

inline Poly poly_powmod(Poly base, std::uint64_t e, const Poly& m, std::int64_t p) {
  Poly acc{1};
  base = poly_mod(std::move(base), m, p);
  while (e > 0) {
    if (e & 1U) acc = poly_mulmod(acc, base, m, p);
    e >>= 1U;
    if (e > 0) base = poly_mulmod(base, base, m, p);
  }
  return acc;
}

inline Poly poly_gcd(Poly a, Poly b, std::int64_t p) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    Poly r = poly_mod(a, b, p);
    a = std::move(b);
    b = std::move(r);
  }
  return a;
}

// Rabin's test.
inline bool is_irreducible(const Poly& f, std::int64_t p) {
  const int d = static_cast<int>(f.size()) - 1;
  if (d < 1) return false;
  if (d == 1) return true;
  auto x_pow_pk = [&](int k) {
    Poly x{0, 1};
    for (int i = 0; i < k; ++i) x = poly_powmod(x, static_cast<std::uint64_t>(p), f, p);
    return x;
  };
  auto minus_x = [&](Poly g) {
    if (g.size() < 2) g.resize(2, 0);
    g[1] = mod_floor(g[1] - 1, p);
    trim(g);
    return g;
  };
  if (!minus_x(x_pow_pk(d)).empty()) return false;
  for (int r = 2; r <= d; ++r) {
    if (d % r != 0 || !is_prime(r)) continue;
    const Poly g = poly_gcd(f, minus_x(x_pow_pk(d / r)), p);
    if (g.size() > 1) return false;
  }
  return true;
}

}  // namespace detail

/// p, d and the defining modulus of k (low-to-high coefficients, monic, length d+1).
struct FieldParams {
  std::int64_t p = 2;
  int d = 1;
  std::vector<std::int64_t> modulus{1, 1};

  static FieldParams make(std::int64_t p, std::vector<std::int64_t> modulus) {
    if (!is_prime(p)) throw InvalidArgument("p = " + std::to_string(p) + " is not prime");
    if (modulus.size() < 2) throw InvalidArgument("modulus must have degree >= 1");
    for (auto& c : modulus) c = mod_floor(c, p);
    if (modulus.back() != 1) throw InvalidArgument("modulus must be monic");
    const int d = static_cast<int>(modulus.size()) - 1;
    if (d > kMaxDegree) throw InvalidArgument("extension degree above " + std::to_string(kMaxDegree));
    if (!detail::is_irreducible(modulus, p)) throw InvalidArgument("modulus is reducible over F_p");
    return FieldParams{p, d, std::move(modulus)};
  }

  /// Shipped moduli for p in {2,3,5}, d in {1,2,3} (Conway polynomials).
  static FieldParams standard(std::int64_t p, int d) {
    static const std::vector<std::pair<std::pair<int, int>, std::vector<std::int64_t>>> table = {
        {{2, 1}, {1, 1}},    {{2, 2}, {1, 1, 1}},    {{2, 3}, {1, 1, 0, 1}},
        {{3, 1}, {1, 1}},    {{3, 2}, {2, 2, 1}},    {{3, 3}, {1, 2, 0, 1}},
        {{5, 1}, {3, 1}},    {{5, 2}, {2, 4, 1}},    {{5, 3}, {3, 3, 0, 1}},
    };
    for (const auto& [key, mod] : table)
      if (key.first == p && key.second == d) return make(p, mod);
    throw InvalidArgument("no shipped modulus for p=" + std::to_string(p) + ", d=" + std::to_string(d) +
                          "; pass --modulus");
  }

  std::int64_t field_size() const { return int_pow(p, d); }
};

/// The finite field k = F_p[a]/(modulus).
class FFRing {
 public:
  using value_type = FFElem;

  explicit FFRing(FieldParams params) : params_(std::move(params)) {}

  const FieldParams& params() const { return params_; }
  std::int64_t prime() const { return params_.p; }
  std::int64_t characteristic() const { return params_.p; }
  int degree() const { return params_.d; }
  std::int64_t size() const { return params_.field_size(); }

  FFElem zero() const { return {}; }
  FFElem one() const { return from_int(1); }
  FFElem from_int(std::int64_t n) const {
    FFElem r;
    r.c[0] = mod_floor(n, params_.p);
    return r;
  }
  /// Class of the indeterminate (the generator `a`).
  FFElem generator() const {
    if (params_.d == 1) return from_int(-params_.modulus[0]);
    FFElem r;
    r.c[1] = 1;
    return r;
  }

  FFElem add(const FFElem& a, const FFElem& b) const {
    FFElem r;
    for (int i = 0; i < params_.d; ++i) r.c[i] = (a.c[i] + b.c[i]) % params_.p;
    return r;
  }
  FFElem sub(const FFElem& a, const FFElem& b) const {
    FFElem r;
    for (int i = 0; i < params_.d; ++i) r.c[i] = mod_floor(a.c[i] - b.c[i], params_.p);
    return r;
  }
  FFElem neg(const FFElem& a) const { return sub(zero(), a); }
  FFElem mul(const FFElem& a, const FFElem& b) const {
    const int d = params_.d;
    const std::int64_t p = params_.p;
    std::array<std::int64_t, 2 * kMaxDegree> t{};
    for (int i = 0; i < d; ++i) {
      if (a.c[i] == 0) continue;
      for (int j = 0; j < d; ++j) t[i + j] += a.c[i] * b.c[j];
    }
    for (int k = 2 * d - 2; k >= d; --k) {
      const std::int64_t top = t[k] % p;
      if (top == 0) continue;
      for (int i = 0; i < d; ++i) t[k - d + i] -= top * params_.modulus[i];
    }
    FFElem r;
    for (int i = 0; i < d; ++i) r.c[i] = mod_floor(t[i], p);
    return r;
  }
  FFElem scale(const FFElem& a, std::int64_t n) const { return mul(a, from_int(n)); }
  bool is_zero(const FFElem& a) const {
    for (int i = 0; i < params_.d; ++i)
      if (a.c[i] != 0) return false;
    return true;
  }
  bool equal(const FFElem& a, const FFElem& b) const { return a == b; }
  bool is_unit(const FFElem& a) const { return !is_zero(a); }

  FFElem pow(const FFElem& a, std::uint64_t e) const { return ring_pow(*this, a, e); }
  FFElem frobenius(const FFElem& a) const { return pow(a, static_cast<std::uint64_t>(params_.p)); }
  FFElem inv(const FFElem& a) const {
    if (is_zero(a)) throw NotAUnit("inverse of 0 in k");
    return pow(a, static_cast<std::uint64_t>(size() - 2));
  }
  /// Unique r with r^p = a.
  FFElem pth_root(const FFElem& a) const {
    FFElem r = a;
    for (int i = 1; i < params_.d; ++i) r = frobenius(r);
    return r;
  }

  /// Absolute trace Tr_{k/F_p}, as an element of the prime field.
  FFElem trace(const FFElem& a) const { return from_int(trace_int(a)); }
  std::int64_t trace_int(const FFElem& a) const {
    FFElem acc = zero();
    FFElem conj = a;
    for (int i = 0; i < params_.d; ++i) {
      acc = add(acc, conj);
      conj = frobenius(conj);
    }
    return acc.c[0];
  }

  /// Solves w^p - w = b; returns nullopt when Tr(b) != 0.
  std::optional<FFElem> solve_artin_schreier(const FFElem& b) const {
    const int d = params_.d;
    const std::int64_t p = params_.p;
    // Columns are images of the basis vectors under w -> w^p - w.
    std::vector<std::vector<std::int64_t>> mat(d, std::vector<std::int64_t>(d + 1, 0));
    for (int col = 0; col < d; ++col) {
      FFElem e;
      e.c[col] = 1;
      const FFElem img = sub(frobenius(e), e);
      for (int row = 0; row < d; ++row) mat[row][col] = img.c[row];
    }
    for (int row = 0; row < d; ++row) mat[row][d] = b.c[row];
    std::vector<int> pivot_col;
    int row = 0;
    for (int col = 0; col < d && row < d; ++col) {
      int sel = -1;
      for (int r = row; r < d; ++r)
        if (mat[r][col] != 0) {
          sel = r;
          break;
        }
      if (sel < 0) continue;
      std::swap(mat[row], mat[sel]);
      const std::int64_t iv = inv_mod(mat[row][col], p);
      for (auto& v : mat[row]) v = v * iv % p;
      for (int r = 0; r < d; ++r) {
        if (r == row || mat[r][col] == 0) continue;
        const std::int64_t f = mat[r][col];
        for (int c = 0; c <= d; ++c) mat[r][c] = mod_floor(mat[r][c] - f * mat[row][c], p);
      }
      pivot_col.push_back(col);
      ++row;
    }
    for (int r = row; r < d; ++r)
      if (mat[r][d] != 0) return std::nullopt;
    FFElem w;
    for (int r = 0; r < row; ++r) w.c[pivot_col[r]] = mat[r][d];
    return w;
  }

  /// Elements enumerated by base-p digits of the index.
  FFElem element(std::int64_t index) const {
    FFElem r;
    for (int i = 0; i < params_.d; ++i) {
      r.c[i] = index % params_.p;
      index /= params_.p;
    }
    return r;
  }
  std::int64_t index_of(const FFElem& a) const {
    std::int64_t idx = 0;
    for (int i = params_.d - 1; i >= 0; --i) idx = idx * params_.p + a.c[i];
    return idx;
  }

 private:
  FieldParams params_;
};

/// Z_q / p^N = (Z/p^N)[a]/(modulus), the truncated Witt vectors W(k).
class ZqRing {
 public:
  using value_type = ZqElem;

  ZqRing(FieldParams params, int precision) : field_(params), params_(std::move(params)), n_(precision) {
    if (n_ < 1) throw InvalidArgument("p-adic precision must be >= 1");
    BigInt q = 1;
    for (int i = 0; i < n_; ++i) q *= params_.p;
    if (q > BigInt(1) << 31) throw InvalidArgument("p^N too large for 64-bit kernels");
    q_ = static_cast<std::int64_t>(q);
    init_sigma();
    init_teichmuller_table();
  }

  const FieldParams& params() const { return params_; }
  const FFRing& field() const { return field_; }
  int precision() const { return n_; }
  std::int64_t modulus() const { return q_; }
  std::int64_t prime() const { return params_.p; }
  std::int64_t characteristic() const { return q_; }
  int degree() const { return params_.d; }
  ZqRing with_precision(int n) const { return ZqRing(params_, n); }

  ZqElem zero() const { return {}; }
  ZqElem one() const { return from_int(1); }
  ZqElem from_int(std::int64_t n) const {
    ZqElem r;
    r.c[0] = mod_floor(n, q_);
    return r;
  }
  ZqElem generator() const {
    if (params_.d == 1) return from_int(-params_.modulus[0]);
    ZqElem r;
    r.c[1] = 1;
    return r;
  }

  ZqElem add(const ZqElem& a, const ZqElem& b) const {
    ZqElem r;
    for (int i = 0; i < params_.d; ++i) r.c[i] = (a.c[i] + b.c[i]) % q_;
    return r;
  }
  ZqElem sub(const ZqElem& a, const ZqElem& b) const {
    ZqElem r;
    for (int i = 0; i < params_.d; ++i) r.c[i] = mod_floor(a.c[i] - b.c[i], q_);
    return r;
  }
  ZqElem neg(const ZqElem& a) const { return sub(zero(), a); }
  ZqElem mul(const ZqElem& a, const ZqElem& b) const {
    const int d = params_.d;
    std::array<std::int64_t, 2 * kMaxDegree> t{};
    for (int i = 0; i < d; ++i) {
      if (a.c[i] == 0) continue;
      for (int j = 0; j < d; ++j) t[i + j] = (t[i + j] + a.c[i] * b.c[j]) % q_;
    }
    for (int k = 2 * d - 2; k >= d; --k) {
      const std::int64_t top = t[k];
      if (top == 0) continue;
      for (int i = 0; i < d; ++i) t[k - d + i] = (t[k - d + i] - top * params_.modulus[i]) % q_;
    }
    ZqElem r;
    for (int i = 0; i < d; ++i) r.c[i] = mod_floor(t[i], q_);
    return r;
  }
  ZqElem scale(const ZqElem& a, std::int64_t n) const {
    const std::int64_t s = mod_floor(n, q_);
    ZqElem r;
    for (int i = 0; i < params_.d; ++i) r.c[i] = a.c[i] * s % q_;
    return r;
  }
  bool is_zero(const ZqElem& a) const {
    for (int i = 0; i < params_.d; ++i)
      if (a.c[i] != 0) return false;
    return true;
  }
  bool equal(const ZqElem& a, const ZqElem& b) const { return a == b; }
  bool is_unit(const ZqElem& a) const { return !field_.is_zero(reduce(a)); }
  ZqElem pow(const ZqElem& a, std::uint64_t e) const { return ring_pow(*this, a, e); }

  ZqElem inv(const ZqElem& a) const {
    if (!is_unit(a)) throw NotAUnit("element of Z_q is not a unit");
    ZqElem y = lift(field_.inv(reduce(a)));
    const ZqElem two = from_int(2);
    for (int i = 0; i < n_; ++i) y = mul(y, sub(two, mul(a, y)));
    return y;
  }

  /// Reduction mod p into k.
  FFElem reduce(const ZqElem& a) const {
    FFElem r;
    for (int i = 0; i < params_.d; ++i) r.c[i] = a.c[i] % params_.p;
    return r;
  }
  /// Coefficientwise lift with digits in [0, p).
  ZqElem lift(const FFElem& a) const {
    ZqElem r;
    for (int i = 0; i < params_.d; ++i) r.c[i] = a.c[i];
    return r;
  }
  /// Lift along the inclusion Z/p^M -> Z/p^N of the canonical representatives.
  ZqElem embed(const ZqElem& a) const {
    ZqElem r;
    for (int i = 0; i < params_.d; ++i) r.c[i] = mod_floor(a.c[i], q_);
    return r;
  }

  /// Teichmüller lift: the unique t = a mod p with t^{p^d} = t.
  ZqElem teichmuller(const FFElem& a) const {
    if (!teich_table_.empty()) return teich_table_[static_cast<std::size_t>(field_.index_of(a))];
    return compute_teichmuller(a);
  }

  /// The Frobenius automorphism sigma of Z_q (lift of x -> x^p).
  ZqElem sigma(const ZqElem& z) const {
    ZqElem acc = zero();
    for (int i = 0; i < params_.d; ++i) {
      if (z.c[i] == 0) continue;
      acc = add(acc, scale(sigma_powers_[i], z.c[i]));
    }
    return acc;
  }

  /// Tr_{W(k)/W(F_p)} as an integer mod p^N.
  std::int64_t trace(const ZqElem& z) const {
    ZqElem acc = zero();
    ZqElem conj = z;
    for (int i = 0; i < params_.d; ++i) {
      acc = add(acc, conj);
      conj = sigma(conj);
    }
    return acc.c[0];
  }

  /// p-adic valuation (minimum over coefficients), N for zero.
  int valuation(const ZqElem& z) const {
    int v = n_;
    for (int i = 0; i < params_.d; ++i) v = std::min(v, vp_int(z.c[i], params_.p, n_));
    return v;
  }

  /// z / p^h; throws DivisibilityError unless p^h | z. The result is meaningful mod p^{N-h}.
  ZqElem div_p_pow(const ZqElem& z, int h) const {
    const std::int64_t ph = int_pow(params_.p, h);
    ZqElem r;
    for (int i = 0; i < params_.d; ++i) {
      if (z.c[i] % ph != 0)
        throw DivisibilityError("component not divisible by p^" + std::to_string(h) + " in Z_q/p^" +
                                std::to_string(n_));
      r.c[i] = z.c[i] / ph;
    }
    return r;
  }

  /// Witt coordinates (a_0, ..., a_{m-1}) of z under W_m(k) = Z_q/p^m, z = sum p^i [a_i^{p^-i}].
  std::vector<FFElem> teich_digits(ZqElem z, int m) const {
    if (m > n_) throw InvalidArgument("teich_digits: length exceeds precision");
    std::vector<FFElem> out;
    out.reserve(static_cast<std::size_t>(m));
    for (int i = 0; i < m; ++i) {
      const FFElem b = reduce(z);
      FFElem a = b;
      for (int k = 0; k < i; ++k) a = field_.frobenius(a);
      out.push_back(a);
      if (i + 1 < m) z = div_p_pow(sub(z, teichmuller(b)), 1);
    }
    return out;
  }

  /// Inverse of teich_digits, landing in this ring.
  ZqElem from_teich_digits(const std::vector<FFElem>& digits) const {
    ZqElem acc = zero();
    std::int64_t ph = 1;
    for (std::size_t i = 0; i < digits.size() && static_cast<int>(i) < n_; ++i) {
      FFElem root = digits[i];
      for (std::size_t k = 0; k < i; ++k) root = field_.pth_root(root);
      acc = add(acc, scale(teichmuller(root), ph));
      ph *= params_.p;
    }
    return acc;
  }

  /// Reduction of z modulo p^m (coefficients in [0, p^m)).
  ZqElem truncate(const ZqElem& z, int m) const {
    const std::int64_t pm = int_pow(params_.p, std::min(m, n_));
    ZqElem r;
    for (int i = 0; i < params_.d; ++i) r.c[i] = z.c[i] % pm;
    return r;
  }

 private:
  ZqElem compute_teichmuller(const FFElem& a) const {
    ZqElem t = lift(a);
    const auto q = static_cast<std::uint64_t>(params_.field_size());
    for (int i = 0; i <= n_; ++i) t = pow(t, q);
    return t;
  }

  void init_teichmuller_table() {
    const std::int64_t size = params_.field_size();
    if (size > 4096) return;
    teich_table_.reserve(static_cast<std::size_t>(size));
    for (std::int64_t i = 0; i < size; ++i) teich_table_.push_back(compute_teichmuller(field_.element(i)));
  }

  ZqElem eval_modulus(const ZqElem& x, bool derivative) const {
    ZqElem acc = zero();
    const int d = params_.d;
    for (int i = d; i >= (derivative ? 1 : 0); --i) {
      const std::int64_t coeff = derivative ? params_.modulus[i] * i : params_.modulus[i];
      acc = add(mul(acc, x), from_int(coeff));
    }
    return acc;
  }

  // sigma(a) is the root of the lifted modulus congruent to a^p, found by Newton iteration.
  void init_sigma() {
    const ZqElem gen = generator();
    ZqElem r = pow(gen, static_cast<std::uint64_t>(params_.p));
    if (params_.d > 1) {
      for (int i = 0; i <= n_ + 1; ++i) r = sub(r, mul(eval_modulus(r, false), inv(eval_modulus(r, true))));
    } else {
      r = gen;
    }
    sigma_powers_.assign(static_cast<std::size_t>(params_.d), one());
    for (int i = 1; i < params_.d; ++i) sigma_powers_[i] = mul(sigma_powers_[i - 1], r);
  }

  FFRing field_;
  FieldParams params_;
  int n_;
  std::int64_t q_ = 0;
  std::vector<ZqElem> sigma_powers_;
  std::vector<ZqElem> teich_table_;
};

/// beta = [alpha] with Tr(alpha) != 0; the smallest such alpha in enumeration order.
struct Beta {
  FFElem alpha;
  ZqElem beta;
};

inline Beta make_beta(const ZqRing& zq) {
  const FFRing& k = zq.field();
  for (std::int64_t i = 1; i < k.size(); ++i) {
    const FFElem a = k.element(i);
    if (k.trace_int(a) != 0) return Beta{a, zq.teichmuller(a)};
  }
  throw InvalidArgument("no element of nonzero trace");  // unreachable: the trace is surjective
}

}  // namespace asw
