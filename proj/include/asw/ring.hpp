#pragma once

#include <concepts>
#include <cstdint>
#include <limits>

#include <boost/multiprecision/cpp_int.hpp>

namespace asw {

using BigInt = boost::multiprecision::cpp_int;

// A ring is described by a ring object that owns the parameters; values are plain data.
template <class R>
concept CommutativeRing = requires(const R& r, const typename R::value_type& a, std::int64_t n) {
  typename R::value_type;
  { r.zero() } -> std::convertible_to<typename R::value_type>;
  { r.one() } -> std::convertible_to<typename R::value_type>;
  { r.from_int(n) } -> std::convertible_to<typename R::value_type>;
  { r.add(a, a) } -> std::convertible_to<typename R::value_type>;
  { r.sub(a, a) } -> std::convertible_to<typename R::value_type>;
  { r.neg(a) } -> std::convertible_to<typename R::value_type>;
  { r.mul(a, a) } -> std::convertible_to<typename R::value_type>;
  { r.is_zero(a) } -> std::convertible_to<bool>;
  { r.equal(a, a) } -> std::convertible_to<bool>;
  { r.characteristic() } -> std::convertible_to<std::int64_t>;
  { r.prime() } -> std::convertible_to<std::int64_t>;
};

// Rings of characteristic p expose the absolute Frobenius x -> x^p.
template <class R>
concept CharPRing = CommutativeRing<R> && requires(const R& r, const typename R::value_type& a) {
  { r.frobenius(a) } -> std::convertible_to<typename R::value_type>;
};

template <CommutativeRing R>
typename R::value_type ring_pow(const R& r, typename R::value_type base, std::uint64_t e) {
  auto acc = r.one();
  while (e > 0) {
    if (e & 1U) acc = r.mul(acc, base);
    e >>= 1U;
    if (e > 0) base = r.mul(base, base);
  }
  return acc;
}

/// x^(p^h); uses the Frobenius when the ring has characteristic p.
template <CommutativeRing R>
typename R::value_type pow_p_power(const R& r, typename R::value_type x, int h) {
  if constexpr (CharPRing<R>) {
    for (int i = 0; i < h; ++i) x = r.frobenius(x);
    return x;
  } else {
    for (int i = 0; i < h; ++i) x = ring_pow(r, x, static_cast<std::uint64_t>(r.prime()));
    return x;
  }
}

/// Maps an arbitrary integer into the ring through its characteristic.
template <CommutativeRing R>
typename R::value_type from_bigint(const R& r, const BigInt& n) {
  const std::int64_t ch = r.characteristic();
  if (ch > 0) {
    BigInt red = n % ch;
    if (red < 0) red += ch;
    return r.from_int(static_cast<std::int64_t>(red));
  }
  return r.from_int(static_cast<std::int64_t>(n));
}

inline std::int64_t mod_floor(std::int64_t a, std::int64_t m) {
  const std::int64_t r = a % m;
  return r < 0 ? r + m : r;
}

inline std::int64_t int_pow(std::int64_t b, int e) {
  std::int64_t acc = 1;
  for (int i = 0; i < e; ++i) acc *= b;
  return acc;
}

inline bool is_prime(std::int64_t n) {
  if (n < 2) return false;
  for (std::int64_t f = 2; f * f <= n; ++f)
    if (n % f == 0) return false;
  return true;
}

/// Inverse of a unit modulo m (extended Euclid).
inline std::int64_t inv_mod(std::int64_t a, std::int64_t m) {
  std::int64_t r0 = m, r1 = mod_floor(a, m), s0 = 0, s1 = 1;
  while (r1 != 0) {
    const std::int64_t q = r0 / r1;
    std::int64_t t = r0 - q * r1;
    r0 = r1;
    r1 = t;
    t = s0 - q * s1;
    s0 = s1;
    s1 = t;
  }
  return mod_floor(s0, m);
}

/// p-adic valuation of a nonzero integer; returns cap for zero.
inline int vp_int(std::int64_t n, std::int64_t p, int cap) {
  if (n == 0) return cap;
  int v = 0;
  while (n % p == 0 && v < cap) {
    n /= p;
    ++v;
  }
  return v;
}

}  // namespace asw
