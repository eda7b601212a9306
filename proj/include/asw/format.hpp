#pragma once

// Text rendering. Every printed CanonicalASW / CanonicalK2 parses back to an equal value.

#include <cstdint>
#include <sstream>
#include <string>
#include <vector>

#include "asw/asw_reduce.hpp"
#include "asw/milnor.hpp"
#include "asw/ramification.hpp"
#include "asw/ring_tower.hpp"
#include "asw/series.hpp"

namespace asw {

namespace detail {

// Polynomial in the generator a, highest degree first.
template <class Coeffs>
std::string poly_in_a(const Coeffs& c, int d) {
  std::string out;
  for (int i = d - 1; i >= 0; --i) {
    const std::int64_t v = c[static_cast<std::size_t>(i)];
    if (v == 0) continue;
    if (!out.empty()) out += " + ";
    if (i == 0) {
      out += std::to_string(v);
      continue;
    }
    if (v != 1) out += std::to_string(v) + "*";
    out += i == 1 ? "a" : "a^" + std::to_string(i);
  }
  return out.empty() ? "0" : out;
}

inline std::string monomial(int s, int t) {
  std::string out;
  auto var = [&](const char* name, int e) {
    if (e == 0) return;
    if (!out.empty()) out += "*";
    out += name;
    if (e != 1) out += "^" + std::to_string(e);
  };
  var("S", s);
  var("T", t);
  return out.empty() ? "1" : out;
}

}  // namespace detail

inline std::string to_string(const FFRing& k, const FFElem& a) { return detail::poly_in_a(a.c, k.degree()); }
inline std::string to_string(const ZqRing& zq, const ZqElem& a) { return detail::poly_in_a(a.c, zq.degree()); }

inline std::string to_string(const ZqRing& zq, const CanonicalASW& x) {
  std::vector<std::string> parts;
  if (x.c != 0) parts.push_back(std::to_string(x.c) + "*beta");
  for (const auto& [key, coef] : x.terms)
    parts.push_back("(" + to_string(zq, coef) + ")*[" + detail::monomial(-key.first, -key.second) + "]");
  if (parts.empty()) return "0";
  std::string out = parts[0];
  for (std::size_t i = 1; i < parts.size(); ++i) out += " + " + parts[i];
  return out;
}

inline std::string to_string(const FFRing& k, const CanonicalK2& y) {
  std::vector<std::string> parts;
  if (y.e != 0) parts.push_back("{S,T}^" + std::to_string(y.e));
  for (const auto& g : y.gens)
    parts.push_back("{1 + (" + to_string(k, g.a) + ")*" + detail::monomial(g.i, g.j) + ", " +
                    (g.kind == GenKind::S ? "S" : "T") + "}^" + std::to_string(g.n));
  if (parts.empty()) return "1";
  std::string out = parts[0];
  for (std::size_t i = 1; i < parts.size(); ++i) out += " * " + parts[i];
  return out;
}

/// Known terms inside `window`, S-first order, with an O(.) marker when the series is truncated.
inline std::string to_string(const FFRing& k, const KSeries& f, const PrecisionWindow& window) {
  std::vector<std::string> parts;
  f.for_each_term([&](int s, int t, const FFElem& c) {
    if (!window.contains(s, t)) return;
    const std::string mono = detail::monomial(s, t);
    const std::string coef = to_string(k, c);
    if (mono == "1")
      parts.push_back(coef == "1" || coef.find(' ') == std::string::npos ? coef : "(" + coef + ")");
    else if (coef == "1")
      parts.push_back(mono);
    else
      parts.push_back("(" + coef + ")*" + mono);
  });
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) out += (i ? " + " : "") + parts[i];
  if (out.empty()) out = "0";
  if (!f.exact()) out += " + O(" + window.str() + ")";
  return out;
}

}  // namespace asw
