#pragma once

// Text syntax shared by the command line and the round-trip tests.
//
//   expr    := term (('+' | '-') term)*
//   term    := factor ('*' factor)*
//   factor  := '-' factor | atom ('^' ['-'] INT)?
//   atom    := INT | 'a' | 'S' | 'T' | 'beta' | '(' expr ')' | '[' expr (',' expr)* ']' | '{' expr ',' expr '}'
//
// A Witt vector is a bracket list; a canonical class is c*beta + sum (coef)*[S^-i*T^-j]; a symbol
// is a product of braces with integer exponents (or the literal 1).

#include <cctype>
#include <cstdint>
#include <limits>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "asw/asw_reduce.hpp"
#include "asw/errors.hpp"
#include "asw/milnor.hpp"
#include "asw/ring_tower.hpp"
#include "asw/series.hpp"

namespace asw {

struct Node {
  enum class Kind { Int, Var, Add, Sub, Neg, Mul, Pow, Bracket, Braces };
  Kind kind = Kind::Int;
  std::int64_t value = 0;  // Int literal or Pow exponent
  std::string name;        // Var
  std::vector<std::shared_ptr<const Node>> kids;
  int line = 1;
  int column = 1;
};
using NodePtr = std::shared_ptr<const Node>;

class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  NodePtr parse() {
    NodePtr n = expr();
    skip_space();
    if (pos_ < text_.size()) fail("unexpected '" + std::string(1, text_[pos_]) + "'");
    return n;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const { throw ParseError(what, line_, column_); }

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) advance();
  }
  void advance() {
    if (text_[pos_] == '\n') {
      ++line_;
      column_ = 1;
    } else {
      ++column_;
    }
    ++pos_;
  }
  bool accept(char c) {
    skip_space();
    if (pos_ < text_.size() && text_[pos_] == c) {
      advance();
      return true;
    }
    return false;
  }
  void expect(char c) {
    if (!accept(c)) fail(std::string("expected '") + c + "'");
  }

  std::shared_ptr<Node> make(Node::Kind kind) const {
    auto n = std::make_shared<Node>();
    n->kind = kind;
    n->line = line_;
    n->column = column_;
    return n;
  }

  std::int64_t integer() {
    skip_space();
    if (pos_ >= text_.size() || !std::isdigit(static_cast<unsigned char>(text_[pos_]))) fail("expected an integer");
    std::int64_t v = 0;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
      const int digit = text_[pos_] - '0';
      if (v > (std::numeric_limits<std::int64_t>::max() - digit) / 10) fail("integer literal too large");
      v = v * 10 + digit;
      advance();
    }
    return v;
  }

  NodePtr expr() {
    NodePtr lhs = term();
    while (true) {
      skip_space();
      auto op = make(Node::Kind::Add);
      if (accept('+')) {
      } else if (accept('-')) {
        op->kind = Node::Kind::Sub;
      } else {
        return lhs;
      }
      op->kids = {lhs, term()};
      lhs = op;
    }
  }

  NodePtr term() {
    NodePtr lhs = factor();
    while (true) {
      skip_space();
      auto op = make(Node::Kind::Mul);
      if (!accept('*')) return lhs;
      op->kids = {lhs, factor()};
      lhs = op;
    }
  }

  NodePtr factor() {
    skip_space();
    auto neg = make(Node::Kind::Neg);
    if (accept('-')) {
      neg->kids = {factor()};
      return neg;
    }
    NodePtr base = atom();
    skip_space();
    auto pw = make(Node::Kind::Pow);
    if (!accept('^')) return base;
    const bool negative = accept('-');
    pw->value = negative ? -integer() : integer();
    pw->kids = {base};
    return pw;
  }

  NodePtr atom() {
    skip_space();
    if (pos_ >= text_.size()) fail("unexpected end of input");
    const char c = text_[pos_];
    if (std::isdigit(static_cast<unsigned char>(c))) {
      auto n = make(Node::Kind::Int);
      n->value = integer();
      return n;
    }
    if (std::isalpha(static_cast<unsigned char>(c))) {
      auto n = make(Node::Kind::Var);
      while (pos_ < text_.size() && std::isalpha(static_cast<unsigned char>(text_[pos_]))) {
        n->name.push_back(text_[pos_]);
        advance();
      }
      if (n->name != "a" && n->name != "S" && n->name != "T" && n->name != "beta")
        throw ParseError("unknown identifier '" + n->name + "'", n->line, n->column);
      return n;
    }
    if (accept('(')) {
      NodePtr inner = expr();
      expect(')');
      return inner;
    }
    auto n = make(Node::Kind::Bracket);
    if (accept('[')) {
      n->kids.push_back(expr());
      while (accept(',')) n->kids.push_back(expr());
      expect(']');
      return n;
    }
    if (accept('{')) {
      n->kind = Node::Kind::Braces;
      n->kids.push_back(expr());
      expect(',');
      n->kids.push_back(expr());
      expect('}');
      return n;
    }
    fail("unexpected '" + std::string(1, c) + "'");
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  int line_ = 1;
  int column_ = 1;
};

inline NodePtr parse_expression(std::string_view text) { return Parser(text).parse(); }

namespace detail {

[[noreturn]] inline void node_error(const Node& n, const std::string& what) { throw ParseError(what, n.line, n.column); }

/// Evaluates a series expression over `ring` (exact). `bracket` handles '[...]' atoms.
template <CommutativeRing C, class Bracket>
Series2<typename C::value_type> eval_series(const SeriesRing<C>& ring, const Node& n, const typename C::value_type& gen,
                                            const std::optional<typename C::value_type>& beta, Bracket&& bracket) {
  auto rec = [&](const NodePtr& k) { return eval_series(ring, *k, gen, beta, bracket); };
  switch (n.kind) {
    case Node::Kind::Int:
      return ring.from_int(n.value);
    case Node::Kind::Var:
      if (n.name == "a") return ring.constant(gen);
      if (n.name == "S") return ring.S();
      if (n.name == "T") return ring.T();
      if (!beta) node_error(n, "'beta' is only meaningful in a canonical class");
      return ring.constant(*beta);
    case Node::Kind::Add:
      return ring.add(rec(n.kids[0]), rec(n.kids[1]));
    case Node::Kind::Sub:
      return ring.sub(rec(n.kids[0]), rec(n.kids[1]));
    case Node::Kind::Neg:
      return ring.neg(rec(n.kids[0]));
    case Node::Kind::Mul:
      return ring.mul(rec(n.kids[0]), rec(n.kids[1]));
    case Node::Kind::Pow: {
      const auto base = rec(n.kids[0]);
      if (n.value >= 0) return ring.pow(base, static_cast<std::uint64_t>(n.value));
      if (base.term_count() != 1) node_error(n, "negative powers are only allowed for monomials");
      try {
        return ring.pow(ring.inv_unit(base), static_cast<std::uint64_t>(-n.value));
      } catch (const NotAUnit&) {
        node_error(n, "monomial coefficient is not invertible");
      }
    }
    case Node::Kind::Bracket:
      return bracket(n);
    case Node::Kind::Braces:
      node_error(n, "a symbol cannot appear inside a series");
  }
  node_error(n, "malformed expression");
}

inline KSeries eval_k(const FFRing& k, const Node& n) {
  const KRing F(k);
  return eval_series(F, n, k.generator(), std::nullopt,
                     [](const Node& b) -> KSeries { node_error(b, "'[' is not allowed inside a series"); });
}

}  // namespace detail

inline KSeries parse_series(const FFRing& k, std::string_view text) { return detail::eval_k(k, *parse_expression(text)); }

/// "[x0, x1, ...]", padded with zeros to length m.
inline WittVec<KSeries> parse_witt(const FFRing& k, int m, std::string_view text) {
  const NodePtr root = parse_expression(text);
  if (root->kind != Node::Kind::Bracket) detail::node_error(*root, "a Witt vector must be written [x0, x1, ...]");
  if (static_cast<int>(root->kids.size()) > m)
    detail::node_error(*root, "Witt vector has more than " + std::to_string(m) + " coordinates");
  WittVec<KSeries> out;
  for (const auto& kid : root->kids) out.coords.push_back(detail::eval_k(k, *kid));
  out.coords.resize(static_cast<std::size_t>(m));
  return out;
}

/// Canonical class c*beta + sum (coef)*[S^-i*T^-j] over Z_q/p^m.
inline CanonicalASW parse_canonical(const ZqRing& zq, std::string_view text) {
  const NodePtr root = parse_expression(text);
  const ZRing R(zq);
  const Beta beta = make_beta(zq);
  const auto bracket = [&](const Node& b) -> ZSeries {
    if (b.kids.size() != 1) detail::node_error(b, "a Teichmüller term is written [S^e*T^f]");
    const auto inner = detail::eval_series(R, *b.kids[0], zq.generator(), std::nullopt,
                                           [](const Node& bb) -> ZSeries { detail::node_error(bb, "nested '['"); });
    if (inner.term_count() != 1) detail::node_error(b, "a Teichmüller term must be a monic monomial in S and T");
    const auto& [s, line] = *inner.comps.begin();
    const auto& [t, c] = *line.terms.begin();
    if (!zq.equal(c, zq.one())) detail::node_error(b, "a Teichmüller term must be a monic monomial in S and T");
    return R.monomial(zq.one(), s, t);
  };
  const ZSeries f = detail::eval_series(R, *root, zq.generator(), beta.beta, bracket);
  CanonicalASW out;
  const std::int64_t p = zq.prime();
  bool ok = true;
  f.for_each_term([&](int s, int t, const ZqElem& c) {
    if (s == 0 && t == 0) {
      const ZqElem q = zq.mul(c, zq.inv(beta.beta));
      for (int i = 1; i < zq.degree(); ++i) ok = ok && q.c[i] == 0;
      out.c = q.c[0];
    } else if (!is_canonical_key(-s, -t, p)) {
      throw ParseError("term S^" + std::to_string(s) + "*T^" + std::to_string(t) + " is not a canonical index",
                       root->line, root->column);
    } else {
      out.terms.emplace(CanonKey{-s, -t}, c);
    }
  });
  if (!ok) throw ParseError("constant term is not a Z/p^m multiple of beta", root->line, root->column);
  return out;
}

/// Product of symbols "{f,g}^n * ..." (or "1"), normalized.
inline CanonicalK2 parse_symbol(const K2Group& grp, std::string_view text, const PrecisionWindow& window) {
  const NodePtr root = parse_expression(text);
  const FFRing& k = grp.field();
  CanonicalK2 acc;
  std::vector<std::pair<NodePtr, std::int64_t>> factors;
  auto collect = [&](auto&& self, const NodePtr& n) -> void {
    if (n->kind == Node::Kind::Mul) {
      self(self, n->kids[0]);
      self(self, n->kids[1]);
    } else if (n->kind == Node::Kind::Pow && n->kids[0]->kind == Node::Kind::Braces) {
      factors.emplace_back(n->kids[0], n->value);
    } else if (n->kind == Node::Kind::Braces) {
      factors.emplace_back(n, 1);
    } else if (n->kind == Node::Kind::Int && n->value == 1) {
    } else {
      detail::node_error(*n, "expected a symbol {f, g}");
    }
  };
  collect(collect, root);
  for (const auto& [node, e] : factors) {
    const KSeries f = detail::eval_k(k, *node->kids[0]);
    const KSeries g = detail::eval_k(k, *node->kids[1]);
    if (f.vanishes() || g.vanishes()) detail::node_error(*node, "symbol entries must be nonzero");
    acc = grp.merge(acc, grp.power(normalize_symbol(grp, f, g, window), e));
  }
  return acc;
}

}  // namespace asw
