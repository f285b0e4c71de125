#pragma once

// Shared predicate/expression trees used by models, obligations, and the prover.

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace ebhint {

// An identifier occurrence. Primed and unprimed versions are distinct symbols.
struct Symbol {
  std::string name;
  bool primed = false;

  Symbol() = default;
  Symbol(std::string n, bool p = false) : name(std::move(n)), primed(p) {}

  std::string str() const { return primed ? name + "'" : name; }

  Symbol withPrime() const {
    if (primed) {
      throw std::logic_error("identifier is already primed: " + str());
    }
    return Symbol{name, true};
  }
  Symbol withoutPrime() const { return Symbol{name, false}; }

  friend bool operator==(const Symbol&, const Symbol&) = default;
  friend auto operator<=>(const Symbol&, const Symbol&) = default;
};

enum class CmpOp { Eq, Ne, Lt, Le, Gt, Ge };

enum class Kind {
  // predicates
  True,
  False,
  Not,
  And,
  Or,
  Implies,
  Iff,
  Compare,
  Member,
  Exists,
  Forall,
  // expressions
  Literal,
  Ident,
  Negate,
  Add,
  Sub,
  Mul,
  SetLiteral,
  Naturals,
  Integers,
};

inline bool isPredicateKind(Kind k) { return k <= Kind::Forall; }
inline bool isSetKind(Kind k) {
  return k == Kind::SetLiteral || k == Kind::Naturals || k == Kind::Integers;
}

inline CmpOp negated(CmpOp op) {
  switch (op) {
    case CmpOp::Eq: return CmpOp::Ne;
    case CmpOp::Ne: return CmpOp::Eq;
    case CmpOp::Lt: return CmpOp::Ge;
    case CmpOp::Le: return CmpOp::Gt;
    case CmpOp::Gt: return CmpOp::Le;
    case CmpOp::Ge: return CmpOp::Lt;
  }
  return op;
}

// Immutable handle to a formula node. Copies share structure.
class Formula {
 public:
  struct Node {
    Kind kind = Kind::True;
    std::vector<Formula> kids;
    Symbol symbol;              // Ident
    std::vector<Symbol> bound;  // Exists / Forall
    std::int64_t value = 0;     // Literal
    CmpOp op = CmpOp::Eq;       // Compare
  };

  Formula() : Formula(makeNode(Kind::True)) {}

  Kind kind() const { return node_->kind; }
  const std::vector<Formula>& kids() const { return node_->kids; }
  const Formula& kid(std::size_t i) const { return node_->kids.at(i); }
  const Symbol& symbol() const { return node_->symbol; }
  const std::vector<Symbol>& bound() const { return node_->bound; }
  std::int64_t value() const { return node_->value; }
  CmpOp op() const { return node_->op; }
  bool isPredicate() const { return isPredicateKind(kind()); }
  bool isExpression() const { return !isPredicate(); }

  // predicates
  static Formula truth() { return Formula(makeNode(Kind::True)); }
  static Formula falsity() { return Formula(makeNode(Kind::False)); }
  static Formula negation(Formula p) { return withKids(Kind::Not, {std::move(p)}); }
  static Formula conjunction(std::vector<Formula> ps) {
    return withKids(Kind::And, std::move(ps));
  }
  static Formula disjunction(std::vector<Formula> ps) {
    return withKids(Kind::Or, std::move(ps));
  }
  static Formula implies(Formula a, Formula b) {
    return withKids(Kind::Implies, {std::move(a), std::move(b)});
  }
  static Formula iff(Formula a, Formula b) {
    return withKids(Kind::Iff, {std::move(a), std::move(b)});
  }
  static Formula compare(CmpOp op, Formula a, Formula b) {
    auto n = makeNode(Kind::Compare);
    n->op = op;
    n->kids = {std::move(a), std::move(b)};
    return Formula(std::move(n));
  }
  static Formula member(Formula element, Formula set) {
    return withKids(Kind::Member, {std::move(element), std::move(set)});
  }
  static Formula exists(std::vector<Symbol> vars, Formula body) {
    return quantifier(Kind::Exists, std::move(vars), std::move(body));
  }
  static Formula forall(std::vector<Symbol> vars, Formula body) {
    return quantifier(Kind::Forall, std::move(vars), std::move(body));
  }
  static Formula quantifier(Kind k, std::vector<Symbol> vars, Formula body) {
    auto n = makeNode(k);
    n->bound = std::move(vars);
    n->kids = {std::move(body)};
    return Formula(std::move(n));
  }

  // expressions
  static Formula literal(std::int64_t v) {
    auto n = makeNode(Kind::Literal);
    n->value = v;
    return Formula(std::move(n));
  }
  static Formula ident(Symbol s) {
    auto n = makeNode(Kind::Ident);
    n->symbol = std::move(s);
    return Formula(std::move(n));
  }
  static Formula ident(std::string name, bool primed = false) {
    return ident(Symbol{std::move(name), primed});
  }
  static Formula negate(Formula e) { return withKids(Kind::Negate, {std::move(e)}); }
  static Formula add(Formula a, Formula b) {
    return withKids(Kind::Add, {std::move(a), std::move(b)});
  }
  static Formula sub(Formula a, Formula b) {
    return withKids(Kind::Sub, {std::move(a), std::move(b)});
  }
  static Formula mul(Formula a, Formula b) {
    return withKids(Kind::Mul, {std::move(a), std::move(b)});
  }
  static Formula setLiteral(std::vector<Formula> elements) {
    return withKids(Kind::SetLiteral, std::move(elements));
  }
  static Formula naturals() { return Formula(makeNode(Kind::Naturals)); }
  static Formula integers() { return Formula(makeNode(Kind::Integers)); }

  // Rebuilds this node with replaced children, keeping every other field.
  Formula withChildren(std::vector<Formula> kids) const {
    auto n = std::make_shared<Node>(*node_);
    n->kids = std::move(kids);
    return Formula(std::move(n));
  }
  Formula withBound(std::vector<Symbol> vars, Formula body) const {
    return quantifier(kind(), std::move(vars), std::move(body));
  }

  friend bool operator==(const Formula& a, const Formula& b) {
    if (a.node_ == b.node_) return true;
    const Node& x = *a.node_;
    const Node& y = *b.node_;
    return x.kind == y.kind && x.value == y.value && x.op == y.op &&
           x.symbol == y.symbol && x.bound == y.bound && x.kids == y.kids;
  }

 private:
  explicit Formula(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  static std::shared_ptr<Node> makeNode(Kind k) {
    auto n = std::make_shared<Node>();
    n->kind = k;
    return n;
  }
  static Formula withKids(Kind k, std::vector<Formula> kids) {
    auto n = makeNode(k);
    n->kids = std::move(kids);
    return Formula(std::move(n));
  }

  std::shared_ptr<const Node> node_;
};

using Substitution = std::map<Symbol, Formula>;
using Valuation = std::map<Symbol, std::int64_t>;

namespace detail {

inline void collectFree(const Formula& f, std::set<Symbol>& bound, std::set<Symbol>& out) {
  switch (f.kind()) {
    case Kind::Ident:
      if (!bound.count(f.symbol())) out.insert(f.symbol());
      return;
    case Kind::Exists:
    case Kind::Forall: {
      std::vector<Symbol> added;
      for (const auto& s : f.bound()) {
        if (bound.insert(s).second) added.push_back(s);
      }
      collectFree(f.kid(0), bound, out);
      for (const auto& s : added) bound.erase(s);
      return;
    }
    default:
      for (const auto& k : f.kids()) collectFree(k, bound, out);
  }
}

inline void collectAll(const Formula& f, std::set<Symbol>& out) {
  if (f.kind() == Kind::Ident) out.insert(f.symbol());
  for (const auto& s : f.bound()) out.insert(s);
  for (const auto& k : f.kids()) collectAll(k, out);
}

}  // namespace detail

inline std::set<Symbol> freeIdentifiers(const Formula& f) {
  std::set<Symbol> bound, out;
  detail::collectFree(f, bound, out);
  return out;
}

inline bool occursFree(const Symbol& s, const Formula& f) {
  return freeIdentifiers(f).count(s) > 0;
}

// Capture-avoiding simultaneous substitution.
inline Formula substitute(const Formula& f, const Substitution& sub) {
  if (sub.empty()) return f;
  switch (f.kind()) {
    case Kind::Ident: {
      auto it = sub.find(f.symbol());
      return it == sub.end() ? f : it->second;
    }
    case Kind::Exists:
    case Kind::Forall: {
      Substitution inner = sub;
      for (const auto& s : f.bound()) inner.erase(s);
      const std::set<Symbol> bodyFree = freeIdentifiers(f.kid(0));
      std::set<Symbol> imageFree;
      std::set<Symbol> taken;
      detail::collectAll(f.kid(0), taken);
      for (const auto& [from, to] : inner) {
        taken.insert(from);
        if (!bodyFree.count(from)) continue;
        for (const auto& s : freeIdentifiers(to)) imageFree.insert(s);
      }
      for (const auto& s : imageFree) taken.insert(s);
      std::vector<Symbol> vars;
      for (const auto& s : f.bound()) {
        if (!imageFree.count(s)) {
          vars.push_back(s);
          continue;
        }
        Symbol fresh = s;
        for (int i = 1;; ++i) {
          fresh = Symbol{s.name + "_" + std::to_string(i), s.primed};
          if (!taken.count(fresh)) break;
        }
        taken.insert(fresh);
        inner[s] = Formula::ident(fresh);
        vars.push_back(fresh);
      }
      return f.withBound(std::move(vars), substitute(f.kid(0), inner));
    }
    default: {
      if (f.kids().empty()) return f;
      std::vector<Formula> kids;
      kids.reserve(f.kids().size());
      for (const auto& k : f.kids()) kids.push_back(substitute(k, sub));
      return f.withChildren(std::move(kids));
    }
  }
}

// Primes every free occurrence of the named (unprimed) identifiers.
inline Formula prime(const Formula& f, const std::set<std::string>& names) {
  Substitution sub;
  for (const auto& s : freeIdentifiers(f)) {
    if (!s.primed && names.count(s.name)) sub[s] = Formula::ident(s.withPrime());
  }
  return substitute(f, sub);
}

// Flattens nested conjunctions into a list of conjuncts.
inline void conjuncts(const Formula& f, std::vector<Formula>& out) {
  if (f.kind() == Kind::And) {
    for (const auto& k : f.kids()) conjuncts(k, out);
  } else if (f.kind() != Kind::True) {
    out.push_back(f);
  }
}

inline Formula conjoin(std::vector<Formula> ps) {
  if (ps.empty()) return Formula::truth();
  if (ps.size() == 1) return ps.front();
  return Formula::conjunction(std::move(ps));
}

inline Formula disjoin(std::vector<Formula> ps) {
  if (ps.empty()) return Formula::falsity();
  if (ps.size() == 1) return ps.front();
  return Formula::disjunction(std::move(ps));
}

// Evaluates an integer expression; nullopt when an identifier is unvalued
// or the expression is not an integer term.
inline std::optional<std::int64_t> evaluateExpression(const Formula& e, const Valuation& v) {
  auto both = [&](auto fn) -> std::optional<std::int64_t> {
    auto a = evaluateExpression(e.kid(0), v);
    auto b = evaluateExpression(e.kid(1), v);
    if (!a || !b) return std::nullopt;
    std::int64_t r = 0;
    if (fn(*a, *b, &r)) return std::nullopt;
    return r;
  };
  switch (e.kind()) {
    case Kind::Literal: return e.value();
    case Kind::Ident: {
      auto it = v.find(e.symbol());
      if (it == v.end()) return std::nullopt;
      return it->second;
    }
    case Kind::Negate: {
      auto a = evaluateExpression(e.kid(0), v);
      if (!a) return std::nullopt;
      return -*a;
    }
    case Kind::Add:
      return both([](auto a, auto b, auto* r) { return __builtin_add_overflow(a, b, r); });
    case Kind::Sub:
      return both([](auto a, auto b, auto* r) { return __builtin_sub_overflow(a, b, r); });
    case Kind::Mul:
      return both([](auto a, auto b, auto* r) { return __builtin_mul_overflow(a, b, r); });
    default: return std::nullopt;
  }
}

// Evaluates a quantifier-free predicate. Membership in a named carrier set and
// quantifiers are not evaluable and yield nullopt.
inline std::optional<bool> evaluate(const Formula& f, const Valuation& v) {
  switch (f.kind()) {
    case Kind::True: return true;
    case Kind::False: return false;
    case Kind::Not: {
      auto a = evaluate(f.kid(0), v);
      if (!a) return std::nullopt;
      return !*a;
    }
    case Kind::And:
    case Kind::Or: {
      const bool isAnd = f.kind() == Kind::And;
      bool unknown = false;
      for (const auto& k : f.kids()) {
        auto a = evaluate(k, v);
        if (!a) {
          unknown = true;
        } else if (*a != isAnd) {
          return !isAnd;
        }
      }
      if (unknown) return std::nullopt;
      return isAnd;
    }
    case Kind::Implies: {
      auto a = evaluate(f.kid(0), v);
      auto b = evaluate(f.kid(1), v);
      if (a && !*a) return true;
      if (b && *b) return true;
      if (!a || !b) return std::nullopt;
      return false;
    }
    case Kind::Iff: {
      auto a = evaluate(f.kid(0), v);
      auto b = evaluate(f.kid(1), v);
      if (!a || !b) return std::nullopt;
      return *a == *b;
    }
    case Kind::Compare: {
      auto a = evaluateExpression(f.kid(0), v);
      auto b = evaluateExpression(f.kid(1), v);
      if (!a || !b) return std::nullopt;
      switch (f.op()) {
        case CmpOp::Eq: return *a == *b;
        case CmpOp::Ne: return *a != *b;
        case CmpOp::Lt: return *a < *b;
        case CmpOp::Le: return *a <= *b;
        case CmpOp::Gt: return *a > *b;
        case CmpOp::Ge: return *a >= *b;
      }
      return std::nullopt;
    }
    case Kind::Member: {
      auto x = evaluateExpression(f.kid(0), v);
      if (!x) return std::nullopt;
      const Formula& set = f.kid(1);
      switch (set.kind()) {
        case Kind::Naturals: return *x >= 0;
        case Kind::Integers: return true;
        case Kind::SetLiteral: {
          for (const auto& e : set.kids()) {
            auto y = evaluateExpression(e, v);
            if (!y) return std::nullopt;
            if (*y == *x) return true;
          }
          return false;
        }
        default: return std::nullopt;
      }
    }
    default: return std::nullopt;
  }
}

}  // namespace ebhint
