#pragma once

// Reference semantics for test purposes: a direct evaluator over a bounded
// integer box, written independently of the library's own evaluator and
// decision procedure, plus random formula generators.

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "ebhint/formula.hpp"

namespace oracle {

using ebhint::CmpOp;
using ebhint::Formula;
using ebhint::Kind;
using Env = std::map<std::string, long long>;  // "x" or "x'"

inline constexpr long long kLo = -8;
inline constexpr long long kHi = 8;

inline std::string key(const ebhint::Symbol& s) { return s.primed ? s.name + "'" : s.name; }

inline long long term(const Formula& e, const Env& env) {
  switch (e.kind()) {
    case Kind::Literal: return e.value();
    case Kind::Ident: return env.at(key(e.symbol()));
    case Kind::Negate: return -term(e.kid(0), env);
    case Kind::Add: return term(e.kid(0), env) + term(e.kid(1), env);
    case Kind::Sub: return term(e.kid(0), env) - term(e.kid(1), env);
    case Kind::Mul: return term(e.kid(0), env) * term(e.kid(1), env);
    default: throw std::logic_error("oracle: not a term");
  }
}

// Quantifiers range over the box only.
inline bool holds(const Formula& f, const Env& env) {
  switch (f.kind()) {
    case Kind::True: return true;
    case Kind::False: return false;
    case Kind::Not: return !holds(f.kid(0), env);
    case Kind::And:
      for (const auto& k : f.kids()) {
        if (!holds(k, env)) return false;
      }
      return true;
    case Kind::Or:
      for (const auto& k : f.kids()) {
        if (holds(k, env)) return true;
      }
      return false;
    case Kind::Implies: return !holds(f.kid(0), env) || holds(f.kid(1), env);
    case Kind::Iff: return holds(f.kid(0), env) == holds(f.kid(1), env);
    case Kind::Compare: {
      const long long a = term(f.kid(0), env), b = term(f.kid(1), env);
      switch (f.op()) {
        case CmpOp::Eq: return a == b;
        case CmpOp::Ne: return a != b;
        case CmpOp::Lt: return a < b;
        case CmpOp::Le: return a <= b;
        case CmpOp::Gt: return a > b;
        case CmpOp::Ge: return a >= b;
      }
      return false;
    }
    case Kind::Member: {
      const long long a = term(f.kid(0), env);
      const Formula& s = f.kid(1);
      if (s.kind() == Kind::Naturals) return a >= 0;
      if (s.kind() == Kind::Integers) return true;
      if (s.kind() == Kind::SetLiteral) {
        for (const auto& x : s.kids()) {
          if (term(x, env) == a) return true;
        }
        return false;
      }
      throw std::logic_error("oracle: unsupported set");
    }
    case Kind::Exists:
    case Kind::Forall: {
      const bool ex = f.kind() == Kind::Exists;
      std::function<bool(std::size_t, Env&)> go = [&](std::size_t i, Env& e) -> bool {
        if (i == f.bound().size()) return holds(f.kid(0), e);
        for (long long v = kLo; v <= kHi; ++v) {
          e[key(f.bound()[i])] = v;
          if (go(i + 1, e) == ex) return ex;
        }
        return !ex;
      };
      Env inner = env;
      return go(0, inner);
    }
    default: throw std::logic_error("oracle: not a predicate");
  }
}

inline std::set<std::string> names(const std::vector<Formula>& fs) {
  std::set<std::string> out;
  for (const auto& f : fs) {
    for (const auto& s : ebhint::freeIdentifiers(f)) out.insert(key(s));
  }
  return out;
}

// Number of valuations in the box making every hypothesis true and the goal false.
inline long long countCounterexamples(const std::vector<Formula>& hyps, const Formula& goal,
                                      std::optional<Env>* first = nullptr) {
  std::vector<Formula> all = hyps;
  all.push_back(goal);
  const auto ns = names(all);
  const std::vector<std::string> vars(ns.begin(), ns.end());
  Env env;
  for (const auto& v : vars) env[v] = kLo;
  long long count = 0;
  for (;;) {
    bool ok = true;
    for (const auto& h : hyps) {
      if (!holds(h, env)) {
        ok = false;
        break;
      }
    }
    if (ok && !holds(goal, env)) {
      if (first && !*first) *first = env;
      ++count;
    }
    std::size_t i = 0;
    for (; i < vars.size(); ++i) {
      if (++env[vars[i]] <= kHi) break;
      env[vars[i]] = kLo;
    }
    if (i == vars.size()) return count;
  }
}

inline bool valid(const std::vector<Formula>& hyps, const Formula& goal) {
  return countCounterexamples(hyps, goal) == 0;
}

// Random quantifier-free linear formulas over a few identifiers.
class Generator {
 public:
  explicit Generator(std::uint32_t seed, std::vector<std::string> ids = {"a", "b", "c", "d"})
      : rng_(seed), ids_(std::move(ids)) {}

  int pick(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }
  bool coin() { return pick(0, 1) == 1; }

  Formula constant() { return Formula::literal(pick(static_cast<int>(kLo), static_cast<int>(kHi))); }
  Formula ident() { return Formula::ident(ids_[static_cast<std::size_t>(pick(0, static_cast<int>(ids_.size()) - 1))]); }

  Formula expr(int depth = 2) {
    const int r = pick(0, depth > 0 ? 5 : 1);
    switch (r) {
      case 0: return constant();
      case 1: return ident();
      case 2: return Formula::add(expr(depth - 1), expr(depth - 1));
      case 3: return Formula::sub(expr(depth - 1), expr(depth - 1));
      case 4: return Formula::mul(Formula::literal(pick(-3, 3)), expr(depth - 1));
      default: return Formula::negate(ident());
    }
  }

  Formula atom() {
    const int r = pick(0, 9);
    if (r == 0) return Formula::member(expr(1), Formula::naturals());
    if (r == 1) {
      std::vector<Formula> els;
      for (int i = pick(1, 3); i > 0; --i) els.push_back(constant());
      return Formula::member(expr(1), Formula::setLiteral(std::move(els)));
    }
    if (r == 2) return coin() ? Formula::truth() : Formula::falsity();
    static const CmpOp ops[] = {CmpOp::Eq, CmpOp::Ne, CmpOp::Lt, CmpOp::Le, CmpOp::Gt, CmpOp::Ge};
    return Formula::compare(ops[pick(0, 5)], expr(1), expr(1));
  }

  Formula predicate(int depth = 2) {
    if (depth == 0) return atom();
    switch (pick(0, 6)) {
      case 0: return Formula::negation(predicate(depth - 1));
      case 1: return Formula::conjunction({predicate(depth - 1), predicate(depth - 1)});
      case 2: return Formula::disjunction({predicate(depth - 1), predicate(depth - 1)});
      case 3: return Formula::implies(predicate(depth - 1), predicate(depth - 1));
      case 4: return Formula::iff(atom(), atom());
      default: return atom();
    }
  }

  std::mt19937& rng() { return rng_; }

 private:
  std::mt19937 rng_;
  std::vector<std::string> ids_;
};

}  // namespace oracle
