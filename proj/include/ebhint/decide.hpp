#pragma once

// Refutation-based decision procedure for quantifier-free linear integer
// sequents: negate, convert to negation normal form, abstract the arithmetic
// atoms, enumerate propositional models with DPLL, and refute each model's
// atom set with Fourier-Motzkin.

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "ebhint/formula.hpp"
#include "ebhint/linear.hpp"
#include "ebhint/printer.hpp"

namespace ebhint {

enum class Verdict { Proved, NotProved, Unsupported };

struct DecideOptions {
  std::size_t maxAssignments = std::size_t{1} << 16;
  std::optional<Clock::time_point> deadline;
};

struct DecideResult {
  Verdict verdict = Verdict::NotProved;
  std::optional<Valuation> counterexample;
  std::string reason;
};

namespace detail {

// Arithmetic atom: term <= 0, or term = 0.
struct ArithAtom {
  LinearTerm term;
  bool equality = false;
};

struct Nnf {
  enum class Type { And, Or, Lit, True, False } type = Type::True;
  std::vector<Nnf> kids;
  int var = -1;
  bool positive = true;

  static Nnf constant(bool b) { return Nnf{b ? Type::True : Type::False, {}, -1, true}; }
  static Nnf lit(int v, bool pos) { return Nnf{Type::Lit, {}, v, pos}; }
  static Nnf junction(Type t, std::vector<Nnf> parts) {
    const bool isAnd = t == Type::And;
    std::vector<Nnf> kept;
    for (auto& p : parts) {
      if (p.type == (isAnd ? Type::True : Type::False)) continue;
      if (p.type == (isAnd ? Type::False : Type::True)) return p;
      if (p.type == t) {
        for (auto& k : p.kids) kept.push_back(std::move(k));
      } else {
        kept.push_back(std::move(p));
      }
    }
    if (kept.empty()) return constant(isAnd);
    if (kept.size() == 1) return std::move(kept.front());
    return Nnf{t, std::move(kept), -1, true};
  }
};

class Abstraction {
 public:
  std::vector<ArithAtom> arith;                   // indexed by boolean variable
  std::vector<std::optional<std::size_t>> arithOf;  // var -> index into arith
  int vars = 0;

  Nnf build(const Formula& f, bool positive) {
    using T = Nnf::Type;
    switch (f.kind()) {
      case Kind::True: return Nnf::constant(positive);
      case Kind::False: return Nnf::constant(!positive);
      case Kind::Not: return build(f.kid(0), !positive);
      case Kind::And:
      case Kind::Or: {
        const bool conj = (f.kind() == Kind::And) == positive;
        std::vector<Nnf> parts;
        for (const auto& k : f.kids()) parts.push_back(build(k, positive));
        return Nnf::junction(conj ? T::And : T::Or, std::move(parts));
      }
      case Kind::Implies:
        if (positive) {
          return Nnf::junction(T::Or, vec(build(f.kid(0), false), build(f.kid(1), true)));
        }
        return Nnf::junction(T::And, vec(build(f.kid(0), true), build(f.kid(1), false)));
      case Kind::Iff: {
        Nnf a1 = build(f.kid(0), true), a0 = build(f.kid(0), false);
        Nnf b1 = build(f.kid(1), true), b0 = build(f.kid(1), false);
        if (positive) {
          return Nnf::junction(T::Or, vec(Nnf::junction(T::And, vec(a1, b1)),
                                          Nnf::junction(T::And, vec(a0, b0))));
        }
        return Nnf::junction(T::Or, vec(Nnf::junction(T::And, vec(a1, b0)),
                                        Nnf::junction(T::And, vec(a0, b1))));
      }
      case Kind::Compare: {
        const CmpOp op = positive ? f.op() : negated(f.op());
        const LinearTerm t = detail::plus(linearize(f.kid(0)), detail::scaled(linearize(f.kid(1)), -1));
        const LinearTerm neg = detail::scaled(t, -1);
        LinearTerm one;
        one.constant = 1;
        switch (op) {
          case CmpOp::Eq: return atom(t, true);
          case CmpOp::Ne:
            return Nnf::junction(T::Or, vec(atom(detail::plus(t, one), false),
                                            atom(detail::plus(neg, one), false)));
          case CmpOp::Lt: return atom(detail::plus(t, one), false);
          case CmpOp::Le: return atom(t, false);
          case CmpOp::Gt: return atom(detail::plus(neg, one), false);
          case CmpOp::Ge: return atom(neg, false);
        }
        break;
      }
      case Kind::Member: {
        const Formula& e = f.kid(0);
        const Formula& set = f.kid(1);
        switch (set.kind()) {
          case Kind::Naturals:
            return build(Formula::compare(CmpOp::Ge, e, Formula::literal(0)), positive);
          case Kind::Integers: return Nnf::constant(positive);
          case Kind::SetLiteral: {
            std::vector<Formula> eqs;
            for (const auto& x : set.kids()) eqs.push_back(Formula::compare(CmpOp::Eq, e, x));
            return build(disjoin(std::move(eqs)), positive);
          }
          case Kind::Ident: {
            // membership in a carrier set stays an uninterpreted proposition
            const std::string key = toString(f);
            auto it = opaque_.find(key);
            int v = it == opaque_.end() ? newVar(std::nullopt) : it->second;
            opaque_[key] = v;
            return Nnf::lit(v, positive);
          }
          default: throw UnsupportedConstruct("unsupported set expression: " + toString(set));
        }
      }
      case Kind::Exists:
      case Kind::Forall: throw UnsupportedConstruct("residual quantifier: " + toString(f));
      default: throw UnsupportedConstruct("expression in predicate position: " + toString(f));
    }
    throw UnsupportedConstruct("unsupported formula: " + toString(f));
  }

 private:
  static std::vector<Nnf> vec(Nnf a, Nnf b) {
    std::vector<Nnf> v;
    v.push_back(std::move(a));
    v.push_back(std::move(b));
    return v;
  }

  int newVar(std::optional<std::size_t> arithIndex) {
    arithOf.push_back(arithIndex);
    return vars++;
  }

  Nnf atom(LinearTerm t, bool equality) {
    if (t.isConstant()) return Nnf::constant(equality ? t.constant == 0 : t.constant <= 0);
    std::int64_t g = 0;
    for (const auto& [s, c] : t.coeffs) g = std::gcd(g, c < 0 ? -c : c);
    if (g > 1) {
      if (equality && t.constant % g != 0) return Nnf::constant(false);
      for (auto& [s, c] : t.coeffs) c /= g;
      t.constant = equality ? t.constant / g : ceilDiv(t.constant, g);
    }
    std::string key = equality ? "=" : "<";
    for (const auto& [s, c] : t.coeffs) key += s.str() + "*" + std::to_string(c) + ";";
    key += std::to_string(t.constant);
    auto it = atoms_.find(key);
    if (it != atoms_.end()) return Nnf::lit(it->second, true);
    arith.push_back(ArithAtom{std::move(t), equality});
    const int v = newVar(arith.size() - 1);
    atoms_[key] = v;
    return Nnf::lit(v, true);
  }

  std::map<std::string, int> atoms_;
  std::map<std::string, int> opaque_;
};

struct ResourceBound {};

// DPLL over a Plaisted-Greenbaum encoding with lazy theory refutation.
class Search {
 public:
  Search(Abstraction& abs, const DecideOptions& opts) : abs_(abs), opts_(opts) {}

  enum class Outcome { Unsat, Sat, SatUnknownTheory };

  Outcome run(const Nnf& root) {
    nvars_ = abs_.vars;
    const int rootLit = encode(root);
    clauses_.push_back({rootLit});
    index();
    std::vector<std::int8_t> assign(static_cast<std::size_t>(nvars_), 0);
    const Outcome o = search(assign);
    return o == Outcome::Unsat && inconclusive_ ? Outcome::SatUnknownTheory : o;
  }

  std::optional<std::vector<std::int64_t>> model;
  std::vector<Symbol> symbols;

 private:
  int encode(const Nnf& n) {
    switch (n.type) {
      case Nnf::Type::Lit: return n.positive ? n.var + 1 : -(n.var + 1);
      case Nnf::Type::True:
      case Nnf::Type::False: {
        const int v = nvars_++;
        clauses_.push_back({n.type == Nnf::Type::True ? v + 1 : -(v + 1)});
        return v + 1;
      }
      case Nnf::Type::And:
      case Nnf::Type::Or: {
        const int v = nvars_++;
        std::vector<int> kids;
        for (const auto& k : n.kids) kids.push_back(encode(k));
        if (n.type == Nnf::Type::And) {
          for (int k : kids) clauses_.push_back({-(v + 1), k});
        } else {
          std::vector<int> c{-(v + 1)};
          c.insert(c.end(), kids.begin(), kids.end());
          clauses_.push_back(std::move(c));
        }
        return v + 1;
      }
    }
    return 0;
  }

  void index() {
    std::set<Symbol> syms;
    for (const auto& a : abs_.arith) {
      for (const auto& [s, c] : a.term.coeffs) syms.insert(s);
    }
    symbols.assign(syms.begin(), syms.end());
    for (std::size_t i = 0; i < symbols.size(); ++i) symbolIndex_[symbols[i]] = i;
  }

  static int value(const std::vector<std::int8_t>& assign, int lit) {
    const std::int8_t v = assign[static_cast<std::size_t>(std::abs(lit) - 1)];
    return lit > 0 ? v : -v;
  }

  bool propagate(std::vector<std::int8_t>& assign) const {
    for (bool changed = true; changed;) {
      changed = false;
      for (const auto& c : clauses_) {
        int unassigned = 0, last = 0;
        bool sat = false;
        for (int lit : c) {
          const int v = value(assign, lit);
          if (v > 0) {
            sat = true;
            break;
          }
          if (v == 0) {
            ++unassigned;
            last = lit;
          }
        }
        if (sat) continue;
        if (unassigned == 0) return false;
        if (unassigned == 1) {
          assign[static_cast<std::size_t>(std::abs(last) - 1)] = last > 0 ? 1 : -1;
          changed = true;
        }
      }
    }
    return true;
  }

  std::optional<int> branchLiteral(const std::vector<std::int8_t>& assign) const {
    for (const auto& c : clauses_) {
      bool sat = false;
      std::optional<int> first;
      for (int lit : c) {
        const int v = value(assign, lit);
        if (v > 0) {
          sat = true;
          break;
        }
        if (v == 0 && !first) first = lit;
      }
      if (!sat && first) return first;
    }
    return std::nullopt;
  }

  FmResult theory(const std::vector<std::size_t>& atoms) const {
    FmOptions fo;
    fo.deadline = opts_.deadline;
    FourierMotzkin fm(symbols.size(), fo);
    for (std::size_t i : atoms) {
      const ArithAtom& a = abs_.arith[i];
      Row r;
      r.a.assign(symbols.size(), 0);
      for (const auto& [s, c] : a.term.coeffs) r.a[symbolIndex_.at(s)] = c;
      r.c = a.term.constant;
      if (a.equality) {
        fm.addEquality(std::move(r));
      } else {
        fm.addInequality(std::move(r));
      }
    }
    return fm.solve();
  }

  Outcome search(std::vector<std::int8_t>& assign) {
    checkDeadline(opts_.deadline);
    std::vector<std::int8_t> local = assign;
    if (!propagate(local)) return Outcome::Unsat;
    if (auto lit = branchLiteral(local)) {
      for (int choice : {*lit, -*lit}) {
        std::vector<std::int8_t> next = local;
        next[static_cast<std::size_t>(std::abs(choice) - 1)] = choice > 0 ? 1 : -1;
        Outcome o = search(next);
        if (o != Outcome::Unsat) return o;
      }
      return Outcome::Unsat;
    }
    // propositional model: check the arithmetic atoms it makes true
    if (++checks_ > opts_.maxAssignments) throw ResourceBound{};
    std::vector<std::size_t> atoms;
    std::vector<int> atomVars;
    for (int v = 0; v < abs_.vars; ++v) {
      if (local[static_cast<std::size_t>(v)] > 0 && abs_.arithOf[static_cast<std::size_t>(v)]) {
        atoms.push_back(*abs_.arithOf[static_cast<std::size_t>(v)]);
        atomVars.push_back(v);
      }
    }
    FmResult r = theory(atoms);
    if (r.verdict == FmVerdict::Infeasible) {
      learn(atoms, atomVars);
      return Outcome::Unsat;
    }
    if (r.verdict == FmVerdict::Unknown || !r.model) {
      // no integer point in hand; keep looking for one elsewhere
      inconclusive_ = true;
      return Outcome::Unsat;
    }
    model = r.model;
    return Outcome::Sat;
  }

  // Shrinks the refuted atom set and blocks it for the rest of the search.
  void learn(std::vector<std::size_t> atoms, std::vector<int> vars) {
    for (std::size_t i = 0; i < atoms.size();) {
      std::vector<std::size_t> trial = atoms;
      trial.erase(trial.begin() + static_cast<std::ptrdiff_t>(i));
      if (theory(trial).verdict == FmVerdict::Infeasible) {
        atoms = std::move(trial);
        vars.erase(vars.begin() + static_cast<std::ptrdiff_t>(i));
      } else {
        ++i;
      }
    }
    std::vector<int> clause;
    for (int v : vars) clause.push_back(-(v + 1));
    clauses_.push_back(std::move(clause));
  }

  Abstraction& abs_;
  const DecideOptions& opts_;
  std::vector<std::vector<int>> clauses_;
  int nvars_ = 0;
  std::size_t checks_ = 0;
  bool inconclusive_ = false;
  std::map<Symbol, std::size_t> symbolIndex_;
};

inline std::optional<Valuation> verifiedCounterexample(const std::vector<Formula>& hyps,
                                                       const Formula& goal,
                                                       const std::vector<Symbol>& symbols,
                                                       const std::vector<std::int64_t>& point) {
  Valuation v;
  for (const auto& h : hyps) {
    for (const auto& s : freeIdentifiers(h)) v[s] = 0;
  }
  for (const auto& s : freeIdentifiers(goal)) v[s] = 0;
  for (std::size_t i = 0; i < symbols.size(); ++i) v[symbols[i]] = point[i];
  for (const auto& h : hyps) {
    auto r = evaluate(h, v);
    if (!r || !*r) return std::nullopt;
  }
  auto g = evaluate(goal, v);
  if (!g || *g) return std::nullopt;
  return v;
}

}  // namespace detail

inline DecideResult decide(const std::vector<Formula>& hypotheses, const Formula& goal,
                           const DecideOptions& opts = {}) {
  DecideResult out;
  detail::Abstraction abs;
  detail::Nnf root;
  try {
    std::vector<detail::Nnf> parts;
    for (const auto& h : hypotheses) parts.push_back(abs.build(h, true));
    parts.push_back(abs.build(goal, false));
    root = detail::Nnf::junction(detail::Nnf::Type::And, std::move(parts));
  } catch (const UnsupportedConstruct& e) {
    out.verdict = Verdict::Unsupported;
    out.reason = e.what();
    return out;
  }
  detail::Search search(abs, opts);
  detail::Search::Outcome outcome;
  try {
    outcome = search.run(root);
  } catch (const detail::ResourceBound&) {
    out.verdict = Verdict::NotProved;
    out.reason = "propositional enumeration bound reached";
    return out;
  }
  if (outcome == detail::Search::Outcome::Unsat) {
    out.verdict = Verdict::Proved;
    return out;
  }
  out.verdict = Verdict::NotProved;
  if (outcome == detail::Search::Outcome::SatUnknownTheory) {
    out.reason = "arithmetic check inconclusive";
  } else if (search.model) {
    out.counterexample =
        detail::verifiedCounterexample(hypotheses, goal, search.symbols, *search.model);
  }
  return out;
}

}  // namespace ebhint
