#pragma once

// Sequent-level proof steps: case split, cut, hypothesis selection,
// relevance expansion, and the one-point rule for existential goals.

#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "ebhint/formula.hpp"
#include "ebhint/sequent.hpp"

namespace ebhint {

inline Formula simplifiedNegation(const Formula& p) {
  switch (p.kind()) {
    case Kind::True: return Formula::falsity();
    case Kind::False: return Formula::truth();
    default: return Formula::negation(p);
  }
}

// H |- G  ~>  H, P |- G  and  H, not P |- G
inline std::pair<Sequent, Sequent> tacticCase(const Sequent& s, const Formula& p) {
  Sequent pos = s;
  Sequent neg = s;
  pos.hypotheses.push_back({s.freshLabel("case+"), p, true, HypothesisOrigin::Case});
  neg.hypotheses.push_back({s.freshLabel("case-"), simplifiedNegation(p), true, HypothesisOrigin::Case});
  return {std::move(pos), std::move(neg)};
}

// H |- G  ~>  side H |- P  and  main H, P |- G
inline std::pair<Sequent, Sequent> tacticCut(const Sequent& s, const Formula& p) {
  Sequent side = s;
  side.goal = p;
  Sequent main = s;
  main.hypotheses.push_back({s.freshLabel("cut"), p, true, HypothesisOrigin::Cut});
  return {std::move(side), std::move(main)};
}

inline Sequent tacticSelect(Sequent s, const std::string& label) {
  Hypothesis* h = s.find(label);
  if (!h) throw std::invalid_argument("no hypothesis labelled '" + label + "'");
  h->selected = true;
  return s;
}

inline bool sharesIdentifier(const std::set<Symbol>& a, const std::set<Symbol>& b) {
  for (const auto& x : a) {
    if (b.count(x)) return true;
  }
  return false;
}

// Selects every hypothesis mentioning an identifier free in p. One round.
inline Sequent selectRelevant(Sequent s, const Formula& p) {
  const std::set<Symbol> ids = freeIdentifiers(p);
  for (auto& h : s.hypotheses) {
    if (!h.selected && sharesIdentifier(freeIdentifiers(h.predicate), ids)) h.selected = true;
  }
  return s;
}

// Selects hypotheses connected to the goal or to a selected hypothesis by
// shared identifiers, repeated until nothing changes.
inline Sequent tacticLasso(Sequent s) {
  for (bool changed = true; changed;) {
    changed = false;
    std::set<Symbol> ids = freeIdentifiers(s.goal);
    for (const auto& h : s.hypotheses) {
      if (!h.selected) continue;
      auto f = freeIdentifiers(h.predicate);
      ids.insert(f.begin(), f.end());
    }
    for (auto& h : s.hypotheses) {
      if (!h.selected && sharesIdentifier(freeIdentifiers(h.predicate), ids)) {
        h.selected = true;
        changed = true;
      }
    }
  }
  return s;
}

namespace detail {

inline std::optional<Formula> definingTerm(const Formula& c, const Symbol& x) {
  if (c.kind() != Kind::Compare || c.op() != CmpOp::Eq) return std::nullopt;
  for (int side : {0, 1}) {
    const Formula& lhs = c.kid(static_cast<std::size_t>(side));
    const Formula& rhs = c.kid(static_cast<std::size_t>(1 - side));
    if (lhs.kind() == Kind::Ident && lhs.symbol() == x && !occursFree(x, rhs)) return rhs;
  }
  return std::nullopt;
}

inline Formula substituteAll(const std::vector<Formula>& fs, const Symbol& x, const Formula& e) {
  std::vector<Formula> out;
  for (const auto& f : fs) out.push_back(substitute(f, {{x, e}}));
  return conjoin(std::move(out));
}

}  // namespace detail

// exists x . x = E & Q  ~>  Q[x := E]. Also exists x . x : {e1..en} & Q
// ~>  Q[x := e1] or ... or Q[x := en]. nullopt when no bound variable can be
// eliminated.
inline std::optional<Formula> onePoint(const Formula& goal) {
  if (goal.kind() != Kind::Exists) return std::nullopt;
  std::vector<Symbol> vars = goal.bound();
  std::vector<Formula> body;
  conjuncts(goal.kid(0), body);
  bool progress = false;
  for (bool again = true; again;) {
    again = false;
    for (std::size_t vi = 0; vi < vars.size() && !again; ++vi) {
      const Symbol x = vars[vi];
      for (std::size_t ci = 0; ci < body.size(); ++ci) {
        auto e = detail::definingTerm(body[ci], x);
        if (!e) continue;
        std::vector<Formula> rest;
        for (std::size_t k = 0; k < body.size(); ++k) {
          if (k != ci) conjuncts(substitute(body[k], {{x, *e}}), rest);
        }
        body = std::move(rest);
        vars.erase(vars.begin() + static_cast<std::ptrdiff_t>(vi));
        progress = again = true;
        break;
      }
    }
  }
  if (!progress && vars.size() == 1) {
    const Symbol x = vars.front();
    for (std::size_t ci = 0; ci < body.size(); ++ci) {
      const Formula& c = body[ci];
      if (c.kind() != Kind::Member || c.kid(0).kind() != Kind::Ident || c.kid(0).symbol() != x ||
          c.kid(1).kind() != Kind::SetLiteral || occursFree(x, c.kid(1))) {
        continue;
      }
      std::vector<Formula> rest;
      for (std::size_t k = 0; k < body.size(); ++k) {
        if (k != ci) rest.push_back(body[k]);
      }
      std::vector<Formula> alternatives;
      for (const auto& el : c.kid(1).kids()) alternatives.push_back(detail::substituteAll(rest, x, el));
      return disjoin(std::move(alternatives));
    }
  }
  if (!progress) return std::nullopt;
  Formula rest = conjoin(std::move(body));
  if (vars.empty()) return rest;
  return Formula::exists(std::move(vars), rest);
}

}  // namespace ebhint
