#pragma once

// Canonical text for formulas and models. The output re-parses to a
// structurally equal tree.

#include <sstream>
#include <string>

#include "ebhint/formula.hpp"
#include "ebhint/model.hpp"

namespace ebhint {

enum class Notation { Ascii, Unicode };

namespace detail {

// Binding strength; larger binds tighter.
inline int precedence(const Formula& f) {
  switch (f.kind()) {
    case Kind::Exists:
    case Kind::Forall: return 0;
    case Kind::Iff: return 1;
    case Kind::Implies: return 2;
    case Kind::Or: return 3;
    case Kind::And: return 4;
    case Kind::Not: return 5;
    case Kind::Compare:
    case Kind::Member: return 6;
    case Kind::Add:
    case Kind::Sub: return 7;
    case Kind::Mul: return 8;
    case Kind::Negate: return 9;
    default: return 10;
  }
}

inline const char* cmpText(CmpOp op, Notation n) {
  const bool u = n == Notation::Unicode;
  switch (op) {
    case CmpOp::Eq: return "=";
    case CmpOp::Ne: return u ? "≠" : "/=";
    case CmpOp::Lt: return "<";
    case CmpOp::Le: return u ? "≤" : "<=";
    case CmpOp::Gt: return ">";
    case CmpOp::Ge: return u ? "≥" : ">=";
  }
  return "?";
}

class FormulaWriter {
 public:
  explicit FormulaWriter(Notation n) : n_(n) {}

  void write(std::ostream& os, const Formula& f) const {
    const bool u = n_ == Notation::Unicode;
    switch (f.kind()) {
      case Kind::True: os << "true"; return;
      case Kind::False: os << "false"; return;
      case Kind::Not:
        os << (u ? "¬" : "not ");
        child(os, f.kid(0), 5);
        return;
      case Kind::And:
      case Kind::Or: {
        const char* sep = f.kind() == Kind::And ? (u ? " ∧ " : " & ") : (u ? " ∨ " : " or ");
        const int need = precedence(f) + 1;
        for (std::size_t i = 0; i < f.kids().size(); ++i) {
          if (i) os << sep;
          child(os, f.kid(i), need);
        }
        return;
      }
      case Kind::Implies:
        child(os, f.kid(0), 3);
        os << (u ? " ⇒ " : " => ");
        child(os, f.kid(1), 2);
        return;
      case Kind::Iff:
        child(os, f.kid(0), 2);
        os << (u ? " ⇔ " : " <=> ");
        child(os, f.kid(1), 2);
        return;
      case Kind::Compare:
        child(os, f.kid(0), 7);
        os << ' ' << cmpText(f.op(), n_) << ' ';
        child(os, f.kid(1), 7);
        return;
      case Kind::Member:
        child(os, f.kid(0), 7);
        os << (u ? " ∈ " : " in ");
        child(os, f.kid(1), 7);
        return;
      case Kind::Exists:
      case Kind::Forall: {
        if (u) {
          os << (f.kind() == Kind::Exists ? "∃" : "∀");
        } else {
          os << (f.kind() == Kind::Exists ? "exists " : "forall ");
        }
        for (std::size_t i = 0; i < f.bound().size(); ++i) {
          if (i) os << ", ";
          os << f.bound()[i].str();
        }
        os << (u ? " · " : " . ");
        write(os, f.kid(0));
        return;
      }
      case Kind::Literal: os << f.value(); return;
      case Kind::Ident: os << f.symbol().str(); return;
      case Kind::Negate:
        os << '-';
        // "-5" would read back as a negative literal
        if (f.kid(0).kind() == Kind::Literal) {
          os << '(';
          write(os, f.kid(0));
          os << ')';
        } else {
          child(os, f.kid(0), 9);
        }
        return;
      case Kind::Add:
      case Kind::Sub:
        child(os, f.kid(0), 7);
        os << (f.kind() == Kind::Add ? " + " : " - ");
        child(os, f.kid(1), 8);
        return;
      case Kind::Mul:
        child(os, f.kid(0), 8);
        os << " * ";
        child(os, f.kid(1), 9);
        return;
      case Kind::SetLiteral:
        os << '{';
        for (std::size_t i = 0; i < f.kids().size(); ++i) {
          if (i) os << ", ";
          write(os, f.kid(i));
        }
        os << '}';
        return;
      case Kind::Naturals: os << (u ? "ℕ" : "NAT"); return;
      case Kind::Integers: os << (u ? "ℤ" : "INT"); return;
    }
  }

 private:
  void child(std::ostream& os, const Formula& f, int need) const {
    if (precedence(f) < need) {
      os << '(';
      write(os, f);
      os << ')';
    } else {
      write(os, f);
    }
  }

  Notation n_;
};

}  // namespace detail

inline std::string toString(const Formula& f, Notation n = Notation::Ascii) {
  std::ostringstream os;
  detail::FormulaWriter(n).write(os, f);
  return os.str();
}

namespace detail {

inline void writeNames(std::ostream& os, const std::vector<Declaration>& names) {
  for (const auto& d : names) os << ' ' << d.name;
}

inline void writeLabeled(std::ostream& os, const std::vector<LabeledPredicate>& ps,
                         const char* indent, bool markTheorems = false) {
  for (const auto& p : ps) {
    os << indent << (markTheorems && p.theorem ? "theorem " : "") << p.label << ": " << toString(p.predicate)
       << '\n';
  }
}

inline void writeEvent(std::ostream& os, const Event& e) {
  if (e.isInitialisation()) {
    os << "  initialisation";
  } else {
    os << "  event " << e.name;
  }
  if (!e.refines.empty()) {
    os << " refines ";
    for (std::size_t i = 0; i < e.refines.size(); ++i) {
      if (i) os << ", ";
      os << e.refines[i];
    }
  }
  os << '\n';
  if (!e.parameters.empty()) {
    os << "    any";
    writeNames(os, e.parameters);
    os << '\n';
  }
  if (!e.guards.empty()) {
    os << "    where\n";
    writeLabeled(os, e.guards, "      ");
  }
  if (!e.guardTheorems.empty()) {
    os << "    thm\n";
    writeLabeled(os, e.guardTheorems, "      ");
  }
  if (!e.witnesses.empty()) {
    os << "    with\n";
    for (const auto& w : e.witnesses) {
      os << "      " << w.subject.str() << ": " << toString(w.predicate) << '\n';
    }
  }
  if (!e.actions.empty()) {
    os << "    then\n";
    for (const auto& a : e.actions) {
      os << "      " << a.label << ':';
      for (const auto& t : a.targets) os << ' ' << t;
      switch (a.kind) {
        case AssignmentKind::Becomes: os << " := "; break;
        case AssignmentKind::BecomesMemberOf: os << " :: "; break;
        case AssignmentKind::BecomesSuchThat: os << " :| "; break;
      }
      os << toString(a.rhs) << '\n';
    }
  }
  if (!e.hints.empty()) {
    os << "    hints\n";
    for (const auto& h : e.hints) {
      if (h.kind == HintKind::UseHypothesis) {
        os << "      use " << h.hypothesis << " for " << h.target << '\n';
      } else {
        os << "      split case using " << toString(h.casePredicate) << " for " << h.target
           << '\n';
      }
    }
  }
  os << "  end\n";
}

}  // namespace detail

inline std::string prettyPrint(const Context& c) {
  std::ostringstream os;
  os << "context " << c.name;
  if (c.extends) os << " extends " << *c.extends;
  os << '\n';
  if (!c.sets.empty()) {
    os << "sets";
    detail::writeNames(os, c.sets);
    os << '\n';
  }
  if (!c.constants.empty()) {
    os << "constants";
    detail::writeNames(os, c.constants);
    os << '\n';
  }
  if (!c.axioms.empty()) {
    os << "axioms\n";
    detail::writeLabeled(os, c.axioms, "  ", true);
  }
  os << "end\n";
  return os.str();
}

inline std::string prettyPrint(const Machine& m) {
  std::ostringstream os;
  os << "machine " << m.name;
  if (m.refines) os << " refines " << *m.refines;
  if (m.sees) os << " sees " << *m.sees;
  os << '\n';
  if (!m.variables.empty()) {
    os << "variables";
    detail::writeNames(os, m.variables);
    os << '\n';
  }
  if (!m.invariants.empty()) {
    os << "invariants\n";
    detail::writeLabeled(os, m.invariants, "  ");
  }
  if (!m.theorems.empty()) {
    os << "theorems\n";
    detail::writeLabeled(os, m.theorems, "  ");
  }
  if (!m.initialisation.empty() || !m.events.empty()) {
    os << "events\n";
    if (!m.initialisation.empty()) detail::writeEvent(os, m.initialisation);
    for (const auto& e : m.events) detail::writeEvent(os, e);
  }
  os << "end\n";
  return os.str();
}

inline std::string prettyPrint(const Component& c) {
  return std::visit([](const auto& x) { return prettyPrint(x); }, c);
}

}  // namespace ebhint
