#pragma once

// SMT-LIB v2 rendering of a proof obligation: declarations, one assertion per
// hypothesis, the negated goal, and (check-sat). unsat means the obligation holds.

#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "ebhint/formula.hpp"
#include "ebhint/pog.hpp"
#include "ebhint/printer.hpp"
#include "ebhint/sequent.hpp"

namespace ebhint {

struct SmtExportError : std::runtime_error {
  explicit SmtExportError(const std::string& what) : std::runtime_error(what) {}
};

namespace detail {

inline std::string smtSymbol(const Symbol& s) { return s.primed ? "|" + s.name + "'|" : s.name; }

class SmtWriter {
 public:
  std::set<Symbol> constants;
  std::set<std::string> sets;
  std::vector<std::string> offending;
  bool quantified = false;

  std::string term(const Formula& f, const std::set<Symbol>& bound) {
    switch (f.kind()) {
      case Kind::True: return "true";
      case Kind::False: return "false";
      case Kind::Not: return "(not " + term(f.kid(0), bound) + ")";
      case Kind::And: return nary("and", f, bound);
      case Kind::Or: return nary("or", f, bound);
      case Kind::Implies: return "(=> " + term(f.kid(0), bound) + " " + term(f.kid(1), bound) + ")";
      case Kind::Iff: return "(= " + term(f.kid(0), bound) + " " + term(f.kid(1), bound) + ")";
      case Kind::Compare: {
        const std::string a = term(f.kid(0), bound), b = term(f.kid(1), bound);
        switch (f.op()) {
          case CmpOp::Eq: return "(= " + a + " " + b + ")";
          case CmpOp::Ne: return "(distinct " + a + " " + b + ")";
          case CmpOp::Lt: return "(< " + a + " " + b + ")";
          case CmpOp::Le: return "(<= " + a + " " + b + ")";
          case CmpOp::Gt: return "(> " + a + " " + b + ")";
          case CmpOp::Ge: return "(>= " + a + " " + b + ")";
        }
        break;
      }
      case Kind::Member: {
        const std::string e = term(f.kid(0), bound);
        const Formula& s = f.kid(1);
        switch (s.kind()) {
          case Kind::Naturals: return "(>= " + e + " 0)";
          case Kind::Integers: return "true";
          case Kind::SetLiteral: {
            if (s.kids().empty()) return "false";
            std::string out = s.kids().size() > 1 ? "(or" : "";
            for (const auto& x : s.kids()) out += (out.empty() ? "" : " ") + ("(= " + e + " " + term(x, bound) + ")");
            return s.kids().size() > 1 ? out + ")" : out;
          }
          case Kind::Ident:
            sets.insert(s.symbol().name);
            return "(" + s.symbol().name + " " + e + ")";
          default: offending.push_back(toString(s)); return "false";
        }
      }
      case Kind::Exists:
      case Kind::Forall: {
        quantified = true;
        std::set<Symbol> inner = bound;
        std::string vars;
        for (const auto& v : f.bound()) {
          inner.insert(v);
          vars += (vars.empty() ? "" : " ") + ("(" + smtSymbol(v) + " Int)");
        }
        return std::string("(") + (f.kind() == Kind::Exists ? "exists" : "forall") + " (" + vars + ") " +
               term(f.kid(0), inner) + ")";
      }
      case Kind::Literal:
        return f.value() < 0 ? "(- " + negLiteral(f.value()) + ")" : std::to_string(f.value());
      case Kind::Ident:
        if (!bound.count(f.symbol())) constants.insert(f.symbol());
        return smtSymbol(f.symbol());
      case Kind::Negate: return "(- " + term(f.kid(0), bound) + ")";
      case Kind::Add: return "(+ " + term(f.kid(0), bound) + " " + term(f.kid(1), bound) + ")";
      case Kind::Sub: return "(- " + term(f.kid(0), bound) + " " + term(f.kid(1), bound) + ")";
      case Kind::Mul:
        if (f.kid(0).kind() != Kind::Literal && f.kid(1).kind() != Kind::Literal) {
          offending.push_back(toString(f));
        }
        return "(* " + term(f.kid(0), bound) + " " + term(f.kid(1), bound) + ")";
      default: offending.push_back(toString(f)); return "false";
    }
    return "false";
  }

 private:
  static std::string negLiteral(std::int64_t v) {
    // magnitude of a negative literal, without overflowing on INT64_MIN
    const unsigned long long m = static_cast<unsigned long long>(-(v + 1)) + 1;
    return std::to_string(m);
  }

  std::string nary(const char* op, const Formula& f, const std::set<Symbol>& bound) {
    std::string out = std::string("(") + op;
    for (const auto& k : f.kids()) out += " " + term(k, bound);
    return out + ")";
  }
};

}  // namespace detail

// Deterministic before-after equalities are substituted first (only the
// selected ones when respectSelection is set).
inline std::string exportSmt(const ProofObligation& po, bool respectSelection) {
  const Sequent s = normalizeBeforeAfter(po.sequent, respectSelection);
  detail::SmtWriter w;
  std::vector<std::pair<std::string, std::string>> assertions;
  for (const auto& h : s.hypotheses) {
    if (respectSelection && !h.selected) continue;
    assertions.emplace_back(h.label, w.term(h.predicate, {}));
  }
  const std::string goal = w.term(s.goal, {});
  if (!w.offending.empty()) {
    std::string msg = "unsupported in SMT export:";
    for (const auto& o : w.offending) msg += " " + o + ";";
    msg.pop_back();
    throw SmtExportError(msg);
  }
  std::ostringstream os;
  const std::string logic = w.quantified ? (w.sets.empty() ? "LIA" : "UFLIA")
                                         : (w.sets.empty() ? "QF_LIA" : "QF_UFLIA");
  os << "; " << po.name << "\n";
  os << "(set-logic " << logic << ")\n";
  for (const auto& name : w.sets) os << "(declare-fun " << name << " (Int) Bool)\n";
  for (const auto& c : w.constants) {
    if (w.sets.count(c.name) && !c.primed) continue;
    os << "(declare-const " << detail::smtSymbol(c) << " Int)\n";
  }
  for (const auto& [label, text] : assertions) {
    os << "; " << label << "\n(assert " << text << ")\n";
  }
  os << "; goal\n(assert (not " << goal << "))\n";
  os << "(check-sat)\n";
  return os.str();
}

}  // namespace ebhint
