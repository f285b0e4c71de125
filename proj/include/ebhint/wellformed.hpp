#pragma once

// Static checks over parsed models: name resolution, label uniqueness, the
// integer / boolean / set-of-integer type discipline, and event shape rules.

#include <algorithm>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "ebhint/formula.hpp"
#include "ebhint/model.hpp"

namespace ebhint {

struct Diagnostic {
  std::string component;
  SourceLocation location;
  std::string code;
  std::string message;
};

inline void sortDiagnostics(std::vector<Diagnostic>& ds) {
  std::stable_sort(ds.begin(), ds.end(), [](const Diagnostic& a, const Diagnostic& b) {
    if (a.location.before(b.location)) return true;
    if (b.location.before(a.location)) return false;
    return a.code < b.code;
  });
}

namespace detail {

enum class IdType { Integer, Set };

struct Scope {
  std::map<std::string, IdType> names;
  std::set<std::string> primable;  // names whose primed form may occur

  void addAll(const std::vector<Declaration>& ds, IdType t) {
    for (const auto& d : ds) names.emplace(d.name, t);
  }
};

class Checker {
 public:
  Checker(std::string component, std::vector<Diagnostic>& out)
      : component_(std::move(component)), out_(out) {}

  void report(SourceLocation loc, std::string code, std::string msg) {
    out_.push_back({component_, loc, std::move(code), std::move(msg)});
  }

  void predicate(const Formula& f, const Scope& scope, SourceLocation loc) {
    std::set<std::string> bound;
    check(f, scope, bound, loc, Want::Predicate);
  }
  void integer(const Formula& f, const Scope& scope, SourceLocation loc) {
    std::set<std::string> bound;
    check(f, scope, bound, loc, Want::Integer);
  }
  void set(const Formula& f, const Scope& scope, SourceLocation loc) {
    std::set<std::string> bound;
    check(f, scope, bound, loc, Want::Set);
  }

 private:
  enum class Want { Predicate, Integer, Set };

  void check(const Formula& f, const Scope& scope, std::set<std::string>& bound,
             SourceLocation loc, Want want) {
    if (want == Want::Predicate && !f.isPredicate()) {
      report(loc, "type-error", "expected a predicate, found expression '" + describe(f) + "'");
      return;
    }
    if (want != Want::Predicate && f.isPredicate()) {
      report(loc, "type-error", "expected an expression, found a predicate");
      return;
    }
    if (want == Want::Integer && isSetKind(f.kind())) {
      report(loc, "misplaced-set", "set expression used where an integer is required");
      return;
    }
    if (want == Want::Set && !isSetKind(f.kind()) && f.kind() != Kind::Ident) {
      report(loc, "misplaced-set", "right-hand side of membership must be a set");
      return;
    }
    switch (f.kind()) {
      case Kind::True:
      case Kind::False:
      case Kind::Literal:
      case Kind::Naturals:
      case Kind::Integers: return;
      case Kind::Not:
      case Kind::And:
      case Kind::Or:
      case Kind::Implies:
      case Kind::Iff:
        for (const auto& k : f.kids()) check(k, scope, bound, loc, Want::Predicate);
        return;
      case Kind::Compare:
        check(f.kid(0), scope, bound, loc, Want::Integer);
        check(f.kid(1), scope, bound, loc, Want::Integer);
        return;
      case Kind::Member:
        check(f.kid(0), scope, bound, loc, Want::Integer);
        check(f.kid(1), scope, bound, loc, Want::Set);
        return;
      case Kind::Exists:
      case Kind::Forall: {
        std::vector<std::string> added;
        for (const auto& s : f.bound()) {
          if (s.primed) {
            report(loc, "misplaced-prime", "bound identifier '" + s.str() + "' may not be primed");
          }
          if (bound.insert(s.name).second) added.push_back(s.name);
        }
        check(f.kid(0), scope, bound, loc, Want::Predicate);
        for (const auto& n : added) bound.erase(n);
        return;
      }
      case Kind::Ident: {
        const Symbol& s = f.symbol();
        IdType type = IdType::Integer;
        if (bound.count(s.name) && !s.primed) {
          type = IdType::Integer;
        } else {
          auto it = scope.names.find(s.name);
          if (it == scope.names.end()) {
            report(loc, "unresolved-identifier", "unresolved identifier '" + s.str() + "'");
            return;
          }
          if (s.primed && !scope.primable.count(s.name)) {
            report(loc, "misplaced-prime", "primed identifier '" + s.str() + "' not allowed here");
            return;
          }
          type = it->second;
        }
        if (want == Want::Integer && type != IdType::Integer) {
          report(loc, "type-error", "'" + s.str() + "' is a set, not an integer");
        } else if (want == Want::Set && type != IdType::Set) {
          report(loc, "type-error", "'" + s.str() + "' is an integer, not a set");
        }
        return;
      }
      case Kind::Negate:
      case Kind::Add:
      case Kind::Sub:
        for (const auto& k : f.kids()) check(k, scope, bound, loc, Want::Integer);
        return;
      case Kind::Mul:
        if (f.kid(0).kind() != Kind::Literal && f.kid(1).kind() != Kind::Literal) {
          report(loc, "nonlinear", "multiplication needs a literal operand");
        }
        for (const auto& k : f.kids()) check(k, scope, bound, loc, Want::Integer);
        return;
      case Kind::SetLiteral:
        for (const auto& k : f.kids()) check(k, scope, bound, loc, Want::Integer);
        return;
    }
  }

  static std::string describe(const Formula& f) {
    if (f.kind() == Kind::Ident) return f.symbol().str();
    if (f.kind() == Kind::Literal) return std::to_string(f.value());
    return "...";
  }

  std::string component_;
  std::vector<Diagnostic>& out_;
};

template <typename Items, typename Key>
void reportDuplicates(Checker& c, const Items& items, Key key, const std::string& code,
                      const std::string& what) {
  std::set<std::string> seen;
  for (const auto& it : items) {
    if (!seen.insert(key(it)).second) {
      c.report(it.location, code, "duplicate " + what + " '" + key(it) + "'");
    }
  }
}

inline std::set<std::string> assignedVariables(const Event& e) {
  std::set<std::string> out;
  for (const auto& a : e.actions) out.insert(a.targets.begin(), a.targets.end());
  return out;
}

}  // namespace detail

inline std::vector<Diagnostic> wellformed(const Context& ctx, const Workspace& ws) {
  std::vector<Diagnostic> out;
  detail::Checker c(ctx.name, out);
  if (ctx.extends && !ws.context(*ctx.extends)) {
    c.report(ctx.location, "unresolved-context",
             "context '" + *ctx.extends + "' extended by '" + ctx.name + "' not found");
  }
  auto chain = ws.contextChain(ctx);
  if (ctx.extends && ws.context(*ctx.extends) && chain.size() >= 1) {
    // a cycle truncates the chain before reaching a context without 'extends'
    if (chain.front()->extends) {
      c.report(ctx.location, "extension-cycle", "context '" + ctx.name + "' extends itself");
    }
  }
  detail::Scope scope;
  std::set<std::string> inheritedLabels;
  std::set<std::string> inheritedNames;
  for (const Context* x : chain) {
    scope.addAll(x->sets, detail::IdType::Set);
    scope.addAll(x->constants, detail::IdType::Integer);
    if (x == &ctx) continue;
    for (const auto& a : x->axioms) inheritedLabels.insert(a.label);
    for (const auto& d : x->sets) inheritedNames.insert(d.name);
    for (const auto& d : x->constants) inheritedNames.insert(d.name);
  }
  std::vector<Declaration> decls = ctx.sets;
  decls.insert(decls.end(), ctx.constants.begin(), ctx.constants.end());
  detail::reportDuplicates(c, decls, [](const Declaration& d) { return d.name; },
                           "duplicate-identifier", "identifier");
  for (const auto& d : decls) {
    if (inheritedNames.count(d.name)) {
      c.report(d.location, "duplicate-identifier", "duplicate identifier '" + d.name + "'");
    }
  }
  detail::reportDuplicates(c, ctx.axioms, [](const LabeledPredicate& p) { return p.label; },
                           "duplicate-label", "label");
  for (const auto& a : ctx.axioms) {
    if (inheritedLabels.count(a.label)) {
      c.report(a.location, "duplicate-label", "duplicate label '" + a.label + "'");
    }
    c.predicate(a.predicate, scope, a.location);
  }
  sortDiagnostics(out);
  return out;
}

inline std::vector<Diagnostic> wellformed(const Machine& m, const Workspace& ws) {
  using detail::IdType;
  std::vector<Diagnostic> out;
  detail::Checker c(m.name, out);

  if (m.sees && !ws.context(*m.sees)) {
    c.report(m.location, "unresolved-context",
             "context '" + *m.sees + "' seen by '" + m.name + "' not found");
  }
  const Machine* abs = nullptr;
  if (m.refines) {
    abs = ws.machine(*m.refines);
    if (!abs) {
      c.report(m.location, "unresolved-machine",
               "machine '" + *m.refines + "' refined by '" + m.name + "' not found");
    } else {
      std::set<std::string> visited{m.name};
      for (const Machine* cur = abs; cur; cur = ws.abstractOf(*cur)) {
        if (!visited.insert(cur->name).second) {
          c.report(m.location, "refinement-cycle", "refinement chain of '" + m.name + "' is cyclic");
          abs = nullptr;
          break;
        }
      }
    }
  }

  // identifiers
  detail::Scope ctxScope;
  std::set<std::string> machineLabels;  // labels usable as hypotheses
  for (const Context* x : ws.visibleContexts(m)) {
    ctxScope.addAll(x->sets, IdType::Set);
    ctxScope.addAll(x->constants, IdType::Integer);
    for (const auto& a : x->axioms) machineLabels.insert(a.label);
  }
  std::set<std::string> concreteVars;
  for (const auto& v : m.variables) concreteVars.insert(v.name);
  std::set<std::string> abstractVars;
  if (abs) {
    for (const auto& v : abs->variables) abstractVars.insert(v.name);
    for (const auto& i : abs->invariants) machineLabels.insert(i.label);
    for (const auto& t : abs->theorems) machineLabels.insert(t.label);
  }

  detail::reportDuplicates(c, m.variables, [](const Declaration& d) { return d.name; },
                           "duplicate-identifier", "variable");
  for (const auto& v : m.variables) {
    if (ctxScope.names.count(v.name)) {
      c.report(v.location, "duplicate-identifier",
               "variable '" + v.name + "' clashes with a context identifier");
    }
  }

  detail::Scope stateScope = ctxScope;
  for (const auto& v : m.variables) stateScope.names.emplace(v.name, IdType::Integer);
  detail::Scope invScope = stateScope;
  for (const auto& v : abstractVars) invScope.names.emplace(v, IdType::Integer);

  std::vector<LabeledPredicate> own = m.invariants;
  own.insert(own.end(), m.theorems.begin(), m.theorems.end());
  detail::reportDuplicates(c, own, [](const LabeledPredicate& p) { return p.label; },
                           "duplicate-label", "label");
  for (const auto& p : own) {
    if (machineLabels.count(p.label)) {
      c.report(p.location, "duplicate-label", "duplicate label '" + p.label + "'");
    }
    c.predicate(p.predicate, invScope, p.location);
  }
  std::set<std::string> invariantLabels, theoremLabels;
  for (const auto& p : m.invariants) invariantLabels.insert(p.label);
  for (const auto& p : m.theorems) theoremLabels.insert(p.label);
  for (const auto& p : own) machineLabels.insert(p.label);

  // events
  std::vector<Declaration> eventNames;
  for (const auto& e : m.events) eventNames.push_back({e.name, e.location});
  detail::reportDuplicates(c, eventNames, [](const Declaration& d) { return d.name; },
                           "duplicate-event", "event");

  for (const Event* ep : m.allEvents()) {
    const Event& e = *ep;
    if (ep != &m.initialisation && e.name == kInitialisation) {
      c.report(e.location, "reserved-name", "event name 'INITIALISATION' is reserved");
    }
    if (ep == &m.initialisation) {
      if (!e.parameters.empty()) {
        c.report(e.location, "initialisation-parameters", "initialisation has parameters");
      }
      if (!e.guards.empty() || !e.guardTheorems.empty()) {
        c.report(e.location, "initialisation-guards", "initialisation has guards");
      }
      if (!e.refines.empty()) {
        c.report(e.location, "initialisation-refines", "initialisation may not name refined events");
      }
    }

    // labels
    struct Labeled {
      std::string label;
      SourceLocation location;
    };
    std::vector<Labeled> labels;
    for (const auto& g : e.guards) labels.push_back({g.label, g.location});
    for (const auto& g : e.guardTheorems) labels.push_back({g.label, g.location});
    for (const auto& a : e.actions) labels.push_back({a.label, a.location});
    detail::reportDuplicates(c, labels, [](const Labeled& l) { return l.label; },
                             "duplicate-label", "label in event '" + e.name + "'");
    for (const auto& l : labels) {
      if (machineLabels.count(l.label)) {
        c.report(l.location, "duplicate-label",
                 "label '" + l.label + "' of event '" + e.name + "' clashes with a machine label");
      }
    }

    // parameters
    detail::reportDuplicates(c, e.parameters, [](const Declaration& d) { return d.name; },
                             "duplicate-identifier", "parameter");
    detail::Scope evScope = e.isInitialisation() ? ctxScope : stateScope;
    for (const auto& p : e.parameters) {
      if (stateScope.names.count(p.name)) {
        c.report(p.location, "duplicate-identifier",
                 "parameter '" + p.name + "' clashes with a variable or constant");
      }
      evScope.names.emplace(p.name, IdType::Integer);
    }
    for (const auto& g : e.guards) c.predicate(g.predicate, evScope, g.location);
    for (const auto& g : e.guardTheorems) c.predicate(g.predicate, evScope, g.location);

    // actions
    std::set<std::string> assigned;
    for (const auto& a : e.actions) {
      for (const auto& t : a.targets) {
        if (!concreteVars.count(t)) {
          c.report(a.location, "unknown-assignment-target", "'" + t + "' is not a variable");
        }
        if (!assigned.insert(t).second) {
          c.report(a.location, "duplicate-assignment-target",
                   "duplicate assignment target '" + t + "'");
        }
      }
      switch (a.kind) {
        case AssignmentKind::Becomes:
        case AssignmentKind::BecomesMemberOf:
          if (a.targets.size() != 1) {
            c.report(a.location, "assignment-arity", "assignment must have exactly one target");
          }
          if (a.kind == AssignmentKind::Becomes) {
            c.integer(a.rhs, evScope, a.location);
          } else {
            c.set(a.rhs, evScope, a.location);
          }
          break;
        case AssignmentKind::BecomesSuchThat: {
          detail::Scope s = evScope;
          for (const auto& t : a.targets) {
            s.primable.insert(t);
            s.names.emplace(t, IdType::Integer);
          }
          c.predicate(a.rhs, s, a.location);
          std::set<std::string> primed;
          for (const auto& sym : freeIdentifiers(a.rhs)) {
            if (sym.primed) primed.insert(sym.name);
          }
          std::set<std::string> targets(a.targets.begin(), a.targets.end());
          if (primed != targets) {
            c.report(a.location, "suchthat-primes",
                     "':|' predicate must mention exactly the primed targets");
          }
          break;
        }
      }
    }

    // refinement
    std::vector<const Event*> absEvents;
    if (!e.refines.empty() && !e.isInitialisation()) {
      if (!abs) {
        if (!m.refines) {
          c.report(e.location, "refines-without-abstract-machine",
                   "event '" + e.name + "' refines events but the machine refines nothing");
        }
      } else {
        for (const auto& r : e.refines) {
          const Event* ae = abs->event(r);
          if (!ae || ae->isInitialisation()) {
            c.report(e.location, "unresolved-abstract-event",
                     "abstract event '" + r + "' not found in '" + abs->name + "'");
          } else {
            absEvents.push_back(ae);
          }
        }
      }
    }
    if (e.isInitialisation() && abs) absEvents.push_back(&abs->initialisation);
    if (absEvents.size() > 1) {
      const Event& first = *absEvents.front();
      for (std::size_t i = 1; i < absEvents.size(); ++i) {
        const Event& other = *absEvents[i];
        std::vector<std::string> pa, pb;
        for (const auto& p : first.parameters) pa.push_back(p.name);
        for (const auto& p : other.parameters) pb.push_back(p.name);
        if (pa != pb || first.actions != other.actions) {
          c.report(e.location, "merge-mismatch",
                   "merged events '" + first.name + "' and '" + other.name +
                       "' differ in parameters or actions");
        }
      }
    }

    // witnesses
    std::set<std::string> absParams;
    std::set<std::string> absAssigned;
    for (const Event* ae : absEvents) {
      for (const auto& p : ae->parameters) absParams.insert(p.name);
      auto as = detail::assignedVariables(*ae);
      absAssigned.insert(as.begin(), as.end());
    }
    std::set<std::string> concreteParams;
    for (const auto& p : e.parameters) concreteParams.insert(p.name);
    std::set<Symbol> witnessed;
    for (const auto& w : e.witnesses) {
      if (!witnessed.insert(w.subject).second) {
        c.report(w.location, "duplicate-witness", "duplicate witness for '" + w.subject.str() + "'");
      }
      const std::string& n = w.subject.name;
      bool okSubject = w.subject.primed
                           ? (abstractVars.count(n) && !concreteVars.count(n))
                           : (absParams.count(n) && !concreteParams.count(n));
      if (!okSubject) {
        c.report(w.location, "witness-subject",
                 "'" + w.subject.str() +
                     "' is not an abstract parameter or disappearing abstract variable");
      }
      if (!occursFree(w.subject, w.predicate)) {
        c.report(w.location, "witness-subject-unused",
                 "witness predicate does not mention '" + w.subject.str() + "'");
      }
      detail::Scope s = evScope;
      for (const auto& v : abstractVars) s.names.emplace(v, IdType::Integer);
      for (const auto& p : absParams) s.names.emplace(p, IdType::Integer);
      for (const auto& v : concreteVars) s.primable.insert(v);
      if (w.subject.primed) s.primable.insert(n);
      c.predicate(w.predicate, s, w.location);
    }
    if (!absEvents.empty()) {
      for (const auto& p : absParams) {
        if (!concreteParams.count(p) && !witnessed.count(Symbol{p})) {
          c.report(e.location, "missing-witness",
                   "event '" + e.name + "' needs a witness for abstract parameter '" + p + "'");
        }
      }
      for (const auto& v : absAssigned) {
        if (!concreteVars.count(v) && !witnessed.count(Symbol{v, true})) {
          c.report(e.location, "missing-witness",
                   "event '" + e.name + "' needs a witness for disappearing variable '" + v + "''");
        }
      }
    }

    // hints
    std::set<std::string> hinted;
    for (const auto& h : e.hints) {
      if (h.kind == HintKind::UseHypothesis && !machineLabels.count(h.hypothesis)) {
        c.report(h.location, "unresolved-hint-label", "unresolved hint label '" + h.hypothesis + "'");
      }
      if (theoremLabels.count(h.target)) {
        c.report(h.location, "hint-target-not-invariant",
                 "hint target '" + h.target + "' is a theorem, not an invariant");
      } else if (!invariantLabels.count(h.target)) {
        c.report(h.location, "unresolved-hint-target",
                 "hint target '" + h.target + "' is not an invariant of '" + m.name + "'");
      }
      if (!hinted.insert(h.target).second) {
        c.report(h.location, "duplicate-hint-target",
                 "more than one hint for '" + h.target + "' in event '" + e.name + "'");
      }
      if (h.kind == HintKind::SplitCase) c.predicate(h.casePredicate, evScope, h.location);
    }
  }

  sortDiagnostics(out);
  return out;
}

}  // namespace ebhint
