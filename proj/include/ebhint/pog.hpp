#pragma once

// Proof obligation generation: invariant preservation, theorems, guard
// strengthening, simulation, witness feasibility, and merge obligations,
// with default hypothesis selection and the pog-mode hint transformation.

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "ebhint/formula.hpp"
#include "ebhint/model.hpp"
#include "ebhint/printer.hpp"
#include "ebhint/sequent.hpp"
#include "ebhint/tactics.hpp"
#include "ebhint/wellformed.hpp"

namespace ebhint {

struct BeforeAfter {
  struct Conjunct {
    std::string label;  // "BA/x", or "BA/x,y" for a multi-target such-that action
    Formula predicate;
  };
  std::vector<Conjunct> conjuncts;

  Formula predicate() const {
    std::vector<Formula> ps;
    for (const auto& c : conjuncts) ps.push_back(c.predicate);
    return conjoin(std::move(ps));
  }
};

// One conjunct per variable (or per multi-target action), in declaration order.
inline BeforeAfter beforeAfter(const Event& e, const std::vector<std::string>& variables) {
  std::map<std::string, const Assignment*> byTarget;
  for (const auto& a : e.actions) {
    for (const auto& t : a.targets) byTarget.emplace(t, &a);
  }
  BeforeAfter ba;
  std::set<const Assignment*> emitted;
  for (const auto& v : variables) {
    const Formula primed = Formula::ident(v, true);
    auto it = byTarget.find(v);
    if (it == byTarget.end()) {
      ba.conjuncts.push_back({"BA/" + v, Formula::compare(CmpOp::Eq, primed, Formula::ident(v))});
      continue;
    }
    const Assignment& a = *it->second;
    if (!emitted.insert(&a).second) continue;
    switch (a.kind) {
      case AssignmentKind::Becomes:
        ba.conjuncts.push_back({"BA/" + v, Formula::compare(CmpOp::Eq, primed, a.rhs)});
        break;
      case AssignmentKind::BecomesMemberOf:
        ba.conjuncts.push_back({"BA/" + v, Formula::member(primed, a.rhs)});
        break;
      case AssignmentKind::BecomesSuchThat: {
        std::string label = "BA/";
        for (std::size_t i = 0; i < a.targets.size(); ++i) label += (i ? "," : "") + a.targets[i];
        ba.conjuncts.push_back({label, a.rhs});
        break;
      }
    }
  }
  return ba;
}

// Replaces x' by E throughout, for every before-after hypothesis x' = E,
// and drops those hypotheses. When selectedOnly, unselected ones are kept.
inline Sequent normalizeBeforeAfter(const Sequent& s, bool selectedOnly = false) {
  Substitution sub;
  std::vector<bool> drop(s.hypotheses.size(), false);
  for (std::size_t i = 0; i < s.hypotheses.size(); ++i) {
    const Hypothesis& h = s.hypotheses[i];
    if (h.origin != HypothesisOrigin::BeforeAfter || (selectedOnly && !h.selected)) continue;
    const Formula& p = h.predicate;
    if (p.kind() != Kind::Compare || p.op() != CmpOp::Eq || p.kid(0).kind() != Kind::Ident ||
        !p.kid(0).symbol().primed || sub.count(p.kid(0).symbol())) {
      continue;
    }
    sub[p.kid(0).symbol()] = p.kid(1);
    drop[i] = true;
  }
  Sequent out;
  for (std::size_t i = 0; i < s.hypotheses.size(); ++i) {
    if (drop[i]) continue;
    Hypothesis h = s.hypotheses[i];
    h.predicate = substitute(h.predicate, sub);
    out.hypotheses.push_back(std::move(h));
  }
  out.goal = substitute(s.goal, sub);
  return out;
}

namespace detail {

// Everything an obligation for one event may draw on.
struct EventFrame {
  const Machine* machine = nullptr;
  const Machine* abstract = nullptr;
  const Event* event = nullptr;
  std::vector<const Event*> abstractEvents;  // empty for new events
  std::vector<Hypothesis> axioms, abstractInvariants, invariants, theorems;
  std::vector<Hypothesis> guards;  // guards and guard theorems, in order
  std::vector<Hypothesis> ba, w1, w2;
  std::set<std::string> primable;
};

inline Hypothesis hyp(const std::string& label, const Formula& p, HypothesisOrigin o) {
  return Hypothesis{label, p, false, o};
}

inline std::vector<Hypothesis> axiomHypotheses(const std::vector<const Context*>& ctxs) {
  std::vector<Hypothesis> out;
  for (const Context* c : ctxs) {
    for (const auto& a : c->axioms) out.push_back(hyp(a.label, a.predicate, HypothesisOrigin::Axiom));
  }
  return out;
}

inline std::set<std::string> assigned(const std::vector<const Event*>& es) {
  std::set<std::string> out;
  for (const Event* e : es) {
    for (const auto& a : e->actions) out.insert(a.targets.begin(), a.targets.end());
  }
  return out;
}

inline EventFrame frame(const Machine& m, const Event& e, const Workspace& ws) {
  EventFrame f;
  f.machine = &m;
  f.abstract = ws.abstractOf(m);
  f.event = &e;
  f.axioms = axiomHypotheses(ws.visibleContexts(m));
  for (const auto& v : m.variables) f.primable.insert(v.name);
  if (f.abstract) {
    for (const auto& v : f.abstract->variables) f.primable.insert(v.name);
    for (const auto& i : f.abstract->invariants) {
      f.abstractInvariants.push_back(hyp(i.label, i.predicate, HypothesisOrigin::AbstractInvariant));
    }
    for (const auto& t : f.abstract->theorems) {
      f.abstractInvariants.push_back(hyp(t.label, t.predicate, HypothesisOrigin::AbstractInvariant));
    }
    if (e.isInitialisation()) {
      f.abstractEvents.push_back(&f.abstract->initialisation);
    } else {
      for (const auto& r : e.refines) {
        if (const Event* ae = f.abstract->event(r)) f.abstractEvents.push_back(ae);
      }
    }
  }
  for (const auto& i : m.invariants) f.invariants.push_back(hyp(i.label, i.predicate, HypothesisOrigin::Invariant));
  for (const auto& t : m.theorems) f.theorems.push_back(hyp(t.label, t.predicate, HypothesisOrigin::Theorem));
  for (const auto& g : e.guards) f.guards.push_back(hyp(g.label, g.predicate, HypothesisOrigin::Guard));
  for (const auto& g : e.guardTheorems) {
    f.guards.push_back(hyp(g.label, g.predicate, HypothesisOrigin::GuardTheorem));
  }
  for (const auto& c : beforeAfter(e, m.variableNames()).conjuncts) {
    f.ba.push_back(hyp(c.label, c.predicate, HypothesisOrigin::BeforeAfter));
  }
  for (const auto& w : e.witnesses) {
    auto& dst = w.subject.primed ? f.w2 : f.w1;
    dst.push_back(hyp("WIT/" + w.subject.str(), w.predicate, HypothesisOrigin::Witness));
  }
  // disappearing abstract variables left unchanged by the abstract event keep their value
  if (f.abstract) {
    std::set<std::string> concrete;
    for (const auto& v : m.variables) concrete.insert(v.name);
    const std::set<std::string> absAssigned = assigned(f.abstractEvents);
    std::set<Symbol> declared;
    for (const auto& w : e.witnesses) declared.insert(w.subject);
    for (const auto& v : f.abstract->variables) {
      if (concrete.count(v.name) || absAssigned.count(v.name) || declared.count(Symbol{v.name, true})) {
        continue;
      }
      const Formula eq = Formula::compare(CmpOp::Eq, Formula::ident(v.name, true), Formula::ident(v.name));
      f.w2.push_back(hyp("WIT/" + v.name + "'", eq, HypothesisOrigin::Witness));
    }
  }
  return f;
}

inline void append(std::vector<Hypothesis>& dst, const std::vector<Hypothesis>& src, bool selected) {
  for (Hypothesis h : src) {
    h.selected = selected;
    dst.push_back(std::move(h));
  }
}

inline ProofObligation obligation(std::string name, PoKind kind, std::vector<Hypothesis> hyps,
                                  Formula goal, PoOrigin origin) {
  ProofObligation po;
  po.name = std::move(name);
  po.kind = kind;
  po.sequent.hypotheses = std::move(hyps);
  po.sequent.goal = std::move(goal);
  po.origin = std::move(origin);
  return po;
}

// Axioms, invariants, and (when there is a pre-state) everything below them.
inline std::vector<Hypothesis> stateHypotheses(const EventFrame& f, bool withTheorems) {
  std::vector<Hypothesis> out;
  append(out, f.axioms, false);
  if (!f.event->isInitialisation()) {
    append(out, f.abstractInvariants, false);
    append(out, f.invariants, false);
    if (withTheorems) append(out, f.theorems, false);
  }
  return out;
}

inline std::vector<ProofObligation> guardTheoremPos(const EventFrame& f) {
  std::vector<ProofObligation> out;
  const Event& e = *f.event;
  std::vector<Hypothesis> earlier;
  for (const auto& g : f.guards) {
    if (g.origin == HypothesisOrigin::GuardTheorem) {
      auto hyps = stateHypotheses(f, true);
      append(hyps, earlier, true);
      for (auto& h : hyps) h.selected = true;
      out.push_back(obligation(e.name + "/" + g.label + "/THM", PoKind::THM, std::move(hyps), g.predicate,
                               {f.machine->name, e.name, g.label}));
    }
    earlier.push_back(g);
  }
  return out;
}

inline std::vector<Hypothesis> refinementBase(const EventFrame& f) {
  auto hyps = stateHypotheses(f, true);
  append(hyps, f.guards, true);
  return hyps;
}

inline std::optional<ProofObligation> mergePo(const EventFrame& f) {
  if (f.abstractEvents.size() < 2) return std::nullopt;
  std::vector<Formula> alternatives;
  for (const Event* ae : f.abstractEvents) {
    std::vector<Formula> gs;
    for (const auto& g : ae->guards) gs.push_back(g.predicate);
    alternatives.push_back(conjoin(std::move(gs)));
  }
  return obligation(f.event->name + "/MRG", PoKind::MRG, refinementBase(f),
                    Formula::disjunction(std::move(alternatives)), {f.machine->name, f.event->name, ""});
}

inline std::vector<ProofObligation> guardPos(const EventFrame& f) {
  std::vector<ProofObligation> out;
  if (f.abstractEvents.size() != 1) return out;
  for (const auto& g : f.abstractEvents.front()->guards) {
    auto hyps = refinementBase(f);
    append(hyps, f.w1, true);
    out.push_back(obligation(f.event->name + "/" + g.label + "/GRD", PoKind::GRD, std::move(hyps), g.predicate,
                             {f.machine->name, f.event->name, g.label}));
  }
  return out;
}

inline std::vector<ProofObligation> witnessPos(const EventFrame& f) {
  std::vector<ProofObligation> out;
  for (const auto& w : f.event->witnesses) {
    auto hyps = refinementBase(f);
    if (w.subject.primed) append(hyps, f.ba, true);
    out.push_back(obligation(f.event->name + "/" + w.subject.str() + "/WFIS", PoKind::WFIS, std::move(hyps),
                             Formula::exists({w.subject}, w.predicate),
                             {f.machine->name, f.event->name, w.subject.str()}));
  }
  return out;
}

inline std::vector<Hypothesis> simulationHypotheses(const EventFrame& f) {
  auto hyps = refinementBase(f);
  append(hyps, f.ba, true);
  append(hyps, f.w1, true);
  append(hyps, f.w2, true);
  return hyps;
}

inline std::vector<ProofObligation> simulationPos(const EventFrame& f) {
  std::vector<ProofObligation> out;
  if (f.abstractEvents.empty()) return out;
  // merged abstract events share their actions
  const Event& ae = *f.abstractEvents.front();
  const BeforeAfter absBa = beforeAfter(ae, f.abstract->variableNames());
  for (const auto& a : ae.actions) {
    std::string key = "BA/";
    for (std::size_t i = 0; i < a.targets.size(); ++i) key += (i ? "," : "") + a.targets[i];
    Formula goal;
    for (const auto& c : absBa.conjuncts) {
      if (c.label == key) goal = c.predicate;
    }
    out.push_back(obligation(f.event->name + "/" + a.label + "/SIM", PoKind::SIM, simulationHypotheses(f), goal,
                             {f.machine->name, f.event->name, a.label}));
  }
  return out;
}

inline std::vector<ProofObligation> invariantPos(const EventFrame& f) {
  std::vector<ProofObligation> out;
  for (const auto& inv : f.machine->invariants) {
    auto hyps = simulationHypotheses(f);
    for (auto& h : hyps) {
      if (h.origin == HypothesisOrigin::Invariant && h.label == inv.label) h.selected = true;
    }
    out.push_back(obligation(f.event->name + "/" + inv.label + "/INV", PoKind::INV, std::move(hyps),
                             prime(inv.predicate, f.primable), {f.machine->name, f.event->name, inv.label}));
  }
  return out;
}

}  // namespace detail

// A diagnostic for each new event assigning a variable of the abstract machine.
inline std::vector<Diagnostic> checkNewEvents(const Machine& m, const Workspace& ws) {
  std::vector<Diagnostic> out;
  const Machine* abs = ws.abstractOf(m);
  if (!abs) return out;
  std::set<std::string> absVars;
  for (const auto& v : abs->variables) absVars.insert(v.name);
  for (const auto& e : m.events) {
    if (!e.isNew()) continue;
    for (const auto& a : e.actions) {
      for (const auto& t : a.targets) {
        if (absVars.count(t)) {
          out.push_back({m.name, a.location, "new-event-modifies-abstract",
                         "new event '" + e.name + "' assigns abstract variable '" + t + "'"});
        }
      }
    }
  }
  return out;
}

// Machine obligations in generation order: machine theorems, then per event
// (initialisation first) THM, MRG, GRD, WFIS, SIM, INV.
inline PoSet generate(const Machine& m, const Workspace& ws) {
  PoSet set;
  set.source = m.name;
  set.mode = HintMode::Tactic;
  {
    auto axioms = detail::axiomHypotheses(ws.visibleContexts(m));
    std::vector<Hypothesis> base = axioms;
    if (const Machine* abs = ws.abstractOf(m)) {
      for (const auto& i : abs->invariants) base.push_back(detail::hyp(i.label, i.predicate, HypothesisOrigin::AbstractInvariant));
      for (const auto& t : abs->theorems) base.push_back(detail::hyp(t.label, t.predicate, HypothesisOrigin::AbstractInvariant));
    }
    for (const auto& i : m.invariants) base.push_back(detail::hyp(i.label, i.predicate, HypothesisOrigin::Invariant));
    for (const auto& t : m.theorems) {
      auto hyps = base;
      for (auto& h : hyps) h.selected = true;
      set.obligations.push_back(detail::obligation(m.name + "/" + t.label + "/THM", PoKind::THM, std::move(hyps),
                                                   t.predicate, {m.name, "", t.label}));
      base.push_back(detail::hyp(t.label, t.predicate, HypothesisOrigin::Theorem));
    }
  }
  for (const Event* e : m.allEvents()) {
    const detail::EventFrame f = detail::frame(m, *e, ws);
    auto add = [&](std::vector<ProofObligation> pos) {
      for (auto& po : pos) set.obligations.push_back(std::move(po));
    };
    add(detail::guardTheoremPos(f));
    if (auto mrg = detail::mergePo(f)) set.obligations.push_back(std::move(*mrg));
    add(detail::guardPos(f));
    add(detail::witnessPos(f));
    add(detail::simulationPos(f));
    add(detail::invariantPos(f));
  }
  return set;
}

// Context theorem obligations, each against the axioms declared before it.
inline PoSet generate(const Context& c, const Workspace& ws) {
  PoSet set;
  set.source = c.name;
  std::vector<Hypothesis> prior;
  for (const Context* x : ws.contextChain(c)) {
    for (const auto& a : x->axioms) {
      if (x == &c && a.theorem) {
        auto hyps = prior;
        for (auto& h : hyps) h.selected = true;
        set.obligations.push_back(detail::obligation(c.name + "/" + a.label + "/THM", PoKind::THM,
                                                     std::move(hyps), a.predicate, {c.name, "", a.label}));
      }
      prior.push_back(detail::hyp(a.label, a.predicate, HypothesisOrigin::Axiom));
    }
  }
  return set;
}

inline std::string hintText(const Hint& h) {
  if (h.kind == HintKind::UseHypothesis) return "use " + h.hypothesis;
  return "split case using " + toString(h.casePredicate);
}

// Hints targeting an obligation: those of its event naming its invariant.
inline std::vector<Hint> hintsFor(const ProofObligation& po, const Machine& m) {
  std::vector<Hint> out;
  if (po.kind != PoKind::INV || po.origin.component != m.name) return out;
  const Event* e = m.event(po.origin.event);
  if (!e) return out;
  for (const auto& h : e->hints) {
    if (h.target == po.origin.label) out.push_back(h);
  }
  return out;
}

struct HintedPoSet {
  PoSet set;
  std::vector<Diagnostic> diagnostics;
};

// The pog-mode interpretation: hints rewrite the obligations they target.
inline HintedPoSet applyHintsPog(const PoSet& in, const Machine& m) {
  HintedPoSet out;
  out.set.mode = HintMode::Pog;
  out.set.source = in.source;
  std::set<std::string> targeted;
  for (const Event* e : m.allEvents()) {
    for (const auto& h : e->hints) {
      const std::string name = e->name + "/" + h.target + "/INV";
      if (!in.find(name)) {
        out.diagnostics.push_back({m.name, h.location, "hint-target-missing",
                                   "no obligation '" + name + "' for hint '" + hintText(h) + "'"});
      }
      targeted.insert(name);
    }
  }
  for (const auto& po : in.obligations) {
    const auto hints = targeted.count(po.name) ? hintsFor(po, m) : std::vector<Hint>{};
    if (hints.empty()) {
      out.set.obligations.push_back(po);
      continue;
    }
    const Hint& h = hints.front();
    if (h.kind == HintKind::UseHypothesis) {
      ProofObligation t = po;
      if (t.sequent.find(h.hypothesis)) {
        t.sequent = tacticSelect(t.sequent, h.hypothesis);
      } else {
        out.diagnostics.push_back({m.name, h.location, "hint-hypothesis-missing",
                                   "'" + h.hypothesis + "' is not a hypothesis of '" + po.name + "'"});
      }
      t.hintApplied = hintText(h);
      out.set.obligations.push_back(std::move(t));
      continue;
    }
    auto [pos, neg] = tacticCase(po.sequent, h.casePredicate);
    int n = 1;
    for (Sequent* s : {&pos, &neg}) {
      ProofObligation t = po;
      t.name = po.name + "/case" + std::to_string(n++);
      t.sequent = selectRelevant(*s, h.casePredicate);
      t.hintApplied = hintText(h);
      out.set.obligations.push_back(std::move(t));
    }
  }
  return out;
}

inline PoSet generate(const Machine& m, const Workspace& ws, HintMode mode,
                      std::vector<Diagnostic>* diagnostics = nullptr) {
  PoSet set = generate(m, ws);
  if (mode == HintMode::Tactic) return set;
  HintedPoSet hinted = applyHintsPog(set, m);
  if (diagnostics) {
    diagnostics->insert(diagnostics->end(), hinted.diagnostics.begin(), hinted.diagnostics.end());
  }
  return std::move(hinted.set);
}

}  // namespace ebhint
