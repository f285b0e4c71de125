#pragma once

// Abstract syntax for contexts, machines, and events, including proof hints.

#include <map>
#include <optional>
#include <set>
#include <string>
#include <variant>
#include <vector>

#include "ebhint/formula.hpp"

namespace ebhint {

inline constexpr const char* kInitialisation = "INITIALISATION";

// 1-based source position. Locations never participate in structural equality.
struct SourceLocation {
  int line = 1;
  int column = 1;

  friend bool operator==(const SourceLocation&, const SourceLocation&) { return true; }
  bool before(const SourceLocation& o) const {
    return line < o.line || (line == o.line && column < o.column);
  }
};

struct Declaration {
  std::string name;
  SourceLocation location;
  friend bool operator==(const Declaration&, const Declaration&) = default;
};

struct LabeledPredicate {
  std::string label;
  Formula predicate;
  bool theorem = false;
  SourceLocation location;
  friend bool operator==(const LabeledPredicate&, const LabeledPredicate&) = default;
};

enum class AssignmentKind { Becomes, BecomesMemberOf, BecomesSuchThat };

struct Assignment {
  std::string label;
  AssignmentKind kind = AssignmentKind::Becomes;
  std::vector<std::string> targets;
  Formula rhs;  // expression, set expression, or before-after predicate
  SourceLocation location;
  friend bool operator==(const Assignment&, const Assignment&) = default;
};

struct Witness {
  Symbol subject;
  Formula predicate;
  SourceLocation location;
  friend bool operator==(const Witness&, const Witness&) = default;
};

enum class HintKind { UseHypothesis, SplitCase };

struct Hint {
  HintKind kind = HintKind::UseHypothesis;
  std::string hypothesis;  // UseHypothesis payload
  Formula casePredicate;   // SplitCase payload
  std::string target;      // invariant label
  SourceLocation location;
  friend bool operator==(const Hint&, const Hint&) = default;
};

struct Event {
  std::string name;
  std::vector<std::string> refines;
  std::vector<Declaration> parameters;
  std::vector<LabeledPredicate> guards;
  std::vector<LabeledPredicate> guardTheorems;
  std::vector<Witness> witnesses;
  std::vector<Assignment> actions;
  std::vector<Hint> hints;
  SourceLocation location;

  bool isInitialisation() const { return name == kInitialisation; }
  bool isNew() const { return refines.empty(); }
  bool isMerge() const { return refines.size() > 1; }
  bool empty() const {
    return refines.empty() && parameters.empty() && guards.empty() &&
           guardTheorems.empty() && witnesses.empty() && actions.empty() && hints.empty();
  }
  friend bool operator==(const Event&, const Event&) = default;
};

struct Context {
  std::string name;
  std::optional<std::string> extends;
  std::vector<Declaration> sets;
  std::vector<Declaration> constants;
  std::vector<LabeledPredicate> axioms;  // theorem-flagged entries are context theorems
  SourceLocation location;
  friend bool operator==(const Context&, const Context&) = default;
};

inline Event initialisationEvent() {
  Event e;
  e.name = kInitialisation;
  return e;
}

struct Machine {
  std::string name;
  std::optional<std::string> refines;
  std::optional<std::string> sees;
  std::vector<Declaration> variables;
  std::vector<LabeledPredicate> invariants;
  std::vector<LabeledPredicate> theorems;
  Event initialisation = initialisationEvent();
  std::vector<Event> events;
  SourceLocation location;

  const Event* event(const std::string& n) const {
    if (n == kInitialisation) return &initialisation;
    for (const auto& e : events) {
      if (e.name == n) return &e;
    }
    return nullptr;
  }
  // Initialisation first, then the declared events in order.
  std::vector<const Event*> allEvents() const {
    std::vector<const Event*> out{&initialisation};
    for (const auto& e : events) out.push_back(&e);
    return out;
  }
  std::vector<std::string> variableNames() const {
    std::vector<std::string> out;
    for (const auto& v : variables) out.push_back(v.name);
    return out;
  }
  const LabeledPredicate* invariant(const std::string& label) const {
    for (const auto& i : invariants) {
      if (i.label == label) return &i;
    }
    return nullptr;
  }
  friend bool operator==(const Machine&, const Machine&) = default;
};

// The same machine with every hint removed.
inline Machine withoutHints(Machine m) {
  m.initialisation.hints.clear();
  for (auto& e : m.events) e.hints.clear();
  return m;
}

using Component = std::variant<Context, Machine>;

inline const std::string& componentName(const Component& c) {
  return std::visit([](const auto& x) -> const std::string& { return x.name; }, c);
}

// Every parsed component of a development, addressable by name.
class Workspace {
 public:
  void add(Component c) {
    std::string n = componentName(c);
    components_.insert_or_assign(std::move(n), std::move(c));
  }
  const Context* context(const std::string& name) const {
    auto it = components_.find(name);
    return it == components_.end() ? nullptr : std::get_if<Context>(&it->second);
  }
  const Machine* machine(const std::string& name) const {
    auto it = components_.find(name);
    return it == components_.end() ? nullptr : std::get_if<Machine>(&it->second);
  }

  const Machine* abstractOf(const Machine& m) const {
    return m.refines ? machine(*m.refines) : nullptr;
  }

  // Contexts visible to a context: itself and its extends chain, base first.
  std::vector<const Context*> contextChain(const Context& c) const {
    std::vector<const Context*> chain{&c};
    std::set<std::string> seen{c.name};
    const Context* cur = &c;
    while (cur->extends) {
      const Context* next = context(*cur->extends);
      if (!next || !seen.insert(next->name).second) break;
      chain.push_back(next);
      cur = next;
    }
    return {chain.rbegin(), chain.rend()};
  }

  // Contexts visible to a machine: those seen by it and by its abstractions.
  std::vector<const Context*> visibleContexts(const Machine& m) const {
    std::vector<const Context*> out;
    std::set<std::string> names;
    std::set<std::string> visited;
    std::vector<const Machine*> chain;
    for (const Machine* cur = &m; cur && visited.insert(cur->name).second; cur = abstractOf(*cur)) {
      chain.push_back(cur);
    }
    for (auto it = chain.rbegin(); it != chain.rend(); ++it) {
      if (!(*it)->sees) continue;
      const Context* c = context(*(*it)->sees);
      if (!c) continue;
      for (const Context* x : contextChain(*c)) {
        if (names.insert(x->name).second) out.push_back(x);
      }
    }
    return out;
  }

 private:
  std::map<std::string, Component> components_;
};

}  // namespace ebhint
