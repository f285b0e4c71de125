#pragma once

// Sequents with selectable hypotheses, and named proof obligations.

#include <algorithm>
#include <optional>
#include <string>
#include <vector>

#include "ebhint/formula.hpp"

namespace ebhint {

enum class HypothesisOrigin {
  Axiom,
  AbstractInvariant,
  Invariant,
  Theorem,
  Guard,
  GuardTheorem,
  BeforeAfter,
  Witness,
  Case,
  Cut,
  Intro,
};

inline const char* originName(HypothesisOrigin o) {
  switch (o) {
    case HypothesisOrigin::Axiom: return "axiom";
    case HypothesisOrigin::AbstractInvariant: return "abstract-invariant";
    case HypothesisOrigin::Invariant: return "invariant";
    case HypothesisOrigin::Theorem: return "theorem";
    case HypothesisOrigin::Guard: return "guard";
    case HypothesisOrigin::GuardTheorem: return "guard-theorem";
    case HypothesisOrigin::BeforeAfter: return "before-after";
    case HypothesisOrigin::Witness: return "witness";
    case HypothesisOrigin::Case: return "case";
    case HypothesisOrigin::Cut: return "cut";
    case HypothesisOrigin::Intro: return "intro";
  }
  return "?";
}

struct Hypothesis {
  std::string label;
  Formula predicate;
  bool selected = false;
  HypothesisOrigin origin = HypothesisOrigin::Invariant;
  friend bool operator==(const Hypothesis&, const Hypothesis&) = default;
};

// H |- G. The selected flags restrict what the default tactic hands to the decision core.
struct Sequent {
  std::vector<Hypothesis> hypotheses;
  Formula goal;

  const Hypothesis* find(const std::string& label) const {
    auto it = std::find_if(hypotheses.begin(), hypotheses.end(),
                           [&](const Hypothesis& h) { return h.label == label; });
    return it == hypotheses.end() ? nullptr : &*it;
  }
  Hypothesis* find(const std::string& label) {
    auto it = std::find_if(hypotheses.begin(), hypotheses.end(),
                           [&](const Hypothesis& h) { return h.label == label; });
    return it == hypotheses.end() ? nullptr : &*it;
  }
  std::vector<std::string> selectedLabels() const {
    std::vector<std::string> out;
    for (const auto& h : hypotheses) {
      if (h.selected) out.push_back(h.label);
    }
    return out;
  }
  std::vector<Formula> predicates(bool selectedOnly) const {
    std::vector<Formula> out;
    for (const auto& h : hypotheses) {
      if (!selectedOnly || h.selected) out.push_back(h.predicate);
    }
    return out;
  }
  // A label not yet used by any hypothesis, derived from base.
  std::string freshLabel(const std::string& base) const {
    if (!find(base)) return base;
    for (int i = 2;; ++i) {
      std::string candidate = base + "#" + std::to_string(i);
      if (!find(candidate)) return candidate;
    }
  }
  friend bool operator==(const Sequent&, const Sequent&) = default;
};

enum class PoKind { INV, THM, GRD, SIM, WFIS, MRG };

inline const char* kindName(PoKind k) {
  switch (k) {
    case PoKind::INV: return "INV";
    case PoKind::THM: return "THM";
    case PoKind::GRD: return "GRD";
    case PoKind::SIM: return "SIM";
    case PoKind::WFIS: return "WFIS";
    case PoKind::MRG: return "MRG";
  }
  return "?";
}

inline std::optional<PoKind> parseKind(const std::string& s) {
  for (PoKind k : {PoKind::INV, PoKind::THM, PoKind::GRD, PoKind::SIM, PoKind::WFIS, PoKind::MRG}) {
    if (s == kindName(k)) return k;
  }
  return std::nullopt;
}

struct PoOrigin {
  std::string component;  // machine or context name
  std::string event;      // empty for machine and context theorems
  std::string label;      // invariant, guard, action, theorem label, or witness subject
  friend bool operator==(const PoOrigin&, const PoOrigin&) = default;
};

struct ProofObligation {
  std::string name;
  PoKind kind = PoKind::INV;
  Sequent sequent;
  PoOrigin origin;
  std::optional<std::string> hintApplied;

  // Name with any case-split suffix removed.
  std::string rootName() const { return rootOf(name); }

  static std::string rootOf(const std::string& name) {
    for (const char* suffix : {"/case1", "/case2"}) {
      const std::string s = suffix;
      if (name.size() > s.size() && name.compare(name.size() - s.size(), s.size(), s) == 0) {
        return name.substr(0, name.size() - s.size());
      }
    }
    return name;
  }
  friend bool operator==(const ProofObligation&, const ProofObligation&) = default;
};

enum class HintMode { Pog, Tactic };

inline const char* modeName(HintMode m) { return m == HintMode::Pog ? "pog" : "tactic"; }

struct PoSet {
  std::vector<ProofObligation> obligations;
  HintMode mode = HintMode::Tactic;
  std::string source;

  const ProofObligation* find(const std::string& name) const {
    for (const auto& po : obligations) {
      if (po.name == name) return &po;
    }
    return nullptr;
  }
};

}  // namespace ebhint
