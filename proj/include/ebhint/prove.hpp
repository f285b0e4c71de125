#pragma once

// The default automatic tactic: intro, conjunction splitting, the one-point
// rule, hints applied at the start of the proof, optional lasso, then the
// decision core on the selected hypotheses of every open leaf.

#include <chrono>
#include <optional>
#include <string>
#include <vector>

#include "ebhint/decide.hpp"
#include "ebhint/formula.hpp"
#include "ebhint/model.hpp"
#include "ebhint/printer.hpp"
#include "ebhint/sequent.hpp"
#include "ebhint/tactics.hpp"

namespace ebhint {

enum class ProofStatus { Proved, Unproved, Unsupported };

inline const char* statusName(ProofStatus s) {
  switch (s) {
    case ProofStatus::Proved: return "proved";
    case ProofStatus::Unproved: return "unproved";
    case ProofStatus::Unsupported: return "unsupported";
  }
  return "?";
}

struct TraceStep {
  std::string tactic;
  std::string detail;
  int openGoals = 0;
  friend bool operator==(const TraceStep&, const TraceStep&) = default;
};

struct ProofResult {
  ProofStatus status = ProofStatus::Unproved;
  std::vector<TraceStep> trace;
  std::optional<Valuation> counterexample;
  std::string reason;
};

struct ProveOptions {
  bool lasso = false;
  bool allHypotheses = false;
  std::chrono::milliseconds timeout{2000};
  std::size_t maxAssignments = std::size_t{1} << 16;
};

namespace detail {

struct Leaf {
  Sequent sequent;
  std::string path;  // branch names, for the trace
};

inline bool closesSyntactically(const Sequent& s, bool allHypotheses) {
  if (s.goal.kind() == Kind::True) return true;
  for (const auto& h : s.hypotheses) {
    if (!allHypotheses && !h.selected) continue;
    if (h.predicate.kind() == Kind::False || h.predicate == s.goal) return true;
  }
  return false;
}

class Pipeline {
 public:
  Pipeline(const ProveOptions& opts, ProofResult& result) : opts_(opts), result_(result) {}

  void step(std::string tactic, std::string detail) {
    result_.trace.push_back({std::move(tactic), std::move(detail), static_cast<int>(leaves.size())});
  }

  std::vector<Leaf> leaves;

  void intro() {
    bool applied = false;
    for (auto& l : leaves) {
      while (l.sequent.goal.kind() == Kind::Implies) {
        Sequent& s = l.sequent;
        s.hypotheses.push_back({s.freshLabel("intro"), s.goal.kid(0), true, HypothesisOrigin::Intro});
        s.goal = Formula(s.goal.kid(1));
        applied = true;
      }
    }
    if (applied) step("intro", "");
  }

  void splitConjunction() {
    std::vector<Leaf> next;
    bool applied = false;
    for (auto& l : leaves) {
      std::vector<Formula> parts;
      conjuncts(l.sequent.goal, parts);
      if (l.sequent.goal.kind() != Kind::And) {
        next.push_back(std::move(l));
        continue;
      }
      applied = true;
      for (std::size_t i = 0; i < parts.size(); ++i) {
        Leaf c = l;
        c.sequent.goal = parts[i];
        c.path += "/" + std::to_string(i + 1);
        next.push_back(std::move(c));
      }
    }
    leaves = std::move(next);
    if (applied) step("splitConjunction", "");
  }

  void onePointAll() {
    bool applied = false;
    for (auto& l : leaves) {
      while (auto g = onePoint(l.sequent.goal)) {
        l.sequent.goal = *g;
        applied = true;
      }
    }
    if (applied) step("onePoint", "");
  }

  void hint(const Hint& h) {
    if (h.kind == HintKind::UseHypothesis) {
      for (auto& l : leaves) {
        if (l.sequent.find(h.hypothesis)) l.sequent = tacticSelect(l.sequent, h.hypothesis);
      }
      step("selectHypothesis", h.hypothesis);
      return;
    }
    std::vector<Leaf> next;
    for (auto& l : leaves) {
      auto [pos, neg] = tacticCase(l.sequent, h.casePredicate);
      next.push_back({selectRelevant(std::move(pos), h.casePredicate), l.path + "/case1"});
      next.push_back({selectRelevant(std::move(neg), h.casePredicate), l.path + "/case2"});
    }
    leaves = std::move(next);
    step("caseSplit", toString(h.casePredicate));
  }

  void lasso() {
    for (auto& l : leaves) l.sequent = tacticLasso(std::move(l.sequent));
    step("lasso", "");
  }

  // Closes what it can; returns the overall status.
  ProofStatus close(const Sequent& original, Clock::time_point deadline) {
    DecideOptions dopts;
    dopts.maxAssignments = opts_.maxAssignments;
    dopts.deadline = deadline;
    ProofStatus status = ProofStatus::Proved;
    std::size_t open = leaves.size();
    for (const auto& l : leaves) {
      const std::string where = l.path.empty() ? "" : l.path.substr(1);
      if (closesSyntactically(l.sequent, opts_.allHypotheses)) {
        --open;
        result_.trace.push_back({"closeSyntactic", where, static_cast<int>(open)});
        continue;
      }
      DecideResult r = decide(l.sequent.predicates(!opts_.allHypotheses), l.sequent.goal, dopts);
      if (r.verdict == Verdict::Proved) {
        --open;
        result_.trace.push_back({"decideSelected", where, static_cast<int>(open)});
        continue;
      }
      result_.trace.push_back({"decideSelected", where + (where.empty() ? "" : " ") + "failed",
                               static_cast<int>(open)});
      if (r.verdict == Verdict::Unsupported) {
        if (status == ProofStatus::Proved) {
          status = ProofStatus::Unsupported;
          result_.reason = r.reason;
        }
        continue;
      }
      if (status != ProofStatus::Unproved) result_.reason = r.reason;
      status = ProofStatus::Unproved;
      if (!result_.counterexample && r.counterexample) {
        Valuation v = *r.counterexample;
        for (const auto& h : original.hypotheses) {
          for (const auto& s : freeIdentifiers(h.predicate)) v.emplace(s, 0);
        }
        for (const auto& s : freeIdentifiers(original.goal)) v.emplace(s, 0);
        if (refutes(original, v)) {
          result_.counterexample = std::move(v);
        } else if (result_.reason.empty()) {
          result_.reason = "goal does not follow from the hypotheses used";
        }
      }
    }
    return status;
  }

 private:
  static bool refutes(const Sequent& s, const Valuation& v) {
    for (const auto& h : s.hypotheses) {
      auto r = evaluate(h.predicate, v);
      if (!r || !*r) return false;
    }
    auto g = evaluate(s.goal, v);
    return g && !*g;
  }

  const ProveOptions& opts_;
  ProofResult& result_;
};

}  // namespace detail

// Proves one obligation. In pog mode the hints were already applied to the
// obligation and `hints` should be empty.
inline ProofResult proveObligation(const ProofObligation& po, const std::vector<Hint>& hints,
                                   const ProveOptions& opts = {}) {
  ProofResult result;
  detail::Pipeline p(opts, result);
  const auto deadline = Clock::now() + opts.timeout;
  try {
    p.leaves.push_back({po.sequent, ""});
    p.intro();
    p.splitConjunction();
    p.onePointAll();
    for (const auto& h : hints) p.hint(h);
    if (opts.lasso) p.lasso();
    result.status = p.close(po.sequent, deadline);
    if (result.status == ProofStatus::Proved) result.reason.clear();
  } catch (const DeadlineExceeded&) {
    result.status = ProofStatus::Unproved;
    result.reason = "timeout";
    result.counterexample.reset();
  }
  return result;
}

}  // namespace ebhint
