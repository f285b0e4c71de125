#include <gtest/gtest.h>

#include "ebhint/pog.hpp"
#include "ebhint/prove.hpp"
#include "support.hpp"

using namespace ebhint;
using testing_support::F;

namespace {

struct Fixture {
  Workspace ws;
  Fixture() {
    for (const char* n : {"case0_abstract", "case0_merge", "hypSel0", "hypSel0_workaround", "case0"}) {
      ws.add(testing_support::component(cli::readFile(testing_support::model(n))));
    }
  }
  const Machine& m(const std::string& n) const { return *ws.machine(n); }
};

ProofResult proveNamed(const Fixture& fx, const std::string& machine, const std::string& po,
                       bool withHints, HintMode mode = HintMode::Tactic, ProveOptions opts = {}) {
  Machine m = withHints ? fx.m(machine) : withoutHints(fx.m(machine));
  PoSet s = generate(m, fx.ws, mode);
  const ProofObligation* o = s.find(po);
  if (!o) throw std::runtime_error("missing " + po);
  return proveObligation(*o, mode == HintMode::Tactic ? hintsFor(*o, m) : std::vector<Hint>{}, opts);
}

bool hasStep(const ProofResult& r, const std::string& tactic, const std::string& detail = "") {
  for (const auto& s : r.trace) {
    if (s.tactic == tactic && (detail.empty() || s.detail == detail)) return true;
  }
  return false;
}

}  // namespace

TEST(Prove, HypSel0WithoutHintIsUnproved) {
  Fixture fx;
  auto r = proveNamed(fx, "hypSel0", "set/hypSel0_1/INV", false);
  EXPECT_EQ(r.status, ProofStatus::Unproved);
  // the selected-only refutation does not falsify the full sequent
  EXPECT_FALSE(r.counterexample.has_value());
  EXPECT_FALSE(r.reason.empty());
}

TEST(Prove, HypSel0UseHint) {
  Fixture fx;
  auto r = proveNamed(fx, "hypSel0", "set/hypSel0_1/INV", true);
  EXPECT_EQ(r.status, ProofStatus::Proved);
  EXPECT_TRUE(hasStep(r, "selectHypothesis", "hypSel0_2"));
  EXPECT_EQ(proveNamed(fx, "hypSel0", "set/hypSel0_1/INV", true, HintMode::Pog).status, ProofStatus::Proved);
}

TEST(Prove, Case0CaseHint) {
  Fixture fx;
  auto r = proveNamed(fx, "case0", "set/case0_1/INV", true);
  ASSERT_EQ(r.status, ProofStatus::Proved);
  EXPECT_TRUE(hasStep(r, "caseSplit", "A = 1"));
  int closed = 0;
  for (const auto& s : r.trace) {
    if (s.tactic == "decideSelected" && s.detail.find("failed") == std::string::npos) ++closed;
  }
  EXPECT_EQ(closed, 2);
  EXPECT_EQ(r.trace.back().openGoals, 0);
  EXPECT_EQ(proveNamed(fx, "case0", "set/case0_1/INV", false).status, ProofStatus::Unproved);
}

TEST(Prove, Case0PogBranches) {
  Fixture fx;
  for (const char* n : {"set/case0_1/INV/case1", "set/case0_1/INV/case2"}) {
    EXPECT_EQ(proveNamed(fx, "case0", n, true, HintMode::Pog).status, ProofStatus::Proved) << n;
  }
}

TEST(Prove, Workarounds) {
  Fixture fx;
  EXPECT_EQ(proveNamed(fx, "hypSel0_workaround", "set/thm1/THM", true).status, ProofStatus::Proved);
  EXPECT_EQ(proveNamed(fx, "hypSel0_workaround", "set/hypSel0_1/INV", true).status, ProofStatus::Proved);
  EXPECT_EQ(proveNamed(fx, "case0_merge", "set/MRG", true).status, ProofStatus::Proved);
  ProveOptions lasso;
  lasso.lasso = true;
  EXPECT_EQ(proveNamed(fx, "case0_abstract", "set_case1/case0_1/INV", true, HintMode::Tactic, lasso).status,
            ProofStatus::Proved);
}

TEST(Prove, AllHypothesesOption) {
  Fixture fx;
  ProveOptions all;
  all.allHypotheses = true;
  EXPECT_EQ(proveNamed(fx, "hypSel0", "set/hypSel0_1/INV", false, HintMode::Tactic, all).status,
            ProofStatus::Proved);
}

TEST(Prove, CounterexampleFalsifiesSequent) {
  ProofObligation po;
  po.name = "e/i/INV";
  po.sequent.hypotheses.push_back({"i", F("x >= 0"), true, HypothesisOrigin::Invariant});
  po.sequent.hypotheses.push_back({"BA/x", F("x' = x - 1"), true, HypothesisOrigin::BeforeAfter});
  po.sequent.goal = F("x' >= 0");
  auto r = proveObligation(po, {});
  ASSERT_EQ(r.status, ProofStatus::Unproved);
  ASSERT_TRUE(r.counterexample.has_value());
  for (const auto& h : po.sequent.hypotheses) EXPECT_EQ(evaluate(h.predicate, *r.counterexample), true);
  EXPECT_EQ(evaluate(po.sequent.goal, *r.counterexample), false);
}

TEST(Prove, IntroAndConjunctionSplit) {
  ProofObligation po;
  po.sequent.goal = F("x = 1 => x >= 1 & x <= 1");
  auto r = proveObligation(po, {});
  EXPECT_EQ(r.status, ProofStatus::Proved);
  EXPECT_TRUE(hasStep(r, "intro"));
}

TEST(Prove, OnePointWitness) {
  ProofObligation po;
  po.sequent.hypotheses.push_back({"h1", F("k >= 1"), true, HypothesisOrigin::Guard});
  po.sequent.goal = F("exists p. p in {1, 2} & p <= k");
  EXPECT_EQ(proveObligation(po, {}).status, ProofStatus::Proved);
  po.sequent.hypotheses[0].predicate = F("k >= 0");
  EXPECT_EQ(proveObligation(po, {}).status, ProofStatus::Unproved);
}

TEST(Prove, ResidualQuantifierIsUnsupported) {
  ProofObligation po;
  po.sequent.goal = F("forall y. y >= x");
  auto r = proveObligation(po, {});
  EXPECT_EQ(r.status, ProofStatus::Unsupported);
  EXPECT_FALSE(r.reason.empty());
}

TEST(Prove, Timeout) {
  ProofObligation po;
  std::vector<Formula> ds;
  for (int i = 0; i < 24; ++i) {
    const std::string v = "v" + std::to_string(i);
    po.sequent.hypotheses.push_back(
        {"h" + std::to_string(i), F(v + " = 0 or " + v + " = 1"), true, HypothesisOrigin::Invariant});
  }
  po.sequent.goal = F("v0 + v1 + v2 + v3 + v4 + v5 + v6 + v7 + v8 + v9 + v10 + v11 + v12 + v13 + v14 + v15 + "
                      "v16 + v17 + v18 + v19 + v20 + v21 + v22 + v23 <= 23");
  ProveOptions o;
  o.timeout = std::chrono::milliseconds(1);
  auto r = proveObligation(po, {}, o);
  EXPECT_EQ(r.status, ProofStatus::Unproved);
  EXPECT_EQ(r.reason, "timeout");
}
