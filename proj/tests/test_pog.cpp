#include <gtest/gtest.h>

#include "ebhint/pog.hpp"
#include "ebhint/printer.hpp"
#include "oracle.hpp"
#include "support.hpp"

using namespace ebhint;
using testing_support::F;

namespace {

Workspace fixtures() {
  Workspace ws;
  for (const char* n : {"case0_abstract", "case0_merge", "hypSel0", "hypSel0_workaround", "case0"}) {
    ws.add(testing_support::component(cli::readFile(testing_support::model(n))));
  }
  return ws;
}

std::vector<std::string> names(const PoSet& s) {
  std::vector<std::string> out;
  for (const auto& po : s.obligations) out.push_back(po.name);
  return out;
}

const char* const kAbstract = R"(machine a0
variables x
invariants
  i1: x in NAT
events
  initialisation
  then
    a1: x := 1
  end
  event e
  any p
  where
    g1: p in {1, 2}
  then
    a1: x := p
  end
end
)";

const char* const kConcrete = R"(machine r0
refines a0
variables x k
invariants
  j1: k in INT
events
  initialisation
  then
    a1: x := 1
    a2: k := 1
  end
  event e
  refines e
  where
    h1: k >= 1
  with
    p: p in {1, 2} & p <= k
  then
    a1: x := 1
  end
end
)";

}  // namespace

TEST(Pog, HypSel0Obligations) {
  Workspace ws = fixtures();
  PoSet s = generate(*ws.machine("hypSel0"), ws);
  EXPECT_EQ(names(s), (std::vector<std::string>{"INITIALISATION/hypSel0_1/INV", "INITIALISATION/hypSel0_2/INV",
                                               "set/hypSel0_1/INV", "set/hypSel0_2/INV"}));
  const ProofObligation* po = s.find("set/hypSel0_1/INV");
  ASSERT_NE(po, nullptr);
  EXPECT_EQ(po->kind, PoKind::INV);
  EXPECT_EQ(po->sequent.goal, F("x' in NAT"));
  EXPECT_EQ(po->sequent.selectedLabels(), (std::vector<std::string>{"hypSel0_1", "grd1", "BA/x", "BA/y"}));
  ASSERT_NE(po->sequent.find("hypSel0_2"), nullptr);
  EXPECT_FALSE(po->sequent.find("hypSel0_2")->selected);
  EXPECT_EQ(po->sequent.find("BA/x")->predicate, F("x' = y + 1"));
  EXPECT_EQ(po->sequent.find("BA/y")->predicate, F("y' = y"));
}

TEST(Pog, SequentMatchesBruteForce) {
  // The unhinted default sequent has 14 counterexamples in the box.
  Workspace ws = fixtures();
  PoSet s = generate(*ws.machine("hypSel0"), ws);
  Sequent n = normalizeBeforeAfter(s.find("set/hypSel0_1/INV")->sequent, true);
  EXPECT_EQ(n.goal, F("y + 1 in NAT"));
  EXPECT_EQ(oracle::countCounterexamples(n.predicates(true), n.goal), 14);
  EXPECT_EQ(oracle::countCounterexamples(n.predicates(false), n.goal), 0);
}

TEST(Pog, BeforeAfterLabels) {
  Machine m = testing_support::machine(R"(machine m
variables x y z
events
  event e
  then
    a1: x, y :| x' = y & y' = x
  end
end
)");
  BeforeAfter ba = beforeAfter(*m.event("e"), m.variableNames());
  ASSERT_EQ(ba.conjuncts.size(), 2u);
  EXPECT_EQ(ba.conjuncts[0].label, "BA/x,y");
  EXPECT_EQ(ba.conjuncts[1].label, "BA/z");
  EXPECT_EQ(ba.conjuncts[1].predicate, F("z' = z"));
}

TEST(Pog, NormalizeBeforeAfterDropsDeterministicEqualities) {
  Sequent s;
  s.hypotheses.push_back({"BA/x", F("x' = x + 1"), true, HypothesisOrigin::BeforeAfter});
  s.hypotheses.push_back({"BA/y", F("y' in {1, 2}"), true, HypothesisOrigin::BeforeAfter});
  s.hypotheses.push_back({"i1", F("x >= 0"), false, HypothesisOrigin::Invariant});
  s.goal = F("x' >= y'");
  Sequent n = normalizeBeforeAfter(s);
  EXPECT_EQ(n.goal, F("x + 1 >= y'"));
  EXPECT_EQ(n.find("BA/x"), nullptr);
  EXPECT_NE(n.find("BA/y"), nullptr);
  EXPECT_NE(n.find("i1"), nullptr);
}

TEST(Pog, MergeObligation) {
  Workspace ws = fixtures();
  PoSet s = generate(*ws.machine("case0_merge"), ws);
  const ProofObligation* mrg = s.find("set/MRG");
  ASSERT_NE(mrg, nullptr);
  EXPECT_EQ(mrg->kind, PoKind::MRG);
  EXPECT_EQ(mrg->sequent.goal, F("A = 1 or A /= 1"));
  // merged events have no guard strengthening obligations
  for (const auto& po : s.obligations) EXPECT_NE(po.kind, PoKind::GRD) << po.name;
  ASSERT_NE(s.find("set/act1/SIM"), nullptr);
  EXPECT_EQ(s.find("set/act1/SIM")->sequent.goal, F("A' = B - 1"));
}

TEST(Pog, MergeDisjunctionShape) {
  Machine a = testing_support::machine(R"(machine a
variables x
events
  event e1
  where
    g: x >= 0
  then
    a1: x := 0
  end
  event e2
  where
    g: x >= 1
  then
    a1: x := 0
  end
end
)");
  Machine c = testing_support::machine(R"(machine c
refines a
variables x
events
  event e
  refines e1, e2
  where
    h: x >= 5
  then
    a1: x := 0
  end
end
)");
  Workspace ws;
  ws.add(a);
  ws.add(c);
  PoSet s = generate(c, ws);
  const ProofObligation* mrg = s.find("e/MRG");
  ASSERT_NE(mrg, nullptr);
  EXPECT_EQ(mrg->sequent.goal, F("x >= 0 or x >= 1"));
  EXPECT_EQ(mrg->sequent.selectedLabels(), (std::vector<std::string>{"h"}));
}

TEST(Pog, GuardStrengtheningAndWitness) {
  Workspace ws;
  ws.add(testing_support::machine(kAbstract));
  ws.add(testing_support::machine(kConcrete));
  PoSet s = generate(*ws.machine("r0"), ws);
  const ProofObligation* grd = s.find("e/g1/GRD");
  ASSERT_NE(grd, nullptr);
  EXPECT_EQ(grd->sequent.goal, F("p in {1, 2}"));
  ASSERT_NE(grd->sequent.find("WIT/p"), nullptr);
  EXPECT_TRUE(grd->sequent.find("WIT/p")->selected);

  const ProofObligation* wfis = s.find("e/p/WFIS");
  ASSERT_NE(wfis, nullptr);
  EXPECT_EQ(wfis->kind, PoKind::WFIS);
  EXPECT_EQ(wfis->sequent.goal, F("exists p. p in {1, 2} & p <= k"));
  ASSERT_NE(wfis->sequent.find("i1"), nullptr);
  EXPECT_FALSE(wfis->sequent.find("i1")->selected);

  // oracle: the goal holds exactly for k >= 1
  for (long long k = oracle::kLo; k <= oracle::kHi; ++k) {
    EXPECT_EQ(oracle::holds(wfis->sequent.goal, {{"k", k}}), k >= 1) << k;
  }
  const ProofObligation* sim = s.find("e/a1/SIM");
  ASSERT_NE(sim, nullptr);
  EXPECT_EQ(sim->sequent.goal, F("x' = p"));
}

TEST(Pog, DisappearingVariableGetsFrameWitness) {
  Machine a = testing_support::machine(R"(machine a
variables x v
events
  event e
  then
    a1: x := x + 1
  end
end
)");
  Machine c = testing_support::machine(R"(machine c
refines a
variables x
events
  event e
  refines e
  then
    a1: x := x + 1
  end
end
)");
  Workspace ws;
  ws.add(a);
  ws.add(c);
  PoSet s = generate(c, ws);
  const ProofObligation* sim = s.find("e/a1/SIM");
  ASSERT_NE(sim, nullptr);
  ASSERT_NE(sim->sequent.find("WIT/v'"), nullptr);
  EXPECT_EQ(sim->sequent.find("WIT/v'")->predicate, F("v' = v"));
  EXPECT_EQ(s.find("e/v'/WFIS"), nullptr);
}

TEST(Pog, MachineAndGuardTheorems) {
  Machine m = testing_support::machine(R"(machine m
variables x
invariants
  i1: x in NAT
theorems
  t1: x >= 0
events
  event e
  where
    g1: x >= 2
  thm
    gt1: x >= 1
  then
    a1: x := x - 1
  end
end
)");
  Workspace ws;
  ws.add(m);
  PoSet s = generate(m, ws);
  ASSERT_FALSE(s.obligations.empty());
  EXPECT_EQ(s.obligations[0].name, "m/t1/THM");
  const ProofObligation* gt = s.find("e/gt1/THM");
  ASSERT_NE(gt, nullptr);
  EXPECT_EQ(gt->sequent.predicates(false).size(), gt->sequent.predicates(true).size());
  // machine theorems are available to invariant preservation
  EXPECT_NE(s.find("e/i1/INV")->sequent.find("t1"), nullptr);
}

TEST(Pog, ContextTheorems) {
  Context c = std::get<Context>(testing_support::component(R"(context c0
constants k
axioms
  ax1: k >= 3
  theorem th1: k >= 1
end
)"));
  Workspace ws;
  ws.add(c);
  PoSet s = generate(c, ws);
  ASSERT_EQ(s.obligations.size(), 1u);
  EXPECT_EQ(s.obligations[0].name, "c0/th1/THM");
  EXPECT_EQ(s.obligations[0].sequent.selectedLabels(), (std::vector<std::string>{"ax1"}));
}

TEST(Pog, PogModeCaseHint) {
  Workspace ws = fixtures();
  std::vector<Diagnostic> diags;
  PoSet s = generate(*ws.machine("case0"), ws, HintMode::Pog, &diags);
  EXPECT_TRUE(diags.empty());
  EXPECT_EQ(s.mode, HintMode::Pog);
  EXPECT_EQ(s.obligations.size(), 7u);
  const ProofObligation* c1 = s.find("set/case0_1/INV/case1");
  const ProofObligation* c2 = s.find("set/case0_1/INV/case2");
  ASSERT_NE(c1, nullptr);
  ASSERT_NE(c2, nullptr);
  EXPECT_EQ(c1->sequent.find("case+")->predicate, F("A = 1"));
  EXPECT_EQ(c2->sequent.find("case-")->predicate, F("not A = 1"));
  EXPECT_EQ(c1->rootName(), "set/case0_1/INV");
  EXPECT_EQ(c1->hintApplied, std::optional<std::string>("split case using A = 1"));
  EXPECT_EQ(s.find("set/case0_1/INV"), nullptr);
}

TEST(Pog, PogModeUseHint) {
  Workspace ws = fixtures();
  PoSet s = generate(*ws.machine("hypSel0"), ws, HintMode::Pog);
  const ProofObligation* po = s.find("set/hypSel0_1/INV");
  ASSERT_NE(po, nullptr);
  EXPECT_TRUE(po->sequent.find("hypSel0_2")->selected);
  EXPECT_EQ(po->hintApplied, std::optional<std::string>("use hypSel0_2"));
  // tactic mode leaves the sequent alone
  PoSet t = generate(*ws.machine("hypSel0"), ws, HintMode::Tactic);
  EXPECT_FALSE(t.find("set/hypSel0_1/INV")->sequent.find("hypSel0_2")->selected);
  EXPECT_EQ(hintsFor(*t.find("set/hypSel0_1/INV"), *ws.machine("hypSel0")).size(), 1u);
  EXPECT_TRUE(hintsFor(*t.find("set/hypSel0_2/INV"), *ws.machine("hypSel0")).empty());
}

TEST(Pog, PogModeHintOnInitialisationIsReported) {
  Machine m = testing_support::machine(R"(machine m
variables x
invariants
  i1: x in NAT
  i2: x <= 5
events
  initialisation
  then
    a1: x := 0
  hints
    use i2 for i1
  end
end
)");
  Workspace ws;
  ws.add(m);
  std::vector<Diagnostic> diags;
  generate(m, ws, HintMode::Pog, &diags);
  ASSERT_EQ(diags.size(), 1u);
  EXPECT_EQ(diags[0].code, "hint-hypothesis-missing");
}

TEST(Pog, GenerationIsDeterministic) {
  Workspace ws = fixtures();
  for (const char* n : {"hypSel0", "case0", "case0_merge"}) {
    EXPECT_EQ(generate(*ws.machine(n), ws).obligations, generate(*ws.machine(n), ws).obligations) << n;
  }
}
