#include <gtest/gtest.h>

#include "ebhint/decide.hpp"
#include "ebhint/linear.hpp"
#include "ebhint/printer.hpp"
#include "oracle.hpp"
#include "support.hpp"

using namespace ebhint;
using testing_support::F;

namespace {

DecideResult run(std::vector<std::string> hyps, const std::string& goal) {
  std::vector<Formula> hs;
  for (const auto& h : hyps) hs.push_back(F(h));
  return decide(hs, F(goal));
}

bool refutes(const Valuation& v, std::vector<std::string> hyps, const std::string& goal) {
  for (const auto& h : hyps) {
    if (evaluate(F(h), v) != std::optional<bool>(true)) return false;
  }
  return evaluate(F(goal), v) == std::optional<bool>(false);
}

}  // namespace

TEST(Decide, CaseSplitConsequence) {
  EXPECT_EQ(run({"A <= C", "A = 1 => B <= C", "A = 1"}, "B - 1 <= C").verdict, Verdict::Proved);
}

TEST(Decide, HypSel0DefaultSequentRefuted) {
  std::vector<std::string> hyps = {"x in NAT", "x in {1, 2}"};
  auto r = run(hyps, "y + 1 in NAT");
  ASSERT_EQ(r.verdict, Verdict::NotProved);
  ASSERT_TRUE(r.counterexample.has_value());
  EXPECT_TRUE(refutes(*r.counterexample, hyps, "y + 1 in NAT"));
  EXPECT_LE(r.counterexample->at(Symbol("y")), -2);
}

TEST(Decide, HypSel0FullSequentProved) {
  EXPECT_EQ(run({"x in NAT", "x /= 0 => y in NAT", "x in {1, 2}"}, "y + 1 in NAT").verdict, Verdict::Proved);
}

TEST(Decide, ExcludedMiddle) {
  EXPECT_EQ(run({}, "A = 1 or A /= 1").verdict, Verdict::Proved);
  EXPECT_EQ(run({}, "x >= 0 or x >= 1").verdict, Verdict::NotProved);
  EXPECT_EQ(run({"x >= 0"}, "x >= 0 or x >= 1").verdict, Verdict::Proved);
}

TEST(Decide, IntegerTightening) {
  // rationally satisfiable, integrally not
  EXPECT_EQ(run({"0 < x", "x < 1"}, "false").verdict, Verdict::Proved);
  EXPECT_EQ(run({"2 * x = 1"}, "false").verdict, Verdict::Proved);
  EXPECT_EQ(run({"x /= 3", "x >= 3", "x <= 3"}, "false").verdict, Verdict::Proved);
  EXPECT_EQ(run({"3 * a = b", "b = -5"}, "false").verdict, Verdict::Proved);
}

TEST(Decide, ParityGapStillYieldsCounterexample) {
  std::vector<std::string> hyps = {"b = -5", "(-2 * a /= a - b) <=> (d <= 5)"};
  auto r = run(hyps, "false");
  ASSERT_EQ(r.verdict, Verdict::NotProved);
  ASSERT_TRUE(r.counterexample.has_value());
  EXPECT_TRUE(refutes(*r.counterexample, hyps, "false"));
}

TEST(Decide, SetLiteralsAndNaturals) {
  EXPECT_EQ(run({"x in {1, 2}"}, "x >= 1 & x <= 2").verdict, Verdict::Proved);
  EXPECT_EQ(run({"x' = 1"}, "x' in {1, 2}").verdict, Verdict::Proved);
  EXPECT_EQ(run({}, "x in INT").verdict, Verdict::Proved);
  EXPECT_EQ(run({}, "-1 in NAT").verdict, Verdict::NotProved);
}

TEST(Decide, UnsupportedIsNeverAVerdict) {
  auto r = run({"x * y = 1"}, "x = 1");
  EXPECT_EQ(r.verdict, Verdict::Unsupported);
  EXPECT_FALSE(r.reason.empty());
  EXPECT_EQ(run({}, "exists p. p = x").verdict, Verdict::Unsupported);
}

TEST(Decide, EnumerationBound) {
  DecideOptions o;
  o.maxAssignments = 1;
  auto r = decide({F("a = 1 or a = 2"), F("b = 1 or b = 2")}, F("a + b >= 9"), o);
  EXPECT_EQ(r.verdict, Verdict::NotProved);
}

TEST(Decide, RandomAgainstOracle) {
  oracle::Generator g(99);
  int proved = 0, refuted = 0;
  for (int i = 0; i < 300; ++i) {
    std::vector<Formula> hs;
    for (int k = g.pick(0, 5); k > 0; --k) hs.push_back(g.predicate(g.pick(0, 2)));
    Formula goal = g.predicate(g.pick(0, 2));
    auto r = decide(hs, goal);
    ASSERT_NE(r.verdict, Verdict::Unsupported);
    if (r.verdict == Verdict::Proved) {
      ++proved;
      EXPECT_TRUE(oracle::valid(hs, goal)) << toString(goal);
    } else {
      ASSERT_TRUE(r.counterexample.has_value()) << toString(goal);
      oracle::Env env;
      for (const auto& [s, v] : *r.counterexample) env[oracle::key(s)] = v;
      for (const auto& h : hs) EXPECT_TRUE(oracle::holds(h, env));
      EXPECT_FALSE(oracle::holds(goal, env));
      ++refuted;
    }
  }
  EXPECT_GT(proved, 50);
  EXPECT_GT(refuted, 50);
}

TEST(FourierMotzkin, Basic) {
  // x - 3 <= 0, -x + 3 <= 0  -> x = 3
  FourierMotzkin fm(1, {});
  fm.addInequality({{1}, -3});
  fm.addInequality({{-1}, 3});
  auto r = fm.solve();
  ASSERT_EQ(r.verdict, FmVerdict::Feasible);
  ASSERT_TRUE(r.model.has_value());
  EXPECT_EQ((*r.model)[0], 3);
}

TEST(FourierMotzkin, EqualitySubstitution) {
  // x + y = 4, x - y = 0  -> x = y = 2
  FourierMotzkin fm(2, {});
  fm.addEquality({{1, 1}, -4});
  fm.addEquality({{1, -1}, 0});
  auto r = fm.solve();
  ASSERT_EQ(r.verdict, FmVerdict::Feasible);
  ASSERT_TRUE(r.model.has_value());
  EXPECT_EQ((*r.model)[0], 2);
  EXPECT_EQ((*r.model)[1], 2);
}

TEST(FourierMotzkin, Infeasible) {
  FourierMotzkin fm(2, {});
  fm.addEquality({{2, -2}, -1});  // 2x - 2y = 1
  EXPECT_EQ(fm.solve().verdict, FmVerdict::Infeasible);
}

TEST(Linearize, CollectsCoefficients) {
  LinearTerm t = linearize(F("2 * (x - y) + 3 - x"));
  EXPECT_EQ(t.constant, 3);
  EXPECT_EQ(t.coeffs.at(Symbol("x")), 1);
  EXPECT_EQ(t.coeffs.at(Symbol("y")), -2);
  EXPECT_THROW(linearize(F("x * y")), UnsupportedConstruct);
}
