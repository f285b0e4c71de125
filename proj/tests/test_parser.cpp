#include <gtest/gtest.h>

#include "ebhint/cli/loader.hpp"
#include "ebhint/parser.hpp"
#include "ebhint/printer.hpp"
#include "support.hpp"

using namespace ebhint;
using testing_support::F;

namespace {

const char* const kFixtures[] = {"hypSel0", "hypSel0_workaround", "case0", "case0_abstract", "case0_merge"};

}  // namespace

TEST(Parser, FixturesRoundTrip) {
  for (const char* name : kFixtures) {
    const std::string text = cli::readFile(testing_support::model(name));
    auto first = parse(text);
    ASSERT_TRUE(first.ok()) << name;
    const std::string printed = prettyPrint(*first.component);
    auto second = parse(printed);
    ASSERT_TRUE(second.ok()) << name << "\n" << printed;
    EXPECT_EQ(*first.component, *second.component) << name;
    EXPECT_EQ(prettyPrint(*second.component), printed) << name;
  }
}

TEST(Parser, HypSel0Structure) {
  Machine m = testing_support::machine(cli::readFile(testing_support::model("hypSel0")));
  EXPECT_EQ(m.name, "hypSel0");
  EXPECT_EQ(m.variableNames(), (std::vector<std::string>{"x", "y"}));
  ASSERT_EQ(m.invariants.size(), 2u);
  EXPECT_EQ(m.invariants[1].predicate, F("x /= 0 => y in NAT"));
  const Event* set = m.event("set");
  ASSERT_NE(set, nullptr);
  ASSERT_EQ(set->hints.size(), 1u);
  EXPECT_EQ(set->hints[0].kind, HintKind::UseHypothesis);
  EXPECT_EQ(set->hints[0].hypothesis, "hypSel0_2");
  EXPECT_EQ(set->hints[0].target, "hypSel0_1");
  EXPECT_EQ(set->actions[0].rhs, F("y + 1"));
}

TEST(Parser, CaseHint) {
  Machine m = testing_support::machine(cli::readFile(testing_support::model("case0")));
  const Event* set = m.event("set");
  ASSERT_NE(set, nullptr);
  ASSERT_FALSE(set->hints.empty());
  EXPECT_EQ(set->hints[0].kind, HintKind::SplitCase);
  EXPECT_EQ(set->hints[0].casePredicate, F("A = 1"));
  EXPECT_EQ(set->hints[0].target, "case0_1");
}

TEST(Parser, Precedence) {
  EXPECT_EQ(F("a = 1 & b = 2 or c = 3"), F("(a = 1 & b = 2) or c = 3"));
  EXPECT_EQ(F("a = 1 => b = 2 => c = 3"), F("a = 1 => (b = 2 => c = 3)"));
  EXPECT_EQ(F("not a = 1 & b = 2"), F("(not a = 1) & b = 2"));
  EXPECT_EQ(F("2 * a + b = -c"), F("((2 * a) + b) = (-c)"));
  EXPECT_EQ(F("a - b - c = 0"), F("(a - b) - c = 0"));
}

TEST(Parser, UnicodeAndAsciiAgree) {
  EXPECT_EQ(F("x ∈ ℕ ∧ ¬(y ≠ 0)"), F("x in NAT & not(y /= 0)"));
}

TEST(Parser, AssignmentForms) {
  Machine m = testing_support::machine(R"(machine m
variables x y
invariants
  i1: x in INT
events
  initialisation
  then
    a1: x := 0
    a2: y :: {1, 2}
  end
  event e
  any p
  where
    g1: p in NAT
  then
    a1: x, y :| x' = p & y' = x
  end
end
)");
  EXPECT_EQ(m.initialisation.actions[1].kind, AssignmentKind::BecomesMemberOf);
  const Event* e = m.event("e");
  ASSERT_NE(e, nullptr);
  EXPECT_EQ(e->parameters.size(), 1u);
  EXPECT_EQ(e->actions[0].kind, AssignmentKind::BecomesSuchThat);
  EXPECT_EQ(e->actions[0].targets, (std::vector<std::string>{"x", "y"}));
}

TEST(Parser, MissingEndReportsAtEndOfInput) {
  const std::string text = "machine m\nvariables x\nevents\n  initialisation\n  then\n    a1: x := 0\n  end\n";
  auto out = parse(text);
  EXPECT_FALSE(out.ok());
  ASSERT_FALSE(out.diagnostics.empty());
  EXPECT_EQ(out.diagnostics[0].location.line, 8);
  EXPECT_NE(out.diagnostics[0].message.find("end"), std::string::npos) << out.diagnostics[0].message;
}

TEST(Parser, DiagnosticLocations) {
  auto out = parse("machine m\nvariables x\ninvariants\n  i1: x in NAT &\nend\n");
  ASSERT_FALSE(out.diagnostics.empty());
  EXPECT_EQ(out.diagnostics[0].location.line, 5);
  EXPECT_EQ(out.diagnostics[0].location.column, 1);
}

TEST(Parser, RecoversAndReportsSeveralErrors) {
  auto out = parse(R"(machine m
variables x
invariants
  i1: x in
events
  event e
  then
    a1: x :=
  end
end
)");
  EXPECT_FALSE(out.ok());
  EXPECT_GE(out.diagnostics.size(), 2u);
}

TEST(Parser, ReservedWordAsIdentifier) {
  auto out = parse("machine m\nvariables event\nend\n");
  EXPECT_FALSE(out.ok());
}

TEST(Parser, MalformedHint) {
  auto out = parse(R"(machine m
variables x
events
  event e
  then
    a1: x := 1
  hints
    use for i1
  end
end
)");
  ASSERT_FALSE(out.ok());
  EXPECT_EQ(out.diagnostics[0].code, "malformed-hint");
}

TEST(Parser, Context) {
  auto c = std::get<Context>(testing_support::component(R"(context c0
sets S
constants k
axioms
  ax1: k in NAT
  theorem th1: k >= 0
end
)"));
  EXPECT_EQ(c.name, "c0");
  ASSERT_EQ(c.axioms.size(), 2u);
  EXPECT_FALSE(c.axioms[0].theorem);
  EXPECT_TRUE(c.axioms[1].theorem);
}

TEST(Parser, FormulaErrorsThrow) {
  EXPECT_THROW(parseFormula("x +"), std::invalid_argument);
  EXPECT_THROW(parseFormula("x = 1 )"), std::invalid_argument);
}
