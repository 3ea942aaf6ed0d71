#include "doctest.h"

#include <algorithm>

#include "beaver/prover.h"
#include "oracles/closure_oracle.h"

using namespace beaver::eq;

namespace {

std::string prefix(const Term& t) { return oracle::to_prefix(print_term(t)); }

std::optional<int> oracle_length(std::span<const Equation> axioms, const Equation& goal,
                                 int steps, int cap) {
  std::vector<std::pair<std::string, std::string>> ax;
  for (const auto& a : axioms) ax.emplace_back(prefix(a.lhs), prefix(a.rhs));
  oracle::ClosureOracle o(ax, goal.nvars, cap);
  return o.min_length(oracle::freeze(prefix(goal.lhs)), oracle::freeze(prefix(goal.rhs)), steps);
}

std::vector<Equation> eqs(std::initializer_list<const char*> texts) {
  std::vector<Equation> out;
  for (const char* t : texts) out.push_back(parse_equation(t));
  return out;
}

}  // namespace

TEST_CASE("freezing a goal") {
  FrozenGoal g = freeze_goal(parse_equation("x1 = f(x2,x1)"));
  CHECK(print_term(g.lhs) == "k1");
  CHECK(print_term(g.rhs) == "f(k2,k1)");
  CHECK(g.skolems == 2);
  CHECK(g.lhs.ground());
  CHECK(g.rhs.ground());
  FrozenGoal r = freeze_goal(parse_equation("x1 = x1"));
  CHECK(r.lhs == r.rhs);
}

TEST_CASE("rewrite neighbours") {
  DecisionBudget b;
  auto ax = eqs({"x1 = f(x1,x1)"});
  FrozenGoal g{parse_term("f(k1,k1)"), parse_term("k1"), 1};
  auto n = rewrite_neighbors(parse_term("f(k1,k1)"), ax, g, b);
  CHECK(std::find(n.begin(), n.end(), parse_term("k1")) != n.end());
  CHECK(std::find(n.begin(), n.end(), parse_term("f(f(k1,k1),k1)")) != n.end());

  auto ax2 = eqs({"x1 = f(x2,x1)"});
  FrozenGoal g2 = freeze_goal(parse_equation("x1 = f(x2,x1)"));
  auto m = rewrite_neighbors(g2.lhs, ax2, g2, b);
  CHECK(std::find(m.begin(), m.end(), parse_term("f(k2,k1)")) != m.end());
  CHECK(std::find(m.begin(), m.end(), parse_term("f(k1,k1)")) != m.end());

  DecisionBudget tiny;
  tiny.max_term_leaves = 1;
  CHECK(rewrite_neighbors(parse_term("k1"), ax, g, tiny).empty());
}

TEST_CASE("length-1 cases") {
  DecisionBudget b;
  CHECK(prove(eqs({"x1 = f(x2,x1)"}), parse_equation("x1 = f(x2,x1)"), b).length == 1);
  CHECK(prove({}, parse_equation("x1 = x1"), b).length == 1);
  CHECK(prove(eqs({"x1 = p(x1,x1)"}), parse_equation("f(x1,x1) = f(x1,p(x1,x1))"), b).length == 1);
  CHECK(subsumed(eqs({"x1 = f(x1,x2)"}), parse_equation("x1 = f(x1,f(x2,x2))")));
  CHECK_FALSE(subsumed(eqs({"x1 = f(x1,x1)"}), parse_equation("x1 = f(f(x1,x1),f(x1,x1))")));
}

TEST_CASE("a two-step proof and its trace") {
  DecisionBudget b;
  auto ax = eqs({"x1 = f(x1,x1)"});
  Equation goal = parse_equation("x1 = f(f(x1,x1),f(x1,x1))");
  ProofOutcome p = prove(ax, goal, b, true);
  REQUIRE(p.length);
  CHECK(*p.length == 2);
  CHECK(oracle_length(ax, goal, 5, 6) == 2);
  REQUIRE(p.trace.size() == 2);
  CHECK(p.trace.front().from == freeze_goal(goal).lhs);
  CHECK(p.trace.back().to == freeze_goal(goal).rhs);
  CHECK(format_step(p.trace[0]) == "k1  --[axiom #1, l2r, 0]-->  f(k1,k1)");
  for (std::size_t i = 0; i + 1 < p.trace.size(); ++i) CHECK(p.trace[i].to == p.trace[i + 1].from);
}

TEST_CASE("traces replay under the oracle's rewrite relation") {
  auto corpus = enumerate_formulas(3);
  DecisionBudget b;
  b.max_proof_steps = 4;
  b.max_term_leaves = 5;
  const auto goals = enumerate_formulas(4);
  int checked = 0;
  for (std::uint64_t mask = 1; mask < 1024; mask += 29) {
    AxiomSystem s = axiom_system(corpus, mask);
    std::vector<std::pair<std::string, std::string>> ax;
    for (const auto& a : s.axioms) ax.emplace_back(prefix(a.lhs), prefix(a.rhs));
    for (std::size_t g = mask % 7; g < goals.size(); g += 7) {
      const Equation& goal = goals[g];
      ProofOutcome p = prove(s.axioms, goal, b, true);
      if (!p.length || *p.length < 2) continue;
      oracle::ClosureOracle o(ax, goal.nvars, 5);
      REQUIRE(p.trace.size() == static_cast<std::size_t>(*p.length));
      for (const ProofStep& st : p.trace) {
        auto n = o.neighbors(prefix(st.from));
        CHECK(std::find(n.begin(), n.end(), prefix(st.to)) != n.end());
      }
      ++checked;
    }
  }
  CHECK(checked > 0);
}

TEST_CASE("minimal lengths match the closure oracle on single-axiom systems") {
  auto corpus = enumerate_formulas(3);
  DecisionBudget b;
  b.max_proof_steps = 4;
  b.max_term_leaves = 5;
  b.max_frontier = 10'000'000;
  for (std::uint64_t mask = 0; mask < 1024; mask = mask ? mask << 1 : 1) {
    AxiomSystem s = axiom_system(corpus, mask);
    for (const auto& goal : corpus) {
      ProofOutcome p = prove(s.axioms, goal, b);
      CHECK_FALSE(p.frontier_capped);
      CHECK_MESSAGE(p.length == oracle_length(s.axioms, goal, 4, 5),
                    "mask ", mask, " goal ", goal.to_string());
    }
  }
}

TEST_CASE("decide") {
  DecisionBudget b;
  ProofResult in = decide(eqs({"x1 = f(x2,x1)"}), parse_equation("x1 = f(x2,x1)"), b);
  CHECK(in.verdict == Verdict::kProven);
  CHECK(in.length == 1);
  CHECK(in.time == 1);

  ProofResult out = decide({}, parse_equation("x1 = x2"), b);
  CHECK(out.verdict == Verdict::kDisproven);
  REQUIRE(out.model);
  CHECK(out.model->k == 2);
  CHECK(out.time == 3);

  // x1 = f(x2,x2) makes everything equal in two steps.
  ProofResult all = decide(eqs({"x1 = f(x2,x2)"}), parse_equation("x1 = x2"), b);
  CHECK(all.verdict == Verdict::kProven);
  CHECK(all.length == 2);
}

TEST_CASE("undecided when both budgets are exhausted") {
  DecisionBudget b;
  b.max_proof_steps = 2;
  b.model_max_k = 1;
  // Associativity does not give commutativity, but k=1 cannot show it.
  ProofResult r = decide(eqs({"f(f(x1,x2),x3) = f(x1,f(x2,x3))"}),
                         parse_equation("f(x1,x2) = f(x2,x1)"), b);
  CHECK(r.verdict == Verdict::kUndecided);
  CHECK(r.time == 0);
  CHECK(r.proof_budget_exhausted);
  CHECK(r.model_budget_exhausted);
}

TEST_CASE("raising budgets never flips a verdict") {
  auto corpus = enumerate_formulas(3);
  DecisionBudget small;
  small.max_proof_steps = 3;
  small.model_max_k = 2;
  DecisionBudget large;
  large.max_proof_steps = 6;
  for (std::uint64_t mask = 1; mask < 1024; mask += 53) {
    AxiomSystem s = axiom_system(corpus, mask);
    for (const auto& goal : enumerate_formulas(4)) {
      ProofResult a = decide(s.axioms, goal, small);
      if (a.verdict == Verdict::kUndecided) continue;
      ProofResult c = decide(s.axioms, goal, large);
      CHECK(c.verdict == a.verdict);
      if (a.verdict == Verdict::kProven) CHECK(c.length <= a.length);
    }
  }
}

TEST_CASE("consistency") {
  DecisionBudget b;
  AxiomSystem pair{0, eqs({"x1 = f(x2,x1)", "x1 = p(x1,x2)"})};
  ConsistencyResult c = is_consistent(pair, b);
  CHECK(c.status == Consistency::kConsistent);
  REQUIRE(c.witness);
  CHECK(c.witness->k == 2);
  CHECK(satisfies_all(*c.witness, pair.axioms));

  CHECK(is_consistent({0, eqs({"x1 = x2"})}, b).status == Consistency::kInconsistent);
  CHECK(is_consistent({0, {}}, b).status == Consistency::kConsistent);
}

TEST_CASE("independence") {
  DecisionBudget b;
  auto single = is_independent({0, eqs({"x1 = f(x1,x2)"})}, b);
  REQUIRE(single.size() == 1);
  CHECK(single[0].status == Dependence::kIndependent);

  auto dep = is_independent({0, eqs({"x1 = f(x1,x1)", "x1 = f(f(x1,x1),f(x1,x1))"})}, b);
  REQUIRE(dep.size() == 2);
  CHECK(dep[1].status == Dependence::kDependent);
  CHECK(dep[1].proof_length == 2);
  CHECK_FALSE(fully_independent(dep));
  CHECK_THROWS(is_independent({0, {}}, b));
}

TEST_CASE("cell codes") {
  CellSummary p{Verdict::kProven, 3, 0, 3};
  CHECK(p.code() == "P3");
  CHECK(CellSummary::from_code("P3") == p);
  CellSummary d{Verdict::kDisproven, 0, 2, 3};
  CHECK(d.code() == "D2");
  CHECK(CellSummary::from_code("D2") == d);
  CHECK(CellSummary::from_code("U").verdict == Verdict::kUndecided);
  CHECK_THROWS(CellSummary::from_code("X1"));
  CHECK_THROWS(CellSummary::from_code("P"));
  CHECK_THROWS(CellSummary::from_code("P0"));
}

TEST_CASE("truth space") {
  auto corpus = enumerate_formulas(3);
  std::vector<AxiomSystem> systems;
  for (std::uint64_t m : {1u, 6u, 40u, 130u}) systems.push_back(axiom_system(corpus, m));
  DecisionBudget b;
  TruthSpace one = truth_space(systems, corpus, b, 1);
  TruthSpace three = truth_space(systems, corpus, b, 3);
  CHECK(one.cells == three.cells);
  CHECK(one.cells.size() == systems.size() * corpus.size());
  for (std::size_t g = 0; g < corpus.size(); ++g) {
    for (std::size_t s = 0; s < systems.size(); ++s) {
      if ((systems[s].mask >> g) & 1u) CHECK(one.cell(g, s).code() == "P1");
    }
  }
  auto d = proof_census(one);
  CHECK(d.decided() + d.undecided == one.cells.size());
  CHECK(truth_space(systems, {}, b).cells.empty());
}
