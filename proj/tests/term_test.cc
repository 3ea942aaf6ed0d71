#include "doctest.h"

#include <random>
#include <set>

#include "beaver/term.h"
#include "oracles/term_oracle.h"

using namespace beaver::eq;

namespace {

Term random_term(std::mt19937_64& rng, int leaves, int vars) {
  if (leaves == 1) return Term::var(std::uniform_int_distribution<int>(1, vars)(rng));
  int a = std::uniform_int_distribution<int>(1, leaves - 1)(rng);
  Op op = rng() % 2 ? Op::kF : Op::kP;
  return Term::app(op, random_term(rng, a, vars), random_term(rng, leaves - a, vars));
}

}  // namespace

TEST_CASE("parse and print") {
  Term t = parse_term("f(f(x2,x3),x1)");
  CHECK(t == Term::app(Op::kF, Term::app(Op::kF, Term::var(2), Term::var(3)), Term::var(1)));
  CHECK(parse_term("x1") == Term::var(1));
  CHECK(parse_term(" p( x1 , f(x2,x2) ) ") == parse_term("p(x1,f(x2,x2))"));
  CHECK(print_term(parse_term(" p( x1 , x2 )")) == "p(x1,x2)");
  CHECK(print_term(Term::skolem(3)) == "k3");
  CHECK(parse_term("k2") == Term::skolem(2));
}

TEST_CASE("parse errors carry an offset") {
  try {
    parse_term("f(x1");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.offset() == 5);
  }
  CHECK_THROWS_AS(parse_term("x0"), ParseError);
  CHECK_THROWS_AS(parse_term("g(x1,x2)"), ParseError);
  CHECK_THROWS_AS(parse_term("f(x1,x2) x3"), ParseError);
  CHECK_THROWS_AS(parse_equation("x1 x2"), ParseError);
}

TEST_CASE("print then parse is the identity on random terms") {
  std::mt19937_64 rng(1);
  for (int i = 0; i < 1000; ++i) {
    Term t = random_term(rng, 1 + static_cast<int>(rng() % 9), 5);
    CHECK(parse_term(print_term(t)) == t);
  }
}

TEST_CASE("term order: variables before applications, f before p") {
  CHECK(Term::var(1) < Term::var(2));
  CHECK(Term::var(9) < Term::skolem(1));
  CHECK(Term::skolem(1) < parse_term("f(x1,x1)"));
  CHECK(parse_term("f(x2,x2)") < parse_term("p(x1,x1)"));
}

TEST_CASE("canonical form") {
  CHECK(canonicalize(parse_term("x7"), parse_term("f(x7,x9)")).to_string() == "x1 = f(x1,x2)");
  CHECK(canonicalize(parse_term("f(x1,x1)"), parse_term("x1")).to_string() == "x1 = f(x1,x1)");
  CHECK(canonicalize(parse_term("f(x3,x2)"), parse_term("x2")).to_string() == "x1 = f(x2,x1)");
  Equation e = parse_equation("x1 = f(f(x2,x3),x1)");
  CHECK(e.nvars == 3);
  CHECK(e.length() == 4);
}

TEST_CASE("canonicalize is symmetric and idempotent") {
  std::mt19937_64 rng(2);
  for (int i = 0; i < 1000; ++i) {
    Term s = random_term(rng, 1 + static_cast<int>(rng() % 4), 4);
    Term t = random_term(rng, 1 + static_cast<int>(rng() % 4), 4);
    Equation a = canonicalize(s, t);
    CHECK(a == canonicalize(t, s));
    CHECK(canonicalize(a.lhs, a.rhs) == a);
    CHECK(is_canonical(a));
  }
}

TEST_CASE("length-3 corpus") {
  auto corpus = enumerate_formulas(3);
  std::vector<std::string> got;
  for (const auto& e : corpus) got.push_back(e.to_string());
  CHECK(got == std::vector<std::string>{
                   "x1 = f(x1,x1)", "x1 = f(x1,x2)", "x1 = f(x2,x1)", "x1 = f(x2,x2)",
                   "x1 = f(x2,x3)", "x1 = p(x1,x1)", "x1 = p(x1,x2)", "x1 = p(x2,x1)",
                   "x1 = p(x2,x2)", "x1 = p(x2,x3)"});
  std::set<Equation> s(corpus.begin(), corpus.end());
  CHECK(s.count(parse_equation("x1 = f(x2, x1)")) == 1);
  CHECK(s.count(parse_equation("x1 = p(x1, x2)")) == 1);
}

TEST_CASE("small corpora") {
  CHECK(enumerate_formulas(1).empty());
  auto two = enumerate_formulas(2);
  REQUIRE(two.size() == 2);
  CHECK(two[0].to_string() == "x1 = x1");
  CHECK(two[1].to_string() == "x1 = x2");
}

TEST_CASE("corpora equal the string oracle for L <= 5") {
  for (int L = 2; L <= 5; ++L) {
    auto corpus = enumerate_formulas(L);
    std::set<std::string> keys;
    for (const auto& e : corpus) {
      CHECK(e.length() == static_cast<std::size_t>(L));
      CHECK(is_canonical(e));
      keys.insert(oracle::class_key(print_term(e.lhs), print_term(e.rhs)));
    }
    CHECK(keys.size() == corpus.size());
    CHECK(keys == oracle::formula_classes(L));
  }
  CHECK(enumerate_formulas(4).size() == 157);
}

TEST_CASE("corpus members survive parse round trips") {
  for (const auto& e : enumerate_formulas(4)) CHECK(parse_equation(e.to_string()) == e);
}

TEST_CASE("constants") {
  CHECK(print_term(build_constant(0)) == "p(f(x1,x1),f(x1,x1))");
  CHECK(print_term(build_constant(1)) == "p(f(x1,x1),p(f(x1,x1),f(x1,x1)))");
  for (int i = 0; i < 6; ++i) CHECK(build_constant(i).leaves() == static_cast<std::size_t>(2 * i + 4));
}

TEST_CASE("axiom systems") {
  auto corpus = enumerate_formulas(3);
  CHECK(generate_axiom_systems(3, std::nullopt).size() == 1024);
  AxiomSystem s = axiom_system(corpus, 3);
  REQUIRE(s.axioms.size() == 2);
  CHECK(s.axioms[0] == corpus[0]);
  CHECK(s.axioms[1] == corpus[1]);
  auto sample = generate_axiom_systems(4, 1000);
  REQUIRE(sample.size() == 1000);
  for (std::uint64_t m = 0; m < 1000; ++m) CHECK(sample[m].mask == m);
  CHECK(sample[0].axioms.empty());
  CHECK_THROWS(axiom_system(corpus, 1024));
  CHECK_THROWS(generate_axiom_systems(4, std::nullopt));
}
