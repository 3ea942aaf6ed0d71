#include "doctest.h"

#include <random>

#include "beaver/machine.h"
#include "oracles/tm_oracle.h"

using namespace beaver::tm;

TEST_CASE("machine counts") {
  CHECK(machine_count(1) == 36);
  CHECK(machine_count(2) == 10000);
  CHECK(machine_count(3) == 7529536);
  CHECK(machine_count(4) == 11019960576ull);
  CHECK_THROWS_AS(machine_count(0), std::invalid_argument);
  CHECK_THROWS_AS(machine_count(7), OverflowError);
}

TEST_CASE("action digits follow the pinned order") {
  CHECK(action_digit(Action::Halt(0), 2) == 0);
  CHECK(action_digit(Action::Halt(1), 2) == 1);
  CHECK(action_digit(Action::Step(0, Move::kLeft, 1), 2) == 2);
  CHECK(action_digit(Action::Step(0, Move::kLeft, 2), 2) == 3);
  CHECK(action_digit(Action::Step(0, Move::kRight, 1), 2) == 4);
  CHECK(action_digit(Action::Step(1, Move::kRight, 2), 2) == 9);
  for (int n = 1; n <= 4; ++n) {
    for (int d = 0; d < 4 * n + 2; ++d) CHECK(action_digit(digit_action(d, n), n) == d);
  }
  CHECK_THROWS(digit_action(10, 2));
}

TEST_CASE("index 0 halts at once; the last index is the most significant digit last") {
  TuringMachine m = decode_machine({0}, 2);
  for (const Action& a : m.table()) CHECK(a == Action::Halt(0));
  TuringMachine last = decode_machine({machine_count(2) - 1}, 2);
  CHECK(last.action(1, 0) == Action::Step(1, Move::kRight, 2));
  CHECK(decode_machine({1}, 2).action(2, 1) == Action::Halt(1));
  CHECK(decode_machine({10}, 2).action(2, 0) == Action::Halt(1));
  CHECK_THROWS(decode_machine({machine_count(2)}, 2));
}

TEST_CASE("encode inverts decode") {
  std::mt19937_64 rng(7);
  for (int n = 1; n <= 4; ++n) {
    std::uniform_int_distribution<std::uint64_t> pick(0, machine_count(n) - 1);
    for (int i = 0; i < 500; ++i) {
      MachineIndex idx{pick(rng)};
      CHECK(encode_machine(decode_machine(idx, n)) == idx);
    }
  }
}

TEST_CASE("text form round-trips") {
  TuringMachine m = decode_machine({4874321}, 3);
  std::string text = m.to_text();
  CHECK(TuringMachine::from_text(text) == m);
  CHECK(decode_machine({0}, 1).to_text() == "1,0 -> 0,HALT\n1,1 -> 0,HALT\n");
  CHECK(decode_machine({35}, 1).to_text() == "1,0 -> 1,R,1\n1,1 -> 1,R,1\n");
  CHECK_THROWS(TuringMachine::from_text("1,0 -> 1,X,1\n"));
}

TEST_CASE("runs agree with the map-tape oracle on (1,2) and (2,2)") {
  for (int n = 1; n <= 2; ++n) {
    const std::uint64_t budget = n == 1 ? 1 : 6;
    for (std::uint64_t i = 0; i < machine_count(n); ++i) {
      RunResult r = run(decode_machine({i}, n), budget);
      oracle::Outcome o = oracle::simulate(i, n, budget);
      REQUIRE(r.halted() == (o.time != 0));
      if (r.halted()) {
        CHECK(r.steps == o.time);
        CHECK(r.ones == o.ones);
        CHECK(r.output == o.extent);
      }
    }
  }
}

TEST_CASE("runs agree with the oracle on sampled (3,2) and (4,2) machines") {
  std::mt19937_64 rng(11);
  for (int n = 3; n <= 4; ++n) {
    std::uniform_int_distribution<std::uint64_t> pick(0, machine_count(n) - 1);
    const std::uint64_t budget = known_step_bound(n);
    for (int k = 0; k < 3000; ++k) {
      std::uint64_t i = pick(rng);
      RunResult r = run(decode_machine({i}, n), budget);
      oracle::Outcome o = oracle::simulate(i, n, budget);
      REQUIRE(r.halted() == (o.time != 0));
      if (r.halted()) {
        CHECK(r.steps == o.time);
        CHECK(r.output == o.extent);
      }
    }
  }
}

TEST_CASE("single steps compose to the dense run") {
  std::mt19937_64 rng(3);
  std::uniform_int_distribution<std::uint64_t> pick(0, machine_count(3) - 1);
  for (int k = 0; k < 500; ++k) {
    TuringMachine m = decode_machine({pick(rng)}, 3);
    Configuration c;
    bool halted = false;
    while (!halted && c.steps < 21) {
      StepOutcome s = step(m, c);
      c = s.config;
      halted = s.halted;
    }
    RunResult r = run(m, 21);
    CHECK(r.halted() == halted);
    CHECK(r.steps == c.steps);
  }
}

TEST_CASE("a long runner grows the tape in both directions") {
  // 1,0 -> 1,R,1 never halts and keeps writing.
  TuringMachine right = decode_machine({machine_count(1) - 1}, 1);
  RunResult r = run(right, 5000);
  CHECK(r.status == RunStatus::kBudgetExceeded);
  CHECK(r.steps == 5000);
  TuringMachine left(1, {Action::Step(1, Move::kLeft, 1), Action::Halt(1)});
  RunResult l = run(left, 5000);
  CHECK_FALSE(l.halted());
  Simulator sim;
  for (int i = 0; i < 3; ++i) CHECK(sim.run(left.table(), 4000).steps == 4000);
}

TEST_CASE("output rules") {
  CHECK(apply_output_rule("0110", OutputRule::kVisitedExtent) == "0110");
  CHECK(apply_output_rule("0110", OutputRule::kTrimmed) == "11");
  CHECK(apply_output_rule("000", OutputRule::kTrimmed) == "");
  CHECK(apply_output_rule("101", OutputRule::kTrimmed) == "101");
}

TEST_CASE("known bounds") {
  CHECK(known_step_bound(1) == 1);
  CHECK(known_step_bound(2) == 6);
  CHECK(known_step_bound(3) == 21);
  CHECK(known_step_bound(4) == 107);
  CHECK(known_step_bound(5) == 0);
  CHECK(known_ones_bound(3) == 6);
}
