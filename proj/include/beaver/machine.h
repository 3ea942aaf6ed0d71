#pragma once

// n-state, 2-symbol Turing machines with a separate halting state, their
// canonical mixed-radix index, and simulation on an initially blank tape.

#include <compare>
#include <cstdint>
#include <map>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace beaver::tm {

using Symbol = std::uint8_t;
using State = int;  // 1..n; halting is an action, not a state number.

enum class Move : std::uint8_t { kLeft, kRight };

// Halt actions write and stop without moving. Step actions write, move and
// switch state. There are 4n+2 distinct actions for n states.
struct Action {
  bool halt = true;
  Symbol write = 0;
  Move move = Move::kLeft;
  State next = 0;

  static Action Halt(Symbol write) { return {true, write, Move::kLeft, 0}; }
  static Action Step(Symbol write, Move move, State next) {
    return {false, write, move, next};
  }

  friend bool operator==(const Action&, const Action&) = default;
};

class OverflowError : public std::overflow_error {
 public:
  using std::overflow_error::overflow_error;
};

// (4n+2)^(2n). Throws std::invalid_argument for n < 1 and OverflowError when
// the count does not fit in 64 bits (n >= 7).
std::uint64_t machine_count(int n);

// Action digit in the pinned order: 0,1 are Halt{0},Halt{1}; then
// 2 + write*2n + move*n + (next-1).
int action_digit(const Action& a, int n);
Action digit_action(int digit, int n);

struct MachineIndex {
  std::uint64_t value = 0;
  friend auto operator<=>(const MachineIndex&, const MachineIndex&) = default;
};

class TuringMachine {
 public:
  // `table` holds 2n entries ordered (1,0),(1,1),(2,0),...
  TuringMachine(int n, std::vector<Action> table);

  int states() const { return n_; }
  const Action& action(State q, Symbol s) const {
    return table_[static_cast<std::size_t>(2 * (q - 1) + s)];
  }
  std::span<const Action> table() const { return table_; }

  // One line per entry, `q,s -> w,D,q'` or `q,s -> w,HALT`, LF-terminated.
  std::string to_text() const;
  static TuringMachine from_text(std::string_view text);

  friend bool operator==(const TuringMachine&, const TuringMachine&) = default;

 private:
  int n_;
  std::vector<Action> table_;
};

TuringMachine decode_machine(MachineIndex index, int n);
MachineIndex encode_machine(const TuringMachine& m);

// Sparse tape, used by the single-step API. Blank cells are absent.
struct Configuration {
  std::map<long, Symbol> tape;
  long head = 0;
  State state = 1;
  std::uint64_t steps = 0;

  Symbol read() const;
  friend bool operator==(const Configuration&, const Configuration&) = default;
};

struct StepOutcome {
  Configuration config;
  bool halted = false;
};

StepOutcome step(const TuringMachine& m, Configuration c);

enum class OutputRule { kVisitedExtent, kTrimmed };
enum class RunStatus { kHalted, kBudgetExceeded };

struct RunResult {
  RunStatus status = RunStatus::kBudgetExceeded;
  std::uint64_t steps = 0;
  std::uint64_t ones = 0;
  std::string output;
  long leftmost = 0;
  long rightmost = 0;

  bool halted() const { return status == RunStatus::kHalted; }
  friend bool operator==(const RunResult&, const RunResult&) = default;
};

// Reusable simulator with a dense, growable tape buffer. Not thread-safe;
// use one per worker.
class Simulator {
 public:
  Simulator();

  RunResult run(std::span<const Action> table, std::uint64_t budget,
                OutputRule rule = OutputRule::kVisitedExtent,
                bool want_output = true);

 private:
  void grow();
  // Tape contents over [leftmost, rightmost] of the current run, as '0'/'1'.
  std::string visited_tape() const;

  std::vector<Symbol> cells_;
  long origin_ = 0;  // cells_ index of offset 0
  long leftmost_ = 0;
  long rightmost_ = 0;
};

RunResult run(const TuringMachine& m, std::uint64_t budget,
              OutputRule rule = OutputRule::kVisitedExtent);

std::string apply_output_rule(std::string_view visited, OutputRule rule);

// Known S(n) for n <= 4; 0 when unknown.
std::uint64_t known_step_bound(int n);
// Known Σ(n) for n <= 4; 0 when unknown.
std::uint64_t known_ones_bound(int n);

}  // namespace beaver::tm
