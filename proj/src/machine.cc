#include "beaver/machine.h"

#include <algorithm>
#include <charconv>
#include <sstream>

namespace beaver::tm {

std::uint64_t machine_count(int n) {
  if (n < 1) throw std::invalid_argument("state count must be >= 1");
  const std::uint64_t base = 4 * static_cast<std::uint64_t>(n) + 2;
  std::uint64_t count = 1;
  for (int i = 0; i < 2 * n; ++i) {
    if (count > UINT64_MAX / base) {
      throw OverflowError("machine count (4n+2)^(2n) overflows 64 bits for n=" +
                          std::to_string(n));
    }
    count *= base;
  }
  return count;
}

int action_digit(const Action& a, int n) {
  if (a.halt) return a.write;
  return 2 + a.write * 2 * n + (a.move == Move::kRight ? n : 0) + (a.next - 1);
}

Action digit_action(int digit, int n) {
  if (digit < 0 || digit >= 4 * n + 2) throw std::out_of_range("action digit");
  if (digit < 2) return Action::Halt(static_cast<Symbol>(digit));
  int d = digit - 2;
  auto write = static_cast<Symbol>(d / (2 * n));
  d %= 2 * n;
  Move move = d >= n ? Move::kRight : Move::kLeft;
  return Action::Step(write, move, d % n + 1);
}

TuringMachine::TuringMachine(int n, std::vector<Action> table)
    : n_(n), table_(std::move(table)) {
  if (n < 1) throw std::invalid_argument("state count must be >= 1");
  if (table_.size() != static_cast<std::size_t>(2 * n)) {
    throw std::invalid_argument("transition table must have 2n entries");
  }
  for (const Action& a : table_) {
    if (a.write > 1) throw std::invalid_argument("write symbol must be 0 or 1");
    if (a.halt) {
      if (a.next != 0 || a.move != Move::kLeft) {
        throw std::invalid_argument("halt action carries move or next state");
      }
    } else if (a.next < 1 || a.next > n) {
      throw std::invalid_argument("next state out of range");
    }
  }
}

std::string TuringMachine::to_text() const {
  std::ostringstream out;
  for (int q = 1; q <= n_; ++q) {
    for (Symbol s = 0; s < 2; ++s) {
      const Action& a = action(q, s);
      out << q << ',' << int{s} << " -> " << int{a.write} << ',';
      if (a.halt) {
        out << "HALT";
      } else {
        out << (a.move == Move::kLeft ? 'L' : 'R') << ',' << a.next;
      }
      out << '\n';
    }
  }
  return out.str();
}

namespace {

int parse_int(std::string_view s) {
  while (!s.empty() && s.front() == ' ') s.remove_prefix(1);
  while (!s.empty() && s.back() == ' ') s.remove_suffix(1);
  int v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) {
    throw std::invalid_argument("bad integer in machine text: '" + std::string(s) + "'");
  }
  return v;
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  for (std::size_t i = 0; i <= s.size(); ++i) {
    if (i == s.size() || s[i] == sep) {
      parts.push_back(s.substr(start, i - start));
      start = i + 1;
    }
  }
  return parts;
}

}  // namespace

TuringMachine TuringMachine::from_text(std::string_view text) {
  std::vector<Action> table;
  int expected_q = 1, expected_s = 0;
  for (std::string_view line : split(text, '\n')) {
    if (line.empty()) continue;
    auto arrow = line.find("->");
    if (arrow == std::string_view::npos) throw std::invalid_argument("missing '->'");
    auto key = split(line.substr(0, arrow), ',');
    auto val = split(line.substr(arrow + 2), ',');
    if (key.size() != 2) throw std::invalid_argument("bad entry key");
    if (parse_int(key[0]) != expected_q || parse_int(key[1]) != expected_s) {
      throw std::invalid_argument("entries out of order");
    }
    auto write = static_cast<Symbol>(parse_int(val.at(0)));
    if (val.size() == 2 && val[1].find("HALT") != std::string_view::npos) {
      table.push_back(Action::Halt(write));
    } else if (val.size() == 3) {
      std::string_view dir = val[1];
      while (!dir.empty() && dir.front() == ' ') dir.remove_prefix(1);
      while (!dir.empty() && dir.back() == ' ') dir.remove_suffix(1);
      if (dir != "L" && dir != "R") throw std::invalid_argument("bad direction");
      table.push_back(Action::Step(write, dir == "L" ? Move::kLeft : Move::kRight,
                                   parse_int(val[2])));
    } else {
      throw std::invalid_argument("bad entry action");
    }
    if (++expected_s == 2) {
      expected_s = 0;
      ++expected_q;
    }
  }
  if (expected_s != 0 || table.empty()) throw std::invalid_argument("incomplete table");
  const int n = static_cast<int>(table.size() / 2);
  return TuringMachine(n, std::move(table));
}

TuringMachine decode_machine(MachineIndex index, int n) {
  const std::uint64_t count = machine_count(n);
  if (index.value >= count) throw std::out_of_range("machine index out of range");
  const std::uint64_t base = 4 * static_cast<std::uint64_t>(n) + 2;
  std::vector<Action> table(static_cast<std::size_t>(2 * n));
  std::uint64_t v = index.value;
  // Least significant digit is the last entry.
  for (std::size_t i = table.size(); i-- > 0;) {
    table[i] = digit_action(static_cast<int>(v % base), n);
    v /= base;
  }
  return TuringMachine(n, std::move(table));
}

MachineIndex encode_machine(const TuringMachine& m) {
  const int n = m.states();
  const std::uint64_t base = 4 * static_cast<std::uint64_t>(n) + 2;
  machine_count(n);  // overflow check
  std::uint64_t v = 0;
  for (const Action& a : m.table()) v = v * base + static_cast<std::uint64_t>(action_digit(a, n));
  return MachineIndex{v};
}

Symbol Configuration::read() const {
  auto it = tape.find(head);
  return it == tape.end() ? Symbol{0} : it->second;
}

StepOutcome step(const TuringMachine& m, Configuration c) {
  if (c.state < 1 || c.state > m.states()) throw std::out_of_range("state out of range");
  const Action& a = m.action(c.state, c.read());
  if (a.write) {
    c.tape[c.head] = a.write;
  } else {
    c.tape.erase(c.head);
  }
  ++c.steps;
  if (a.halt) return {std::move(c), true};
  c.head += a.move == Move::kLeft ? -1 : 1;
  c.state = a.next;
  return {std::move(c), false};
}

Simulator::Simulator() : cells_(64, 0), origin_(32) {}

void Simulator::grow() {
  // The head moves one cell per step, so doubling around the old buffer is
  // always enough.
  const std::size_t old_size = cells_.size();
  std::vector<Symbol> bigger(2 * old_size, 0);
  long new_origin = static_cast<long>(old_size);
  std::copy(cells_.begin(), cells_.end(), bigger.begin() + (new_origin - origin_));
  cells_ = std::move(bigger);
  origin_ = new_origin;
}

RunResult Simulator::run(std::span<const Action> table, std::uint64_t budget,
                         OutputRule rule, bool want_output) {
  if (budget < 1) throw std::invalid_argument("budget must be >= 1");
  long head = 0;
  State state = 1;
  std::uint64_t steps = 0;
  leftmost_ = rightmost_ = 0;
  bool halted = false;
  while (steps < budget) {
    Symbol& cell = cells_[static_cast<std::size_t>(origin_ + head)];
    const Action& a = table[static_cast<std::size_t>(2 * (state - 1) + cell)];
    cell = a.write;
    ++steps;
    if (a.halt) {
      halted = true;
      break;
    }
    head += a.move == Move::kLeft ? -1 : 1;
    state = a.next;
    if (head < leftmost_) leftmost_ = head;
    if (head > rightmost_) rightmost_ = head;
    if (origin_ + head < 0 || origin_ + head >= static_cast<long>(cells_.size())) grow();
  }

  RunResult r;
  r.status = halted ? RunStatus::kHalted : RunStatus::kBudgetExceeded;
  r.steps = steps;
  r.leftmost = leftmost_;
  r.rightmost = rightmost_;
  auto begin = cells_.begin() + (origin_ + leftmost_);
  auto end = cells_.begin() + (origin_ + rightmost_ + 1);
  r.ones = static_cast<std::uint64_t>(std::count(begin, end, Symbol{1}));
  if (want_output) r.output = apply_output_rule(visited_tape(), rule);
  // Clear for the next run; only the visited range can be dirty.
  std::fill(begin, end, Symbol{0});
  return r;
}

std::string Simulator::visited_tape() const {
  std::string s;
  s.reserve(static_cast<std::size_t>(rightmost_ - leftmost_ + 1));
  for (long i = leftmost_; i <= rightmost_; ++i) {
    s.push_back(cells_[static_cast<std::size_t>(origin_ + i)] ? '1' : '0');
  }
  return s;
}

std::string apply_output_rule(std::string_view visited, OutputRule rule) {
  if (rule == OutputRule::kVisitedExtent) return std::string(visited);
  auto first = visited.find('1');
  if (first == std::string_view::npos) return {};
  auto last = visited.rfind('1');
  return std::string(visited.substr(first, last - first + 1));
}

RunResult run(const TuringMachine& m, std::uint64_t budget, OutputRule rule) {
  Simulator sim;
  return sim.run(m.table(), budget, rule);
}

std::uint64_t known_step_bound(int n) {
  switch (n) {
    case 1: return 1;
    case 2: return 6;
    case 3: return 21;
    case 4: return 107;
    default: return 0;
  }
}

std::uint64_t known_ones_bound(int n) {
  switch (n) {
    case 1: return 1;
    case 2: return 4;
    case 3: return 6;
    case 4: return 13;
    default: return 0;
  }
}

}  // namespace beaver::tm
