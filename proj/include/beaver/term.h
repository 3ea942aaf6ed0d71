#pragma once

// Terms over the binary operators f and p, canonical universally-closed
// equations, formula enumeration by length and axiom-system subsets.
//
// A term is stored as its preorder token sequence. Binary trees with fixed
// arity are prefix-free in preorder, so lexicographic order on the tokens is
// the structural order Var < Skolem < App, f < p, then left, then right.

#include <compare>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace beaver::eq {

enum class Op : std::uint8_t { kF, kP };

using Token = std::uint16_t;

inline constexpr Token kSkolemBase = 1000;
inline constexpr Token kMaxId = 999;
inline constexpr Token kTokenF = 0xFFF0;
inline constexpr Token kTokenP = 0xFFF1;

inline bool is_op_token(Token t) { return t >= kTokenF; }
inline bool is_var_token(Token t) { return t >= 1 && t < kSkolemBase; }
inline bool is_skolem_token(Token t) { return t > kSkolemBase && t < kTokenF; }

class Term {
 public:
  Term() = default;  // empty; only valid as a placeholder
  explicit Term(std::vector<Token> tokens);

  static Term var(int id);
  static Term skolem(int id);
  static Term app(Op op, const Term& left, const Term& right);

  bool empty() const { return tokens_.empty(); }
  bool is_var() const { return tokens_.size() == 1 && is_var_token(tokens_[0]); }
  bool is_skolem() const { return tokens_.size() == 1 && is_skolem_token(tokens_[0]); }
  bool is_app() const { return tokens_.size() > 1; }
  Op op() const { return tokens_.at(0) == kTokenF ? Op::kF : Op::kP; }
  int id() const;  // variable or skolem id

  Term left() const;
  Term right() const;

  std::size_t leaves() const { return (tokens_.size() + 1) / 2; }
  const std::vector<Token>& tokens() const { return tokens_; }

  // Largest variable id occurring (0 if none).
  int max_var() const;
  bool ground() const;

  friend bool operator==(const Term&, const Term&) = default;
  friend auto operator<=>(const Term&, const Term&) = default;

 private:
  std::vector<Token> tokens_;
};

struct TermHash {
  std::size_t operator()(const Term& t) const noexcept;
};

// End (exclusive) of the subterm starting at `begin` in a preorder sequence.
std::size_t subterm_end(const std::vector<Token>& tokens, std::size_t begin);

class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, std::size_t offset)
      : std::runtime_error(what + " at offset " + std::to_string(offset)), offset_(offset) {}
  std::size_t offset() const { return offset_; }

 private:
  std::size_t offset_;
};

// term := var | "f(" term "," term ")" | "p(" term "," term ")"
// var  := "x" digits (id >= 1). Skolem constants print as k<id> and are
// accepted by the parser as well. Whitespace is ignored.
Term parse_term(std::string_view text);
std::string print_term(const Term& t);

struct Equation {
  Term lhs;
  Term rhs;
  int nvars = 0;

  std::size_t length() const { return lhs.leaves() + rhs.leaves(); }
  std::string to_string() const;  // "lhs = rhs"

  friend bool operator==(const Equation& a, const Equation& b) {
    return a.lhs == b.lhs && a.rhs == b.rhs;
  }
  friend auto operator<=>(const Equation& a, const Equation& b) {
    if (auto c = a.lhs <=> b.lhs; c != 0) return c;
    return a.rhs <=> b.rhs;
  }
};

// Renames variables by first occurrence (lhs then rhs) and keeps the smaller
// of the two orientations.
Equation canonicalize(const Term& lhs, const Term& rhs);
bool is_canonical(const Equation& eq);

// "lhs = rhs"; canonicalizes the result.
Equation parse_equation(std::string_view text);

// All canonical equations with exactly `length` variable occurrences.
std::vector<Equation> enumerate_formulas(int length);

// c(0) = p(f(x1,x1), f(x1,x1)); c(i+1) = p(f(x1,x1), c(i)).
Term build_constant(int i);

struct AxiomSystem {
  std::uint64_t mask = 0;
  std::vector<Equation> axioms;
};

AxiomSystem axiom_system(const std::vector<Equation>& corpus, std::uint64_t mask);

// Subsets of `corpus` by ascending bitmask, starting from the empty system.
// Without a limit the corpus must have at most 63 formulas.
class AxiomSystemStream {
 public:
  AxiomSystemStream(std::vector<Equation> corpus, std::optional<std::uint64_t> limit);

  std::optional<AxiomSystem> next();
  std::uint64_t size() const { return end_; }

 private:
  std::vector<Equation> corpus_;
  std::uint64_t next_mask_ = 0;
  std::uint64_t end_ = 0;
};

std::vector<AxiomSystem> generate_axiom_systems(int length,
                                                std::optional<std::uint64_t> limit);

}  // namespace beaver::eq
