#pragma once

// Finite algebras (one domain, two binary operations) and the countermodel
// search used for disproofs and consistency witnesses.

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "beaver/term.h"

namespace beaver::eq {

struct FiniteModel {
  int k = 1;  // domain {0, ..., k-1}
  std::vector<std::uint8_t> f;  // row-major k*k
  std::vector<std::uint8_t> p;

  std::uint8_t apply(Op op, std::uint8_t a, std::uint8_t b) const {
    const auto& table = op == Op::kF ? f : p;
    return table[static_cast<std::size_t>(a * k + b)];
  }

  // {"k":2,"f":[[..],[..]],"p":[[..],[..]]}
  std::string to_json() const;
  static FiniteModel from_json(const std::string& text);

  friend bool operator==(const FiniteModel&, const FiniteModel&) = default;
};

// Value of a term under `assignment` (variable id i -> assignment[i-1]).
// Skolem constant k_i is read from the same slot as x_i.
std::uint8_t evaluate(const FiniteModel& m, const Term& t,
                      std::span<const std::uint8_t> assignment);

// True iff the equation holds under every assignment of its variables.
bool satisfies(const FiniteModel& m, const Equation& eq);
bool satisfies_all(const FiniteModel& m, std::span<const Equation> eqs);

// First assignment falsifying the equation, if any.
std::optional<std::vector<std::uint8_t>> falsifying_assignment(const FiniteModel& m,
                                                               const Equation& eq);

struct ModelSearchLimits {
  int max_k = 3;
  // Backtracking node cap for k >= 3. k <= 2 is swept exhaustively.
  std::uint64_t node_cap = 2'000'000;
};

struct ModelSearchResult {
  std::optional<FiniteModel> model;
  bool cap_hit = false;  // some size was abandoned at the node cap
};

// Searches exactly domain size k for a model of `axioms` that falsifies
// `goal` (or, with no goal, any model of the axioms).
ModelSearchResult search_models_of_size(std::span<const Equation> axioms,
                                        const Equation* goal, int k,
                                        std::uint64_t node_cap);

// Smallest-k model of the axioms falsifying the goal, k = 1..max_k.
ModelSearchResult find_countermodel(std::span<const Equation> axioms, const Equation& goal,
                                    const ModelSearchLimits& limits = {});

// Smallest model with k in [2, max_k] satisfying the axioms.
ModelSearchResult find_nontrivial_model(std::span<const Equation> axioms,
                                        const ModelSearchLimits& limits = {});

// Every k=2 model (256 table pairs) satisfying the axioms, in sweep order.
std::vector<FiniteModel> all_models_k2(std::span<const Equation> axioms);

}  // namespace beaver::eq
