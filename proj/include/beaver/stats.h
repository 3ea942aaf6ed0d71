#pragma once

// Decision-time distributions shared by halting censuses and proof censuses:
// cumulative fractions, OPTime, fBB and side-by-side comparison.

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "beaver/census.h"
#include "beaver/rational.h"

namespace beaver::stats {

struct DecisionDistribution {
  std::string label;
  std::map<std::uint64_t, std::uint64_t> counts;  // t >= 1 -> decided at t
  std::uint64_t undecided = 0;
  std::uint64_t total = 0;

  std::uint64_t decided() const;
  // Throws std::invalid_argument unless undecided + sum(counts) == total and
  // every key is >= 1.
  void validate() const;

  friend bool operator==(const DecisionDistribution&, const DecisionDistribution&) = default;
};

DecisionDistribution from_census(const tm::HaltingCensus& c, std::string label = {});

enum class Denominator { kTotal, kDecided };

// sum_{s <= t} counts[s] / total (or / decided).
Rational cumulative_fraction(const DecisionDistribution& d, std::uint64_t t,
                             Denominator denom = Denominator::kTotal);

struct OptimeResult {
  std::optional<std::uint64_t> step;  // empty when gamma is unachievable
  Rational max_achievable;

  bool achievable() const { return step.has_value(); }
};

// Smallest t whose cumulative fraction reaches at least gamma.
// Throws std::invalid_argument unless 0 < gamma <= 1.
OptimeResult optime(const DecisionDistribution& d, const Rational& gamma,
                    Denominator denom = Denominator::kTotal);

// Largest t with a nonzero count. Throws std::domain_error if nothing decided.
std::uint64_t fbb(const DecisionDistribution& d);

// True when the counts never rise again after their maximum.
bool monotone_tail(const DecisionDistribution& d);

struct ComparisonRow {
  std::uint64_t t = 0;
  Rational fraction_a, fraction_b;
  Rational cumulative_a, cumulative_b;
};

struct Comparison {
  std::vector<ComparisonRow> rows;
  bool monotone_tail_a = false;
  bool monotone_tail_b = false;
};

Comparison compare_distributions(const DecisionDistribution& a, const DecisionDistribution& b);

struct OptimeChecks {
  // Set only when undecided == 0.
  std::optional<bool> full_gamma_equals_fbb;
  bool bounded_by_fbb = true;
  bool nondecreasing = true;
};

OptimeChecks optime_consistency(const DecisionDistribution& d, std::span<const Rational> gammas);

}  // namespace beaver::stats
