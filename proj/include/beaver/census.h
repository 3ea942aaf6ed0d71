#pragma once

// Exhaustive halting census over a whole (n,2) machine space.

#include <cstdint>
#include <map>
#include <optional>
#include <stop_token>
#include <string>
#include <vector>

#include "beaver/machine.h"
#include "beaver/rational.h"

namespace beaver::tm {

struct HaltingCensus {
  int n = 0;
  std::uint64_t budget = 0;
  std::map<std::uint64_t, std::uint64_t> counts;  // t -> machines halting at t
  std::uint64_t nonhalting = 0;
  std::uint64_t total = 0;
  // Set when the scan was cancelled; such a census must never be written out
  // as a final result.
  bool partial = false;

  std::uint64_t halting() const;
  std::uint64_t max_time() const;  // 0 when nothing halted
  std::uint64_t count_at(std::uint64_t t) const;

  friend bool operator==(const HaltingCensus&, const HaltingCensus&) = default;
};

struct BusyBeaverRecord {
  int n = 0;
  std::uint64_t max_steps = 0;  // S observed
  std::uint64_t max_ones = 0;   // Σ observed
  std::vector<std::uint64_t> step_champions;  // ascending index
  std::vector<std::uint64_t> ones_champions;

  friend bool operator==(const BusyBeaverRecord&, const BusyBeaverRecord&) = default;
};

struct OutputCensus {
  int n = 0;
  std::uint64_t budget = 0;
  OutputRule rule = OutputRule::kVisitedExtent;
  std::map<std::string, std::uint64_t> outputs;

  std::size_t distinct() const { return outputs.size(); }
  std::size_t longest() const;
  std::uint64_t machines() const;

  friend bool operator==(const OutputCensus&, const OutputCensus&) = default;
};

struct ScanOptions {
  std::uint64_t budget = 1;
  unsigned shards = 1;
  bool collect_outputs = false;
  // Keep the halting time of every machine (0 = did not halt), index order.
  bool record_runtimes = false;
  std::stop_token stop;
};

// Everything a single pass over the space can produce.
struct SpaceScan {
  HaltingCensus census;
  BusyBeaverRecord beaver;
  std::optional<OutputCensus> extent_outputs;
  std::optional<OutputCensus> trimmed_outputs;
  std::vector<std::uint32_t> runtimes;
};

// Runs every index in [0, machine_count(n)) exactly once. Work is split into
// contiguous index ranges, one per shard; merge is by addition, so the result
// does not depend on the shard count.
SpaceScan scan_space(int n, const ScanOptions& options);

HaltingCensus run_census(int n, std::uint64_t budget, unsigned shards = 1,
                         std::stop_token stop = {});
BusyBeaverRecord busy_beaver(int n, std::uint64_t budget, unsigned shards = 1);
OutputCensus output_census(int n, std::uint64_t budget, OutputRule rule,
                           unsigned shards = 1);

// Budget to use when the caller gives none: known S(n) for n <= 4.
std::optional<std::uint64_t> default_budget(int n);

// Throws std::out_of_range for t outside 1..budget.
Rational halting_probability(const HaltingCensus& c, std::uint64_t t);
Rational nonhalting_probability(const HaltingCensus& c);

// Fraction of halters with halting time <= t, for t in 1..max observed.
// Throws std::domain_error when nothing halted.
std::map<std::uint64_t, Rational> cumulative_halting(const HaltingCensus& c);

// 100 * 2^(14 - t), the reference curve for the (3,2) halting counts.
double fit_reference(int t);

struct FitRow {
  std::uint64_t t = 0;
  std::uint64_t count = 0;
  double fit = 0;
  double ratio = 0;
};

std::vector<FitRow> fit_table(const HaltingCensus& c);

}  // namespace beaver::tm
