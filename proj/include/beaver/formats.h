#pragma once

// On-disk formats: census CSV/JSON, distribution CSV, corpora, systems JSONL,
// truth-space CSV and run manifests. Every reader accepts what the matching
// writer produces, byte for byte.

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "beaver/census.h"
#include "beaver/prover.h"
#include "beaver/stats.h"
#include "beaver/term.h"

namespace beaver::io {

inline constexpr int kFormatVersion = 1;

class FormatError : public std::runtime_error {
 public:
  FormatError(const std::string& what, std::size_t line)
      : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

// `# states=n budget=b total=N` comment, header `t,k_t,p_kt`, one row per
// observed t, then `-,<nonhalting>,<p>`. Decimals carry 6 significant digits.
std::string census_csv(const tm::HaltingCensus& c);
tm::HaltingCensus parse_census_csv(std::string_view text);

// Exact counts; probabilities as {"num", "den"}.
std::string census_json(const tm::HaltingCensus& c);
tm::HaltingCensus parse_census_json(std::string_view text);

// `# label=...`, header `t,count`, rows, then `-,<undecided>`. The reader also
// takes a census CSV (first two columns).
std::string distribution_csv(const stats::DecisionDistribution& d);
stats::DecisionDistribution parse_distribution_csv(std::string_view text);

// One `lhs = rhs` per line; `#` comments and blank lines are skipped.
std::string corpus_text(const std::vector<eq::Equation>& corpus);
std::vector<eq::Equation> parse_corpus(std::string_view text);

struct SystemRecord {
  eq::AxiomSystem system;
  std::optional<std::string> consistency;   // "consistent" | "inconsistent" | "unknown"
  std::optional<std::string> independence;  // "independent" | "dependent" | "unknown"

  friend bool operator==(const SystemRecord&, const SystemRecord&) = default;
};

// {"id": mask, "axioms": ["lhs = rhs", ...], ...annotations}
std::string systems_jsonl(const std::vector<SystemRecord>& systems);
std::vector<SystemRecord> parse_systems_jsonl(std::string_view text);

// Header `goal,<mask>,<mask>,...`; one row per goal with the goal quoted.
std::string truth_space_csv(const eq::TruthSpace& space);
// Systems are rebuilt from the goal column (the corpus) and the masks.
eq::TruthSpace parse_truth_space_csv(std::string_view text);

struct RunManifest {
  std::string command;
  std::map<std::string, std::string> parameters;
  int format_version = kFormatVersion;
  std::map<std::string, std::string> input_hashes;  // path -> FNV-1a hex
  std::vector<std::string> outputs;
  double wall_time_s = 0;
  unsigned shards = 1;

  std::string to_json() const;
  static RunManifest from_json(std::string_view text);
};

std::string fnv1a_hex(std::string_view bytes);

std::string read_file(const std::string& path);
// Writes atomically enough for a single owner: temp file then rename.
void write_file(const std::string& path, std::string_view bytes);

}  // namespace beaver::io
