#pragma once

// Bounded equational prover. Proofs come from a bidirectional breadth-first
// search over single rewrite steps; disproofs come from finite countermodels.
// decide() interleaves the two on a fixed schedule so every decision carries
// a reproducible "time".

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "beaver/model.h"
#include "beaver/stats.h"
#include "beaver/term.h"

namespace beaver::eq {

struct DecisionBudget {
  int max_proof_steps = 17;
  std::size_t max_term_leaves = 16;
  std::size_t max_frontier = 200'000;
  int model_max_k = 3;
  std::uint64_t model_node_cap = 200'000;
};

// A goal with its variables replaced by fresh skolem constants k_i.
struct FrozenGoal {
  Term lhs;
  Term rhs;
  int skolems = 0;
};

FrozenGoal freeze_goal(const Equation& goal);

enum class Direction { kLeftToRight, kRightToLeft };

struct Rewrite {
  Term result;
  std::size_t axiom = 0;     // index into the axiom list
  Direction direction = Direction::kLeftToRight;
  std::size_t position = 0;  // preorder token offset of the rewritten subterm
};

// Terms an expanding rewrite may substitute for axiom variables that the
// matched side leaves unbound: subterms of `current` and of both goal sides,
// plus the goal's skolem constants. Sorted, no duplicates.
std::vector<Term> substitution_pool(const Term& current, const FrozenGoal& goal);

// Every one-step rewrite of `t`; results above the leaf cap are dropped, as
// are rewrites that leave the term unchanged.
std::vector<Rewrite> rewrite_steps(const Term& t, std::span<const Equation> axioms,
                                   std::span<const Term> pool, std::size_t max_leaves);

std::vector<Term> rewrite_neighbors(const Term& t, std::span<const Equation> axioms,
                                    const FrozenGoal& goal, const DecisionBudget& budget);

// True when `s = t` is an axiom instance placed inside a common context,
// i.e. one rewrite step joins the two sides. Needs no substitution pool.
bool one_step_equal(const Term& s, const Term& t, std::span<const Equation> axioms);

// Length-1 cases: reflexivity or an axiom instance (in context).
bool subsumed(std::span<const Equation> axioms, const Equation& goal);

struct ProofStep {
  Term from;
  Term to;
  std::size_t axiom = 0;
  Direction direction = Direction::kLeftToRight;
  std::size_t position = 0;
};

// `term  --[axiom #i, dir, pos]-->  term`
std::string format_step(const ProofStep& step);

// Incremental bidirectional BFS between the frozen goal sides.
class ProofSearch {
 public:
  ProofSearch(std::span<const Equation> axioms, const Equation& goal,
              const DecisionBudget& budget);

  // Expands layers until the combined radius reaches `depth` or the sides
  // meet; returns the path length on a meet.
  std::optional<int> advance_to(int depth);

  int radius() const { return forward_.radius + backward_.radius; }
  bool frontier_capped() const { return capped_; }
  // Both sides ran out of new terms without meeting.
  bool closed() const { return closed_; }
  std::optional<int> found() const { return found_; }
  std::vector<ProofStep> trace() const;

 private:
  struct Node {
    Term term;
    int dist = 0;
    int parent = -1;
    std::size_t axiom = 0;
    Direction direction = Direction::kLeftToRight;
    std::size_t position = 0;
  };
  struct Side {
    std::vector<Node> nodes;
    std::unordered_map<Term, int, TermHash> index;
    std::vector<int> frontier;
    int radius = 0;
  };

  void expand(Side& side, const Side& other, bool forward);
  std::size_t total_nodes() const { return forward_.nodes.size() + backward_.nodes.size(); }

  std::vector<Equation> axioms_;
  FrozenGoal goal_;
  DecisionBudget budget_;
  Side forward_;
  Side backward_;
  bool capped_ = false;
  bool closed_ = false;
  std::optional<int> found_;
  int meet_forward_ = -1;
  int meet_backward_ = -1;
};

struct ProofOutcome {
  std::optional<int> length;
  std::vector<ProofStep> trace;  // filled when requested and length > 1
  bool frontier_capped = false;
};

ProofOutcome prove(std::span<const Equation> axioms, const Equation& goal,
                   const DecisionBudget& budget, bool want_trace = false);

enum class Verdict { kProven, kDisproven, kUndecided };

struct ProofResult {
  Verdict verdict = Verdict::kUndecided;
  int length = 0;  // proof length when proven
  int time = 0;    // schedule time of the decision (0 when undecided)
  std::optional<FiniteModel> model;
  bool proof_budget_exhausted = false;
  bool model_budget_exhausted = false;
  std::vector<ProofStep> trace;
};

// Subsumption first; then rounds r = 1, 2, ...: search proofs to depth r+1,
// then look for countermodels of size exactly r (while r <= model_max_k).
// A disproof found in round r gets time r+1, the depth of that round.
ProofResult decide(std::span<const Equation> axioms, const Equation& goal,
                   const DecisionBudget& budget, bool want_trace = false);

enum class Consistency { kConsistent, kInconsistent, kUnknown };

struct ConsistencyResult {
  Consistency status = Consistency::kUnknown;
  std::optional<FiniteModel> witness;
  int proof_length = 0;  // derivation of x1 = x2 when inconsistent
};

// Consistent iff some model with at least two elements satisfies every
// axiom; inconsistent iff x1 = x2 is provable.
ConsistencyResult is_consistent(const AxiomSystem& system, const DecisionBudget& budget);

enum class Dependence { kIndependent, kDependent, kUnknown };

struct IndependenceEntry {
  Dependence status = Dependence::kUnknown;
  std::optional<FiniteModel> witness;
  int proof_length = 0;
};

std::vector<IndependenceEntry> is_independent(const AxiomSystem& system,
                                              const DecisionBudget& budget);
bool fully_independent(const std::vector<IndependenceEntry>& entries);

struct CellSummary {
  Verdict verdict = Verdict::kUndecided;
  int length = 0;   // proof length
  int model_k = 0;  // countermodel size
  int time = 0;

  // P<t>, D<k> or U.
  std::string code() const;
  static CellSummary from_code(const std::string& code);
  friend bool operator==(const CellSummary&, const CellSummary&) = default;
};

// Rows are goals, columns are systems; cells stored goal-major.
struct TruthSpace {
  std::vector<AxiomSystem> systems;
  std::vector<Equation> corpus;
  std::vector<CellSummary> cells;

  const CellSummary& cell(std::size_t goal, std::size_t system) const {
    return cells[goal * systems.size() + system];
  }
};

TruthSpace truth_space(std::vector<AxiomSystem> systems, std::vector<Equation> corpus,
                       const DecisionBudget& budget, unsigned workers = 1);

stats::DecisionDistribution proof_census(const TruthSpace& space);

}  // namespace beaver::eq
