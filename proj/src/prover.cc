#include "beaver/prover.h"

#include <algorithm>
#include <atomic>
#include <set>
#include <stdexcept>
#include <thread>

namespace beaver::eq {

FrozenGoal freeze_goal(const Equation& goal) {
  auto freeze = [](const Term& t) {
    std::vector<Token> tokens = t.tokens();
    for (Token& tok : tokens) {
      if (is_var_token(tok)) tok = static_cast<Token>(kSkolemBase + tok);
    }
    return Term(std::move(tokens));
  };
  return {freeze(goal.lhs), freeze(goal.rhs), std::max(goal.lhs.max_var(), goal.rhs.max_var())};
}

namespace {

constexpr std::size_t kUnbound = static_cast<std::size_t>(-1);

struct Span {
  const std::vector<Token>* src = nullptr;
  std::size_t begin = kUnbound;
  std::size_t end = kUnbound;

  bool bound() const { return begin != kUnbound; }
  bool same_as(const std::vector<Token>& tokens, std::size_t b, std::size_t e) const {
    return end - begin == e - b &&
           std::equal(src->begin() + static_cast<long>(begin), src->begin() + static_cast<long>(end),
                      tokens.begin() + static_cast<long>(b));
  }
};

// Matches the pattern (axiom side) against tokens[at, ...). Bindings shared
// across calls let two patterns be matched consistently.
bool match(const std::vector<Token>& pattern, const std::vector<Token>& tokens, std::size_t at,
           std::vector<Span>& bind, std::size_t* end_out = nullptr) {
  std::size_t cur = at;
  for (Token p : pattern) {
    if (cur >= tokens.size()) return false;
    if (is_op_token(p)) {
      if (tokens[cur] != p) return false;
      ++cur;
      continue;
    }
    std::size_t e = subterm_end(tokens, cur);
    Span& b = bind[p];
    if (!b.bound()) {
      b = {&tokens, cur, e};
    } else if (!b.same_as(tokens, cur, e)) {
      return false;
    }
    cur = e;
  }
  if (end_out) *end_out = cur;
  return true;
}

int max_var(const Equation& e) { return std::max(e.lhs.max_var(), e.rhs.max_var()); }

void collect_subterms(const Term& t, std::set<Term>& out) {
  const auto& tok = t.tokens();
  for (std::size_t i = 0; i < tok.size(); ++i) {
    std::size_t e = subterm_end(tok, i);
    out.insert(Term(std::vector<Token>(tok.begin() + static_cast<long>(i),
                                       tok.begin() + static_cast<long>(e))));
  }
}

// Odometer over pool indexes; false once every combination was produced.
bool next_choice(std::vector<std::size_t>& choice, std::size_t size) {
  for (std::size_t i = choice.size(); i-- > 0;) {
    if (++choice[i] < size) return true;
    choice[i] = 0;
  }
  return false;
}

Direction flip(Direction d) {
  return d == Direction::kLeftToRight ? Direction::kRightToLeft : Direction::kLeftToRight;
}

}  // namespace

std::vector<Term> substitution_pool(const Term& current, const FrozenGoal& goal) {
  std::set<Term> pool;
  collect_subterms(current, pool);
  collect_subterms(goal.lhs, pool);
  collect_subterms(goal.rhs, pool);
  for (int i = 1; i <= goal.skolems; ++i) pool.insert(Term::skolem(i));
  return {pool.begin(), pool.end()};
}

std::vector<Rewrite> rewrite_steps(const Term& t, std::span<const Equation> axioms,
                                   std::span<const Term> pool, std::size_t max_leaves) {
  std::vector<Rewrite> out;
  const auto& tok = t.tokens();
  for (std::size_t pos = 0; pos < tok.size(); ++pos) {
    const std::size_t end = subterm_end(tok, pos);
    for (std::size_t ai = 0; ai < axioms.size(); ++ai) {
      const Equation& ax = axioms[ai];
      const auto nv = static_cast<std::size_t>(max_var(ax));
      for (Direction dir : {Direction::kLeftToRight, Direction::kRightToLeft}) {
        const auto& from = dir == Direction::kLeftToRight ? ax.lhs.tokens() : ax.rhs.tokens();
        const auto& to = dir == Direction::kLeftToRight ? ax.rhs.tokens() : ax.lhs.tokens();
        std::vector<Span> bind(nv + 1);
        std::size_t matched_end = 0;
        if (!match(from, tok, pos, bind, &matched_end) || matched_end != end) continue;

        std::vector<Token> free_vars;
        for (Token v : to) {
          if (is_var_token(v) && !bind[v].bound() &&
              std::find(free_vars.begin(), free_vars.end(), v) == free_vars.end()) {
            free_vars.push_back(v);
          }
        }
        if (!free_vars.empty() && pool.empty()) continue;

        std::vector<std::size_t> choice(free_vars.size(), 0);
        do {
          for (std::size_t i = 0; i < free_vars.size(); ++i) {
            const auto& pt = pool[choice[i]].tokens();
            bind[free_vars[i]] = {&pt, 0, pt.size()};
          }
          std::vector<Token> result(tok.begin(), tok.begin() + static_cast<long>(pos));
          for (Token v : to) {
            if (is_var_token(v)) {
              const Span& b = bind[v];
              result.insert(result.end(), b.src->begin() + static_cast<long>(b.begin),
                            b.src->begin() + static_cast<long>(b.end));
            } else {
              result.push_back(v);
            }
          }
          result.insert(result.end(), tok.begin() + static_cast<long>(end), tok.end());
          if ((result.size() + 1) / 2 <= max_leaves && result != tok) {
            out.push_back({Term(std::move(result)), ai, dir, pos});
          }
        } while (next_choice(choice, pool.size()));
        for (Token v : free_vars) bind[v] = {};
      }
    }
  }
  return out;
}

std::vector<Term> rewrite_neighbors(const Term& t, std::span<const Equation> axioms,
                                    const FrozenGoal& goal, const DecisionBudget& budget) {
  if (t.leaves() > budget.max_term_leaves) throw std::invalid_argument("term exceeds leaf cap");
  std::vector<Term> pool = substitution_pool(t, goal);
  std::set<Term> out;
  for (Rewrite& r : rewrite_steps(t, axioms, pool, budget.max_term_leaves)) {
    out.insert(std::move(r.result));
  }
  return {out.begin(), out.end()};
}

bool one_step_equal(const Term& s, const Term& t, std::span<const Equation> axioms) {
  const auto& st = s.tokens();
  const auto& tt = t.tokens();
  for (const Equation& ax : axioms) {
    const auto nv = static_cast<std::size_t>(max_var(ax));
    for (bool swap : {false, true}) {
      const auto& a = swap ? ax.rhs.tokens() : ax.lhs.tokens();
      const auto& b = swap ? ax.lhs.tokens() : ax.rhs.tokens();
      std::vector<Span> bind(nv + 1);
      std::size_t e1 = 0, e2 = 0;
      if (match(a, st, 0, bind, &e1) && e1 == st.size() && match(b, tt, 0, bind, &e2) &&
          e2 == tt.size()) {
        return true;
      }
    }
  }
  if (s.is_app() && t.is_app() && s.op() == t.op()) {
    Term sl = s.left(), sr = s.right(), tl = t.left(), tr = t.right();
    if (sl == tl && one_step_equal(sr, tr, axioms)) return true;
    if (sr == tr && one_step_equal(sl, tl, axioms)) return true;
  }
  return false;
}

bool subsumed(std::span<const Equation> axioms, const Equation& goal) {
  FrozenGoal g = freeze_goal(goal);
  return g.lhs == g.rhs || one_step_equal(g.lhs, g.rhs, axioms);
}

std::string format_step(const ProofStep& step) {
  return print_term(step.from) + "  --[axiom #" + std::to_string(step.axiom + 1) + ", " +
         (step.direction == Direction::kLeftToRight ? "l2r" : "r2l") + ", " +
         std::to_string(step.position) + "]-->  " + print_term(step.to);
}

ProofSearch::ProofSearch(std::span<const Equation> axioms, const Equation& goal,
                         const DecisionBudget& budget)
    : axioms_(axioms.begin(), axioms.end()), goal_(freeze_goal(goal)), budget_(budget) {
  forward_.nodes.push_back({goal_.lhs});
  forward_.index.emplace(goal_.lhs, 0);
  forward_.frontier = {0};
  backward_.nodes.push_back({goal_.rhs});
  backward_.index.emplace(goal_.rhs, 0);
  backward_.frontier = {0};
  if (goal_.lhs == goal_.rhs) {
    found_ = 0;
    meet_forward_ = meet_backward_ = 0;
  }
}

void ProofSearch::expand(Side& side, const Side& other, bool forward) {
  std::vector<int> next;
  std::optional<int> best;
  for (int id : side.frontier) {
    // Copy: nodes may reallocate while we append.
    const Term current = side.nodes[static_cast<std::size_t>(id)].term;
    const int dist = side.nodes[static_cast<std::size_t>(id)].dist;
    std::vector<Term> pool = substitution_pool(current, goal_);
    for (Rewrite& r : rewrite_steps(current, axioms_, pool, budget_.max_term_leaves)) {
      if (side.index.count(r.result)) continue;
      if (total_nodes() >= budget_.max_frontier) {
        capped_ = true;
        break;
      }
      const int nid = static_cast<int>(side.nodes.size());
      side.index.emplace(r.result, nid);
      auto hit = other.index.find(r.result);
      side.nodes.push_back({std::move(r.result), dist + 1, id, r.axiom, r.direction, r.position});
      next.push_back(nid);
      if (hit != other.index.end()) {
        int len = dist + 1 + other.nodes[static_cast<std::size_t>(hit->second)].dist;
        if (!best || len < *best) {
          best = len;
          meet_forward_ = forward ? nid : hit->second;
          meet_backward_ = forward ? hit->second : nid;
        }
      }
    }
    if (capped_) break;
  }
  side.frontier = std::move(next);
  ++side.radius;
  if (best) found_ = best;
}

std::optional<int> ProofSearch::advance_to(int depth) {
  while (!found_ && !capped_ && !closed_ && radius() < depth) {
    const bool f_open = !forward_.frontier.empty();
    const bool b_open = !backward_.frontier.empty();
    if (!f_open && !b_open) {
      closed_ = true;
      break;
    }
    bool use_forward = f_open && (!b_open || forward_.frontier.size() <= backward_.frontier.size());
    if (use_forward) {
      expand(forward_, backward_, true);
    } else {
      expand(backward_, forward_, false);
    }
  }
  if (!found_ && forward_.frontier.empty() && backward_.frontier.empty()) closed_ = true;
  return found_;
}

std::vector<ProofStep> ProofSearch::trace() const {
  std::vector<ProofStep> steps;
  if (!found_ || *found_ == 0) return steps;
  // Forward half: root -> meet.
  std::vector<ProofStep> head;
  for (int id = meet_forward_; forward_.nodes[static_cast<std::size_t>(id)].parent >= 0;) {
    const Node& n = forward_.nodes[static_cast<std::size_t>(id)];
    const Node& p = forward_.nodes[static_cast<std::size_t>(n.parent)];
    head.push_back({p.term, n.term, n.axiom, n.direction, n.position});
    id = n.parent;
  }
  steps.assign(head.rbegin(), head.rend());
  // Backward half: meet -> rhs, each edge read in reverse.
  for (int id = meet_backward_; backward_.nodes[static_cast<std::size_t>(id)].parent >= 0;) {
    const Node& n = backward_.nodes[static_cast<std::size_t>(id)];
    const Node& p = backward_.nodes[static_cast<std::size_t>(n.parent)];
    steps.push_back({n.term, p.term, n.axiom, flip(n.direction), n.position});
    id = n.parent;
  }
  return steps;
}

ProofOutcome prove(std::span<const Equation> axioms, const Equation& goal,
                   const DecisionBudget& budget, bool want_trace) {
  ProofOutcome out;
  if (subsumed(axioms, goal)) {
    out.length = 1;
    return out;
  }
  ProofSearch search(axioms, goal, budget);
  out.length = search.advance_to(budget.max_proof_steps);
  out.frontier_capped = search.frontier_capped();
  if (out.length && want_trace) out.trace = search.trace();
  return out;
}

ProofResult decide(std::span<const Equation> axioms, const Equation& goal,
                   const DecisionBudget& budget, bool want_trace) {
  ProofResult res;
  if (subsumed(axioms, goal)) {
    res.verdict = Verdict::kProven;
    res.length = res.time = 1;
    return res;
  }
  ProofSearch search(axioms, goal, budget);
  const int rounds = std::max(budget.max_proof_steps - 1, budget.model_max_k);
  for (int r = 1; r <= rounds; ++r) {
    const int depth = r + 1;
    if (depth <= budget.max_proof_steps) {
      if (auto len = search.advance_to(depth)) {
        res.verdict = Verdict::kProven;
        res.length = res.time = *len;
        if (want_trace) res.trace = search.trace();
        return res;
      }
    }
    if (r <= budget.model_max_k) {
      ModelSearchResult m = search_models_of_size(axioms, &goal, r, budget.model_node_cap);
      if (m.model) {
        res.verdict = Verdict::kDisproven;
        res.model = std::move(m.model);
        res.time = depth;
        return res;
      }
    }
  }
  res.proof_budget_exhausted = true;
  res.model_budget_exhausted = true;
  return res;
}

ConsistencyResult is_consistent(const AxiomSystem& system, const DecisionBudget& budget) {
  ConsistencyResult out;
  ModelSearchResult m =
      find_nontrivial_model(system.axioms, {budget.model_max_k, budget.model_node_cap});
  if (m.model) {
    out.status = Consistency::kConsistent;
    out.witness = std::move(m.model);
    return out;
  }
  const Equation collapse = canonicalize(Term::var(1), Term::var(2));
  ProofOutcome p = prove(system.axioms, collapse, budget);
  if (p.length) {
    out.status = Consistency::kInconsistent;
    out.proof_length = *p.length;
  }
  return out;
}

std::vector<IndependenceEntry> is_independent(const AxiomSystem& system,
                                              const DecisionBudget& budget) {
  if (system.axioms.empty()) throw std::invalid_argument("independence of an empty system");
  std::vector<IndependenceEntry> out;
  for (std::size_t i = 0; i < system.axioms.size(); ++i) {
    std::vector<Equation> rest;
    for (std::size_t j = 0; j < system.axioms.size(); ++j) {
      if (j != i) rest.push_back(system.axioms[j]);
    }
    const Equation& a = system.axioms[i];
    IndependenceEntry e;
    // A countermodel and a proof cannot both exist, so trying the cheap
    // model sweep first does not change any verdict.
    ModelSearchResult m = find_countermodel(rest, a, {budget.model_max_k, budget.model_node_cap});
    if (m.model) {
      e.status = Dependence::kIndependent;
      e.witness = std::move(m.model);
    } else if (ProofOutcome p = prove(rest, a, budget); p.length) {
      e.status = Dependence::kDependent;
      e.proof_length = *p.length;
    }
    out.push_back(std::move(e));
  }
  return out;
}

bool fully_independent(const std::vector<IndependenceEntry>& entries) {
  return std::all_of(entries.begin(), entries.end(), [](const IndependenceEntry& e) {
    return e.status == Dependence::kIndependent;
  });
}

std::string CellSummary::code() const {
  switch (verdict) {
    case Verdict::kProven: return "P" + std::to_string(length);
    case Verdict::kDisproven: return "D" + std::to_string(model_k);
    case Verdict::kUndecided: break;
  }
  return "U";
}

CellSummary CellSummary::from_code(const std::string& code) {
  CellSummary c;
  if (code == "U") return c;
  if (code.size() < 2 || (code[0] != 'P' && code[0] != 'D')) {
    throw std::invalid_argument("bad truth-space cell code '" + code + "'");
  }
  int v = 0;
  for (std::size_t i = 1; i < code.size(); ++i) {
    if (code[i] < '0' || code[i] > '9') throw std::invalid_argument("bad cell code '" + code + "'");
    v = v * 10 + (code[i] - '0');
  }
  if (v < 1) throw std::invalid_argument("bad cell code '" + code + "'");
  if (code[0] == 'P') {
    c.verdict = Verdict::kProven;
    c.length = c.time = v;
  } else {
    // Size-k countermodels are searched in round k, at time k+1.
    c.verdict = Verdict::kDisproven;
    c.model_k = v;
    c.time = v + 1;
  }
  return c;
}

TruthSpace truth_space(std::vector<AxiomSystem> systems, std::vector<Equation> corpus,
                       const DecisionBudget& budget, unsigned workers) {
  TruthSpace space{std::move(systems), std::move(corpus), {}};
  const std::size_t n = space.systems.size() * space.corpus.size();
  space.cells.resize(n);
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t i = next++; i < n; i = next++) {
      const std::size_t g = i / space.systems.size();
      const std::size_t s = i % space.systems.size();
      ProofResult r = decide(space.systems[s].axioms, space.corpus[g], budget);
      CellSummary& c = space.cells[i];
      c.verdict = r.verdict;
      c.length = r.length;
      c.model_k = r.model ? r.model->k : 0;
      c.time = r.time;
    }
  };
  if (workers <= 1) {
    work();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work);
  }
  return space;
}

stats::DecisionDistribution proof_census(const TruthSpace& space) {
  stats::DecisionDistribution d;
  d.label = "proof lengths";
  d.total = space.cells.size();
  for (const CellSummary& c : space.cells) {
    if (c.verdict == Verdict::kUndecided) {
      ++d.undecided;
    } else {
      ++d.counts[static_cast<std::uint64_t>(c.time)];
    }
  }
  return d;
}

}  // namespace beaver::eq
