#include "beaver/model.h"

#include <algorithm>
#include <stdexcept>

#include "json.hpp"

namespace beaver::eq {

namespace {

constexpr std::uint8_t kUnknown = 0xFF;

// Equation compiled for repeated evaluation.
struct Compiled {
  std::vector<Token> lhs;
  std::vector<Token> rhs;
  int nvars = 0;
};

Compiled compile(const Equation& eq) {
  int nvars = std::max(eq.lhs.max_var(), eq.rhs.max_var());
  return {eq.lhs.tokens(), eq.rhs.tokens(), nvars};
}

// Evaluates with possibly-unknown table cells; returns kUnknown if any cell
// needed is unknown.
std::uint8_t eval_partial(const std::vector<Token>& tokens, int k,
                          const std::uint8_t* f, const std::uint8_t* p,
                          const std::uint8_t* assignment) {
  std::uint8_t local[128] = {};
  std::vector<std::uint8_t> heap;
  std::uint8_t* stack = local;
  if (tokens.size() > sizeof local) {
    heap.resize(tokens.size());
    stack = heap.data();
  }
  int top = 0;
  for (std::size_t i = tokens.size(); i-- > 0;) {
    Token t = tokens[i];
    if (is_op_token(t)) {
      std::uint8_t a = stack[--top];
      std::uint8_t b = stack[--top];
      std::uint8_t v = kUnknown;
      if (a != kUnknown && b != kUnknown) v = (t == kTokenF ? f : p)[a * k + b];
      stack[top++] = v;
    } else {
      int slot = is_var_token(t) ? t : t - kSkolemBase;
      stack[top++] = assignment[slot - 1];
    }
  }
  return stack[0];
}

bool next_assignment(std::vector<std::uint8_t>& a, int k) {
  for (std::size_t i = a.size(); i-- > 0;) {
    if (++a[i] < k) return true;
    a[i] = 0;
  }
  return false;
}

// 0: some instance violated, 1: all instances hold, 2: undetermined.
int check(const Compiled& eq, int k, const std::uint8_t* f, const std::uint8_t* p) {
  std::vector<std::uint8_t> a(static_cast<std::size_t>(std::max(eq.nvars, 1)), 0);
  bool unknown = false;
  do {
    std::uint8_t l = eval_partial(eq.lhs, k, f, p, a.data());
    std::uint8_t r = eval_partial(eq.rhs, k, f, p, a.data());
    if (l == kUnknown || r == kUnknown) {
      unknown = true;
    } else if (l != r) {
      return 0;
    }
  } while (next_assignment(a, k));
  return unknown ? 2 : 1;
}

bool uses_op(const Equation& eq, Token op) {
  auto has = [op](const Term& t) {
    return std::find(t.tokens().begin(), t.tokens().end(), op) != t.tokens().end();
  };
  return has(eq.lhs) || has(eq.rhs);
}

}  // namespace

std::uint8_t evaluate(const FiniteModel& m, const Term& t,
                      std::span<const std::uint8_t> assignment) {
  int need = std::max(t.max_var(), 0);
  for (Token tok : t.tokens()) {
    if (is_skolem_token(tok)) need = std::max(need, static_cast<int>(tok - kSkolemBase));
  }
  if (static_cast<int>(assignment.size()) < need) {
    throw std::invalid_argument("assignment too short");
  }
  return eval_partial(t.tokens(), m.k, m.f.data(), m.p.data(), assignment.data());
}

std::optional<std::vector<std::uint8_t>> falsifying_assignment(const FiniteModel& m,
                                                               const Equation& eq) {
  Compiled c = compile(eq);
  std::vector<std::uint8_t> a(static_cast<std::size_t>(std::max(c.nvars, 1)), 0);
  do {
    if (eval_partial(c.lhs, m.k, m.f.data(), m.p.data(), a.data()) !=
        eval_partial(c.rhs, m.k, m.f.data(), m.p.data(), a.data())) {
      a.resize(static_cast<std::size_t>(c.nvars));
      return a;
    }
  } while (next_assignment(a, m.k));
  return std::nullopt;
}

bool satisfies(const FiniteModel& m, const Equation& eq) {
  return !falsifying_assignment(m, eq).has_value();
}

bool satisfies_all(const FiniteModel& m, std::span<const Equation> eqs) {
  return std::all_of(eqs.begin(), eqs.end(),
                     [&](const Equation& e) { return satisfies(m, e); });
}

ModelSearchResult search_models_of_size(std::span<const Equation> axioms,
                                        const Equation* goal, int k,
                                        std::uint64_t node_cap) {
  if (k < 1 || k > 16) throw std::invalid_argument("domain size out of range");
  std::vector<Compiled> ax;
  for (const Equation& e : axioms) ax.push_back(compile(e));
  std::optional<Compiled> g;
  if (goal) g = compile(*goal);

  // Tables of operations nobody mentions stay all-zero; they cannot affect
  // satisfaction, and zero is what the sweep order would try first anyway.
  bool need_f = false, need_p = false;
  for (const Equation& e : axioms) {
    need_f = need_f || uses_op(e, kTokenF);
    need_p = need_p || uses_op(e, kTokenP);
  }
  if (goal) {
    need_f = need_f || uses_op(*goal, kTokenF);
    need_p = need_p || uses_op(*goal, kTokenP);
  }

  const std::size_t cells = static_cast<std::size_t>(k * k);
  std::vector<std::uint8_t> f(cells, need_f ? kUnknown : 0);
  std::vector<std::uint8_t> p(cells, need_p ? kUnknown : 0);
  std::vector<std::uint8_t*> order;
  if (need_f) for (auto& c : f) order.push_back(&c);
  if (need_p) for (auto& c : p) order.push_back(&c);

  auto accept = [&]() {
    for (const Compiled& a : ax) {
      if (check(a, k, f.data(), p.data()) != 1) return false;
    }
    return !g || check(*g, k, f.data(), p.data()) == 0;
  };

  ModelSearchResult result;
  if (k <= 2) {
    // Exhaustive sweep: every table pair, f outer, cells most significant first.
    for (auto* c : order) *c = 0;
    do {
      if (accept()) {
        result.model = FiniteModel{k, f, p};
        return result;
      }
    } while ([&] {
      for (std::size_t i = order.size(); i-- > 0;) {
        if (++*order[i] < k) return true;
        *order[i] = 0;
      }
      return false;
    }());
    return result;
  }

  // Backtracking with conflict checks after every assignment.
  std::uint64_t nodes = 0;
  bool capped = false;
  auto consistent = [&]() {
    for (const Compiled& a : ax) {
      if (check(a, k, f.data(), p.data()) == 0) return false;
    }
    return true;
  };
  auto dfs = [&](auto&& self, std::size_t depth) -> bool {
    if (depth == order.size()) return accept();
    for (std::uint8_t v = 0; v < k; ++v) {
      if (++nodes > node_cap) {
        capped = true;
        return false;
      }
      *order[depth] = v;
      if (consistent() && self(self, depth + 1)) return true;
      if (capped) return false;
    }
    *order[depth] = kUnknown;
    return false;
  };
  if (order.empty() ? accept() : dfs(dfs, 0)) {
    result.model = FiniteModel{k, f, p};
  }
  result.cap_hit = capped;
  return result;
}

ModelSearchResult find_countermodel(std::span<const Equation> axioms, const Equation& goal,
                                    const ModelSearchLimits& limits) {
  if (limits.max_k < 1) throw std::invalid_argument("max_k must be >= 1");
  ModelSearchResult out;
  for (int k = 1; k <= limits.max_k; ++k) {
    ModelSearchResult r = search_models_of_size(axioms, &goal, k, limits.node_cap);
    out.cap_hit = out.cap_hit || r.cap_hit;
    if (r.model) {
      out.model = std::move(r.model);
      return out;
    }
  }
  return out;
}

ModelSearchResult find_nontrivial_model(std::span<const Equation> axioms,
                                        const ModelSearchLimits& limits) {
  ModelSearchResult out;
  for (int k = 2; k <= limits.max_k; ++k) {
    ModelSearchResult r = search_models_of_size(axioms, nullptr, k, limits.node_cap);
    out.cap_hit = out.cap_hit || r.cap_hit;
    if (r.model) {
      out.model = std::move(r.model);
      return out;
    }
  }
  return out;
}

std::vector<FiniteModel> all_models_k2(std::span<const Equation> axioms) {
  std::vector<FiniteModel> out;
  for (unsigned fc = 0; fc < 16; ++fc) {
    for (unsigned pc = 0; pc < 16; ++pc) {
      FiniteModel m{2, std::vector<std::uint8_t>(4), std::vector<std::uint8_t>(4)};
      for (unsigned i = 0; i < 4; ++i) {
        m.f[i] = (fc >> (3 - i)) & 1u;
        m.p[i] = (pc >> (3 - i)) & 1u;
      }
      if (satisfies_all(m, axioms)) out.push_back(std::move(m));
    }
  }
  return out;
}

std::string FiniteModel::to_json() const {
  nlohmann::json j;
  j["k"] = k;
  auto rows = [this](const std::vector<std::uint8_t>& t) {
    nlohmann::json out = nlohmann::json::array();
    for (int a = 0; a < k; ++a) {
      nlohmann::json row = nlohmann::json::array();
      for (int b = 0; b < k; ++b) row.push_back(t[static_cast<std::size_t>(a * k + b)]);
      out.push_back(row);
    }
    return out;
  };
  j["f"] = rows(f);
  j["p"] = rows(p);
  return j.dump();
}

FiniteModel FiniteModel::from_json(const std::string& text) {
  nlohmann::json j = nlohmann::json::parse(text);
  FiniteModel m;
  m.k = j.at("k").get<int>();
  if (m.k < 1 || m.k > 16) throw std::invalid_argument("model size out of range");
  auto read = [&](const nlohmann::json& rows) {
    std::vector<std::uint8_t> t;
    if (rows.size() != static_cast<std::size_t>(m.k)) throw std::invalid_argument("table rows");
    for (const auto& row : rows) {
      if (row.size() != static_cast<std::size_t>(m.k)) throw std::invalid_argument("table cols");
      for (const auto& v : row) {
        int x = v.get<int>();
        if (x < 0 || x >= m.k) throw std::invalid_argument("table value out of domain");
        t.push_back(static_cast<std::uint8_t>(x));
      }
    }
    return t;
  };
  m.f = read(j.at("f"));
  m.p = read(j.at("p"));
  return m;
}

}  // namespace beaver::eq
