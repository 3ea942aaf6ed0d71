#include "beaver/term.h"

#include <algorithm>
#include <cctype>
#include <functional>
#include <map>

namespace beaver::eq {

std::size_t subterm_end(const std::vector<Token>& tokens, std::size_t begin) {
  std::size_t need = 1;
  std::size_t i = begin;
  while (need > 0) {
    if (i >= tokens.size()) throw std::invalid_argument("truncated term");
    need += is_op_token(tokens[i]) ? 1 : -1;
    ++i;
  }
  return i;
}

Term::Term(std::vector<Token> tokens) : tokens_(std::move(tokens)) {
  if (tokens_.empty() || subterm_end(tokens_, 0) != tokens_.size()) {
    throw std::invalid_argument("token sequence is not a single term");
  }
  for (Token t : tokens_) {
    if (t == 0 || t == kSkolemBase || (t > kSkolemBase + kMaxId && !is_op_token(t))) {
      throw std::invalid_argument("bad token");
    }
  }
}

Term Term::var(int id) {
  if (id < 1 || id > kMaxId) throw std::invalid_argument("variable id out of range");
  Term t;
  t.tokens_ = {static_cast<Token>(id)};
  return t;
}

Term Term::skolem(int id) {
  if (id < 1 || id > kMaxId) throw std::invalid_argument("skolem id out of range");
  Term t;
  t.tokens_ = {static_cast<Token>(kSkolemBase + id)};
  return t;
}

Term Term::app(Op op, const Term& left, const Term& right) {
  Term t;
  t.tokens_.reserve(1 + left.tokens_.size() + right.tokens_.size());
  t.tokens_.push_back(op == Op::kF ? kTokenF : kTokenP);
  t.tokens_.insert(t.tokens_.end(), left.tokens_.begin(), left.tokens_.end());
  t.tokens_.insert(t.tokens_.end(), right.tokens_.begin(), right.tokens_.end());
  return t;
}

int Term::id() const {
  if (is_app() || empty()) throw std::logic_error("id() on an application");
  Token t = tokens_[0];
  return is_var_token(t) ? t : t - kSkolemBase;
}

Term Term::left() const {
  if (!is_app()) throw std::logic_error("left() on a leaf");
  std::size_t end = subterm_end(tokens_, 1);
  return Term(std::vector<Token>(tokens_.begin() + 1, tokens_.begin() + static_cast<long>(end)));
}

Term Term::right() const {
  if (!is_app()) throw std::logic_error("right() on a leaf");
  std::size_t mid = subterm_end(tokens_, 1);
  return Term(std::vector<Token>(tokens_.begin() + static_cast<long>(mid), tokens_.end()));
}

int Term::max_var() const {
  int best = 0;
  for (Token t : tokens_) {
    if (is_var_token(t)) best = std::max<int>(best, t);
  }
  return best;
}

bool Term::ground() const { return max_var() == 0; }

std::size_t TermHash::operator()(const Term& t) const noexcept {
  // FNV-1a over the token stream.
  std::uint64_t h = 1469598103934665603ull;
  for (Token tok : t.tokens()) {
    h ^= tok;
    h *= 1099511628211ull;
  }
  return static_cast<std::size_t>(h);
}

namespace {

class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  Term parse_whole() {
    Term t = term();
    skip_ws();
    if (pos_ != text_.size()) fail("trailing input");
    return t;
  }

  Term term() {
    skip_ws();
    if (pos_ >= text_.size()) fail("expected term");
    char c = text_[pos_];
    if (c == 'f' || c == 'p') {
      ++pos_;
      expect('(');
      Term l = term();
      expect(',');
      Term r = term();
      expect(')');
      return Term::app(c == 'f' ? Op::kF : Op::kP, l, r);
    }
    if (c == 'x' || c == 'k') {
      ++pos_;
      std::size_t start = pos_;
      long id = 0;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
        id = id * 10 + (text_[pos_] - '0');
        if (id > kMaxId) fail("identifier too large");
        ++pos_;
      }
      if (pos_ == start) fail("expected digits");
      if (id == 0) {
        pos_ = start;
        fail("identifier 0 is not allowed");
      }
      return c == 'x' ? Term::var(static_cast<int>(id)) : Term::skolem(static_cast<int>(id));
    }
    fail("expected 'f(', 'p(' or a variable");
  }

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

 private:
  void expect(char c) {
    skip_ws();
    if (pos_ >= text_.size() || text_[pos_] != c) fail(std::string("expected '") + c + "'");
    ++pos_;
  }

  // Offsets are reported 1-based: the byte where the problem was noticed.
  [[noreturn]] void fail(const std::string& what) { throw ParseError(what, pos_ + 1); }

  std::string_view text_;
  std::size_t pos_ = 0;
};

void print_into(const std::vector<Token>& tokens, std::size_t& i, std::string& out) {
  Token t = tokens[i++];
  if (is_op_token(t)) {
    out += t == kTokenF ? "f(" : "p(";
    print_into(tokens, i, out);
    out += ',';
    print_into(tokens, i, out);
    out += ')';
  } else if (is_var_token(t)) {
    out += 'x';
    out += std::to_string(t);
  } else {
    out += 'k';
    out += std::to_string(t - kSkolemBase);
  }
}

// Renames variables by first occurrence across `a` then `b`.
std::pair<Term, Term> rename(const Term& a, const Term& b, int& nvars) {
  std::map<Token, Token> names;
  auto remap = [&](const Term& t) {
    std::vector<Token> out = t.tokens();
    for (Token& tok : out) {
      if (!is_var_token(tok)) continue;
      auto [it, fresh] = names.emplace(tok, static_cast<Token>(names.size() + 1));
      tok = it->second;
    }
    return Term(std::move(out));
  };
  Term ra = remap(a);
  Term rb = remap(b);
  nvars = static_cast<int>(names.size());
  return {std::move(ra), std::move(rb)};
}

}  // namespace

Term parse_term(std::string_view text) { return Parser(text).parse_whole(); }

std::string print_term(const Term& t) {
  std::string out;
  std::size_t i = 0;
  if (!t.empty()) print_into(t.tokens(), i, out);
  return out;
}

std::string Equation::to_string() const { return print_term(lhs) + " = " + print_term(rhs); }

Equation canonicalize(const Term& lhs, const Term& rhs) {
  int n1 = 0, n2 = 0;
  auto [l1, r1] = rename(lhs, rhs, n1);
  auto [l2, r2] = rename(rhs, lhs, n2);
  Equation a{std::move(l1), std::move(r1), n1};
  Equation b{std::move(l2), std::move(r2), n2};
  return b < a ? b : a;
}

bool is_canonical(const Equation& eq) { return canonicalize(eq.lhs, eq.rhs) == eq; }

Equation parse_equation(std::string_view text) {
  auto eq = text.find('=');
  if (eq == std::string_view::npos) throw ParseError("expected '='", text.size() + 1);
  Term lhs = parse_term(text.substr(0, eq));
  Term rhs;
  try {
    rhs = parse_term(text.substr(eq + 1));
  } catch (const ParseError& e) {
    throw ParseError("bad right-hand side", eq + e.offset());
  }
  return canonicalize(lhs, rhs);
}

namespace {

// Shape templates: leaves are 0, internal nodes kTokenF.
const std::vector<std::vector<Token>>& shapes(int leaves) {
  static std::map<int, std::vector<std::vector<Token>>> memo;
  auto it = memo.find(leaves);
  if (it != memo.end()) return it->second;
  std::vector<std::vector<Token>> out;
  if (leaves == 1) {
    out.push_back({0});
  } else {
    for (int i = 1; i < leaves; ++i) {
      for (const auto& l : shapes(i)) {
        for (const auto& r : shapes(leaves - i)) {
          std::vector<Token> s{kTokenF};
          s.insert(s.end(), l.begin(), l.end());
          s.insert(s.end(), r.begin(), r.end());
          out.push_back(std::move(s));
        }
      }
    }
  }
  return memo.emplace(leaves, std::move(out)).first->second;
}

// Restricted growth strings of `length` in lexicographic order, values 1-based.
void for_each_pattern(int length, const std::function<void(const std::vector<Token>&)>& fn) {
  std::vector<Token> rgs(static_cast<std::size_t>(length), 1);
  std::function<void(int, Token)> rec = [&](int pos, Token max_used) {
    if (pos == length) {
      fn(rgs);
      return;
    }
    for (Token v = 1; v <= max_used + 1; ++v) {
      rgs[static_cast<std::size_t>(pos)] = v;
      rec(pos + 1, std::max(max_used, v));
    }
  };
  rec(0, 0);
}

}  // namespace

std::vector<Equation> enumerate_formulas(int length) {
  if (length < 1) throw std::invalid_argument("formula length must be >= 1");
  std::vector<Equation> corpus;
  for (int a = 1; a < length; ++a) {
    const int b = length - a;
    for (const auto& ls : shapes(a)) {
      for (const auto& rs : shapes(b)) {
        const int internal = (a - 1) + (b - 1);
        for (std::uint32_t ops = 0; ops < (1u << internal); ++ops) {
          for_each_pattern(length, [&](const std::vector<Token>& vars) {
            std::size_t leaf = 0;
            int node = 0;
            auto fill = [&](const std::vector<Token>& shape) {
              std::vector<Token> out = shape;
              for (Token& tok : out) {
                if (tok == kTokenF) {
                  // First internal node is the most significant bit.
                  bool p = (ops >> (internal - 1 - node)) & 1u;
                  tok = p ? kTokenP : kTokenF;
                  ++node;
                } else {
                  tok = vars[leaf++];
                }
              }
              return Term(std::move(out));
            };
            Term lhs = fill(ls);
            Term rhs = fill(rs);
            Equation cand{lhs, rhs, *std::max_element(vars.begin(), vars.end())};
            if (is_canonical(cand)) corpus.push_back(std::move(cand));
          });
        }
      }
    }
  }
  return corpus;
}

Term build_constant(int i) {
  if (i < 0) throw std::invalid_argument("constant index must be >= 0");
  const Term a = Term::var(1);
  const Term faa = Term::app(Op::kF, a, a);
  Term c = Term::app(Op::kP, faa, faa);
  for (int k = 0; k < i; ++k) c = Term::app(Op::kP, faa, c);
  return c;
}

AxiomSystem axiom_system(const std::vector<Equation>& corpus, std::uint64_t mask) {
  if (corpus.size() < 64 && (mask >> corpus.size()) != 0) {
    throw std::out_of_range("mask selects formulas beyond the corpus");
  }
  AxiomSystem sys{mask, {}};
  for (std::size_t i = 0; i < corpus.size() && i < 64; ++i) {
    if ((mask >> i) & 1u) sys.axioms.push_back(corpus[i]);
  }
  return sys;
}

AxiomSystemStream::AxiomSystemStream(std::vector<Equation> corpus,
                                     std::optional<std::uint64_t> limit)
    : corpus_(std::move(corpus)) {
  const bool fits = corpus_.size() < 64;
  const std::uint64_t all = fits ? (std::uint64_t{1} << corpus_.size()) : 0;
  if (!limit) {
    if (!fits) throw std::invalid_argument("corpus too large to enumerate every subset");
    end_ = all;
  } else {
    if (*limit < 1) throw std::invalid_argument("sample size must be >= 1");
    end_ = fits ? std::min(*limit, all) : *limit;
  }
}

std::optional<AxiomSystem> AxiomSystemStream::next() {
  if (next_mask_ >= end_) return std::nullopt;
  return axiom_system(corpus_, next_mask_++);
}

std::vector<AxiomSystem> generate_axiom_systems(int length, std::optional<std::uint64_t> limit) {
  AxiomSystemStream stream(enumerate_formulas(length), limit);
  std::vector<AxiomSystem> out;
  while (auto sys = stream.next()) out.push_back(std::move(*sys));
  return out;
}

}  // namespace beaver::eq
