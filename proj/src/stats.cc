#include "beaver/stats.h"

#include <set>
#include <stdexcept>

namespace beaver::stats {

std::uint64_t DecisionDistribution::decided() const {
  std::uint64_t sum = 0;
  for (const auto& [t, k] : counts) sum += k;
  return sum;
}

void DecisionDistribution::validate() const {
  if (!counts.empty() && counts.begin()->first < 1) {
    throw std::invalid_argument("decision times start at 1");
  }
  if (decided() + undecided != total) {
    throw std::invalid_argument("distribution counts do not sum to total");
  }
}

DecisionDistribution from_census(const tm::HaltingCensus& c, std::string label) {
  DecisionDistribution d;
  d.label = label.empty() ? "(" + std::to_string(c.n) + ",2)" : std::move(label);
  d.counts = c.counts;
  d.undecided = c.nonhalting;
  d.total = c.total;
  return d;
}

namespace {

std::uint64_t denominator(const DecisionDistribution& d, Denominator denom) {
  std::uint64_t den = denom == Denominator::kTotal ? d.total : d.decided();
  if (den == 0) throw std::domain_error("empty distribution");
  return den;
}

std::uint64_t decided_by(const DecisionDistribution& d, std::uint64_t t) {
  std::uint64_t sum = 0;
  for (auto it = d.counts.begin(); it != d.counts.end() && it->first <= t; ++it) sum += it->second;
  return sum;
}

}  // namespace

Rational cumulative_fraction(const DecisionDistribution& d, std::uint64_t t, Denominator denom) {
  if (t < 1) throw std::invalid_argument("t must be >= 1");
  return Rational(decided_by(d, t), denominator(d, denom));
}

OptimeResult optime(const DecisionDistribution& d, const Rational& gamma, Denominator denom) {
  if (gamma.num() == 0 || gamma > Rational(1, 1)) {
    throw std::invalid_argument("gamma must lie in (0, 1]");
  }
  const std::uint64_t den = denominator(d, denom);
  OptimeResult out;
  out.max_achievable = Rational(d.decided(), den);
  std::uint64_t running = 0;
  for (const auto& [t, k] : d.counts) {
    running += k;
    if (Rational(running, den) >= gamma) {
      out.step = t;
      return out;
    }
  }
  return out;
}

std::uint64_t fbb(const DecisionDistribution& d) {
  for (auto it = d.counts.rbegin(); it != d.counts.rend(); ++it) {
    if (it->second > 0) return it->first;
  }
  throw std::domain_error("no decided entries");
}

bool monotone_tail(const DecisionDistribution& d) {
  if (d.counts.empty()) return true;
  std::uint64_t lo = d.counts.begin()->first;
  std::uint64_t hi = d.counts.rbegin()->first;
  std::uint64_t peak_t = lo, peak = 0;
  for (std::uint64_t t = lo; t <= hi; ++t) {
    auto it = d.counts.find(t);
    std::uint64_t k = it == d.counts.end() ? 0 : it->second;
    if (k > peak) {
      peak = k;
      peak_t = t;
    }
  }
  std::uint64_t prev = peak;
  for (std::uint64_t t = peak_t + 1; t <= hi; ++t) {
    auto it = d.counts.find(t);
    std::uint64_t k = it == d.counts.end() ? 0 : it->second;
    if (k > prev) return false;
    prev = k;
  }
  return true;
}

Comparison compare_distributions(const DecisionDistribution& a, const DecisionDistribution& b) {
  std::set<std::uint64_t> ts;
  for (const auto& [t, k] : a.counts) ts.insert(t);
  for (const auto& [t, k] : b.counts) ts.insert(t);
  Comparison out;
  auto at = [](const DecisionDistribution& d, std::uint64_t t) {
    auto it = d.counts.find(t);
    return it == d.counts.end() ? std::uint64_t{0} : it->second;
  };
  for (std::uint64_t t : ts) {
    out.rows.push_back({t, Rational(at(a, t), a.total), Rational(at(b, t), b.total),
                        cumulative_fraction(a, t), cumulative_fraction(b, t)});
  }
  out.monotone_tail_a = monotone_tail(a);
  out.monotone_tail_b = monotone_tail(b);
  return out;
}

OptimeChecks optime_consistency(const DecisionDistribution& d, std::span<const Rational> gammas) {
  OptimeChecks checks;
  const std::uint64_t best = fbb(d);
  if (d.undecided == 0) {
    checks.full_gamma_equals_fbb = optime(d, Rational(1, 1)).step == best;
  }
  std::optional<std::uint64_t> prev;
  Rational prev_gamma;
  for (const Rational& g : gammas) {
    OptimeResult r = optime(d, g);
    if (!r.step) continue;
    if (*r.step > best) checks.bounded_by_fbb = false;
    if (prev && g >= prev_gamma && *r.step < *prev) checks.nondecreasing = false;
    if (prev && g <= prev_gamma && *r.step > *prev) checks.nondecreasing = false;
    prev = r.step;
    prev_gamma = g;
  }
  return checks;
}

}  // namespace beaver::stats
