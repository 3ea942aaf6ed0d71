#include "beaver/census.h"

#include <algorithm>
#include <array>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <thread>

namespace beaver::tm {

std::uint64_t HaltingCensus::halting() const {
  std::uint64_t sum = 0;
  for (const auto& [t, k] : counts) sum += k;
  return sum;
}

std::uint64_t HaltingCensus::max_time() const {
  return counts.empty() ? 0 : counts.rbegin()->first;
}

std::uint64_t HaltingCensus::count_at(std::uint64_t t) const {
  auto it = counts.find(t);
  return it == counts.end() ? 0 : it->second;
}

std::size_t OutputCensus::longest() const {
  std::size_t best = 0;
  for (const auto& [s, k] : outputs) best = std::max(best, s.size());
  return best;
}

std::uint64_t OutputCensus::machines() const {
  std::uint64_t sum = 0;
  for (const auto& [s, k] : outputs) sum += k;
  return sum;
}

namespace {

constexpr int kMaxIndexedStates = 6;  // (4n+2)^(2n) fits in 64 bits up to here

struct ShardResult {
  std::vector<std::uint64_t> counts;  // by t
  std::uint64_t nonhalting = 0;
  std::uint64_t scanned = 0;
  BusyBeaverRecord beaver;
  std::map<std::string, std::uint64_t> extent_outputs;
  std::map<std::string, std::uint64_t> trimmed_outputs;
  bool stopped = false;
};

void scan_range(int n, std::uint64_t lo, std::uint64_t hi, const ScanOptions& opt,
                ShardResult& out, std::uint32_t* runtimes) {
  const int base = 4 * n + 2;
  const std::size_t entries = static_cast<std::size_t>(2 * n);
  std::vector<Action> actions(static_cast<std::size_t>(base));
  for (int d = 0; d < base; ++d) actions[static_cast<std::size_t>(d)] = digit_action(d, n);

  // Odometer over digits, most significant first, starting at `lo`.
  std::array<int, 2 * kMaxIndexedStates> digits{};
  std::array<Action, 2 * kMaxIndexedStates> table{};
  std::uint64_t v = lo;
  for (std::size_t i = entries; i-- > 0;) {
    digits[i] = static_cast<int>(v % static_cast<std::uint64_t>(base));
    v /= static_cast<std::uint64_t>(base);
  }
  for (std::size_t i = 0; i < entries; ++i) table[i] = actions[static_cast<std::size_t>(digits[i])];

  Simulator sim;
  std::span<const Action> view(table.data(), entries);
  out.beaver.n = n;
  for (std::uint64_t index = lo; index < hi; ++index) {
    if ((index & 0xfff) == 0 && opt.stop.stop_requested()) {
      out.stopped = true;
      return;
    }
    RunResult r = sim.run(view, opt.budget, OutputRule::kVisitedExtent, opt.collect_outputs);
    ++out.scanned;
    if (r.halted()) {
      if (out.counts.size() <= r.steps) out.counts.resize(r.steps + 1, 0);
      ++out.counts[r.steps];
      if (runtimes) runtimes[index - lo] = static_cast<std::uint32_t>(r.steps);

      BusyBeaverRecord& bb = out.beaver;
      if (r.steps > bb.max_steps) {
        bb.max_steps = r.steps;
        bb.step_champions.clear();
      }
      if (r.steps == bb.max_steps) bb.step_champions.push_back(index);
      if (r.ones > bb.max_ones) {
        bb.max_ones = r.ones;
        bb.ones_champions.clear();
      }
      if (r.ones == bb.max_ones) bb.ones_champions.push_back(index);

      if (opt.collect_outputs) {
        ++out.trimmed_outputs[apply_output_rule(r.output, OutputRule::kTrimmed)];
        ++out.extent_outputs[std::move(r.output)];
      }
    } else {
      ++out.nonhalting;
      if (runtimes) runtimes[index - lo] = 0;
    }

    // Advance the odometer.
    for (std::size_t i = entries; i-- > 0;) {
      if (++digits[i] < base) {
        table[i] = actions[static_cast<std::size_t>(digits[i])];
        break;
      }
      digits[i] = 0;
      table[i] = actions[0];
    }
  }
}

void merge_champions(std::uint64_t& best, std::vector<std::uint64_t>& list,
                     std::uint64_t value, const std::vector<std::uint64_t>& more) {
  if (more.empty()) return;
  if (value > best) {
    best = value;
    list = more;
  } else if (value == best) {
    list.insert(list.end(), more.begin(), more.end());
  }
}

}  // namespace

SpaceScan scan_space(int n, const ScanOptions& options) {
  if (n > kMaxIndexedStates) {
    throw OverflowError("machine count (4n+2)^(2n) overflows 64 bits for n=" +
                        std::to_string(n));
  }
  const std::uint64_t total = machine_count(n);
  if (options.budget < 1) throw std::invalid_argument("budget must be >= 1");
  if (options.shards < 1) throw std::invalid_argument("shards must be >= 1");

  const std::uint64_t shards = std::min<std::uint64_t>(options.shards, total);
  SpaceScan scan;
  if (options.record_runtimes) scan.runtimes.assign(total, 0);

  std::vector<ShardResult> parts(shards);
  std::vector<std::uint64_t> bounds(shards + 1);
  for (std::uint64_t s = 0; s <= shards; ++s) {
    bounds[s] = static_cast<std::uint64_t>(static_cast<unsigned __int128>(total) * s / shards);
  }
  auto work = [&](std::uint64_t s) {
    std::uint32_t* rt = options.record_runtimes ? scan.runtimes.data() + bounds[s] : nullptr;
    scan_range(n, bounds[s], bounds[s + 1], options, parts[s], rt);
  };
  if (shards == 1) {
    work(0);
  } else {
    std::vector<std::jthread> workers;
    workers.reserve(shards);
    for (std::uint64_t s = 0; s < shards; ++s) workers.emplace_back(work, s);
  }

  HaltingCensus& c = scan.census;
  c.n = n;
  c.budget = options.budget;
  c.total = total;
  BusyBeaverRecord& bb = scan.beaver;
  bb.n = n;
  std::uint64_t scanned = 0;
  OutputCensus extent{n, options.budget, OutputRule::kVisitedExtent, {}};
  OutputCensus trimmed{n, options.budget, OutputRule::kTrimmed, {}};
  for (ShardResult& part : parts) {
    for (std::size_t t = 1; t < part.counts.size(); ++t) {
      if (part.counts[t]) c.counts[t] += part.counts[t];
    }
    c.nonhalting += part.nonhalting;
    scanned += part.scanned;
    c.partial = c.partial || part.stopped;
    merge_champions(bb.max_steps, bb.step_champions, part.beaver.max_steps,
                    part.beaver.step_champions);
    merge_champions(bb.max_ones, bb.ones_champions, part.beaver.max_ones,
                    part.beaver.ones_champions);
    for (auto& [s, k] : part.extent_outputs) extent.outputs[s] += k;
    for (auto& [s, k] : part.trimmed_outputs) trimmed.outputs[s] += k;
  }
  if (!c.partial && scanned != total) throw std::logic_error("scan did not cover the space");
  if (options.collect_outputs) {
    scan.extent_outputs = std::move(extent);
    scan.trimmed_outputs = std::move(trimmed);
  }
  return scan;
}

HaltingCensus run_census(int n, std::uint64_t budget, unsigned shards, std::stop_token stop) {
  ScanOptions opt;
  opt.budget = budget;
  opt.shards = shards;
  opt.stop = std::move(stop);
  return scan_space(n, opt).census;
}

BusyBeaverRecord busy_beaver(int n, std::uint64_t budget, unsigned shards) {
  ScanOptions opt;
  opt.budget = budget;
  opt.shards = shards;
  return scan_space(n, opt).beaver;
}

OutputCensus output_census(int n, std::uint64_t budget, OutputRule rule, unsigned shards) {
  ScanOptions opt;
  opt.budget = budget;
  opt.shards = shards;
  opt.collect_outputs = true;
  SpaceScan scan = scan_space(n, opt);
  return rule == OutputRule::kVisitedExtent ? *scan.extent_outputs : *scan.trimmed_outputs;
}

std::optional<std::uint64_t> default_budget(int n) {
  std::uint64_t s = known_step_bound(n);
  if (s == 0) return std::nullopt;
  return s;
}

Rational halting_probability(const HaltingCensus& c, std::uint64_t t) {
  if (t < 1 || t > c.budget) throw std::out_of_range("t outside 1..budget");
  return Rational(c.count_at(t), c.total);
}

Rational nonhalting_probability(const HaltingCensus& c) {
  return Rational(c.nonhalting, c.total);
}

std::map<std::uint64_t, Rational> cumulative_halting(const HaltingCensus& c) {
  const std::uint64_t halters = c.halting();
  if (halters == 0) throw std::domain_error("no machine halted");
  std::map<std::uint64_t, Rational> out;
  std::uint64_t running = 0;
  for (std::uint64_t t = 1; t <= c.max_time(); ++t) {
    running += c.count_at(t);
    out.emplace(t, Rational(running, halters));
  }
  return out;
}

double fit_reference(int t) { return 100.0 * std::ldexp(1.0, 14 - t); }

std::vector<FitRow> fit_table(const HaltingCensus& c) {
  std::vector<FitRow> rows;
  for (const auto& [t, k] : c.counts) {
    if (k == 0) continue;
    double fit = fit_reference(static_cast<int>(t));
    rows.push_back({t, k, fit, static_cast<double>(k) / fit});
  }
  return rows;
}

}  // namespace beaver::tm
