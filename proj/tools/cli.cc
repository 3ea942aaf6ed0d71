#include "cli.h"

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <functional>
#include <iomanip>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "beaver/census.h"
#include "beaver/field.h"
#include "beaver/formats.h"
#include "beaver/machine.h"
#include "beaver/prover.h"
#include "beaver/stats.h"
#include "beaver/term.h"

namespace beaver::cli {

namespace {

namespace fs = std::filesystem;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct UndecidedExit {};
struct UnachievableExit {};

unsigned resolve_shards(unsigned requested) {
  if (const char* env = std::getenv("BEAVER_SHARDS"); env && *env) {
    char* end = nullptr;
    unsigned long v = std::strtoul(env, &end, 10);
    if (*end != '\0' || v == 0 || v > 1024) throw UsageError("BEAVER_SHARDS must be 1..1024");
    return static_cast<unsigned>(v);
  }
  return requested == 0 ? 1 : requested;
}

bool is_fixture_path(const std::string& path) {
  fs::path p(path);
  const std::string name = p.filename().string();
  return p.parent_path().filename() == "fixtures" || name == "fig1.csv" ||
         name == "fig4.csv" || name == "fig9.csv";
}

void guard_fixture(const std::string& path, bool regenerate) {
  if (is_fixture_path(path) && fs::exists(path) && !regenerate) {
    throw UsageError(path + " is a committed fixture; pass --regenerate to overwrite it");
  }
}

class Timer {
 public:
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

// Writes the outputs, then `<first output>.manifest.json`.
void emit(io::RunManifest manifest, const std::vector<std::pair<std::string, std::string>>& files,
          const Timer& timer, std::ostream& out) {
  for (const auto& [path, bytes] : files) {
    io::write_file(path, bytes);
    manifest.outputs.push_back(path);
    out << "wrote " << path << "\n";
  }
  manifest.wall_time_s = timer.seconds();
  io::write_file(files.front().first + ".manifest.json", manifest.to_json());
}

std::string decimal(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

// Budget knobs shared by the logic commands.
struct BudgetFlags {
  eq::DecisionBudget budget;

  void add(CLI::App* app) {
    app->add_option("--max-steps", budget.max_proof_steps, "proof length bound")
        ->check(CLI::Range(1, 64));
    app->add_option("--max-leaves", budget.max_term_leaves, "term size bound (leaves)")
        ->check(CLI::Range(1, 64));
    app->add_option("--max-frontier", budget.max_frontier, "BFS node cap");
    app->add_option("--model-k", budget.model_max_k, "largest countermodel size")
        ->check(CLI::Range(1, 4));
    app->add_option("--model-cap", budget.model_node_cap, "k=3 backtracking node cap");
  }

  void record(io::RunManifest& m) const {
    m.parameters["max_steps"] = std::to_string(budget.max_proof_steps);
    m.parameters["max_leaves"] = std::to_string(budget.max_term_leaves);
    m.parameters["max_frontier"] = std::to_string(budget.max_frontier);
    m.parameters["model_k"] = std::to_string(budget.model_max_k);
    m.parameters["model_cap"] = std::to_string(budget.model_node_cap);
  }
};

std::uint64_t budget_for(int n, std::optional<std::uint64_t> given) {
  if (given) {
    if (*given < 1) throw UsageError("--budget must be >= 1");
    return *given;
  }
  if (auto b = tm::default_budget(n)) return *b;
  throw UsageError("no default budget for " + std::to_string(n) + " states; pass --budget");
}

// ---- tm ---------------------------------------------------------------

struct TmCensusArgs {
  int states = 0;
  std::optional<std::uint64_t> budget;
  unsigned shards = 1;
  std::string out;
  std::string format = "csv";
  bool force_fit = false;
  bool regenerate = false;
};

void print_census_table(const tm::HaltingCensus& c, bool fit, std::ostream& out) {
  out << "t\tk_t\tp(k_t)";
  if (fit) out << "\t100*2^(14-t)\tratio";
  out << "\n";
  out << "-\t" << c.nonhalting << "\t" << tm::nonhalting_probability(c).to_decimal(6) << "\n";
  if (fit) {
    for (const tm::FitRow& r : tm::fit_table(c)) {
      out << r.t << "\t" << r.count << "\t" << tm::halting_probability(c, r.t).to_decimal(6)
          << "\t" << decimal(r.fit) << "\t" << decimal(r.ratio) << "\n";
    }
  } else {
    for (const auto& [t, k] : c.counts) {
      out << t << "\t" << k << "\t" << tm::halting_probability(c, t).to_decimal(6) << "\n";
    }
  }
  out << "total " << c.total << ", halting " << c.halting() << "\n";
}

void cmd_tm_census(const TmCensusArgs& a, std::ostream& out) {
  Timer timer;
  tm::machine_count(a.states);  // overflow surfaces before any work
  const std::uint64_t budget = budget_for(a.states, a.budget);
  const unsigned shards = resolve_shards(a.shards);
  if (a.format != "csv" && a.format != "json") throw UsageError("--format must be csv or json");
  if (!a.out.empty()) guard_fixture(a.out, a.regenerate);

  tm::HaltingCensus c = tm::run_census(a.states, budget, shards);
  const std::string bytes = a.format == "csv" ? io::census_csv(c) : io::census_json(c);
  if (a.out.empty()) {
    out << bytes;
    return;
  }
  print_census_table(c, a.states == 3 || a.force_fit, out);
  io::RunManifest m;
  m.command = "tm census";
  m.parameters = {{"states", std::to_string(a.states)},
                  {"budget", std::to_string(budget)},
                  {"format", a.format}};
  m.shards = shards;
  emit(m, {{a.out, bytes}}, timer, out);
}

struct TmBbArgs {
  int states = 0;
  std::optional<std::uint64_t> budget;
  unsigned shards = 1;
};

void print_indexes(const char* label, const std::vector<std::uint64_t>& v, std::ostream& out) {
  out << label;
  for (std::uint64_t i : v) out << " " << i;
  out << "\n";
}

void cmd_tm_bb(const TmBbArgs& a, std::ostream& out) {
  tm::machine_count(a.states);
  const std::uint64_t budget = budget_for(a.states, a.budget);
  tm::BusyBeaverRecord r = tm::busy_beaver(a.states, budget, resolve_shards(a.shards));
  out << "states " << a.states << " budget " << budget << "\n";
  out << "S_observed " << r.max_steps << "\n";
  out << "Sigma_observed " << r.max_ones << "\n";
  print_indexes("step_champions", r.step_champions, out);
  print_indexes("ones_champions", r.ones_champions, out);
  auto compare = [&](const char* name, std::uint64_t observed, std::uint64_t known) {
    if (known == 0) {
      out << name << " no known value\n";
    } else {
      out << name << (observed == known ? " agrees" : " disagrees") << " with known value "
          << known << "\n";
    }
  };
  compare("S", r.max_steps, tm::known_step_bound(a.states));
  compare("Sigma", r.max_ones, tm::known_ones_bound(a.states));
}

struct TmOutputsArgs {
  int states = 0;
  std::optional<std::uint64_t> budget;
  unsigned shards = 1;
  std::string out_dir;
};

void cmd_tm_outputs(const TmOutputsArgs& a, std::ostream& out) {
  Timer timer;
  tm::machine_count(a.states);
  const std::uint64_t budget = budget_for(a.states, a.budget);
  tm::ScanOptions opt;
  opt.budget = budget;
  opt.shards = resolve_shards(a.shards);
  opt.collect_outputs = true;
  tm::SpaceScan scan = tm::scan_space(a.states, opt);

  std::vector<std::pair<std::string, std::string>> files;
  for (const tm::OutputCensus* oc : {&*scan.extent_outputs, &*scan.trimmed_outputs}) {
    const char* name = oc->rule == tm::OutputRule::kVisitedExtent ? "extent" : "trimmed";
    std::uint64_t single = 0;
    for (const auto& [s, k] : oc->outputs) {
      if (s.size() == 1) single += k;
    }
    out << name << ": distinct " << oc->distinct() << ", longest " << oc->longest()
        << ", single-symbol " << single << " (" << decimal(double(single) / scan.census.total)
        << " of all, " << decimal(double(single) / oc->machines()) << " of halters)\n";
    if (!a.out_dir.empty()) {
      std::string csv = "output,count\n";
      for (const auto& [s, k] : oc->outputs) csv += "\"" + s + "\"," + std::to_string(k) + "\n";
      files.emplace_back((fs::path(a.out_dir) / ("outputs_" + std::to_string(a.states) + "x2_" +
                                                 name + ".csv")).string(),
                         csv);
    }
  }
  if (files.empty()) return;
  io::RunManifest m;
  m.command = "tm outputs";
  m.parameters = {{"states", std::to_string(a.states)}, {"budget", std::to_string(budget)}};
  m.shards = opt.shards;
  emit(m, files, timer, out);
}

struct TmRunArgs {
  int states = 0;
  std::uint64_t index = 0;
  std::optional<std::uint64_t> budget;
  bool trace = false;
};

std::string show_config(const tm::Configuration& c) {
  long lo = c.head, hi = c.head;
  if (!c.tape.empty()) {
    lo = std::min(lo, c.tape.begin()->first);
    hi = std::max(hi, c.tape.rbegin()->first);
  }
  std::string tape;
  for (long x = lo; x <= hi; ++x) {
    auto it = c.tape.find(x);
    char sym = it == c.tape.end() ? '0' : static_cast<char>('0' + it->second);
    if (x == c.head) {
      tape += '[';
      tape += sym;
      tape += ']';
    } else {
      tape += sym;
    }
  }
  return "step " + std::to_string(c.steps) + " state " + std::to_string(c.state) + " head " +
         std::to_string(c.head) + " tape " + tape;
}

void cmd_tm_run(const TmRunArgs& a, std::ostream& out) {
  const std::uint64_t count = tm::machine_count(a.states);
  if (a.index >= count) {
    throw UsageError("index " + std::to_string(a.index) + " out of range 0.." +
                     std::to_string(count - 1));
  }
  const std::uint64_t budget = a.budget ? budget_for(a.states, a.budget)
                                        : tm::default_budget(a.states).value_or(1000);
  tm::TuringMachine m = tm::decode_machine({a.index}, a.states);
  out << m.to_text();
  if (a.trace) {
    tm::Configuration c;
    out << show_config(c) << "\n";
    while (c.steps < budget) {
      tm::StepOutcome s = tm::step(m, std::move(c));
      c = std::move(s.config);
      out << show_config(c) << (s.halted ? " halted" : "") << "\n";
      if (s.halted) break;
    }
  }
  tm::RunResult r = tm::run(m, budget);
  out << "result " << (r.halted() ? "Halted" : "BudgetExceeded") << " steps " << r.steps
      << " ones " << r.ones << " output " << (r.halted() ? r.output : "-") << "\n";
}

// ---- viz --------------------------------------------------------------

struct VizArgs {
  std::optional<int> states;
  std::string truthspace;
  std::optional<int> order;
  std::optional<std::uint64_t> budget;
  unsigned shards = 1;
  std::string out;
  std::string crop;
  std::string layout = "curve";
  std::string legend;
};

std::array<std::uint32_t, 4> parse_crop(const std::string& spec) {
  std::array<std::uint32_t, 4> v{};
  std::istringstream in(spec);
  char sep = 0;
  if (!(in >> v[0] >> sep >> v[1] >> sep >> v[2] >> sep >> v[3]) || !in.eof()) {
    throw UsageError("--crop takes x,y,w,h");
  }
  return v;
}

void cmd_viz(const VizArgs& a, std::ostream& out) {
  Timer timer;
  if (a.states.has_value() == !a.truthspace.empty()) {
    throw UsageError("give exactly one of --states or --truthspace");
  }
  io::RunManifest m;
  m.command = "viz";
  std::vector<std::uint32_t> runtimes;
  std::uint32_t max_time = 0;
  std::uint32_t matrix_width = 0;
  std::string stem;
  if (a.states) {
    tm::machine_count(*a.states);
    const std::uint64_t budget = budget_for(*a.states, a.budget);
    tm::ScanOptions opt;
    opt.budget = budget;
    opt.shards = resolve_shards(a.shards);
    opt.record_runtimes = true;
    tm::SpaceScan scan = tm::scan_space(*a.states, opt);
    runtimes = std::move(scan.runtimes);
    max_time = static_cast<std::uint32_t>(scan.census.max_time());
    matrix_width = static_cast<std::uint32_t>(std::uint64_t{1} << viz::order_for(runtimes.size()));
    stem = "field_" + std::to_string(*a.states) + "x2";
    m.parameters["states"] = std::to_string(*a.states);
    m.parameters["budget"] = std::to_string(budget);
    m.shards = opt.shards;
  } else {
    const std::string bytes = io::read_file(a.truthspace);
    m.input_hashes[a.truthspace] = io::fnv1a_hex(bytes);
    eq::TruthSpace space = io::parse_truth_space_csv(bytes);
    for (const eq::CellSummary& c : space.cells) {
      runtimes.push_back(static_cast<std::uint32_t>(c.time));
    }
    stats::DecisionDistribution d = eq::proof_census(space);
    max_time = d.decided() ? static_cast<std::uint32_t>(stats::fbb(d)) : 0;
    matrix_width = static_cast<std::uint32_t>(space.systems.size());
    stem = "truthspace";
    m.parameters["truthspace"] = a.truthspace;
  }
  if (max_time == 0) max_time = 1;

  viz::FieldImage img;
  std::string name;
  if (a.layout == "curve") {
    const int order = a.order.value_or(viz::order_for(runtimes.size()));
    img = viz::render_field(runtimes, max_time, order);
    name = stem + "_order" + std::to_string(order) + ".ppm";
    m.parameters["order"] = std::to_string(order);
  } else if (a.layout == "matrix") {
    img = viz::render_matrix(runtimes, std::max<std::uint32_t>(matrix_width, 1), max_time);
    name = stem + "_matrix.ppm";
  } else {
    throw UsageError("--layout must be curve or matrix");
  }
  m.parameters["layout"] = a.layout;
  if (!a.crop.empty()) {
    auto [x, y, w, h] = parse_crop(a.crop);
    img = img.crop(x, y, w, h);
    m.parameters["crop"] = a.crop;
  }
  out << "image " << img.width << "x" << img.height << ", S " << max_time << ", red "
      << img.count(viz::kRed) << ", white " << img.count(viz::kWhite) << ", background "
      << img.count(viz::kBackground) << "\n";

  std::vector<std::pair<std::string, std::string>> files{{a.out.empty() ? name : a.out,
                                                          img.to_ppm()}};
  if (!a.legend.empty()) {
    files.emplace_back(a.legend, viz::render_spectrum_legend(std::max<std::uint32_t>(max_time, 2))
                                     .to_ppm());
  }
  m.parameters["curve"] = "hilbert";
  emit(m, files, timer, out);
}

// ---- logic ------------------------------------------------------------

struct LogicFormulasArgs {
  int length = 0;
  std::string out;
};

void cmd_logic_formulas(const LogicFormulasArgs& a, std::ostream& out) {
  Timer timer;
  std::vector<eq::Equation> corpus = eq::enumerate_formulas(a.length);
  const std::string bytes = io::corpus_text(corpus);
  if (a.out.empty()) {
    out << bytes;
    return;
  }
  out << corpus.size() << " formulas of length " << a.length << "\n";
  io::RunManifest m;
  m.command = "logic formulas";
  m.parameters = {{"length", std::to_string(a.length)}};
  emit(m, {{a.out, bytes}}, timer, out);
}

struct Filter {
  bool consistent = false;
  bool independent = false;
};

Filter parse_filter(const std::string& spec) {
  Filter f;
  std::istringstream in(spec);
  std::string word;
  while (std::getline(in, word, ',')) {
    if (word == "consistent") {
      f.consistent = true;
    } else if (word == "independent") {
      f.independent = true;
    } else if (!word.empty() && word != "none") {
      throw UsageError("unknown filter '" + word + "'");
    }
  }
  return f;
}

std::optional<std::uint64_t> parse_sample(const std::string& s) {
  if (s == "all") return std::nullopt;
  if (s.empty() || s.find_first_not_of("0123456789") != std::string::npos) {
    throw UsageError("--sample takes a count or 'all'");
  }
  return std::stoull(s);
}

const char* consistency_name(eq::Consistency c) {
  switch (c) {
    case eq::Consistency::kConsistent: return "consistent";
    case eq::Consistency::kInconsistent: return "inconsistent";
    case eq::Consistency::kUnknown: break;
  }
  return "unknown";
}

// Streams the systems for (corpus, sample) and keeps those passing `filter`.
std::vector<io::SystemRecord> select_systems(const std::vector<eq::Equation>& corpus,
                                             std::optional<std::uint64_t> sample,
                                             const Filter& filter,
                                             const eq::DecisionBudget& budget) {
  if (!sample && corpus.size() >= 64) {
    throw UsageError("corpus of " + std::to_string(corpus.size()) +
                     " formulas is too large for --sample all");
  }
  eq::AxiomSystemStream stream(corpus, sample);
  std::vector<io::SystemRecord> kept;
  while (auto sys = stream.next()) {
    io::SystemRecord r{std::move(*sys), std::nullopt, std::nullopt};
    if (filter.consistent || filter.independent) {
      eq::ConsistencyResult c = eq::is_consistent(r.system, budget);
      r.consistency = consistency_name(c.status);
      if (filter.consistent && c.status != eq::Consistency::kConsistent) continue;
    }
    if (filter.independent) {
      // The empty system has nothing to derive and counts as independent.
      std::vector<eq::IndependenceEntry> entries;
      if (!r.system.axioms.empty()) entries = eq::is_independent(r.system, budget);
      bool unknown = false, dependent = false;
      for (const auto& e : entries) {
        unknown = unknown || e.status == eq::Dependence::kUnknown;
        dependent = dependent || e.status == eq::Dependence::kDependent;
      }
      r.independence = dependent ? "dependent" : unknown ? "unknown" : "independent";
      if (!eq::fully_independent(entries)) continue;
    }
    kept.push_back(std::move(r));
  }
  return kept;
}

struct LogicSystemsArgs {
  int length = 0;
  std::string sample = "all";
  std::string filter;
  std::string out;
  BudgetFlags budget;
};

void cmd_logic_systems(const LogicSystemsArgs& a, std::ostream& out) {
  Timer timer;
  std::vector<eq::Equation> corpus = eq::enumerate_formulas(a.length);
  auto kept = select_systems(corpus, parse_sample(a.sample), parse_filter(a.filter),
                             a.budget.budget);
  const std::string bytes = io::systems_jsonl(kept);
  if (a.out.empty()) {
    out << bytes;
    return;
  }
  out << kept.size() << " systems kept\n";
  io::RunManifest m;
  m.command = "logic systems";
  m.parameters = {{"length", std::to_string(a.length)}, {"sample", a.sample}, {"filter", a.filter}};
  a.budget.record(m);
  emit(m, {{a.out, bytes}}, timer, out);
}

struct LogicProveArgs {
  std::string axioms;
  std::string goal;
  bool trace = false;
  BudgetFlags budget;
};

void cmd_logic_prove(const LogicProveArgs& a, std::ostream& out) {
  std::vector<eq::Equation> axioms = io::parse_corpus(io::read_file(a.axioms));
  eq::Equation goal = eq::parse_equation(a.goal);
  eq::ProofResult r = eq::decide(axioms, goal, a.budget.budget, a.trace);
  switch (r.verdict) {
    case eq::Verdict::kProven:
      out << "PROVEN length=" << r.length << " time=" << r.time << "\n";
      for (const eq::ProofStep& s : r.trace) out << eq::format_step(s) << "\n";
      return;
    case eq::Verdict::kDisproven:
      out << "DISPROVEN k=" << r.model->k << " time=" << r.time << "\n";
      out << r.model->to_json() << "\n";
      return;
    case eq::Verdict::kUndecided:
      out << "UNDECIDED proof_budget_exhausted=" << r.proof_budget_exhausted
          << " model_budget_exhausted=" << r.model_budget_exhausted << "\n";
      throw UndecidedExit{};
  }
}

struct LogicCensusArgs {
  int length = 0;
  std::string sample = "all";
  std::string filter = "consistent,independent";
  unsigned shards = 1;
  std::string out_dir;
  BudgetFlags budget;
};

void cmd_logic_census(const LogicCensusArgs& a, std::ostream& out) {
  Timer timer;
  std::vector<eq::Equation> corpus = eq::enumerate_formulas(a.length);
  auto kept = select_systems(corpus, parse_sample(a.sample), parse_filter(a.filter),
                             a.budget.budget);
  // The empty system is vacuously consistent but stays out of proof censuses.
  std::erase_if(kept, [](const io::SystemRecord& r) { return r.system.axioms.empty(); });
  std::vector<eq::AxiomSystem> systems;
  for (auto& r : kept) systems.push_back(r.system);
  const unsigned workers = resolve_shards(a.shards);
  eq::TruthSpace space = eq::truth_space(std::move(systems), corpus, a.budget.budget, workers);
  stats::DecisionDistribution d = eq::proof_census(space);
  d.label = "proof lengths L=" + std::to_string(a.length);

  out << "systems " << space.systems.size() << ", formulas " << space.corpus.size()
      << ", cells " << space.cells.size() << ", undecided " << d.undecided << "\n";
  out << "t\tcount\tcumulative\n";
  for (const auto& [t, k] : d.counts) {
    out << t << "\t" << k << "\t" << stats::cumulative_fraction(d, t).to_decimal(6) << "\n";
  }
  if (a.out_dir.empty()) return;
  const std::string tag = "L" + std::to_string(a.length);
  io::RunManifest m;
  m.command = "logic census";
  m.parameters = {{"length", std::to_string(a.length)}, {"sample", a.sample}, {"filter", a.filter}};
  a.budget.record(m);
  m.shards = workers;
  const fs::path dir(a.out_dir);
  emit(m,
       {{(dir / ("truthspace_" + tag + ".csv")).string(), io::truth_space_csv(space)},
        {(dir / ("proofs_" + tag + ".csv")).string(), io::distribution_csv(d)},
        {(dir / ("systems_" + tag + ".jsonl")).string(), io::systems_jsonl(kept)}},
       timer, out);
}

// ---- optime -----------------------------------------------------------

struct OptimeArgs {
  std::string dist;
  std::string gamma;
  bool decided = false;
};

void cmd_optime(const OptimeArgs& a, std::ostream& out) {
  stats::DecisionDistribution d = io::parse_distribution_csv(io::read_file(a.dist));
  Rational gamma;
  try {
    gamma = Rational::parse(a.gamma);
  } catch (const std::exception& e) {
    throw UsageError(std::string("--gamma: ") + e.what());
  }
  stats::OptimeResult r = stats::optime(
      d, gamma, a.decided ? stats::Denominator::kDecided : stats::Denominator::kTotal);
  out << "fbb " << stats::fbb(d) << "\n";
  if (!r.step) {
    out << "unachievable: at most " << r.max_achievable.to_decimal(6) << " is ever decided\n";
    throw UnachievableExit{};
  }
  out << "optime " << *r.step << "\n";
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Runtime and proof-length censuses for small machines and equational systems",
               "beaver"};
  app.require_subcommand(1);
  std::function<void()> action;

  auto* tm_cmd = app.add_subcommand("tm", "Turing machine spaces")->require_subcommand(1);

  TmCensusArgs census;
  auto* c = tm_cmd->add_subcommand("census", "halting-time census of a whole space");
  c->add_option("--states", census.states, "states n")->required()->check(CLI::PositiveNumber);
  c->add_option("--budget", census.budget, "step budget (default: known S(n))");
  c->add_option("--shards", census.shards, "worker threads");
  c->add_option("--out", census.out, "output file (stdout when absent)");
  c->add_option("--format", census.format, "csv or json");
  c->add_flag("--force-fit", census.force_fit, "show the 100*2^(14-t) column for any n");
  c->add_flag("--regenerate", census.regenerate, "allow overwriting a committed fixture");
  c->callback([&] { action = [&] { cmd_tm_census(census, out); }; });

  TmBbArgs bb;
  auto* b = tm_cmd->add_subcommand("bb", "busy beaver values and champions");
  b->add_option("--states", bb.states, "states n")->required()->check(CLI::PositiveNumber);
  b->add_option("--budget", bb.budget, "step budget");
  b->add_option("--shards", bb.shards, "worker threads");
  b->callback([&] { action = [&] { cmd_tm_bb(bb, out); }; });

  TmOutputsArgs outputs;
  auto* o = tm_cmd->add_subcommand("outputs", "distinct outputs of the halting machines");
  o->add_option("--states", outputs.states, "states n")->required()->check(CLI::PositiveNumber);
  o->add_option("--budget", outputs.budget, "step budget");
  o->add_option("--shards", outputs.shards, "worker threads");
  o->add_option("--out", outputs.out_dir, "directory for the per-rule output dumps");
  o->callback([&] { action = [&] { cmd_tm_outputs(outputs, out); }; });

  TmRunArgs run;
  auto* r = tm_cmd->add_subcommand("run", "run one machine");
  r->add_option("--states", run.states, "states n")->required()->check(CLI::PositiveNumber);
  r->add_option("--index", run.index, "machine index")->required();
  r->add_option("--budget", run.budget, "step budget");
  r->add_flag("--trace", run.trace, "print every configuration");
  r->callback([&] { action = [&] { cmd_tm_run(run, out); }; });

  VizArgs vz;
  auto* v = app.add_subcommand("viz", "render a runtime or proof-length field as PPM");
  v->add_option("--states", vz.states, "machine space to render");
  v->add_option("--truthspace", vz.truthspace, "truth-space CSV to render");
  v->add_option("--order", vz.order, "curve order k (2^k x 2^k grid)");
  v->add_option("--budget", vz.budget, "step budget");
  v->add_option("--shards", vz.shards, "worker threads");
  v->add_option("--out", vz.out, "output PPM");
  v->add_option("--crop", vz.crop, "x,y,w,h sub-rectangle");
  v->add_option("--layout", vz.layout, "curve or matrix");
  v->add_option("--legend", vz.legend, "also write the spectrum strip here");
  v->callback([&] { action = [&] { cmd_viz(vz, out); }; });

  auto* logic = app.add_subcommand("logic", "equational systems")->require_subcommand(1);

  LogicFormulasArgs formulas;
  auto* f = logic->add_subcommand("formulas", "canonical formulas of one length");
  f->add_option("--length", formulas.length, "length L")->required()->check(CLI::Range(2, 8));
  f->add_option("--out", formulas.out, "corpus file");
  f->callback([&] { action = [&] { cmd_logic_formulas(formulas, out); }; });

  LogicSystemsArgs systems;
  auto* s = logic->add_subcommand("systems", "axiom systems over a corpus");
  s->add_option("--length", systems.length, "length L")->required()->check(CLI::Range(2, 8));
  s->add_option("--sample", systems.sample, "first m masks, or 'all'");
  s->add_option("--filter", systems.filter, "consistent,independent");
  s->add_option("--out", systems.out, "JSONL output");
  systems.budget.add(s);
  s->callback([&] { action = [&] { cmd_logic_systems(systems, out); }; });

  LogicProveArgs prove;
  auto* p = logic->add_subcommand("prove", "decide one goal");
  p->add_option("--axioms", prove.axioms, "corpus file of axioms")->required();
  p->add_option("--goal", prove.goal, "equation, e.g. 'x1 = f(x1,x1)'")->required();
  p->add_flag("--trace", prove.trace, "print the rewrite steps");
  prove.budget.add(p);
  p->callback([&] { action = [&] { cmd_logic_prove(prove, out); }; });

  LogicCensusArgs lc;
  auto* l = logic->add_subcommand("census", "truth space and proof-length distribution");
  l->add_option("--length", lc.length, "length L")->required()->check(CLI::Range(2, 8));
  l->add_option("--sample", lc.sample, "first m masks, or 'all'");
  l->add_option("--filter", lc.filter, "consistent,independent or none");
  l->add_option("--shards", lc.shards, "worker threads");
  l->add_option("--out", lc.out_dir, "output directory");
  lc.budget.add(l);
  l->callback([&] { action = [&] { cmd_logic_census(lc, out); }; });

  OptimeArgs ot;
  auto* t = app.add_subcommand("optime", "earliest time reaching a decided fraction");
  t->add_option("--dist", ot.dist, "distribution CSV")->required();
  t->add_option("--gamma", ot.gamma, "fraction in (0,1], decimal or p/q")->required();
  t->add_flag("--decided", ot.decided, "divide by decided entries instead of all");
  t->callback([&] { action = [&] { cmd_optime(ot, out); }; });

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  try {
    action();
    return kOk;
  } catch (const UndecidedExit&) {
    return kUndecided;
  } catch (const UnachievableExit&) {
    return kUnachievable;
  } catch (const tm::OverflowError& e) {
    err << "error: " << e.what() << "\n";
    return kOverflow;
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const eq::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const io::FormatError& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::out_of_range& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kFailure;
  }
}

}  // namespace beaver::cli
