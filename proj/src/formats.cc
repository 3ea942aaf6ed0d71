#include "beaver/formats.h"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "json.hpp"

namespace beaver::io {

namespace {

using nlohmann::json;

struct Line {
  std::size_t number;
  std::string text;
};

// Non-empty lines with the trailing CR removed; comments kept for the caller.
std::vector<Line> lines_of(std::string_view text) {
  std::vector<Line> out;
  std::size_t number = 0, pos = 0;
  while (pos <= text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string line(text.substr(pos, end - pos));
    ++number;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (!line.empty()) out.push_back({number, std::move(line)});
    pos = end + 1;
  }
  return out;
}

std::vector<std::string> split_csv(const Line& line) {
  std::vector<std::string> cells(1);
  bool quoted = false;
  for (std::size_t i = 0; i < line.text.size(); ++i) {
    char c = line.text[i];
    if (quoted) {
      if (c == '"' && i + 1 < line.text.size() && line.text[i + 1] == '"') {
        cells.back() += '"';
        ++i;
      } else if (c == '"') {
        quoted = false;
      } else {
        cells.back() += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      cells.emplace_back();
    } else {
      cells.back() += c;
    }
  }
  if (quoted) throw FormatError("unterminated quote", line.number);
  return cells;
}

std::string quote(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::uint64_t to_u64(const std::string& s, std::size_t line) {
  if (s.empty() || s.find_first_not_of("0123456789") != std::string::npos) {
    throw FormatError("expected a non-negative integer, got '" + s + "'", line);
  }
  try {
    return std::stoull(s);
  } catch (const std::out_of_range&) {
    throw FormatError("integer out of range '" + s + "'", line);
  }
}

// Parses `key=value` pairs from a comment line body.
std::map<std::string, std::string> comment_fields(const std::string& body) {
  std::map<std::string, std::string> out;
  std::istringstream in(body);
  std::string word;
  while (in >> word) {
    auto eq = word.find('=');
    if (eq != std::string::npos) out[word.substr(0, eq)] = word.substr(eq + 1);
  }
  return out;
}

json rational_json(const Rational& r) { return {{"num", r.num()}, {"den", r.den()}}; }

}  // namespace

std::string census_csv(const tm::HaltingCensus& c) {
  if (c.partial) throw std::logic_error("refusing to serialize a partial census");
  std::string out = "# states=" + std::to_string(c.n) + " budget=" + std::to_string(c.budget) +
                    " total=" + std::to_string(c.total) + "\n";
  out += "t,k_t,p_kt\n";
  for (const auto& [t, k] : c.counts) {
    out += std::to_string(t) + "," + std::to_string(k) + "," +
           tm::halting_probability(c, t).to_decimal(6) + "\n";
  }
  out += "-," + std::to_string(c.nonhalting) + "," + tm::nonhalting_probability(c).to_decimal(6) +
         "\n";
  return out;
}

tm::HaltingCensus parse_census_csv(std::string_view text) {
  tm::HaltingCensus c;
  bool header = false, tail = false, meta = false;
  for (const Line& line : lines_of(text)) {
    if (line.text[0] == '#') {
      auto f = comment_fields(line.text.substr(1));
      if (f.count("states") && f.count("budget") && f.count("total")) {
        c.n = static_cast<int>(to_u64(f["states"], line.number));
        c.budget = to_u64(f["budget"], line.number);
        c.total = to_u64(f["total"], line.number);
        meta = true;
      }
      continue;
    }
    if (!header) {
      if (line.text != "t,k_t,p_kt") throw FormatError("expected header t,k_t,p_kt", line.number);
      header = true;
      continue;
    }
    if (tail) throw FormatError("rows after the nonhalting row", line.number);
    auto cells = split_csv(line);
    if (cells.size() != 3) throw FormatError("expected 3 columns", line.number);
    if (cells[0] == "-") {
      c.nonhalting = to_u64(cells[1], line.number);
      tail = true;
    } else {
      std::uint64_t t = to_u64(cells[0], line.number);
      if (c.counts.count(t)) throw FormatError("duplicate t", line.number);
      c.counts[t] = to_u64(cells[1], line.number);
    }
  }
  if (!meta) throw FormatError("missing '# states= budget= total=' line", 1);
  if (!tail) throw FormatError("missing nonhalting row", 1);
  if (c.halting() + c.nonhalting != c.total) throw FormatError("counts do not sum to total", 1);
  return c;
}

std::string census_json(const tm::HaltingCensus& c) {
  if (c.partial) throw std::logic_error("refusing to serialize a partial census");
  json j;
  j["format_version"] = kFormatVersion;
  j["states"] = c.n;
  j["budget"] = c.budget;
  j["total"] = c.total;
  json rows = json::array();
  for (const auto& [t, k] : c.counts) {
    rows.push_back({{"t", t}, {"k", k}, {"p", rational_json(tm::halting_probability(c, t))}});
  }
  j["counts"] = rows;
  j["nonhalting"] = {{"k", c.nonhalting}, {"p", rational_json(tm::nonhalting_probability(c))}};
  return j.dump(2) + "\n";
}

tm::HaltingCensus parse_census_json(std::string_view text) {
  json j = json::parse(text);
  tm::HaltingCensus c;
  c.n = j.at("states").get<int>();
  c.budget = j.at("budget").get<std::uint64_t>();
  c.total = j.at("total").get<std::uint64_t>();
  for (const auto& row : j.at("counts")) {
    c.counts[row.at("t").get<std::uint64_t>()] = row.at("k").get<std::uint64_t>();
  }
  c.nonhalting = j.at("nonhalting").at("k").get<std::uint64_t>();
  if (c.halting() + c.nonhalting != c.total) throw FormatError("counts do not sum to total", 1);
  return c;
}

std::string distribution_csv(const stats::DecisionDistribution& d) {
  d.validate();
  std::string out;
  if (!d.label.empty()) out += "# label=" + d.label + "\n";
  out += "t,count\n";
  for (const auto& [t, k] : d.counts) out += std::to_string(t) + "," + std::to_string(k) + "\n";
  out += "-," + std::to_string(d.undecided) + "\n";
  return out;
}

stats::DecisionDistribution parse_distribution_csv(std::string_view text) {
  stats::DecisionDistribution d;
  bool header = false, tail = false;
  for (const Line& line : lines_of(text)) {
    if (line.text[0] == '#') {
      auto pos = line.text.find("label=");
      if (pos != std::string::npos) d.label = line.text.substr(pos + 6);
      continue;
    }
    if (!header) {
      if (line.text != "t,count" && line.text != "t,k_t,p_kt") {
        throw FormatError("expected header t,count", line.number);
      }
      header = true;
      continue;
    }
    if (tail) throw FormatError("rows after the undecided row", line.number);
    auto cells = split_csv(line);
    if (cells.size() < 2) throw FormatError("expected at least 2 columns", line.number);
    if (cells[0] == "-") {
      d.undecided = to_u64(cells[1], line.number);
      tail = true;
    } else {
      std::uint64_t t = to_u64(cells[0], line.number);
      if (t < 1) throw FormatError("t must be >= 1", line.number);
      if (d.counts.count(t)) throw FormatError("duplicate t", line.number);
      d.counts[t] = to_u64(cells[1], line.number);
    }
  }
  if (!header) throw FormatError("missing header", 1);
  d.total = d.decided() + d.undecided;
  return d;
}

std::string corpus_text(const std::vector<eq::Equation>& corpus) {
  std::string out;
  for (const eq::Equation& e : corpus) out += e.to_string() + "\n";
  return out;
}

std::vector<eq::Equation> parse_corpus(std::string_view text) {
  std::vector<eq::Equation> out;
  for (const Line& line : lines_of(text)) {
    if (line.text[0] == '#') continue;
    try {
      out.push_back(eq::parse_equation(line.text));
    } catch (const eq::ParseError& e) {
      throw FormatError(e.what(), line.number);
    }
  }
  return out;
}

std::string systems_jsonl(const std::vector<SystemRecord>& systems) {
  std::string out;
  for (const SystemRecord& r : systems) {
    json j;
    j["id"] = r.system.mask;
    json axioms = json::array();
    for (const eq::Equation& e : r.system.axioms) axioms.push_back(e.to_string());
    j["axioms"] = axioms;
    if (r.consistency) j["consistency"] = *r.consistency;
    if (r.independence) j["independence"] = *r.independence;
    out += j.dump() + "\n";
  }
  return out;
}

std::vector<SystemRecord> parse_systems_jsonl(std::string_view text) {
  std::vector<SystemRecord> out;
  for (const Line& line : lines_of(text)) {
    json j;
    try {
      j = json::parse(line.text);
    } catch (const json::parse_error& e) {
      throw FormatError(e.what(), line.number);
    }
    SystemRecord r;
    r.system.mask = j.at("id").get<std::uint64_t>();
    for (const auto& a : j.at("axioms")) {
      r.system.axioms.push_back(eq::parse_equation(a.get<std::string>()));
    }
    if (j.contains("consistency")) r.consistency = j["consistency"].get<std::string>();
    if (j.contains("independence")) r.independence = j["independence"].get<std::string>();
    out.push_back(std::move(r));
  }
  return out;
}

std::string truth_space_csv(const eq::TruthSpace& space) {
  std::string out = "goal";
  for (const eq::AxiomSystem& s : space.systems) out += "," + std::to_string(s.mask);
  out += "\n";
  for (std::size_t g = 0; g < space.corpus.size(); ++g) {
    out += quote(space.corpus[g].to_string());
    for (std::size_t s = 0; s < space.systems.size(); ++s) out += "," + space.cell(g, s).code();
    out += "\n";
  }
  return out;
}

eq::TruthSpace parse_truth_space_csv(std::string_view text) {
  eq::TruthSpace space;
  std::vector<std::uint64_t> masks;
  std::vector<std::vector<std::string>> rows;
  bool header = false;
  for (const Line& line : lines_of(text)) {
    if (line.text[0] == '#') continue;
    auto cells = split_csv(line);
    if (!header) {
      if (cells.empty() || cells[0] != "goal") throw FormatError("expected header goal,...", line.number);
      for (std::size_t i = 1; i < cells.size(); ++i) masks.push_back(to_u64(cells[i], line.number));
      header = true;
      continue;
    }
    if (cells.size() != masks.size() + 1) throw FormatError("row width mismatch", line.number);
    try {
      space.corpus.push_back(eq::parse_equation(cells[0]));
      for (std::size_t i = 1; i < cells.size(); ++i) {
        space.cells.push_back(eq::CellSummary::from_code(cells[i]));
      }
    } catch (const std::invalid_argument& e) {
      throw FormatError(e.what(), line.number);
    }
  }
  if (!header) throw FormatError("missing header", 1);
  for (std::uint64_t m : masks) space.systems.push_back(eq::axiom_system(space.corpus, m));
  return space;
}

std::string RunManifest::to_json() const {
  json j;
  j["command"] = command;
  j["parameters"] = parameters;
  j["format_version"] = format_version;
  j["input_hashes"] = input_hashes;
  j["outputs"] = outputs;
  j["wall_time_s"] = wall_time_s;
  j["shards"] = shards;
  return j.dump(2) + "\n";
}

RunManifest RunManifest::from_json(std::string_view text) {
  json j = json::parse(text);
  RunManifest m;
  m.command = j.at("command").get<std::string>();
  m.parameters = j.at("parameters").get<std::map<std::string, std::string>>();
  m.format_version = j.at("format_version").get<int>();
  m.input_hashes = j.at("input_hashes").get<std::map<std::string, std::string>>();
  m.outputs = j.at("outputs").get<std::vector<std::string>>();
  m.wall_time_s = j.at("wall_time_s").get<double>();
  m.shards = j.at("shards").get<unsigned>();
  return m;
}

std::string fnv1a_hex(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, std::string_view bytes) {
  namespace fs = std::filesystem;
  fs::path p(path);
  if (p.has_parent_path()) fs::create_directories(p.parent_path());
  fs::path tmp = p;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write " + path);
    out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
    if (!out) throw std::runtime_error("short write to " + path);
  }
  fs::rename(tmp, p);
}

}  // namespace beaver::io
