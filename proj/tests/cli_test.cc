#include "doctest.h"

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <sstream>

#include "beaver/field.h"
#include "beaver/formats.h"
#include "cli.h"

using beaver::cli::run_cli;
namespace fs = std::filesystem;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run cli(std::vector<std::string> args) {
  std::ostringstream out, err;
  int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

fs::path scratch(const std::string& name) {
  fs::path p = fs::temp_directory_path() / "beaver_cli_test" / name;
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

std::string fixture(const std::string& name) { return std::string(BEAVER_FIXTURE_DIR) + "/" + name; }

}  // namespace

TEST_CASE("usage errors exit 2") {
  CHECK(cli({}).code == 2);
  CHECK(cli({"tm", "census"}).code == 2);
  CHECK(cli({"tm", "census", "--states", "0"}).code == 2);
  CHECK(cli({"tm", "census", "--states", "5"}).code == 2);  // no default budget
  CHECK(cli({"nonsense"}).code == 2);
  CHECK(cli({"--help"}).code == 0);
}

TEST_CASE("overflow exits 3") { CHECK(cli({"tm", "census", "--states", "7", "--budget", "5"}).code == 3); }

TEST_CASE("tm census") {
  Run r = cli({"tm", "census", "--states", "1"});
  CHECK(r.code == 0);
  CHECK(r.out == "# states=1 budget=1 total=36\nt,k_t,p_kt\n1,12,0.333333\n-,24,0.666667\n");

  auto dir = scratch("census");
  const std::string out = (dir / "c2.csv").string();
  Run w = cli({"tm", "census", "--states", "2", "--out", out});
  CHECK(w.code == 0);
  CHECK(w.out.find("ratio") == std::string::npos);
  CHECK(fs::exists(out + ".manifest.json"));
  auto manifest = beaver::io::RunManifest::from_json(beaver::io::read_file(out + ".manifest.json"));
  CHECK(manifest.command == "tm census");
  CHECK(manifest.parameters.at("budget") == "6");
  Run fit = cli({"tm", "census", "--states", "2", "--out", out, "--force-fit"});
  CHECK(fit.out.find("ratio") != std::string::npos);
  Run json = cli({"tm", "census", "--states", "2", "--format", "json"});
  CHECK(json.out.find("\"num\"") != std::string::npos);
  CHECK(cli({"tm", "census", "--states", "2", "--format", "xml"}).code == 2);
}

TEST_CASE("shards and BEAVER_SHARDS leave the bytes unchanged") {
  auto dir = scratch("shards");
  const std::string a = (dir / "a.csv").string(), b = (dir / "b.csv").string();
  REQUIRE(cli({"tm", "census", "--states", "2", "--shards", "1", "--out", a}).code == 0);
  REQUIRE(cli({"tm", "census", "--states", "2", "--shards", "6", "--out", b}).code == 0);
  CHECK(beaver::io::read_file(a) == beaver::io::read_file(b));
  setenv("BEAVER_SHARDS", "3", 1);
  REQUIRE(cli({"tm", "census", "--states", "2", "--out", b}).code == 0);
  auto m = beaver::io::RunManifest::from_json(beaver::io::read_file(b + ".manifest.json"));
  CHECK(m.shards == 3);
  setenv("BEAVER_SHARDS", "zero", 1);
  CHECK(cli({"tm", "census", "--states", "2"}).code == 2);
  unsetenv("BEAVER_SHARDS");
  CHECK(beaver::io::read_file(a) == beaver::io::read_file(b));
}

TEST_CASE("fixtures are only overwritten with --regenerate") {
  auto dir = scratch("fixtures") / "fixtures";
  fs::create_directories(dir);
  const std::string path = (dir / "fig1.csv").string();
  beaver::io::write_file(path, "keep");
  CHECK(cli({"tm", "census", "--states", "2", "--out", path}).code == 2);
  CHECK(beaver::io::read_file(path) == "keep");
  CHECK(cli({"tm", "census", "--states", "2", "--out", path, "--regenerate"}).code == 0);
  CHECK(beaver::io::read_file(path) != "keep");
}

TEST_CASE("tm bb") {
  Run two = cli({"tm", "bb", "--states", "2"});
  CHECK(two.out.find("S_observed 6\n") != std::string::npos);
  CHECK(two.out.find("Sigma_observed 4\n") != std::string::npos);
  CHECK(two.out.find("S agrees with known value 6") != std::string::npos);
  Run one = cli({"tm", "bb", "--states", "1"});
  CHECK(one.out.find("S_observed 1\nSigma_observed 1\n") != std::string::npos);
}

TEST_CASE("tm run") {
  Run r = cli({"tm", "run", "--states", "2", "--index", "0"});
  CHECK(r.out.find("result Halted steps 1") != std::string::npos);
  Run bb = cli({"tm", "bb", "--states", "2"});
  std::istringstream lines(bb.out);
  std::string line, champion;
  while (std::getline(lines, line)) {
    if (line.rfind("step_champions ", 0) == 0) champion = line.substr(15, line.find(' ', 15) - 15);
  }
  REQUIRE_FALSE(champion.empty());
  Run c = cli({"tm", "run", "--states", "2", "--index", champion, "--trace"});
  CHECK(c.out.find("result Halted steps 6") != std::string::npos);
  CHECK(c.out.find("step 6 ") != std::string::npos);
  Run cut = cli({"tm", "run", "--states", "2", "--index", champion, "--budget", "3"});
  CHECK(cut.out.find("result BudgetExceeded steps 3") != std::string::npos);
  CHECK(cli({"tm", "run", "--states", "2", "--index", "10000"}).code == 2);
}

TEST_CASE("viz") {
  auto dir = scratch("viz");
  const std::string out = (dir / "f.ppm").string();
  Run r = cli({"viz", "--states", "2", "--order", "7", "--out", out, "--legend",
               (dir / "legend.ppm").string()});
  REQUIRE(r.code == 0);
  const std::string ppm = beaver::io::read_file(out);
  CHECK(ppm.substr(0, 15) == "P6\n128 128\n255\n");
  CHECK(r.out.find("background 6384") != std::string::npos);
  CHECK(beaver::io::read_file((dir / "legend.ppm").string()).substr(0, 9) == "P6\n7 1\n25");

  const std::string crop = (dir / "crop.ppm").string();
  REQUIRE(cli({"viz", "--states", "2", "--order", "7", "--out", crop, "--crop", "10,20,16,8"}).code == 0);
  auto full = beaver::viz::FieldImage::from_ppm(ppm);
  CHECK(beaver::viz::FieldImage::from_ppm(beaver::io::read_file(crop)) == full.crop(10, 20, 16, 8));
  CHECK(cli({"viz", "--states", "2", "--order", "6"}).code == 2);
  CHECK(cli({"viz", "--order", "6"}).code == 2);
}

TEST_CASE("logic formulas and systems") {
  Run f = cli({"logic", "formulas", "--length", "3"});
  CHECK(std::count(f.out.begin(), f.out.end(), '\n') == 10);
  Run s = cli({"logic", "systems", "--length", "3", "--sample", "4"});
  CHECK(std::count(s.out.begin(), s.out.end(), '\n') == 4);
  Run filtered = cli({"logic", "systems", "--length", "3", "--sample", "16", "--filter",
                      "consistent,independent"});
  CHECK(filtered.code == 0);
  CHECK(filtered.out.find("\"independence\":\"independent\"") != std::string::npos);
  CHECK(cli({"logic", "systems", "--length", "4"}).code == 2);
  CHECK(cli({"logic", "systems", "--length", "3", "--filter", "pretty"}).code == 2);
}

TEST_CASE("logic prove") {
  auto dir = scratch("prove");
  const std::string ax = (dir / "ax.txt").string();
  beaver::io::write_file(ax, "x1 = f(x2,x1)\n");
  Run p = cli({"logic", "prove", "--axioms", ax, "--goal", "x1 = f(x2,x1)"});
  CHECK(p.code == 0);
  CHECK(p.out == "PROVEN length=1 time=1\n");

  const std::string none = (dir / "none.txt").string();
  beaver::io::write_file(none, "");
  Run d = cli({"logic", "prove", "--axioms", none, "--goal", "x1 = x2"});
  CHECK(d.out.rfind("DISPROVEN k=2", 0) == 0);

  const std::string assoc = (dir / "assoc.txt").string();
  beaver::io::write_file(assoc, "f(f(x1,x2),x3) = f(x1,f(x2,x3))\n");
  Run u = cli({"logic", "prove", "--axioms", assoc, "--goal", "f(x1,x2) = f(x2,x1)",
               "--max-steps", "2", "--model-k", "1"});
  CHECK(u.code == 10);
  CHECK(u.out.rfind("UNDECIDED", 0) == 0);
  CHECK(cli({"logic", "prove", "--axioms", ax, "--goal", "x1 = f(x1"}).code == 2);

  beaver::io::write_file(ax, "x1 = f(x1,x1)\n");
  Run t = cli({"logic", "prove", "--axioms", ax, "--goal", "x1 = f(f(x1,x1),f(x1,x1))", "--trace"});
  CHECK(t.out ==
        "PROVEN length=2 time=2\n"
        "k1  --[axiom #1, l2r, 0]-->  f(k1,k1)\n"
        "f(k1,k1)  --[axiom #1, l2r, 0]-->  f(f(k1,k1),f(k1,k1))\n");
}

TEST_CASE("logic census") {
  auto dir = scratch("logic");
  Run r = cli({"logic", "census", "--length", "3", "--sample", "64", "--out", dir.string()});
  REQUIRE(r.code == 0);
  auto space = beaver::io::parse_truth_space_csv(beaver::io::read_file((dir / "truthspace_L3.csv").string()));
  CHECK(space.corpus.size() == 10);
  for (const auto& s : space.systems) CHECK_FALSE(s.axioms.empty());
  auto d = beaver::io::parse_distribution_csv(beaver::io::read_file((dir / "proofs_L3.csv").string()));
  CHECK(d.total == space.cells.size());

  const std::string ppm = (dir / "ts.ppm").string();
  Run v = cli({"viz", "--truthspace", (dir / "truthspace_L3.csv").string(), "--layout", "matrix",
               "--out", ppm});
  CHECK(v.code == 0);
  auto img = beaver::viz::FieldImage::from_ppm(beaver::io::read_file(ppm));
  CHECK(img.width == space.systems.size());
  CHECK(img.height == 10);
}

TEST_CASE("optime") {
  Run a = cli({"optime", "--dist", fixture("fig9.csv"), "--gamma", "0.99"});
  CHECK(a.code == 0);
  CHECK(a.out.find("optime 9\n") != std::string::npos);
  Run full = cli({"optime", "--dist", fixture("fig1.csv"), "--gamma", "1.0"});
  CHECK(full.code == 11);
  Run decided = cli({"optime", "--dist", fixture("fig1.csv"), "--gamma", "1.0", "--decided"});
  CHECK(decided.out.find("optime 6\n") != std::string::npos);
  CHECK(cli({"optime", "--dist", fixture("fig4.csv"), "--gamma", "0.28"}).out.find("optime 6\n") !=
        std::string::npos);
  CHECK(cli({"optime", "--dist", fixture("fig4.csv"), "--gamma", "0.28", "--decided"})
            .out.find("optime 1\n") != std::string::npos);
  CHECK(cli({"optime", "--dist", fixture("fig9.csv"), "--gamma", "2"}).code == 2);
  CHECK(cli({"optime", "--dist", fixture("fig9.csv"), "--gamma", "x"}).code == 2);
}
