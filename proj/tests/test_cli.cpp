#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "json.hpp"
#include "lhmine/cli.hpp"
#include "lhmine/manifest.hpp"
#include "support.hpp"

namespace fs = std::filesystem;
using namespace lhmine;

namespace {

fs::path scratch(const std::string& name) {
  auto dir = fs::temp_directory_path() / ("lhmine_cli_" + name);
  fs::remove_all(dir);
  return dir;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::vector<std::string> lines(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) out.push_back(line);
  return out;
}

const std::string kMicro = test::data_path("micro_sessions.csv");

}  // namespace

TEST_CASE("stats command") {
  auto dir = scratch("stats");
  auto r = run({"stats", "--input", kMicro, "--out-dir", dir.string()});
  REQUIRE(r.code == 0);
  auto csv = slurp(dir / "stats.csv");
  CHECK(csv.find("Overall,17,0.647059,0.000000,0.352941,0.235294") != std::string::npos);
  CHECK(r.out.find("0.353") != std::string::npos);

  auto low_dir = scratch("stats_low");
  r = run({"stats", "-i", kMicro, "-o", low_dir.string(), "--cohort", "low"});
  REQUIRE(r.code == 0);
  auto low = lines(slurp(low_dir / "stats.csv"));
  REQUIRE(low.size() == 2);
  CHECK(low[1] == "Low LH,5,0.800000,0.000000,0.200000,0.200000");
}

TEST_CASE("missing input names the path") {
  auto r = run({"stats", "--input", "/nonexistent/log.csv", "-o", scratch("missing").string()});
  CHECK(r.code != 0);
  CHECK(r.err.find("/nonexistent/log.csv") != std::string::npos);
}

TEST_CASE("mine command") {
  auto dir = scratch("mine");
  auto r = run({"mine", "-i", kMicro, "-o", dir.string()});
  REQUIRE(r.code == 0);
  auto rules = lines(slurp(dir / "rules.csv"));
  REQUIRE(rules.size() > 2);
  CHECK(rules[0] == "antecedent,consequent,support,confidence,lift");
  // First row carries the maximum lift.
  double top = std::stod(rules[1].substr(rules[1].rfind(',') + 1));
  for (std::size_t i = 2; i < rules.size(); ++i)
    CHECK(std::stod(rules[i].substr(rules[i].rfind(',') + 1)) <= top);
  CHECK(std::find(rules.begin(), rules.end(),
                  "Skipped=YES,Status=UNSOLVED,0.352941,1.00000,1.30769") != rules.end());
  CHECK(fs::exists(dir / "itemsets.csv"));

  SUBCASE("manifest lists every artifact with its checksum") {
    auto m = nlohmann::json::parse(slurp(dir / "manifest.json"));
    CHECK(m["command"] == "mine");
    CHECK(m["config"]["min_support"] == 0.2);
    CHECK(m["config"]["top_k"] == 30);
    CHECK(m["inputs"][0]["records"] == 17);
    REQUIRE(m["artifacts"].size() == 2);
    for (const auto& a : m["artifacts"]) {
      auto content = slurp(dir / a["file"].get<std::string>());
      CHECK(a["sha256"] == cli::sha256_hex(content));
      CHECK(a["bytes"] == content.size());
    }
  }
  SUBCASE("top-k 1") {
    auto d = scratch("mine_top1");
    REQUIRE(run({"mine", "-i", kMicro, "-o", d.string(), "--top-k", "1"}).code == 0);
    CHECK(lines(slurp(d / "rules.csv")).size() == 2);
  }
  SUBCASE("usage errors") {
    CHECK(run({"mine", "-i", kMicro, "-o", dir.string(), "--min-support", "1.1"}).code == 2);
    CHECK(run({"mine", "-i", kMicro, "-o", dir.string(), "--min-confidence", "0"}).code == 2);
    CHECK(run({"mine", "-i", kMicro, "-o", dir.string(), "--top-k", "0"}).code == 2);
    CHECK(run({"mine", "-o", dir.string()}).code == 2);
    CHECK(run({}).code == 2);
  }
  SUBCASE("cohort flag") {
    auto d = scratch("mine_high");
    REQUIRE(run({"mine", "-i", kMicro, "-o", d.string(), "--cohort", "high"}).code == 0);
    CHECK(slurp(d / "rules.csv").find("Skipped=YES,Status=UNSOLVED,0.416667,1.00000,1.33333") !=
          std::string::npos);
    CHECK(run({"mine", "-i", kMicro, "-o", d.string(), "--cohort", "without"}).code == 1);
  }
}

TEST_CASE("cohorts command") {
  auto dir = scratch("cohorts");
  auto r = run({"cohorts", "-i", kMicro, "-o", dir.string()});
  REQUIRE(r.code == 0);
  CHECK(r.err.find("'Without Intervention' has no records") != std::string::npos);
  for (const char* f : {"rules_overall.csv", "rules_low.csv", "rules_high.csv", "rules_with.csv",
                        "outcomes_overall.csv", "itemsets_high.csv", "stats.csv",
                        "comparison_lh.csv"}) {
    CHECK_MESSAGE(fs::exists(dir / f), f);
  }
  CHECK_FALSE(fs::exists(dir / "comparison_intervention.csv"));
  CHECK_FALSE(fs::exists(dir / "rules_without.csv"));
  auto cmp = slurp(dir / "comparison_lh.csv");
  CHECK(cmp.find("Skipped=YES => Status=UNSOLVED,1.25000,1.33333,0.0833333,") != std::string::npos);
  // With-intervention covers every micro row, so it equals the overall run.
  CHECK(slurp(dir / "rules_with.csv") == slurp(dir / "rules_overall.csv"));
}

TEST_CASE("sweep command") {
  auto dir = scratch("sweep");
  auto r = run({"sweep", "-i", kMicro, "-o", dir.string(), "--cohort", "all", "--cell-rules"});
  REQUIRE(r.code == 0);
  auto csv = slurp(dir / "stability.csv");
  CHECK(csv.find("Overall,Skipped=YES => Status=UNSOLVED,1.30769,9,0,") != std::string::npos);
  CHECK(fs::exists(dir / "stability.txt"));
  CHECK(r.out.find("Subgroup") != std::string::npos);

  auto mine_dir = scratch("sweep_mine");
  REQUIRE(run({"mine", "-i", kMicro, "-o", mine_dir.string()}).code == 0);
  CHECK(slurp(dir / "rules_overall_s0.20_c0.60.csv") == slurp(mine_dir / "rules.csv"));

  SUBCASE("single cell and custom tracked rule") {
    auto d = scratch("sweep_single");
    r = run({"sweep", "-i", kMicro, "-o", d.string(), "--support-levels", "0.2",
             "--confidence-levels", "0.6", "--track", "Status=UNSOLVED => Skipped=YES"});
    REQUIRE(r.code == 0);
    auto rows = lines(slurp(d / "stability.csv"));
    CHECK(rows[1] == "Overall,Status=UNSOLVED => Skipped=YES,,0,1,s=0.20/c=0.60: confidence 0.462 < 0.60");
  }
  SUBCASE("bad levels and rules") {
    CHECK(run({"sweep", "-i", kMicro, "-o", dir.string(), "--support-levels", "0.3,0.2"}).code != 0);
    CHECK(run({"sweep", "-i", kMicro, "-o", dir.string(), "--support-levels", "0,0.2"}).code == 2);
    CHECK(run({"sweep", "-i", kMicro, "-o", dir.string(), "--track", "Skipped=YES"}).code == 1);
  }
}

TEST_CASE("synth command") {
  auto a = scratch("synth_a");
  auto b = scratch("synth_b");
  REQUIRE(run({"synth", "--seed", "9", "--students-per-cell", "5", "-o", a.string()}).code == 0);
  REQUIRE(run({"synth", "--seed", "9", "--students-per-cell", "5", "-o", b.string()}).code == 0);
  CHECK(slurp(a / "sessions.csv") == slurp(b / "sessions.csv"));
  CHECK(slurp(a / "sessions.manifest.json") == slurp(b / "sessions.manifest.json"));
  CHECK(lines(slurp(a / "sessions.csv")).size() == 1 + 4 * 5 * 15);
  CHECK(run({"synth", "--students-per-cell", "0", "-o", a.string()}).code == 2);
  CHECK(run({"synth", "--sessions-per-student", "0", "-o", a.string()}).code == 2);

  SUBCASE("mining a synthetic corpus is independent of thread count") {
    auto one = scratch("synth_t1");
    auto many = scratch("synth_t4");
    auto input = (a / "sessions.csv").string();
    REQUIRE(run({"cohorts", "-i", input, "-o", one.string(), "--threads", "1"}).code == 0);
    REQUIRE(run({"cohorts", "-i", input, "-o", many.string(), "--threads", "4"}).code == 0);
    for (const auto& entry : fs::directory_iterator(one)) {
      if (entry.path().extension() != ".csv") continue;
      CHECK(slurp(entry.path()) == slurp(many / entry.path().filename()));
    }
  }
}
