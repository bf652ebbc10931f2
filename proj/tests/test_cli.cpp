#include <doctest.h>

#include <cstdlib>
#include <set>
#include <sstream>
#include <sys/wait.h>

#include <json.hpp>

#include "commands.hpp"
#include "test_util.hpp"

using namespace tic;
namespace fs = std::filesystem;

namespace {

int run(const std::string& args) {
  const std::string cmd = std::string(TIC_BINARY) + " " + args + " >/dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string quoted(const fs::path& p) { return "'" + p.string() + "'"; }

}  // namespace

TEST_CASE("synth writes four files deterministically") {
  const auto dir = test::scratch_dir("cli_synth");
  REQUIRE(run("synth --out-dir " + quoted(dir / "a")) == 0);
  REQUIRE(run("synth --out-dir " + quoted(dir / "b")) == 0);
  for (const char* f : {"features.csv", "times.csv", "reference.rttm", "spec.json"}) {
    CHECK(fs::exists(dir / "a" / f));
    CHECK(test::read_text(dir / "a" / f) == test::read_text(dir / "b" / f));
  }
  const auto spec = nlohmann::json::parse(test::read_text(dir / "a" / "spec.json"));
  CHECK(spec.at("seed") == 1);

  test::write_text(dir / "bad.json", R"({"stay_prob": 1.5})");
  CHECK(run("synth --spec " + quoted(dir / "bad.json") + " --out-dir " + quoted(dir / "c")) == 2);
  test::write_text(dir / "typo.json", R"({"stay_probability": 0.5})");
  CHECK(run("synth --spec " + quoted(dir / "typo.json") + " --out-dir " + quoted(dir / "c")) == 2);
  CHECK(run("synth --spec " + quoted(dir / "missing.json") + " --out-dir " + quoted(dir / "c")) == 2);
}

TEST_CASE("score prints DER and writes JSON") {
  const auto dir = test::scratch_dir("cli_score");
  test::write_text(dir / "ref.rttm",
                   "SPEAKER f 1 0.00 1.00 <NA> <NA> a <NA> <NA>\nSPEAKER f 1 1.00 1.00 <NA> <NA> b <NA> <NA>\n");
  std::ostringstream out, err;
  CHECK(cli::cmd_score((dir / "ref.rttm").string(), (dir / "ref.rttm").string(), (dir / "m.json").string(), out,
                       err) == 0);
  CHECK(out.str() == "DER: 0.00%\n");
  const auto m = nlohmann::json::parse(test::read_text(dir / "m.json"));
  for (const char* k : {"der", "alpha_total", "alpha_fa", "alpha_miss", "alpha_err"}) CHECK(m.contains(k));
  CHECK(m.at("alpha_total") == 2.0);

  test::write_text(dir / "hyp.rttm", "SPEAKER f 1 0.00 2.00 <NA> <NA> x <NA> <NA>\n");
  std::ostringstream half;
  CHECK(cli::cmd_score((dir / "ref.rttm").string(), (dir / "hyp.rttm").string(), std::nullopt, half, err) == 0);
  CHECK(half.str() == "DER: 50.00%\n");

  CHECK(run("score --ref " + quoted(dir / "nope.rttm") + " --hyp " + quoted(dir / "ref.rttm")) == 3);
  CHECK(run("score --ref " + quoted(dir / "ref.rttm")) == 2);
}

TEST_CASE("cluster and baseline end to end") {
  const auto dir = test::scratch_dir("cli_cluster");
  REQUIRE(run("synth --out-dir " + quoted(dir)) == 0);
  const std::string io = " --features " + quoted(dir / "features.csv") + " --times " + quoted(dir / "times.csv") +
                         " --ref " + quoted(dir / "reference.rttm");
  REQUIRE(run("cluster" + io + " --k 3 --out-rttm " + quoted(dir / "h.rttm") + " --out-metrics " +
              quoted(dir / "m.json")) == 0);
  const auto m = nlohmann::json::parse(test::read_text(dir / "m.json"));
  CHECK(m.contains("objective_trace"));
  CHECK(m.contains("iterations"));
  CHECK(m.contains("converged"));
  CHECK(m.at("der").get<double>() <= 0.05);
  CHECK(test::read_text(dir / "h.rttm").rfind("SPEAKER features 1 ", 0) == 0);

  REQUIRE(run("baseline" + io + " --k 3 --method cosine-kmeans --out-rttm " + quoted(dir / "b.rttm")) == 0);
  CHECK(run("baseline" + io + " --k 3 --method movmf --out-rttm " + quoted(dir / "b.rttm")) == 2);

  // Config file with flag override.
  test::write_text(dir / "cfg.json", R"({"k": 2, "beta": 2.0, "seed": 4})");
  REQUIRE(run("cluster --config " + quoted(dir / "cfg.json") + io + " --k 3 --out-rttm " + quoted(dir / "c.rttm") +
              " --out-metrics " + quoted(dir / "cm.json")) == 0);
  std::set<std::string> labels;
  std::istringstream lines(test::read_text(dir / "c.rttm"));
  for (std::string line; std::getline(lines, line);) {
    std::istringstream f(line);
    std::string tok;
    for (int i = 0; i < 8; ++i) f >> tok;
    labels.insert(tok);
  }
  CHECK(labels.size() == 3);
}

TEST_CASE("cluster exit codes") {
  const auto dir = test::scratch_dir("cli_errors");
  test::write_text(dir / "f.csv", "1,2\n3,4\n5,7\n");
  const std::string f = " --features " + quoted(dir / "f.csv") + " --out-rttm " + quoted(dir / "o.rttm");
  CHECK(run("cluster" + f + " --k 4") == 3);
  CHECK(run("cluster --features " + quoted(dir / "missing.csv") + " --k 2 --out-rttm " + quoted(dir / "o.rttm")) ==
        3);
  CHECK(run("cluster" + f) == 2);
  CHECK(run("cluster" + f + " --k 0") == 2);
  CHECK(run("cluster" + f + " --k 2 --beta -1") == 2);
  CHECK(run("cluster" + f + " --k 2 --config " + quoted(dir / "missing.json")) == 2);
  test::write_text(dir / "bad.json", "{not json");
  CHECK(run("cluster" + f + " --k 2 --config " + quoted(dir / "bad.json")) == 2);
  test::write_text(dir / "ragged.csv", "1,2\n3\n");
  CHECK(run("cluster --features " + quoted(dir / "ragged.csv") + " --k 1 --out-rttm " + quoted(dir / "o.rttm")) ==
        3);
  CHECK(run("frobnicate") == 2);
  CHECK(run("cluster" + f + " --k 1") == 0);
}

TEST_CASE("cluster is deterministic") {
  const auto dir = test::scratch_dir("cli_determinism");
  REQUIRE(run("synth --out-dir " + quoted(dir)) == 0);
  const std::string base = "cluster --features " + quoted(dir / "features.csv") + " --k 3 --window 2 --seed 5";
  REQUIRE(run(base + " --out-rttm " + quoted(dir / "1.rttm") + " --out-metrics " + quoted(dir / "1.json")) == 0);
  REQUIRE(run(base + " --out-rttm " + quoted(dir / "2.rttm") + " --out-metrics " + quoted(dir / "2.json")) == 0);
  CHECK(test::read_text(dir / "1.rttm") == test::read_text(dir / "2.rttm"));
  CHECK(test::read_text(dir / "1.json") == test::read_text(dir / "2.json"));
  CHECK_FALSE(test::read_text(dir / "1.rttm").empty());
}
