#include <catch2/catch_amalgamated.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <unistd.h>

#include "nler/synthetic.hpp"
#include "nler/text.hpp"

namespace {

namespace fs = std::filesystem;

struct RunResult {
  int exit_code = -1;
  std::string out;
  std::string err;
};

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

struct Workspace {
  fs::path dir;
  Workspace() {
    static int counter = 0;
    dir = fs::temp_directory_path() /
          ("nler_cli_test_" + std::to_string(::getpid()) + "_" + std::to_string(counter++));
    fs::create_directories(dir);
  }
  ~Workspace() { fs::remove_all(dir); }

  RunResult run(const std::string& args) const {
    fs::path out = dir / "stdout.txt";
    fs::path err = dir / "stderr.txt";
    std::string cmd = std::string(NLER_CLI_PATH) + " " + args + " > " + out.string() + " 2> " +
                      err.string();
    int status = std::system(cmd.c_str());
    RunResult result;
    result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    result.out = slurp(out);
    result.err = slurp(err);
    return result;
  }

  void write(const fs::path& rel, const std::string& content) const {
    fs::create_directories((dir / rel).parent_path());
    std::ofstream f(dir / rel, std::ios::binary);
    f << content;
  }

  std::string corpus() const {
    fs::path corpus_dir = dir / "corpus";
    if (!fs::exists(corpus_dir)) {
      nler::SyntheticSpec spec;
      spec.clusters = 2;
      nler::write_synthetic_corpus(corpus_dir, spec);
    }
    return corpus_dir.string();
  }
};

} // namespace

TEST_CASE("approx reproduces the 1-D worked example") {
  Workspace ws;
  ws.write("table.csv", "a1,decision\n0.0,0\n0.1,1\n0.25,1\n0.9,0\n");
  auto r = ws.run("approx " + (ws.dir / "table.csv").string() + " --radius 0.2 --metric 2");
  REQUIRE(r.exit_code == 0);
  CHECK(r.out.find("lower {o3}\n") != std::string::npos);
  CHECK(r.out.find("upper {o1,o2,o3}\n") != std::string::npos);
  CHECK(r.out.find("boundary {o1,o2}\n") != std::string::npos);
  CHECK(r.out.find("negative {o4}\n") != std::string::npos);
}

TEST_CASE("approx accepts a named target column") {
  Workspace ws;
  ws.write("table.csv", "x,keep,y\n0.1,1,0.2\n0.9,0,0.8\n");
  auto r = ws.run("approx " + (ws.dir / "table.csv").string() + " --target keep --radius 0.1");
  REQUIRE(r.exit_code == 0);
  CHECK(r.out.find("target {o1} (column 'keep')") != std::string::npos);

  auto bad = ws.run("approx " + (ws.dir / "table.csv").string() + " --target nope");
  CHECK(bad.exit_code == 1);
  CHECK(bad.err.find("ERROR:argument:") != std::string::npos);
}

TEST_CASE("train then rules and summarize work end to end") {
  Workspace ws;
  std::string model = (ws.dir / "model.nler").string();
  auto train = ws.run("train --corpus " + ws.corpus() + " --out " + model + " --radius 0.2");
  REQUIRE(train.exit_code == 0);

  auto rules = ws.run("rules --model " + model);
  REQUIRE(rules.exit_code == 0);
  CHECK(rules.out.find("Nbhd_0.2") != std::string::npos);
  CHECK(rules.out.find("=> POSITIVE") != std::string::npos);

  std::string sums = (ws.dir / "sums").string();
  auto summarize = ws.run("summarize --corpus " + ws.corpus() + " --model " + model + " --out " +
                          sums + " --summary-words 30");
  REQUIRE(summarize.exit_code == 0);
  std::string summary = slurp(fs::path(sums) / "cluster_00.sum.txt");
  CHECK_FALSE(summary.empty());
  CHECK(nler::tokenize(summary).size() <= 30);

  std::string eval_dir = (ws.dir / "eval").string();
  auto evaluate = ws.run("evaluate --corpus " + ws.corpus() + " --model " + model + " --out " +
                         eval_dir);
  REQUIRE(evaluate.exit_code == 0);
  std::string tsv = slurp(fs::path(eval_dir) / "scores.tsv");
  CHECK(tsv.find("cluster\tmetric\tprecision\trecall\tf1") != std::string::npos);
  CHECK(tsv.find("MEAN\tROUGE-SU\t") != std::string::npos);
  CHECK(tsv.find("cluster_01\tROUGE-L\t") != std::string::npos);
}

TEST_CASE("flags override config files which override defaults") {
  Workspace ws;
  ws.write("run.cfg", "# experiment config\nradius = 0.3\nlabel_fraction = 0.2\n");
  std::string cfg = (ws.dir / "run.cfg").string();

  auto flag_wins = ws.run("train --corpus " + ws.corpus() + " --out " +
                          (ws.dir / "m1.nler").string() + " --config " + cfg + " --radius 0.2");
  REQUIRE(flag_wins.exit_code == 0);
  CHECK(slurp(ws.dir / "m1.nler").find("run_label = Nbhd_0.2") != std::string::npos);

  auto config_wins = ws.run("train --corpus " + ws.corpus() + " --out " +
                            (ws.dir / "m2.nler").string() + " --config " + cfg);
  REQUIRE(config_wins.exit_code == 0);
  CHECK(slurp(ws.dir / "m2.nler").find("run_label = Nbhd_0.3") != std::string::npos);

  auto default_wins = ws.run("train --corpus " + ws.corpus() + " --out " +
                             (ws.dir / "m3.nler").string());
  REQUIRE(default_wins.exit_code == 0);
  CHECK(slurp(ws.dir / "m3.nler").find("run_label = Nbhd_0.2") != std::string::npos);
}

TEST_CASE("config errors name the offending key and line") {
  Workspace ws;
  ws.write("bad.cfg", "radius = 0.2\nwibble = 3\n");
  auto r = ws.run("train --corpus " + ws.corpus() + " --config " + (ws.dir / "bad.cfg").string());
  CHECK(r.exit_code == 1);
  CHECK(r.err.find("ERROR:config:") != std::string::npos);
  CHECK(r.err.find("wibble") != std::string::npos);
  CHECK(r.err.find("line 2") != std::string::npos);

  ws.write("noeq.cfg", "radius 0.2\n");
  auto r2 = ws.run("train --corpus " + ws.corpus() + " --config " + (ws.dir / "noeq.cfg").string());
  CHECK(r2.exit_code == 1);
  CHECK(r2.err.find("line 1") != std::string::npos);
}

TEST_CASE("usage errors are single-line and machine-parseable") {
  Workspace ws;
  auto unknown_flag = ws.run("train --corpus x --frobnicate");
  CHECK(unknown_flag.exit_code == 1);
  CHECK(unknown_flag.err.rfind("ERROR:usage:", 0) == 0);
  CHECK(unknown_flag.err.find('\n') == unknown_flag.err.size() - 1);

  auto unknown_cmd = ws.run("transmogrify");
  CHECK(unknown_cmd.exit_code == 1);
  CHECK(unknown_cmd.err.rfind("ERROR:usage:", 0) == 0);

  auto missing = ws.run("train");
  CHECK(missing.exit_code == 1);
  CHECK(missing.err.find("--corpus") != std::string::npos);
}

TEST_CASE("aggregate-rank-measure selection is a clean configuration error") {
  Workspace ws;
  std::string model = (ws.dir / "model.nler").string();
  REQUIRE(ws.run("train --corpus " + ws.corpus() + " --out " + model).exit_code == 0);
  auto r = ws.run("evaluate --corpus " + ws.corpus() + " --model " + model + " --out " +
                  (ws.dir / "eval").string() + " --post aggregate-rank-measure");
  CHECK(r.exit_code == 1);
  CHECK(r.err.rfind("ERROR:notimpl:", 0) == 0);
  CHECK(r.err.find("not implemented") != std::string::npos);
  CHECK(r.err.find("aggregate-rank-measure") != std::string::npos);
}

TEST_CASE("evaluate without gold names the first offending cluster") {
  Workspace ws;
  ws.write("bare/c1/docs/a.txt", "Quiet morning in the bay. Boats left early.");
  std::string model = (ws.dir / "model.nler").string();
  REQUIRE(ws.run("train --corpus " + ws.corpus() + " --out " + model).exit_code == 0);
  auto r = ws.run("evaluate --corpus " + (ws.dir / "bare").string() + " --model " + model +
                  " --out " + (ws.dir / "eval").string());
  CHECK(r.exit_code == 1);
  CHECK(r.err.find("c1") != std::string::npos);
  CHECK(r.err.find("gold") != std::string::npos);
}

TEST_CASE("identical invocations produce byte-identical outputs across job counts") {
  Workspace ws;
  std::string model = (ws.dir / "model.nler").string();
  REQUIRE(ws.run("train --corpus " + ws.corpus() + " --out " + model).exit_code == 0);

  auto j1 = ws.run("evaluate --corpus " + ws.corpus() + " --model " + model + " --out " +
                   (ws.dir / "e1").string() + " --jobs 1");
  auto j4 = ws.run("evaluate --corpus " + ws.corpus() + " --model " + model + " --out " +
                   (ws.dir / "e4").string() + " --jobs 4");
  REQUIRE(j1.exit_code == 0);
  REQUIRE(j4.exit_code == 0);
  CHECK(slurp(ws.dir / "e1" / "scores.tsv") == slurp(ws.dir / "e4" / "scores.tsv"));
  CHECK(slurp(ws.dir / "e1" / "cluster_00.sum.txt") == slurp(ws.dir / "e4" / "cluster_00.sum.txt"));
  CHECK(slurp(ws.dir / "e1" / "cluster_01.sum.txt") == slurp(ws.dir / "e4" / "cluster_01.sum.txt"));
}
