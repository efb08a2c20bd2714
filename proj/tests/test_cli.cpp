#include <doctest.h>

#include <chorefair/cli.hpp>
#include <chorefair/experiment.hpp>
#include <chorefair/io.hpp>

#include <sys/wait.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <sstream>

#include "fixtures.hpp"

using namespace chorefair;

namespace {

struct Run {
  int code = 0;
  std::string out;
  std::string err;
};

Run run(const std::vector<std::string>& args) {
  std::ostringstream out;
  std::ostringstream err;
  const int code = cli_dispatch(args, out, err);
  return {code, out.str(), err.str()};
}

class Workspace {
 public:
  Workspace() : dir_(std::filesystem::temp_directory_path() / "chorefair_cli_test") {
    std::filesystem::remove_all(dir_);
    std::filesystem::create_directories(dir_);
    write_instance(path("housemates.json"), fixtures::housemates());
    write_allocation(path("circled.json"), fixtures::housemates_circled());
    write_instance(path("not_ef1.json"), fixtures::not_ef1());
    write_allocation(path("not_ef1_alloc.json"), fixtures::not_ef1_circled());
  }
  ~Workspace() { std::filesystem::remove_all(dir_); }

  [[nodiscard]] std::string path(const std::string& name) const { return (dir_ / name).string(); }

 private:
  std::filesystem::path dir_;
};

std::size_t count_lines(const std::string& text) {
  return static_cast<std::size_t>(std::count(text.begin(), text.end(), '\n'));
}

}  // namespace

TEST_CASE("verify") {
  const Workspace ws;
  const auto ef1 = run({"verify", "--instance", ws.path("housemates.json"), "--allocation", ws.path("circled.json"),
                        "--check", "ef1"});
  CHECK(ef1.code == kExitOk);
  CHECK(ef1.out == "true\n");

  const auto not_ef1 = run({"verify", "--instance", ws.path("not_ef1.json"), "--allocation",
                            ws.path("not_ef1_alloc.json"), "--check", "ef1"});
  CHECK(not_ef1.code == kExitFalse);
  CHECK(not_ef1.out == "false\n");

  const auto def2 = run({"verify", "--instance", ws.path("not_ef1.json"), "--allocation",
                         ws.path("not_ef1_alloc.json"), "--check", "def", "--k", "2"});
  CHECK(def2.code == kExitOk);
  const auto ef = run({"verify", "--instance", ws.path("housemates.json"), "--allocation", ws.path("circled.json"),
                       "--check", "ef"});
  CHECK(ef.code == kExitFalse);
}

TEST_CASE("minimize") {
  const Workspace ws;
  const auto res = run({"minimize", "--instance", ws.path("housemates.json"), "--allocation", ws.path("circled.json"),
                        "--variant", "def", "--witness-out", ws.path("w.json")});
  CHECK(res.code == kExitOk);
  CHECK(res.out.find("min_k=1\n") != std::string::npos);
  CHECK(res.out.find("exact=true\n") != std::string::npos);
  CHECK(res.out.find("witness=") != std::string::npos);
  CHECK(read_witness(ws.path("w.json")).size() == 1);

  const auto check = run({"verify", "--instance", ws.path("housemates.json"), "--allocation", ws.path("circled.json"),
                          "--check", "def", "--witness", ws.path("w.json"), "--k", "1"});
  CHECK(check.code == kExitOk);

  write_instance(ws.path("private.json"), fixtures::private_chores(3));
  write_allocation(ws.path("diagonal.json"), fixtures::diagonal(3));
  const auto sdef = run({"minimize", "--instance", ws.path("private.json"), "--allocation", ws.path("diagonal.json"),
                         "--variant", "sdef"});
  CHECK(sdef.code == kExitFalse);
  CHECK(sdef.out.find("min_k=infeasible") != std::string::npos);

  write_instance(ws.path("heavy.json"), fixtures::last_chore_heavy(3));
  const auto over = run({"minimize", "--instance", ws.path("heavy.json"), "--over-allocations"});
  CHECK(over.code == kExitOk);
  CHECK(over.out.find("min_k=2\n") != std::string::npos);
  CHECK(over.out.find("assignment=") != std::string::npos);

  write_instance(ws.path("heavy6.json"), fixtures::last_chore_heavy(6));
  const auto tight = run({"minimize", "--instance", ws.path("heavy6.json"), "--over-allocations", "--budget", "1"});
  CHECK(tight.code == kExitInexact);
  CHECK(tight.out.find("exact=false") != std::string::npos);
}

TEST_CASE("allocate") {
  const Workspace ws;
  const auto rr = run({"allocate", "--instance", ws.path("housemates.json"), "--algo", "rr", "--out", ws.path("a.json")});
  CHECK(rr.code == kExitOk);
  CHECK(read_allocation(ws.path("a.json")) == fixtures::housemates_circled());
  CHECK(read_witness(ws.path("a.json")).size() == 2);

  const Instance cross(2, 2, {-1, -2, -2, -1});
  write_instance(ws.path("cross.json"), cross);
  const auto biv = run({"allocate", "--instance", ws.path("cross.json"), "--algo", "bivalued", "--out", ws.path("b.json")});
  CHECK(biv.code == kExitOk);
  for (const char* check : {"equilibrium", "pef1"}) {
    CHECK(run({"verify", "--instance", ws.path("cross.json"), "--allocation", ws.path("b.json"), "--check", check,
               "--prices", ws.path("b.json")})
              .code == kExitOk);
  }
  CHECK(run({"verify", "--instance", ws.path("cross.json"), "--allocation", ws.path("b.json"), "--check", "po"}).code ==
        kExitOk);

  const auto wrong = run({"allocate", "--instance", ws.path("housemates.json"), "--algo", "binary"});
  CHECK(wrong.code == kExitInvalid);
}

TEST_CASE("generate") {
  const Workspace ws;
  const auto syn = run({"gen", "synthetic", "--n", "3", "--m", "5", "--seed", "42", "--out", ws.path("s.json")});
  CHECK(syn.code == kExitOk);
  SyntheticConfig cfg;
  cfg.n = 3;
  cfg.m = 5;
  cfg.seed = 42;
  CHECK(read_instance(ws.path("s.json")).values() == gen_synthetic(cfg, 0).values());

  const auto part = run({"gen", "reduction", "partition", "--items", "1,1,2", "--k", "1", "--out", ws.path("p.json")});
  CHECK(part.code == kExitOk);
  CHECK(part.out == "expected=true\nk=1\n");
  CHECK(read_instance(ws.path("p.json")).agents() == 4);

  const auto split = run({"gen", "reduction", "setsplitting", "--universe", "3", "--sets", "0,1;1,2", "--k", "1",
                          "--out", ws.path("ss.json")});
  CHECK(split.code == kExitOk);
  CHECK(split.out == "expected=true\nk=1\n");

  const auto x3c = run({"gen", "reduction", "rx3c", "--universe", "3", "--sets", "0,1,2;0,1,2;0,1,2", "--out",
                        ws.path("x.json"), "--allocation-out", ws.path("xa.json")});
  CHECK(x3c.code == kExitOk);
  CHECK(read_instance(ws.path("x.json")).chores() == 39);
  CHECK(run({"verify", "--instance", ws.path("x.json"), "--allocation", ws.path("xa.json"), "--check", "def", "--k",
             "1"})
            .code == kExitOk);
}

TEST_CASE("invalid input exits with 2") {
  const Workspace ws;
  CHECK(run({}).code == kExitInvalid);
  CHECK(run({"frobnicate"}).code == kExitInvalid);
  CHECK(run({"verify", "--instance", ws.path("missing.json"), "--allocation", ws.path("circled.json"), "--check",
             "ef"})
            .code == kExitInvalid);
  write_text(ws.path("positive.json"), R"({"valuations": [[1, -1]]})");
  const auto bad = run({"verify", "--instance", ws.path("positive.json"), "--allocation", ws.path("circled.json"),
                        "--check", "ef"});
  CHECK(bad.code == kExitInvalid);
  CHECK(bad.err.find("nonpositive valuations required") != std::string::npos);
  write_allocation(ws.path("far.json"), Allocation({0, 1, 3}));
  CHECK(run({"verify", "--instance", ws.path("housemates.json"), "--allocation", ws.path("far.json"), "--check", "ef"})
            .code == kExitInvalid);
  CHECK(run({"verify", "--instance", ws.path("housemates.json"), "--allocation", ws.path("circled.json"), "--check",
             "nonsense"})
            .code == kExitInvalid);
  CHECK(run({"minimize", "--instance", ws.path("housemates.json")}).code == kExitInvalid);
}

TEST_CASE("experiment sweep") {
  const Workspace ws;
  write_text(ws.path("cfg.json"), R"({"n_range": [3, 4], "m_range": [3, 5], "trials": 2, "seed": 9})");
  const auto first = run({"experiment", "--config", ws.path("cfg.json"), "--workers", "1"});
  REQUIRE(first.code == kExitOk);
  CHECK(count_lines(first.out) == 31);
  CHECK(first.out.rfind(std::string(kCsvHeader) + "\n", 0) == 0);
  const auto second = run({"experiment", "--config", ws.path("cfg.json"), "--workers", "3"});
  CHECK(second.out == first.out);

  std::istringstream rows(first.out);
  std::string line;
  std::getline(rows, line);
  std::size_t rr_rows = 0;
  while (std::getline(rows, line)) {
    std::vector<std::string> f;
    std::istringstream cells(line);
    for (std::string cell; std::getline(cells, cell, ',');) f.push_back(cell);
    REQUIRE(f.size() == 9);
    CHECK(f[3] == "9");
    CHECK(f[6] == "true");
    if (f[4] == "roundrobin") {
      ++rr_rows;
      CHECK(std::stoul(f[5]) <= std::stoul(f[0]) - 1);
    }
  }
  CHECK(rr_rows == 10);

  ::setenv("CHOREFAIR_SEED", "10", 1);
  const auto reseeded = run({"experiment", "--config", ws.path("cfg.json"), "--workers", "1"});
  ::unsetenv("CHOREFAIR_SEED");
  CHECK(reseeded.out.find(",10,roundrobin,") != std::string::npos);
  CHECK(reseeded.out != first.out);

  write_text(ws.path("empty.json"), R"({"n_range": [4, 3]})");
  CHECK(run({"experiment", "--config", ws.path("empty.json")}).code == kExitInvalid);
}

TEST_CASE("single cells reproduce the sweep") {
  ExperimentConfig cfg;
  cfg.n_min = 3;
  cfg.n_max = 3;
  cfg.m_min = 4;
  cfg.m_max = 4;
  cfg.trials = 3;
  cfg.seed = 5;
  cfg.workers = 1;
  std::vector<ExperimentRecord> records;
  run_experiment(cfg, [&](const ExperimentRecord& r) { records.push_back(r); });
  REQUIRE(records.size() == 9);
  for (const auto& r : records) CHECK(run_trial(cfg, r.n, r.m, r.trial, r.algorithm).min_k == r.min_k);
}

TEST_CASE("installed binary") {
  const char* exe = std::getenv("CHOREFAIR_CLI");
  if (exe == nullptr) return;
  const Workspace ws;
  const std::string base = std::string(exe) + " verify --instance " + ws.path("not_ef1.json") + " --allocation " +
                           ws.path("not_ef1_alloc.json") + " --check ";
  const int ef1 = std::system((base + "ef1 > /dev/null").c_str());
  CHECK(WEXITSTATUS(ef1) == kExitFalse);
  const int def = std::system((base + "def --k 2 > /dev/null").c_str());
  CHECK(WEXITSTATUS(def) == kExitOk);
}
