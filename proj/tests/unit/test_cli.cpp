#include <sys/wait.h>

#include <cstdio>
#include <filesystem>

#include "doctest.h"
#include "testkit.hpp"

#include "json.hpp"

#ifndef CHORC_CLI
#error "CHORC_CLI must name the chorc executable"
#endif

using namespace testkit;
using json = nlohmann::json;

namespace {

struct Result {
  int code;
  std::string out;
};

Result run(const std::string& args) {
  std::string cmd = std::string(CHORC_CLI) + " " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe);
  std::string out;
  char buf[4096];
  while (std::size_t n = fread(buf, 1, sizeof buf, pipe)) out.append(buf, n);
  int status = pclose(pipe);
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

std::vector<json> json_lines(const std::string& out) {
  std::vector<json> lines;
  std::istringstream in(out);
  for (std::string line; std::getline(in, line);) lines.push_back(json::parse(line));
  return lines;
}

}  // namespace

TEST_CASE("exit codes") {
  CHECK(run("check " + corpus_path("auth")).code == 0);
  CHECK(run("check " + corpus_path("auth_noselect")).code == 1);
  CHECK(run("check /nonexistent.chor").code == 2);
  CHECK(run("frobnicate").code == 2);
  CHECK(run("run " + corpus_path("auth") + " --policy sideways").code == 2);
  CHECK(run("run " + corpus_path("auth") + " --state notanassignment").code == 2);
  CHECK(run("verify " + corpus_path("pipeline") + " --depth 10").code == 0);
  CHECK(run("verify " + corpus_path("auth_noselect")).code == 1);

  auto dir = std::filesystem::temp_directory_path() / "chorc_cli_test";
  std::filesystem::create_directories(dir);
  std::ofstream(dir / "bad.chor") << "main { p.1 -> q.x }";
  CHECK(run("check " + (dir / "bad.chor").string()).code == 2);
  std::ofstream(dir / "self.chor") << "main { p.1 -> p.x; end }";
  CHECK(run("check " + (dir / "self.chor").string()).code == 1);
}

TEST_CASE("check reports merge conflicts") {
  Result r = run("check --json " + corpus_path("auth_noselect"));
  REQUIRE(r.code == 1);
  json j = json::parse(r.out);
  CHECK(j["ok"] == false);
  std::set<std::string> processes;
  for (const auto& issue : j["projectability"]) {
    processes.insert(issue["process"]);
    if (issue["process"] == "c") {
      CHECK(issue["conflict"][0] == "s?t; end");
      CHECK(issue["conflict"][1] == "end");
    }
  }
  CHECK(processes == std::set<std::string>{"c", "s"});
}

TEST_CASE("project writes one file per process") {
  auto dir = std::filesystem::temp_directory_path() / "chorc_project_test";
  std::filesystem::remove_all(dir);
  REQUIRE(run("project " + corpus_path("filetransfer") + " -o " + dir.string()).code == 0);
  CHECK(std::filesystem::exists(dir / "c.sp"));
  CHECK(std::filesystem::exists(dir / "s.sp"));
  REQUIRE(std::filesystem::exists(dir / "procedures.sp"));
  auto procs = parse_sp_file(read_file((dir / "procedures.sp").string()));
  REQUIRE(procs.size() == 2);
  CHECK(procs[0].first == "FileTransfer@c");
  CHECK(parse_sp_file(read_file((dir / "c.sp").string()))[0].second.is_end() == false);
}

TEST_CASE("json traces") {
  Result r = run("run --json " + corpus_path("auth") + " --state s.token=5");
  REQUIRE(r.code == 0);
  auto lines = json_lines(r.out);
  REQUIRE(lines.size() == 7);
  CHECK(lines[0]["format"] == 1);
  CHECK(lines[0]["command"] == "run");
  CHECK(lines[1]["step"] == 1);
  CHECK(lines[1]["label"] == "L_Com c ip 0");
  CHECK(lines[1]["actors"] == json::array({"c", "ip"}));
  CHECK(lines[5]["richLabel"] == "R_Com s 5 c t");
  CHECK(lines[6]["outcome"] == "terminated");
  CHECK(lines[6]["finalState"]["c.t"] == 5);

  Result e = run("exec --json " + corpus_path("pipeline") + " --seed 9");
  REQUIRE(e.code == 0);
  auto el = json_lines(e.out);
  CHECK(el.back()["traceValid"] == true);
  CHECK(el.back()["outcome"] == "terminated");
}
