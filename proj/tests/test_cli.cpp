#include <catch2/catch_amalgamated.hpp>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <string>

#include <json.hpp>

#include <sys/wait.h>
#include <unistd.h>

namespace {

using nlohmann::json;

struct RunResult {
  int exit_code = -1;
  std::string out;
};

// Runs the installed binary through the shell so that tests can prefix
// environment overrides. Stderr is dropped; assertions target stdout and
// the exit code.
RunResult run_cli(const std::string& args, const std::string& env = "") {
  std::string cmd = env;
  if (!env.empty()) cmd += " ";
  cmd += std::string(STILLIFE_CLI_PATH) + " " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  RunResult r;
  char buf[4096];
  std::size_t got;
  while ((got = fread(buf, 1, sizeof buf, pipe)) > 0) r.out.append(buf, got);
  int status = pclose(pipe);
  REQUIRE(WIFEXITED(status));
  r.exit_code = WEXITSTATUS(status);
  return r;
}

// The solve command prints the pattern first and the summary object after.
json tail_json(const std::string& out) {
  std::size_t at = out.find('{');
  REQUIRE(at != std::string::npos);
  return json::parse(out.substr(at));
}

std::string temp_file(const std::string& tag, const std::string& content) {
  std::string path =
      "/tmp/stillife_cli_" + tag + "_" + std::to_string(getpid()) + ".txt";
  std::ofstream f(path);
  f << content;
  return path;
}

}  // namespace

TEST_CASE("solve with counting reports the pinned pair", "[cli]") {
  RunResult r = run_cli("solve --alg be --n 6 --count");
  REQUIRE(r.exit_code == 0);
  json j = tail_json(r.out);
  CHECK(j["n"] == 6);
  CHECK(j["algorithm"] == "be");
  CHECK(j["optimum_dead"] == 18);
  CHECK(j["optimum_alive"] == 18);
  CHECK(j["solution_count"] == 48);
  CHECK(j["flags"]["mb_lb"] == true);
  CHECK(j["memory_peak_estimate"].get<std::uint64_t>() > 0);
  // six pattern rows precede the summary
  CHECK(std::count(r.out.begin(), r.out.end(), '\n') >= 6);
}

TEST_CASE("brute force at side two fills the board", "[cli]") {
  RunResult r = run_cli("solve --alg brute --n 2 --count");
  REQUIRE(r.exit_code == 0);
  json j = tail_json(r.out);
  CHECK(j["optimum_dead"] == 0);
  CHECK(j["optimum_alive"] == 4);
  CHECK(j["solution_count"] == 1);
}

TEST_CASE("search and symmetric modes answer from the command line", "[cli]") {
  RunResult hyb = run_cli("solve --alg hyb --n 9");
  REQUIRE(hyb.exit_code == 0);
  CHECK(tail_json(hyb.out)["optimum_dead"] == 38);

  RunResult ssl = run_cli("solve --alg ssl --n 9 --count");
  REQUIRE(ssl.exit_code == 0);
  json j = tail_json(ssl.out);
  CHECK(j["optimum_dead"] == 38);
}

TEST_CASE("usage errors exit with the usage code", "[cli]") {
  CHECK(run_cli("solve --alg nope --n 3").exit_code == 64);
  CHECK(run_cli("solve --n 0").exit_code == 64);
  CHECK(run_cli("solve").exit_code == 64);
  CHECK(run_cli("nonsense").exit_code == 64);
  CHECK(run_cli("solve --alg hyb --n 6 --count").exit_code == 64);
  CHECK(run_cli("solve --alg brute --n 6").exit_code == 64);
  CHECK(run_cli("--help").exit_code == 0);
}

TEST_CASE("audited solve exits cleanly when tables re-derive", "[cli]") {
  RunResult r = run_cli("solve --alg hyb --n 5 --audit");
  REQUIRE(r.exit_code == 0);
  json j = tail_json(r.out);
  CHECK(j["audit"]["violations"].empty());
  CHECK(j["audit"]["nodes"].get<std::uint64_t>() > 0);

  RunResult be = run_cli("solve --alg be --n 4 --audit");
  REQUIRE(be.exit_code == 0);
  CHECK(tail_json(be.out)["audit"]["entry_checks"].get<std::uint64_t>() > 0);
}

TEST_CASE("verify grades stable and unstable patterns", "[cli]") {
  std::string ship = temp_file("ship", "##.\n#.#\n.##\n");
  RunResult ok = run_cli("verify " + ship);
  REQUIRE(ok.exit_code == 0);
  json j = json::parse(ok.out);
  CHECK(j["stable"] == true);
  CHECK(j["cross_check"] == true);
  CHECK(j["alive"] == 6);
  CHECK(j["violations"].empty());

  std::string triple = temp_file("triple", "###\n...\n...\n");
  RunResult bad = run_cli("verify " + triple);
  REQUIRE(bad.exit_code == 1);
  json k = json::parse(bad.out);
  CHECK(k["stable"] == false);
  bool saw_boundary = false;
  for (const auto& v : k["violations"])
    if (v["condition"].get<std::string>().find("boundary") !=
        std::string::npos)
      saw_boundary = true;
  CHECK(saw_boundary);

  std::string ragged = temp_file("ragged", "##\n#\n");
  CHECK(run_cli("verify " + ragged).exit_code == 65);
  CHECK(run_cli("verify /tmp/does_not_exist_anywhere").exit_code == 65);
}

TEST_CASE("maxsat solves a small formula end to end", "[cli]") {
  std::string cnf =
      temp_file("cnf", "c two of three\np cnf 2 3\n1 2 0\n-1 0\n-2 0\n");
  RunResult r = run_cli("maxsat " + cnf);
  REQUIRE(r.exit_code == 0);
  json j = json::parse(r.out);
  CHECK(j["variables"] == 2);
  CHECK(j["clauses"] == 3);
  CHECK(j["optimum_violated"] == 1);
  CHECK(j["max_satisfiable"] == 2);
  CHECK(j["assignment"].size() == 2);

  std::string bad = temp_file("badcnf", "p cnf 1 1\n2 0\n");
  CHECK(run_cli("maxsat " + bad).exit_code == 65);
}

TEST_CASE("wcsp files solve end to end", "[cli]") {
  std::string good = temp_file(
      "wcsp",
      "# one unary, one binary\nwcsp 2\ndom 0 2\ndom 1 3\n"
      "fn 1 0 : 0 4 1 1\nfn 2 0 1 : 0 2 3 inf 5 1\n");
  RunResult r = run_cli("wcsp " + good);
  REQUIRE(r.exit_code == 0);
  json j = json::parse(r.out);
  CHECK(j["variables"] == 2);
  CHECK(j["functions"] == 2);
  CHECK(j["optimum"] == 1);

  std::string bad = temp_file("badwcsp", "wcsp 1\ndom 0 two\n");
  CHECK(run_cli("wcsp " + bad).exit_code == 65);
}

TEST_CASE("reproduce prints a row per size and flags agreement", "[cli]") {
  RunResult r = run_cli("reproduce --from 5 --to 6 --algs be,hyb --count");
  REQUIRE(r.exit_code == 0);
  std::istringstream is(r.out);
  std::string header, row5, row6, extra;
  REQUIRE(std::getline(is, header));
  REQUIRE(std::getline(is, row5));
  REQUIRE(std::getline(is, row6));
  CHECK_FALSE(std::getline(is, extra));
  CHECK(header.rfind("n,opt_dead", 0) == 0);
  CHECK(row5.rfind("5,9,16,1,", 0) == 0);
  CHECK(row6.rfind("6,18,18,48,", 0) == 0);
  CHECK(row5.find("MISMATCH") == std::string::npos);
  CHECK(row6.find("MISMATCH") == std::string::npos);

  RunResult empty = run_cli("reproduce --from 9 --to 8");
  REQUIRE(empty.exit_code == 0);
  CHECK(std::count(empty.out.begin(), empty.out.end(), '\n') == 1);
}

TEST_CASE("memory refusal exits with the budget code", "[cli]") {
  RunResult r =
      run_cli("solve --alg be --n 8", "STILLIFE_MEM_BUDGET=1000");
  CHECK(r.exit_code == 2);
}
