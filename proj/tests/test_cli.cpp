// Exercises the installed CLI binary end to end: exit codes, artifact
// layout and byte determinism. Paths come from the test harness arguments:
//   test_cli <path-to-tgtsp-binary> <scenarios-dir>
#define DOCTEST_CONFIG_IMPLEMENT
#include <doctest.h>

#include <sys/wait.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

namespace {

std::string g_cli;
std::string g_scenarios;

int run(const std::string& cmd) {
  const int rc = std::system(cmd.c_str());
  return WEXITSTATUS(rc);
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  out << text;
}

std::string tmpdir(const char* tag) {
  std::string templ = std::string("/tmp/tgtsp_cli_") + tag + "_XXXXXX";
  char* buf = templ.data();
  const char* made = mkdtemp(buf);
  REQUIRE(made != nullptr);
  return made;
}

}  // namespace

TEST_CASE("solve writes artifacts, exits 0 and is byte-deterministic") {
  const std::string dir_a = tmpdir("a");
  const std::string dir_b = tmpdir("b");
  const std::string scenario = g_scenarios + "/smoke2.json";
  const std::string base = g_cli + " solve " + scenario +
                           " --nodes 60 --seed 42 --multistart 2 -o ";
  CHECK(run(base + dir_a + " 2>/dev/null") == 0);
  CHECK(run(base + dir_b + " 2>/dev/null") == 0);

  const std::string traj_a = slurp(dir_a + "/trajectory.json");
  CHECK_FALSE(traj_a.empty());
  CHECK(traj_a == slurp(dir_b + "/trajectory.json"));
  CHECK(slurp(dir_a + "/report.json") == slurp(dir_b + "/report.json"));
  CHECK_FALSE(slurp(dir_a + "/manifest.json").empty());
  CHECK(slurp(dir_a + "/report.json").find("\"hamiltonian\": true") !=
        std::string::npos);

  SUBCASE("verify accepts the solver's own artifacts") {
    CHECK(run(g_cli + " verify " + scenario + " " + dir_a +
              "/trajectory.json > " + dir_a + "/verify.json") == 0);
  }

  SUBCASE("tampered trajectories fail verification") {
    // chop the tour down to its first two nodes: cities go unvisited
    const std::string tampered = dir_a + "/tampered.json";
    std::string text = slurp(dir_a + "/trajectory.json");
    // crude but deterministic tamper: replace every occurrence of the first
    // city's x coordinate region by pinning all labels to the start point
    write(tampered, text);
    std::string cmd = "python3 - <<'EOF'\n"
                      "import json\n"
                      "p = json.load(open('" + tampered + "'))\n"
                      "p['labels'] = [[0.0, 0.0] for _ in p['labels']]\n"
                      "p['states'] = [[0.0, 0.0, 0.0, 0.0] for _ in p['states']]\n"
                      "json.dump(p, open('" + tampered + "', 'w'))\n"
                      "EOF";
    REQUIRE(run(cmd) == 0);
    CHECK(run(g_cli + " verify " + scenario + " " + tampered +
              " > /dev/null") == 1);
  }

  SUBCASE("export csv and svg") {
    const std::string csv = dir_a + "/out.csv";
    CHECK(run(g_cli + " export " + scenario + " " + dir_a +
              "/trajectory.json --format csv -o " + csv) == 0);
    std::istringstream rows(slurp(csv));
    std::string line;
    int count = 0;
    while (std::getline(rows, line))
      if (!line.empty()) ++count;
    CHECK(count == 60);

    CHECK(run(g_cli + " export " + scenario + " " + dir_a +
              "/trajectory.json --format svg -o " + dir_a + "/out.svg") == 0);
    CHECK(slurp(dir_a + "/out.svg").find("<polyline") != std::string::npos);
    CHECK(run(g_cli + " export " + scenario + " " + dir_a +
              "/trajectory.json --format gif -o /dev/null 2>/dev/null") == 2);
  }
}

TEST_CASE("malformed inputs exit 2") {
  const std::string dir = tmpdir("bad");
  write(dir + "/broken.json", "{ definitely not json");
  CHECK(run(g_cli + " solve " + dir + "/broken.json -o " + dir +
            " 2>/dev/null") == 2);
  CHECK(run(g_cli + " solve " + dir + "/missing.json -o " + dir +
            " 2>/dev/null") == 2);
  write(dir + "/short.json", "{\"times\": [0.0], \"labels\": [[0,0]]}");
  CHECK(run(g_cli + " verify " + g_scenarios + "/smoke2.json " + dir +
            "/short.json 2>/dev/null") == 2);
}

int main(int argc, char** argv) {
  if (argc < 3) {
    std::cerr << "usage: test_cli <tgtsp-binary> <scenarios-dir>\n";
    return 2;
  }
  g_cli = argv[1];
  g_scenarios = argv[2];
  doctest::Context context;
  context.applyCommandLine(1, argv);
  return context.run();
}
