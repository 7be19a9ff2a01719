#include "doctest.h"

#include <array>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>

#include "arq/report.hpp"

using namespace arq;

namespace {

struct RunResult {
  int exit_code = -1;
  std::string out;
};

// Runs the CLI binary with the given arguments and captures one stream.
// stdout by default; pass capture_stderr to swap the streams instead.
RunResult run_cli(const std::string& args, bool capture_stderr = false) {
  std::string cmd = std::string(ARQ_CLI_PATH) + " " + args;
  cmd += capture_stderr ? " 2>&1 1>/dev/null" : " 2>/dev/null";
  RunResult r;
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::array<char, 4096> buf;
  size_t n;
  while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0)
    r.out.append(buf.data(), n);
  int status = pclose(pipe);
  r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::string sample(const std::string& name) {
  return std::string(ARQ_SOURCE_DIR) + "/samples/" + name;
}

const json& schema() {
  static json s = [] {
    std::ifstream in(std::string(ARQ_SOURCE_DIR) + "/report.schema.json");
    REQUIRE(in.good());
    return json::parse(in);
  }();
  return s;
}

// Runs a command expected to print a JSON report, checks the exit code,
// and validates the report against the published schema.
json checked_report(const std::string& args, int want_exit) {
  RunResult r = run_cli(args);
  INFO("command: ", args);
  INFO("output: ", r.out);
  CHECK(r.exit_code == want_exit);
  json doc = json::parse(r.out, nullptr, false);
  REQUIRE_FALSE(doc.is_discarded());
  std::string why;
  bool valid = schema_check(schema(), doc, why);
  INFO("schema: ", why);
  CHECK(valid);
  return doc;
}

}  // namespace

TEST_SUITE_BEGIN("cli");

TEST_CASE("every subcommand emits a schema-valid report") {
  std::string a2 = sample("a2.arq"), a3 = sample("a3.arq"),
              rays = sample("rays.arq");

  SUBCASE("check") {
    json d = checked_report("check " + a2, 0);
    CHECK(d["command"] == "check");
    CHECK(d["status"] == "ok");
    CHECK(d["quivers"].size() == 1);
    CHECK(d["reps"].size() == 3);
    checked_report("check " + a3, 0);
    json rr = checked_report("check " + rays, 0);
    CHECK(rr["rayquivers"].size() == 2);
    CHECK(rr["fpreps"].size() == 2);
  }
  SUBCASE("decompose") {
    json d = checked_report("decompose " + a3 + " --rep P1", 0);
    CHECK(d["decomposition"]["all_certified"] == true);
    CHECK(d["decomposition"]["parts"].size() == 1);
  }
  SUBCASE("hom and ext") {
    json h = checked_report("hom " + a3 + " --from P2 --to P1", 0);
    CHECK(h["dim"] == 1);
    json e = checked_report("ext " + a3 + " --z S1 --x S2", 0);
    CHECK(e["dim"] == 1);
  }
  SUBCASE("dtr and trd") {
    json d = checked_report("dtr " + a3 + " --rep S2", 0);
    CHECK(d["translate"]["dims"]["3"] == 1);
    json t = checked_report("trd " + a3 + " --rep S2", 0);
    CHECK(t["translate"]["dims"]["1"] == 1);
  }
  SUBCASE("ass with verification") {
    json d = checked_report("ass " + a2 + " --rep S1 --verify-against all", 0);
    CHECK(d["sequence"]["x"]["dims"]["2"] == 1);
    CHECK(d["certificate"]["ok"] == true);
    CHECK(d["certificate"]["tests"].size() == 3);
  }
  SUBCASE("arquiver") {
    json d = checked_report("arquiver " + a3 + " --quiver A3", 0);
    CHECK(d["ar"]["rep_finite"] == true);
    CHECK(d["ar"]["nodes"].size() == 6);
  }
  SUBCASE("approx both sides") {
    json r = checked_report(
        "approx " + a3 + " --subcat C --rep S2 --side right", 0);
    CHECK(r["approximation"]["zero"] == false);
    checked_report("approx " + a3 + " --subcat C --rep S3 --side left", 0);
  }
  SUBCASE("subcat-ass") {
    json d = checked_report("subcat-ass " + a3 + " --subcat C --rep S1", 0);
    CHECK(d["certificate"]["ok"] == true);
    CHECK(d["middle_membership"]["verdict"] == "yes");
    json neg = checked_report("subcat-ass " + a3 + " --subcat C --rep P1", 1);
    CHECK(neg["status"] == "negative");
    CHECK(neg["ext_projective"] == true);
  }
  SUBCASE("torsion canonical sequence") {
    json d = checked_report("torsion " + a2 + " --pair T --rep P1", 0);
    CHECK(d["valid"] == true);
    CHECK(d["torsion_side"]["verdict"] == "yes");
    CHECK(d["free_side"]["verdict"] == "yes");
  }
  SUBCASE("torsion transfer") {
    json d = checked_report(
        "torsion " + a3 + " --pair T --transfer I2 --side free", 0);
    CHECK(d["certificate"]["ok"] == true);
    json t = checked_report(
        "torsion " + a3 + " --pair T2 --transfer I2 --side torsion", 0);
    CHECK(t["certificate"]["ok"] == true);
    json neg = checked_report(
        "torsion " + a3 + " --pair T2 --transfer S2 --side torsion", 1);
    CHECK(neg["status"] == "negative");
    RunResult gate = run_cli(
        "torsion " + a3 + " --pair T --transfer I2 --side torsion", true);
    CHECK(gate.exit_code == 2);
    CHECK(gate.out.find("not in the torsion class") != std::string::npos);
  }
  SUBCASE("inf-dtr finite and infinite") {
    json fin = checked_report("inf-dtr " + rays + " --fprep M", 0);
    CHECK(fin["finite"] == true);
    CHECK(fin["certificates"].size() == 1);
    json inf = checked_report("inf-dtr " + rays + " --fprep N", 0);
    CHECK(inf["finite"] == false);
    CHECK(inf["ray_witness"] == "r2");
    CHECK(inf["stable_dim"] == 1);
  }
  SUBCASE("inf-ass present and absent") {
    json has = checked_report("inf-ass " + rays + " --fprep M", 0);
    CHECK(has["has_sequence"] == true);
    CHECK(has["certificate"]["ok"] == true);
    json no = checked_report("inf-ass " + rays + " --fprep N", 1);
    CHECK(no["status"] == "negative");
    CHECK(no["has_sequence"] == false);
  }
}

TEST_CASE("negative results exit 1 with a witness") {
  json d = checked_report("ass " + sample("a2.arq") + " --rep P1", 1);
  CHECK(d["status"] == "negative");
  CHECK(d["witness"] == "projective: no almost split sequence ends here");
}

TEST_CASE("usage and parse failures exit 2 without a report") {
  SUBCASE("syntax error carries file, line, and column") {
    RunResult r = run_cli("check " + sample("broken.arq"));
    CHECK(r.exit_code == 2);
    CHECK(r.out.empty());
    RunResult e = run_cli("check " + sample("broken.arq"), true);
    CHECK(e.out.find("broken.arq:1:40") != std::string::npos);
    CHECK(e.out.find("unknown vertex 3") != std::string::npos);
  }
  SUBCASE("unknown rep name") {
    RunResult r = run_cli("dtr " + sample("a2.arq") + " --rep Nope", true);
    CHECK(r.exit_code == 2);
    CHECK(r.out.find("usage error") != std::string::npos);
    CHECK(r.out.find("Nope") != std::string::npos);
  }
  SUBCASE("missing input file") {
    RunResult r = run_cli("check no_such_file.arq", true);
    CHECK(r.exit_code == 2);
  }
  SUBCASE("composite modulus") {
    RunResult r =
        run_cli("hom " + sample("a2.arq") + " --from S1 --to S1 --prime 6",
                true);
    CHECK(r.exit_code == 2);
    CHECK(r.out.find("not prime") != std::string::npos);
  }
  SUBCASE("dot format restricted to arquiver") {
    RunResult r =
        run_cli("hom " + sample("a2.arq") + " --from S1 --to S1 --format dot",
                true);
    CHECK(r.exit_code == 2);
  }
}

TEST_CASE("reports are byte deterministic") {
  const std::string cmds[] = {
      "ass " + sample("a2.arq") + " --rep S1 --verify-against all --seed 5",
      "arquiver " + sample("a3.arq") + " --quiver A3 --seed 5",
      "inf-dtr " + sample("rays.arq") + " --fprep M --seed 5",
      "decompose " + sample("a3.arq") + " --rep P1 --seed 5",
  };
  for (const std::string& cmd : cmds) {
    RunResult a = run_cli(cmd), b = run_cli(cmd);
    INFO("command: ", cmd);
    CHECK(a.exit_code == b.exit_code);
    CHECK(a.out == b.out);
    CHECK_FALSE(a.out.empty());
  }
}

TEST_CASE("alternate output formats") {
  SUBCASE("text walks the same report") {
    RunResult r =
        run_cli("hom " + sample("a3.arq") + " --from P2 --to P1 --format text");
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("command: \"hom\"") != std::string::npos);
    CHECK(r.out.find("dim: 1") != std::string::npos);
  }
  SUBCASE("dot prints graphviz source") {
    RunResult r =
        run_cli("arquiver " + sample("a3.arq") + " --quiver A3 --format dot");
    CHECK(r.exit_code == 0);
    CHECK(r.out.rfind("digraph", 0) == 0);
    CHECK(r.out.find("->") != std::string::npos);
  }
  SUBCASE("dot file flag writes and reports the path") {
    std::string path = "/tmp/arq_cli_test_ar.dot";
    std::remove(path.c_str());
    json d = checked_report(
        "arquiver " + sample("a3.arq") + " --quiver A3 --dot " + path, 0);
    CHECK(d["dot_file"] == path);
    std::ifstream in(path);
    std::stringstream ss;
    ss << in.rdbuf();
    CHECK(ss.str().rfind("digraph", 0) == 0);
    std::remove(path.c_str());
  }
}

TEST_CASE("schema itself has teeth") {
  const json& s = schema();
  std::string why;

  json good = {{"command", "hom"}, {"input", "a.arq"}, {"prime", 7},
               {"seed", 0},        {"status", "ok"},   {"from", "S1"},
               {"to", "S1"},       {"dim", 0}};
  CHECK(schema_check(s, good, why));

  json missing = good;
  missing.erase("status");
  CHECK_FALSE(schema_check(s, missing, why));

  json bad_cmd = good;
  bad_cmd["command"] = "frobnicate";
  CHECK_FALSE(schema_check(s, bad_cmd, why));

  json bad_prime = good;
  bad_prime["prime"] = 1;
  CHECK_FALSE(schema_check(s, bad_prime, why));

  json stray = good;
  stray["extra_field"] = 1;
  CHECK_FALSE(schema_check(s, stray, why));

  json bare_negative = good;
  bare_negative["status"] = "negative";
  CHECK_FALSE(schema_check(s, bare_negative, why));
  bare_negative["witness"] = "because";
  CHECK(schema_check(s, bare_negative, why));
}

TEST_SUITE_END();
