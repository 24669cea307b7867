#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <sstream>

#include "fixtures.hpp"
#include "rsz/cli.hpp"

using namespace rsz;

namespace {

struct CliResult {
    int code;
    std::string out;
    std::string err;
};

CliResult run(std::vector<std::string> args) {
    std::ostringstream out, err;
    int code = cli_run(args, out, err);
    return {code, out.str(), err.str()};
}

std::string fixture_path(const std::string& name) {
    return std::string(FIXTURES_DIR) + "/" + name + ".quiver";
}

std::string temp_file(const std::string& name, const std::string& content) {
    std::string path = "/tmp/rsz_test_" + name;
    std::ofstream(path) << content;
    return path;
}

} // namespace

TEST_CASE("analyze emits one JSON document with the expected values") {
    CliResult r = run({"analyze", fixture_path("kronecker_graded"), "--json"});
    CHECK(r.code == 0);
    CHECK(r.err.empty());
    CHECK(r.out.find("\"grading_period\": 2") != std::string::npos);
    CHECK(r.out.find("\"is_type_A_tilde\": true") != std::string::npos);
    CHECK(r.out.rfind("{", 1) == 0); // a single document
}

TEST_CASE("exit code 1 for unreadable or malformed input") {
    CHECK(run({"analyze", "/nonexistent.quiver"}).code == 1);
    std::string bad = temp_file("bad.quiver", "quiver b\nvertex 1\ngarbage\n");
    CliResult r = run({"analyze", bad});
    CHECK(r.code == 1);
    CHECK(r.err.find("line 3") != std::string::npos);
    std::remove(bad.c_str());
}

TEST_CASE("exit code 2 for precondition violations") {
    std::string z = temp_file("zero_cycle.quiver", "quiver z\nvertex v\narrow x : v -> v deg 1\n");
    CHECK(run({"koszul", z, "--degree", "0"}).code == 2);
    CHECK(run({"census", z}).code == 2);
    std::remove(z.c_str());
}

TEST_CASE("cover writes deterministic DOT output") {
    CliResult a = run({"cover", fixture_path("kronecker_graded"), "--kind", "P", "--window",
                       "-2:2", "--dot", "-"});
    CliResult b = run({"cover", fixture_path("kronecker_graded"), "--kind", "P", "--window",
                       "-2:2", "--dot", "-"});
    CHECK(a.code == 0);
    CHECK(a.out == b.out);
    CHECK(a.out.find("digraph") == 0);
}

TEST_CASE("cover builds Qtilde windows with an explicit base and slack") {
    CliResult r = run({"cover", fixture_path("kronecker_graded"), "--kind", "tilde", "--window",
                       "-2:2", "--base", "2", "--slack", "8", "--json"});
    CHECK(r.code == 0);
    CHECK(r.out.find("\"deck_step\": 2") != std::string::npos);
    CHECK(r.out.find("\"2@0\"") != std::string::npos);
    CHECK(run({"cover", fixture_path("kronecker_graded"), "--kind", "tilde", "--base", "zz"})
              .code == 1);
}

TEST_CASE("census human and machine output") {
    CliResult human = run({"census", fixture_path("loop")});
    CHECK(human.code == 0);
    CHECK(human.out.find("QtildeOp: 1") != std::string::npos);
    CliResult machine = run({"census", fixture_path("loop"), "--json"});
    CHECK(machine.out.find("\"shape\": \"QtildeOp\"") != std::string::npos);
}

TEST_CASE("hom command with the brute-force cross-check") {
    std::string x = temp_file("x.json", R"({
      "quiver": "a2", "field": {"kind": "Q"},
      "window": {"kind": "P", "jmin": -3, "jmax": 3},
      "dims": {"1@0": 1}, "maps": {}, "shift": 0})");
    std::string y = temp_file("y.json", R"({
      "quiver": "a2", "field": {"kind": "Q"},
      "window": {"kind": "P", "jmin": -3, "jmax": 3},
      "dims": {"2@1": 1}, "maps": {}, "shift": 1})");
    CliResult r = run({"hom", fixture_path("a2"), x, y, "--brute", "4"});
    CHECK(r.code == 0);
    CHECK(r.out.find("\"orbit_hom\": 1") != std::string::npos);
    CHECK(r.out.find("\"brute\": 1") != std::string::npos);
    CHECK(r.out.find("\"agree\": true") != std::string::npos);
    std::remove(x.c_str());
    std::remove(y.c_str());
}

TEST_CASE("knit reports clean vertex counts and verify passes on fixtures") {
    CliResult knit = run({"knit", fixture_path("a2"), "--steps", "3", "--window", "-2:2"});
    CHECK(knit.code == 0);
    CHECK(knit.out.find("clean") != std::string::npos);
    CliResult verify = run({"verify", fixture_path("a2"), "--max-len", "3"});
    CHECK(verify.code == 0);
    CHECK(verify.out.find("PASS walk_bijection") != std::string::npos);
}

TEST_CASE("repeated runs are byte identical") {
    for (const char* cmd : {"analyze", "census"}) {
        CliResult a = run({cmd, fixture_path("jordan_deg_minus1"), "--json"});
        CliResult b = run({cmd, fixture_path("jordan_deg_minus1"), "--json"});
        CHECK(a.out == b.out);
    }
}
