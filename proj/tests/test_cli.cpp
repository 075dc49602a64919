// End-to-end tests of the qeis binary: spawns the real executable (path in
// the QEIS_BIN environment variable) and checks stdout, stderr routing, exit
// codes, and the machine-readable output formats.
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>

#include "doctest.h"
#include "json.hpp"
#include "qeis/eisenstein.hpp"

using namespace qeis;

namespace {

struct CmdResult {
    int exit_code = -1;
    std::string output;
};

std::string binary_path() {
    const char* p = std::getenv("QEIS_BIN");
    REQUIRE_MESSAGE(p != nullptr, "QEIS_BIN must point at the qeis executable");
    return std::string(p);
}

// Runs `[env_prefix] qeis <args>` through the shell and captures stdout (and
// stderr too when combine_stderr is set).
CmdResult run_cli(const std::string& args, bool combine_stderr = false,
                  const std::string& env_prefix = "") {
    std::string cmd;
    if (!env_prefix.empty()) cmd += env_prefix + " ";
    cmd += "'" + binary_path() + "' " + args;
    cmd += combine_stderr ? " 2>&1" : " 2>/dev/null";
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    CmdResult r;
    char buf[4096];
    size_t got;
    while ((got = fread(buf, 1, sizeof buf, pipe)) > 0) r.output.append(buf, got);
    int status = pclose(pipe);
    r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
}

size_t count_lines(const std::string& s) {
    size_t n = 0;
    for (char ch : s)
        if (ch == '\n') ++n;
    return n;
}

bool has_line(const std::string& text, const std::string& line) {
    std::istringstream in(text);
    std::string cur;
    while (std::getline(in, cur))
        if (cur == line) return true;
    return false;
}

}  // namespace

TEST_CASE("coeffs csv prints exact exponent,coefficient rows") {
    CmdResult r = run_cli("coeffs --object f --k 2 --order 9 --format csv");
    CHECK(r.exit_code == 0);
    CHECK(r.output == "0,-1/24\n2,1\n3,3\n4,5\n5,7\n6,9\n7,10\n8,13\n");
}

TEST_CASE("coeffs json round-trips through the series parser") {
    CmdResult r = run_cli("coeffs --object f --k 2 --order 9 --format json");
    REQUIRE(r.exit_code == 0);
    nlohmann::json j = nlohmann::json::parse(r.output);
    SeriesCache cache;
    QSeries expected = cache.f(2, 9);
    CHECK(qseries_from_json(j) == expected);
    CHECK(j == to_json(expected));
}

TEST_CASE("odd-index zero series succeed with a note on stderr") {
    CmdResult quiet = run_cli("coeffs --object R --k 3 --format csv");
    CHECK(quiet.exit_code == 0);
    CHECK(quiet.output.empty());  // zero series: no rows, note not on stdout
    CmdResult noisy = run_cli("coeffs --object R --k 3 --format csv", /*combine_stderr=*/true);
    CHECK(noisy.exit_code == 0);
    CHECK(noisy.output.find("zero series") != std::string::npos);
}

TEST_CASE("coeffs text output shows the truncated series and its order") {
    CmdResult r = run_cli("coeffs --object g --k 2 --order 9 --format text");
    CHECK(r.exit_code == 0);
    CHECK(r.output.find("-1/24 + q^2 + 3*q^3") != std::string::npos);
    CHECK(r.output.find("truncation order: 9") != std::string::npos);
}

TEST_CASE("the environment default order applies only when --order is absent") {
    CmdResult r = run_cli("coeffs --object f --k 2 --format json", false,
                          "QEIS_DEFAULT_ORDER=5");
    REQUIRE(r.exit_code == 0);
    nlohmann::json j = nlohmann::json::parse(r.output);
    CHECK(j["order"] == "5");
    CmdResult r2 = run_cli("coeffs --object f --k 2 --order 9 --format json", false,
                           "QEIS_DEFAULT_ORDER=5");
    REQUIRE(r2.exit_code == 0);
    CHECK(nlohmann::json::parse(r2.output)["order"] == "9");
    CmdResult bad = run_cli("coeffs --object f --k 2", true, "QEIS_DEFAULT_ORDER=abc");
    CHECK(bad.exit_code == 2);
    CHECK(bad.output.find("usage error") != std::string::npos);
}

TEST_CASE("malformed invocations exit with the usage code") {
    CHECK(run_cli("frobnicate").exit_code == 2);                        // unknown subcommand
    CHECK(run_cli("coeffs --object f --k 2 --bogus").exit_code == 2);   // unknown flag
    CHECK(run_cli("coeffs --k 2").exit_code == 2);                      // missing --object
    CHECK(run_cli("coeffs --object q --k 2").exit_code == 2);           // bad family
    CHECK(run_cli("coeffs --object f --k 2 --format xml").exit_code == 2);
    CHECK(run_cli("coeffs --object f --k 2 --order 0").exit_code == 2);
    CHECK(run_cli("verify --check no_such_check").exit_code == 2);
    CHECK(run_cli("verify").exit_code == 2);                            // no --check / --all
    CHECK(run_cli("verify --check ramanujan --order 0").exit_code == 2);
    CHECK(run_cli("relations --weight 0").exit_code == 2);
    CHECK(run_cli("relations --weight 3").exit_code == 2);              // odd weight
    CHECK(run_cli("relations --weight 4 --max-f-index 1").exit_code == 2);
    CHECK(run_cli("table --object partition").exit_code == 2);
    CHECK(run_cli("verify --check ramanujan --inject-fault G:4:5").exit_code == 2);
    CHECK(run_cli("verify --check ramanujan --inject-fault X:4:5:1").exit_code == 2);
    CHECK(run_cli("verify --check ramanujan --inject-fault G:4:5:0").exit_code == 2);
}

TEST_CASE("verify reports pass and fail states through the exit code") {
    CmdResult ok = run_cli("verify --check ramanujan --order 15");
    CHECK(ok.exit_code == 0);
    CHECK(ok.output.find("[PASS] ramanujan") != std::string::npos);
    CHECK(ok.output.find("1/1 checks passed") != std::string::npos);

    CmdResult broken = run_cli("verify --check ramanujan --order 15 --inject-fault G:4:5:1");
    CHECK(broken.exit_code == 1);
    CHECK(broken.output.find("[FAIL] ramanujan") != std::string::npos);
    CHECK(broken.output.find("q^5") != std::string::npos);

    // the same fault leaves an unrelated identity intact
    CmdResult untouched = run_cli("verify --check bernoulli_exp --inject-fault G:4:5:1");
    CHECK(untouched.exit_code == 0);
}

TEST_CASE("verify json output is a parseable report array") {
    CmdResult r = run_cli("verify --check eta_lemma --check bernoulli_exp --order 10 "
                          "--format json");
    REQUIRE(r.exit_code == 0);
    nlohmann::json j = nlohmann::json::parse(r.output);
    REQUIRE(j.is_array());
    REQUIRE(j.size() == 2);
    CHECK(j[0]["name"] == "eta_lemma");
    CHECK(j[0]["pass"] == true);
    CHECK(j[1]["name"] == "bernoulli_exp");
    CHECK(j[1]["pass"] == true);
}

TEST_CASE("verify --all runs the catalog end to end") {
    CmdResult r = run_cli("verify --all");
    CHECK(r.exit_code == 0);
    CHECK(r.output.find("22/22 checks passed") != std::string::npos);
}

TEST_CASE("verify --list prints the whole catalog") {
    CmdResult r = run_cli("verify --list");
    CHECK(r.exit_code == 0);
    CHECK(count_lines(r.output) == 22);
    CHECK(r.output.rfind("crank_trace\n", 0) == 0);
    CHECK(r.output.find("d_f_examples_deep [non-gating]\n") != std::string::npos);
}

TEST_CASE("relations reports an empty nullspace where no relation exists") {
    CmdResult r = run_cli("relations --weight 4 --order 12");
    REQUIRE(r.exit_code == 0);
    nlohmann::json j = nlohmann::json::parse(r.output);
    CHECK(j["weight"] == 4);
    CHECK(j["order"] == 12);
    REQUIRE(j["monomials"].is_array());
    CHECK(j["monomials"].size() == 5);
    CHECK(j["nullspace"].is_array());
    CHECK(j["nullspace"].empty());
}

TEST_CASE("rank tables come from exact enumeration") {
    CmdResult r = run_cli("table --object rank --max-n 4");
    CHECK(r.exit_code == 0);
    CHECK(has_line(r.output, "0,0,1"));
    CHECK(has_line(r.output, "4,-3,1"));
    CHECK(has_line(r.output, "4,-1,1"));
    CHECK(has_line(r.output, "4,0,1"));
    CHECK(has_line(r.output, "4,1,1"));
    CHECK(has_line(r.output, "4,3,1"));
    CHECK(!has_line(r.output, "5,0,1"));  // respects --max-n
}

TEST_CASE("crank tables include the signed n=1 row") {
    CmdResult r = run_cli("table --object crank --max-n 2");
    CHECK(r.exit_code == 0);
    CHECK(r.output == "0,0,1\n1,-1,1\n1,0,-1\n1,1,1\n2,-2,1\n2,2,1\n");
}

TEST_CASE("--output writes exactly what stdout would have carried") {
    std::string path = "cli_output_check.csv";
    CmdResult direct = run_cli("coeffs --object g_general --k 2 --a 3 --b 2 --order 10 "
                               "--format csv");
    REQUIRE(direct.exit_code == 0);
    CHECK(direct.output == "1,1\n2,4\n3,7\n4,12\n5,13\n6,21\n7,18\n8,28\n9,25\n");
    CmdResult filed = run_cli("coeffs --object g_general --k 2 --a 3 --b 2 --order 10 "
                              "--format csv --output " + path);
    REQUIRE(filed.exit_code == 0);
    CHECK(filed.output.empty());
    std::ifstream in(path);
    REQUIRE(in.good());
    std::stringstream content;
    content << in.rdbuf();
    CHECK(content.str() == direct.output);
    std::remove(path.c_str());
}
