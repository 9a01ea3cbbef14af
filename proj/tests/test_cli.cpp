// Contract tests for the installed binary: exit codes, report shapes, and the
// documented worked examples, exercised through a real process boundary.
#include "expoly/io_json.hpp"
#include "expoly/schema.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <sys/wait.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

using namespace expoly;

namespace {

struct RunResult {
    int exit_code = -1;
    std::string out;
};

RunResult run_cli(const std::string& args) {
    const std::string out_path = std::string(EXPOLY_CLI_PATH) + ".test_out";
    const std::string cmd =
        std::string(EXPOLY_CLI_PATH) + " " + args + " > " + out_path + " 2>&1";
    int status = std::system(cmd.c_str());
    RunResult r;
    r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    std::ifstream in(out_path);
    std::stringstream buf;
    buf << in.rdbuf();
    r.out = buf.str();
    std::remove(out_path.c_str());
    return r;
}

Json load_schema(const std::string& name) {
    std::ifstream in(std::string(EXPOLY_SCHEMA_DIR) + "/" + name);
    REQUIRE(in.good());
    return Json::parse(in);
}

const char* kSpec = R"({"d": 1, "pairs": [{"b": [["1"]], "c": [["1"]]},
                                          {"b": [["1"]], "c": [["2"]]}]})";
const char* kSolution = R"({"f": ["x1^2", "x1"]})";
const char* kSubspace = R"({"basis": ["1", "x1", "x1^2"]})";

std::string q(const std::string& s) { return "'" + s + "'"; }

}  // namespace

TEST_CASE("exit codes: pass, check failure, malformed input") {
    CHECK(run_cli("validate --spec " + q(kSpec) + " --profile thm2.2").exit_code == 0);
    auto fail = run_cli("check --kind frechet --f 'x1^3' --order 3");
    CHECK(fail.exit_code == 1);
    CHECK(fail.out.find("6") != std::string::npos);  // the residual is printed
    CHECK(run_cli("validate --spec '{\"d\": 1}'").exit_code == 2);
    CHECK(run_cli("validate --spec /no/such/file.json").exit_code == 2);
    CHECK(run_cli("check --kind frechet --f 'x1^^'").exit_code == 2);
    CHECK(run_cli("frobnicate").exit_code == 2);  // unknown subcommand
}

TEST_CASE("validate emits a schema-conforming report") {
    auto r = run_cli("--json validate --spec " + q(kSpec));
    CHECK(r.exit_code == 0);
    Json doc = Json::parse(r.out);
    CHECK(schema_violations(doc, load_schema("hypothesis_report.json")).empty());
    CHECK(doc["pass"] == true);

    auto bad = run_cli("--json validate --spec "
                       R"('{"d": 1, "pairs": [{"b": [["1"]], "c": [["1"]]},
                                              {"b": [["1"]], "c": [["1"]]}]}')");
    CHECK(bad.exit_code == 1);
    Json bad_doc = Json::parse(bad.out);
    CHECK(schema_violations(bad_doc, load_schema("hypothesis_report.json")).empty());
    CHECK(bad_doc["pass"] == false);
}

TEST_CASE("separate and verify round trip through the process boundary") {
    auto sep = run_cli("--json separate --spec " + q(kSpec) + " --solution " + q(kSolution));
    CHECK(sep.exit_code == 0);
    Json sep_doc = Json::parse(sep.out);
    CHECK(schema_violations(sep_doc, load_schema("separation.json")).empty());
    CHECK(sep_doc["n"] == 3);
    CHECK(sep_doc["reconstruction_exact"] == true);

    auto ok = run_cli("--json verify --spec " + q(kSpec) + " --solution " + q(kSolution) +
                      " --w " + q(kSubspace));
    CHECK(ok.exit_code == 0);
    CHECK(schema_violations(Json::parse(ok.out), load_schema("membership_verdict.json")).empty());

    auto fail = run_cli("--json verify --spec " + q(kSpec) + " --solution " + q(kSolution) +
                        R"( --w '{"basis": ["1", "x1"]}')");
    CHECK(fail.exit_code == 1);
    Json fail_doc = Json::parse(fail.out);
    CHECK(schema_violations(fail_doc, load_schema("membership_verdict.json")).empty());
    CHECK(fail_doc["witness"]["residual"] == "x1^2");
}

TEST_CASE("reduce prints the step table and a schema-conforming chain") {
    auto table = run_cli("reduce --spec " + q(kSpec) + " --solution " + q(kSolution) +
                         " --w " + q(kSubspace));
    CHECK(table.exit_code == 0);
    CHECK(table.out.find("step") != std::string::npos);
    CHECK(table.out.find("pivot") != std::string::npos);
    CHECK(table.out.find("dim(W)") != std::string::npos);
    CHECK(table.out.find("max_deg") != std::string::npos);

    auto j = run_cli("--json reduce --spec " + q(kSpec) + " --solution " + q(kSolution) +
                     " --w " + q(kSubspace));
    CHECK(j.exit_code == 0);
    Json chain = Json::parse(j.out);
    CHECK(schema_violations(chain, load_schema("reduction_chain.json")).empty());
    REQUIRE(chain["steps"].size() == 1);
    CHECK(chain["steps"][0]["dim_w"] == 3);
}

TEST_CASE("check subcommand covers every kind") {
    CHECK(run_cli("--json check --kind kakutani --f 'x1^2 - x2^2' --N 4").exit_code == 0);
    CHECK(run_cli("--json check --kind kakutani --f 'x1^2 + x2^2' --N 4").exit_code == 1);
    CHECK(run_cli("--json check --kind wilson --alphas '[\"1\",\"1\"]' --betas "
                  "'[\"1\",\"-1\"]' --f 'x1^2' --f 'x1^2'")
              .exit_code == 0);
    CHECK(run_cli("--json check --kind skitovich --spec "
                  R"('{"d": 1, "pairs": [{"b": [["1"]], "c": [["1"]]},
                                         {"b": [["1"]], "c": [["-1"]]}]}')"
                  " --solution '{\"f\": [\"x1^2\", \"x1^2\"]}'")
              .exit_code == 0);
    auto go = run_cli("--json check --kind ghurye-olkin --go-spec "
                      R"('{"d": 1, "c": [[["1"]], [["2"]]], "r": 4, "s": 4}')"
                      " --solution '{\"f\": [\"x1^4\", \"x1^2\"]}'");
    CHECK(go.exit_code == 0);
    Json go_doc = Json::parse(go.out);
    CHECK(schema_violations(go_doc, load_schema("check_report.json")).empty());
    CHECK(go_doc["kind"] == "ghurye-olkin");
}

TEST_CASE("fit and residual emit schema-conforming reports") {
    auto f = run_cli("--json fit --f '2*exp(x1) + x1' --freq '[[\"0\"], [\"1\"]]' "
                     "--degree '[1, 0]' --grid 40");
    CHECK(f.exit_code == 0);
    Json fit_doc = Json::parse(f.out);
    CHECK(schema_violations(fit_doc, load_schema("fit_report.json")).empty());
    CHECK(fit_doc["fitted"] == "x1 + 2*exp(x1)");

    auto r3 = run_cli("--json residual --spec " + q(kSpec) + " --solution " + q(kSolution) +
                      " --n 3 --grid 12");
    CHECK(r3.exit_code == 0);
    CHECK(schema_violations(Json::parse(r3.out), load_schema("residual_report.json")).empty());
    CHECK(run_cli("residual --spec " + q(kSpec) + " --solution " + q(kSolution) +
                  " --n 2 --grid 12")
              .exit_code == 1);
}

TEST_CASE("closure emits dimension and basis") {
    auto r = run_cli("--json closure --f 'x1^2 + exp(2*x1)'");
    CHECK(r.exit_code == 0);
    Json doc = Json::parse(r.out);
    CHECK(schema_violations(doc, load_schema("closure_report.json")).empty());
    CHECK(doc["dimension"] == 4);
}
