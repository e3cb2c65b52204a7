#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <array>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <string>

#include <json.hpp>

using nlohmann::json;

namespace {

struct RunResult {
    int exit_code = -1;
    std::string output;
};

RunResult run_cli(const std::string& args) {
    std::string cmd = std::string(LIEGCR_CLI_PATH) + " " + args + " 2>/dev/null";
    RunResult r;
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    std::array<char, 4096> buf{};
    std::size_t got = 0;
    while ((got = fread(buf.data(), 1, buf.size(), pipe)) > 0)
        r.output.append(buf.data(), got);
    int status = pclose(pipe);
    r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
}

std::string write_problem(const std::string& name, const std::string& body) {
    std::string path = std::string("/tmp/liegcr_cli_") + name + ".json";
    std::ofstream out(path);
    out << body;
    return path;
}

}  // namespace

TEST_CASE("verdict command with seed echo and byte stability") {
    std::string p = write_problem("swap", R"({"field":{"kind":"Q"},
        "group":{"kind":"GL","n":2},
        "generators":[[["0","1"],["1","0"]]],
        "options":{"seed":5}})");
    RunResult r1 = run_cli("is-gcr " + p);
    CHECK(r1.exit_code == 0);
    json j = json::parse(r1.output);
    CHECK(j["verdict"] == true);
    CHECK(j["seed"] == 5);
    RunResult r2 = run_cli("is-gcr " + p);
    CHECK(r2.output == r1.output);
}

TEST_CASE("schema violations produce pointer diagnostics and exit 3") {
    std::string p = write_problem("badp", R"({"field":{"kind":"GFp","p":6},
        "group":{"kind":"GL","n":2},"generators":[]})");
    RunResult r = run_cli("is-gcr " + p);
    CHECK(r.exit_code == 3);
    json j = json::parse(r.output);
    CHECK(j["pointer"] == "/field/p");

    std::string q = write_problem("badkind", R"({"field":{"kind":"Q"},
        "group":{"kind":"XX","n":2},"generators":[]})");
    CHECK(run_cli("is-gcr " + q).exit_code == 3);

    std::string e = write_problem("badentry", R"({"field":{"kind":"Q"},
        "group":{"kind":"GL","n":2},"generators":[[["0","1"],["1","zz"]]]})");
    RunResult re = run_cli("is-gcr " + e);
    CHECK(re.exit_code == 3);
    CHECK(json::parse(re.output)["pointer"] == "/generators/0/1/1");

    CHECK(run_cli("is-gcr /tmp/liegcr_cli_missing_file.json").exit_code == 3);
}

TEST_CASE("capability refusals exit 4") {
    std::string p = write_problem("ratfunc", R"({"field":
        {"kind":"RatFunc","base":{"kind":"GFp","p":2},"var":"u"},
        "group":{"kind":"GL","n":2},
        "generators":[[["0","u"],["1","0"]]]})");
    RunResult r = run_cli("radical " + p);
    CHECK(r.exit_code == 4);
    CHECK(json::parse(r.output)["capability"] == true);

    std::string o = run_cli("oracle " + write_problem("oraq", R"({"field":{"kind":"Q"},
        "group":{"kind":"GL","n":2},"generators":[]})")).output;
    CHECK(run_cli("oracle /tmp/liegcr_cli_oraq.json").exit_code == 4);
}

TEST_CASE("unknown verdicts exit 2") {
    std::string p = write_problem("quartic", R"({"field":{"kind":"Q"},
        "group":{"kind":"GL","n":4},
        "generators":[[["0","0","0","1"],["1","0","0","1"],["0","1","0","0"],["0","0","1","0"]]]})");
    RunResult r = run_cli("is-gir " + p);
    CHECK(r.exit_code == 2);
    CHECK(json::parse(r.output)["verdict"] == "unknown");
}

TEST_CASE("closure, hull and jordan-closure report bases") {
    std::string p = write_problem("ef", R"({"field":{"kind":"Q"},
        "group":{"kind":"GL","n":2},
        "generators":[[["0","1"],["0","0"]],[["0","0"],["1","0"]]]})");
    json cl = json::parse(run_cli("closure " + p).output);
    CHECK(cl["dim"] == 3);
    json hl = json::parse(run_cli("hull " + p).output);
    CHECK(hl["dim"] == 4);
    std::string b = write_problem("borelq", R"({"field":{"kind":"Q"},
        "group":{"kind":"GL","n":2},
        "generators":[[["1","1"],["0","1"]]]})");
    json jc = json::parse(run_cli("jordan-closure " + b).output);
    CHECK(jc["dim"] == 2);
}

TEST_CASE("semisimplify and uniqueness") {
    std::string p = write_problem("rankone", R"({"field":{"kind":"Q"},
        "group":{"kind":"GL","n":3},
        "generators":[[["1","1","0"],["0","1","0"],["0","0","0"]]]})");
    RunResult r = run_cli("semisimplify " + p);
    CHECK(r.exit_code == 0);
    json j = json::parse(r.output);
    CHECK(j["result"]["certificate"]["verdict"] == true);
    CHECK(j["result"]["image_basis"].size() == 1);

    RunResult u = run_cli("ssimp-unique " + p);
    CHECK(u.exit_code == 0);
    json ju = json::parse(u.output);
    CHECK(ju["value"] == true);
    CHECK(ju.contains("witness"));
}

TEST_CASE("solvable decomposition and char-0 criterion") {
    std::string p = write_problem("uppertri", R"({"field":{"kind":"Q"},
        "group":{"kind":"GL","n":2},
        "generators":[[["1","0"],["0","0"]],[["0","1"],["0","0"]],[["0","0"],["0","1"]]]})");
    json sd = json::parse(run_cli("solvable-decomp " + p).output);
    CHECK(sd["toral_basis"].size() == 2);
    CHECK(sd["nilpotent_basis"].size() == 1);
    json cc = json::parse(run_cli("char0-criterion " + p).output);
    CHECK(cc["gcr"] == false);
    CHECK(cc["adjoint_semisimple"] == false);
    CHECK(cc["radical_toral"] == false);
}

TEST_CASE("instability with an explicit tuple") {
    std::string p = write_problem("nilpair", R"({"field":{"kind":"Q"},
        "group":{"kind":"GL","n":3},
        "generators":[[["0","1","0"],["0","0","0"],["0","0","0"]]],
        "tuple":[[["0","1","0"],["0","0","0"],["0","0","0"]],
                 [["0","0","1"],["0","0","0"],["0","0","0"]]]})");
    RunResult r = run_cli("instability " + p);
    CHECK(r.exit_code == 0);
    json j = json::parse(r.output);
    CHECK(j["verdict"] == true);
    CHECK(j.contains("lambda"));
}

TEST_CASE("plongeability over a function field") {
    std::string p = write_problem("nonpl", R"({"field":
        {"kind":"RatFunc","base":{"kind":"GFp","p":2},"var":"t"},
        "group":{"kind":"PGL","n":2},
        "generators":[[["0","1"],["t","0"]]]})");
    RunResult r = run_cli("plongeable-pgl2 " + p);
    CHECK(r.exit_code == 0);
    CHECK(json::parse(r.output)["verdict"] == false);
}

TEST_CASE("oracle command agrees with the engine") {
    std::string p = write_problem("nilgf2", R"({"field":{"kind":"GFp","p":2},
        "group":{"kind":"GL","n":2},
        "generators":[[["0","1"],["0","0"]]]})");
    RunResult r = run_cli("oracle " + p);
    CHECK(r.exit_code == 0);
    json j = json::parse(r.output);
    CHECK(j["def_based"] == false);
    CHECK(j["delta_cr"] == false);
    CHECK(j["engine"] == false);
    CHECK(j["agreement"] == true);
    CHECK(j["simplices"] == 1);
}

TEST_CASE("papercheck") {
    RunResult all = run_cli("papercheck");
    CHECK(all.exit_code == 0);
    json j = json::parse(all.output);
    CHECK(j["all_pass"] == true);
    CHECK(j["fixtures"].size() >= 10);
    for (const auto& fx : j["fixtures"]) CHECK(fx["pass"] == true);

    RunResult sub = run_cli("papercheck --filter projective");
    CHECK(sub.exit_code == 0);
    CHECK(json::parse(sub.output)["fixtures"].size() == 3);

    CHECK(run_cli("papercheck --filter no-such-fixture").exit_code == 3);
}

TEST_CASE("unused members are echoed as warnings") {
    std::string p = write_problem("warn", R"({"field":{"kind":"Q"},
        "group":{"kind":"GL","n":2},
        "generators":[],"extra":1})");
    json j = json::parse(run_cli("closure " + p).output);
    REQUIRE(j.contains("warnings"));
    CHECK(j["warnings"].size() == 1);
}
