#include <doctest.h>

#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "divseq/cli.hpp"

using namespace divseq;
using json = nlohmann::json;

namespace {
const std::string specs = DIVSEQ_SPEC_DIR;

CommandResult run(std::initializer_list<std::string> args) { return run_command(std::vector<std::string>(args)); }

std::string temp_spec(const std::string& name, const std::string& body) {
    auto path = std::filesystem::temp_directory_path() / ("divseq_test_" + name + ".spec");
    std::ofstream(path) << body;
    return path.string();
}

std::vector<std::string> lines(const std::string& s) {
    std::vector<std::string> out;
    std::istringstream in(s);
    for (std::string l; std::getline(in, l);) out.push_back(l);
    return out;
}
}  // namespace

TEST_CASE("lucas gen reproduces the printed table") {
    CommandResult r = run({"lucas", "gen", "--spec", specs + "/fib-like.spec", "--n-max", "10", "--format", "text"});
    REQUIRE(r.exit_code == 0);
    auto ls = lines(r.out);
    REQUIRE(ls.size() == 10);
    CHECK(ls[0] == "L_1 = 1");
    CHECK(ls[3] == "L_4 = (T^2 + 3)*(T^4 + 4*T^2 + 5)");
    CHECK(ls[8] == "L_9 = (T^4 + 5*T^2 + 7)*(T^12 + 12*T^10 + 60*T^8 + 161*T^6 + 246*T^4 + 204*T^2 + 73)");

    CommandResult q = run({"lucas", "gen", "--spec", specs + "/quadratic.spec", "--n", "6"});
    CHECK(q.out == "L_6 = 2*T*(T + 1)*(T^2 + 2*T - 2)*(3*T^3 + T^2 - 6)\n");
}

TEST_CASE("structured output contract") {
    CommandResult r = run({"lucas", "gen", "--spec", specs + "/fib-like.spec", "--n-max", "4", "--format",
                           "structured", "--seed", "5"});
    REQUIRE(r.exit_code == 0);
    json j = json::parse(r.out);
    CHECK(j["command"] == "lucas gen");
    CHECK(j["seed"] == 5);
    REQUIRE(j["terms"].size() == 4);
    CHECK(j["terms"][3]["n"] == 4);
    CHECK(j["terms"][3]["factors"][0]["coeffs"] == json::array({"3", "0", "1"}));

    // Every factor printed in text mode appears with identical coefficients.
    for (const auto& t : j["terms"])
        for (const auto& f : t["factors"])
            CHECK(j["text"].get<std::string>().find(f["text"].get<std::string>()) != std::string::npos);

    CommandResult again = run({"lucas", "gen", "--spec", specs + "/fib-like.spec", "--n-max", "4", "--format",
                               "structured", "--seed", "5"});
    CHECK(again.out == r.out);
    CommandResult text = run({"lucas", "gen", "--spec", specs + "/fib-like.spec", "--n-max", "4"});
    CHECK(text.out == j["text"].get<std::string>());
}

TEST_CASE("eds divisor of the split example") {
    CommandResult r = run({"eds", "divisor", "--spec", specs + "/split.spec", "--n", "1", "--format", "structured"});
    REQUIRE(r.exit_code == 0);
    json j = json::parse(r.out);
    const auto& comps = j["divisor"]["components"];
    REQUIRE(comps.size() == 1);
    CHECK(comps[0]["place"] == "u^3 + 2");
    CHECK(comps[0]["order"] == 1);
    CHECK(j["divisor"]["degree"] == 6);

    CommandResult t = run({"eds", "terms", "--spec", specs + "/split.spec", "--n-max", "2"});
    CHECK(lines(t.out)[1] == "D_2P = 2*v*(u^3 + 2)\t[degree 24]");
}

TEST_CASE("eds commands on the other contexts") {
    CommandResult ex = run({"eds", "divisor", "--spec", specs + "/example55.spec", "--n", "1"});
    CHECK(ex.exit_code == 0);
    CHECK(ex.out.rfind("D_1P: degree 0", 0) == 0);

    CommandResult iso = run({"eds", "isogeny", "--spec", specs + "/isogeny-recover.spec", "--n-max", "3",
                             "--format", "structured"});
    REQUIRE(iso.exit_code == 0);
    json j = json::parse(iso.out);
    CHECK(j["isogeny"]["kernel"] == json::array({"12751/5", "101", "1"}));
    CHECK(j["isogeny"]["kernel_recovered"] == true);
    CHECK(j["isogeny"]["decomposition"]["matches"] == true);
    CHECK(j["isogeny"]["magnification"]["violations"] == 0);

    CommandResult red = run({"eds", "reduction-survey", "--spec", specs + "/isogeny.spec", "--x-max", "50",
                             "--format", "structured"});
    REQUIRE(red.exit_code == 0);
    json s = json::parse(red.out);
    CHECK(s["survey"]["rows"][0]["q"] == 2);
    CHECK(s["survey"]["dp"] == json::array({"12751", "505", "5"}));
}

TEST_CASE("exit codes") {
    CHECK(run({"factor", "--expr", "T^4+5T^2+7"}).exit_code == 1);
    CommandResult ok = run({"factor", "--expr", "T^4 + 5*T^2 + 7"});
    CHECK(ok.exit_code == 0);
    CHECK(ok.out == "T^4 + 5*T^2 + 7 = T^4 + 5*T^2 + 7\n");

    CommandResult survey = run({"lucas", "survey", "--spec", specs + "/quadratic.spec", "--q-max", "20"});
    CHECK(survey.exit_code == 2);
    CHECK(survey.out.find("unsupported") != std::string::npos);

    std::string vpart = temp_spec("vpart", "kind = eds\nC.g = u^3 + 1\na6 = 1\nP.x = (0; 1)\nP.y = 1\n");
    CHECK(run({"eds", "divisor", "--spec", vpart}).exit_code == 2);

    std::string torsion = temp_spec("torsion", "kind = eds\na4 = -7\na6 = 6\nP.x = 1\nP.y = 0\n");
    CommandResult t = run({"eds", "terms", "--spec", torsion});
    CHECK(t.exit_code == 1);
    CHECK(t.err.find("torsion") != std::string::npos);

    CHECK(run({"lucas", "gen", "--spec", specs + "/split.spec"}).exit_code == 1);
    CHECK(run({"lucas", "gen", "--spec", "/nonexistent.spec"}).exit_code == 1);
    CHECK(run({"lucas", "gen", "--spec", specs + "/fib-like.spec", "--format", "yaml"}).exit_code == 1);
    CHECK(run({"eds"}).exit_code == 1);
    CHECK(run({"--help"}).exit_code == 0);
    std::string bad = temp_spec("bad", "f = T^2 +\ng = 1\n");
    CommandResult b = run({"lucas", "gen", "--spec", bad});
    CHECK(b.exit_code == 1);
    CHECK(b.err.find("line 1, column 10") != std::string::npos);
}

TEST_CASE("recombination budget maps to exit code 3") {
    // Minimal polynomial of sqrt2 + sqrt3 + ... + sqrt13: 32 quadratic factors modulo every prime.
    std::ifstream in(std::string(DIVSEQ_TEST_DATA_DIR) + "/swinnerton_dyer_6.txt");
    std::string expr;
    std::getline(in, expr);
    REQUIRE(!expr.empty());
    CommandResult r = run_command({"factor", "--expr", expr});
    CHECK(r.exit_code == 3);
    CHECK(r.err.find("resource limit") != std::string::npos);
}
