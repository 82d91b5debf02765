#include <doctest.h>

#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "../tools/cli.hpp"

namespace {

struct CliResult {
    int code = 0;
    std::string out;
    std::string err;
};

CliResult run_cli(const std::vector<std::string>& args) {
    std::ostringstream out;
    std::ostringstream err;
    const int code = abscope::cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

} // namespace

TEST_CASE("gold-check records the kasami counterexample") {
    const CliResult r = run_cli({"gold-check", "--m", "5", "--d", "13", "--format", "json"});
    REQUIRE(r.code == 0);
    const auto arr = nlohmann::json::parse(r.out);
    REQUIRE(arr.is_array());
    const auto& rec = arr.at(0);
    CHECK(rec.at("ab") == true);
    CHECK(rec.at("gold") == false);
    CHECK(rec.at("kasami") == true);
    CHECK(rec.at("three_value") == false);
    CHECK(rec.at("trace_identity") == false);
    CHECK(rec.at("canonical_d") == 11);
}

TEST_CASE("witness reproduces the worked example") {
    const CliResult r = run_cli({"witness", "--m", "23", "--d", "166549", "--format", "json"});
    REQUIRE(r.code == 0);
    const auto obj = nlohmann::json::parse(r.out);
    CHECK(obj.at("witness_bits") == "00000000000101010010101");
    CHECK(obj.at("path") == "line4");
    CHECK(obj.at("verified") == true);
}

TEST_CASE("witness reports gold inputs without a witness") {
    const CliResult r = run_cli({"witness", "--m", "5", "--d", "3", "--format", "json"});
    REQUIRE(r.code == 0);
    const auto obj = nlohmann::json::parse(r.out);
    CHECK(obj.at("trace_identity") == true);
    CHECK(obj.at("witness").is_null());
}

TEST_CASE("verify-all passes at m=5") {
    const CliResult r = run_cli({"verify-all", "--m", "5"});
    CHECK(r.code == 0);
    CHECK(r.out.find("FAIL") == std::string::npos);
    CHECK(r.out.find("ok   gold-iff-three-valued-codim2") != std::string::npos);
}

TEST_CASE("argument errors exit with 1") {
    CHECK(run_cli({"no-such-command"}).code == 1);
    CHECK(run_cli({"gold-check", "--m", "5"}).code == 1);             // missing --d
    CHECK(run_cli({"gold-check", "--m", "5", "--d", "3", "--format", "xml"}).code == 1);
    CHECK(run_cli({"spectrum", "--m", "4", "--d", "99"}).code == 1);  // out of range
    CHECK(run_cli({"field", "--m", "3", "--poly", "0xF"}).code == 1); // reducible
    CHECK(run_cli({"crosscorr", "--m", "4", "--d", "3"}).code == 1);  // gcd(3,15) != 1
    CHECK(run_cli({"ab-scan", "--m", "5", "--checks", "bogus"}).code == 1);
    CHECK(run_cli({"ab-scan", "--m", "5", "--d-range", "9..4"}).code == 1);
}

TEST_CASE("help exits cleanly") {
    const CliResult r = run_cli({"--help"});
    CHECK(r.code == 0);
    CHECK(r.out.find("witness") != std::string::npos);
}

TEST_CASE("field summary respects the modulus override") {
    const CliResult r = run_cli({"field", "--m", "3", "--poly", "0xB", "--format", "json"});
    REQUIRE(r.code == 0);
    const auto obj = nlohmann::json::parse(r.out);
    CHECK(obj.at("modulus") == "0xB");
    CHECK(obj.at("zeta") == 2);
    CHECK(obj.at("trace_ones") == 4);
}

TEST_CASE("spectrum and intersections emit the documented formats") {
    const CliResult spectrum_out =
        run_cli({"spectrum", "--m", "3", "--d", "3", "--format", "json"});
    REQUIRE(spectrum_out.code == 0);
    CHECK(spectrum_out.out == "[0,-4,0,4,0,4,0,4]\n");

    const CliResult csv = run_cli({"spectrum", "--m", "3", "--d", "3", "--format", "csv"});
    CHECK(csv.out.rfind("gamma,coefficient\n", 0) == 0);

    const CliResult hyper =
        run_cli({"intersections", "--m", "5", "--d", "3", "--format", "json"});
    REQUIRE(hyper.code == 0);
    CHECK(hyper.out == "{\"6\":10,\"8\":15,\"10\":6}\n");

    // per pair the four cells read {2, 4, 4, 6} unless all three walsh terms
    // vanish, which happens for C(15,2) = 105 of the 465 pairs
    const CliResult codim =
        run_cli({"intersections", "--m", "5", "--d", "3", "--family", "codim2",
                 "--format", "csv"});
    REQUIRE(codim.code == 0);
    CHECK(codim.out == "size,multiplicity\n2,360\n4,1140\n6,360\n");
}

TEST_CASE("ab-scan csv carries the fixed header") {
    const CliResult r = run_cli({"ab-scan", "--m", "5", "--d-range", "3..5", "--checks",
                                 "ab,gold", "--format", "csv"});
    REQUIRE(r.code == 0);
    CHECK(r.out.rfind("m,d,canonical_d,gcd,linearity,ab,gold,gold_k,kasami,kasami_k,"
                      "three_value,seven_value_set,trace_identity,witness_bits,witness_count,"
                      "witness_path,witness_verified\n",
                      0) == 0);
}

TEST_CASE("crosscorr emits (t,value) rows") {
    const CliResult r = run_cli({"crosscorr", "--m", "3", "--d", "3", "--format", "csv"});
    REQUIRE(r.code == 0);
    CHECK(r.out.rfind("t,value\n0,-5\n", 0) == 0);
}
