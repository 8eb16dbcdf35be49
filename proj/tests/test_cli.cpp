#include <doctest.h>

#include <cwac/cli.hpp>

#include <json.hpp>

#include <cstdio>
#include <fstream>
#include <regex>
#include <sstream>
#include <string>
#include <vector>

using nlohmann::json;

namespace {

struct Run {
    int code;
    std::string out;
    std::string err;
};

Run cli(const std::vector<std::string>& args) {
    std::ostringstream out, err;
    int code = cwac::run_cli(args, out, err);
    return {code, out.str(), err.str()};
}

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    REQUIRE_MESSAGE(in.good(), "missing file: " << path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void spit(const std::string& path, const std::string& data) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    out.write(data.data(), static_cast<std::streamsize>(data.size()));
    REQUIRE(out.good());
}

// Checks an instance against the subset of JSON Schema the shipped files
// use: type, required, properties, items, enum, const, pattern, minimum,
// and $ref into #/definitions.
void check_schema(const json& schema, const json& inst, const json& root, const std::string& at) {
    INFO("at " << at);
    if (schema.contains("$ref")) {
        std::string ref = schema["$ref"].get<std::string>();
        std::string prefix = "#/definitions/";
        REQUIRE(ref.rfind(prefix, 0) == 0);
        check_schema(root["definitions"][ref.substr(prefix.size())], inst, root, at);
        return;
    }
    if (schema.contains("const")) CHECK(inst == schema["const"]);
    if (schema.contains("enum")) {
        bool hit = false;
        for (const json& v : schema["enum"]) hit = hit || inst == v;
        CHECK_MESSAGE(hit, "value not in enum: " << inst.dump());
    }
    if (schema.contains("type")) {
        const std::string t = schema["type"].get<std::string>();
        if (t == "object") CHECK(inst.is_object());
        else if (t == "array") CHECK(inst.is_array());
        else if (t == "string") CHECK(inst.is_string());
        else if (t == "integer") CHECK(inst.is_number_integer());
        else if (t == "number") CHECK(inst.is_number());
        else if (t == "boolean") CHECK(inst.is_boolean());
        else FAIL_CHECK("unknown schema type " << t);
    }
    if (schema.contains("pattern") && inst.is_string()) {
        std::regex re(schema["pattern"].get<std::string>());
        CHECK_MESSAGE(std::regex_search(inst.get<std::string>(), re),
                      "pattern mismatch: " << inst.get<std::string>());
    }
    if (schema.contains("minimum") && inst.is_number())
        CHECK(inst.get<double>() >= schema["minimum"].get<double>());
    if (schema.contains("required") && inst.is_object())
        for (const json& key : schema["required"])
            CHECK_MESSAGE(inst.contains(key.get<std::string>()),
                          "missing required key " << key.get<std::string>());
    if (schema.contains("properties") && inst.is_object())
        for (auto& [key, sub] : schema["properties"].items())
            if (inst.contains(key)) check_schema(sub, inst[key], root, at + "/" + key);
    if (schema.contains("items") && inst.is_array())
        for (std::size_t i = 0; i < inst.size(); ++i)
            check_schema(schema["items"], inst[static_cast<int>(i)], root,
                         at + "[" + std::to_string(i) + "]");
}

void validate(const std::string& schema_file, const json& inst) {
    json schema = json::parse(slurp(std::string(CWAC_SOURCE_DIR) + "/schemas/" + schema_file));
    check_schema(schema, inst, schema, schema_file);
}

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("bound command prints pinned intervals in both forms") {
    Run r = cli({"bound", "--m", "4", "--n", "1", "--w", "2", "--d", "2", "--json"});
    REQUIRE(r.code == 0);
    json j = json::parse(r.out);
    CHECK(j["lower"] == "2");
    CHECK(j["upper"] == "2");
    validate("bound-report.schema.json", j);
    r = cli({"bound", "--m", "4", "--n", "2", "--w", "2", "--d", "2", "--json"});
    REQUIRE(r.code == 0);
    j = json::parse(r.out);
    CHECK(j["lower"] == "8");
    CHECK(j["upper"] == "12");
    validate("bound-report.schema.json", j);
    r = cli({"bound", "--m", "4", "--n", "1", "--w", "2", "--d", "2"});
    REQUIRE(r.code == 0);
    CHECK(r.out.find("in [2, 2]") != std::string::npos);
    CHECK(r.out.find("lower rule:") != std::string::npos);
}

TEST_CASE("oracle command: exact sizes, witnesses, cap refusal") {
    Run r = cli({"oracle", "--m", "4", "--n", "1", "--w", "2", "--d", "2"});
    REQUIRE(r.code == 0);
    json j = json::parse(r.out);
    CHECK(j["exact"] == "2");
    CHECK(j["witness"].size() == 2);
    validate("oracle-result.schema.json", j);

    r = cli({"oracle", "--m", "4", "--n", "1", "--w", "2", "--anticode", "--delta", "1"});
    REQUIRE(r.code == 0);
    j = json::parse(r.out);
    CHECK(j["exact"] == "3");
    CHECK(j["delta"] == 1);
    validate("oracle-result.schema.json", j);

    r = cli({"oracle", "--m", "4", "--n", "2", "--w", "2", "--d", "2", "--cap", "10"});
    CHECK(r.code == 4);
    CHECK(r.err.find("36") != std::string::npos);

    // --d and --anticode are mutually exclusive; one of them is needed
    CHECK(cli({"oracle", "--m", "4", "--n", "1", "--w", "2", "--d", "2", "--anticode",
               "--delta", "1"}).code == 2);
    CHECK(cli({"oracle", "--m", "4", "--n", "1", "--w", "2"}).code == 2);
}

TEST_CASE("table command writes the fixed csv layout") {
    Run r = cli({"table", "--m", "3..4", "--n", "1", "--w", "1..2", "--d", "1..2", "--out",
                 "/tmp/cwac_cli_table.csv"});
    REQUIRE(r.code == 0);
    std::string csv = slurp("/tmp/cwac_cli_table.csv");
    CHECK(csv.rfind("m,n,w,d,lower,upper,lower_rule,upper_rule\n", 0) == 0);
    long lines = 0;
    for (char c : csv) lines += (c == '\n');
    CHECK(lines == 9);  // header + 2*2*2 parameter rows
    CHECK(cli({"table", "--m", "4..3", "--n", "1", "--w", "1", "--d", "1", "--out",
               "/tmp/cwac_cli_bad.csv"}).code == 2);
    CHECK(cli({"table", "--m", "x..y", "--n", "1", "--w", "1", "--d", "1", "--out",
               "/tmp/cwac_cli_bad.csv"}).code == 2);
}

TEST_CASE("construct, encode, decode: files round-trip byte for byte") {
    Run r = cli({"construct", "--m", "6", "--w", "3", "--f", "2", "--n", "3", "--k", "1",
                 "--out", "/tmp/cwac_cli_code.json"});
    REQUIRE(r.code == 0);
    json summary = json::parse(r.out);
    CHECK(summary["e"] == 3);
    CHECK(summary["guarantee_bits"] == 5);
    CHECK(summary["rate"] == "2/18");
    validate("construct-summary.schema.json", summary);
    validate("code.schema.json", json::parse(slurp("/tmp/cwac_cli_code.json")));

    // payload sizes that hit empty, sub-block, exact-block, and spill cases
    for (int size : {0, 1, 3, 16, 129}) {
        std::string payload;
        for (int i = 0; i < size; ++i) payload.push_back(static_cast<char>((i * 211 + 7) & 0xFF));
        spit("/tmp/cwac_cli_payload.bin", payload);
        r = cli({"encode", "--code", "/tmp/cwac_cli_code.json", "--in",
                 "/tmp/cwac_cli_payload.bin", "--out", "/tmp/cwac_cli_enc.json"});
        REQUIRE(r.code == 0);
        json enc = json::parse(slurp("/tmp/cwac_cli_enc.json"));
        CHECK(enc["format"] == "cwac-encoded");
        CHECK(enc["total_bytes"] == size);
        validate("encoded-file.schema.json", enc);
        r = cli({"decode", "--code", "/tmp/cwac_cli_code.json", "--in", "/tmp/cwac_cli_enc.json",
                 "--out", "/tmp/cwac_cli_back.bin"});
        REQUIRE(r.code == 0);
        CAPTURE(size);
        CHECK(slurp("/tmp/cwac_cli_back.bin") == payload);
    }

    // infeasible parameters are refused with exit 2
    CHECK(cli({"construct", "--m", "4", "--w", "2", "--f", "2", "--n", "9", "--k", "1", "--out",
               "/tmp/cwac_cli_nope.json"}).code == 2);
}

TEST_CASE("decode corrects in-guarantee tampering and reports dead blocks") {
    REQUIRE(cli({"construct", "--m", "6", "--w", "3", "--f", "2", "--n", "3", "--k", "1",
                 "--out", "/tmp/cwac_cli_code.json"}).code == 0);
    spit("/tmp/cwac_cli_msg.bin", "hello array codes");
    REQUIRE(cli({"encode", "--code", "/tmp/cwac_cli_code.json", "--in", "/tmp/cwac_cli_msg.bin",
                 "--out", "/tmp/cwac_cli_enc.json"}).code == 0);
    json enc = json::parse(slurp("/tmp/cwac_cli_enc.json"));
    // flip the top bit of the first column of every block: 1 bit per block
    // is far inside the 5-bit guarantee
    for (json& block : enc["blocks"]) {
        std::string hex = block[0].get<std::string>();
        int nib = std::stoi(hex.substr(0, 1), nullptr, 16);
        nib ^= 8;
        char digit[4];
        std::snprintf(digit, sizeof(digit), "%x", nib);
        block[0] = std::string(digit) + hex.substr(1);
    }
    spit("/tmp/cwac_cli_enc_tampered.json", enc.dump());
    Run r = cli({"decode", "--code", "/tmp/cwac_cli_code.json", "--in",
                 "/tmp/cwac_cli_enc_tampered.json", "--out", "/tmp/cwac_cli_fixed.bin"});
    REQUIRE(r.code == 0);
    CHECK(slurp("/tmp/cwac_cli_fixed.bin") == "hello array codes");

    // a code with no outer redundancy cannot absorb an erased column
    REQUIRE(cli({"construct", "--m", "4", "--w", "1", "--f", "1", "--n", "2", "--k", "2",
                 "--out", "/tmp/cwac_cli_dead.json"}).code == 0);
    spit("/tmp/cwac_cli_one.bin", "Z");
    REQUIRE(cli({"encode", "--code", "/tmp/cwac_cli_dead.json", "--in", "/tmp/cwac_cli_one.bin",
                 "--out", "/tmp/cwac_cli_dead_enc.json"}).code == 0);
    json dead = json::parse(slurp("/tmp/cwac_cli_dead_enc.json"));
    dead["blocks"][0][0] = "0";
    spit("/tmp/cwac_cli_dead_enc.json", dead.dump());
    r = cli({"decode", "--code", "/tmp/cwac_cli_dead.json", "--in", "/tmp/cwac_cli_dead_enc.json",
             "--out", "/tmp/cwac_cli_dead_out.bin"});
    CHECK(r.code == 3);
    CHECK(r.err.find("decode failure") != std::string::npos);

    // mismatched code/file parameters are a usage error, not a decode failure
    r = cli({"decode", "--code", "/tmp/cwac_cli_dead.json", "--in", "/tmp/cwac_cli_enc.json",
             "--out", "/tmp/cwac_cli_whatever.bin"});
    CHECK(r.code == 2);
}

TEST_CASE("simulate emits a schema-valid report independent of threads") {
    REQUIRE(cli({"construct", "--m", "6", "--w", "3", "--f", "2", "--n", "3", "--k", "1",
                 "--out", "/tmp/cwac_cli_code.json"}).code == 0);
    Run r = cli({"simulate", "--code", "/tmp/cwac_cli_code.json", "--losses", "3",
                 "--injections", "2", "--trials", "80", "--seed", "11"});
    REQUIRE(r.code == 0);
    json j = json::parse(r.out);
    CHECK(j["trials"] == 80);
    CHECK(j["success"] == 80);  // five corrupted bits sit inside the guarantee
    validate("simulate-results.schema.json", j);
    Run r8 = cli({"simulate", "--code", "/tmp/cwac_cli_code.json", "--losses", "3",
                  "--injections", "2", "--trials", "80", "--seed", "11", "--threads", "8"});
    CHECK(r8.out == r.out);
    Run capped = cli({"simulate", "--code", "/tmp/cwac_cli_code.json", "--losses", "3",
                      "--injections", "2", "--trials", "40", "--seed", "11", "--policy",
                      "capped"});
    REQUIRE(capped.code == 0);
    CHECK(json::parse(capped.out)["spec"]["policy"] == "per-column-capped");
    CHECK(cli({"simulate", "--code", "/tmp/cwac_cli_code.json", "--losses", "3", "--injections",
               "2", "--trials", "80"}).code == 2);  // no --seed
}

TEST_CASE("selftest relays the acceptance verdict") {
    Run r = cli({"selftest"});
    CHECK(r.code == 0);
    CHECK(r.out.find("PASS") != std::string::npos);
    CHECK(r.out.find("FAIL") == std::string::npos);
    CHECK(r.out.find("all criteria passed") != std::string::npos);
}

TEST_CASE("usage errors exit 2 with help text") {
    Run r = cli({"bound", "--m", "4", "--n", "1", "--w", "2", "--d", "2", "--bogus"});
    CHECK(r.code == 2);
    CHECK(r.err.find("Usage") != std::string::npos);
    CHECK(cli({}).code == 2);
    CHECK(cli({"frobnicate"}).code == 2);
    r = cli({"--help"});
    CHECK(r.code == 0);
    CHECK(r.out.find("bound") != std::string::npos);
    CHECK(r.out.find("selftest") != std::string::npos);
}

}  // TEST_SUITE
