#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstdio>
#include <cstdlib>
#include <string>

#include "json.hpp"

using nlohmann::json;

namespace {

// Exported before main() runs so children see a deterministic default seed.
const int env_ready = [] {
    setenv("GALOIS_SEED", "1234567", 1);
    return 0;
}();

struct RunResult {
    int status = -1;
    std::string out;
};

RunResult run_sh(const std::string& cmd) {
    RunResult r;
    FILE* p = popen((cmd + " 2>/dev/null").c_str(), "r");
    REQUIRE(p != nullptr);
    char buf[4096];
    size_t got;
    while ((got = fread(buf, 1, sizeof buf, p)) > 0) r.out.append(buf, got);
    int rc = pclose(p);
    r.status = WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
    return r;
}

RunResult run(const std::string& args) {
    return run_sh(std::string(GALOIS_CLI_PATH) + " " + args);
}

}  // namespace

TEST_CASE("exit codes") {
    CHECK(env_ready == 0);
    CHECK(run("test 7").status == 0);
    CHECK(run("test 2").status == 0);
    CHECK(run("test 9").status == 1);
    CHECK(run("test 10").status == 1);
    CHECK(run("test abc").status == 2);
    CHECK(run("test 1").status == 2);
    CHECK(run("test 0x").status == 2);
    CHECK(run("nonsense").status == 2);
    CHECK(run("test").status == 2);  // missing argument
}

TEST_CASE("stdin and hex input") {
    RunResult piped = run_sh(std::string("echo 561 | ") + GALOIS_CLI_PATH + " test -");
    CHECK(piped.status == 1);
    CHECK(run("test 0x10001").status == 0);  // 65537
    CHECK(run("test 0X10001").status == 0);
}

TEST_CASE("json transcript is byte-identical for a fixed seed") {
    // A prime above the trial-division ceiling, so random streams really run.
    const char* args = "test 4294967311 --seed 42 --json";
    RunResult a = run(args);
    RunResult b = run(args);
    CHECK(a.status == 0);
    CHECK(a.out == b.out);
    CHECK(!a.out.empty());
    json j = json::parse(a.out);
    CHECK(j["verdict"] == "probable_prime");
    CHECK(j["seed"] == 42);
}

TEST_CASE("json schema for a composite with evidence") {
    RunResult r = run("test 1105 --seed 5 --json");
    CHECK(r.status == 1);
    json j = json::parse(r.out);
    CHECK(j["n"] == "1105");
    CHECK(j["lambda"] == 64);
    CHECK(j["verdict"] == "composite");
    CHECK(j["decided_by"] == "trial_division");
    CHECK(j["seed"] == 5);
    CHECK(j["evidence"]["kind"] == "small_factor");
    CHECK(j["evidence"]["factor"] == "5");
    CHECK(j.count("params") == 1);
    CHECK(j.count("timings") == 0);  // only with --timings

    RunResult t = run("test 1105 --seed 5 --json --timings");
    json jt = json::parse(t.out);
    CHECK(jt.count("timings") == 1);
    CHECK(jt["timings"].size() > 0);

    RunResult p = run("test 65537 --seed 3 --json");
    json jp = json::parse(p.out);
    CHECK(jp["verdict"] == "probable_prime");
    CHECK(jp["decided_by"] == "certainly_prime");
    CHECK(jp.count("evidence") == 0);
}

TEST_CASE("seed falls back to the environment") {
    RunResult r = run("test 1105 --json");
    json j = json::parse(r.out);
    CHECK(j["seed"] == 1234567);
}

TEST_CASE("params table and fallback notice") {
    RunResult r = run("params --bits 1024 --lambda 512");
    CHECK(r.status == 0);
    CHECK(r.out.find("fallback: 256 Miller-Rabin tests") != std::string::npos);
    CHECK(r.out.find("129") != std::string::npos);

    RunResult j = run("params --bits 1024 --lambda 512 --json");
    json pj = json::parse(j.out);
    CHECK(pj["selected"]["fallback"] == true);
    CHECK(pj["selected"]["r"] == "256");
    bool found = false;
    for (const auto& c : pj["candidates"])
        if (c["d_cyc"] == "1" && c["d_kum"] == "15" && c["r"] == "129") found = true;
    CHECK(found);

    CHECK(run("params").status == 2);  // neither n nor --bits
}

TEST_CASE("crossover csv") {
    RunResult r = run("crossover");
    CHECK(r.status == 0);
    CHECK(r.out.rfind("bits,lambda_star\n", 0) == 0);
    CHECK(r.out.find("512,45\n") != std::string::npos);
    CHECK(r.out.find("8192,43\n") != std::string::npos);

    RunResult one = run("crossover --bits 1024");
    CHECK(one.out == "bits,lambda_star\n1024,45\n");
    CHECK(run("crossover --bits oops").status == 2);
}

TEST_CASE("density mr prints the bare liar fraction") {
    RunResult mr = run("density mr 65");
    CHECK(mr.status == 0);
    CHECK(mr.out == "1/8\n");
    CHECK(run("density mr 64").status == 2);     // even
    CHECK(run("density mr 10007").status == 2);  // prime
    CHECK(run("density mr 200001").status == 2); // above the exhaustive limit
}

TEST_CASE("density model compares formula and brute force") {
    RunResult model = run("density model --n 35 --inert");
    CHECK(model.status == 0);
    CHECK(model.out.find("formula = 1/48") != std::string::npos);
    CHECK(model.out.find("brute force = 1/48") != std::string::npos);
    CHECK(model.out.find("EQUAL") != std::string::npos);
    CHECK(model.out.find("DIFFER") == std::string::npos);

    // 5^9 overflows the per-prime field table.
    CHECK(run("density model --n 5 --inert --d 9").status == 2);

    RunResult spec = run("density model --spec 5:2:1:1,7:2:1:1 --d 2 --json");
    CHECK(spec.status == 0);
    json sj = json::parse(spec.out);
    CHECK(sj["n"] == "35");
    CHECK(sj["equal"] == true);
    CHECK(sj["formula"] == "1/48");
    CHECK(sj["brute_force"] == "1/48");
}

TEST_CASE("test subcommand prints replayed evidence") {
    RunResult r = run("test 561 --seed 4");
    CHECK(r.status == 1);
    CHECK(r.out.find("composite") != std::string::npos);
    CHECK(r.out.find("small_factor") != std::string::npos);
    CHECK(r.out.find("replay: confirmed") != std::string::npos);
}
