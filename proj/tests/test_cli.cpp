#include <doctest.h>

#include <cstdlib>
#include <fstream>
#include <sstream>

#include "pqg/cli.hpp"
#include "pqg/corep.hpp"

using namespace pqg;

namespace {

const std::string fixtures = PQG_FIXTURES;

struct Run {
    int status;
    std::string out, err;
};

Run run(const std::vector<std::string>& args) {
    std::ostringstream out, err;
    int s = run_cli(args, out, err);
    return {s, out.str(), err.str()};
}

json read_json(const std::string& path) {
    std::ifstream in(path);
    return json::parse(in);
}

std::string temp_path(const std::string& name) { return "/tmp/pqg_test_cli_" + name; }

void write_json(const std::string& path, const json& j) { std::ofstream(path) << j.dump(2); }

}  // namespace

TEST_CASE("parse_spec recognises the fixture types") {
    SpecInput pg = parse_spec(fixtures + "/pairgroupoid3.json");
    REQUIRE(std::holds_alternative<PartialHopfData>(pg));
    CHECK(std::get<PartialHopfData>(pg).dims.size() == 9);
    CHECK(std::holds_alternative<FiberData>(parse_spec(fixtures + "/vecz3.json")));
    SpecInput w = parse_spec(fixtures + "/walk_podles.json");
    REQUIRE(std::holds_alternative<ReciprocalWalk>(w));
    CHECK(std::get<ReciprocalWalk>(w).edges[0].weight == Scalar::parse("5/4"));
}

TEST_CASE("round trip through parse and emit is stable for every fixture") {
    for (auto name : {"pairgroupoid3.json", "vecz2.json", "vecz3.json", "walk_podles.json"}) {
        INFO(name);
        json first = spec_to_json(parse_spec(fixtures + "/" + name));
        json second = spec_to_json(parse_spec_json(first));
        CHECK(first.dump() == second.dump());
    }
}

TEST_CASE("schema errors carry JSON pointers and decimals are rejected") {
    json w = read_json(fixtures + "/walk_podles.json");
    w["edges"][0]["weight"] = "1.25";
    CHECK_THROWS_AS(parse_spec_json(w), Error);
    w["edges"][0]["weight"] = 1.25;
    try {
        parse_spec_json(w);
        FAIL("decimal weight accepted");
    } catch (const Error& e) {
        CHECK(std::string(e.what()).find("/edges/0/weight") != std::string::npos);
    }
    CHECK_THROWS_AS(parse_spec_json(json{{"nothing", 1}}), Error);

    std::string path = temp_path("decimal.json");
    write_json(path, w);
    Run r = run({"walk", path});
    CHECK(r.status == 2);
    CHECK(json::parse(r.out).contains("error"));
}

TEST_CASE("unknown verbs, unknown options and missing mandatory flags are rejected") {
    CHECK(run({"frobnicate"}).status == 2);
    CHECK(run({"verify", fixtures + "/pairgroupoid3.json", "--bogus"}).status == 2);
    CHECK(run({"present", fixtures + "/walk_podles.json"}).status == 2);  // --degree
    Run w = run({"walk", "podles", "--q", "1/2", "--x", "0"});
    CHECK(w.status == 2);
    CHECK(json::parse(w.out)["error"]["code"] == "usage");
    CHECK(run({"walk", "podles", "--q", "1/2", "--window", "-3:3"}).status == 2);  // --x
    CHECK(run({"verify", fixtures + "/pairgroupoid3.json", "--format", "xml"}).status == 2);
}

TEST_CASE("verify on the pair groupoid passes and is byte-stable") {
    Run a = run({"verify", fixtures + "/pairgroupoid3.json"});
    Run b = run({"verify", fixtures + "/pairgroupoid3.json"});
    CHECK(a.status == 0);
    CHECK(a.out == b.out);
    json env = json::parse(a.out);
    CHECK(env["version"] == toolkit_version);
    CHECK(env["summary"]["failed"] == 0);
    CHECK(env["summary"]["passed"].get<size_t>() > 0);
    CHECK(env["result"]["total_dim"] == 9);
}

TEST_CASE("thread cap does not change the output") {
    Run a = run({"corep-report", fixtures + "/vecz3.json"});
    setenv("PQG_THREADS", "1", 1);
    Run b = run({"corep-report", fixtures + "/vecz3.json"});
    unsetenv("PQG_THREADS");
    CHECK(a.status == 0);
    CHECK(a.out == b.out);
}

TEST_CASE("failing report exits nonzero with a witness") {
    json pg = read_json(fixtures + "/pairgroupoid3.json");
    std::string path = temp_path("broken.json");
    json broken = to_json([&] {
        PartialHopfData d = std::get<PartialHopfData>(parse_spec_json(pg));
        d.counit.begin()->second[0] = Scalar(2);
        return d;
    }());
    write_json(path, broken);
    Run r = run({"verify", path});
    CHECK(r.status == 1);
    json env = json::parse(r.out);
    CHECK(env["summary"]["status"] == "fail");
    bool witness = false;
    for (auto& [name, t] : env["report"].items()) witness = witness || !t["witnesses"].empty();
    CHECK(witness);
    Run text = run({"verify", path, "--format", "text"});
    CHECK(text.out.find("witness") != std::string::npos);
}

TEST_CASE("empty report envelope") {
    json env = envelope(json{{"verb", "none"}}, json::object(), Report{});
    CHECK(env["report"] == json::object());
    CHECK(env["version"] == toolkit_version);
    CHECK(env["summary"]["status"] == "pass");
    CHECK(emit(env, "json") == emit(env, "json"));
}

TEST_CASE("walk output feeds present") {
    std::string path = temp_path("walk.json");
    Run w = run({"walk", "podles", "--q", "1/2", "--x", "0", "--window", "-4:4", "-o", path});
    CHECK(w.status == 0);
    json env = read_json(path);
    CHECK(env["report"]["walk.weight-reciprocality"]["failed"] == 0);
    CHECK(env["report"]["conjugate.snake"]["passed"].get<size_t>() > 0);

    Run p = run({"present", path, "--check-hopf", "--colored", "--degree", "2"});
    CHECK(p.status == 0);
    json pe = json::parse(p.out);
    CHECK(pe["result"]["generators"] == 16 * 16);
    CHECK(pe["report"]["hopf.coproduct"]["failed"] == 0);
    CHECK(pe["report"]["colored.adjoint"]["passed"].get<size_t>() > 0);

    SpecInput back = parse_spec(path);
    REQUIRE(std::holds_alternative<ReciprocalWalk>(back));
    CHECK(walk_to_json(std::get<ReciprocalWalk>(back)) == env["result"]["walk"]);
}

TEST_CASE("dynamical present: pass and rejected mutation") {
    Run ok = run({"present", "dynamical", "--q", "1/2", "--x", "0", "--window", "-5:5", "--degree", "2"});
    CHECK(ok.status == 0);
    Run bad = run({"present", "dynamical", "--q", "1/2", "--x", "0", "--window", "-5:5", "--degree", "2",
                   "--claimed-q", "1/4"});
    CHECK(bad.status == 1);
    Run small = run({"present", "dynamical", "--q", "1/2", "--x", "0", "--window", "-2:2", "--degree", "2"});
    CHECK(small.status == 2);
    CHECK(json::parse(small.out)["error"]["code"] == "window-too-small");
}

TEST_CASE("characters on Vec(Z/3): f_0 is the counit") {
    Run r = run({"characters", fixtures + "/vecz3.json", "--z", "-1,0,1,2"});
    CHECK(r.status == 0);
    json env = json::parse(r.out);
    PartialHopfData d = std::get<PartialHopfData>(parse_spec_json(
        json{{"tool", "pqg"}, {"result", json{{"hopf", to_json(reconstruct(std::get<FiberData>(parse_spec(fixtures + "/vecz3.json"))).hopf)}}}}));
    const json& f0 = env["result"]["f"]["0"];
    for (auto& [k, eps] : d.counit) {
        json lits = json::array();
        for (auto& s : eps) lits.push_back(s.str());
        CHECK(f0[d.key(k)] == lits);
    }
    for (auto z : {"-1", "0", "1", "2"}) CHECK(env["result"]["f"].contains(z));
}

TEST_CASE("build-tannaka reports the reconstruction") {
    Run r = run({"build-tannaka", fixtures + "/vecz3.json"});
    CHECK(r.status == 0);
    json env = json::parse(r.out);
    CHECK(env["result"]["total_dim"] == 27);
    CHECK(env["result"]["irreducibles"] == 3);
    // the reconstruction in the envelope parses back as partial Hopf data
    std::string path = temp_path("tannaka.json");
    write_json(path, env);
    Run v = run({"verify", path});
    CHECK(v.status == 0);
    CHECK(run({"build-tannaka", fixtures + "/pairgroupoid3.json"}).status == 2);
}
