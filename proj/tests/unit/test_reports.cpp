#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "zlab/reports.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>

using namespace zlab;

namespace {

RunConfig cfg(const std::string& verb, std::map<std::string, std::string> v) { return RunConfig{verb, std::move(v)}; }

std::string slurp(const std::filesystem::path& p) {
    std::ifstream f(p);
    std::stringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

}  // namespace

TEST_CASE("config text") {
    auto m = parse_config_text("# comment\nq = 10007\nM=5  # trailing\nname = \"a # b\"\n\n");
    CHECK(m.at("q") == "10007");
    CHECK(m.at("M") == "5");
    CHECK(m.at("name") == "a # b");
    CHECK_THROWS_AS(parse_config_text("q 10"), validation_error);
    CHECK_THROWS_AS(parse_config_text("= 10"), validation_error);
    CHECK_THROWS_AS(load_config_file("/nonexistent/zlab.conf"), std::exception);

    RunConfig c = cfg("x", {{"n", "12"}, {"r", "0.5"}, {"f", "yes"}, {"l", "1, 2,3"}, {"bad", "1x"}});
    CHECK(c.int_value("n") == 12);
    CHECK(c.int_value("missing", 3) == 3);
    CHECK(c.real("r") == 0.5);
    CHECK(c.flag("f"));
    CHECK_FALSE(c.flag("missing"));
    CHECK(c.int_list("l") == std::vector<i64>{1, 2, 3});
    CHECK_THROWS_AS(c.int_value("bad"), validation_error);
    CHECK_THROWS_AS(c.int_value("missing"), validation_error);
}

TEST_CASE("expand and exists reports") {
    Json r = run(cfg("expand", {{"a", "5"}, {"q", "7"}}));
    CHECK(r["schema"] == "zaremba-lab/report");
    CHECK(r["schema_version"] == 1);
    CHECK(r["summary"]["digits"] == Json::array({1, 2, 2}));
    CHECK(r["summary"]["M"] == 2);
    CHECK(r["summary"]["S"] == 5);
    CHECK(r["summary"]["status"] == "ok");

    Json e = run(cfg("exists", {{"q", "10007"}, {"M", "5"}}));
    CHECK(e["summary"]["found"] == true);
    CHECK(e["summary"]["a"].is_number_integer());

    Json n = run(cfg("exists", {{"q", "6"}, {"M", "2"}}));
    CHECK(n["summary"]["found"] == false);

    CHECK_THROWS_AS(run(cfg("expand", {{"a", "5"}})), validation_error);
    CHECK_THROWS_AS(run(cfg("frobnicate", {})), validation_error);
}

TEST_CASE("every verb produces a report") {
    const std::vector<RunConfig> cases{
        cfg("search", {{"q", "97"}, {"M", "3"}}),
        cfg("count", {{"q", "1009"}, {"M", "3"}}),
        cfg("minsum", {{"q-lo", "2"}, {"q-hi", "50"}}),
        cfg("decompose", {{"q", "1009"}, {"M", "3"}}),
        cfg("dimension", {{"M", "3"}, {"t-exp-lo", "4"}, {"t-exp-hi", "8"}}),
        cfg("discrepancy", {{"a", "5"}, {"q", "7"}, {"kh", "true"}}),
        cfg("verify-lemma", {{"name", "roundtrip"}, {"q-max", "50"}}),
        cfg("stats", {{"op", "sigma"}, {"q", "1009"}, {"count", "5"}, {"len", "20"}}),
    };
    for (const auto& c : cases) {
        CAPTURE(c.verb);
        Json r = run(c);
        CHECK(r["config"]["verb"] == c.verb);
        CHECK(r["summary"]["status"] == "ok");
        CHECK(r["items"].is_array());
    }
    CHECK(verbs().size() == 10);
}

TEST_CASE("stats ops") {
    for (std::string op : {"intersect", "sigma", "good", "t-action", "thicken", "equidistributed"}) {
        CAPTURE(op);
        std::map<std::string, std::string> v{{"op", op}, {"q", "9973"}, {"count", "10"}, {"len", "50"}, {"size", "300"}};
        if (op != "equidistributed") v["N"] = "100";
        Json r = run(cfg("stats", v));
        CHECK(r["summary"]["status"] == "ok");
    }
    CHECK_THROWS_AS(run(cfg("stats", {{"op", "nope"}})), validation_error);
}

TEST_CASE("decompose matches the membership oracle") {
    Json r = run(cfg("decompose", {{"q", "10007"}, {"M", "2"}, {"theta", "0.4"}}));
    CHECK(r["summary"]["status"] == "ok");
    CHECK(r["items"].size() > 0);
    CHECK_THROWS_AS(run(cfg("decompose", {{"q", "10007"}, {"M", "2"}, {"theta", "0.7"}})), validation_error);
}

TEST_CASE("determinism and rendering") {
    const RunConfig c = cfg("stats", {{"op", "intersect"}, {"q", "99991"}, {"seed", "7"}});
    const std::string a = render(run(c), "json");
    const std::string b = render(run(c), "json");
    CHECK(a == b);
    Json other = run(cfg("stats", {{"op", "intersect"}, {"q", "99991"}, {"seed", "8"}}));
    CHECK(render(other, "json") != a);

    Json m = run(cfg("minsum", {{"q-lo", "2"}, {"q-hi", "10"}}));
    std::string csv = render(m, "csv");
    std::istringstream in(csv);
    std::string header;
    std::getline(in, header);
    CHECK(header.find("q") == 0);
    int rows = 0;
    for (std::string line; std::getline(in, line);) rows += !line.empty();
    CHECK(rows == 9);

    Json e = run(cfg("expand", {{"a", "5"}, {"q", "7"}}));
    CHECK(render(e, "csv") == "nu,p,q\n0,0,1\n1,1,1\n2,2,3\n3,5,7\n");
    CHECK_THROWS_AS(render(e, "xml"), validation_error);
}

TEST_CASE("atomic writes and search checkpoints") {
    namespace fs = std::filesystem;
    const fs::path dir = fs::temp_directory_path() / "zlab_reports_test";
    fs::remove_all(dir);
    fs::create_directories(dir);

    write_atomic((dir / "r.json").string(), "{}\n");
    CHECK(slurp(dir / "r.json") == "{}\n");
    CHECK_THROWS(write_atomic((dir / "missing" / "r.json").string(), "x"));

    FrontierSearch s(10007, 3);
    s.step(50);
    Json j = checkpoint_json(s);
    FrontierSearch back = checkpoint_load(j);
    CHECK(back.nodes() == s.nodes());
    CHECK(back.found() == s.found());
    CHECK(back.frontier().size() == s.frontier().size());
    Json broken = j;
    broken["kind"] = "other";
    CHECK_THROWS_AS(checkpoint_load(broken), validation_error);

    // interrupted run: a small checkpoint interval leaves a file when stopped early
    const std::string ck = (dir / "search.ckpt").string();
    Json full = run(cfg("search", {{"q", "10007"}, {"M", "3"}}));
    Json resumed;
    {
        FrontierSearch part(10007, 3);
        part.step(200);
        write_atomic(ck, checkpoint_json(part).dump());
        resumed = run(cfg("search", {{"q", "10007"}, {"M", "3"}, {"checkpoint", ck}, {"resume", "true"}, {"checkpoint-every", "100"}}));
    }
    CHECK(resumed["summary"]["count"] == full["summary"]["count"]);
    CHECK(resumed["items"] == full["items"]);
    CHECK_FALSE(fs::exists(ck));
    fs::remove_all(dir);
}

TEST_CASE("lemma catalogue") {
    const auto& cat = lemma_catalog();
    CHECK(cat.size() >= 20);
    for (const auto& l : cat) {
        CHECK_FALSE(l.name.empty());
        CHECK_FALSE(l.statement.empty());
        CHECK(l.default_q_max >= 0);  // 0: the check has its own fixed range
    }
    auto res = verify_lemma("M_crit", 200, 1);
    REQUIRE(res.size() == 2);
    for (auto& r : res) CHECK(r.failures == 0);
    CHECK_THROWS_AS(verify_lemma("no_such_lemma", 10, 1), validation_error);
}
