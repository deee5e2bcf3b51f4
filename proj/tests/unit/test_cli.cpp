#include <doctest.h>

#include "anomalab/serialize.hpp"
#include "commands.hpp"

#include <filesystem>
#include <sstream>

using namespace anomalab;
using namespace anomalab::cli;

namespace {

Scalar sc(long v) { return Scalar(v); }

std::filesystem::path scratch_dir(const std::string& name) {
    auto p = std::filesystem::temp_directory_path() / ("anomalab_test_" + name);
    std::filesystem::remove_all(p);
    return p;
}

}  // namespace

TEST_CASE("series json round trip") {
    QSeries s({sc(1), Scalar::frac(-3, 7), Scalar(mpq_class(1, 2), mpq_class(1, 2), -3)});
    auto j = series_json(s);
    CHECK(j[1] == "-3/7");
    CHECK(series_from_json(j) == s);
    CHECK(series_csv({{"a", s}, {"b", QSeries::constant(sc(2), 1)}}) == "order,a,b\n0,1,2\n1,-3/7,0\n2," + s[2].str() + ",\n");
}

TEST_CASE("cache stores by content") {
    auto dir = scratch_dir("cache");
    Cache c(dir.string());
    Target t = make_target(TargetKind::KP2, {sc(1), sc(2), sc(5)});
    std::string k1 = cache_key(t, 4, 3, "x"), k2 = cache_key(t, 5, 3, "x");
    CHECK(k1 != k2);
    CHECK(Cache::key_hash(k1).size() == 16);
    CHECK(!c.load(k1));
    c.store(k1, nlohmann::json{{"v", 1}});
    REQUIRE(c.load(k1));
    CHECK((*c.load(k1))["v"] == 1);
    CHECK(!c.load(k2));
    std::filesystem::remove_all(dir);
}

TEST_CASE("run configuration validation") {
    RunConfig c;
    c.weights = "1,2,2";
    CHECK_THROWS_AS(resolve_target(c), UsageError);
    c.weights = "1,2";
    CHECK_THROWS_AS(resolve_target(c), UsageError);
    c.weights = "1,2,x";
    CHECK_THROWS_AS(resolve_target(c), UsageError);
    c.weights = "1,2,5";
    c.roots_of_unity = true;
    CHECK_THROWS_AS(resolve_target(c), UsageError);
    RunConfig d;
    d.suites = {"relations", "nope"};
    CHECK_THROWS_AS(validate(d), UsageError);
    RunConfig e;
    e.format = "xml";
    CHECK_THROWS_AS(validate(e), UsageError);
    RunConfig f;
    f.target = "kp3";
    Target t = resolve_target(f);
    CHECK(t.lambda == std::vector<Scalar>{sc(1), sc(2), sc(3), sc(4)});
}

TEST_CASE("compute output") {
    RunConfig c;
    c.order = 12;
    c.series = {"L"};
    auto doc = run_compute(c);
    CHECK(doc["series"]["L"][0] == "1");
    CHECK(doc["series"]["L"][1] == "-9");
    CHECK(doc["series"]["L"][2] == "162");
    CHECK(doc["series"]["L"].size() == 13);
    RunConfig z = c;
    z.order = 0;
    z.series = {"L", "C1", "L1"};
    auto d0 = run_compute(z);
    CHECK(d0["series"]["L"].size() == 1);
    CHECK(d0["series"]["L1"][0] == "2");
    RunConfig k3;
    k3.target = "kp3";
    k3.order = 8;
    k3.series = {"L"};
    auto d3 = run_compute(k3);
    CHECK(d3["series"]["L"][1] == "64");
    CHECK(d3["series"]["L"][2] == "10240");
    // identical configs render identical bytes
    CHECK(render(run_compute(c), "json") == render(run_compute(c), "json"));
    CHECK(render(doc, "csv").rfind("order,L\n0,1\n1,-9\n2,162\n", 0) == 0);
    RunConfig bad = c;
    bad.series = {"nothing"};
    CHECK_THROWS_AS(run_compute(bad), UsageError);
}

TEST_CASE("cached compute matches cold compute") {
    auto dir = scratch_dir("compute");
    RunConfig c;
    c.order = 3;
    c.ztrunc = 3;
    c.graph_sum = true;
    c.genus = 1;
    c.insertions = {1};
    c.ledger = true;
    std::string cold = render(run_compute(c), "json");
    c.cache = dir.string();
    std::string first = render(run_compute(c), "json");
    std::string warm = render(run_compute(c), "json");
    CHECK(cold == first);
    CHECK(cold == warm);
    CHECK(std::distance(std::filesystem::directory_iterator(dir), std::filesystem::directory_iterator{}) == 1);
    std::filesystem::remove_all(dir);
}

TEST_CASE("verify suites") {
    RunConfig c;
    c.order = 6;
    c.ztrunc = 4;
    c.suites = {"relations", "pf", "correlators"};
    nlohmann::json rep;
    CHECK(run_verify(c, rep).empty());
    CHECK(rep["ok"] == true);
    CHECK(rep["suites"]["pf"][0]["residual_order"] == -1);
    std::ostringstream out;
    CHECK(cmd_verify(c, out) == 0);

    RunConfig h;
    h.order = 4;
    h.suites = {"hae"};
    h.solve_constraint = true;
    h.fix = "1,2";
    h.ztrunc = 8;
    CHECK(run_verify(h, rep).empty());

    RunConfig a;
    a.suites = {"admissible"};
    CHECK_THROWS_AS(run_verify(a, rep), UsageError);
    a.target = "kp1";
    a.ztrunc = 4;
    CHECK(run_verify(a, rep).empty());
}

TEST_CASE("weights command") {
    RunConfig c;
    c.solve_constraint = true;
    c.fix = "1,2";
    auto doc = run_weights(c);
    CHECK(doc["target"]["field"] == -3);
    CHECK(doc["solutions"].size() == 2);
    for (const auto& r : doc["constraint_residuals"]) CHECK(r == "0");
    RunConfig z;
    z.roots_of_unity = true;
    auto dz = run_weights(z);
    CHECK(dz["target"]["weights"][0] == "1");
    CHECK(dz["target"]["field"] == -3);
    c.solution = 5;
    CHECK_THROWS_AS(run_weights(c), UsageError);
}
