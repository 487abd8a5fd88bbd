#include <doctest.h>

#include <sstream>

#include "pdclust/generate.hpp"
#include "pdclust/io.hpp"

using namespace pdc;
using nlohmann::json;

TEST_CASE("euclidean instance round trip") {
    json doc = json::parse(R"({"kind":"euclidean","clients":[[0,0],[1,2]],"facilities":[[3,3]],
        "opening_costs":[1.5],"k":1,"ddim_hint_clients":2,"ddim_hint_facilities":2})");
    MetricInstance inst = load_instance(doc);
    CHECK(inst.n() == 2);
    CHECK(inst.m() == 1);
    CHECK(inst.dim == 2);
    MetricInstance again = load_instance(instance_to_json(inst));
    CHECK(again.client_points == inst.client_points);
    CHECK(again.facility_points == inst.facility_points);
    CHECK(again.opening_costs == inst.opening_costs);
    CHECK(again.k == inst.k);
}

TEST_CASE("matrix and frechet instances load") {
    json m = json::parse(R"({"kind":"matrix","clients":1,"facilities":1,"matrix":[[0,2],[2,0]],
        "ddim_hint_clients":1,"ddim_hint_facilities":1})");
    MetricInstance inst = load_instance(m);
    CHECK(inst.dist(0, 1) == 2.0);
    json bad = m;
    bad["matrix"] = json::parse("[[0,2],[3,0]]");
    CHECK_THROWS_AS(load_instance(bad), AsymmetricMatrix);
    json f = json::parse(R"({"kind":"frechet","clients":[[0,2]],"facilities":[{"dim":1,"vertices":[[1]]}],
        "ddim_hint_clients":1,"ddim_hint_facilities":1})");
    MetricInstance fi = load_instance(f);
    CHECK(fi.dist(0, 1) == 1.0);
}

TEST_CASE("loader rejects malformed input") {
    json doc = json::parse(R"({"kind":"euclidean","clients":[[0,0]],"facilities":[[1]],
        "ddim_hint_clients":1,"ddim_hint_facilities":1})");
    CHECK_THROWS_AS(load_instance(doc), DimensionMismatch);
    doc["facilities"] = json::parse("[[1,1]]");
    doc["opening_costs"] = json::parse("[0]");
    CHECK_THROWS_AS(load_instance(doc), NonPositiveOpeningCost);
    doc.erase("opening_costs");
    doc.erase("ddim_hint_clients");
    CHECK_THROWS_AS(load_instance(doc), InputError);
    CHECK_THROWS_AS(load_instance_file("/nonexistent/instance.json"), InputError);
}

TEST_CASE("solution round trip") {
    Solution s;
    s.open_facilities = {0, 2};
    s.assignment = {2, 0, 0};
    s.connection_cost = 1.25;
    s.opening_cost = 3;
    s.total_cost = 4.25;
    s.seed = 7;
    Solution t = solution_from_json(solution_to_json(s));
    CHECK(t.open_facilities == s.open_facilities);
    CHECK(t.assignment == s.assignment);
    CHECK(t.total_cost == s.total_cost);
    CHECK(t.seed == 7);
}

TEST_CASE("deterministic json text") {
    json j = {{"b", 1.0}, {"a", std::vector<double>{0.1, 2}}, {"c", json::object({{"z", true}})}};
    std::string t = dump_json(j);
    CHECK(t == dump_json(json::parse(t)));
    CHECK(t.find("\"a\"") < t.find("\"b\""));
    CHECK(t.back() == '\n');
    CHECK(format_double(2.0) == "2.0");
    CHECK(std::stod(format_double(0.1)) == 0.1);
}

TEST_CASE("series csv") {
    std::istringstream ok("0,1,2\n3.5\n");
    auto rows = read_series_csv(ok);
    REQUIRE(rows.size() == 2);
    CHECK(rows[0] == Series{0, 1, 2});
    CHECK(rows[1] == Series{3.5});
    std::istringstream back(series_csv(rows));
    CHECK(read_series_csv(back) == rows);
    std::istringstream empty("");
    CHECK(read_series_csv(empty).empty());
    for (const char* bad : {"0,1,\n", "0,,1\n", "0,1\n\n2\n", "0,abc\n", "0,nan\n"}) {
        std::istringstream in(bad);
        CHECK_THROWS_AS(read_series_csv(in), MalformedInput);
    }
}

TEST_CASE("generator is deterministic") {
    for (Family f : {Family::Line, Family::Planar, Family::TwoCluster, Family::FrechetSeries}) {
        GenOptions o;
        o.family = f;
        o.n = 8;
        o.m = 4;
        o.seed = 11;
        o.opening_costs = true;
        Generated a = generate(o);
        Generated b = generate(o);
        if (a.is_series) {
            CHECK(a.series == b.series);
            CHECK(a.series.size() == 8);
        } else {
            CHECK(dump_json(instance_to_json(a.instance)) == dump_json(instance_to_json(b.instance)));
            CHECK(a.instance.n() == 8);
            CHECK(a.instance.m() == 4);
        }
        CHECK(parse_family(family_name(f)) == f);
    }
    GenOptions bad;
    bad.n = 0;
    bad.m = 3;
    CHECK_THROWS_AS(generate(bad), InvalidArgument);
    CHECK_THROWS_AS(parse_family("spiral"), InvalidArgument);
}
