#include <doctest.h>

#include "fixtures.hpp"
#include "pdclust/io.hpp"
#include "pdclust/metric.hpp"
#include "pdclust/oracle.hpp"

using namespace pdc;

namespace {

MetricInstance line(std::vector<double> xs, std::vector<double> ys) {
    std::vector<std::vector<double>> X, Y;
    for (double x : xs) X.push_back({x});
    for (double y : ys) Y.push_back({y});
    return MetricInstance::euclidean(X, Y);
}

}  // namespace

TEST_CASE("single point euclidean instance loads") {
    auto inst = load_instance(nlohmann::json::parse(R"({"kind":"euclidean","clients":[[0]],"facilities":[[0]],"ddim_hint_clients":1,"ddim_hint_facilities":1})"));
    CHECK(inst.n() == 1);
    CHECK(inst.m() == 1);
    CHECK(inst.distance(client(0), facility(0)) == 0.0);
}

TEST_CASE("matrix instance distance") {
    auto inst = load_instance(nlohmann::json::parse(R"({"kind":"matrix","clients":1,"facilities":1,"matrix":[[0,1],[1,0]],"ddim_hint_clients":1,"ddim_hint_facilities":1})"));
    CHECK(inst.distance(client(0), facility(0)) == 1.0);
}

TEST_CASE("asymmetric matrix rejected") {
    auto doc = nlohmann::json::parse(R"({"kind":"matrix","clients":1,"facilities":1,"matrix":[[0,1],[2,0]],"ddim_hint_clients":1,"ddim_hint_facilities":1})");
    CHECK_THROWS_AS(load_instance(doc), AsymmetricMatrix);
}

TEST_CASE("opening costs must be positive") {
    auto doc = nlohmann::json::parse(R"({"kind":"euclidean","clients":[[0]],"facilities":[[0]],"opening_costs":[0],"ddim_hint_clients":1,"ddim_hint_facilities":1})");
    CHECK_THROWS_AS(load_instance(doc), NonPositiveOpeningCost);
}

TEST_CASE("dimension mismatch rejected") {
    auto doc = nlohmann::json::parse(R"({"kind":"euclidean","clients":[[0,1]],"facilities":[[0]],"ddim_hint_clients":1,"ddim_hint_facilities":1})");
    CHECK_THROWS_AS(load_instance(doc), DimensionMismatch);
}

TEST_CASE("euclidean and frechet distances") {
    auto inst = line({0}, {3});
    CHECK(inst.distance(client(0), facility(0)) == 3.0);
    CHECK(inst.distance(client(0), client(0)) == 0.0);
    CHECK_THROWS_AS(inst.distance(client(1), facility(0)), IdOutOfRange);
    auto fr = MetricInstance::frechet({Curve::from_series({0, 2})}, {Curve::from_series({1})});
    CHECK(fr.distance(client(0), facility(0)) == derived()["frechet_0_2_vs_1"].get<double>());
}

TEST_CASE("metric axioms on random triples") {
    Rng rng(5);
    std::vector<std::vector<double>> X, Y;
    for (int i = 0; i < 12; ++i) X.push_back({rng.uniform(0, 10), rng.uniform(0, 10)});
    for (int i = 0; i < 8; ++i) Y.push_back({rng.uniform(0, 10), rng.uniform(0, 10)});
    auto inst = MetricInstance::euclidean(X, Y);
    for (int t = 0; t < 1000; ++t) {
        int a = static_cast<int>(rng.below(20)), b = static_cast<int>(rng.below(20)), c = static_cast<int>(rng.below(20));
        CHECK(inst.dist(a, b) == inst.dist(b, a));
        CHECK(inst.dist(a, b) <= inst.dist(a, c) + inst.dist(c, b) + 1e-12);
    }
}

TEST_CASE("greedy net examples") {
    auto inst = line({0, 1, 2, 3}, {});
    Net net = greedy_net(inst, {client(0), client(1), client(2), client(3)}, 1.5);
    std::vector<int> idx;
    for (auto p : net.centers) idx.push_back(p.index);
    CHECK(idx == derived()["net_line_radius_1_5"].get<std::vector<int>>());
    CHECK(greedy_net(inst, {client(2)}, 1.0).centers == std::vector<PointId>{client(2)});
    CHECK(greedy_net(inst, {}, 1.0).centers.empty());
    CHECK_THROWS_AS(greedy_net(inst, {client(0)}, 0.0), InvalidArgument);
}

TEST_CASE("evaluate_cost") {
    auto inst = line({0, 1, 10}, {0, 10});
    Solution s = make_solution(inst, {0, 1}, Objective::KMedian);
    CostReport rep = evaluate_cost(inst, s, Objective::KMedian);
    CHECK(rep.total_cost == derived()["kmedian_small_k2"].get<double>());
    CHECK_FALSE(rep.mismatch);
    CHECK(brute_kmedian(inst, 2).total_cost == rep.total_cost);

    auto one = line({0}, {0});
    one.opening_costs = std::vector<double>{2.0};
    one.finalize();
    CHECK(evaluate_cost(one, make_solution(one, {0}, Objective::FacilityLocation), Objective::FacilityLocation).total_cost == 2.0);

    Solution bad = s;
    bad.open_facilities = {0};
    bad.assignment = {0, 0, 1};
    CHECK_THROWS_AS(evaluate_cost(inst, bad, Objective::KMedian), ClosedFacility);
    Solution tampered = s;
    tampered.total_cost += 1;
    CHECK(evaluate_cost(inst, tampered, Objective::KMedian).mismatch);
}
