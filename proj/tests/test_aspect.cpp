#include <doctest.h>

#include "fixtures.hpp"
#include "pdclust/aspect.hpp"
#include "pdclust/oracle.hpp"
#include "pdclust/verify.hpp"

using namespace pdc;

namespace {

MetricInstance line(std::vector<double> xs, std::vector<double> ys) {
    std::vector<std::vector<double>> X, Y;
    for (double x : xs) X.push_back({x});
    for (double y : ys) Y.push_back({y});
    auto inst = MetricInstance::euclidean(X, Y);
    inst.ddim_hint_clients = 1;
    inst.ddim_hint_facilities = 1;
    inst.finalize();
    return inst;
}

}  // namespace

TEST_CASE("a tight instance stays in one piece") {
    auto inst = line({0, 1, 2}, {0, 2});
    auto set = normalize_aspect_ratio(inst, 0.1);
    REQUIRE(set.pieces.size() == 1);
    CHECK(set.pieces[0].clients.size() == 3);
    CHECK(set.pieces[0].facilities.size() == 2);
    CHECK(set.provenance == instance_hash(inst));
}

TEST_CASE("separated clusters split and costs add up") {
    auto inst = line({0, 1, 1e7, 1e7 + 2}, {0, 1e7});
    inst.opening_costs = std::vector<double>{2, 3};
    inst.finalize();
    auto set = normalize_aspect_ratio(inst, 0.1);
    REQUIRE(set.pieces.size() == 2);
    std::vector<Solution> sols;
    for (const auto& p : set.pieces) sols.push_back(brute_fl(p.inst));
    Solution merged = combine_subinstance_solutions(inst, set, sols, Objective::FacilityLocation);
    CHECK(merged.total_cost == doctest::Approx(3.0 + 5.0));
    CHECK(merged.total_cost == doctest::Approx(brute_fl(inst).total_cost));
}

TEST_CASE("no facilities is rejected") {
    auto inst = MetricInstance::euclidean({{0}}, {});
    CHECK_THROWS_AS(normalize_aspect_ratio(inst, 0.1), NoFacilities);
}

TEST_CASE("budget allocation") {
    auto a = allocate_budgets({{{1, 5}, {2, 3}}, {{1, 4}, {2, 2}}}, 2);
    CHECK(a.cost == derived()["allocation_example"]["cost"].get<double>());
    CHECK(a.budgets == derived()["allocation_example"]["budgets"].get<std::vector<int>>());
    CHECK_THROWS_AS(allocate_budgets({{{1, 5}}, {{1, 4}}}, 1), Infeasible);
}

TEST_CASE("piecewise solutions match direct ones") { CHECK(check_aspect(6, 3).pass); }
