#include <doctest.h>

#include "fixtures.hpp"
#include "pdclust/oracle.hpp"

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

TEST_CASE("brute k-median and facility location") {
    auto inst = line({0, 1, 10}, {0, 10});
    CHECK(brute_kmedian(inst, 2).total_cost == derived()["kmedian_small_k2"].get<double>());
    CHECK(brute_kmedian(inst, 1).total_cost == derived()["kmedian_small_k1"].get<double>());
    auto fl = line({0}, {0, 1});
    fl.opening_costs = std::vector<double>{5, 1};
    fl.finalize();
    Solution s = brute_fl(fl);
    CHECK(s.total_cost == derived()["fl_two_facilities"].get<double>());
    CHECK(s.open_facilities == std::vector<int>{1});
}

TEST_CASE("oracle size gates") {
    std::vector<double> ys(40);
    for (int i = 0; i < 40; ++i) ys[static_cast<std::size_t>(i)] = i;
    auto big = line({0, 1, 2}, ys);
    CHECK_THROWS_AS(brute_kmedian(big, 20), TooLarge);
    big.opening_costs = std::vector<double>(40, 1.0);
    big.finalize();
    CHECK_THROWS_AS(brute_fl(big), TooLarge);
    CHECK_THROWS_AS(brute_frechet(Curve::from_series(std::vector<double>(40, 0)), Curve::from_series(std::vector<double>(40, 1))), TooLarge);
}

TEST_CASE("brute frechet and grid (k,l)-median") {
    CHECK(brute_frechet(Curve::from_series({0, 2}), Curve::from_series({1})) == derived()["frechet_0_2_vs_1"].get<double>());
    auto r = brute_klmedian_grid({{0}, {10}}, 1, 1, 5.0);
    CHECK(r.cost == derived()["kl_two_points_k1"].get<double>());
    auto alt = brute_klmedian_grid({{0, 1, 0, 1, 0, 1}}, 1, 1, 0.05);
    CHECK(alt.cost == doctest::Approx(derived()["kl_alternating_k1_l1"].get<double>()));
}
