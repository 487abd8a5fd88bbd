#include <doctest.h>

#include <set>

#include "fixtures.hpp"
#include "pdclust/baseline.hpp"
#include "pdclust/oracle.hpp"
#include "pdclust/verify.hpp"

using namespace pdc;

namespace {

MetricInstance line(std::vector<double> xs, std::vector<double> ys) {
    std::vector<std::vector<double>> X, Y;
    for (double x : xs) X.push_back({x});
    for (double y : ys) Y.push_back({y});
    return MetricInstance::euclidean(X, Y);
}

}  // namespace

TEST_CASE("embed_prime keeps client distances and bounds cross distances") {
    for (int i = 0; i < 20; ++i) {
        MetricInstance inst = corpus_instance(77, i, false);
        MetricInstance e = embed_prime(inst, 0.5, false, true);
        for (int a = 0; a < inst.n(); ++a)
            for (int b = 0; b < inst.n(); ++b) CHECK(e.dist(a, b) == doctest::Approx(inst.dist(a, b)).epsilon(1e-12));
        for (int x = 0; x < inst.n(); ++x)
            for (int y = inst.n(); y < inst.size(); ++y) {
                double d = inst.dist(x, y);
                if (d == 0) continue;
                CHECK(e.dist(x, y) / d >= 1 - 1e-12);
                CHECK(e.dist(x, y) / d <= 6 + 1e-12);
            }
    }
    auto col = line({0, 4}, {4});
    MetricInstance e = embed_prime(col, 0.5, false, true);
    CHECK(e.dist(0, 2) == col.dist(0, 2));
}

TEST_CASE("constant_fl examples") {
    auto one = line({0}, {0});
    one.opening_costs = std::vector<double>{1.0};
    one.finalize();
    CHECK(constant_fl(one).total_cost == 1.0);

    auto two = line({0}, {0, 1});
    two.opening_costs = std::vector<double>{5.0, 1.0};
    two.finalize();
    Solution s = constant_fl(two);
    CHECK(s.open_facilities == std::vector<int>{1});
    CHECK(s.total_cost == derived()["fl_two_facilities"].get<double>());

    auto empty = line({}, {0, 1});
    empty.opening_costs = std::vector<double>{1.0, 1.0};
    empty.finalize();
    Solution e = constant_fl(empty);
    CHECK(e.open_facilities.empty());
    CHECK(e.total_cost == 0.0);
}

TEST_CASE("constant_kmedian examples") {
    auto inst = line({0, 1, 10}, {0, 10});
    CHECK(constant_kmedian(inst, 2).total_cost == derived()["kmedian_small_all_open"].get<double>());
    CHECK(constant_kmedian(inst, 2).total_cost == derived()["kmedian_small_k2"].get<double>());
    Solution one = constant_kmedian(inst, 1);
    CHECK(one.total_cost == derived()["kmedian_small_k1"].get<double>());
    CHECK(one.open_facilities == std::vector<int>{0});
    CHECK_THROWS_AS(constant_kmedian(inst, 0), InvalidArgument);
}

TEST_CASE("baselines stay within 10x of the oracle") {
    for (int i = 0; i < 60; ++i) {
        int k = 0;
        MetricInstance km = corpus_instance(5, i, false, &k);
        CHECK(constant_kmedian(km, k).total_cost <= 10 * brute_kmedian(km, k).total_cost + 1e-9);
        MetricInstance fl = corpus_instance(5, i, true);
        CHECK(constant_fl(fl).total_cost <= 10 * brute_fl(fl).total_cost + 1e-9);
    }
}

TEST_CASE("moved instance: tiny epsilon leaves every client in place") {
    MetricInstance inst = corpus_instance(8, 3, false);
    Solution S = constant_kmedian(inst, 1);
    DecompParams p;
    p.seed = 1;
    Decomposition d = build_talwar(inst, Side::Facility, p);
    MovedInstance mi = build_moved_instance(inst, S, d, S, 1e-9);
    CHECK(mi.bad_clients.empty());
    int total = 0;
    for (int x = 0; x < inst.n(); ++x) CHECK(mi.phi[static_cast<std::size_t>(x)] == x);
    for (auto [g, w] : mi.weights) total += w;
    CHECK(total == inst.n());
}

TEST_CASE("moved instance: clients on S are never moved") {
    auto inst = line({0, 5, 9}, {0, 5, 9, 20});
    Solution S = make_solution(inst, {0, 1, 2}, Objective::KMedian);
    Decomposition d = build_talwar(inst, Side::Facility, {});
    MovedInstance mi = build_moved_instance(inst, S, d, S, 0.25);
    CHECK(mi.bad_clients.empty());
    CHECK(mi.phi == std::vector<int>{0, 1, 2});
}

TEST_CASE("moved instance: bad clients move to their anchors and transport bound holds") {
    int found = 0;
    for (std::uint64_t s = 0; s < 200; ++s) {
        MetricInstance inst = corpus_instance(9, static_cast<int>(s % 40), false);
        Solution S = constant_kmedian(inst, 1);
        DecompParams p;
        p.seed = s;
        bool orn = s % 2 == 1;
        Decomposition d = orn ? build_ornament_decomposition(inst, p) : build_talwar(inst, Side::Facility, p);
        MovedInstance mi = build_moved_instance(inst, S, d, S, 1.0);
        std::set<int> bad(mi.bad_clients.begin(), mi.bad_clients.end());
        found += !bad.empty();
        double moved = 0;
        for (int x = 0; x < inst.n(); ++x) {
            int t = mi.phi[static_cast<std::size_t>(x)];
            if (!bad.count(x)) CHECK(t == x);
            else if (!orn) CHECK(t == mi.anchor[static_cast<std::size_t>(x)]);
            else CHECK(inst.is_client(t));
            moved += inst.dist(x, t);
        }
        // any facility set: cost difference bounded by the total movement
        for (int f = 0; f < inst.m(); ++f) {
            double a = 0, b = 0;
            for (int x = 0; x < inst.n(); ++x) {
                a += inst.dist(x, inst.n() + f);
                b += inst.dist(mi.phi[static_cast<std::size_t>(x)], inst.n() + f);
            }
            CHECK(std::abs(a - b) <= moved + 1e-9);
        }
    }
    CHECK(found > 0);
}
