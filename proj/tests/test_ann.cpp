#include <doctest.h>

#include "fixtures.hpp"
#include "pdclust/ann.hpp"

using namespace pdc;

namespace {

MetricInstance line(std::vector<double> xs, std::vector<double> ys) {
    std::vector<std::vector<double>> X, Y;
    for (double x : xs) X.push_back({x});
    for (double y : ys) Y.push_back({y});
    return MetricInstance::euclidean(X, Y);
}

double nearest(const MetricInstance& inst, int q, const std::vector<int>& ids) {
    double b = kInf;
    for (int g : ids) b = std::min(b, inst.dist(q, g));
    return b;
}

}  // namespace

TEST_CASE("net tree on two points") {
    auto inst = line({0, 1}, {});
    NetTree t = build_net_tree(inst, Side::Client, 1);
    CHECK(t.L == 4);
    CHECK(t.levels[0] == std::vector<int>{0, 1});
    CHECK(t.levels[2].size() == 2);
    for (int l = 3; l <= 4; ++l) CHECK(t.levels[static_cast<std::size_t>(l)].size() == 1);
}

TEST_CASE("net tree on a singleton and duplicates") {
    auto inst = line({3}, {});
    NetTree t = build_net_tree(inst, Side::Client, 1);
    CHECK(t.levels.back() == std::vector<int>{0});
    auto dup = MetricInstance::explicit_matrix(2, 0, {0, 0, 0, 0});
    CHECK_THROWS_AS(build_net_tree(dup, Side::Client, 1), DuplicatePoints);
}

TEST_CASE("net tree levels are nested nets") {
    Rng rng(11);
    std::vector<std::vector<double>> X;
    for (int i = 0; i < 60; ++i) X.push_back({rng.uniform(0, 50), rng.uniform(0, 50)});
    auto inst = MetricInstance::euclidean(X, {});
    NetTree t = build_net_tree(inst, Side::Client, 2);
    CHECK(t.levels[0].size() == 60);
    for (int l = 0; l <= t.L; ++l) {
        const auto& N = t.levels[static_cast<std::size_t>(l)];
        double r = t.radius(l);
        for (std::size_t a = 0; a < N.size(); ++a)
            for (std::size_t b = a + 1; b < N.size(); ++b) CHECK(inst.dist(N[a], N[b]) >= r);
        for (int p : t.points) CHECK(nearest(inst, p, N) <= r);
        if (l < t.L)
            for (int c : t.levels[static_cast<std::size_t>(l + 1)]) CHECK(std::find(N.begin(), N.end(), c) != N.end());
    }
}

TEST_CASE("ann over doubling data") {
    auto inst = line({0, 10}, {4, 5.0001, 0});
    NetTree t = build_net_tree(inst, Side::Client, 1);
    CHECK(ann_low_dim_data(t, facility(0), 0.25) == client(derived()["ann_line_query4"].get<int>()));
    PointId r = ann_low_dim_data(t, facility(1), 0.01);
    CHECK(inst.distance(facility(1), r) <= 1.01 * 4.9999 + 1e-12);
    CHECK(inst.distance(facility(2), ann_low_dim_data(t, facility(2), 0.1)) == 0.0);
}

TEST_CASE("ann with doubling queries") {
    auto inst = MetricInstance::euclidean({{0, 0}, {5, 5}}, {{0, 3}, {0, 0}, {0, 9}});
    auto idx = ann_low_dim_queries(inst, 0.25);
    auto expect = derived()["ann_plane_query"].get<std::vector<double>>();
    PointId got = idx.query(facility(0));
    CHECK(inst.client_points[static_cast<std::size_t>(got.index)] == expect);
    CHECK(idx.query(facility(1)) == client(0));
    auto single = MetricInstance::euclidean({{1, 1}}, {{0, 3}, {7, 7}});
    auto s = ann_low_dim_queries(single, 0.25);
    CHECK(s.query(facility(0)) == client(0));
    CHECK(s.query(facility(1)) == client(0));
}

TEST_CASE("crude ann examples") {
    auto one = line({2}, {0.4});
    CHECK(crude_linear_ann(build_net_tree(one, Side::Client, 1), facility(0)) == client(0));
    auto two = line({0, 1}, {0.4, 1});
    NetTree t = build_net_tree(two, Side::Client, 1);
    PointId p = crude_linear_ann(t, facility(0));
    CHECK(two.distance(facility(0), p) <= 4 * 0.4);
    CHECK(crude_linear_ann(t, facility(1)) == client(1));
}

TEST_CASE("ann contracts on random trials") {
    for (int trial = 0; trial < 200; ++trial) {
        Rng rng(split_seed(17, 0, static_cast<std::uint64_t>(trial)));
        int n = static_cast<int>(rng.range(1, 100));
        std::vector<std::vector<double>> X, Y;
        for (int i = 0; i < n; ++i) X.push_back({std::round(rng.uniform(0, 100) * 100) / 100, std::round(rng.uniform(0, 100) * 100) / 100});
        for (int i = 0; i < 20; ++i) Y.push_back({rng.uniform(-10, 110), rng.uniform(-10, 110)});
        auto inst = MetricInstance::euclidean(X, Y);
        inst.ddim_hint_clients = 2;
        inst.ddim_hint_facilities = 2;
        inst.finalize();
        std::vector<int> xs = side_ids(inst, Side::Client);
        double eps = rng.uniform(0.01, 0.49);
        NetTree t = build_net_tree(inst, Side::Client, 2);
        CrudeAnnTree crude = build_crude_ann(t);
        auto qidx = ann_low_dim_queries(inst, eps, Side::Client);
        for (int q = 0; q < inst.m(); ++q) {
            int g = inst.n() + q;
            double opt = nearest(inst, g, xs);
            CHECK(inst.dist(g, ann_low_dim_data_gid(t, g, eps)) <= (1 + eps) * opt + 1e-9);
            CHECK(inst.dist(g, qidx.query_gid(g)) <= (1 + eps) * opt + 1e-9);
            CHECK(inst.dist(g, crude_linear_ann_gid(crude, g)) <= 2 * n * opt + 1e-9);
        }
    }
}
