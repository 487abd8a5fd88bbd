#include <doctest.h>

#include <cmath>

#include "pdclust/decomposition.hpp"

using namespace pdc;

namespace {

MetricInstance line(std::vector<double> xs, std::vector<double> ys) {
    std::vector<std::vector<double>> X, Y;
    for (double x : xs) X.push_back({x});
    for (double y : ys) Y.push_back({y});
    return MetricInstance::euclidean(X, Y);
}

MetricInstance random_plane(std::uint64_t seed, int n, int m) {
    Rng rng(seed);
    std::vector<std::vector<double>> X, Y;
    for (int i = 0; i < n; ++i) X.push_back({std::round(rng.uniform(0, 64) * 100) / 100, std::round(rng.uniform(0, 64) * 100) / 100});
    for (int i = 0; i < m; ++i) Y.push_back({std::round(rng.uniform(0, 64) * 100) / 100, std::round(rng.uniform(0, 64) * 100) / 100});
    auto inst = MetricInstance::euclidean(X, Y);
    inst.ddim_hint_clients = 2;
    inst.ddim_hint_facilities = 2;
    inst.finalize();
    return inst;
}

}  // namespace

TEST_CASE("single point gives a chain of singletons") {
    auto inst = line({}, {7});
    Decomposition d = build_talwar(inst, Side::Facility, {});
    for (int l = 0; l <= d.L; ++l) {
        REQUIRE(d.levels[static_cast<std::size_t>(l)].size() == 1);
        CHECK(d.clusters[static_cast<std::size_t>(d.levels[static_cast<std::size_t>(l)][0])].members == std::vector<int>{0});
    }
    CHECK(cut_level_gids(d, {0}) == kNeverCut);
}

TEST_CASE("two point golden fixture") {
    auto inst = line({}, {0, 1});
    DecompParams p;
    p.alpha = 0.75;
    p.seed = 3;
    Decomposition d = build_talwar(inst, Side::Facility, p);
    CHECK(d.levels[0].size() == 2);
    for (int l = 1; l <= d.L; ++l) CHECK(d.levels[static_cast<std::size_t>(l)].size() == 1);
    CHECK(cut_level(d, {facility(0), facility(1)}) == 0);
    CHECK(cut_level(d, {facility(0)}) == kNeverCut);
    // threshold log2(diam * ddim / eps) = 0 when eps = 1
    CHECK(is_badly_cut(d, facility(0), 1.0, 1.0));
    CHECK_FALSE(is_badly_cut(d, facility(0), 0.0, 0.25));
    CHECK_FALSE(is_badly_cut(d, facility(0), 1.0, 1e-3));
    CHECK_THROWS_AS(cut_level(d, {client(0)}), IdOutOfRange);
}

TEST_CASE("two points are separated at level 0 for every seed") {
    auto inst = line({}, {0, 1});
    for (std::uint64_t s = 0; s < 50; ++s) {
        DecompParams p;
        p.seed = s;
        Decomposition d = build_talwar(inst, Side::Facility, p);
        CHECK(d.params.alpha > 0.5);
        CHECK(d.params.alpha < 1.0);
        CHECK(d.levels[0].size() == 2);
    }
}

TEST_CASE("root never cuts") {
    auto inst = random_plane(4, 0, 20);
    Decomposition d = build_talwar(inst, Side::Facility, {});
    CHECK(cut_level_gids(d, d.universe) <= d.L - 1);
}

TEST_CASE("talwar invariants on random instances") {
    for (std::uint64_t s = 0; s < 20; ++s) {
        auto inst = random_plane(100 + s, 5, 25);
        DecompParams p;
        p.seed = s;
        p.rho = 0.125;
        Decomposition d = build_talwar(inst, Side::Facility, p);
        auto bad = check_decomposition(d);
        CHECK(bad.empty());
        std::vector<int> perm = d.params.permutation;
        std::sort(perm.begin(), perm.end());
        for (std::size_t i = 0; i < perm.size(); ++i) CHECK(perm[i] == static_cast<int>(i));
        for (const auto& c : d.clusters) CHECK(c.children.size() <= 64);
    }
}

TEST_CASE("empty side rejected") {
    auto inst = line({1}, {});
    CHECK_THROWS_AS(build_talwar(inst, Side::Facility, {}), EmptyDomain);
    CHECK_THROWS_AS(build_ornament_decomposition(line({}, {1}), {}), EmptyDomain);
}

TEST_CASE("ornament levels") {
    DecompParams p;
    p.rho = 0.25;
    p.exact_ann = true;
    {
        auto inst = line({0}, {0.5});
        Decomposition d = build_ornament_decomposition(inst, p);
        CHECK(d.ornament_level.at(1) == 0);
        int orn = d.cluster_at(1, 0);
        REQUIRE(orn >= 0);
        CHECK(d.clusters[static_cast<std::size_t>(orn)].is_ornament);
        CHECK(d.clusters[static_cast<std::size_t>(orn)].parent == d.clusters[static_cast<std::size_t>(d.cluster_at(0, 0))].parent);
    }
    {
        auto inst = line({0, 1}, {2});
        Decomposition d = build_ornament_decomposition(inst, p);
        CHECK(d.ornament_level.at(2) == 1);
        CHECK(d.cluster_at(2, 0) == -1);
        CHECK(d.cluster_at(2, 1) >= 0);
    }
    {
        auto inst = line({0, 1}, {1});
        Decomposition d = build_ornament_decomposition(inst, p);
        CHECK(d.ornament_level.at(2) == 0);
    }
}

TEST_CASE("ornament decomposition invariants and portal proximity") {
    for (std::uint64_t s = 0; s < 15; ++s) {
        auto inst = random_plane(200 + s, 20, 10);
        DecompParams p;
        p.seed = s;
        p.rho = 1.0 / 16;
        Decomposition d = build_ornament_decomposition(inst, p);
        CHECK(check_decomposition(d).empty());
        double sq = std::sqrt(p.rho);
        for (auto [y, h] : d.ornament_level) {
            if (h >= d.L - 1) continue;
            for (int l = h + 1; l <= d.L; ++l) {
                const Cluster& c = d.clusters[static_cast<std::size_t>(d.cluster_at(y, l))];
                double best = kInf;
                for (int q : c.portals) best = std::min(best, inst.dist(y, q));
                CHECK(best <= 2 * sq * d.scale(l) + 1e-9);
            }
        }
        auto j = decomposition_to_json(d);
        CHECK(j["clusters"].size() == d.clusters.size());
    }
}
