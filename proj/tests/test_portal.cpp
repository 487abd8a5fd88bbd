#include <doctest.h>

#include "fixtures.hpp"
#include "pdclust/portal.hpp"
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

TEST_CASE("portal path distance basics") {
    auto inst = line({}, {0, 1});
    DecompParams p;
    p.alpha = 0.75;
    Decomposition d = build_talwar(inst, Side::Facility, p);
    CHECK(portal_path_distance(d, facility(0), facility(0)) == 0.0);
    CHECK(portal_path_distance(d, facility(0), facility(1)) == 1.0);
}

TEST_CASE("ornament bridge at its own level") {
    auto inst = line({0, 1, 2, 3}, {3.6});
    DecompParams p;
    p.rho = 1.0 / 16;
    p.exact_ann = true;
    for (std::uint64_t s = 0; s < 10; ++s) {
        p.seed = s;
        Decomposition d = build_ornament_decomposition(inst, p);
        int y = 4, x = d.ornament_anchor.at(4);
        double dp = portal_path_distance(d, inst.pid(x), inst.pid(y));
        CHECK(dp >= inst.dist(x, y));
        int l = cut_level_gids(d, {x, y});
        CHECK(dp <= inst.dist(x, y) + 16 * p.rho * d.scale(std::max(l, 0)) + 1e-12);
    }
}

TEST_CASE("proxy set examples") {
    auto at_s = line({4}, {4, 9});
    ProxySet ps = proxy_set(at_s, client(0), {facility(0)}, 0.25);
    CHECK(ps.anchor_distance == 0.0);
    CHECK(ps.proxies == std::vector<PointId>{facility(0)});

    std::vector<double> ys;
    for (int i = 0; i <= 20; ++i) ys.push_back(i);
    auto inst = line({5}, ys);
    ProxySet q = proxy_set(inst, client(0), {facility(0)}, 0.5);
    CHECK(q.anchor == facility(0));
    CHECK(q.anchor_distance == 5.0);
    std::vector<int> idx;
    for (auto p : q.proxies) idx.push_back(p.index);
    CHECK(idx == derived()["proxy_line_net"].get<std::vector<int>>());
    CHECK(hat_distance(inst, client(0), facility(10), q) == derived()["proxy_line_hat_y10"].get<double>());
    double h20 = hat_distance(inst, client(0), facility(20), q);
    CHECK(h20 == derived()["proxy_line_hat_y20"].get<double>());
    CHECK(h20 <= (1 + 4 * 0.5) * 15);
    CHECK(hat_distance(inst, client(0), facility(0), q) == 5.0);

    ProxySet tie = proxy_set(inst, client(0), {facility(10), facility(0)}, 0.5);
    CHECK(tie.anchor == facility(0));
    CHECK_THROWS_AS(proxy_set(inst, client(0), {}, 0.5), EmptyDomain);
}

TEST_CASE("hat portal distance") {
    auto inst = line({2.2, 7.1}, {0, 2, 3, 5, 8, 9});
    inst.ddim_hint_facilities = 1;
    DecompParams p;
    p.rho = 0.25;
    p.seed = 9;
    Decomposition d = build_talwar(inst, Side::Facility, p);
    ProxySet ps = proxy_set(inst, client(0), {facility(1)}, 0.25);
    CHECK(hat_portal_distance(d, client(0), {ps.anchor}, ps) == inst.distance(client(0), ps.anchor));

    ProxySet one = ps;
    one.proxies = {facility(2)};
    CHECK(hat_portal_distance(d, client(0), {facility(4)}, one) ==
          inst.distance(client(0), facility(2)) + portal_path_distance(d, facility(2), facility(4)));

    ProxySet wide = proxy_set(inst, client(1), {facility(3)}, 0.4);
    std::vector<PointId> F{facility(0), facility(5)};
    double best = kInf;
    for (auto u : wide.proxies)
        for (auto f : F) best = std::min(best, inst.distance(client(1), u) + portal_path_distance(d, u, f));
    CHECK(hat_portal_distance(d, client(1), F, wide) == best);
    CHECK(best >= std::min(inst.distance(client(1), F[0]), inst.distance(client(1), F[1])));
    CHECK_THROWS_AS(hat_portal_distance(d, client(1), {}, wide), EmptyDomain);
}

TEST_CASE("portal and proxy property suites at reduced size") {
    CHECK(check_portal(6, 3).pass);
    CHECK(check_proxy(1000, 3).pass);
}
