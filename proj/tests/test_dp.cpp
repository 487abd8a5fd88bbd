#include <doctest.h>

#include "fixtures.hpp"
#include "pdclust/dp.hpp"
#include "pdclust/oracle.hpp"
#include "pdclust/verify.hpp"

using namespace pdc;

namespace {

MetricInstance line(std::vector<double> xs, std::vector<double> ys, int hc = 1, int hf = 1) {
    std::vector<std::vector<double>> X, Y;
    for (double x : xs) X.push_back({x});
    for (double y : ys) Y.push_back({y});
    auto inst = MetricInstance::euclidean(X, Y);
    inst.ddim_hint_clients = hc;
    inst.ddim_hint_facilities = hf;
    inst.finalize();
    return inst;
}

MetricInstance with_costs(MetricInstance inst, std::vector<double> oc) {
    inst.opening_costs = std::move(oc);
    inst.finalize();
    return inst;
}

SolverParams params(std::uint64_t seed = 0) {
    SolverParams p;
    p.epsilon = 0.25;
    p.seed = seed;
    return p;
}

}  // namespace

TEST_CASE("weighted set cover examples") {
    auto empty = weighted_set_cover_exact(0, {}, {});
    CHECK(empty.cost == 0.0);
    CHECK(empty.selection.empty());
    auto ex = weighted_set_cover_exact(2, {{0}, {1}, {0, 1}}, {1, 1, 3});
    CHECK(ex.cost == derived()["set_cover_example"]["cost"].get<double>());
    CHECK(ex.selection == derived()["set_cover_example"]["selection"].get<std::vector<int>>());
    auto single = weighted_set_cover_exact(1, {{0}}, {5});
    CHECK(single.cost == 5.0);
    CHECK_THROWS_AS(weighted_set_cover_exact(2, {{0}}, {1}), Infeasible);
    CHECK_THROWS_AS(weighted_set_cover_exact(21, {{0}}, {1}), TooLarge);
}

TEST_CASE("weighted set cover equals enumeration") { CHECK(check_set_cover(300, 4).pass); }

TEST_CASE("parameter validation") {
    SolverParams p;
    p.epsilon = 0.5;
    CHECK_THROWS_AS(p.validate(), InvalidArgument);
    p = SolverParams{};
    p.portal_cap = 0;
    CHECK_THROWS_AS(p.validate(), InvalidArgument);
    p = SolverParams{};
    p.bucket_count = 1;
    CHECK_THROWS_AS(p.validate(), InvalidArgument);
    p = SolverParams{};
    p.repeats = 0;
    CHECK_THROWS_AS(p.validate(), InvalidArgument);
    p = SolverParams{};
    CHECK(p.rho(2) == doctest::Approx(std::pow(0.25, 10) / 4));
    CHECK(p.rounds(2) == 6);
}

TEST_CASE("auto regime picks the smaller hint") {
    CHECK(auto_regime(line({0}, {1}, 3, 1)) == Regime::Centers);
    CHECK(auto_regime(line({0}, {1}, 1, 3)) == Regime::Clients);
    CHECK(auto_regime(line({0}, {1}, 2, 2)) == Regime::Centers);
}

TEST_CASE("facility location examples in both regimes") {
    auto two = with_costs(line({0}, {0, 1}), {5, 1});
    for (auto solve : {solve_fl_centers, solve_fl_clients}) {
        Solution s = solve(two, params());
        CHECK(s.open_facilities == std::vector<int>{1});
        CHECK(s.total_cost == derived()["fl_two_facilities"].get<double>());
    }
    auto single = with_costs(line({0, 3}, {1}), {2});
    CHECK(solve_fl_centers(single, params()).total_cost == 2 + 1 + 2);
    auto collocated = with_costs(line({4, 4, 4}, {4, 4.5, 9}), {0.5, 3, 0.25});
    for (auto solve : {solve_fl_centers, solve_fl_clients}) {
        Solution s = solve(collocated, params());
        CHECK(s.total_cost == doctest::Approx(brute_fl(collocated).total_cost));
    }
}

TEST_CASE("k-median examples in both regimes") {
    auto inst = line({0, 1, 10}, {0, 10});
    for (auto solve : {solve_kmedian_centers, solve_kmedian_clients}) {
        CHECK(solve(inst, 2, params()).total_cost == derived()["kmedian_small_k2"].get<double>());
        CHECK(solve(inst, 1, params()).total_cost == derived()["kmedian_small_k1"].get<double>());
        CHECK(solve(inst, 5, params()).total_cost == derived()["kmedian_small_all_open"].get<double>());
        CHECK_THROWS_AS(solve(inst, 0, params()), Infeasible);
    }
    auto bigger = line({0, 1, 2, 10, 11, 30, 31, 32}, {0.5, 1.5, 10.5, 20, 31, 40});
    for (auto solve : {solve_kmedian_centers, solve_kmedian_clients}) {
        Solution s = solve(bigger, 3, params(2));
        CHECK(s.open_facilities.size() <= 3);
        CHECK_FALSE(evaluate_cost(bigger, s, Objective::KMedian).mismatch);
        CHECK(s.total_cost >= brute_kmedian(bigger, 3).total_cost - 1e-9);
    }
}

TEST_CASE("bootstrap with zero rounds returns the baseline") {
    MetricInstance inst = corpus_instance(3, 7, false);
    SolverParams p = params();
    p.bootstrap_rounds = 0;
    SolveTrace tr;
    Solution s = bootstrap(SolverKind::KMedianCenters, inst, 2, p, &tr);
    CHECK(s.total_cost == constant_kmedian(inst, 2).total_cost);
    CHECK(tr.round_costs.empty());
}

TEST_CASE("bootstrap never worse than the baseline and reproducible") {
    for (int i = 0; i < 12; ++i) {
        for (SolverKind kind : {SolverKind::FlCenters, SolverKind::FlClients, SolverKind::KMedianCenters, SolverKind::KMedianClients}) {
            int k = 0;
            bool fl = objective_of(kind) == Objective::FacilityLocation;
            MetricInstance inst = corpus_instance(21, i, fl, &k);
            SolveTrace tr;
            Solution a = bootstrap(kind, inst, k, params(i), &tr);
            Solution b = bootstrap(kind, inst, k, params(i));
            CHECK(a.total_cost == b.total_cost);
            CHECK(a.open_facilities == b.open_facilities);
            CHECK_FALSE(evaluate_cost(inst, a, objective_of(kind)).mismatch);
            if (!tr.round_costs.empty()) CHECK(a.total_cost <= tr.baseline_cost + 1e-9);
            double opt = fl ? brute_fl(inst).total_cost : brute_kmedian(inst, k).total_cost;
            CHECK(a.total_cost >= opt - 1e-9);
        }
    }
}

TEST_CASE("budget overflow is reported") {
    MetricInstance inst = corpus_instance(3, 11, false);
    SolverParams p = params();
    p.budget = 10;
    Solution S = constant_kmedian(inst, 2);
    CHECK_THROWS_AS(dp_round(SolverKind::KMedianCenters, inst, 2, S, p, 1), BudgetExceeded);
}

TEST_CASE("revealed clusters") {
    MetricInstance inst = corpus_instance(12, 2, false);
    Solution S = constant_kmedian(inst, 1);
    for (std::uint64_t s = 0; s < 30; ++s) {
        DecompParams p;
        p.seed = s;
        Decomposition d = build_talwar(inst, Side::Facility, p);
        MovedInstance mv = build_moved_instance(inst, S, d, S, 1.0);
        auto rev = compute_revealed_clusters(d, mv, 1.0);
        CHECK(static_cast<int>(rev.size()) == inst.n());
        for (int x : mv.bad_clients) {
            const Cluster& c = d.clusters[static_cast<std::size_t>(rev.at(x))];
            CHECK(c.level == 0);
            CHECK(std::binary_search(c.members.begin(), c.members.end(), mv.phi[static_cast<std::size_t>(x)]));
        }
        for (auto [x, cid] : rev) {
            const Cluster& c = d.clusters[static_cast<std::size_t>(cid)];
            CHECK(std::binary_search(c.members.begin(), c.members.end(), mv.anchor[static_cast<std::size_t>(x)]));
        }
    }
    // a far client with a tiny epsilon is charged where its whole proxy ball lives
    auto far = line({1000}, {0, 1});
    Solution Sf = make_solution(far, {0}, Objective::KMedian);
    Decomposition d = build_talwar(far, Side::Facility, {});
    MovedInstance mv = build_moved_instance(far, Sf, d, Sf, 0.01);
    auto rev = compute_revealed_clusters(d, mv, 0.01);
    const Cluster& c = d.clusters[static_cast<std::size_t>(rev.at(0))];
    CHECK(c.members == std::vector<int>{1, 2});
}

TEST_CASE("dp stats are collected") {
    MetricInstance inst = corpus_instance(3, 5, true);
    Solution S = constant_fl(inst);
    DpStats st;
    Solution s = dp_round(SolverKind::FlCenters, inst, 0, S, params(), 4, &st);
    CHECK(st.entries > 0);
    CHECK(st.root_entries > 0);
    CHECK(st.to_json().contains("entries_per_level"));
    CHECK_FALSE(evaluate_cost(inst, s, Objective::FacilityLocation).mismatch);
}
