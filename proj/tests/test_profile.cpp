#include <doctest.h>

#include "fixtures.hpp"
#include "pdclust/oracle.hpp"
#include "pdclust/profile.hpp"
#include "pdclust/verify.hpp"

using namespace pdc;

namespace {

Profile prof(std::vector<std::pair<double, double>> p) { return Profile{std::move(p)}; }

std::vector<std::vector<std::vector<double>>> as_lists(const ProfileSet& s) {
    std::vector<std::vector<std::vector<double>>> out;
    for (const Profile& p : s.profiles) {
        std::vector<std::vector<double>> row;
        for (auto [a, b] : p.pairs) row.push_back({a, b});
        out.push_back(row);
    }
    return out;
}

}  // namespace

TEST_CASE("value domain reduction") {
    auto r = reduce_value_domain({0, 1, 9}, 2, 0.3);
    auto want = derived()["reduce_019"].get<std::vector<double>>();
    REQUIRE(r.size() == want.size());
    for (std::size_t i = 0; i < r.size(); ++i) CHECK(r[i] == doctest::Approx(want[i]));
    CHECK(reduce_value_domain({2, 2, 2}, 1, 0.3) == Series{2, 2, 2});
}

TEST_CASE("profile decision examples") {
    CHECK(decide_profile({0, 2, 1}, prof({{0, 2}, {1, 1}})) == derived()["decide_021"].get<bool>());
    CHECK(decide_profile({0, 1}, prof({{0, 0}, {1, 1}})) == derived()["decide_01_a"].get<bool>());
    CHECK(decide_profile({0, 1}, prof({{1, 1}, {0, 0}})) == derived()["decide_01_b"].get<bool>());
    CHECK(decide_profile({0, 1}, prof({{0, 0}, {1, 1}, {1, 1}})));
    CHECK_FALSE(decide_profile({0, 1}, prof({{0, 0}, {1, 1}, {0, 0}})));
}

TEST_CASE("profile decision is exhaustive-correct") { CHECK(check_decide_profile().pass); }

TEST_CASE("profile sets") {
    CHECK(as_lists(profile_set({0, 1, 0}, 2)) == derived()["profiles_010_l2"].get<std::vector<std::vector<std::vector<double>>>>());
    CHECK(as_lists(profile_set({0, 1, 0, 1, 0, 1}, 1)) == derived()["profiles_alt_l1"].get<std::vector<std::vector<std::vector<double>>>>());
    CHECK(profile_set({0, 1, 0}, 2) == brute_profile_set({0, 1, 0}, 2));
}

TEST_CASE("shortest equivalent series") {
    CHECK(shortest_equivalent({0, 1, 0, 1, 0, 1}, 1) == derived()["shortest_alt_l1"].get<Series>());
    CHECK(shortest_equivalent({0, 1, 0}, 2) == derived()["shortest_010_l2"].get<Series>());
    bool capped = false;
    Series x{0, 1, 2, 3, 2, 1, 0};
    CHECK(shortest_equivalent(x, 3, 1, &capped) == x);
    CHECK(capped);
}

TEST_CASE("complexity reduction examples") {
    Series out = complexity_reduction({0, 1, 0, 1, 0, 1}, 1, 0.25);
    CHECK(out.size() == 2);
    Series same = complexity_reduction({4}, 2, 0.25);
    CHECK(same.size() == 1);
}

TEST_CASE("complexity reduction preserves distances") { CHECK(check_complexity_reduction(0.25).pass); }
