#include <doctest.h>

#include "fixtures.hpp"
#include "pdclust/frechet.hpp"
#include "pdclust/oracle.hpp"
#include "pdclust/verify.hpp"

using namespace pdc;

namespace {

Curve series(std::vector<double> xs) { return Curve::from_series(xs); }

}  // namespace

TEST_CASE("discrete frechet examples") {
    CHECK(discrete_frechet(series({0, 2}), series({1})) == derived()["frechet_0_2_vs_1"].get<double>());
    CHECK(discrete_frechet(series({0, 1, 0}), series({0, 0})) == derived()["frechet_010_vs_00"].get<double>());
    CHECK(discrete_frechet(series({3}), series({3})) == 0.0);
    Curve a{2, {0, 0, 3, 4}};
    Curve b{2, {0, 0}};
    CHECK(discrete_frechet(a, b) == doctest::Approx(5.0));
    CHECK(discrete_frechet(a, b) == discrete_frechet(b, a));
}

TEST_CASE("discrete frechet matches enumeration") { CHECK(check_frechet(100, 5).pass); }

TEST_CASE("minimum error simplification") {
    auto s1 = min_error_simplification(series({0, 1}), 1);
    CHECK(s1.error == doctest::Approx(derived()["simplification_01_l1"].get<double>()));
    CHECK(s1.curve.size() <= 1);
    auto s2 = min_error_simplification(series({0, 10, 0}), 2);
    CHECK(s2.error == doctest::Approx(derived()["simplification_0100_l2"].get<double>()));
    CHECK(discrete_frechet(series({0, 10, 0}), s2.curve) == doctest::Approx(s2.error));
    auto s3 = min_error_simplification(series({0, 4, 1}), 3);
    CHECK(s3.error == 0.0);
}

TEST_CASE("canonical and padding") {
    CHECK(canonical(series({1, 1, 2, 2, 1})) == series({1, 2, 1}));
    CHECK(pad_to(series({5}), 3) == series({5, 5, 5}));
}

TEST_CASE("single scale candidate grid") {
    auto grid = candidate_grid_single_scale(series({0}), 1.0, 0.5, 1);
    std::vector<double> got;
    for (const Curve& c : grid) got.push_back(c.at(0));
    std::sort(got.begin(), got.end());
    CHECK(got == derived()["candidate_grid_point"].get<std::vector<double>>());
    CHECK(candidate_grid_single_scale(series({0, 10}), 1.0, 0.5, 1).empty());
    CHECK(candidate_grid_size(series({0, 10}), 1.0, 0.5, 1) == 0.0);
}

TEST_CASE("constant approximation for curves") {
    std::vector<Curve> curves{series({0}), series({10})};
    auto one = kl_median_constant(curves, 1, 1);
    CHECK(one.cost >= derived()["kl_two_points_k1"].get<double>() - 1e-9);
    CHECK(one.cost <= 8 * derived()["kl_two_points_k1"].get<double>());
    auto two = kl_median_constant(curves, 2, 1);
    CHECK(two.cost == 0.0);
}

TEST_CASE("(k,l)-median solve") {
    SolverParams p;
    p.epsilon = 0.25;
    auto alt = kl_median_solve({series({0, 1, 0, 1, 0, 1})}, 1, 1, 0.25, p);
    double opt = derived()["kl_alternating_k1_l1"].get<double>();
    CHECK(alt.cost >= opt - 1e-9);
    CHECK(alt.cost <= (1 + 0.25) * opt + 1e-9);
    CHECK(alt.centers.size() == 1);
    CHECK(alt.centers[0].size() <= 1);

    std::vector<Curve> three{series({0, 1}), series({5, 6, 5}), series({9})};
    // the middle curve needs three vertices, so its best 2-vertex center is 0.5 away
    auto all = kl_median_solve(three, 3, 2, 0.25, p);
    CHECK(all.cost == doctest::Approx(0.5));
    CHECK(all.assignment.size() == 3);
    CHECK_THROWS_AS(kl_median_solve(three, 0, 2, 0.25, p), InvalidArgument);
}

TEST_CASE("(k,l)-median stays near the grid oracle") { CHECK(check_klmedian(4, 9).pass); }
