#pragma once

#include <cstddef>
#include <vector>

#include "pdclust/curve.hpp"
#include "pdclust/metric.hpp"
#include "pdclust/profile.hpp"

namespace pdc {

constexpr double kOracleLimit = 1e6;

Solution brute_kmedian(const MetricInstance& inst, int k);
Solution brute_fl(const MetricInstance& inst);
double brute_frechet(const Curve& a, const Curve& b);
ProfileSet brute_profile_set(const Series& x, int ell);
Series brute_shortest_equivalent(const Series& x, int ell);

struct GridKlResult {
    double cost = 0;
    std::vector<Curve> centers;
};
// exact (k,ell)-median of 1-D series over centers whose vertices lie on a grid of the given spacing
GridKlResult brute_klmedian_grid(const std::vector<Series>& series, int k, int ell, double spacing);

}  // namespace pdc
