#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "pdclust/metric.hpp"
#include "pdclust/profile.hpp"

namespace pdc {

enum class Family { Line, Planar, TwoCluster, FrechetSeries };

Family parse_family(const std::string& name);
std::string family_name(Family f);

struct GenOptions {
    Family family = Family::Line;
    int n = 0;
    int m = 0;  // facilities, or series length for frechet-series
    int dim = 2;
    std::uint64_t seed = 0;
    std::optional<int> k;
    bool opening_costs = false;  // draw ocost uniformly from [0.5, 3]
    double separation = 1e6;     // two-cluster: offset between the clusters
};

struct Generated {
    MetricInstance instance;    // point families
    std::vector<Series> series; // frechet-series
    bool is_series = false;
};

Generated generate(const GenOptions& opts);

}  // namespace pdc
