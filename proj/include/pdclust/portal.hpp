#pragma once

#include <mutex>
#include <unordered_map>
#include <vector>

#include "pdclust/decomposition.hpp"

namespace pdc {

// Portal-respecting paths with memoized climbs keyed by (point, level).
class PortalPaths {
public:
    explicit PortalPaths(const Decomposition& d) : d_(&d) {}
    // portal reached by g's climb at the level (g itself at its start level)
    int portal_at(int g, int level) const;
    // length of g's climb from its start level up to the level
    double climb(int g, int level) const;
    double distance(int gx, int gy) const;

private:
    std::pair<int, double> step(int g, int level) const;

    const Decomposition* d_;
    mutable std::mutex mu_;
    mutable std::unordered_map<std::uint64_t, std::pair<int, double>> memo_;
};

double portal_path_distance(const Decomposition& d, PointId x, PointId y);

struct ProxySet {
    PointId owner;
    PointId anchor;
    double anchor_distance = 0;
    double epsilon = 0;
    std::vector<PointId> proxies;
};

ProxySet proxy_set(const MetricInstance& inst, PointId x, const std::vector<PointId>& S, double eps);
ProxySet proxy_set_gid(const MetricInstance& inst, int x, const std::vector<int>& S, double eps);
double hat_distance(const MetricInstance& inst, PointId x, PointId y, const ProxySet& proxy);
double hat_portal_distance(const Decomposition& d, PointId x, const std::vector<PointId>& F, const ProxySet& proxy);

}  // namespace pdc
