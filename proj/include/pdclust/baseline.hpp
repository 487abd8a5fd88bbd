#pragma once

#include <map>
#include <vector>

#include "pdclust/decomposition.hpp"
#include "pdclust/metric.hpp"

namespace pdc {

// n x m connection-cost table used by the local searches
struct CostTable {
    int n = 0;
    int m = 0;
    std::vector<double> d;  // row-major
    std::vector<double> ocost;
    double at(int x, int f) const { return d[static_cast<std::size_t>(x) * static_cast<std::size_t>(m) + static_cast<std::size_t>(f)]; }
};

CostTable cost_table(const MetricInstance& inst);

std::vector<int> local_search_kmedian(const CostTable& t, int k, std::vector<int> start = {});
std::vector<int> local_search_fl(const CostTable& t, std::vector<int> start = {});

MetricInstance embed_prime(const MetricInstance& inst, double eps, bool crude, bool exact_ann = false);

Solution constant_fl(const MetricInstance& inst, bool exact_ann = false);
Solution constant_kmedian(const MetricInstance& inst, int k, bool exact_ann = false);

struct MovedInstance {
    const MetricInstance* base = nullptr;
    std::vector<int> phi;             // client -> global id of its (possibly moved) position
    std::map<int, int> weights;       // global id -> number of clients placed there
    std::vector<int> bad_clients;     // client indices
    std::vector<int> bad_facilities;  // facility indices (diagnostic)
    std::vector<int> anchor;          // client -> global id of pi_S(x)
    std::vector<double> anchor_dist;  // client -> d(x, S)
    Solution S;
};

MovedInstance build_moved_instance(const MetricInstance& inst, const Solution& S, const Decomposition& decomp, const Solution& fstar_proxy, double eps);

}  // namespace pdc
