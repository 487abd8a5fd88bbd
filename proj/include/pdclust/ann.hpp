#pragma once

#include <unordered_map>
#include <vector>

#include "pdclust/metric.hpp"

namespace pdc {

struct NetTree {
    const MetricInstance* inst = nullptr;
    Side side = Side::Client;
    int ddim = 1;
    double unit = 1;  // minimum positive interpoint distance
    int L = 0;
    double epsilon_default = 0.25;
    std::vector<int> points;                                    // global ids, ascending
    std::vector<std::vector<int>> levels;                       // levels[l] = centers of N_l, in scan order
    std::vector<std::unordered_map<int, int>> parent;           // parent[l][c] in N_{l+1}
    std::vector<std::unordered_map<int, std::vector<int>>> children;  // children[l][c] in N_{l-1}

    double radius(int l) const;
};

NetTree build_net_tree(const MetricInstance& inst, Side side, int ddim);

// (1+eps)-ANN of the query among the tree's points
PointId ann_low_dim_data(const NetTree& tree, PointId query, double eps);
int ann_low_dim_data_gid(const NetTree& tree, int query, double eps);

// data on a (possibly high-dimensional) side, queries from the doubling side
class LowDimQueryIndex {
public:
    LowDimQueryIndex(const MetricInstance& inst, double eps, Side data_side = Side::Client);
    PointId query(PointId q) const;
    int query_gid(int q) const;

private:
    const MetricInstance* inst_;
    double eps_;
    std::vector<int> data_;
    std::vector<int> anchor_;
    std::vector<double> anchor_dist_;
};

LowDimQueryIndex ann_low_dim_queries(const MetricInstance& inst, double eps, Side data_side = Side::Client);

struct CrudeAnnTree {
    struct Node {
        int center = -1;
        double radius = 0;
        int left = -1;   // points within radius of center
        int right = -1;  // the rest
        std::vector<int> scan;  // leaf: points searched linearly
    };
    const MetricInstance* inst = nullptr;
    int n = 0;
    std::vector<Node> nodes;
};

CrudeAnnTree build_crude_ann(const NetTree& tree);
int crude_linear_ann_gid(const CrudeAnnTree& t, int query);
PointId crude_linear_ann(const CrudeAnnTree& t, PointId query);
PointId crude_linear_ann(const NetTree& tree, PointId query);

}  // namespace pdc
