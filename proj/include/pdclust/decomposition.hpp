#pragma once

#include <cstdint>
#include <string>
#include <unordered_map>
#include <vector>

#include <json.hpp>

#include "pdclust/ann.hpp"
#include "pdclust/metric.hpp"

namespace pdc {

constexpr int kNeverCut = -1;

struct DecompParams {
    double rho = 0.25;
    std::uint64_t seed = 0;
    double alpha = 0;              // <= 0: sampled from the seed
    std::vector<int> permutation;  // filled by the builders: rank of each universe point
    double badly_cut_slack = 1.0;
    double epsilon = 0.25;
    int portal_cap = 0;  // 0: uncapped
    bool exact_ann = true;
};

struct Cluster {
    int id = -1;
    int level = 0;
    std::vector<int> members;  // global ids, ascending
    std::vector<int> portals;  // global ids
    int parent = -1;
    std::vector<int> children;
    bool is_ornament = false;
    int ornament_point = -1;
    int center = -1;  // net center that created the cluster
};

struct Decomposition {
    const MetricInstance* inst = nullptr;
    DecompParams params;
    Side side = Side::Facility;  // decomposed (doubling) side
    bool ornament = false;
    int ddim = 1;
    double unit = 1;
    int L = 0;
    std::vector<int> universe;  // doubling-side global ids
    std::vector<std::vector<int>> levels;
    std::vector<Cluster> clusters;
    std::unordered_map<int, int> ornament_level;   // facility gid -> h(y)
    std::unordered_map<int, int> ornament_anchor;  // facility gid -> pi_X(y)
    std::vector<std::unordered_map<int, int>> cluster_of;

    int root() const { return levels[static_cast<std::size_t>(L)].front(); }
    double scale(int level) const;
    // cluster containing g at the level, -1 if g is absent there
    int cluster_at(int g, int level) const;
    int start_level(int g) const;  // 0 for universe points, h(y) for ornaments
    bool contains(int g) const;
};

Decomposition build_talwar(const MetricInstance& inst, Side side, DecompParams params);
Decomposition build_ornament_decomposition(const MetricInstance& inst, DecompParams params);

int cut_level(const Decomposition& d, const std::vector<PointId>& points);
int cut_level_gids(const Decomposition& d, std::vector<int> gids);
bool is_badly_cut(const Decomposition& d, PointId center, double radius, double eps);
bool is_badly_cut_gid(const Decomposition& d, int center, double radius, double eps);

// list of violated invariants (empty when the decomposition is well formed)
std::vector<std::string> check_decomposition(const Decomposition& d, bool check_portal_cover = true);

nlohmann::json decomposition_to_json(const Decomposition& d);

}  // namespace pdc
