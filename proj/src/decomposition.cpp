#include "pdclust/decomposition.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <set>

namespace pdc {

double Decomposition::scale(int level) const { return std::ldexp(unit, level); }

int Decomposition::cluster_at(int g, int level) const {
    if (level < 0 || level > L) return -1;
    const auto& m = cluster_of[static_cast<std::size_t>(level)];
    auto it = m.find(g);
    return it == m.end() ? -1 : it->second;
}

int Decomposition::start_level(int g) const {
    auto it = ornament_level.find(g);
    return it == ornament_level.end() ? 0 : it->second;
}

bool Decomposition::contains(int g) const { return cluster_at(g, L) >= 0; }

namespace {

void assign_portals(Decomposition& d) {
    const MetricInstance& inst = *d.inst;
    for (int l = d.L; l >= 0; --l) {
        for (int cid : d.levels[static_cast<std::size_t>(l)]) {
            Cluster& c = d.clusters[static_cast<std::size_t>(cid)];
            if (c.is_ornament) continue;
            std::vector<int> inherited;
            if (c.parent >= 0)
                for (int p : d.clusters[static_cast<std::size_t>(c.parent)].portals)
                    if (std::binary_search(c.members.begin(), c.members.end(), p)) inherited.push_back(p);
            std::sort(inherited.begin(), inherited.end());
            std::vector<int> order = inherited;
            for (int g : c.members)
                if (!std::binary_search(inherited.begin(), inherited.end(), g)) order.push_back(g);
            std::vector<int> net = greedy_net_ordered(inst, order, d.params.rho * d.scale(l));
            std::size_t cap = static_cast<std::size_t>(d.params.portal_cap);
            if (cap > 0 && net.size() > cap) {
                // keep inherited portals, then farthest-first among the remaining net points
                std::vector<int> chosen = inherited;
                if (chosen.empty()) chosen.push_back(net.front());
                std::vector<int> rest;
                for (int g : net)
                    if (std::find(chosen.begin(), chosen.end(), g) == chosen.end()) rest.push_back(g);
                while (chosen.size() < cap && !rest.empty()) {
                    std::size_t arg = 0;
                    double far = -1;
                    for (std::size_t i = 0; i < rest.size(); ++i) {
                        double dd;
                        nearest_of(inst, rest[i], chosen, &dd);
                        if (dd > far) {
                            far = dd;
                            arg = i;
                        }
                    }
                    chosen.push_back(rest[arg]);
                    rest.erase(rest.begin() + static_cast<std::ptrdiff_t>(arg));
                }
                net = chosen;
            }
            c.portals = net;
        }
    }
}

}  // namespace

Decomposition build_talwar(const MetricInstance& inst, Side side, DecompParams params) {
    Decomposition d;
    d.inst = &inst;
    d.side = side;
    d.ddim = side == Side::Client ? inst.ddim_hint_clients : inst.ddim_hint_facilities;
    d.universe = side_ids(inst, side);
    if (d.universe.empty()) throw EmptyDomain("cannot decompose an empty side");
    if (!(params.rho > 0)) throw InvalidArgument("rho must be positive");

    NetTree tree = build_net_tree(inst, side, d.ddim);
    d.unit = tree.unit;
    d.L = tree.L;

    Rng rng(split_seed(params.seed, stream::decomposition));
    double u = rng.uniform();
    if (params.alpha <= 0) params.alpha = 0.5 + 0.5 * std::max(u, 1e-12);
    std::vector<int> perm(d.universe.size());
    std::iota(perm.begin(), perm.end(), 0);
    rng.shuffle(perm);
    params.permutation.assign(d.universe.size(), 0);
    for (std::size_t i = 0; i < perm.size(); ++i) params.permutation[static_cast<std::size_t>(perm[i])] = static_cast<int>(i);
    std::unordered_map<int, int> rank;
    for (std::size_t i = 0; i < d.universe.size(); ++i) rank[d.universe[i]] = params.permutation[i];
    d.params = params;

    d.levels.assign(static_cast<std::size_t>(d.L + 1), {});
    d.cluster_of.assign(static_cast<std::size_t>(d.L + 1), {});
    Cluster root;
    root.id = 0;
    root.level = d.L;
    root.members = d.universe;
    root.center = tree.levels[static_cast<std::size_t>(d.L)].front();
    d.clusters.push_back(root);
    d.levels[static_cast<std::size_t>(d.L)].push_back(0);
    for (int g : d.universe) d.cluster_of[static_cast<std::size_t>(d.L)][g] = 0;

    for (int l = d.L - 1; l >= 0; --l) {
        std::vector<int> centers = tree.levels[static_cast<std::size_t>(l)];
        std::sort(centers.begin(), centers.end(), [&](int a, int b) { return rank[a] < rank[b]; });
        double r = params.alpha * d.scale(l);
        for (int pid : d.levels[static_cast<std::size_t>(l + 1)]) {
            // each member goes to the first center (in sigma order) whose ball holds it
            std::map<int, std::vector<int>> by_center;  // keyed by rank
            for (int g : d.clusters[static_cast<std::size_t>(pid)].members) {
                int owner = -1;
                for (int c : centers)
                    if (inst.dist(c, g) <= r) {
                        owner = c;
                        break;
                    }
                by_center[rank[owner]].push_back(g);
            }
            for (auto& [rk, members] : by_center) {
                Cluster c;
                c.id = static_cast<int>(d.clusters.size());
                c.level = l;
                c.parent = pid;
                std::sort(members.begin(), members.end());
                c.members = members;
                c.center = d.universe[static_cast<std::size_t>(perm[static_cast<std::size_t>(rk)])];
                for (int g : members) d.cluster_of[static_cast<std::size_t>(l)][g] = c.id;
                d.clusters[static_cast<std::size_t>(pid)].children.push_back(c.id);
                d.levels[static_cast<std::size_t>(l)].push_back(c.id);
                d.clusters.push_back(std::move(c));
            }
        }
    }
    assign_portals(d);
    return d;
}

Decomposition build_ornament_decomposition(const MetricInstance& inst, DecompParams params) {
    Decomposition d = build_talwar(inst, Side::Client, std::move(params));
    d.ornament = true;
    std::vector<int> xs = side_ids(inst, Side::Client);
    NetTree tree;
    if (!d.params.exact_ann) tree = build_net_tree(inst, Side::Client, d.ddim);
    double sq = std::sqrt(d.params.rho);
    for (int y : side_ids(inst, Side::Facility)) {
        int px = d.params.exact_ann ? nearest_of(inst, y, xs) : ann_low_dim_data_gid(tree, y, d.params.epsilon);
        double dist = inst.dist(y, px);
        int h = 0;
        if (dist > 0) {
            double v = std::ceil(std::log2(dist / (d.unit * sq)) - 1e-12);
            h = static_cast<int>(std::clamp(v, 0.0, static_cast<double>(d.L - 1)));
        }
        d.ornament_level[y] = h;
        d.ornament_anchor[y] = px;
        int sibling = d.cluster_at(px, h);
        int parent = d.clusters[static_cast<std::size_t>(sibling)].parent;
        Cluster c;
        c.id = static_cast<int>(d.clusters.size());
        c.level = h;
        c.parent = parent;
        c.members = {y};
        c.is_ornament = true;
        c.ornament_point = y;
        c.center = y;
        d.clusters[static_cast<std::size_t>(parent)].children.push_back(c.id);
        d.levels[static_cast<std::size_t>(h)].push_back(c.id);
        d.cluster_of[static_cast<std::size_t>(h)][y] = c.id;
        for (int a = parent; a >= 0; a = d.clusters[static_cast<std::size_t>(a)].parent) {
            auto& mem = d.clusters[static_cast<std::size_t>(a)].members;
            mem.insert(std::upper_bound(mem.begin(), mem.end(), y), y);
            d.cluster_of[static_cast<std::size_t>(d.clusters[static_cast<std::size_t>(a)].level)][y] = a;
        }
        d.clusters.push_back(std::move(c));
    }
    return d;
}

int cut_level_gids(const Decomposition& d, std::vector<int> gids) {
    std::sort(gids.begin(), gids.end());
    gids.erase(std::unique(gids.begin(), gids.end()), gids.end());
    for (int g : gids)
        if (!d.contains(g)) throw IdOutOfRange("point is not in the decomposition");
    if (gids.size() <= 1) return kNeverCut;
    for (int l = d.L - 1; l >= 0; --l) {
        int first = d.cluster_at(gids[0], l);
        for (std::size_t i = 1; i < gids.size(); ++i) {
            int c = d.cluster_at(gids[i], l);
            if (c != first || c < 0) return l;
        }
        if (first < 0) return l;
    }
    return kNeverCut;
}

int cut_level(const Decomposition& d, const std::vector<PointId>& points) {
    std::vector<int> g;
    for (auto p : points) g.push_back(d.inst->gid(p));
    return cut_level_gids(d, g);
}

bool is_badly_cut_gid(const Decomposition& d, int center, double radius, double eps) {
    if (!(radius > 0)) return false;
    std::vector<int> ball;
    for (int g : d.universe)
        if (d.inst->dist(center, g) <= radius) ball.push_back(g);
    if (ball.size() <= 1) return false;
    double diam = diameter(*d.inst, ball);
    if (!(diam > 0)) return false;
    double threshold = std::log2(d.params.badly_cut_slack * (diam / d.unit) * d.ddim / eps);
    int cut = cut_level_gids(d, ball);
    return cut != kNeverCut && cut >= threshold;
}

bool is_badly_cut(const Decomposition& d, PointId center, double radius, double eps) {
    return is_badly_cut_gid(d, d.inst->gid(center), radius, eps);
}

std::vector<std::string> check_decomposition(const Decomposition& d, bool check_portal_cover) {
    std::vector<std::string> bad;
    const MetricInstance& inst = *d.inst;
    auto fail = [&](const std::string& s) { bad.push_back(s); };
    if (d.levels[static_cast<std::size_t>(d.L)].size() != 1) fail("top level is not a single cluster");
    std::set<int> all(d.universe.begin(), d.universe.end());
    for (auto [y, h] : d.ornament_level) all.insert(y);
    for (int l = 0; l <= d.L; ++l) {
        std::multiset<int> seen;
        for (int cid : d.levels[static_cast<std::size_t>(l)]) {
            const Cluster& c = d.clusters[static_cast<std::size_t>(cid)];
            if (c.level != l) fail("cluster level mismatch");
            if (c.members.empty()) fail("empty cluster");
            for (int g : c.members) seen.insert(g);
            if (l < d.L) {
                if (c.parent < 0) fail("non-root cluster without parent");
                else {
                    const auto& pm = d.clusters[static_cast<std::size_t>(c.parent)].members;
                    for (int g : c.members)
                        if (!std::binary_search(pm.begin(), pm.end(), g)) fail("cluster not contained in parent");
                    if (d.clusters[static_cast<std::size_t>(c.parent)].level != l + 1) fail("parent not one level up");
                }
            }
            if (c.is_ornament) {
                if (c.members.size() != 1 || inst.is_client(c.members[0])) fail("ornament is not a facility singleton");
                continue;
            }
            std::vector<int> core;
            for (int g : c.members)
                if (!d.ornament_level.count(g)) core.push_back(g);
            if (diameter(inst, core) > d.scale(l + 1) * (1 + 1e-12)) fail("cluster diameter above 2^(l+1)");
            double r = d.params.rho * d.scale(l);
            for (std::size_t i = 0; i < c.portals.size(); ++i)
                for (std::size_t j = i + 1; j < c.portals.size(); ++j)
                    if (inst.dist(c.portals[i], c.portals[j]) < r) fail("portal packing violated");
            if (check_portal_cover)
                for (int g : core) {
                    double dd;
                    nearest_of(inst, g, c.portals, &dd);
                    if (dd > r) fail("portal covering violated");
                }
            if (c.parent >= 0)
                for (int p : d.clusters[static_cast<std::size_t>(c.parent)].portals)
                    if (std::binary_search(c.members.begin(), c.members.end(), p) &&
                        std::find(c.portals.begin(), c.portals.end(), p) == c.portals.end())
                        fail("parent portal not inherited");
        }
        // every universe point once per level; ornaments once per level >= h
        for (int g : all) {
            std::size_t want = d.start_level(g) <= l ? 1 : 0;
            if (seen.count(g) != want) fail("level does not partition its universe");
        }
    }
    return bad;
}

nlohmann::json decomposition_to_json(const Decomposition& d) {
    nlohmann::json j;
    j["L"] = d.L;
    j["unit"] = d.unit;
    j["alpha"] = d.params.alpha;
    j["ornament"] = d.ornament;
    j["clusters"] = nlohmann::json::array();
    for (const auto& c : d.clusters)
        j["clusters"].push_back({{"id", c.id},
                                 {"level", c.level},
                                 {"members", c.members},
                                 {"portals", c.portals},
                                 {"parent", c.parent},
                                 {"children", c.children},
                                 {"is_ornament", c.is_ornament}});
    return j;
}

}  // namespace pdc
