#include "pdclust/portal.hpp"

#include <algorithm>

namespace pdc {

std::pair<int, double> PortalPaths::step(int g, int level) const {
    int start = d_->start_level(g);
    if (level <= start) return {g, 0.0};
    std::uint64_t key = (static_cast<std::uint64_t>(g) << 12) | static_cast<std::uint64_t>(level);
    {
        std::lock_guard lock(mu_);
        auto it = memo_.find(key);
        if (it != memo_.end()) return it->second;
    }
    auto [prev, acc] = step(g, level - 1);
    int cid = d_->cluster_at(g, level);
    const auto& portals = d_->clusters[static_cast<std::size_t>(cid)].portals;
    double dd;
    int p = nearest_of(*d_->inst, prev, portals, &dd);
    std::pair<int, double> res = p < 0 ? std::make_pair(prev, acc) : std::make_pair(p, acc + dd);
    std::lock_guard lock(mu_);
    memo_.emplace(key, res);
    return res;
}

int PortalPaths::portal_at(int g, int level) const { return step(g, level).first; }

double PortalPaths::climb(int g, int level) const { return step(g, level).second; }

double PortalPaths::distance(int gx, int gy) const {
    if (gx == gy) return 0.0;
    int l = cut_level_gids(*d_, {gx, gy});
    if (l == kNeverCut) return d_->inst->dist(gx, gy);
    auto [px, cx] = step(gx, l);
    auto [py, cy] = step(gy, l);
    return cx + d_->inst->dist(px, py) + cy;
}

double portal_path_distance(const Decomposition& d, PointId x, PointId y) {
    PortalPaths paths(d);
    return paths.distance(d.inst->gid(x), d.inst->gid(y));
}

ProxySet proxy_set_gid(const MetricInstance& inst, int x, const std::vector<int>& S, double eps) {
    if (S.empty()) throw EmptyDomain("proxy set needs a nonempty S");
    ProxySet ps;
    ps.owner = inst.pid(x);
    ps.epsilon = eps;
    double r;
    int anchor = nearest_of(inst, x, S, &r);
    ps.anchor = inst.pid(anchor);
    ps.anchor_distance = r;
    if (!(r > 0)) {
        ps.proxies = {ps.anchor};
        return ps;
    }
    std::vector<int> order{anchor};
    for (int y : side_ids(inst, Side::Facility))
        if (y != anchor && inst.dist(anchor, y) <= r / eps) order.push_back(y);
    for (int g : greedy_net_ordered(inst, order, eps * r)) ps.proxies.push_back(inst.pid(g));
    return ps;
}

ProxySet proxy_set(const MetricInstance& inst, PointId x, const std::vector<PointId>& S, double eps) {
    std::vector<int> s;
    for (auto p : S) s.push_back(inst.gid(p));
    std::sort(s.begin(), s.end());
    return proxy_set_gid(inst, inst.gid(x), s, eps);
}

double hat_distance(const MetricInstance& inst, PointId x, PointId y, const ProxySet& proxy) {
    double best = kInf;
    for (auto u : proxy.proxies) best = std::min(best, inst.distance(x, u) + inst.distance(u, y));
    return best;
}

double hat_portal_distance(const Decomposition& d, PointId x, const std::vector<PointId>& F, const ProxySet& proxy) {
    if (F.empty()) throw EmptyDomain("hat_portal_distance needs facilities");
    PortalPaths paths(d);
    double best = kInf;
    for (auto u : proxy.proxies)
        for (auto f : F) best = std::min(best, d.inst->distance(x, u) + paths.distance(d.inst->gid(u), d.inst->gid(f)));
    return best;
}

}  // namespace pdc
