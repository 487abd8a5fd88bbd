#include "pdclust/ann.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace pdc {

double NetTree::radius(int l) const { return std::ldexp(unit, l - 2); }

NetTree build_net_tree(const MetricInstance& inst, Side side, int ddim) {
    NetTree t;
    t.inst = &inst;
    t.side = side;
    t.ddim = std::max(1, ddim);
    t.points = side_ids(inst, side);
    if (t.points.empty()) throw EmptyDomain("cannot build a net tree over an empty side");
    if (inst.kind == Kind::Matrix)
        for (std::size_t i = 0; i < t.points.size(); ++i)
            for (std::size_t j = i + 1; j < t.points.size(); ++j)
                if (inst.dist(t.points[i], t.points[j]) == 0.0) throw DuplicatePoints("matrix instance has zero off-diagonal distance");
    double unit = min_positive_distance(inst, t.points);
    double delta = 1;
    if (std::isfinite(unit)) {
        delta = std::max(1.0, diameter(inst, t.points) / unit);
    } else {
        unit = 1;
    }
    t.unit = unit;
    t.L = static_cast<int>(std::ceil(std::log2(delta) - 1e-12)) + 4;
    t.levels.assign(static_cast<std::size_t>(t.L + 1), {});
    t.parent.assign(static_cast<std::size_t>(t.L + 1), {});
    t.children.assign(static_cast<std::size_t>(t.L + 1), {});
    t.levels[static_cast<std::size_t>(t.L)] = {t.points.front()};
    for (int l = t.L - 1; l >= 0; --l) {
        const auto& up = t.levels[static_cast<std::size_t>(l + 1)];
        std::vector<int> order = up;
        std::vector<char> seen(static_cast<std::size_t>(inst.size()), 0);
        for (int c : up) seen[static_cast<std::size_t>(c)] = 1;
        for (int p : t.points)
            if (!seen[static_cast<std::size_t>(p)]) order.push_back(p);
        t.levels[static_cast<std::size_t>(l)] = greedy_net_ordered(inst, order, t.radius(l));
        for (int c : t.levels[static_cast<std::size_t>(l)]) {
            int par = nearest_of(inst, c, up);
            t.parent[static_cast<std::size_t>(l)][c] = par;
            t.children[static_cast<std::size_t>(l + 1)][par].push_back(c);
        }
    }
    return t;
}

int ann_low_dim_data_gid(const NetTree& tree, int q, double eps) {
    const MetricInstance& inst = *tree.inst;
    int best = tree.levels[static_cast<std::size_t>(tree.L)].front();
    double bd = inst.dist(q, best);
    std::vector<int> cand{best};
    for (int l = tree.L; l >= 1; --l) {
        std::vector<int> next;
        std::vector<double> nd;
        double level_min = kInf;
        for (int c : cand) {
            auto it = tree.children[static_cast<std::size_t>(l)].find(c);
            if (it == tree.children[static_cast<std::size_t>(l)].end()) continue;
            for (int z : it->second) {
                double d = inst.dist(q, z);
                next.push_back(z);
                nd.push_back(d);
                level_min = std::min(level_min, d);
                if (d < bd || (d == bd && z < best)) {
                    bd = d;
                    best = z;
                }
            }
        }
        // every point below a level-(l-1) center lies within 2 r_{l-1} of it
        double slack = 2 * tree.radius(l - 1);
        if (l - 1 > 0 && bd <= (1 + eps) * std::max(0.0, level_min - slack)) return best;
        cand.clear();
        for (std::size_t i = 0; i < next.size(); ++i)
            if (nd[i] <= bd + slack) cand.push_back(next[i]);
    }
    return best;
}

PointId ann_low_dim_data(const NetTree& tree, PointId query, double eps) {
    if (tree.points.empty()) throw EmptyDomain("empty tree");
    return tree.inst->pid(ann_low_dim_data_gid(tree, tree.inst->gid(query), eps));
}

LowDimQueryIndex::LowDimQueryIndex(const MetricInstance& inst, double eps, Side data_side) : inst_(&inst), eps_(eps) {
    data_ = side_ids(inst, data_side);
    if (data_.empty()) throw EmptyDomain("empty data side");
    Side qside = data_side == Side::Client ? Side::Facility : Side::Client;
    int ddim = qside == Side::Client ? inst.ddim_hint_clients : inst.ddim_hint_facilities;
    if (side_ids(inst, qside).empty()) {
        anchor_.assign(data_.size(), -1);
        anchor_dist_.assign(data_.size(), 0.0);
        return;
    }
    NetTree qt = build_net_tree(inst, qside, ddim);
    for (int x : data_) {
        int a = ann_low_dim_data_gid(qt, x, eps);
        anchor_.push_back(a);
        anchor_dist_.push_back(inst.dist(x, a));
    }
}

int LowDimQueryIndex::query_gid(int q) const {
    std::vector<std::pair<double, int>> order;
    order.reserve(data_.size());
    for (std::size_t i = 0; i < data_.size(); ++i) {
        double lb = 0;
        if (anchor_[i] >= 0) lb = std::max(inst_->dist(q, anchor_[i]) - anchor_dist_[i], anchor_dist_[i] / (1 + eps_));
        order.emplace_back(lb, static_cast<int>(i));
    }
    std::sort(order.begin(), order.end());
    int best = -1;
    double bd = kInf;
    for (auto [lb, i] : order) {
        if (lb * (1 + eps_) >= bd) break;
        int x = data_[static_cast<std::size_t>(i)];
        double d = inst_->dist(q, x);
        if (d < bd || (d == bd && x < best)) {
            bd = d;
            best = x;
        }
    }
    return best;
}

PointId LowDimQueryIndex::query(PointId q) const { return inst_->pid(query_gid(inst_->gid(q))); }

LowDimQueryIndex ann_low_dim_queries(const MetricInstance& inst, double eps, Side data_side) {
    return LowDimQueryIndex(inst, eps, data_side);
}

namespace {

int build_crude_node(CrudeAnnTree& t, std::vector<int> pts, int ddim) {
    const MetricInstance& inst = *t.inst;
    int id = static_cast<int>(t.nodes.size());
    t.nodes.emplace_back();
    if (pts.size() <= 1) {
        t.nodes[static_cast<std::size_t>(id)].scan = pts;
        return id;
    }
    double gap = 1.0 / (2.0 * t.n);
    std::size_t cap = std::min(pts.size(), static_cast<std::size_t>(std::max(8, 4 * ddim * ddim * ddim)));
    int best_center = -1;
    double best_r = 0;
    std::size_t best_balance = 0;
    for (std::size_t ci = 0; ci < cap; ++ci) {
        int c = pts[ci];
        std::vector<double> d;
        for (int p : pts) d.push_back(inst.dist(c, p));
        std::sort(d.begin(), d.end());
        for (std::size_t i = 0; i + 1 < d.size(); ++i) {
            double r;
            if (d[i] > 0) {
                r = d[i] / (1 - gap);
                if (!(d[i + 1] > (1 + gap) * r)) continue;
            } else {
                if (!(d[i + 1] > 0)) continue;
                r = d[i + 1] / (1 + 2 * gap);
            }
            std::size_t inside = i + 1;
            std::size_t balance = std::min(inside, d.size() - inside);
            if (balance > best_balance) {
                best_balance = balance;
                best_center = c;
                best_r = r;
            }
        }
        if (best_balance * 2 >= pts.size() - 1) break;
    }
    if (best_center < 0) {
        t.nodes[static_cast<std::size_t>(id)].scan = pts;
        return id;
    }
    std::vector<int> in, out;
    for (int p : pts) (inst.dist(best_center, p) <= best_r ? in : out).push_back(p);
    int l = build_crude_node(t, in, ddim);
    int r = build_crude_node(t, out, ddim);
    auto& node = t.nodes[static_cast<std::size_t>(id)];
    node.center = best_center;
    node.radius = best_r;
    node.left = l;
    node.right = r;
    return id;
}

}  // namespace

CrudeAnnTree build_crude_ann(const NetTree& tree) {
    CrudeAnnTree t;
    t.inst = tree.inst;
    t.n = static_cast<int>(tree.points.size());
    build_crude_node(t, tree.points, tree.ddim);
    return t;
}

int crude_linear_ann_gid(const CrudeAnnTree& t, int q) {
    const MetricInstance& inst = *t.inst;
    int best = -1;
    double bd = kInf;
    auto visit = [&](int p) {
        double d = inst.dist(q, p);
        if (d < bd || (d == bd && p < best)) {
            bd = d;
            best = p;
        }
    };
    int v = 0;
    while (true) {
        const auto& node = t.nodes[static_cast<std::size_t>(v)];
        if (node.center < 0) {
            for (int p : node.scan) visit(p);
            break;
        }
        visit(node.center);
        v = inst.dist(q, node.center) <= node.radius ? node.left : node.right;
    }
    return best;
}

PointId crude_linear_ann(const CrudeAnnTree& t, PointId query) { return t.inst->pid(crude_linear_ann_gid(t, t.inst->gid(query))); }

PointId crude_linear_ann(const NetTree& tree, PointId query) { return crude_linear_ann(build_crude_ann(tree), query); }

}  // namespace pdc
