#include "pdclust/baseline.hpp"

#include <algorithm>
#include <cmath>

#include "pdclust/ann.hpp"

namespace pdc {

CostTable cost_table(const MetricInstance& inst) {
    CostTable t;
    t.n = inst.n();
    t.m = inst.m();
    t.d.resize(static_cast<std::size_t>(t.n) * static_cast<std::size_t>(t.m));
    for (int x = 0; x < t.n; ++x)
        for (int f = 0; f < t.m; ++f) t.d[static_cast<std::size_t>(x) * static_cast<std::size_t>(t.m) + static_cast<std::size_t>(f)] = inst.dist(x, t.n + f);
    for (int f = 0; f < t.m; ++f) t.ocost.push_back(inst.ocost(f));
    return t;
}

namespace {

double connection(const CostTable& t, const std::vector<int>& open) {
    if (open.empty()) return t.n > 0 ? kInf : 0.0;
    double total = 0;
    for (int x = 0; x < t.n; ++x) {
        double best = kInf;
        for (int f : open) best = std::min(best, t.at(x, f));
        total += best;
    }
    return total;
}

double fl_cost(const CostTable& t, const std::vector<int>& open) {
    double c = connection(t, open);
    for (int f : open) c += t.ocost[static_cast<std::size_t>(f)];
    return c;
}

bool better(double cand, double cur) { return cand < cur - 1e-12 * std::max(1.0, std::abs(cur)); }

constexpr int kMaxMoves = 20000;

}  // namespace

std::vector<int> local_search_kmedian(const CostTable& t, int k, std::vector<int> open) {
    int kk = std::min(k, t.m);
    std::sort(open.begin(), open.end());
    open.erase(std::unique(open.begin(), open.end()), open.end());
    while (static_cast<int>(open.size()) > kk) open.pop_back();
    // greedy fill
    while (static_cast<int>(open.size()) < kk) {
        int arg = -1;
        double best = kInf;
        for (int f = 0; f < t.m; ++f) {
            if (std::find(open.begin(), open.end(), f) != open.end()) continue;
            open.push_back(f);
            double c = connection(t, open);
            open.pop_back();
            if (c < best) {
                best = c;
                arg = f;
            }
        }
        open.push_back(arg);
    }
    double cur = connection(t, open);
    for (int moves = 0; moves < kMaxMoves; ++moves) {
        bool improved = false;
        for (std::size_t i = 0; i < open.size() && !improved; ++i) {
            for (int b = 0; b < t.m && !improved; ++b) {
                if (std::find(open.begin(), open.end(), b) != open.end()) continue;
                int a = open[i];
                open[i] = b;
                double c = connection(t, open);
                if (better(c, cur)) {
                    cur = c;
                    improved = true;
                } else {
                    open[i] = a;
                }
            }
        }
        if (!improved) break;
    }
    std::sort(open.begin(), open.end());
    return open;
}

std::vector<int> local_search_fl(const CostTable& t, std::vector<int> open) {
    if (t.n == 0) return {};
    std::sort(open.begin(), open.end());
    open.erase(std::unique(open.begin(), open.end()), open.end());
    if (open.empty()) {
        int arg = 0;
        double best = kInf;
        for (int f = 0; f < t.m; ++f) {
            double c = fl_cost(t, {f});
            if (c < best) {
                best = c;
                arg = f;
            }
        }
        open = {arg};
    }
    double cur = fl_cost(t, open);
    for (int moves = 0; moves < kMaxMoves; ++moves) {
        bool improved = false;
        std::vector<char> is_open(static_cast<std::size_t>(t.m), 0);
        for (int f : open) is_open[static_cast<std::size_t>(f)] = 1;
        // open one
        for (int b = 0; b < t.m && !improved; ++b) {
            if (is_open[static_cast<std::size_t>(b)]) continue;
            auto cand = open;
            cand.push_back(b);
            double c = fl_cost(t, cand);
            if (better(c, cur)) {
                open = cand;
                cur = c;
                improved = true;
            }
        }
        // close one
        for (std::size_t i = 0; i < open.size() && !improved && open.size() > 1; ++i) {
            auto cand = open;
            cand.erase(cand.begin() + static_cast<std::ptrdiff_t>(i));
            double c = fl_cost(t, cand);
            if (better(c, cur)) {
                open = cand;
                cur = c;
                improved = true;
            }
        }
        // swap
        for (std::size_t i = 0; i < open.size() && !improved; ++i)
            for (int b = 0; b < t.m && !improved; ++b) {
                if (is_open[static_cast<std::size_t>(b)]) continue;
                auto cand = open;
                cand[i] = b;
                double c = fl_cost(t, cand);
                if (better(c, cur)) {
                    open = cand;
                    cur = c;
                    improved = true;
                }
            }
        if (!improved) break;
    }
    std::sort(open.begin(), open.end());
    return open;
}

namespace {

// nearest point of the given side for g: exact scan or net-tree ANN
std::vector<int> snap_to_side(const MetricInstance& inst, const std::vector<int>& queries, Side side, double eps, bool exact) {
    std::vector<int> data = side_ids(inst, side);
    int ddim = side == Side::Client ? inst.ddim_hint_clients : inst.ddim_hint_facilities;
    std::vector<int> out;
    if (!exact) {
        try {
            NetTree tree = build_net_tree(inst, side, ddim);
            for (int q : queries) out.push_back(ann_low_dim_data_gid(tree, q, eps));
            return out;
        } catch (const DuplicatePoints&) {
        }
    }
    for (int q : queries) out.push_back(nearest_of(inst, q, data));
    return out;
}

bool facilities_doubling(const MetricInstance& inst) { return inst.ddim_hint_facilities <= inst.ddim_hint_clients; }

CostTable proxy_table(const MetricInstance& inst, bool exact_ann) {
    if (facilities_doubling(inst)) {
        std::vector<int> xs = side_ids(inst, Side::Client);
        std::vector<int> snap = snap_to_side(inst, xs, Side::Facility, 0.5, exact_ann);
        CostTable t;
        t.n = inst.n();
        t.m = inst.m();
        for (int x = 0; x < t.n; ++x)
            for (int f = 0; f < t.m; ++f) t.d.push_back(inst.dist(snap[static_cast<std::size_t>(x)], t.n + f));
        for (int f = 0; f < t.m; ++f) t.ocost.push_back(inst.ocost(f));
        return t;
    }
    return cost_table(embed_prime(inst, 0.5, false, exact_ann));
}

}  // namespace

MetricInstance embed_prime(const MetricInstance& inst, double eps, bool crude, bool exact_ann) {
    if (inst.n() == 0) throw EmptyDomain("embedding needs clients");
    int s = inst.size();
    std::vector<int> all(static_cast<std::size_t>(s));
    for (int g = 0; g < s; ++g) all[static_cast<std::size_t>(g)] = g;
    std::vector<int> bar;
    if (crude && !exact_ann) {
        try {
            NetTree tree = build_net_tree(inst, Side::Client, inst.ddim_hint_clients);
            CrudeAnnTree ct = build_crude_ann(tree);
            for (int g : all) bar.push_back(inst.is_client(g) ? g : crude_linear_ann_gid(ct, g));
        } catch (const DuplicatePoints&) {
            bar.clear();
        }
    }
    if (bar.empty()) {
        bar = snap_to_side(inst, all, Side::Client, eps, exact_ann);
        for (int g = 0; g < inst.n(); ++g) bar[static_cast<std::size_t>(g)] = g;
    }
    std::vector<double> off(static_cast<std::size_t>(s));
    for (int g = 0; g < s; ++g) off[static_cast<std::size_t>(g)] = inst.dist(g, bar[static_cast<std::size_t>(g)]);
    std::vector<double> full(static_cast<std::size_t>(s) * static_cast<std::size_t>(s), 0.0);
    for (int i = 0; i < s; ++i)
        for (int j = i + 1; j < s; ++j) {
            double v = std::abs(off[static_cast<std::size_t>(i)] - off[static_cast<std::size_t>(j)]) +
                       inst.dist(bar[static_cast<std::size_t>(i)], bar[static_cast<std::size_t>(j)]);
            full[static_cast<std::size_t>(i) * static_cast<std::size_t>(s) + static_cast<std::size_t>(j)] = v;
            full[static_cast<std::size_t>(j) * static_cast<std::size_t>(s) + static_cast<std::size_t>(i)] = v;
        }
    MetricInstance out = MetricInstance::explicit_matrix(inst.n(), inst.m(), std::move(full));
    out.opening_costs = inst.opening_costs;
    out.k = inst.k;
    out.ddim_hint_clients = inst.ddim_hint_clients;
    out.ddim_hint_facilities = inst.ddim_hint_facilities;
    out.finalize();
    return out;
}

Solution constant_fl(const MetricInstance& inst, bool exact_ann) {
    if (inst.n() == 0) return make_solution(inst, {}, Objective::FacilityLocation);
    if (inst.m() == 0) throw NoFacilities("no facilities");
    std::vector<int> open = local_search_fl(proxy_table(inst, exact_ann));
    open = local_search_fl(cost_table(inst), open);
    return make_solution(inst, open, Objective::FacilityLocation);
}

Solution constant_kmedian(const MetricInstance& inst, int k, bool exact_ann) {
    if (k < 1) throw InvalidArgument("k must be at least 1");
    if (inst.n() == 0) return make_solution(inst, {}, Objective::KMedian);
    if (inst.m() == 0) throw NoFacilities("no facilities");
    std::vector<int> open = local_search_kmedian(proxy_table(inst, exact_ann), k);
    open = local_search_kmedian(cost_table(inst), k, open);
    return make_solution(inst, open, Objective::KMedian);
}

MovedInstance build_moved_instance(const MetricInstance& inst, const Solution& S, const Decomposition& decomp, const Solution& fstar_proxy, double eps) {
    MovedInstance mi;
    mi.base = &inst;
    mi.S = S;
    std::vector<int> sg, fg;
    for (int f : S.open_facilities) sg.push_back(inst.n() + f);
    for (int f : fstar_proxy.open_facilities) fg.push_back(inst.n() + f);
    if (sg.empty() && inst.n() > 0) throw InvalidArgument("moved instance needs a nonempty S");
    auto project_x = [&](int y) {
        auto it = decomp.ornament_anchor.find(y);
        return it != decomp.ornament_anchor.end() ? it->second : nearest_of(inst, y, side_ids(inst, Side::Client));
    };
    for (int x = 0; x < inst.n(); ++x) {
        double r;
        int a = nearest_of(inst, x, sg, &r);
        mi.anchor.push_back(a);
        mi.anchor_dist.push_back(r);
        bool bad = decomp.ornament ? is_badly_cut_gid(decomp, x, r / eps, eps) : is_badly_cut_gid(decomp, a, r / eps, eps);
        int target = x;
        if (bad) {
            mi.bad_clients.push_back(x);
            target = decomp.ornament ? project_x(a) : a;
        }
        mi.phi.push_back(target);
        mi.weights[target] += 1;
    }
    if (!fg.empty())
        for (int y : sg) {
            bool bad;
            if (decomp.ornament) {
                int p = project_x(y);
                double df, ds;
                nearest_of(inst, p, fg, &df);
                nearest_of(inst, p, sg, &ds);
                bad = is_badly_cut_gid(decomp, p, 100 * df + 100 * ds, eps);
            } else {
                double df;
                nearest_of(inst, y, fg, &df);
                bad = is_badly_cut_gid(decomp, y, 10 * df, eps);
            }
            if (bad) mi.bad_facilities.push_back(y - inst.n());
        }
    return mi;
}

}  // namespace pdc
