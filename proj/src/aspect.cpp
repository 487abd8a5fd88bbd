#include "pdclust/aspect.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <functional>
#include <numeric>

#include "pdclust/baseline.hpp"

namespace pdc {

std::uint64_t instance_hash(const MetricInstance& inst) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    auto feed = [&](const void* p, std::size_t len) {
        const auto* b = static_cast<const unsigned char*>(p);
        for (std::size_t i = 0; i < len; ++i) {
            h ^= b[i];
            h *= 0x100000001b3ULL;
        }
    };
    int s = inst.size();
    feed(&s, sizeof s);
    int n = inst.n();
    feed(&n, sizeof n);
    for (int i = 0; i < s; ++i)
        for (int j = 0; j < s; ++j) {
            double d = inst.dist(i, j);
            feed(&d, sizeof d);
        }
    for (int f = 0; f < inst.m(); ++f) {
        double c = inst.ocost(f);
        feed(&c, sizeof c);
    }
    return h;
}

SubInstanceSet normalize_aspect_ratio(const MetricInstance& inst, double eps) {
    if (!(eps > 0 && eps < 0.5)) throw InvalidArgument("epsilon must lie in (0, 1/2)");
    if (inst.m() == 0) throw NoFacilities("no facilities");
    SubInstanceSet out;
    out.provenance = instance_hash(inst);
    out.epsilon_used = eps;
    int n = inst.n(), s = inst.size();
    std::vector<int> comp(static_cast<std::size_t>(s));
    std::iota(comp.begin(), comp.end(), 0);
    if (n > 0) {
        Solution base = inst.opening_costs ? constant_fl(inst) : constant_kmedian(inst, inst.k.value_or(1));
        out.gamma = base.total_cost;
        double nn = static_cast<double>(n);
        out.threshold = (4 * nn + 1) * out.gamma;
        out.floor = eps * out.gamma / (nn * nn * nn);
        MetricInstance emb = embed_prime(inst, 0.5, true);
        std::function<int(int)> find = [&](int a) { return comp[static_cast<std::size_t>(a)] == a ? a : comp[static_cast<std::size_t>(a)] = find(comp[static_cast<std::size_t>(a)]); };
        for (int i = 0; i < s; ++i)
            for (int j = i + 1; j < s; ++j)
                if (emb.dist(i, j) <= out.threshold) {
                    int a = find(i), b = find(j);
                    if (a != b) comp[static_cast<std::size_t>(std::max(a, b))] = std::min(a, b);
                }
        for (int i = 0; i < s; ++i) comp[static_cast<std::size_t>(i)] = find(i);
    } else {
        std::fill(comp.begin(), comp.end(), 0);
    }
    // pieces in order of their smallest global id
    std::vector<int> roots;
    for (int i = 0; i < s; ++i)
        if (std::find(roots.begin(), roots.end(), comp[static_cast<std::size_t>(i)]) == roots.end()) roots.push_back(comp[static_cast<std::size_t>(i)]);
    for (int r : roots) {
        SubInstance piece;
        std::vector<int> gids;
        for (int i = 0; i < s; ++i)
            if (comp[static_cast<std::size_t>(i)] == r) {
                gids.push_back(i);
                if (inst.is_client(i))
                    piece.clients.push_back(i);
                else
                    piece.facilities.push_back(i - n);
            }
        int ps = static_cast<int>(gids.size());
        std::vector<double> full(static_cast<std::size_t>(ps) * static_cast<std::size_t>(ps), 0.0);
        for (int a = 0; a < ps; ++a)
            for (int b = 0; b < ps; ++b)
                if (a != b)
                    full[static_cast<std::size_t>(a) * static_cast<std::size_t>(ps) + static_cast<std::size_t>(b)] =
                        std::max(inst.dist(gids[static_cast<std::size_t>(a)], gids[static_cast<std::size_t>(b)]), out.floor);
        piece.inst = MetricInstance::explicit_matrix(static_cast<int>(piece.clients.size()), static_cast<int>(piece.facilities.size()), std::move(full));
        if (inst.opening_costs) {
            std::vector<double> oc;
            for (int f : piece.facilities) oc.push_back(inst.ocost(f));
            piece.inst.opening_costs = oc;
        }
        piece.inst.k = inst.k;
        piece.inst.ddim_hint_clients = inst.ddim_hint_clients;
        piece.inst.ddim_hint_facilities = inst.ddim_hint_facilities;
        piece.inst.finalize();
        out.pieces.push_back(std::move(piece));
    }
    return out;
}

namespace {

Solution merge(const MetricInstance& original, const SubInstanceSet& set, const std::vector<const Solution*>& sols, Objective obj) {
    Solution out;
    out.assignment.assign(static_cast<std::size_t>(original.n()), -1);
    for (std::size_t i = 0; i < set.pieces.size(); ++i) {
        const SubInstance& p = set.pieces[i];
        const Solution& s = *sols[i];
        for (int f : s.open_facilities) out.open_facilities.push_back(p.facilities[static_cast<std::size_t>(f)]);
        for (std::size_t x = 0; x < p.clients.size(); ++x)
            out.assignment[static_cast<std::size_t>(p.clients[x])] = p.facilities[static_cast<std::size_t>(s.assignment[x])];
    }
    std::sort(out.open_facilities.begin(), out.open_facilities.end());
    for (int x = 0; x < original.n(); ++x) {
        int f = out.assignment[static_cast<std::size_t>(x)];
        if (f < 0) throw UnassignedClient("piece solution left a client unassigned");
        out.connection_cost += original.dist(x, original.n() + f);
    }
    if (obj == Objective::FacilityLocation)
        for (int f : out.open_facilities) out.opening_cost += original.ocost(f);
    out.total_cost = out.connection_cost + out.opening_cost;
    return out;
}

}  // namespace

Solution combine_subinstance_solutions(const MetricInstance& original, const SubInstanceSet& set, const std::vector<Solution>& sols, Objective obj) {
    if (sols.size() != set.pieces.size()) throw InvalidArgument("one solution per piece required");
    if (original.m() == 0) throw NoFacilities("no facilities");
    std::vector<const Solution*> ptr;
    for (const auto& s : sols) ptr.push_back(&s);
    return merge(original, set, ptr, obj);
}

BudgetAllocation allocate_budgets(const std::vector<std::map<int, double>>& tables, int k) {
    if (k < 0) throw InvalidArgument("negative budget");
    std::size_t K = static_cast<std::size_t>(k);
    // best[b]: cheapest cost of the pieces so far using exactly b facilities
    std::vector<double> best(K + 1, kInf);
    best[0] = 0;
    std::vector<std::vector<int>> pick(tables.size(), std::vector<int>(K + 1, -1));
    for (std::size_t i = 0; i < tables.size(); ++i) {
        std::vector<double> next(K + 1, kInf);
        for (std::size_t b = 0; b <= K; ++b) {
            if (!std::isfinite(best[b])) continue;
            for (const auto& [bud, cost] : tables[i]) {
                if (bud < 0 || b + static_cast<std::size_t>(bud) > K || !std::isfinite(cost)) continue;
                std::size_t t = b + static_cast<std::size_t>(bud);
                if (best[b] + cost < next[t]) {
                    next[t] = best[b] + cost;
                    pick[i][t] = bud;
                }
            }
        }
        best = std::move(next);
    }
    std::size_t arg = 0;
    for (std::size_t b = 1; b <= K; ++b)
        if (best[b] < best[arg]) arg = b;
    if (!std::isfinite(best[arg])) throw Infeasible("no budget allocation serves every piece");
    BudgetAllocation out;
    out.cost = best[arg];
    out.budgets.assign(tables.size(), 0);
    std::size_t t = arg;
    for (std::size_t i = tables.size(); i-- > 0;) {
        int bud = pick[i][t];
        out.budgets[i] = bud;
        t -= static_cast<std::size_t>(bud);
    }
    return out;
}

Solution combine_kmedian_tables(const MetricInstance& original, const SubInstanceSet& set, const std::vector<std::map<int, Solution>>& tables, int k) {
    if (tables.size() != set.pieces.size()) throw InvalidArgument("one table per piece required");
    if (original.m() == 0) throw NoFacilities("no facilities");
    std::vector<std::map<int, double>> costs;
    for (const auto& t : tables) {
        std::map<int, double> c;
        for (const auto& [b, s] : t) c[b] = s.total_cost;
        costs.push_back(std::move(c));
    }
    BudgetAllocation a = allocate_budgets(costs, k);
    std::vector<const Solution*> ptr;
    for (std::size_t i = 0; i < tables.size(); ++i) ptr.push_back(&tables[i].at(a.budgets[i]));
    return merge(original, set, ptr, Objective::KMedian);
}

}  // namespace pdc
