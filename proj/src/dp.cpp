#include "pdclust/dp.hpp"

#include <algorithm>
#include <cmath>
#include <set>

namespace pdc {

Objective objective_of(SolverKind kind) {
    return kind == SolverKind::FlCenters || kind == SolverKind::FlClients ? Objective::FacilityLocation : Objective::KMedian;
}

Regime regime_of(SolverKind kind) {
    return kind == SolverKind::FlCenters || kind == SolverKind::KMedianCenters ? Regime::Centers : Regime::Clients;
}

SolverKind solver_kind(Objective obj, Regime regime) {
    if (obj == Objective::FacilityLocation) return regime == Regime::Centers ? SolverKind::FlCenters : SolverKind::FlClients;
    return regime == Regime::Centers ? SolverKind::KMedianCenters : SolverKind::KMedianClients;
}

Regime auto_regime(const MetricInstance& inst) {
    return inst.ddim_hint_facilities <= inst.ddim_hint_clients ? Regime::Centers : Regime::Clients;
}

void SolverParams::validate() const {
    if (!(epsilon > 0 && epsilon < 0.5)) throw InvalidArgument("epsilon must lie in (0, 1/2)");
    if (rho_override && !(*rho_override > 0)) throw InvalidArgument("rho must be positive");
    if (portal_cap < 1 || portal_cap > 4) throw InvalidArgument("portal_cap must lie in [1, 4]");
    if (bucket_count < 2 || bucket_count > 200) throw InvalidArgument("bucket_count must lie in [2, 200]");
    if (repeats < 1) throw InvalidArgument("repeats must be at least 1");
    if (bootstrap_rounds && *bootstrap_rounds < 0) throw InvalidArgument("bootstrap_rounds must be nonnegative");
    if (!(gamma_kappa > 0)) throw InvalidArgument("gamma_kappa must be positive");
    if (!(budget > 0)) throw InvalidArgument("budget must be positive");
    if (set_cover_max < 1 || set_cover_max > 24) throw InvalidArgument("set_cover_max must lie in [1, 24]");
}

double SolverParams::rho(int ddim) const {
    if (rho_override) return *rho_override;
    double d = std::max(1, ddim);
    return std::pow(epsilon, 10) / (d * d);
}

int SolverParams::rounds(int ddim) const {
    if (bootstrap_rounds) return *bootstrap_rounds;
    return static_cast<int>(std::ceil(bootstrap_c * std::max(1, ddim) - 1e-9));
}

nlohmann::json SolverParams::echo() const {
    nlohmann::json j;
    j["epsilon"] = epsilon;
    j["rho_override"] = rho_override ? nlohmann::json(*rho_override) : nlohmann::json(nullptr);
    j["portal_cap"] = portal_cap;
    j["bucket_count"] = bucket_count;
    j["gamma_kappa"] = gamma_kappa;
    j["repeats"] = repeats;
    j["bootstrap_rounds"] = bootstrap_rounds ? nlohmann::json(*bootstrap_rounds) : nlohmann::json(nullptr);
    j["bootstrap_c"] = bootstrap_c;
    j["budget"] = budget;
    j["badly_cut_slack"] = badly_cut_slack;
    j["seed"] = seed;
    j["exact_ann"] = exact_ann;
    j["set_cover_max"] = set_cover_max;
    return j;
}

SetCoverResult weighted_set_cover_exact(int universe_size, const std::vector<std::vector<int>>& sets, const std::vector<double>& weights, int u_max) {
    if (universe_size < 0) throw InvalidArgument("negative universe size");
    if (universe_size > u_max) throw TooLarge("set cover universe above u_max");
    if (sets.size() != weights.size()) throw InvalidArgument("one weight per set required");
    std::size_t full = (std::size_t{1} << universe_size) - 1;
    std::vector<std::size_t> masks;
    std::size_t all = 0;
    for (std::size_t i = 0; i < sets.size(); ++i) {
        if (weights[i] < 0) throw InvalidArgument("weights must be nonnegative");
        std::size_t mk = 0;
        for (int e : sets[i]) {
            if (e < 0 || e >= universe_size) throw IdOutOfRange("set element outside the universe");
            mk |= std::size_t{1} << e;
        }
        masks.push_back(mk);
        all |= mk;
    }
    if ((all & full) != full) throw Infeasible("sets do not cover the universe");
    SetCoverResult res;
    if (universe_size == 0) return res;
    // h(T): cheapest cover of T with the sets seen so far; take[i][T] marks that set i is used
    std::vector<double> h(full + 1, kInf);
    h[0] = 0;
    std::vector<std::vector<bool>> take(sets.size(), std::vector<bool>(full + 1, false));
    for (std::size_t i = 0; i < masks.size(); ++i) {
        for (std::size_t T = full + 1; T-- > 0;) {
            double with = h[T & ~masks[i]] + weights[i];
            if (with < h[T]) {
                h[T] = with;
                take[i][T] = true;
            }
        }
    }
    res.cost = h[full];
    std::size_t T = full;
    for (std::size_t i = masks.size(); i-- > 0 && T != 0;) {
        if (take[i][T]) {
            res.selection.push_back(static_cast<int>(i));
            T &= ~masks[i];
        }
    }
    std::sort(res.selection.begin(), res.selection.end());
    return res;
}

std::vector<RevealedItem> revealed_items(const Decomposition& d, const MovedInstance& mv, double eps) {
    const MetricInstance& inst = *d.inst;
    std::vector<RevealedItem> out;
    for (int x = 0; x < inst.n(); ++x) {
        RevealedItem it;
        it.client = x;
        if (d.ornament) {
            it.cluster = d.cluster_at(mv.phi[static_cast<std::size_t>(x)], 0);
            it.proxies = d.clusters[static_cast<std::size_t>(it.cluster)].portals;
            out.push_back(std::move(it));
            continue;
        }
        int a = mv.anchor[static_cast<std::size_t>(x)];
        double R = mv.anchor_dist[static_cast<std::size_t>(x)];
        bool moved = mv.phi[static_cast<std::size_t>(x)] != x;
        int level = 0;
        if (!moved && R > 0) {
            double j = std::ceil(std::log2(R / (eps * d.unit)) + std::log2(d.ddim / eps) + 1 - 1e-12);
            int jc = static_cast<int>(std::clamp(j, 0.0, static_cast<double>(d.L)));
            std::vector<int> ball;
            for (int g : d.universe)
                if (inst.dist(a, g) <= R / eps) ball.push_back(g);
            int cut = cut_level_gids(d, ball);
            int lowest = cut == kNeverCut ? 0 : cut + 1;
            level = std::min(jc, lowest);
        }
        it.cluster = d.cluster_at(a, level);
        const auto& portals = d.clusters[static_cast<std::size_t>(it.cluster)].portals;
        for (int p : portals)
            if (inst.dist(a, p) <= R / eps) it.proxies.push_back(p);
        if (it.proxies.empty()) it.proxies = portals;
        out.push_back(std::move(it));
    }
    return out;
}

std::map<int, int> compute_revealed_clusters(const Decomposition& decomp, const MovedInstance& moved, double eps) {
    std::map<int, int> out;
    for (const auto& it : revealed_items(decomp, moved, eps)) out[it.client] = it.cluster;
    return out;
}

nlohmann::json DpStats::to_json() const {
    return {{"ops", ops}, {"entries", entries}, {"entries_per_level", entries_per_level}, {"root_entries", root_entries}, {"bad_clients", bad_clients}};
}

namespace {

// ascending discretization values; the last one is always infinity
struct Grid {
    std::vector<double> v;
    int inf() const { return static_cast<int>(v.size()) - 1; }
    int disc(double x) const {
        if (!std::isfinite(x)) return inf();
        double tol = 1e-12 * std::max(1.0, std::abs(x));
        return static_cast<int>(std::lower_bound(v.begin(), v.end(), x - tol) - v.begin());
    }
};

struct Entry {
    std::vector<double> cost;
    std::vector<int> choice;
};

struct Pick {
    bool compressed = true;
    std::uint64_t key = 0;
    int count = 0;
};

struct Choice {
    std::vector<int> Z;  // facility gids opened at this cluster
    std::vector<Pick> kids;
};

struct Item {
    int x = -1;
    std::vector<int> pidx;   // proxy portal indices
    std::vector<double> pd;  // distances to those portals
};

struct Node {
    bool active = false;
    std::vector<int> portals;
    std::vector<Grid> ag, bg;
    std::vector<int> kids;
    std::vector<int> orns;
    std::vector<int> leaf_fac;
    std::vector<Item> items;
    std::vector<int> pending;  // clients deferred by the compressed entry
    std::map<std::uint64_t, Entry> table;
    std::map<std::uint32_t, std::vector<std::pair<std::uint32_t, const Entry*>>> by_b;
    std::vector<Choice> choices;
};

struct ZCand {
    std::vector<int> fac;
    double ocost = 0;
};

struct BP {
    std::uint32_t prev = 0;
    int prev_c = 0;
    int opt = -1;
    int kid_c = 0;
};

struct StateRec {
    std::vector<double> cost;
    std::vector<BP> bp;
};

std::uint32_t pack(const std::vector<int>& idx) {
    std::uint32_t k = 0;
    for (std::size_t i = 0; i < idx.size(); ++i) k |= static_cast<std::uint32_t>(idx[i]) << (8 * i);
    return k;
}

int unpack(std::uint32_t k, std::size_t i) { return static_cast<int>((k >> (8 * i)) & 0xffu); }

// advance a mixed-radix counter; false once it wraps
bool next_combo(std::vector<int>& idx, const std::vector<int>& sizes) {
    for (std::size_t i = 0; i < idx.size(); ++i) {
        if (++idx[i] < sizes[i]) return true;
        idx[i] = 0;
    }
    return false;
}

class Dp {
public:
    Dp(SolverKind kind, const MetricInstance& inst, int k, const Solution& S, const SolverParams& params, std::uint64_t seed)
        : kind_(kind), inst_(inst), params_(params), seed_(seed), S_(S) {
        fl_ = objective_of(kind) == Objective::FacilityLocation;
        K_ = fl_ ? 0 : k;
    }

    Solution run(DpStats* stats) {
        const double eps = params_.epsilon;
        Regime regime = regime_of(kind_);
        int ddim = regime == Regime::Centers ? inst_.ddim_hint_facilities : inst_.ddim_hint_clients;
        DecompParams dpp;
        dpp.rho = params_.rho(ddim);
        dpp.seed = seed_;
        dpp.badly_cut_slack = params_.badly_cut_slack;
        dpp.epsilon = eps;
        dpp.portal_cap = params_.portal_cap;
        dpp.exact_ann = params_.exact_ann;
        Decomposition d = regime == Regime::Centers ? build_talwar(inst_, Side::Facility, dpp) : build_ornament_decomposition(inst_, dpp);
        d_ = &d;
        MovedInstance mv = build_moved_instance(inst_, S_, d, S_, eps);
        stats_.bad_clients = static_cast<int>(mv.bad_clients.size());
        stats_.entries_per_level.assign(static_cast<std::size_t>(d.L + 1), 0);

        if (!fl_) {
            double cs = S_.total_cost;
            lo_ = cs / std::max(1, inst_.n());
            ratio_ = 1 + eps / (params_.gamma_kappa * std::max(1, d.L - 4));
            cap_ = 2 * cs * ratio_;
        }

        nodes_.assign(d.clusters.size(), Node{});
        for (const auto& c : d.clusters) {
            if (c.is_ornament) continue;
            Node& nd = nodes_[static_cast<std::size_t>(c.id)];
            nd.active = true;
            nd.portals = c.portals;
            for (int kid : c.children) {
                const Cluster& kc = d.clusters[static_cast<std::size_t>(kid)];
                if (kc.is_ornament)
                    nd.orns.push_back(kc.ornament_point);
                else
                    nd.kids.push_back(kid);
            }
            if (c.children.empty() && regime == Regime::Centers) nd.leaf_fac = c.members;
            build_grids(c, nd);
        }
        for (const auto& it : revealed_items(d, mv, eps)) {
            Node& nd = nodes_[static_cast<std::size_t>(it.cluster)];
            Item item;
            item.x = it.client;
            for (int p : it.proxies) {
                auto pos = std::find(nd.portals.begin(), nd.portals.end(), p);
                item.pidx.push_back(static_cast<int>(pos - nd.portals.begin()));
                item.pd.push_back(inst_.dist(it.client, p));
            }
            nd.items.push_back(std::move(item));
        }
        for (int l = 0; l <= d.L; ++l)
            for (int cid : d.levels[static_cast<std::size_t>(l)]) {
                Node& nd = nodes_[static_cast<std::size_t>(cid)];
                if (!nd.active) continue;
                process(cid, l);
                stats_.entries_per_level[static_cast<std::size_t>(l)] += static_cast<std::int64_t>(nd.table.size());
                stats_.entries += static_cast<std::int64_t>(nd.table.size());
            }
        Node& root = nodes_[static_cast<std::size_t>(d.root())];
        stats_.root_entries = static_cast<int>(root.table.size());
        Objective obj = objective_of(kind_);
        Solution best;
        best.total_cost = kInf;
        std::set<std::vector<int>> tried;
        for (const auto& [key, e] : root.table)
            for (int c = 0; c <= K_; ++c) {
                if (!std::isfinite(e.cost[static_cast<std::size_t>(c)])) continue;
                std::vector<int> open;
                collect(d.root(), key, c, open);
                for (int& g : open) g -= inst_.n();
                std::sort(open.begin(), open.end());
                open.erase(std::unique(open.begin(), open.end()), open.end());
                if (open.empty() || (!fl_ && static_cast<int>(open.size()) > K_)) continue;
                if (!tried.insert(open).second) continue;
                Solution s = make_solution(inst_, open, obj);
                if (s.total_cost < best.total_cost) best = std::move(s);
            }
        if (stats) *stats = stats_;
        if (!std::isfinite(best.total_cost)) throw Infeasible("dynamic program produced no feasible root entry");
        return best;
    }

private:
    double round_cost(double v) const {
        if (fl_ || !std::isfinite(v)) return v;
        if (v <= 0) return 0;
        double r;
        if (v <= lo_) {
            r = lo_;
        } else {
            double e = std::ceil(std::log(v / lo_) / std::log(ratio_) - 1e-9);
            r = std::max(v, lo_ * std::pow(ratio_, e));  // grid values map to themselves
        }
        return r > cap_ ? kInf : r;
    }

    Grid make_grid(int level, int p, const std::vector<int>& facs) const {
        double step = params_.rho(d_->ddim) * d_->scale(level);
        double R = d_->scale(level) * std::max(1 / params_.epsilon, 4.0);
        std::vector<double> vals;
        for (int f : facs) {
            double v = inst_.dist(p, f);
            double r = step > 0 ? std::ceil(v / step) * step : v;
            if (r < v) r = v;
            if (r < R) vals.push_back(r);
        }
        std::sort(vals.begin(), vals.end());
        vals.erase(std::unique(vals.begin(), vals.end()), vals.end());
        std::size_t want = static_cast<std::size_t>(params_.bucket_count - 1);
        Grid g;
        if (vals.size() <= want) {
            g.v = vals;
        } else if (want == 1) {
            g.v = {vals.front()};
        } else {
            for (std::size_t i = 0; i < want; ++i) {
                std::size_t at = static_cast<std::size_t>(std::llround(static_cast<double>(i) * static_cast<double>(vals.size() - 1) / static_cast<double>(want - 1)));
                g.v.push_back(vals[at]);
            }
            g.v.erase(std::unique(g.v.begin(), g.v.end()), g.v.end());
        }
        g.v.push_back(R);
        g.v.push_back(kInf);
        return g;
    }

    void build_grids(const Cluster& c, Node& nd) {
        std::vector<int> inside, outside;
        std::vector<char> in(static_cast<std::size_t>(inst_.size()), 0);
        for (int g : c.members)
            if (!inst_.is_client(g)) {
                inside.push_back(g);
                in[static_cast<std::size_t>(g)] = 1;
            }
        for (int f = inst_.n(); f < inst_.size(); ++f)
            if (!in[static_cast<std::size_t>(f)]) outside.push_back(f);
        for (int p : nd.portals) {
            nd.ag.push_back(make_grid(c.level, p, inside));
            Grid b = outside.empty() ? Grid{{kInf}} : make_grid(c.level, p, outside);
            nd.bg.push_back(b);
        }
    }

    std::vector<ZCand> z_candidates(const Node& nd) const {
        std::vector<ZCand> out{ZCand{}};
        if (!nd.leaf_fac.empty()) {
            int best = nd.leaf_fac.front();
            for (int f : nd.leaf_fac)
                if (inst_.ocost(f - inst_.n()) < inst_.ocost(best - inst_.n())) best = f;
            out.push_back({{best}, inst_.ocost(best - inst_.n())});
            return out;
        }
        if (nd.orns.empty()) return out;
        std::set<std::vector<int>> seen{{}};
        auto add = [&](std::vector<int> z) {
            std::sort(z.begin(), z.end());
            if (!seen.insert(z).second) return;
            ZCand zc;
            zc.fac = z;
            for (int y : z) zc.ocost += inst_.ocost(y - inst_.n());
            out.push_back(std::move(zc));
        };
        for (int y : nd.orns) add({y});
        // targets over the cluster's portals; each target vector yields one exact cover
        std::size_t P = nd.portals.size();
        std::vector<std::vector<double>> tv(P);
        for (std::size_t p = 0; p < P; ++p) {
            for (int y : nd.orns) tv[p].push_back(inst_.dist(nd.portals[p], y));
            std::sort(tv[p].begin(), tv[p].end());
            tv[p].erase(std::unique(tv[p].begin(), tv[p].end()), tv[p].end());
            tv[p].push_back(kInf);
        }
        std::vector<int> idx(P, 0), sizes(P);
        for (std::size_t p = 0; p < P; ++p) sizes[p] = static_cast<int>(tv[p].size());
        int guard = 0;
        do {
            if (++guard > 4096) break;
            std::vector<int> U;
            for (std::size_t p = 0; p < P; ++p)
                if (std::isfinite(tv[p][static_cast<std::size_t>(idx[p])])) U.push_back(static_cast<int>(p));
            if (U.empty() || static_cast<int>(U.size()) > params_.set_cover_max) continue;
            std::vector<std::vector<int>> sets;
            std::vector<double> w;
            for (int y : nd.orns) {
                std::vector<int> R;
                for (std::size_t u = 0; u < U.size(); ++u) {
                    std::size_t p = static_cast<std::size_t>(U[u]);
                    if (inst_.dist(nd.portals[p], y) <= tv[p][static_cast<std::size_t>(idx[p])]) R.push_back(static_cast<int>(u));
                }
                sets.push_back(std::move(R));
                w.push_back(fl_ ? inst_.ocost(y - inst_.n()) : 1.0);
            }
            try {
                auto res = weighted_set_cover_exact(static_cast<int>(U.size()), sets, w, params_.set_cover_max);
                std::vector<int> z;
                for (int s : res.selection) z.push_back(nd.orns[static_cast<std::size_t>(s)]);
                add(std::move(z));
            } catch (const Infeasible&) {
            }
        } while (next_combo(idx, sizes));
        return out;
    }

    void charge_ops(std::int64_t n) {
        stats_.ops += n;
        if (static_cast<double>(stats_.ops) > params_.budget) throw BudgetExceeded("dynamic program exceeded its entry budget");
    }

    void process(int cid, int level) {
        Node& nd = nodes_[static_cast<std::size_t>(cid)];
        const bool is_root = cid == d_->root();
        const std::size_t P = nd.portals.size();
        const std::size_t nk = nd.kids.size();
        const std::size_t K1 = static_cast<std::size_t>(K_ + 1);

        for (const auto& it : nd.items) nd.pending.push_back(it.x);
        for (int kid : nd.kids) {
            const auto& kp = nodes_[static_cast<std::size_t>(kid)].pending;
            nd.pending.insert(nd.pending.end(), kp.begin(), kp.end());
        }

        // kid portal -> cluster portal distances
        std::vector<std::vector<std::vector<double>>> kd(nk);
        std::vector<std::vector<std::vector<double>>> pend(nk);
        for (std::size_t i = 0; i < nk; ++i) {
            const Node& kn = nodes_[static_cast<std::size_t>(nd.kids[i])];
            kd[i].assign(kn.portals.size(), std::vector<double>(P));
            for (std::size_t q = 0; q < kn.portals.size(); ++q)
                for (std::size_t p = 0; p < P; ++p) kd[i][q][p] = inst_.dist(kn.portals[q], nd.portals[p]);
            for (int x : kn.pending) {
                std::vector<double> row(P);
                for (std::size_t p = 0; p < P; ++p) row[p] = inst_.dist(x, nd.portals[p]);
                pend[i].push_back(std::move(row));
            }
        }
        // for each kid a-vector, its contribution to the inside distance of each portal
        std::vector<std::map<std::uint32_t, std::vector<int>>> contrib(nk);
        std::vector<std::set<int>> gvals(P);
        for (std::size_t i = 0; i < nk; ++i) {
            const Node& kn = nodes_[static_cast<std::size_t>(nd.kids[i])];
            for (const auto& [key, e] : kn.table) {
                std::uint32_t ap = static_cast<std::uint32_t>(key >> 32);
                if (contrib[i].count(ap)) continue;
                std::vector<int> c(P);
                for (std::size_t p = 0; p < P; ++p) {
                    double best = kInf;
                    for (std::size_t q = 0; q < kn.portals.size(); ++q) best = std::min(best, kd[i][q][p] + kn.ag[q].v[static_cast<std::size_t>(unpack(ap, q))]);
                    c[p] = nd.ag[p].disc(best);
                    if (nk > 1 && c[p] != nd.ag[p].inf()) gvals[p].insert(c[p]);
                }
                contrib[i].emplace(ap, std::move(c));
            }
        }
        std::vector<ZCand> zs = z_candidates(nd);
        std::vector<std::vector<double>> dZ(zs.size(), std::vector<double>(P, kInf));
        std::vector<std::vector<std::vector<double>>> dZq(zs.size(), std::vector<std::vector<double>>(nk));
        for (std::size_t z = 0; z < zs.size(); ++z) {
            for (int y : zs[z].fac)
                for (std::size_t p = 0; p < P; ++p) dZ[z][p] = std::min(dZ[z][p], inst_.dist(nd.portals[p], y));
            for (std::size_t i = 0; i < nk; ++i) {
                const Node& kn = nodes_[static_cast<std::size_t>(nd.kids[i])];
                dZq[z][i].assign(kn.portals.size(), kInf);
                for (int y : zs[z].fac)
                    for (std::size_t q = 0; q < kn.portals.size(); ++q) dZq[z][i][q] = std::min(dZq[z][i][q], inst_.dist(kn.portals[q], y));
            }
        }

        std::vector<int> bsz(P);
        double bcombos = 1, gcombos = 1;
        for (std::size_t p = 0; p < P; ++p) {
            bsz[p] = static_cast<int>(nd.bg[p].v.size());
            bcombos *= bsz[p];
            gcombos *= static_cast<double>(gvals[p].size() + 1);
        }
        double estimate = bcombos * static_cast<double>(zs.size()) * gcombos * static_cast<double>(nk + 1);
        if (static_cast<double>(stats_.ops) + estimate > params_.budget) throw BudgetExceeded("dynamic program configuration space above budget");

        std::vector<int> bidx(P, 0);
        std::vector<double> bval(P), H(P);
        do {
            for (std::size_t p = 0; p < P; ++p) bval[p] = nd.bg[p].v[static_cast<std::size_t>(bidx[p])];
            for (std::size_t z = 0; z < zs.size(); ++z) {
                // guesses of the inside distance promised to the kids
                std::vector<std::vector<int>> gopts(P);
                for (std::size_t p = 0; p < P; ++p) {
                    for (int g : gvals[p])
                        if (nd.ag[p].v[static_cast<std::size_t>(g)] < bval[p]) gopts[p].push_back(g);
                    gopts[p].push_back(nd.ag[p].inf());
                }
                std::vector<int> gi(P, 0), gsz(P);
                for (std::size_t p = 0; p < P; ++p) gsz[p] = static_cast<int>(gopts[p].size());
                do {
                    std::vector<int> G(P);
                    for (std::size_t p = 0; p < P; ++p) {
                        G[p] = gopts[p][static_cast<std::size_t>(gi[p])];
                        H[p] = std::min(nd.ag[p].v[static_cast<std::size_t>(G[p])], bval[p]);
                    }
                    run_kids(nd, cid, is_root, level, zs[z], dZ[z], dZq[z], kd, pend, contrib, G, H, bidx, bval, K1);
                } while (next_combo(gi, gsz));
            }
        } while (next_combo(bidx, bsz));

        if (!fl_)
            for (auto& [key, e] : nd.table)
                for (std::size_t c = 1; c < K1; ++c)
                    if (e.cost[c - 1] <= e.cost[c]) {
                        e.cost[c] = e.cost[c - 1];
                        e.choice[c] = e.choice[c - 1];
                    }
        for (const auto& [key, e] : nd.table)
            nd.by_b[static_cast<std::uint32_t>(key & 0xffffffffu)].emplace_back(static_cast<std::uint32_t>(key >> 32), &e);
    }

    void run_kids(Node& nd, int cid, bool is_root, int level, const ZCand& zc, const std::vector<double>& dZ,
                  const std::vector<std::vector<double>>& dZq, const std::vector<std::vector<std::vector<double>>>& kd,
                  const std::vector<std::vector<std::vector<double>>>& pend, const std::vector<std::map<std::uint32_t, std::vector<int>>>& contrib,
                  const std::vector<int>& G, const std::vector<double>& H, const std::vector<int>& bidx, const std::vector<double>& bval, std::size_t K1) {
        (void)cid;
        (void)level;
        const std::size_t P = nd.portals.size();
        const std::size_t nk = nd.kids.size();
        using Opts = std::vector<std::pair<std::uint32_t, const Entry*>>;
        static const Opts kNone;
        std::vector<const Opts*> opts(nk, &kNone);
        std::vector<std::uint32_t> kid_b(nk);
        std::vector<double> comp(nk, 0.0);
        for (std::size_t i = 0; i < nk; ++i) {
            const Node& kn = nodes_[static_cast<std::size_t>(nd.kids[i])];
            std::vector<int> bi(kn.portals.size());
            for (std::size_t q = 0; q < kn.portals.size(); ++q) {
                double avail = dZq[i][q];
                for (std::size_t p = 0; p < P; ++p) avail = std::min(avail, kd[i][q][p] + H[p]);
                bi[q] = kn.bg[q].disc(avail);
            }
            kid_b[i] = pack(bi);
            auto it = kn.by_b.find(kid_b[i]);
            if (it != kn.by_b.end()) opts[i] = &it->second;
            for (const auto& row : pend[i]) {
                double best = kInf;
                for (std::size_t p = 0; p < P; ++p) best = std::min(best, row[p] + std::min(H[p], dZ[p]));
                comp[i] += best;
            }
        }

        std::vector<std::map<std::uint32_t, StateRec>> stages(nk + 1);
        std::vector<int> m0(P);
        for (std::size_t p = 0; p < P; ++p) m0[p] = nd.ag[p].inf();
        StateRec init;
        init.cost.assign(K1, kInf);
        init.bp.assign(K1, BP{});
        init.cost[0] = 0;
        stages[0].emplace(pack(m0), std::move(init));
        for (std::size_t i = 0; i < nk; ++i) {
            charge_ops(static_cast<std::int64_t>(stages[i].size() * (opts[i]->size() + 1) * K1 * K1));
            auto& next = stages[i + 1];
            auto relax = [&](std::uint32_t key, std::size_t c, double v, BP bp) {
                auto it = next.find(key);
                if (it == next.end()) {
                    StateRec r;
                    r.cost.assign(K1, kInf);
                    r.bp.assign(K1, BP{});
                    it = next.emplace(key, std::move(r)).first;
                }
                if (v < it->second.cost[c]) {
                    it->second.cost[c] = v;
                    it->second.bp[c] = bp;
                }
            };
            for (const auto& [mk, rec] : stages[i]) {
                if (std::isfinite(comp[i]))
                    for (std::size_t c = 0; c < K1; ++c)
                        if (std::isfinite(rec.cost[c])) relax(mk, c, rec.cost[c] + comp[i], BP{mk, static_cast<int>(c), -1, 0});
                for (std::size_t o = 0; o < opts[i]->size(); ++o) {
                    const auto& [ap, e] = (*opts[i])[o];
                    const auto& cv = contrib[i].at(ap);
                    std::vector<int> nm(P);
                    for (std::size_t p = 0; p < P; ++p) nm[p] = std::min(unpack(mk, p), cv[p]);
                    std::uint32_t nkey = pack(nm);
                    for (std::size_t c1 = 0; c1 < K1; ++c1) {
                        if (!std::isfinite(rec.cost[c1])) continue;
                        for (std::size_t c2 = 0; c1 + c2 < K1; ++c2) {
                            double v = rec.cost[c1] + e->cost[c2];
                            if (std::isfinite(v)) relax(nkey, c1 + c2, v, BP{mk, static_cast<int>(c1), static_cast<int>(o), static_cast<int>(c2)});
                        }
                    }
                }
            }
        }

        const std::size_t zcount = zc.fac.size();
        if (!fl_ && zcount >= K1) return;
        for (const auto& [mk, rec] : stages[nk]) {
            bool ok = true;
            for (std::size_t p = 0; p < P && ok; ++p) ok = unpack(mk, p) <= G[p];
            if (!ok) continue;
            std::vector<int> a(P);
            bool all_inf = true;
            for (std::size_t p = 0; p < P; ++p) {
                a[p] = nd.ag[p].disc(std::min(nd.ag[p].v[static_cast<std::size_t>(unpack(mk, p))], dZ[p]));
                if (a[p] != nd.ag[p].inf() || std::isfinite(bval[p])) all_inf = false;
            }
            if (all_inf) continue;
            double charge = 0;
            for (const auto& it : nd.items) {
                double best = kInf;
                for (std::size_t u = 0; u < it.pidx.size(); ++u) {
                    std::size_t p = static_cast<std::size_t>(it.pidx[u]);
                    best = std::min(best, it.pd[u] + std::min(nd.ag[p].v[static_cast<std::size_t>(a[p])], bval[p]));
                }
                charge += best;
            }
            if (!std::isfinite(charge)) continue;
            if (is_root) {
                bool any = false;
                for (std::size_t p = 0; p < P; ++p) any = any || a[p] != nd.ag[p].inf();
                if (!any && !nd.items.empty()) continue;
            }
            std::uint64_t key = (static_cast<std::uint64_t>(pack(a)) << 32) | pack(bidx);
            for (std::size_t c = 0; c < K1; ++c) {
                if (!std::isfinite(rec.cost[c])) continue;
                std::size_t tc = fl_ ? 0 : c + zcount;
                if (tc >= K1) continue;
                double v = round_cost(rec.cost[c] + charge + (fl_ ? zc.ocost : 0.0));
                if (!std::isfinite(v)) continue;
                auto it = nd.table.find(key);
                if (it == nd.table.end()) it = nd.table.emplace(key, Entry{std::vector<double>(K1, kInf), std::vector<int>(K1, -1)}).first;
                Entry& e = it->second;
                if (!(v < e.cost[tc])) continue;
                Choice ch;
                ch.Z = zc.fac;
                ch.kids.resize(nk);
                std::uint32_t cur = mk;
                int cc = static_cast<int>(c);
                for (std::size_t i = nk; i-- > 0;) {
                    const BP& bp = stages[i + 1].at(cur).bp[static_cast<std::size_t>(cc)];
                    Pick pk;
                    if (bp.opt >= 0) {
                        pk.compressed = false;
                        pk.key = (static_cast<std::uint64_t>((*opts[i])[static_cast<std::size_t>(bp.opt)].first) << 32) | kid_b[i];
                        pk.count = bp.kid_c;
                    }
                    ch.kids[i] = pk;
                    cur = bp.prev;
                    cc = bp.prev_c;
                }
                e.cost[tc] = v;
                e.choice[tc] = static_cast<int>(nd.choices.size());
                nd.choices.push_back(std::move(ch));
            }
        }
    }

    void collect(int cid, std::uint64_t key, int c, std::vector<int>& open) const {
        const Node& nd = nodes_[static_cast<std::size_t>(cid)];
        const Entry& e = nd.table.at(key);
        int ci = e.choice[static_cast<std::size_t>(c)];
        if (ci < 0) return;
        const Choice& ch = nd.choices[static_cast<std::size_t>(ci)];
        open.insert(open.end(), ch.Z.begin(), ch.Z.end());
        for (std::size_t i = 0; i < ch.kids.size(); ++i)
            if (!ch.kids[i].compressed) collect(nd.kids[i], ch.kids[i].key, ch.kids[i].count, open);
    }

    SolverKind kind_;
    const MetricInstance& inst_;
    const SolverParams& params_;
    std::uint64_t seed_;
    const Solution& S_;
    bool fl_ = true;
    int K_ = 0;
    double lo_ = 0, ratio_ = 1, cap_ = kInf;
    const Decomposition* d_ = nullptr;
    std::vector<Node> nodes_;
    DpStats stats_;
};

// cases the dynamic program does not need to touch
std::optional<Solution> trivial_solution(SolverKind kind, const MetricInstance& inst, int k) {
    Objective obj = objective_of(kind);
    if (inst.n() == 0) return make_solution(inst, {}, obj);
    if (inst.m() == 0) throw NoFacilities("no facilities");
    if (obj == Objective::KMedian) {
        if (k < 1) throw Infeasible("k must be at least 1 when clients exist");
        if (k >= inst.m()) {
            std::vector<int> all(static_cast<std::size_t>(inst.m()));
            for (int f = 0; f < inst.m(); ++f) all[static_cast<std::size_t>(f)] = f;
            return make_solution(inst, all, obj);
        }
    }
    if (inst.m() == 1) return make_solution(inst, {0}, obj);
    return std::nullopt;
}

}  // namespace

Solution dp_round(SolverKind kind, const MetricInstance& inst, int k, const Solution& S, const SolverParams& params, std::uint64_t seed, DpStats* stats) {
    params.validate();
    if (auto t = trivial_solution(kind, inst, k)) return *t;
    if (objective_of(kind) == Objective::KMedian && !(S.total_cost > 0)) return S;
    Dp dp(kind, inst, k, S, params, seed);
    Solution s = dp.run(stats);
    s.params_echo = params.echo();
    s.seed = params.seed;
    return s;
}

Solution bootstrap(SolverKind kind, const MetricInstance& inst, int k, const SolverParams& params, SolveTrace* trace) {
    params.validate();
    Objective obj = objective_of(kind);
    Solution best;
    if (auto t = trivial_solution(kind, inst, k)) {
        best = *t;
    } else {
        best = obj == Objective::FacilityLocation ? constant_fl(inst, params.exact_ann) : constant_kmedian(inst, k, params.exact_ann);
        if (trace) trace->baseline_cost = best.total_cost;
        int ddim = regime_of(kind) == Regime::Centers ? inst.ddim_hint_facilities : inst.ddim_hint_clients;
        int rounds = params.rounds(ddim);
        for (int r = 0; r < rounds; ++r) {
            Solution S = best;
            double round_best = kInf;
            bool improved = false;
            for (int rep = 0; rep < params.repeats; ++rep) {
                std::uint64_t seed = split_seed(params.seed, stream::bootstrap, static_cast<std::uint64_t>(r) * 1000 + static_cast<std::uint64_t>(rep));
                Solution s;
                try {
                    s = dp_round(kind, inst, k, S, params, seed);
                } catch (const Infeasible&) {
                    // every root entry fell off the discretized grid; this repeat produced nothing
                    continue;
                }
                round_best = std::min(round_best, s.total_cost);
                if (trace) trace->best_dp_cost = std::min(trace->best_dp_cost, s.total_cost);
                if (s.total_cost < best.total_cost * (1 - 1e-12)) {
                    best = std::move(s);
                    improved = true;
                }
            }
            if (trace) {
                trace->round_costs.push_back(round_best);
                if (improved) ++trace->improvements;
            }
        }
    }
    best.params_echo = params.echo();
    best.seed = params.seed;
    return best;
}

Solution solve_fl_centers(const MetricInstance& inst, const SolverParams& params) { return bootstrap(SolverKind::FlCenters, inst, 0, params); }
Solution solve_fl_clients(const MetricInstance& inst, const SolverParams& params) { return bootstrap(SolverKind::FlClients, inst, 0, params); }
Solution solve_kmedian_centers(const MetricInstance& inst, int k, const SolverParams& params) {
    return bootstrap(SolverKind::KMedianCenters, inst, k, params);
}
Solution solve_kmedian_clients(const MetricInstance& inst, int k, const SolverParams& params) {
    return bootstrap(SolverKind::KMedianClients, inst, k, params);
}

}  // namespace pdc
