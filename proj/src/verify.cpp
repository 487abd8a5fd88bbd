#include "pdclust/verify.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <map>
#include <set>

#include "pdclust/aspect.hpp"
#include "pdclust/frechet.hpp"
#include "pdclust/generate.hpp"
#include "pdclust/oracle.hpp"
#include "pdclust/portal.hpp"
#include "pdclust/profile.hpp"

namespace pdc {

nlohmann::json to_json(const CheckResult& r) { return {{"name", r.name}, {"pass", r.pass}, {"detail", r.detail}}; }

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

double round_to(double v, double step) { return std::round(v / step) * step; }

std::vector<std::vector<double>> random_points(Rng& rng, int count, int dim, double hi, double step) {
    std::vector<std::vector<double>> pts;
    for (int i = 0; i < count; ++i) {
        std::vector<double> p;
        for (int c = 0; c < dim; ++c) p.push_back(round_to(rng.uniform(0, hi), step));
        pts.push_back(std::move(p));
    }
    return pts;
}

MetricInstance random_instance(Rng& rng, int n, int m, int dim, double hi, double step) {
    auto X = random_points(rng, n, dim, hi, step);
    auto Y = random_points(rng, m, dim, hi, step);
    MetricInstance inst = MetricInstance::euclidean(std::move(X), std::move(Y));
    inst.ddim_hint_clients = dim;
    inst.ddim_hint_facilities = dim;
    inst.finalize();
    return inst;
}

// every series of the given length over the values, in lexicographic order
void for_each_series(const std::vector<double>& values, std::size_t len, const std::function<void(const Series&)>& fn) {
    Series s(len, values.front());
    std::vector<std::size_t> idx(len, 0);
    while (true) {
        for (std::size_t i = 0; i < len; ++i) s[i] = values[idx[i]];
        fn(s);
        std::size_t j = len;
        bool done = true;
        while (j > 0) {
            --j;
            if (++idx[j] < values.size()) {
                done = false;
                break;
            }
            idx[j] = 0;
        }
        if (done) return;
    }
}

}  // namespace

MetricInstance corpus_instance(std::uint64_t seed, int index, bool with_opening_costs, int* k_out) {
    Rng rng(split_seed(seed, stream::verify, 10000 + static_cast<std::uint64_t>(index)));
    int dim = rng.range(1, 2);
    int n = rng.range(2, 10), m = rng.range(2, 6);
    int k = std::min(m, rng.range(1, 3));
    MetricInstance inst = random_instance(rng, n, m, dim, 10.0, 0.01);
    if (with_opening_costs) {
        std::vector<double> oc;
        for (int j = 0; j < m; ++j) oc.push_back(round_to(rng.uniform(0.5, 3.0), 0.01));
        inst.opening_costs = oc;
    } else {
        inst.k = k;
    }
    inst.finalize();
    if (k_out) *k_out = k;
    return inst;
}

CheckResult check_nets(int trials, std::uint64_t seed) {
    auto t0 = Clock::now();
    CheckResult r{"nets", true, {}};
    int packing_fail = 0, covering_fail = 0, subset_fail = 0;
    for (int t = 0; t < trials; ++t) {
        Rng rng(split_seed(seed, stream::verify, 100000 + static_cast<std::uint64_t>(t)));
        int dim = rng.range(1, 2);
        int size = rng.range(1, 200);
        MetricInstance inst = random_instance(rng, size, 0, dim, 100.0, 0.01);
        std::vector<PointId> domain;
        for (int i = 0; i < size; ++i)
            if (rng.uniform() < 0.8) domain.push_back(client(i));
        double radius = rng.uniform(0.5, 50.0);
        Net net = greedy_net(inst, domain, radius);
        std::set<PointId> dom(domain.begin(), domain.end());
        bool pack = true, cover = true, sub = true;
        for (std::size_t a = 0; a < net.centers.size(); ++a) {
            if (!dom.count(net.centers[a])) sub = false;
            for (std::size_t b = a + 1; b < net.centers.size(); ++b)
                if (inst.distance(net.centers[a], net.centers[b]) < radius) pack = false;
        }
        for (auto p : domain) {
            bool hit = false;
            for (auto c : net.centers) hit = hit || inst.distance(p, c) <= radius;
            if (!hit) cover = false;
        }
        packing_fail += !pack;
        covering_fail += !cover;
        subset_fail += !sub;
    }
    r.pass = packing_fail == 0 && covering_fail == 0 && subset_fail == 0;
    r.detail = {{"trials", trials}, {"packing_failures", packing_fail}, {"covering_failures", covering_fail}, {"subset_failures", subset_fail}, {"seconds", seconds_since(t0)}};
    return r;
}

CheckResult check_cutting(int trials, std::uint64_t seed) {
    auto t0 = Clock::now();
    CheckResult r{"cutting", true, {}};
    Rng prng(split_seed(seed, stream::verify, 200000));
    const int npts = 30;
    MetricInstance inst = random_instance(prng, 0, npts, 2, 100.0, 0.01);
    const int ddim = inst.ddim_hint_facilities;
    std::vector<int> pts = side_ids(inst, Side::Facility);
    // fixed random balls for the badly-cut frequency
    const std::vector<double> eps_values{0.1, 0.25};
    struct BallSpec {
        int center;
        double radius;
    };
    std::vector<BallSpec> balls;
    double diam = diameter(inst, pts);
    for (int b = 0; b < 20; ++b) balls.push_back({pts[prng.below(pts.size())], prng.uniform(1.0, diam)});

    std::vector<std::vector<int>> bad(eps_values.size(), std::vector<int>(balls.size(), 0));
    int L = 0;
    double unit = 1;
    std::size_t npairs = pts.size() * (pts.size() - 1) / 2;
    std::vector<std::vector<int>> counts(npairs);
    for (int t = 0; t < trials; ++t) {
        DecompParams p;
        p.rho = 0.25;
        p.seed = split_seed(seed, stream::verify, 210000 + static_cast<std::uint64_t>(t));
        Decomposition d = build_talwar(inst, Side::Facility, p);
        L = d.L;
        unit = d.unit;
        std::size_t pi = 0;
        for (std::size_t a = 0; a < pts.size(); ++a)
            for (std::size_t b = a + 1; b < pts.size(); ++b, ++pi) {
                auto& c = counts[pi];
                if (c.empty()) c.assign(static_cast<std::size_t>(L + 1), 0);
                for (int l = 0; l < L; ++l)
                    if (d.cluster_at(pts[a], l) != d.cluster_at(pts[b], l)) ++c[static_cast<std::size_t>(l)];
            }
        for (std::size_t e = 0; e < eps_values.size(); ++e)
            for (std::size_t b = 0; b < balls.size(); ++b)
                if (is_badly_cut_gid(d, balls[b].center, balls[b].radius, eps_values[e])) ++bad[e][b];
    }
    double worst_c = 0;
    std::size_t pi = 0;
    for (std::size_t a = 0; a < pts.size(); ++a)
        for (std::size_t b = a + 1; b < pts.size(); ++b, ++pi)
            for (int l = 0; l < L; ++l) {
                double freq = static_cast<double>(counts[pi][static_cast<std::size_t>(l)]) / trials;
                double base = ddim * inst.dist(pts[a], pts[b]) / std::ldexp(unit, l);
                if (freq > 0) worst_c = std::max(worst_c, freq / base);
            }
    double worst_bad = 0;
    for (std::size_t e = 0; e < eps_values.size(); ++e)
        for (int c : bad[e]) worst_bad = std::max(worst_bad, static_cast<double>(c) / trials / eps_values[e]);
    r.pass = worst_c <= 20.0 && worst_bad <= 20.0;
    r.detail = {{"trials", trials},
                {"points", npts},
                {"levels", L},
                {"fitted_cut_constant", worst_c},
                {"fitted_badly_cut_constant", worst_bad},
                {"limit", 20.0},
                {"seconds", seconds_since(t0)}};
    return r;
}

CheckResult check_portal(int fixtures, std::uint64_t seed) {
    auto t0 = Clock::now();
    CheckResult r{"portal", true, {}};
    const double rho = 1.0 / 16;
    const double sq = std::sqrt(rho);
    int pairs = 0, lower_fail = 0, detour_fail = 0;
    double worst_talwar = 0, worst_ornament = 0, worst_projection = 0;
    for (int f = 0; f < fixtures; ++f) {
        Rng rng(split_seed(seed, stream::verify, 300000 + static_cast<std::uint64_t>(f)));
        int dim = rng.range(1, 2);
        MetricInstance inst = random_instance(rng, rng.range(2, 12), rng.range(2, 8), dim, 100.0, 0.01);
        DecompParams p;
        p.rho = rho;
        p.seed = split_seed(seed, stream::verify, 310000 + static_cast<std::uint64_t>(f));
        bool ornament = f % 2 == 1;
        Decomposition d = ornament ? build_ornament_decomposition(inst, p) : build_talwar(inst, Side::Facility, p);
        PortalPaths paths(d);
        std::vector<int> ids = ornament ? side_ids(inst, Side::Client) : d.universe;
        std::vector<int> others = ornament ? side_ids(inst, Side::Facility) : std::vector<int>{};
        auto check = [&](int x, int y, bool orn) {
            double dd = inst.dist(x, y), dp = paths.distance(x, y);
            ++pairs;
            if (dp < dd * (1 - 1e-12) - 1e-12) ++lower_fail;
            int l = cut_level_gids(d, {x, y});
            if (l == kNeverCut) return;
            double excess = dp - dd;
            if (!orn) {
                double ratio = excess / (rho * d.scale(l));
                worst_talwar = std::max(worst_talwar, ratio);
                if (ratio > 16 + 1e-9) ++detour_fail;
                return;
            }
            int h = d.ornament_level.at(y);
            if (h < l) {
                double ratio = excess / (sq * d.scale(l));
                worst_ornament = std::max(worst_ornament, ratio);
                if (ratio > 16 + 1e-9) ++detour_fail;
            } else if (dd > 0) {
                double ratio = excess / (sq * dd);
                worst_projection = std::max(worst_projection, ratio);
                if (ratio > 16 + 1e-9) ++detour_fail;
            }
        };
        for (std::size_t a = 0; a < ids.size(); ++a)
            for (std::size_t b = a + 1; b < ids.size(); ++b) check(ids[a], ids[b], false);
        for (int x : ids)
            for (int y : others) check(x, y, true);
    }
    r.pass = lower_fail == 0 && detour_fail == 0;
    r.detail = {{"fixtures", fixtures},
                {"pairs", pairs},
                {"rho", rho},
                {"lower_bound_failures", lower_fail},
                {"detour_failures", detour_fail},
                {"worst_talwar_constant", worst_talwar},
                {"worst_ornament_constant", worst_ornament},
                {"worst_projection_constant", worst_projection},
                {"limit", 16.0},
                {"seconds", seconds_since(t0)}};
    return r;
}

CheckResult check_proxy(int triples, std::uint64_t seed) {
    auto t0 = Clock::now();
    CheckResult r{"proxy", true, {}};
    int fails = 0, done = 0;
    double worst_slack = -kInf;
    int inst_index = 0;
    while (done < triples) {
        Rng rng(split_seed(seed, stream::verify, 400000 + static_cast<std::uint64_t>(inst_index++)));
        int dim = rng.range(1, 2);
        int n = rng.range(1, 20), m = rng.range(1, 30);
        MetricInstance inst = random_instance(rng, n, m, dim, 100.0, 0.01);
        std::vector<PointId> S;
        for (int j = 0; j < m; ++j)
            if (rng.uniform() < 0.3) S.push_back(facility(j));
        if (S.empty()) S.push_back(facility(static_cast<int>(rng.below(static_cast<std::size_t>(m)))));
        double eps = rng.uniform(0.05, 0.49);
        std::map<int, ProxySet> cache;
        for (int s = 0; s < 100 && done < triples; ++s, ++done) {
            int x = static_cast<int>(rng.below(static_cast<std::size_t>(n)));
            int y = static_cast<int>(rng.below(static_cast<std::size_t>(m)));
            auto it = cache.find(x);
            if (it == cache.end()) it = cache.emplace(x, proxy_set(inst, client(x), S, eps)).first;
            const ProxySet& ps = it->second;
            double d = inst.distance(client(x), facility(y));
            double h = hat_distance(inst, client(x), facility(y), ps);
            double upper = (1 + 4 * eps) * d + 2 * eps * ps.anchor_distance;
            double tol = 1e-9 * std::max(1.0, upper);
            if (h < d - tol || h > upper + tol) ++fails;
            worst_slack = std::max(worst_slack, (h - upper) / std::max(1.0, upper));
        }
    }
    r.pass = fails == 0;
    r.detail = {{"triples", triples}, {"failures", fails}, {"worst_relative_slack", worst_slack}, {"seconds", seconds_since(t0)}};
    return r;
}

CheckResult check_frechet(int random_pairs, std::uint64_t seed) {
    auto t0 = Clock::now();
    CheckResult r{"frechet", true, {}};
    std::vector<Series> all;
    for (std::size_t len = 1; len <= 5; ++len) for_each_series({0, 1, 2}, len, [&](const Series& s) { all.push_back(s); });
    long long exhaustive = 0, mismatches = 0;
    for (const auto& a : all) {
        Curve ca = Curve::from_series(a);
        for (const auto& b : all) {
            Curve cb = Curve::from_series(b);
            ++exhaustive;
            if (discrete_frechet(ca, cb) != brute_frechet(ca, cb)) ++mismatches;
        }
    }
    int random_mismatches = 0;
    for (int t = 0; t < random_pairs; ++t) {
        Rng rng(split_seed(seed, stream::verify, 500000 + static_cast<std::uint64_t>(t)));
        auto curve = [&] {
            Curve c;
            c.dim = 2;
            int len = rng.range(1, 6);
            for (int i = 0; i < len; ++i) {
                double v[2] = {round_to(rng.uniform(0, 10), 0.01), round_to(rng.uniform(0, 10), 0.01)};
                c.push(v);
            }
            return c;
        };
        Curve a = curve(), b = curve();
        if (discrete_frechet(a, b) != brute_frechet(a, b)) ++random_mismatches;
    }
    r.pass = mismatches == 0 && random_mismatches == 0;
    r.detail = {{"exhaustive_pairs", exhaustive},
                {"exhaustive_mismatches", mismatches},
                {"random_pairs", random_pairs},
                {"random_mismatches", random_mismatches},
                {"seconds", seconds_since(t0)}};
    return r;
}

CheckResult check_decide_profile() {
    auto t0 = Clock::now();
    CheckResult r{"decide_profile", true, {}};
    const std::vector<double> vals{0, 1, 2};
    std::vector<std::pair<double, double>> pairs;
    for (double a : vals)
        for (double b : vals)
            if (a <= b) pairs.emplace_back(a, b);
    long long checks = 0, mismatches = 0;
    for (std::size_t z = 1; z <= 4; ++z)
        for_each_series(vals, z, [&](const Series& x) {
            for (int ell = 1; ell <= 3; ++ell) {
                ProfileSet truth = brute_profile_set(x, ell);
                std::vector<std::size_t> idx(static_cast<std::size_t>(ell), 0);
                while (true) {
                    Profile p;
                    for (auto i : idx) p.pairs.push_back(pairs[i]);
                    ++checks;
                    if (decide_profile(x, p) != (truth.profiles.count(p) > 0)) ++mismatches;
                    std::size_t j = idx.size();
                    bool done = true;
                    while (j > 0) {
                        --j;
                        if (++idx[j] < pairs.size()) {
                            done = false;
                            break;
                        }
                        idx[j] = 0;
                    }
                    if (done) break;
                }
            }
        });
    r.pass = mismatches == 0;
    r.detail = {{"checks", checks}, {"mismatches", mismatches}, {"seconds", seconds_since(t0)}};
    return r;
}

CheckResult check_complexity_reduction(double eps) {
    auto t0 = Clock::now();
    CheckResult r{"complexity_reduction", true, {}};
    long long series = 0, profile_fail = 0, length_fail = 0, distance_fail = 0, reduced_fail = 0, distance_checks = 0;
    double worst_rel = 0;
    for (std::size_t z = 1; z <= 6; ++z)
        for_each_series({0, 1, 2}, z, [&](const Series& x) {
            for (int ell = 1; ell <= 2; ++ell) {
                ++series;
                Series xr = reduce_value_domain(x, ell, eps);
                Series out = complexity_reduction(x, ell, eps);
                if (brute_profile_set(out, ell) != brute_profile_set(xr, ell)) ++profile_fail;
                if (out.size() != brute_shortest_equivalent(xr, ell).size() || out.size() > x.size()) ++length_fail;
                std::set<double> grid(x.begin(), x.end());
                grid.insert(xr.begin(), xr.end());
                std::vector<double> g(grid.begin(), grid.end());
                Curve cx = Curve::from_series(x), cr = Curve::from_series(xr), co = Curve::from_series(out);
                for (std::size_t len = 1; len <= static_cast<std::size_t>(ell); ++len)
                    for_each_series(g, len, [&](const Series& y) {
                        ++distance_checks;
                        Curve cy = Curve::from_series(y);
                        double dx = discrete_frechet(cx, cy), dout = discrete_frechet(co, cy), dr = discrete_frechet(cr, cy);
                        if (std::abs(dout - dr) > 1e-9) ++reduced_fail;
                        if (std::abs(dout - dx) > eps * dx + 1e-9) ++distance_fail;
                        if (dx > 0) worst_rel = std::max(worst_rel, std::abs(dout - dx) / dx);
                    });
            }
        });
    r.pass = profile_fail == 0 && length_fail == 0 && distance_fail == 0 && reduced_fail == 0;
    r.detail = {{"series", series},
                {"epsilon", eps},
                {"profile_failures", profile_fail},
                {"length_failures", length_fail},
                {"distance_checks", distance_checks},
                {"distance_failures", distance_fail},
                {"reduced_distance_failures", reduced_fail},
                {"worst_relative_distance_change", worst_rel},
                {"seconds", seconds_since(t0)}};
    return r;
}

CheckResult check_set_cover(int trials, std::uint64_t seed) {
    auto t0 = Clock::now();
    CheckResult r{"set_cover", true, {}};
    int mismatches = 0, infeasible = 0;
    for (int t = 0; t < trials; ++t) {
        Rng rng(split_seed(seed, stream::verify, 600000 + static_cast<std::uint64_t>(t)));
        int u = rng.range(1, 8), s = rng.range(1, 10);
        std::vector<std::vector<int>> sets(static_cast<std::size_t>(s));
        std::vector<double> w;
        for (auto& set : sets) {
            for (int e = 0; e < u; ++e)
                if (rng.uniform() < 0.35) set.push_back(e);
            w.push_back(round_to(rng.uniform(0.1, 10.0), 0.01));
        }
        double best = kInf;
        for (std::uint32_t mask = 0; mask < (1u << s); ++mask) {
            std::uint32_t cov = 0;
            double c = 0;
            for (int i = 0; i < s; ++i)
                if (mask >> i & 1u) {
                    c += w[static_cast<std::size_t>(i)];
                    for (int e : sets[static_cast<std::size_t>(i)]) cov |= 1u << e;
                }
            if (cov == (1u << u) - 1) best = std::min(best, c);
        }
        try {
            SetCoverResult res = weighted_set_cover_exact(u, sets, w);
            double c = 0;
            std::uint32_t cov = 0;
            for (int i : res.selection) {
                c += w[static_cast<std::size_t>(i)];
                for (int e : sets[static_cast<std::size_t>(i)]) cov |= 1u << e;
            }
            if (!std::isfinite(best) || cov != (1u << u) - 1 || std::abs(c - best) > 1e-9 * std::max(1.0, best) ||
                std::abs(res.cost - best) > 1e-9 * std::max(1.0, best))
                ++mismatches;
        } catch (const Infeasible&) {
            ++infeasible;
            if (std::isfinite(best)) ++mismatches;
        }
    }
    r.pass = mismatches == 0;
    r.detail = {{"trials", trials}, {"mismatches", mismatches}, {"infeasible_instances", infeasible}, {"seconds", seconds_since(t0)}};
    return r;
}

CheckResult check_solvers(Objective obj, int instances, std::uint64_t seed) {
    auto t0 = Clock::now();
    bool fl = obj == Objective::FacilityLocation;
    CheckResult r{fl ? "solvers_fl" : "solvers_kmedian", true, {}};
    nlohmann::json per_regime = nlohmann::json::object();
    for (Regime regime : {Regime::Centers, Regime::Clients}) {
        SolverKind kind = solver_kind(obj, regime);
        int infeasible = 0, below_opt = 0, within = 0, above_baseline = 0, dp_opt = 0, dp_within = 0, dp_none = 0;
        double worst = 0;
        auto tr0 = Clock::now();
        for (int i = 0; i < instances; ++i) {
            int k = 0;
            MetricInstance inst = corpus_instance(seed, i, fl, &k);
            SolverParams sp;
            sp.epsilon = 0.25;
            sp.repeats = 5;
            sp.portal_cap = 2;
            sp.bucket_count = 4;
            sp.seed = static_cast<std::uint64_t>(i);
            SolveTrace trace;
            Solution sol;
            try {
                sol = bootstrap(kind, inst, k, sp, &trace);
                CostReport rep = evaluate_cost(inst, sol, obj);
                if (rep.mismatch || (!fl && static_cast<int>(sol.open_facilities.size()) > k)) ++infeasible;
            } catch (const Error&) {
                ++infeasible;
                continue;
            }
            double opt = fl ? brute_fl(inst).total_cost : brute_kmedian(inst, k).total_cost;
            double tol = 1e-9 * std::max(1.0, opt);
            if (sol.total_cost < opt - tol) ++below_opt;
            if (sol.total_cost <= 1.3 * opt + tol) ++within;
            if (sol.total_cost > trace.baseline_cost + tol && !trace.round_costs.empty()) ++above_baseline;
            worst = std::max(worst, opt > 0 ? sol.total_cost / opt : 1.0);
            if (!std::isfinite(trace.best_dp_cost)) {
                ++dp_none;
            } else {
                if (trace.best_dp_cost <= opt + tol) ++dp_opt;
                if (trace.best_dp_cost <= 1.3 * opt + tol) ++dp_within;
            }
        }
        double secs = seconds_since(tr0);
        bool ok = infeasible == 0 && below_opt == 0 && above_baseline == 0 && within >= 0.95 * instances;
        r.pass = r.pass && ok;
        per_regime[regime == Regime::Centers ? "centers" : "clients"] = {{"pass", ok},
                                                                         {"instances", instances},
                                                                         {"infeasible", infeasible},
                                                                         {"below_opt", below_opt},
                                                                         {"within_1_3", within},
                                                                         {"above_baseline", above_baseline},
                                                                         {"worst_ratio", worst},
                                                                         {"dp_alone_optimal", dp_opt},
                                                                         {"dp_alone_within_1_3", dp_within},
                                                                         {"dp_produced_nothing", dp_none},
                                                                         {"seconds", secs}};
    }
    double total = seconds_since(t0);
    r.pass = r.pass && total <= 300.0;
    r.detail = {{"regimes", per_regime}, {"seconds", total}, {"time_limit", 300.0}};
    return r;
}

CheckResult check_klmedian(int corpora, std::uint64_t seed) {
    auto t0 = Clock::now();
    CheckResult r{"klmedian", true, {}};
    int within = 0, below = 0, errors = 0;
    double worst = 0;
    nlohmann::json rows = nlohmann::json::array();
    for (int c = 0; c < corpora; ++c) {
        Rng rng(split_seed(seed, stream::verify, 700000 + static_cast<std::uint64_t>(c)));
        int n = rng.range(2, 6), ell = rng.range(1, 2), k = std::min(n, rng.range(1, 2));
        std::vector<Series> series;
        std::vector<Curve> curves;
        for (int i = 0; i < n; ++i) {
            Series s;
            int z = rng.range(1, 4);
            for (int t = 0; t < z; ++t) s.push_back(0.25 * rng.range(0, 8));
            series.push_back(s);
            curves.push_back(Curve::from_series(s));
        }
        SolverParams sp;
        sp.seed = static_cast<std::uint64_t>(c);
        try {
            KlSolution sol = kl_median_solve(curves, k, ell, 0.25, sp);
            double grid = brute_klmedian_grid(series, k, ell, 0.05).cost;
            double tol = 1e-9 * std::max(1.0, grid);
            if (sol.cost <= 1.4 * grid + tol) ++within;
            if (sol.cost < grid * (1 - 0.05) - tol) ++below;
            double ratio = grid > 0 ? sol.cost / grid : (sol.cost > tol ? kInf : 1.0);
            worst = std::max(worst, ratio);
            rows.push_back({{"n", n}, {"k", k}, {"ell", ell}, {"cost", sol.cost}, {"grid_opt", grid}, {"candidates", sol.candidate_count}});
        } catch (const Error& e) {
            ++errors;
            rows.push_back({{"error", e.what()}});
        }
    }
    r.pass = errors == 0 && below == 0 && within >= 0.9 * corpora;
    r.detail = {{"corpora", corpora}, {"within_1_4", within}, {"below_grid_slack", below}, {"errors", errors}, {"worst_ratio", worst}, {"runs", rows}, {"seconds", seconds_since(t0)}};
    return r;
}

CheckResult check_aspect(int instances, std::uint64_t seed, double eps) {
    auto t0 = Clock::now();
    CheckResult r{"aspect", true, {}};
    int fails = 0, errors = 0, split = 0;
    double worst = 0;
    for (int i = 0; i < instances; ++i) {
        Rng rng(split_seed(seed, stream::verify, 800000 + static_cast<std::uint64_t>(i)));
        GenOptions g;
        g.family = Family::TwoCluster;
        g.n = rng.range(2, 6);
        g.m = rng.range(2, 4);
        g.dim = rng.range(1, 2);
        g.seed = split_seed(seed, stream::verify, 810000 + static_cast<std::uint64_t>(i));
        bool fl = i % 2 == 0;
        g.opening_costs = fl;
        int k = std::min(g.m, rng.range(1, 3));
        if (!fl) g.k = k;
        MetricInstance inst = generate(g).instance;
        try {
            SubInstanceSet set = normalize_aspect_ratio(inst, eps);
            if (set.pieces.size() > 1) ++split;
            Solution merged;
            double direct;
            if (fl) {
                std::vector<Solution> sols;
                for (const auto& p : set.pieces) sols.push_back(brute_fl(p.inst));
                merged = combine_subinstance_solutions(inst, set, sols, Objective::FacilityLocation);
                direct = brute_fl(inst).total_cost;
            } else {
                std::vector<std::map<int, Solution>> tables;
                for (const auto& p : set.pieces) {
                    std::map<int, Solution> t;
                    if (p.inst.n() == 0) t[0] = Solution{};
                    for (int b = 1; b <= std::min(k, p.inst.m()); ++b) t[b] = brute_kmedian(p.inst, b);
                    tables.push_back(std::move(t));
                }
                merged = combine_kmedian_tables(inst, set, tables, k);
                direct = brute_kmedian(inst, k).total_cost;
            }
            double rel = std::abs(merged.total_cost - direct) / std::max(direct, 1e-300);
            if (direct == 0) rel = merged.total_cost == 0 ? 0 : kInf;
            worst = std::max(worst, rel);
            if (rel > 2 * eps + 1e-12) ++fails;
        } catch (const Error&) {
            ++errors;
        }
    }
    r.pass = fails == 0 && errors == 0;
    r.detail = {{"instances", instances},
                {"epsilon", eps},
                {"split_instances", split},
                {"failures", fails},
                {"errors", errors},
                {"worst_relative_gap", worst},
                {"seconds", seconds_since(t0)}};
    return r;
}

const std::vector<std::string>& suite_names() {
    static const std::vector<std::string> names{"nets", "cutting", "portal", "proxy", "frechet", "profiles", "solvers", "all"};
    return names;
}

namespace {

void strip_timings(nlohmann::json& j) {
    if (j.is_object()) {
        j.erase("seconds");
        for (auto& [key, v] : j.items()) strip_timings(v);
    } else if (j.is_array()) {
        for (auto& v : j) strip_timings(v);
    }
}

}  // namespace

nlohmann::json run_suite(const std::string& suite, std::optional<int> trials, std::uint64_t seed, bool timings) {
    const auto& names = suite_names();
    if (std::find(names.begin(), names.end(), suite) == names.end()) throw InvalidArgument("unknown suite: " + suite);
    if (trials && *trials < 1) throw InvalidArgument("trials must be positive");
    auto n = [&](int full) { return trials.value_or(full); };
    std::vector<CheckResult> results;
    auto want = [&](const char* s) { return suite == "all" || suite == s; };
    if (want("nets")) results.push_back(check_nets(n(1000), seed));
    if (want("cutting")) results.push_back(check_cutting(n(2000), seed));
    if (want("portal")) results.push_back(check_portal(n(50), seed));
    if (want("proxy")) results.push_back(check_proxy(n(10000), seed));
    if (want("frechet")) {
        results.push_back(check_frechet(n(500), seed));
        results.push_back(check_klmedian(n(20), seed));
    }
    if (want("profiles")) {
        results.push_back(check_decide_profile());
        results.push_back(check_complexity_reduction());
    }
    if (want("solvers")) {
        results.push_back(check_set_cover(n(500), seed));
        results.push_back(check_solvers(Objective::KMedian, n(200), seed));
        results.push_back(check_solvers(Objective::FacilityLocation, n(200), seed));
        results.push_back(check_aspect(n(50), seed));
    }
    nlohmann::json out;
    out["suite"] = suite;
    out["seed"] = seed;
    bool pass = true;
    out["checks"] = nlohmann::json::array();
    for (const auto& c : results) {
        pass = pass && c.pass;
        out["checks"].push_back(to_json(c));
    }
    out["pass"] = pass;
    if (!timings) strip_timings(out);
    return out;
}

}  // namespace pdc
