#include <algorithm>
#include <cmath>
#include <set>

#include "pdclust/baseline.hpp"
#include "pdclust/frechet.hpp"
#include "pdclust/profile.hpp"

namespace pdc {

namespace {

MetricInstance curve_instance(std::vector<Curve> clients, std::vector<Curve> facilities, int ell) {
    int dim = !clients.empty() ? clients[0].dim : facilities[0].dim;
    std::size_t zmax = 1;
    for (const auto& c : clients) zmax = std::max(zmax, c.size());
    MetricInstance inst = MetricInstance::frechet(std::move(clients), std::move(facilities));
    inst.ddim_hint_facilities = std::max(1, dim * ell);
    inst.ddim_hint_clients = std::max(1, dim * static_cast<int>(zmax));
    return inst;
}

void check_curves(const std::vector<Curve>& curves, int k, int ell) {
    if (curves.empty()) throw EmptyDomain("no curves given");
    if (k < 1) throw InvalidArgument("k must be at least 1");
    if (ell < 1) throw InvalidArgument("ell must be at least 1");
    for (const auto& c : curves) {
        if (c.dim != curves[0].dim) throw DimensionMismatch("curves differ in dimension");
        if (c.size() == 0) throw MalformedInput("curve without vertices");
    }
}

}  // namespace

KlConstant kl_median_constant(const std::vector<Curve>& curves, int k, int ell) {
    check_curves(curves, k, ell);
    KlConstant out;
    std::vector<Curve> facilities;
    std::set<Curve> seen;
    for (const auto& c : curves) {
        Curve s = pad_to(min_error_simplification(c, ell).curve, ell);
        out.simplifications.push_back(s);
        if (seen.insert(canonical(s)).second) facilities.push_back(s);
    }
    MetricInstance inst = curve_instance(out.simplifications, facilities, ell);
    out.solution = constant_kmedian(inst, k);
    for (int f : out.solution.open_facilities) out.centers.push_back(facilities[static_cast<std::size_t>(f)]);
    for (std::size_t i = 0; i < curves.size(); ++i) {
        double best = kInf;
        for (const auto& c : out.centers) best = std::min(best, discrete_frechet(out.simplifications[i], c));
        out.cost += best + discrete_frechet(out.simplifications[i], curves[i]);
    }
    return out;
}

CandidateSet candidate_center_set_ex(const std::vector<Curve>& curves, int k, int ell, double eps, const CandidateOptions& opts) {
    check_curves(curves, k, ell);
    if (!(eps > 0)) throw InvalidArgument("epsilon must be positive");
    KlConstant kc = kl_median_constant(curves, k, ell);
    CandidateSet out;
    out.delta = kc.cost;
    out.epsilon_used = eps;
    auto build = [&](double e, bool dry) {
        std::set<Curve> seen;
        std::vector<Curve> res;
        double est = 0;
        auto add = [&](const Curve& c) {
            Curve p = pad_to(c, ell);
            if (seen.insert(canonical(p)).second) res.push_back(p);
        };
        for (const auto& s : kc.simplifications) add(s);
        if (out.delta > 0) {
            double n = static_cast<double>(curves.size());
            int imax = static_cast<int>(std::ceil(std::log2(opts.alpha * n)));
            for (int i = 0; i <= imax; ++i) {
                double r = std::ldexp(out.delta / (opts.alpha * n), i);
                for (const auto& c : curves) {
                    if (dry) {
                        est += candidate_grid_size(c, r, e, ell);
                        continue;
                    }
                    for (const auto& g : candidate_grid_single_scale(c, r, e, ell)) add(g);
                }
            }
        }
        return std::make_pair(res, est);
    };
    double e = eps;
    while (true) {
        // the pre-dedup estimate bounds the work; the deduplicated count bounds the solver
        double est = build(e, true).second;
        if (est <= 400.0 * static_cast<double>(opts.max_candidates) || e > 8) {
            auto res = build(e, false).first;
            if (res.size() <= opts.max_candidates || e > 8) {
                out.curves = std::move(res);
                out.epsilon_used = e;
                return out;
            }
        }
        e *= std::sqrt(2.0);
    }
}

std::vector<Curve> candidate_center_set(const std::vector<Curve>& curves, int k, int ell, double eps, const CandidateOptions& opts) {
    return candidate_center_set_ex(curves, k, ell, eps, opts).curves;
}

KlSolution kl_median_solve(const std::vector<Curve>& curves, int k, int ell, double eps, const SolverParams& params, const KlOptions& opts) {
    check_curves(curves, k, ell);
    if (!(eps > 0 && eps < 0.5)) throw InvalidArgument("epsilon must lie in (0, 1/2)");
    KlSolution out;
    int dim = curves[0].dim;
    if (dim == 1 && opts.reduce_complexity) {
        for (const auto& c : curves) out.reduced.push_back(Curve::from_series(complexity_reduction(c.coords, ell, eps / 16, opts.reduction_state_cap)));
    } else {
        out.reduced = curves;
    }
    CandidateSet cs = candidate_center_set_ex(out.reduced, k, ell, eps / 12, opts.candidates);
    out.candidate_count = cs.curves.size();
    MetricInstance inst = curve_instance(out.reduced, cs.curves, ell);
    SolverParams sp = params;
    sp.epsilon = eps / 4;
    try {
        out.solution = solve_kmedian_centers(inst, k, sp);
    } catch (const BudgetExceeded&) {
        sp.portal_cap = 1;
        sp.bucket_count = 3;
        out.solution = solve_kmedian_centers(inst, k, sp);
    }
    for (int f : out.solution.open_facilities) out.centers.push_back(cs.curves[static_cast<std::size_t>(f)]);
    for (const auto& c : curves) {
        double best = kInf;
        int arg = -1;
        for (std::size_t j = 0; j < out.centers.size(); ++j) {
            double d = discrete_frechet(c, out.centers[j]);
            if (d < best) {
                best = d;
                arg = static_cast<int>(j);
            }
        }
        out.assignment.push_back(arg);
        out.cost += best;
    }
    return out;
}

}  // namespace pdc
