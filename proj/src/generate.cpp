#include "pdclust/generate.hpp"

#include <algorithm>
#include <cmath>

namespace pdc {

Family parse_family(const std::string& name) {
    if (name == "line") return Family::Line;
    if (name == "planar") return Family::Planar;
    if (name == "two-cluster") return Family::TwoCluster;
    if (name == "frechet-series") return Family::FrechetSeries;
    throw InvalidArgument("unknown family: " + name);
}

std::string family_name(Family f) {
    switch (f) {
        case Family::Line: return "line";
        case Family::Planar: return "planar";
        case Family::TwoCluster: return "two-cluster";
        case Family::FrechetSeries: return "frechet-series";
    }
    return "";
}

namespace {

// coordinates on a 1e-3 grid keep fixtures readable and byte-stable
double grid(double v) { return std::round(v * 1000.0) / 1000.0; }

}  // namespace

Generated generate(const GenOptions& opts) {
    if (opts.n < 1) throw InvalidArgument("n must be at least 1");
    Rng rng(split_seed(opts.seed, stream::generator));
    Generated out;
    if (opts.family == Family::FrechetSeries) {
        int len = opts.m > 0 ? opts.m : 5;
        out.is_series = true;
        for (int i = 0; i < opts.n; ++i) {
            Series s;
            double v = 0.25 * rng.range(0, 8);
            for (int t = 0; t < len; ++t) {
                s.push_back(v);
                v = std::clamp(v + 0.25 * rng.range(-2, 2), 0.0, 2.0);
            }
            out.series.push_back(std::move(s));
        }
        return out;
    }
    if (opts.m < 1) throw InvalidArgument("m must be at least 1");
    int dim = opts.family == Family::Line ? 1 : opts.dim;
    if (dim < 1) throw InvalidArgument("dim must be at least 1");
    auto point = [&](double offset) {
        std::vector<double> p;
        for (int c = 0; c < dim; ++c) p.push_back(grid(rng.uniform(0, opts.family == Family::TwoCluster ? 10 : 100) + (c == 0 ? offset : 0)));
        return p;
    };
    std::vector<std::vector<double>> clients, facilities;
    for (int i = 0; i < opts.n; ++i) clients.push_back(point(opts.family == Family::TwoCluster && i % 2 ? opts.separation : 0));
    for (int j = 0; j < opts.m; ++j) facilities.push_back(point(opts.family == Family::TwoCluster && j % 2 ? opts.separation : 0));
    std::optional<std::vector<double>> oc;
    if (opts.opening_costs) {
        oc.emplace();
        for (int j = 0; j < opts.m; ++j) oc->push_back(grid(rng.uniform(0.5, 3.0)));
    }
    out.instance = MetricInstance::euclidean(std::move(clients), std::move(facilities));
    out.instance.opening_costs = oc;
    out.instance.k = opts.k;
    out.instance.ddim_hint_clients = dim;
    out.instance.ddim_hint_facilities = dim;
    out.instance.finalize();
    return out;
}

}  // namespace pdc
