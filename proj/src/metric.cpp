#include "pdclust/metric.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>
#include <shared_mutex>
#include <unordered_map>

namespace pdc {

struct DistanceCache {
    std::shared_mutex mu;
    std::unordered_map<std::uint64_t, double> memo;
};

MetricInstance::MetricInstance() : cache_(std::make_unique<DistanceCache>()) {}
MetricInstance::~MetricInstance() = default;
MetricInstance::MetricInstance(MetricInstance&&) noexcept = default;
MetricInstance& MetricInstance::operator=(MetricInstance&&) noexcept = default;

MetricInstance::MetricInstance(const MetricInstance& o)
    : kind(o.kind),
      dim(o.dim),
      ell_cap(o.ell_cap),
      client_points(o.client_points),
      facility_points(o.facility_points),
      client_curves(o.client_curves),
      facility_curves(o.facility_curves),
      matrix(o.matrix),
      opening_costs(o.opening_costs),
      k(o.k),
      ddim_hint_clients(o.ddim_hint_clients),
      ddim_hint_facilities(o.ddim_hint_facilities),
      n_(o.n_),
      m_(o.m_),
      cache_(std::make_unique<DistanceCache>()) {}

MetricInstance& MetricInstance::operator=(const MetricInstance& o) {
    if (this != &o) {
        MetricInstance tmp(o);
        *this = std::move(tmp);
    }
    return *this;
}

MetricInstance MetricInstance::euclidean(std::vector<std::vector<double>> clients, std::vector<std::vector<double>> facilities) {
    MetricInstance inst;
    inst.kind = Kind::Euclidean;
    inst.client_points = std::move(clients);
    inst.facility_points = std::move(facilities);
    if (!inst.client_points.empty())
        inst.dim = static_cast<int>(inst.client_points[0].size());
    else if (!inst.facility_points.empty())
        inst.dim = static_cast<int>(inst.facility_points[0].size());
    inst.finalize();
    return inst;
}

MetricInstance MetricInstance::explicit_matrix(int n, int m, std::vector<double> full) {
    MetricInstance inst;
    inst.kind = Kind::Matrix;
    inst.client_points.assign(static_cast<std::size_t>(n), {});
    inst.facility_points.assign(static_cast<std::size_t>(m), {});
    inst.matrix = std::move(full);
    inst.finalize();
    return inst;
}

MetricInstance MetricInstance::frechet(std::vector<Curve> clients, std::vector<Curve> facilities) {
    MetricInstance inst;
    inst.kind = Kind::Frechet;
    inst.client_curves = std::move(clients);
    inst.facility_curves = std::move(facilities);
    if (!inst.client_curves.empty())
        inst.dim = inst.client_curves[0].dim;
    else if (!inst.facility_curves.empty())
        inst.dim = inst.facility_curves[0].dim;
    for (const auto& c : inst.facility_curves) inst.ell_cap = std::max(inst.ell_cap, static_cast<int>(c.size()));
    inst.finalize();
    return inst;
}

void MetricInstance::finalize() {
    if (kind == Kind::Frechet) {
        n_ = static_cast<int>(client_curves.size());
        m_ = static_cast<int>(facility_curves.size());
        for (const auto* side : {&client_curves, &facility_curves})
            for (const auto& c : *side) {
                if (c.dim != dim) throw DimensionMismatch("curve dimension mismatch");
                if (c.size() == 0 || c.coords.size() % static_cast<std::size_t>(c.dim) != 0)
                    throw MalformedInput("curve without vertices");
            }
    } else {
        n_ = static_cast<int>(client_points.size());
        m_ = static_cast<int>(facility_points.size());
    }
    if (kind == Kind::Euclidean) {
        for (const auto* side : {&client_points, &facility_points})
            for (const auto& p : *side)
                if (static_cast<int>(p.size()) != dim) throw DimensionMismatch("point dimension mismatch");
    }
    if (kind == Kind::Matrix) {
        std::size_t s = static_cast<std::size_t>(n_ + m_);
        if (matrix.size() != s * s) throw MalformedInput("matrix must be (n+m)x(n+m)");
        for (std::size_t i = 0; i < s; ++i) {
            if (matrix[i * s + i] != 0.0) throw MalformedInput("matrix diagonal must be zero");
            for (std::size_t j = 0; j < s; ++j) {
                double v = matrix[i * s + j];
                if (!(v >= 0.0) || !std::isfinite(v)) throw MalformedInput("matrix entries must be finite and nonnegative");
                if (v != matrix[j * s + i]) throw AsymmetricMatrix("matrix is not symmetric");
            }
        }
    }
    if (opening_costs) {
        if (static_cast<int>(opening_costs->size()) != m_) throw MalformedInput("one opening cost per facility required");
        for (double c : *opening_costs)
            if (!(c > 0.0) || !std::isfinite(c)) throw NonPositiveOpeningCost("opening costs must be positive");
    }
    if (ddim_hint_clients < 1 || ddim_hint_facilities < 1) throw MalformedInput("ddim hints must be positive");
    if (!cache_) cache_ = std::make_unique<DistanceCache>();
}

int MetricInstance::gid(PointId p) const {
    if (p.index < 0) throw IdOutOfRange("negative point index");
    if (p.side == Side::Client) {
        if (p.index >= n_) throw IdOutOfRange("client index out of range");
        return p.index;
    }
    if (p.index >= m_) throw IdOutOfRange("facility index out of range");
    return n_ + p.index;
}

double MetricInstance::dist(int g, int h) const {
    if (g == h) return 0.0;
    switch (kind) {
        case Kind::Euclidean: {
            const auto& a = g < n_ ? client_points[static_cast<std::size_t>(g)] : facility_points[static_cast<std::size_t>(g - n_)];
            const auto& b = h < n_ ? client_points[static_cast<std::size_t>(h)] : facility_points[static_cast<std::size_t>(h - n_)];
            double s = 0;
            for (std::size_t i = 0; i < a.size(); ++i) {
                double d = a[i] - b[i];
                s += d * d;
            }
            return std::sqrt(s);
        }
        case Kind::Matrix:
            return matrix[static_cast<std::size_t>(g) * static_cast<std::size_t>(n_ + m_) + static_cast<std::size_t>(h)];
        case Kind::Frechet: {
            int lo = std::min(g, h), hi = std::max(g, h);
            std::uint64_t key = (static_cast<std::uint64_t>(lo) << 32) | static_cast<std::uint32_t>(hi);
            {
                std::shared_lock lock(cache_->mu);
                auto it = cache_->memo.find(key);
                if (it != cache_->memo.end()) return it->second;
            }
            const Curve& a = lo < n_ ? client_curves[static_cast<std::size_t>(lo)] : facility_curves[static_cast<std::size_t>(lo - n_)];
            const Curve& b = hi < n_ ? client_curves[static_cast<std::size_t>(hi)] : facility_curves[static_cast<std::size_t>(hi - n_)];
            double d = discrete_frechet(a, b);
            std::unique_lock lock(cache_->mu);
            cache_->memo.emplace(key, d);
            return d;
        }
    }
    return 0.0;
}

double MetricInstance::distance(PointId p, PointId q) const { return dist(gid(p), gid(q)); }

Net greedy_net(const MetricInstance& inst, std::vector<PointId> domain, double radius) {
    if (!(radius > 0)) throw InvalidArgument("net radius must be positive");
    std::sort(domain.begin(), domain.end());
    domain.erase(std::unique(domain.begin(), domain.end()), domain.end());
    std::vector<int> order;
    order.reserve(domain.size());
    for (auto p : domain) order.push_back(inst.gid(p));
    Net net;
    net.radius = radius;
    for (int g : greedy_net_ordered(inst, order, radius)) net.centers.push_back(inst.pid(g));
    net.domain = std::move(domain);
    return net;
}

std::vector<int> greedy_net_ordered(const MetricInstance& inst, const std::vector<int>& order, double radius) {
    std::vector<int> centers;
    for (int g : order) {
        bool covered = false;
        for (int c : centers)
            if (inst.dist(g, c) < radius) {
                covered = true;
                break;
            }
        if (!covered) centers.push_back(g);
    }
    return centers;
}

int nearest_of(const MetricInstance& inst, int g, const std::vector<int>& candidates, double* best_dist) {
    int best = -1;
    double bd = kInf;
    for (int c : candidates) {
        double d = inst.dist(g, c);
        if (d < bd || (d == bd && c < best)) {
            bd = d;
            best = c;
        }
    }
    if (best_dist) *best_dist = bd;
    return best;
}

Solution make_solution(const MetricInstance& inst, std::vector<int> open, Objective obj) {
    std::sort(open.begin(), open.end());
    open.erase(std::unique(open.begin(), open.end()), open.end());
    Solution s;
    s.open_facilities = open;
    std::vector<int> gids;
    for (int f : open) gids.push_back(inst.n() + f);
    s.assignment.assign(static_cast<std::size_t>(inst.n()), -1);
    if (inst.n() > 0 && open.empty()) throw Infeasible("clients present but no facility open");
    for (int x = 0; x < inst.n(); ++x) {
        double d;
        int g = nearest_of(inst, x, gids, &d);
        s.assignment[static_cast<std::size_t>(x)] = g - inst.n();
        s.connection_cost += d;
    }
    if (obj == Objective::FacilityLocation)
        for (int f : open) s.opening_cost += inst.ocost(f);
    s.total_cost = s.connection_cost + s.opening_cost;
    return s;
}

CostReport evaluate_cost(const MetricInstance& inst, const Solution& sol, Objective obj) {
    std::vector<char> is_open(static_cast<std::size_t>(inst.m()), 0);
    for (int f : sol.open_facilities) {
        if (f < 0 || f >= inst.m()) throw IdOutOfRange("open facility out of range");
        is_open[static_cast<std::size_t>(f)] = 1;
    }
    if (static_cast<int>(sol.assignment.size()) != inst.n()) throw UnassignedClient("assignment size differs from client count");
    CostReport r;
    for (int x = 0; x < inst.n(); ++x) {
        int f = sol.assignment[static_cast<std::size_t>(x)];
        if (f < 0) throw UnassignedClient("client " + std::to_string(x) + " is unassigned");
        if (f >= inst.m()) throw IdOutOfRange("assigned facility out of range");
        if (!is_open[static_cast<std::size_t>(f)]) throw ClosedFacility("client " + std::to_string(x) + " assigned to a closed facility");
        r.connection_cost += inst.dist(x, inst.n() + f);
    }
    if (obj == Objective::FacilityLocation)
        for (int f : sol.open_facilities) r.opening_cost += inst.ocost(f);
    r.total_cost = r.connection_cost + r.opening_cost;
    auto off = [](double a, double b) { return std::abs(a - b) > 1e-9 * std::max(1.0, std::abs(b)); };
    r.mismatch = off(r.connection_cost, sol.connection_cost) || off(r.opening_cost, sol.opening_cost) || off(r.total_cost, sol.total_cost);
    return r;
}

std::vector<int> side_ids(const MetricInstance& inst, Side side) {
    std::vector<int> ids;
    if (side == Side::Client)
        for (int i = 0; i < inst.n(); ++i) ids.push_back(i);
    else
        for (int i = 0; i < inst.m(); ++i) ids.push_back(inst.n() + i);
    return ids;
}

double min_positive_distance(const MetricInstance& inst, const std::vector<int>& ids) {
    double best = kInf;
    for (std::size_t i = 0; i < ids.size(); ++i)
        for (std::size_t j = i + 1; j < ids.size(); ++j) {
            double d = inst.dist(ids[i], ids[j]);
            if (d > 0 && d < best) best = d;
        }
    return best;
}

double diameter(const MetricInstance& inst, const std::vector<int>& ids) {
    double best = 0;
    for (std::size_t i = 0; i < ids.size(); ++i)
        for (std::size_t j = i + 1; j < ids.size(); ++j) best = std::max(best, inst.dist(ids[i], ids[j]));
    return best;
}

MetricInstance sub_instance(const MetricInstance& inst, const std::vector<int>& clients, const std::vector<int>& facilities) {
    MetricInstance out;
    out.kind = inst.kind;
    out.dim = inst.dim;
    out.ell_cap = inst.ell_cap;
    out.k = inst.k;
    out.ddim_hint_clients = inst.ddim_hint_clients;
    out.ddim_hint_facilities = inst.ddim_hint_facilities;
    if (inst.opening_costs) {
        std::vector<double> oc;
        for (int f : facilities) oc.push_back(inst.ocost(f));
        out.opening_costs = oc;
    }
    switch (inst.kind) {
        case Kind::Euclidean:
            for (int x : clients) out.client_points.push_back(inst.client_points[static_cast<std::size_t>(x)]);
            for (int f : facilities) out.facility_points.push_back(inst.facility_points[static_cast<std::size_t>(f)]);
            break;
        case Kind::Frechet:
            for (int x : clients) out.client_curves.push_back(inst.client_curves[static_cast<std::size_t>(x)]);
            for (int f : facilities) out.facility_curves.push_back(inst.facility_curves[static_cast<std::size_t>(f)]);
            break;
        case Kind::Matrix: {
            std::vector<int> g;
            for (int x : clients) g.push_back(x);
            for (int f : facilities) g.push_back(inst.n() + f);
            out.client_points.assign(clients.size(), {});
            out.facility_points.assign(facilities.size(), {});
            out.matrix.resize(g.size() * g.size());
            for (std::size_t i = 0; i < g.size(); ++i)
                for (std::size_t j = 0; j < g.size(); ++j) out.matrix[i * g.size() + j] = inst.dist(g[i], g[j]);
            break;
        }
    }
    out.finalize();
    return out;
}

}  // namespace pdc
