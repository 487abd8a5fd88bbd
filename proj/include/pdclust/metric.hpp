#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "pdclust/common.hpp"
#include "pdclust/curve.hpp"

namespace pdc {

enum class Kind { Euclidean, Matrix, Frechet };

struct DistanceCache;

// Points are addressed either by PointId or by a global index:
// clients occupy 0..n-1, facilities n..n+m-1.
class MetricInstance {
public:
    Kind kind = Kind::Euclidean;
    int dim = 1;      // Euclidean dimension, or ambient curve dimension
    int ell_cap = 0;  // Fréchet kind only: max facility complexity (informational)
    std::vector<std::vector<double>> client_points;
    std::vector<std::vector<double>> facility_points;
    std::vector<Curve> client_curves;
    std::vector<Curve> facility_curves;
    std::vector<double> matrix;  // (n+m)^2, row-major
    std::optional<std::vector<double>> opening_costs;
    std::optional<int> k;
    int ddim_hint_clients = 1;
    int ddim_hint_facilities = 1;

    MetricInstance();
    MetricInstance(const MetricInstance& o);
    MetricInstance& operator=(const MetricInstance& o);
    MetricInstance(MetricInstance&&) noexcept;
    MetricInstance& operator=(MetricInstance&&) noexcept;
    ~MetricInstance();

    static MetricInstance euclidean(std::vector<std::vector<double>> clients, std::vector<std::vector<double>> facilities);
    static MetricInstance explicit_matrix(int n, int m, std::vector<double> full);
    static MetricInstance frechet(std::vector<Curve> clients, std::vector<Curve> facilities);

    int n() const { return n_; }
    int m() const { return m_; }
    int size() const { return n_ + m_; }

    int gid(PointId p) const;
    PointId pid(int g) const { return g < n_ ? client(g) : facility(g - n_); }
    bool is_client(int g) const { return g < n_; }

    double dist(int g, int h) const;  // global indices, unchecked
    double distance(PointId p, PointId q) const;
    double ocost(int f) const { return opening_costs ? (*opening_costs)[static_cast<std::size_t>(f)] : 0.0; }

    // recompute n_, m_ and validate; called by the factories and the loader
    void finalize();

private:
    int n_ = 0;
    int m_ = 0;
    std::unique_ptr<DistanceCache> cache_;
};

struct Net {
    std::vector<PointId> domain;
    double radius = 0;
    std::vector<PointId> centers;
};

// greedy net scanning the domain in ascending PointId order
Net greedy_net(const MetricInstance& inst, std::vector<PointId> domain, double radius);
// greedy net over global ids, scanning in the given order
std::vector<int> greedy_net_ordered(const MetricInstance& inst, const std::vector<int>& order, double radius);

struct Solution {
    std::vector<int> open_facilities;  // sorted facility indices
    std::vector<int> assignment;       // client -> facility index
    double connection_cost = 0;
    double opening_cost = 0;
    double total_cost = 0;
    nlohmann::json params_echo = nlohmann::json::object();
    std::uint64_t seed = 0;
};

// open the given facilities and assign every client to its nearest open one (ties: lowest id)
Solution make_solution(const MetricInstance& inst, std::vector<int> open, Objective obj);

struct CostReport {
    double connection_cost = 0;
    double opening_cost = 0;
    double total_cost = 0;
    bool mismatch = false;
};

CostReport evaluate_cost(const MetricInstance& inst, const Solution& sol, Objective obj);

// nearest point among candidates (global ids), ties broken by lowest id
int nearest_of(const MetricInstance& inst, int g, const std::vector<int>& candidates, double* best_dist = nullptr);

std::vector<int> side_ids(const MetricInstance& inst, Side side);
double min_positive_distance(const MetricInstance& inst, const std::vector<int>& ids);
double diameter(const MetricInstance& inst, const std::vector<int>& ids);

// restrict an instance to a subset of clients and facilities
MetricInstance sub_instance(const MetricInstance& inst, const std::vector<int>& clients, const std::vector<int>& facilities);

}  // namespace pdc
