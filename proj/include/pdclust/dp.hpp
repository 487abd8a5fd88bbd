#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include <json.hpp>

#include "pdclust/baseline.hpp"
#include "pdclust/decomposition.hpp"
#include "pdclust/metric.hpp"

namespace pdc {

enum class Regime { Centers, Clients };
enum class SolverKind { FlCenters, FlClients, KMedianCenters, KMedianClients };

Objective objective_of(SolverKind kind);
Regime regime_of(SolverKind kind);
SolverKind solver_kind(Objective obj, Regime regime);
// the side with the smaller doubling hint is decomposed (ties: facilities)
Regime auto_regime(const MetricInstance& inst);

struct SolverParams {
    double epsilon = 0.25;
    std::optional<double> rho_override;  // default eps^10 / ddim^2
    int portal_cap = 2;
    int bucket_count = 4;
    double gamma_kappa = 1.0;  // Gamma ratio is 1 + eps / (kappa * log Delta)
    int repeats = 1;
    std::optional<int> bootstrap_rounds;  // default ceil(bootstrap_c * ddim)
    double bootstrap_c = 3.0;
    double budget = 20e6;
    double badly_cut_slack = 1.0;
    std::uint64_t seed = 0;
    bool exact_ann = false;
    int set_cover_max = 20;

    void validate() const;
    double rho(int ddim) const;
    int rounds(int ddim) const;
    nlohmann::json echo() const;
};

struct SetCoverResult {
    std::vector<int> selection;  // ascending set indices
    double cost = 0;
};

// exact minimum-weight cover of {0..universe_size-1} by subset DP
SetCoverResult weighted_set_cover_exact(int universe_size, const std::vector<std::vector<int>>& sets, const std::vector<double>& weights, int u_max = 20);

struct RevealedItem {
    int client = -1;           // client index
    int cluster = -1;          // cluster where the client is charged
    std::vector<int> proxies;  // portal gids of that cluster used to reach facilities
};

std::vector<RevealedItem> revealed_items(const Decomposition& decomp, const MovedInstance& moved, double eps);
// client index -> cluster id
std::map<int, int> compute_revealed_clusters(const Decomposition& decomp, const MovedInstance& moved, double eps);

struct DpStats {
    std::int64_t ops = 0;
    std::int64_t entries = 0;
    std::vector<std::int64_t> entries_per_level;
    int root_entries = 0;
    int bad_clients = 0;
    nlohmann::json to_json() const;
};

// one DP pass around the reference solution S (decomposition seeded by `seed`)
Solution dp_round(SolverKind kind, const MetricInstance& inst, int k, const Solution& S, const SolverParams& params, std::uint64_t seed, DpStats* stats = nullptr);

struct SolveTrace {
    double baseline_cost = 0;
    std::vector<double> round_costs;  // best DP cost per round (inf if every repeat failed)
    int improvements = 0;             // rounds that improved on the best so far
    double best_dp_cost = kInf;       // cheapest solution produced by any DP run
};

Solution bootstrap(SolverKind kind, const MetricInstance& inst, int k, const SolverParams& params, SolveTrace* trace = nullptr);

Solution solve_fl_centers(const MetricInstance& inst, const SolverParams& params);
Solution solve_fl_clients(const MetricInstance& inst, const SolverParams& params);
Solution solve_kmedian_centers(const MetricInstance& inst, int k, const SolverParams& params);
Solution solve_kmedian_clients(const MetricInstance& inst, int k, const SolverParams& params);

}  // namespace pdc
