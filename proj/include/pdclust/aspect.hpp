#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include "pdclust/metric.hpp"

namespace pdc {

struct SubInstance {
    MetricInstance inst;          // explicit-matrix piece
    std::vector<int> clients;     // piece client index -> original client index
    std::vector<int> facilities;  // piece facility index -> original facility index
};

struct SubInstanceSet {
    std::vector<SubInstance> pieces;
    std::uint64_t provenance = 0;  // hash of the original instance
    double epsilon_used = 0;
    double gamma = 0;      // constant-approximation cost used for the threshold
    double threshold = 0;  // component threshold on the crude embedding
    double floor = 0;      // minimum distance between distinct points inside a piece
};

std::uint64_t instance_hash(const MetricInstance& inst);

SubInstanceSet normalize_aspect_ratio(const MetricInstance& inst, double eps);

// facility location: one solution per piece
Solution combine_subinstance_solutions(const MetricInstance& original, const SubInstanceSet& set, const std::vector<Solution>& sols, Objective obj);

struct BudgetAllocation {
    std::vector<int> budgets;
    double cost = 0;
};

// knapsack over per-piece tables budget -> cost; total budget at most k
BudgetAllocation allocate_budgets(const std::vector<std::map<int, double>>& tables, int k);

// k-median: per piece, solutions indexed by their facility budget
Solution combine_kmedian_tables(const MetricInstance& original, const SubInstanceSet& set, const std::vector<std::map<int, Solution>>& tables, int k);

}  // namespace pdc
