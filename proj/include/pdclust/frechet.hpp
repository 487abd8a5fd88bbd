#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "pdclust/curve.hpp"
#include "pdclust/dp.hpp"
#include "pdclust/metric.hpp"

namespace pdc {

struct Simplification {
    Curve curve;
    double error = 0;
};

// exact minimum-error simplification to at most ell vertices
Simplification min_error_simplification(const Curve& c, int ell);

// smallest enclosing ball of a set of points (dim-dimensional, row-major)
struct Ball {
    std::vector<double> center;
    double radius = 0;
};
Ball min_enclosing_ball(const Curve& c, std::size_t first, std::size_t last);

// canonical representative: consecutive duplicate vertices removed
Curve canonical(const Curve& c);
// repeat the first vertex until the curve has ell vertices
Curve pad_to(const Curve& c, int ell);

std::vector<Curve> candidate_grid_single_scale(const Curve& c, double r, double eps, int ell);
// number of tuples the grid would enumerate (before dedup); 0 when the gate rejects
double candidate_grid_size(const Curve& c, double r, double eps, int ell);

struct KlConstant {
    double cost = 0;
    std::vector<Curve> simplifications;  // one per input curve
    std::vector<Curve> centers;
    Solution solution;  // over the deduplicated simplification instance
};

KlConstant kl_median_constant(const std::vector<Curve>& curves, int k, int ell);

struct CandidateOptions {
    double alpha = 3.0;
    std::size_t max_candidates = 120;
};

struct CandidateSet {
    std::vector<Curve> curves;
    double delta = 0;
    double epsilon_used = 0;  // grid epsilon after coarsening
};

CandidateSet candidate_center_set_ex(const std::vector<Curve>& curves, int k, int ell, double eps, const CandidateOptions& opts = {});
std::vector<Curve> candidate_center_set(const std::vector<Curve>& curves, int k, int ell, double eps, const CandidateOptions& opts = {});

struct KlOptions {
    CandidateOptions candidates;
    bool reduce_complexity = true;  // d = 1 only
    std::size_t reduction_state_cap = 200000;
};

struct KlSolution {
    std::vector<Curve> centers;
    std::vector<int> assignment;  // input curve -> center index
    double cost = 0;              // true Fréchet cost against the input curves
    std::vector<Curve> reduced;   // complexity-reduced clients used by the solver
    std::size_t candidate_count = 0;
    Solution solution;            // solver output over the candidate instance
};

KlSolution kl_median_solve(const std::vector<Curve>& curves, int k, int ell, double eps, const SolverParams& params, const KlOptions& opts = {});

}  // namespace pdc
