#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "pdclust/dp.hpp"
#include "pdclust/metric.hpp"

namespace pdc {

struct CheckResult {
    std::string name;
    bool pass = false;
    nlohmann::json detail = nlohmann::json::object();
};

nlohmann::json to_json(const CheckResult& r);

// default trial counts are the full acceptance sizes
CheckResult check_nets(int trials = 1000, std::uint64_t seed = 0);
CheckResult check_cutting(int trials = 2000, std::uint64_t seed = 0);
CheckResult check_portal(int fixtures = 50, std::uint64_t seed = 0);
CheckResult check_proxy(int triples = 10000, std::uint64_t seed = 0);
CheckResult check_frechet(int random_pairs = 500, std::uint64_t seed = 0);
CheckResult check_decide_profile();
CheckResult check_complexity_reduction(double eps = 0.25);
CheckResult check_set_cover(int trials = 500, std::uint64_t seed = 0);
CheckResult check_solvers(Objective obj, int instances = 200, std::uint64_t seed = 0);
CheckResult check_klmedian(int corpora = 20, std::uint64_t seed = 0);
CheckResult check_aspect(int instances = 50, std::uint64_t seed = 0, double eps = 0.1);

// small random Euclidean instance of the oracle-ratio corpus (1-D or 2-D, n <= 10, m <= 6)
MetricInstance corpus_instance(std::uint64_t seed, int index, bool with_opening_costs, int* k_out = nullptr);

const std::vector<std::string>& suite_names();
// runs one suite ("all" runs every suite); trials overrides each check's size.
// Wall-clock fields are dropped unless requested so reports are reproducible.
nlohmann::json run_suite(const std::string& suite, std::optional<int> trials, std::uint64_t seed, bool timings = false);

}  // namespace pdc
