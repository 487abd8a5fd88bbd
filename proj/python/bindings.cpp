#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>
#include <string>
#include <vector>

#include "pdclust/dp.hpp"
#include "pdclust/frechet.hpp"
#include "pdclust/io.hpp"
#include "pdclust/oracle.hpp"
#include "pdclust/profile.hpp"
#include "pdclust/verify.hpp"

namespace py = pybind11;
using namespace pdc;

namespace {

SolverParams make_params(double epsilon, std::uint64_t seed, int repeats) {
    SolverParams p;
    p.epsilon = epsilon;
    p.seed = seed;
    p.repeats = repeats;
    p.validate();
    return p;
}

// instances and solutions cross the boundary as JSON text
std::string solve(const std::string& instance_json, const std::string& mode, std::optional<int> k, double epsilon,
                  const std::string& regime, std::uint64_t seed, int repeats) {
    MetricInstance inst = load_instance(nlohmann::json::parse(instance_json));
    Objective obj;
    if (mode == "fl") {
        obj = Objective::FacilityLocation;
        if (!inst.opening_costs) throw InvalidArgument("fl mode needs opening_costs in the instance");
    } else if (mode == "kmedian") {
        obj = Objective::KMedian;
        if (!k) throw InvalidArgument("k is required in kmedian mode");
    } else {
        throw InvalidArgument("mode must be fl or kmedian");
    }
    Regime r;
    if (regime == "centers") r = Regime::Centers;
    else if (regime == "clients") r = Regime::Clients;
    else if (regime == "auto") r = auto_regime(inst);
    else throw InvalidArgument("regime must be centers, clients or auto");
    Solution sol = bootstrap(solver_kind(obj, r), inst, k.value_or(0), make_params(epsilon, seed, repeats));
    return dump_json(solution_to_json(sol));
}

py::dict kl_median(const std::vector<std::vector<double>>& series, int k, int ell, double epsilon, std::uint64_t seed) {
    std::vector<Curve> curves;
    for (const auto& s : series) curves.push_back(Curve::from_series(s));
    KlSolution sol = kl_median_solve(curves, k, ell, epsilon, make_params(epsilon, seed, 1));
    std::vector<std::vector<double>> centers;
    for (const Curve& c : sol.centers) centers.push_back(c.coords);
    py::dict out;
    out["centers"] = centers;
    out["assignment"] = sol.assignment;
    out["cost"] = sol.cost;
    return out;
}

}  // namespace

PYBIND11_MODULE(_pdclust, m) {
    // translators run most-recent first, so the subclass goes last
    py::register_exception<Error>(m, "Error", PyExc_RuntimeError);
    py::register_exception<InputError>(m, "InputError", PyExc_ValueError);

    m.def("solve", &solve, py::arg("instance_json"), py::arg("mode"), py::arg("k") = py::none(), py::arg("epsilon") = 0.25,
          py::arg("regime") = "auto", py::arg("seed") = 0, py::arg("repeats") = 1);
    m.def("brute_force", [](const std::string& instance_json, const std::string& mode, std::optional<int> k) {
        MetricInstance inst = load_instance(nlohmann::json::parse(instance_json));
        Solution s = mode == "fl" ? brute_fl(inst) : brute_kmedian(inst, k.value_or(1));
        return dump_json(solution_to_json(s));
    }, py::arg("instance_json"), py::arg("mode"), py::arg("k") = py::none());
    m.def("frechet", [](const std::vector<double>& a, const std::vector<double>& b) {
        return discrete_frechet(Curve::from_series(a), Curve::from_series(b));
    });
    m.def("complexity_reduction", [](const std::vector<double>& x, int ell, double eps) {
        return complexity_reduction(x, ell, eps);
    }, py::arg("series"), py::arg("ell"), py::arg("epsilon"));
    m.def("kl_median", &kl_median, py::arg("series"), py::arg("k"), py::arg("ell"), py::arg("epsilon") = 0.25, py::arg("seed") = 0);
    m.def("verify", [](const std::string& suite, std::optional<int> trials, std::uint64_t seed) {
        return dump_json(run_suite(suite, trials, seed));
    }, py::arg("suite"), py::arg("trials") = py::none(), py::arg("seed") = 0);
}
