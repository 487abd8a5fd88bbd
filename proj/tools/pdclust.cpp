#include <chrono>
#include <cstdio>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "pdclust/baseline.hpp"
#include "pdclust/dp.hpp"
#include "pdclust/frechet.hpp"
#include "pdclust/generate.hpp"
#include "pdclust/io.hpp"
#include "pdclust/oracle.hpp"
#include "pdclust/profile.hpp"
#include "pdclust/verify.hpp"

using namespace pdc;

namespace {

struct SolveArgs {
    std::string mode;
    std::string input;
    double epsilon = 0.25;
    std::optional<int> k;
    std::optional<int> ell;
    std::string regime = "auto";
    std::uint64_t seed = 0;
    int repeats = 1;
    int portal_cap = 2;
    int buckets = 4;
    std::optional<int> rounds;
    std::string out;
    bool exact_ann = false;
    bool with_oracle = false;
    int threads = 1;
};

struct ReduceArgs {
    std::string input;
    int ell = 1;
    double epsilon = 0.25;
    std::string out;
};

struct VerifyArgs {
    std::string suite;
    std::optional<int> trials;
    std::uint64_t seed = 0;
    std::string out;
    bool timings = false;
    int threads = 1;
};

struct GenArgs {
    std::string family;
    int n = 0;
    int m = 0;
    int dim = 2;
    std::uint64_t seed = 0;
    std::optional<int> k;
    bool fl = false;
    std::string out;
};

struct BenchArgs {
    std::string mode = "kmedian";
    std::string family = "planar";
    int n = 200;
    int m = 20;
    int dim = 2;
    int k = 3;
    double epsilon = 0.25;
    std::uint64_t seed = 0;
    int repeats = 1;
    std::optional<int> rounds;
};

void emit(const std::string& path, const std::string& text) {
    if (path.empty() || path == "-")
        std::cout << text;
    else
        write_text_file(path, text);
}

SolverParams solver_params(const SolveArgs& a) {
    SolverParams p;
    p.epsilon = a.epsilon;
    p.seed = a.seed;
    p.repeats = a.repeats;
    p.portal_cap = a.portal_cap;
    p.bucket_count = a.buckets;
    p.bootstrap_rounds = a.rounds;
    p.exact_ann = a.exact_ann;
    p.validate();
    return p;
}

Regime pick_regime(const std::string& name, const MetricInstance& inst) {
    if (name == "centers") return Regime::Centers;
    if (name == "clients") return Regime::Clients;
    return auto_regime(inst);
}

std::vector<Curve> load_curves(const std::string& path) {
    if (path.size() >= 4 && path.substr(path.size() - 4) == ".csv") {
        std::vector<Curve> out;
        for (const auto& s : read_series_csv_file(path)) {
            if (s.empty()) throw MalformedInput("empty series in " + path);
            out.push_back(Curve::from_series(s));
        }
        return out;
    }
    nlohmann::json doc = parse_json_file(path);
    if (doc.is_object() && doc.contains("kind")) {
        if (doc["kind"] != "frechet") throw MalformedInput("klmedian needs a frechet instance or a series CSV");
        doc = doc.value("clients", nlohmann::json::array());
    }
    if (!doc.is_array()) throw MalformedInput("expected a list of curves");
    std::vector<Curve> out;
    for (const auto& c : doc) out.push_back(curve_from_json(c));
    return out;
}

int cmd_solve(const SolveArgs& a) {
    if (a.threads < 1) throw InvalidArgument("threads must be at least 1");
    SolverParams params = solver_params(a);
    nlohmann::json out;
    if (a.mode == "klmedian") {
        if (!a.k) throw InvalidArgument("--k is required in klmedian mode");
        if (!a.ell) throw InvalidArgument("--ell is required in klmedian mode");
        std::vector<Curve> curves = load_curves(a.input);
        KlSolution sol = kl_median_solve(curves, *a.k, *a.ell, a.epsilon, params);
        out["mode"] = "klmedian";
        out["centers"] = nlohmann::json::array();
        for (const auto& c : sol.centers) out["centers"].push_back(curve_to_json(c));
        out["assignment"] = sol.assignment;
        out["cost"] = sol.cost;
        out["candidate_count"] = sol.candidate_count;
        out["params_echo"] = params.echo();
        out["seed"] = a.seed;
        if (a.with_oracle) {
            std::vector<Series> series;
            for (const auto& c : curves) {
                if (c.dim != 1) throw InvalidArgument("the klmedian oracle handles one-dimensional series only");
                series.push_back(c.coords);
            }
            double opt = brute_klmedian_grid(series, *a.k, *a.ell, 0.05).cost;
            out["oracle_cost"] = opt;
            out["oracle_grid_spacing"] = 0.05;
            out["ratio"] = opt > 0 ? sol.cost / opt : 1.0;
        }
        emit(a.out, dump_json(out));
        return 0;
    }
    if (a.mode != "fl" && a.mode != "kmedian") throw InvalidArgument("mode must be fl, kmedian or klmedian");
    MetricInstance inst = load_instance_file(a.input);
    Objective obj = a.mode == "fl" ? Objective::FacilityLocation : Objective::KMedian;
    int k = 0;
    if (obj == Objective::KMedian) {
        if (!a.k) throw InvalidArgument("--k is required in kmedian mode");
        k = *a.k;
        if (k < 1) throw InvalidArgument("--k must be at least 1");
    } else if (!inst.opening_costs) {
        throw InvalidArgument("fl mode needs opening_costs in the instance");
    }
    Regime regime = pick_regime(a.regime, inst);
    SolverKind kind = solver_kind(obj, regime);
    Solution sol = bootstrap(kind, inst, k, params);
    out = solution_to_json(sol);
    out["mode"] = a.mode;
    out["regime"] = regime == Regime::Centers ? "centers" : "clients";
    if (a.with_oracle) {
        double opt = obj == Objective::FacilityLocation ? brute_fl(inst).total_cost : brute_kmedian(inst, k).total_cost;
        out["oracle_cost"] = opt;
        out["ratio"] = opt > 0 ? sol.total_cost / opt : 1.0;
    }
    emit(a.out, dump_json(out));
    return 0;
}

int cmd_reduce(const ReduceArgs& a) {
    if (a.ell < 1) throw InvalidArgument("--ell must be at least 1");
    if (!(a.epsilon > 0 && a.epsilon < 1)) throw InvalidArgument("--epsilon must lie in (0, 1)");
    std::vector<Series> rows = read_series_csv_file(a.input);
    std::vector<Series> reduced;
    nlohmann::json report = nlohmann::json::array();
    for (const auto& s : rows) {
        Series r = complexity_reduction(s, a.ell, a.epsilon);
        report.push_back({{"before", s.size()}, {"after", r.size()}});
        reduced.push_back(std::move(r));
    }
    write_text_file(a.out, series_csv(reduced));
    std::cout << dump_json({{"lines", report}, {"ell", a.ell}, {"epsilon", a.epsilon}});
    return 0;
}

int cmd_verify(const VerifyArgs& a) {
    if (a.threads < 1) throw InvalidArgument("threads must be at least 1");
    nlohmann::json report = run_suite(a.suite, a.trials, a.seed, a.timings);
    emit(a.out, dump_json(report));
    return report["pass"].get<bool>() ? 0 : 1;
}

int cmd_gen(const GenArgs& a) {
    GenOptions g;
    g.family = parse_family(a.family);
    g.n = a.n;
    g.m = a.m;
    g.dim = a.dim;
    g.seed = a.seed;
    g.k = a.k;
    g.opening_costs = a.fl;
    Generated res = generate(g);
    if (res.is_series)
        emit(a.out, series_csv(res.series));
    else
        emit(a.out, dump_json(instance_to_json(res.instance)));
    return 0;
}

int cmd_bench(const BenchArgs& a) {
    GenOptions g;
    g.family = parse_family(a.family);
    if (g.family == Family::FrechetSeries) throw InvalidArgument("bench needs a point family");
    g.n = a.n;
    g.m = a.m;
    g.dim = a.dim;
    g.seed = a.seed;
    bool fl = a.mode == "fl";
    if (!fl && a.mode != "kmedian") throw InvalidArgument("bench mode must be fl or kmedian");
    g.opening_costs = fl;
    MetricInstance inst = generate(g).instance;
    SolverParams p;
    p.epsilon = a.epsilon;
    p.seed = a.seed;
    p.repeats = a.repeats;
    p.bootstrap_rounds = a.rounds;
    p.validate();
    using Clock = std::chrono::steady_clock;
    nlohmann::json out;
    out["n"] = a.n;
    out["m"] = a.m;
    out["mode"] = a.mode;
    for (Regime regime : {Regime::Centers, Regime::Clients}) {
        SolveTrace trace;
        auto t0 = Clock::now();
        Solution s = bootstrap(solver_kind(fl ? Objective::FacilityLocation : Objective::KMedian, regime), inst, a.k, p, &trace);
        double secs = std::chrono::duration<double>(Clock::now() - t0).count();
        out[regime == Regime::Centers ? "centers" : "clients"] = {
            {"seconds", secs}, {"cost", s.total_cost}, {"baseline_cost", trace.baseline_cost}, {"best_dp_cost", trace.best_dp_cost}, {"improvements", trace.improvements}};
    }
    std::cout << dump_json(out);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Approximation schemes for k-median and facility location in partially doubling metrics"};
    app.require_subcommand(1);

    SolveArgs sa;
    auto* solve = app.add_subcommand("solve", "Solve a facility location, k-median or (k,l)-median instance");
    solve->add_option("--mode", sa.mode, "fl | kmedian | klmedian")->required()->check(CLI::IsMember({"fl", "kmedian", "klmedian"}));
    solve->add_option("--input", sa.input, "instance JSON (or series CSV for klmedian)")->required();
    solve->add_option("--epsilon", sa.epsilon, "accuracy parameter in (0, 1/2)")->required();
    solve->add_option("--k", sa.k, "number of centers");
    solve->add_option("--ell", sa.ell, "center complexity (klmedian)");
    solve->add_option("--regime", sa.regime, "centers | clients | auto")->check(CLI::IsMember({"centers", "clients", "auto"}));
    solve->add_option("--seed", sa.seed);
    solve->add_option("--repeats", sa.repeats, "DP runs per bootstrap round");
    solve->add_option("--portal-cap", sa.portal_cap);
    solve->add_option("--buckets", sa.buckets);
    solve->add_option("--rounds", sa.rounds, "bootstrap rounds (default ceil(3 ddim))");
    solve->add_option("--out", sa.out, "output file (default stdout)");
    solve->add_flag("--exact-ann", sa.exact_ann);
    solve->add_flag("--with-oracle", sa.with_oracle);
    solve->add_option("--threads", sa.threads, "worker cap");

    ReduceArgs ra;
    auto* reduce = app.add_subcommand("reduce", "Complexity reduction of time series");
    reduce->add_option("--input", ra.input)->required();
    reduce->add_option("--ell", ra.ell)->required();
    reduce->add_option("--epsilon", ra.epsilon)->required();
    reduce->add_option("--out", ra.out)->required();

    VerifyArgs va;
    auto* verify = app.add_subcommand("verify", "Run property suites against the oracles");
    verify->add_option("--suite", va.suite)->required();
    verify->add_option("--trials", va.trials);
    verify->add_option("--seed", va.seed);
    verify->add_option("--out", va.out);
    verify->add_flag("--timings", va.timings, "include wall-clock fields");
    verify->add_option("--threads", va.threads);

    GenArgs ga;
    auto* gen = app.add_subcommand("gen", "Generate a seeded instance");
    gen->add_option("--family", ga.family, "line | planar | two-cluster | frechet-series")->required();
    gen->add_option("--n", ga.n)->required();
    gen->add_option("--m", ga.m, "facilities (series length for frechet-series)");
    gen->add_option("--dim", ga.dim);
    gen->add_option("--seed", ga.seed);
    gen->add_option("--k", ga.k);
    gen->add_flag("--fl", ga.fl, "draw opening costs");
    gen->add_option("--out", ga.out);

    BenchArgs ba;
    auto* bench = app.add_subcommand("bench", "Time the solvers on a generated instance");
    bench->add_option("--mode", ba.mode);
    bench->add_option("--family", ba.family);
    bench->add_option("--n", ba.n);
    bench->add_option("--m", ba.m);
    bench->add_option("--dim", ba.dim);
    bench->add_option("--k", ba.k);
    bench->add_option("--epsilon", ba.epsilon);
    bench->add_option("--seed", ba.seed);
    bench->add_option("--repeats", ba.repeats);
    bench->add_option("--rounds", ba.rounds);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 1;
    }

    try {
        if (*solve) return cmd_solve(sa);
        if (*reduce) return cmd_reduce(ra);
        if (*verify) return cmd_verify(va);
        if (*gen) return cmd_gen(ga);
        if (*bench) return cmd_bench(ba);
    } catch (const BudgetExceeded& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 1;
}
