#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "pdclust/generate.hpp"
#include "pdclust/io.hpp"
#include "pdclust/verify.hpp"

using namespace pdc;

namespace {

int failures = 0;

void report(int id, const std::string& title, const CheckResult& r) {
    if (!r.pass) ++failures;
    std::cout << (r.pass ? "PASS" : "FAIL") << "  " << id << "  " << title << "  " << r.detail.dump() << std::endl;
}

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

CheckResult determinism() {
    CheckResult r{"determinism", false, nlohmann::json::object()};
    const std::string dir = PDCLUST_WORK_DIR;
    GenOptions o;
    o.family = Family::Planar;
    o.n = 12;
    o.m = 6;
    o.seed = 5;
    o.k = 3;
    write_text_file(dir + "/det_instance.json", dump_json(instance_to_json(generate(o).instance)));
    bool ok = true;
    std::string outs[2];
    for (int run = 0; run < 2; ++run) {
        std::string out = dir + "/det_solution_" + std::to_string(run) + ".json";
        std::string cmd = std::string("\"") + PDCLUST_EXE + "\" solve --mode kmedian --k 3 --epsilon 0.25 --seed 42 --repeats 2 --input \"" +
                          dir + "/det_instance.json\" --out \"" + out + "\"";
        ok = ok && std::system(cmd.c_str()) == 0;
        outs[run] = slurp(out);
    }
    r.pass = ok && !outs[0].empty() && outs[0] == outs[1];
    r.detail["exit_ok"] = ok;
    r.detail["bytes"] = outs[0].size();
    r.detail["identical"] = outs[0] == outs[1];
    return r;
}

}  // namespace

int main() {
    auto t0 = std::chrono::steady_clock::now();
    report(1, "oracle ratio, k-median", check_solvers(Objective::KMedian));
    report(2, "oracle ratio, facility location", check_solvers(Objective::FacilityLocation));
    report(3, "net invariants", check_nets());
    report(4, "cutting probability", check_cutting());
    report(5, "portal-respecting distances", check_portal());
    report(6, "proxy sandwich", check_proxy());
    report(7, "discrete frechet", check_frechet());
    report(8, "profile decision", check_decide_profile());
    report(9, "complexity reduction", check_complexity_reduction());
    report(10, "set cover", check_set_cover());
    report(11, "(k,l)-median end to end", check_klmedian());
    report(12, "aspect-ratio pipeline", check_aspect());
    report(13, "determinism", determinism());
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::cout << (failures == 0 ? "ALL PASS" : std::to_string(failures) + " FAILED") << "  (" << secs << " s)" << std::endl;
    return failures == 0 ? 0 : 1;
}
