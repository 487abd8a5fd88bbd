#include "pdclust/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

namespace pdc {

namespace {

double binom(int n, int k) {
    if (k < 0 || k > n) return 0;
    double r = 1;
    for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}

// number of monotone index walks from (0,0) to (a,b) with unit/diagonal steps
double traversal_count(std::size_t a, std::size_t b) {
    std::vector<std::vector<double>> d(a + 1, std::vector<double>(b + 1, 1.0));
    for (std::size_t i = 1; i <= a; ++i)
        for (std::size_t j = 1; j <= b; ++j) d[i][j] = d[i - 1][j] + d[i][j - 1] + d[i - 1][j - 1];
    return d[a][b];
}

void for_each_traversal(std::size_t z, std::size_t l, const std::function<void(const std::vector<std::pair<std::size_t, std::size_t>>&)>& fn) {
    std::vector<std::pair<std::size_t, std::size_t>> path{{0, 0}};
    std::function<void()> rec = [&]() {
        auto [i, j] = path.back();
        if (i + 1 == z && j + 1 == l) {
            fn(path);
            return;
        }
        const std::pair<std::size_t, std::size_t> steps[3] = {{i + 1, j}, {i, j + 1}, {i + 1, j + 1}};
        for (auto s : steps) {
            if (s.first >= z || s.second >= l) continue;
            path.push_back(s);
            rec();
            path.pop_back();
        }
    };
    rec();
}

double client_cost(const MetricInstance& inst, const std::vector<int>& open) {
    double total = 0;
    for (int x = 0; x < inst.n(); ++x) {
        double best = kInf;
        for (int f : open) best = std::min(best, inst.dist(x, inst.n() + f));
        total += best;
    }
    return total;
}

}  // namespace

Solution brute_kmedian(const MetricInstance& inst, int k) {
    if (k < 1) throw InvalidArgument("k must be at least 1");
    if (inst.m() == 0) throw NoFacilities("no facilities");
    int kk = std::min(k, inst.m());
    if (binom(inst.m(), kk) > kOracleLimit) throw TooLarge("too many k-subsets for the oracle");
    std::vector<int> pick(static_cast<std::size_t>(kk));
    for (int i = 0; i < kk; ++i) pick[static_cast<std::size_t>(i)] = i;
    std::vector<int> best_set;
    double best = kInf;
    while (true) {
        double c = client_cost(inst, pick);
        if (c < best) {
            best = c;
            best_set = pick;
        }
        int i = kk - 1;
        while (i >= 0 && pick[static_cast<std::size_t>(i)] == inst.m() - kk + i) --i;
        if (i < 0) break;
        ++pick[static_cast<std::size_t>(i)];
        for (int j = i + 1; j < kk; ++j) pick[static_cast<std::size_t>(j)] = pick[static_cast<std::size_t>(j - 1)] + 1;
    }
    return make_solution(inst, best_set, Objective::KMedian);
}

Solution brute_fl(const MetricInstance& inst) {
    int m = inst.m();
    if (std::ldexp(1.0, m) > kOracleLimit) throw TooLarge("too many facility subsets for the oracle");
    if (inst.n() == 0) return make_solution(inst, {}, Objective::FacilityLocation);
    if (m == 0) throw NoFacilities("no facilities");
    double best = kInf;
    std::vector<int> best_set;
    for (std::uint32_t mask = 1; mask < (1u << m); ++mask) {
        std::vector<int> open;
        double oc = 0;
        for (int f = 0; f < m; ++f)
            if (mask >> f & 1u) {
                open.push_back(f);
                oc += inst.ocost(f);
            }
        double c = client_cost(inst, open) + oc;
        if (c < best) {
            best = c;
            best_set = open;
        }
    }
    return make_solution(inst, best_set, Objective::FacilityLocation);
}

double brute_frechet(const Curve& a, const Curve& b) {
    if (a.dim != b.dim) throw DimensionMismatch("curves differ in dimension");
    if (traversal_count(a.size() - 1, b.size() - 1) > kOracleLimit) throw TooLarge("too many traversals");
    double best = kInf;
    for_each_traversal(a.size(), b.size(), [&](const auto& path) {
        double worst = 0;
        for (auto [i, j] : path) {
            double s = 0;
            for (int c = 0; c < a.dim; ++c) {
                double d = a.at(i, c) - b.at(j, c);
                s += d * d;
            }
            worst = std::max(worst, std::sqrt(s));
        }
        best = std::min(best, worst);
    });
    return best;
}

ProfileSet brute_profile_set(const Series& x, int ell) {
    ProfileSet out;
    out.ell = ell;
    if (x.empty()) return out;
    std::size_t l = static_cast<std::size_t>(ell);
    if (traversal_count(x.size() - 1, l - 1) > kOracleLimit) throw TooLarge("too many traversals");
    for_each_traversal(x.size(), l, [&](const auto& path) {
        Profile p;
        p.pairs.assign(l, {kInf, -kInf});
        for (auto [i, j] : path) {
            p.pairs[j].first = std::min(p.pairs[j].first, x[i]);
            p.pairs[j].second = std::max(p.pairs[j].second, x[i]);
        }
        out.profiles.insert(p);
    });
    return out;
}

Series brute_shortest_equivalent(const Series& x, int ell) {
    if (x.empty()) return x;
    std::vector<double> vals(x.begin(), x.end());
    std::sort(vals.begin(), vals.end());
    vals.erase(std::unique(vals.begin(), vals.end()), vals.end());
    double total = 0;
    for (std::size_t len = 1; len <= x.size(); ++len) total += std::pow(static_cast<double>(vals.size()), static_cast<double>(len));
    if (total > kOracleLimit) throw TooLarge("too many candidate series");
    ProfileSet target = brute_profile_set(x, ell);
    for (std::size_t len = 1; len <= x.size(); ++len) {
        std::vector<std::size_t> pick(len, 0);
        while (true) {
            Series s;
            for (auto i : pick) s.push_back(vals[i]);
            if (brute_profile_set(s, ell) == target) return s;
            std::size_t j = len;
            bool done = true;
            while (j > 0) {
                --j;
                if (++pick[j] < vals.size()) {
                    done = false;
                    break;
                }
                pick[j] = 0;
            }
            if (done) break;
        }
    }
    return x;
}

GridKlResult brute_klmedian_grid(const std::vector<Series>& series, int k, int ell, double spacing) {
    if (series.empty()) return {};
    if (k < 1 || ell < 1 || !(spacing > 0)) throw InvalidArgument("bad oracle parameters");
    double lo = kInf, hi = -kInf;
    for (const auto& s : series)
        for (double v : s) {
            lo = std::min(lo, v);
            hi = std::max(hi, v);
        }
    long long a = static_cast<long long>(std::floor(lo / spacing + 1e-9));
    long long b = static_cast<long long>(std::ceil(hi / spacing - 1e-9));
    std::vector<double> grid;
    for (long long t = a; t <= b; ++t) grid.push_back(static_cast<double>(t) * spacing);
    double count = std::pow(static_cast<double>(grid.size()), ell);
    if (count * static_cast<double>(series.size()) > 5e7 || series.size() > 10) throw TooLarge("grid oracle too large");

    std::vector<Curve> centers;
    std::vector<std::size_t> pick(static_cast<std::size_t>(ell), 0);
    while (true) {
        Curve c;
        for (auto i : pick) c.coords.push_back(grid[i]);
        centers.push_back(c);
        std::size_t j = pick.size();
        bool done = true;
        while (j > 0) {
            --j;
            if (++pick[j] < grid.size()) {
                done = false;
                break;
            }
            pick[j] = 0;
        }
        if (done) break;
    }
    std::size_t n = series.size();
    std::vector<std::vector<double>> d(n, std::vector<double>(centers.size()));
    for (std::size_t i = 0; i < n; ++i) {
        Curve ci = Curve::from_series(series[i]);
        for (std::size_t c = 0; c < centers.size(); ++c) d[i][c] = discrete_frechet(ci, centers[c]);
    }
    // enumerate partitions of the series into at most k groups (restricted growth strings)
    GridKlResult best;
    best.cost = kInf;
    std::vector<int> label(n, 0);
    std::function<void(std::size_t, int)> rec = [&](std::size_t i, int used) {
        if (i == n) {
            double total = 0;
            std::vector<Curve> cs;
            for (int g = 0; g < used; ++g) {
                double gb = kInf;
                std::size_t arg = 0;
                for (std::size_t c = 0; c < centers.size(); ++c) {
                    double s = 0;
                    for (std::size_t x = 0; x < n; ++x)
                        if (label[x] == g) s += d[x][c];
                    if (s < gb) {
                        gb = s;
                        arg = c;
                    }
                }
                total += gb;
                cs.push_back(centers[arg]);
            }
            if (total < best.cost) {
                best.cost = total;
                best.centers = cs;
            }
            return;
        }
        for (int g = 0; g <= used && g < k; ++g) {
            label[i] = g;
            rec(i + 1, std::max(used, g + 1));
        }
    };
    rec(0, 0);
    return best;
}

}  // namespace pdc
