#include "pdclust/profile.hpp"

#include <algorithm>
#include <cmath>
#include <deque>

#include "pdclust/common.hpp"
#include "pdclust/frechet.hpp"

namespace pdc {

Series reduce_value_domain(const Series& x, int ell, double eps) {
    if (!(eps > 0) || eps > 1) throw InvalidArgument("epsilon must lie in (0,1]");
    if (x.empty()) return x;
    double delta = min_error_simplification(Curve::from_series(x), ell).error;
    if (!(delta > 0)) return x;
    double q = eps * delta;
    Series out;
    out.reserve(x.size());
    for (double v : x) {
        double t = v / q;
        double r = std::round(t);
        double n = std::abs(t - r) <= 1e-9 * std::max(1.0, std::abs(t)) ? r : std::ceil(t);
        out.push_back(n * q);
    }
    return out;
}

bool decide_profile(const Series& x, const Profile& p) {
    std::size_t z = x.size(), ell = p.pairs.size();
    if (z == 0 || ell == 0) return false;
    // feas/hmin/hmax over (sector h, position t), both 1-based; row 0 is the virtual start
    std::vector<std::vector<char>> feas(ell + 1, std::vector<char>(z + 1, 0));
    auto hmin = feas, hmax = feas;
    feas[0][0] = hmin[0][0] = hmax[0][0] = 1;
    for (std::size_t h = 1; h <= ell; ++h) {
        double lo = p.pairs[h - 1].first, hi = p.pairs[h - 1].second;
        for (std::size_t t = 1; t <= z; ++t) {
            double v = x[t - 1];
            if (v < lo || v > hi) continue;
            bool at_lo = v == lo, at_hi = v == hi;
            bool f = false, fmin = false, fmax = false;
            if (t > 1 && feas[h][t - 1]) {  // extend sector h
                f = true;
                fmin = fmin || hmin[h][t - 1] || at_lo;
                fmax = fmax || hmax[h][t - 1] || at_hi;
            }
            auto closed = [&](std::size_t hh, std::size_t tt) { return feas[hh][tt] && hmin[hh][tt] && hmax[hh][tt]; };
            bool fresh = (h == 1) ? t == 1 : closed(h - 1, t - 1);
            bool shared = h > 1 && closed(h - 1, t);  // sector h starts on the last vertex of sector h-1
            if (fresh || shared) {
                f = true;
                fmin = fmin || at_lo;
                fmax = fmax || at_hi;
            }
            feas[h][t] = f;
            hmin[h][t] = fmin;
            hmax[h][t] = fmax;
        }
    }
    return feas[ell][z] && hmin[ell][z] && hmax[ell][z];
}

ProfileSet profile_set(const Series& x, int ell) {
    if (ell < 1) throw InvalidArgument("ell must be at least 1");
    ProfileSet out;
    out.ell = ell;
    if (x.empty()) return out;
    std::vector<double> vals(x.begin(), x.end());
    std::sort(vals.begin(), vals.end());
    vals.erase(std::unique(vals.begin(), vals.end()), vals.end());
    std::vector<std::pair<double, double>> pairs;
    for (std::size_t i = 0; i < vals.size(); ++i)
        for (std::size_t j = i; j < vals.size(); ++j) pairs.emplace_back(vals[i], vals[j]);
    std::vector<std::size_t> pick(static_cast<std::size_t>(ell), 0);
    while (true) {
        Profile p;
        for (auto i : pick) p.pairs.push_back(pairs[i]);
        if (decide_profile(x, p)) out.profiles.insert(p);
        std::size_t j = pick.size();
        bool done = true;
        while (j > 0) {
            --j;
            if (++pick[j] < pairs.size()) {
                done = false;
                break;
            }
            pick[j] = 0;
        }
        if (done) break;
    }
    return out;
}

int PrefixAutomaton::intern(State s) {
    auto it = index_.find(s);
    if (it != index_.end()) return it->second;
    int id = static_cast<int>(states_.size());
    states_.push_back(s);
    index_.emplace(std::move(s), id);
    return id;
}

int PrefixAutomaton::step(int state, double value) {
    auto key = std::make_pair(state, value);
    auto it = trans_.find(key);
    if (it != trans_.end()) return it->second;
    State next;
    std::size_t ell = static_cast<std::size_t>(ell_);
    if (state == start()) {
        next.insert(Prefix{{value, value}});
    } else {
        for (const auto& p : states_[static_cast<std::size_t>(state)]) {
            Prefix e = p;
            e.back().first = std::min(e.back().first, value);
            e.back().second = std::max(e.back().second, value);
            next.insert(std::move(e));
            if (p.size() < ell) {
                Prefix f = p;
                f.emplace_back(value, value);
                next.insert(std::move(f));
            }
        }
    }
    // sectors may start on the vertex that closes the previous one
    std::vector<Prefix> frontier(next.begin(), next.end());
    while (!frontier.empty()) {
        std::vector<Prefix> grown;
        for (const auto& p : frontier) {
            if (p.size() >= ell) continue;
            Prefix f = p;
            f.emplace_back(value, value);
            if (next.insert(f).second) grown.push_back(std::move(f));
        }
        frontier = std::move(grown);
    }
    int id = intern(std::move(next));
    trans_.emplace(key, id);
    return id;
}

ProfileSet PrefixAutomaton::accepted(int state) const {
    ProfileSet out;
    out.ell = ell_;
    if (state == start()) return out;
    for (const auto& p : states_[static_cast<std::size_t>(state)])
        if (p.size() == static_cast<std::size_t>(ell_)) out.profiles.insert(Profile{p});
    return out;
}

int PrefixAutomaton::run(const Series& x) {
    int s = start();
    for (double v : x) s = step(s, v);
    return s;
}

namespace {

bool viable(const PrefixAutomaton::State& st, const ProfileSet& target) {
    for (const auto& p : st) {
        bool ok = false;
        std::size_t r = p.size();
        for (const auto& t : target.profiles) {
            if (!std::equal(p.begin(), p.end() - 1, t.pairs.begin())) continue;
            const auto& last = t.pairs[r - 1];
            if (last.first <= p.back().first && p.back().second <= last.second) {
                ok = true;
                break;
            }
        }
        if (!ok) return false;
    }
    return true;
}

}  // namespace

Series shortest_equivalent(const Series& xr, int ell, std::size_t state_cap, bool* capped) {
    if (capped) *capped = false;
    if (xr.empty()) return xr;
    if (ell < 1) throw InvalidArgument("ell must be at least 1");
    PrefixAutomaton aut(ell);
    ProfileSet target = aut.accepted(aut.run(xr));
    std::vector<double> alphabet(xr.begin(), xr.end());
    std::sort(alphabet.begin(), alphabet.end());
    alphabet.erase(std::unique(alphabet.begin(), alphabet.end()), alphabet.end());

    struct Node {
        int state;
        int parent;
        double value;
    };
    std::vector<Node> nodes{{aut.start(), -1, 0.0}};
    std::set<int> visited{aut.start()};
    std::deque<int> queue{0};
    auto spell = [&](int node) {
        Series s;
        for (int n = node; nodes[static_cast<std::size_t>(n)].parent >= 0; n = nodes[static_cast<std::size_t>(n)].parent)
            s.push_back(nodes[static_cast<std::size_t>(n)].value);
        std::reverse(s.begin(), s.end());
        return s;
    };
    while (!queue.empty()) {
        int cur = queue.front();
        queue.pop_front();
        for (double v : alphabet) {
            int ns = aut.step(nodes[static_cast<std::size_t>(cur)].state, v);
            if (!visited.insert(ns).second) continue;
            if (!viable(aut.state(ns), target)) continue;
            nodes.push_back({ns, cur, v});
            int id = static_cast<int>(nodes.size()) - 1;
            if (aut.accepted(ns) == target) return spell(id);
            if (visited.size() > state_cap) {
                if (capped) *capped = true;
                return xr;
            }
            queue.push_back(id);
        }
    }
    return xr;
}

Series complexity_reduction(const Series& x, int ell, double eps, std::size_t state_cap) {
    if (!(eps > 0) || eps >= 1) throw InvalidArgument("epsilon must lie in (0,1)");
    if (x.empty()) return x;
    Series xr = reduce_value_domain(x, ell, eps);
    Series out = shortest_equivalent(xr, ell, state_cap);
    return out.size() <= x.size() ? out : xr;
}

}  // namespace pdc
