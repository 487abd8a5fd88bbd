#pragma once

#include <compare>
#include <cstddef>
#include <map>
#include <set>
#include <utility>
#include <vector>

namespace pdc {

using Series = std::vector<double>;

struct Profile {
    std::vector<std::pair<double, double>> pairs;
    auto operator<=>(const Profile&) const = default;
};

struct ProfileSet {
    int ell = 0;
    std::set<Profile> profiles;
    bool operator==(const ProfileSet&) const = default;
};

Series reduce_value_domain(const Series& x, int ell, double eps);
bool decide_profile(const Series& x, const Profile& p);
ProfileSet profile_set(const Series& x, int ell);

// Deterministic automaton over sets of prefix profiles. A prefix profile lists
// the (min,max) of every sector opened so far; the last sector holds the most
// recently consumed value.
class PrefixAutomaton {
public:
    using Prefix = std::vector<std::pair<double, double>>;
    using State = std::set<Prefix>;

    explicit PrefixAutomaton(int ell) : ell_(ell) {}

    int start() const { return 0; }
    int step(int state, double value);
    const State& state(int id) const { return states_[static_cast<std::size_t>(id)]; }
    std::size_t state_count() const { return states_.size(); }
    // profiles of full length ell in this state
    ProfileSet accepted(int state) const;
    int run(const Series& x);

private:
    int intern(State s);

    int ell_;
    std::vector<State> states_{State{}};
    std::map<State, int> index_{{State{}, 0}};
    std::map<std::pair<int, double>, int> trans_;
};

// BFS for the shortest series over the values of xr with the same profile set;
// returns xr itself when the state cap is hit
Series shortest_equivalent(const Series& xr, int ell, std::size_t state_cap = 200000, bool* capped = nullptr);

Series complexity_reduction(const Series& x, int ell, double eps, std::size_t state_cap = 200000);

}  // namespace pdc
