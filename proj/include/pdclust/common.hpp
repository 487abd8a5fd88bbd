#pragma once

#include <compare>
#include <cstdint>
#include <limits>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

namespace pdc {

constexpr double kInf = std::numeric_limits<double>::infinity();

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// input problems map to CLI exit code 1
struct InputError : Error {
    using Error::Error;
};
struct MalformedInput : InputError {
    using InputError::InputError;
};
struct AsymmetricMatrix : InputError {
    using InputError::InputError;
};
struct NonPositiveOpeningCost : InputError {
    using InputError::InputError;
};
struct DimensionMismatch : InputError {
    using InputError::InputError;
};
struct IdOutOfRange : InputError {
    using InputError::InputError;
};
struct NoFacilities : InputError {
    using InputError::InputError;
};
struct EmptyDomain : InputError {
    using InputError::InputError;
};
struct DuplicatePoints : InputError {
    using InputError::InputError;
};
struct InvalidArgument : InputError {
    using InputError::InputError;
};

struct ClosedFacility : Error {
    using Error::Error;
};
struct UnassignedClient : Error {
    using Error::Error;
};
struct Infeasible : Error {
    using Error::Error;
};
struct TooLarge : Error {
    using Error::Error;
};
struct BudgetExceeded : Error {
    using Error::Error;
};

enum class Side : std::uint8_t { Client = 0, Facility = 1 };

struct PointId {
    Side side = Side::Client;
    int index = 0;
    auto operator<=>(const PointId&) const = default;
};

inline PointId client(int i) { return {Side::Client, i}; }
inline PointId facility(int i) { return {Side::Facility, i}; }

enum class Objective { KMedian, FacilityLocation };

// splitmix64 finalizer; all seeded streams are derived through split_seed
inline std::uint64_t mix64(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

inline std::uint64_t split_seed(std::uint64_t seed, std::uint64_t stream, std::uint64_t counter = 0) {
    return mix64(mix64(seed ^ mix64(stream)) + counter * 0xd1b54a32d192ed03ULL);
}

namespace stream {
constexpr std::uint64_t decomposition = 1;
constexpr std::uint64_t dp_round = 2;
constexpr std::uint64_t generator = 3;
constexpr std::uint64_t verify = 4;
constexpr std::uint64_t bootstrap = 5;
}  // namespace stream

// thin wrapper so distributions are our own (std distributions are not portable)
class Rng {
public:
    explicit Rng(std::uint64_t seed) : eng_(mix64(seed)) {}
    std::uint64_t next() { return eng_(); }
    double uniform() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
    // uniform integer in [0, n)
    std::size_t below(std::size_t n) {
        if (n <= 1) return 0;
        std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() - std::numeric_limits<std::uint64_t>::max() % n;
        std::uint64_t r;
        do {
            r = eng_();
        } while (r >= limit);
        return static_cast<std::size_t>(r % n);
    }
    int range(int lo, int hi) { return lo + static_cast<int>(below(static_cast<std::size_t>(hi - lo + 1))); }
    template <class T>
    void shuffle(std::vector<T>& v) {
        for (std::size_t i = v.size(); i > 1; --i) std::swap(v[i - 1], v[below(i)]);
    }

private:
    std::mt19937_64 eng_;
};

}  // namespace pdc
