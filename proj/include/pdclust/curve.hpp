#pragma once

#include <cstddef>
#include <vector>

namespace pdc {

struct Curve {
    int dim = 1;
    std::vector<double> coords;  // row-major, size() * dim

    std::size_t size() const { return dim > 0 ? coords.size() / static_cast<std::size_t>(dim) : 0; }
    const double* vertex(std::size_t i) const { return coords.data() + i * static_cast<std::size_t>(dim); }
    double at(std::size_t i, int c = 0) const { return coords[i * static_cast<std::size_t>(dim) + static_cast<std::size_t>(c)]; }
    void push(const double* v) { coords.insert(coords.end(), v, v + dim); }

    static Curve from_series(const std::vector<double>& xs) { return Curve{1, xs}; }
    bool operator==(const Curve&) const = default;
    auto operator<=>(const Curve&) const = default;
};

double vertex_distance(const Curve& a, std::size_t i, const Curve& b, std::size_t j);
double discrete_frechet(const Curve& a, const Curve& b);

}  // namespace pdc
