#include "pdclust/frechet.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <set>

namespace pdc {

double vertex_distance(const Curve& a, std::size_t i, const Curve& b, std::size_t j) {
    const double* p = a.vertex(i);
    const double* q = b.vertex(j);
    if (a.dim == 1) return std::abs(p[0] - q[0]);
    double s = 0;
    for (int c = 0; c < a.dim; ++c) {
        double d = p[c] - q[c];
        s += d * d;
    }
    return std::sqrt(s);
}

double discrete_frechet(const Curve& a, const Curve& b) {
    if (a.dim != b.dim) throw DimensionMismatch("curves differ in dimension");
    std::size_t z = a.size(), l = b.size();
    if (z == 0 || l == 0) throw InvalidArgument("empty curve");
    std::vector<double> prev(l), cur(l);
    for (std::size_t i = 0; i < z; ++i) {
        for (std::size_t j = 0; j < l; ++j) {
            double d = vertex_distance(a, i, b, j);
            double reach;
            if (i == 0 && j == 0)
                reach = 0;
            else if (i == 0)
                reach = cur[j - 1];
            else if (j == 0)
                reach = prev[j];
            else
                reach = std::min({prev[j], cur[j - 1], prev[j - 1]});
            cur[j] = std::max(d, reach);
        }
        std::swap(prev, cur);
    }
    return prev[l - 1];
}

namespace {

using Point = std::vector<double>;

double pdist(const Point& a, const Point& b) {
    double s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) s += (a[i] - b[i]) * (a[i] - b[i]);
    return std::sqrt(s);
}

Ball ball_through(const std::vector<Point>& r) {
    Ball b;
    if (r.empty()) return b;
    std::size_t d = r[0].size();
    if (r.size() == 1) {
        b.center = r[0];
        return b;
    }
    // center = p0 + sum_i lambda_i (p_i - p0), equidistant from all support points
    std::size_t k = r.size() - 1;
    std::vector<Point> v(k, Point(d));
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t c = 0; c < d; ++c) v[i][c] = r[i + 1][c] - r[0][c];
    std::vector<std::vector<double>> a(k, std::vector<double>(k + 1));
    for (std::size_t i = 0; i < k; ++i) {
        for (std::size_t j = 0; j < k; ++j) {
            double s = 0;
            for (std::size_t c = 0; c < d; ++c) s += v[i][c] * v[j][c];
            a[i][j] = 2 * s;
        }
        double s = 0;
        for (std::size_t c = 0; c < d; ++c) s += v[i][c] * v[i][c];
        a[i][k] = s;
    }
    bool singular = false;
    for (std::size_t col = 0; col < k && !singular; ++col) {
        std::size_t piv = col;
        for (std::size_t i = col + 1; i < k; ++i)
            if (std::abs(a[i][col]) > std::abs(a[piv][col])) piv = i;
        if (std::abs(a[piv][col]) < 1e-14) {
            singular = true;
            break;
        }
        std::swap(a[piv], a[col]);
        for (std::size_t i = 0; i < k; ++i) {
            if (i == col) continue;
            double f = a[i][col] / a[col][col];
            for (std::size_t j = col; j <= k; ++j) a[i][j] -= f * a[col][j];
        }
    }
    if (singular) {
        // degenerate support: fall back to the widest pair
        std::size_t bi = 0, bj = 0;
        double best = -1;
        for (std::size_t i = 0; i < r.size(); ++i)
            for (std::size_t j = i + 1; j < r.size(); ++j) {
                double dd = pdist(r[i], r[j]);
                if (dd > best) {
                    best = dd;
                    bi = i;
                    bj = j;
                }
            }
        b.center.resize(d);
        for (std::size_t c = 0; c < d; ++c) b.center[c] = 0.5 * (r[bi][c] + r[bj][c]);
        for (const auto& p : r) b.radius = std::max(b.radius, pdist(b.center, p));
        return b;
    }
    b.center = r[0];
    for (std::size_t i = 0; i < k; ++i) {
        double lam = a[i][k] / a[i][i];
        for (std::size_t c = 0; c < d; ++c) b.center[c] += lam * v[i][c];
    }
    for (const auto& p : r) b.radius = std::max(b.radius, pdist(b.center, p));
    return b;
}

bool inside(const Ball& b, const Point& p) {
    if (b.center.empty()) return false;
    return pdist(b.center, p) <= b.radius * (1 + 1e-12) + 1e-12;
}

Ball welzl(const std::vector<Point>& pts, std::size_t n, std::vector<Point>& support, std::size_t dim) {
    if (n == 0 || support.size() == dim + 1) return ball_through(support);
    const Point& p = pts[n - 1];
    Ball b = welzl(pts, n - 1, support, dim);
    if (inside(b, p)) return b;
    support.push_back(p);
    b = welzl(pts, n - 1, support, dim);
    support.pop_back();
    return b;
}

}  // namespace

Ball min_enclosing_ball(const Curve& c, std::size_t first, std::size_t last) {
    Ball b;
    if (c.dim == 1) {
        double lo = kInf, hi = -kInf;
        for (std::size_t i = first; i <= last; ++i) {
            lo = std::min(lo, c.at(i));
            hi = std::max(hi, c.at(i));
        }
        b.center = {0.5 * (lo + hi)};
        b.radius = 0.5 * (hi - lo);
        return b;
    }
    std::vector<Point> pts;
    for (std::size_t i = first; i <= last; ++i) pts.emplace_back(c.vertex(i), c.vertex(i) + c.dim);
    std::vector<Point> support;
    return welzl(pts, pts.size(), support, static_cast<std::size_t>(c.dim));
}

Simplification min_error_simplification(const Curve& c, int ell) {
    if (ell < 1) throw InvalidArgument("ell must be at least 1");
    std::size_t z = c.size();
    if (z <= static_cast<std::size_t>(ell)) return {c, 0.0};
    std::vector<std::vector<double>> rad(z, std::vector<double>(z, 0.0));
    std::vector<double> radii;
    for (std::size_t i = 0; i < z; ++i)
        for (std::size_t j = i; j < z; ++j) {
            rad[i][j] = min_enclosing_ball(c, i, j).radius;
            radii.push_back(rad[i][j]);
        }
    std::sort(radii.begin(), radii.end());
    radii.erase(std::unique(radii.begin(), radii.end()), radii.end());
    auto windows = [&](double r) {
        std::vector<std::pair<std::size_t, std::size_t>> w;
        std::size_t i = 0;
        while (i < z) {
            std::size_t j = i;
            while (j + 1 < z && rad[i][j + 1] <= r) ++j;
            w.emplace_back(i, j);
            i = j + 1;
        }
        return w;
    };
    std::size_t lo = 0, hi = radii.size() - 1;
    while (lo < hi) {
        std::size_t mid = (lo + hi) / 2;
        if (windows(radii[mid]).size() <= static_cast<std::size_t>(ell))
            hi = mid;
        else
            lo = mid + 1;
    }
    Simplification s;
    s.curve.dim = c.dim;
    for (auto [i, j] : windows(radii[lo])) {
        Ball b = min_enclosing_ball(c, i, j);
        s.curve.push(b.center.data());
    }
    s.error = discrete_frechet(c, s.curve);
    return s;
}

Curve canonical(const Curve& c) {
    Curve out;
    out.dim = c.dim;
    for (std::size_t i = 0; i < c.size(); ++i) {
        if (i > 0 && std::equal(c.vertex(i), c.vertex(i) + c.dim, c.vertex(i - 1))) continue;
        out.push(c.vertex(i));
    }
    return out;
}

Curve pad_to(const Curve& c, int ell) {
    Curve out;
    out.dim = c.dim;
    std::size_t z = c.size();
    for (std::size_t i = z; i < static_cast<std::size_t>(ell); ++i) out.push(c.vertex(0));
    out.coords.insert(out.coords.end(), c.coords.begin(), c.coords.end());
    return out;
}

namespace {

// grid points of width w (anchored at the origin) within radius R of v
std::vector<Point> grid_ball(const double* v, int dim, double w, double R) {
    std::vector<Point> out;
    Point cur(static_cast<std::size_t>(dim));
    std::function<void(int, double)> rec = [&](int c, double acc) {
        if (c == dim) {
            out.push_back(cur);
            return;
        }
        long long lo = static_cast<long long>(std::ceil((v[c] - R) / w - 1e-9));
        long long hi = static_cast<long long>(std::floor((v[c] + R) / w + 1e-9));
        for (long long t = lo; t <= hi; ++t) {
            double g = static_cast<double>(t) * w;
            double dd = (g - v[c]) * (g - v[c]);
            if (acc + dd > R * R * (1 + 1e-9) + 1e-12) continue;
            cur[static_cast<std::size_t>(c)] = g;
            rec(c + 1, acc + dd);
        }
    };
    rec(0, 0.0);
    return out;
}

// nondecreasing index sequences 0 = i_1 <= ... <= i_ell < zp
void for_each_shape(int ell, int zp, const std::function<void(const std::vector<int>&)>& fn) {
    std::vector<int> seq(static_cast<std::size_t>(ell), 0);
    std::function<void(int)> rec = [&](int pos) {
        if (pos == ell) {
            fn(seq);
            return;
        }
        int start = pos == 0 ? 0 : seq[static_cast<std::size_t>(pos - 1)];
        int stop = pos == 0 ? 0 : zp - 1;
        for (int i = start; i <= stop; ++i) {
            seq[static_cast<std::size_t>(pos)] = i;
            rec(pos + 1);
        }
    };
    rec(0);
}

}  // namespace

double candidate_grid_size(const Curve& c, double r, double eps, int ell) {
    Simplification s = min_error_simplification(c, ell);
    if (s.error > 2 * r) return 0;
    double w = eps * r / std::sqrt(static_cast<double>(c.dim));
    std::vector<double> counts;
    for (std::size_t i = 0; i < s.curve.size(); ++i)
        counts.push_back(static_cast<double>(grid_ball(s.curve.vertex(i), c.dim, w, (3 + eps) * r).size()));
    double total = 0;
    for_each_shape(ell, static_cast<int>(s.curve.size()), [&](const std::vector<int>& seq) {
        double p = 1;
        for (int i : seq) p *= counts[static_cast<std::size_t>(i)];
        total += p;
    });
    return total;
}

std::vector<Curve> candidate_grid_single_scale(const Curve& c, double r, double eps, int ell) {
    if (!(r > 0)) throw InvalidArgument("radius must be positive");
    if (!(eps > 0)) throw InvalidArgument("epsilon must be positive");
    Simplification s = min_error_simplification(c, ell);
    if (s.error > 2 * r) return {};
    double w = eps * r / std::sqrt(static_cast<double>(c.dim));
    std::vector<std::vector<Point>> grids;
    for (std::size_t i = 0; i < s.curve.size(); ++i) grids.push_back(grid_ball(s.curve.vertex(i), c.dim, w, (3 + eps) * r));
    std::set<Curve> seen;
    std::vector<Curve> out;
    for_each_shape(ell, static_cast<int>(s.curve.size()), [&](const std::vector<int>& seq) {
        std::vector<std::size_t> pick(seq.size(), 0);
        while (true) {
            Curve cand;
            cand.dim = c.dim;
            for (std::size_t j = 0; j < seq.size(); ++j) cand.push(grids[static_cast<std::size_t>(seq[j])][pick[j]].data());
            if (seen.insert(cand).second) out.push_back(cand);
            std::size_t j = seq.size();
            while (j > 0) {
                --j;
                if (++pick[j] < grids[static_cast<std::size_t>(seq[j])].size()) break;
                pick[j] = 0;
                if (j == 0) return;
            }
            if (seq.empty()) return;
        }
    });
    return out;
}

}  // namespace pdc
