// geometry.cpp
#include "sftlab/geometry.hpp"

#include "sftlab/errors.hpp"

#include <algorithm>
#include <cstdlib>

namespace sftlab {

void check_dim(int d) {
    if (d < 1 || d > kMaxDim)
        throw DomainError("dimension must be in [1, 3], got " + std::to_string(d));
}

int chebyshev(const Point& a, const Point& b, int d) {
    int r = 0;
    for (int i = 0; i < d; ++i) r = std::max(r, std::abs(a[i] - b[i]));
    return r;
}

Point make_point(std::initializer_list<int> coords) {
    Point p{};
    int i = 0;
    for (int c : coords) {
        if (i >= kMaxDim) throw DomainError("too many coordinates");
        p[i++] = c;
    }
    return p;
}

std::string to_string(const Point& p, int d) {
    std::string s = "(";
    for (int i = 0; i < d; ++i) {
        if (i) s += ",";
        s += std::to_string(p[i]);
    }
    return s + ")";
}

bool Cube::contains(const Point& p, int d) const {
    for (int i = 0; i < d; ++i)
        if (p[i] < origin[i] || p[i] >= origin[i] + side) return false;
    return true;
}

bool Face::is_restricted(int axis) const {
    return std::find(restricted.begin(), restricted.end(), axis) != restricted.end();
}

bool Face::contains(const Point& p) const {
    for (int i = 0; i < d; ++i)
        if (p[i] < 1 || p[i] > k) return false;
    for (std::size_t t = 0; t < restricted.size(); ++t)
        if (p[restricted[t]] != anchor[t]) return false;
    return true;
}

int Face::distance(const Point& p) const {
    int r = 0;
    for (int i = 0; i < d; ++i) {
        if (p[i] < 1) r = std::max(r, 1 - p[i]);
        if (p[i] > k) r = std::max(r, p[i] - k);
    }
    for (std::size_t t = 0; t < restricted.size(); ++t)
        r = std::max(r, std::abs(p[restricted[t]] - anchor[t]));
    return r;
}

PointSet PointSet::from(int d, std::vector<Point> pts) {
    check_dim(d);
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    PointSet s(d);
    s.pts_ = std::move(pts);
    return s;
}

bool PointSet::contains(const Point& p) const {
    return std::binary_search(pts_.begin(), pts_.end(), p);
}

PointSet set_union(const PointSet& a, const PointSet& b) {
    std::vector<Point> out;
    out.reserve(a.size() + b.size());
    std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return PointSet::from(a.dim(), std::move(out));
}

PointSet set_difference(const PointSet& a, const PointSet& b) {
    std::vector<Point> out;
    std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return PointSet::from(a.dim(), std::move(out));
}

PointSet set_intersection(const PointSet& a, const PointSet& b) {
    std::vector<Point> out;
    std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return PointSet::from(a.dim(), std::move(out));
}

void for_each_in_box(int d, const Point& lo, const Point& extent,
                     const std::function<void(const Point&)>& f) {
    for (int i = 0; i < d; ++i)
        if (extent[i] <= 0) return;
    Point p = lo;
    while (true) {
        f(p);
        int i = d - 1;
        while (i >= 0) {
            if (++p[i] < lo[i] + extent[i]) break;
            p[i] = lo[i];
            --i;
        }
        if (i < 0) return;
    }
}

PointSet cube_points(const Cube& c, int d) {
    std::vector<Point> pts;
    Point ext{};
    for (int i = 0; i < d; ++i) ext[i] = c.side;
    for_each_in_box(d, c.origin, ext, [&](const Point& p) { pts.push_back(p); });
    return PointSet::from(d, std::move(pts));
}

PointSet full_cube(int d, int k) {
    Point one{};
    for (int i = 0; i < d; ++i) one[i] = 1;
    return cube_points(Cube{one, k}, d);
}

std::uint64_t face_count(int d, int l) {
    if (l < 0 || l > d) return 0;
    std::uint64_t binom = 1;
    for (int i = 1; i <= l; ++i) binom = binom * (d - l + i) / i;
    return (std::uint64_t{1} << (d - l)) * binom;
}

std::vector<Face> faces_of_dim(int k, int d, int l) {
    check_dim(d);
    if (l < 0 || l > d)
        throw DomainError("face dimension " + std::to_string(l) + " outside [0, " +
                          std::to_string(d) + "]");
    int m = d - l;
    std::vector<Face> out;
    // combinations of axes in increasing lex order
    std::vector<int> axes(m);
    for (int i = 0; i < m; ++i) axes[i] = i;
    while (true) {
        for (unsigned mask = 0; mask < (1u << m); ++mask) {
            Face f{k, d, axes, std::vector<int>(m)};
            // first restricted axis varies slowest; 1 before k
            for (int t = 0; t < m; ++t) f.anchor[t] = (mask >> (m - 1 - t)) & 1u ? k : 1;
            out.push_back(std::move(f));
        }
        int i = m - 1;
        while (i >= 0 && axes[i] == d - m + i) --i;
        if (i < 0) break;
        ++axes[i];
        for (int t = i + 1; t < m; ++t) axes[t] = axes[t - 1] + 1;
    }
    return out;
}

PointSet face_points(const Face& e) {
    Point lo{}, ext{};
    for (int i = 0; i < e.d; ++i) {
        lo[i] = 1;
        ext[i] = e.k;
    }
    for (std::size_t t = 0; t < e.restricted.size(); ++t) {
        lo[e.restricted[t]] = e.anchor[t];
        ext[e.restricted[t]] = 1;
    }
    std::vector<Point> pts;
    for_each_in_box(e.d, lo, ext, [&](const Point& p) { pts.push_back(p); });
    return PointSet::from(e.d, std::move(pts));
}

PointSet skeleton(int k, int d, int l) {
    PointSet s(d);
    for (const auto& f : faces_of_dim(k, d, l)) s = set_union(s, face_points(f));
    return s;
}

bool in_thickened_interior(const Face& e, int n, const Point& p) {
    for (int i = 0; i < e.d; ++i) {
        if (p[i] < 1 || p[i] > e.k) return false;
        if (!e.is_restricted(i) && (p[i] < n + 1 || p[i] > e.k - n)) return false;
    }
    for (std::size_t t = 0; t < e.restricted.size(); ++t)
        if (std::abs(e.anchor[t] - p[e.restricted[t]]) > n) return false;
    return true;
}

PointSet thickened_interior(const Face& e, int n) {
    if (e.k <= 2 * n)
        throw DomainError("thickened interior needs k > 2n (k=" + std::to_string(e.k) +
                          ", n=" + std::to_string(n) + ")");
    Point lo{}, ext{};
    for (int i = 0; i < e.d; ++i) {
        lo[i] = n + 1;
        ext[i] = e.k - 2 * n;
    }
    for (std::size_t t = 0; t < e.restricted.size(); ++t) {
        int a = e.restricted[t];
        lo[a] = e.anchor[t] == 1 ? 1 : e.k - n;
        ext[a] = n + 1;
    }
    std::vector<Point> pts;
    for_each_in_box(e.d, lo, ext, [&](const Point& p) { pts.push_back(p); });
    return PointSet::from(e.d, std::move(pts));
}

namespace {

bool ball_inside(const PointSet& e, const Point& x, int r) {
    int d = e.dim();
    Point lo{}, ext{};
    for (int i = 0; i < d; ++i) {
        lo[i] = x[i] - r;
        ext[i] = 2 * r + 1;
    }
    bool inside = true;
    // early exit is not available through for_each_in_box; sets are desk scale
    for_each_in_box(d, lo, ext, [&](const Point& y) {
        if (inside && !e.contains(y)) inside = false;
    });
    return inside;
}

} // namespace

PointSet interior(const PointSet& e, int r) {
    std::vector<Point> pts;
    for (const auto& x : e)
        if (ball_inside(e, x, r)) pts.push_back(x);
    return PointSet::from(e.dim(), std::move(pts));
}

PointSet boundary(const PointSet& e, int r) {
    return set_difference(e, interior(e, r));
}

PointSet thicken(const PointSet& e, int r) {
    int d = e.dim();
    std::vector<Point> pts;
    Point ext{};
    for (int i = 0; i < d; ++i) ext[i] = 2 * r + 1;
    for (const auto& x : e) {
        Point lo{};
        for (int i = 0; i < d; ++i) lo[i] = x[i] - r;
        for_each_in_box(d, lo, ext, [&](const Point& y) { pts.push_back(y); });
    }
    return PointSet::from(d, std::move(pts));
}

std::vector<Cube> cubes_in(const PointSet& e, int n) {
    if (n < 1) throw DomainError("cube side must be >= 1");
    std::vector<Cube> out;
    int d = e.dim();
    Point ext{};
    for (int i = 0; i < d; ++i) ext[i] = n;
    for (const auto& m : e) {
        bool ok = true;
        for (int i = 0; i < d && ok; ++i) {
            Point far = m;
            far[i] += n - 1;
            ok = e.contains(far);
        }
        if (!ok) continue;
        for_each_in_box(d, m, ext, [&](const Point& y) {
            if (ok && !e.contains(y)) ok = false;
        });
        if (ok) out.push_back(Cube{m, n});
    }
    return out; // points are visited in lex order
}

std::vector<Cube> cubes_in(const Cube& e, int n, int d) {
    if (n < 1) throw DomainError("cube side must be >= 1");
    std::vector<Cube> out;
    Point ext{};
    for (int i = 0; i < d; ++i) ext[i] = e.side - n + 1;
    for_each_in_box(d, e.origin, ext, [&](const Point& m) { out.push_back(Cube{m, n}); });
    return out;
}

} // namespace sftlab
