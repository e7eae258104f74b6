// repeatcover.cpp
#include "sftlab/repeatcover.hpp"

#include "sftlab/errors.hpp"

#include <boost/multiprecision/cpp_int.hpp>

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <set>

namespace sftlab {

namespace {

using boost::multiprecision::cpp_int;

// Dense flags over F_k = [1,k]^d.
class Grid {
public:
    Grid(int d, int k) : d_(d), k_(k) {
        std::size_t n = 1;
        for (int i = 0; i < d; ++i) n *= static_cast<std::size_t>(k);
        v_.assign(n, 0);
    }
    bool inside(const Point& p) const {
        for (int i = 0; i < d_; ++i)
            if (p[i] < 1 || p[i] > k_) return false;
        return true;
    }
    std::size_t index(const Point& p) const {
        std::size_t idx = 0;
        for (int i = 0; i < d_; ++i) idx = idx * static_cast<std::size_t>(k_) + static_cast<std::size_t>(p[i] - 1);
        return idx;
    }
    bool get(const Point& p) const { return inside(p) && v_[index(p)]; }
    void set(const Point& p) { v_[index(p)] = 1; }
    void add_cube(const Cube& c) {
        Point ext{};
        for (int i = 0; i < d_; ++i) ext[i] = c.side;
        for_each_in_box(d_, c.origin, ext, [&](const Point& p) {
            if (inside(p)) set(p);
        });
    }
    std::size_t count() const { return static_cast<std::size_t>(std::count(v_.begin(), v_.end(), 1)); }
    int dim() const { return d_; }
    int side() const { return k_; }

private:
    int d_, k_;
    std::vector<char> v_;
};

void for_each_fk(int d, int k, const std::function<void(const Point&)>& f) {
    Point lo{}, ext{};
    for (int i = 0; i < d; ++i) {
        lo[i] = 1;
        ext[i] = k;
    }
    for_each_in_box(d, lo, ext, f);
}

int fk_side(const Pattern& u) {
    auto b = u.box();
    if (!b) throw DomainError("expected a pattern on F_k");
    for (int i = 0; i < u.dim(); ++i)
        if (b->origin[i] != 1) throw DomainError("expected a pattern on F_k = [1,k]^d");
    return b->side;
}

cpp_int ipow(cpp_int b, int e) {
    cpp_int r = 1;
    for (int i = 0; i < e; ++i) r *= b;
    return r;
}

std::int64_t ipow64(std::int64_t b, int e) {
    std::int64_t r = 1;
    for (int i = 0; i < e; ++i) r *= b;
    return r;
}

bool is_necessary_grid(const Grid& t, const Face& e, const Point& p) {
    if (!t.get(p)) return false;
    for (std::size_t x = 0; x < e.restricted.size(); ++x) {
        int i = e.restricted[x], a = e.anchor[x];
        int step = a < p[i] ? -1 : 1;
        Point q = p;
        while (q[i] != a) {
            q[i] += step;
            if (t.get(q)) return false;
        }
    }
    return true;
}

std::vector<Point> necessary_grid(const Grid& t, int d, int k, int n, int l, int r) {
    if (!(n < k)) throw DomainError("necessary points need n < k");
    if (r < 1 || r >= n) throw DomainError("necessary points need 1 <= r < n");
    if (l < 0 || l > d - 1) throw DomainError("necessary points need 0 <= l <= d-1");
    auto faces = faces_of_dim(k, d, l);
    std::vector<Point> out;
    for_each_fk(d, k, [&](const Point& p) {
        int dist = skeleton_distance(p, d, k, l);
        if (dist <= r || dist > n || !t.get(p)) return;
        for (const auto& f : faces)
            if (is_necessary_grid(t, f, p)) {
                out.push_back(p);
                return;
            }
    });
    return out;
}

} // namespace

// ---------------------------------------------------------------- repeats

std::vector<Repeat> find_repeats(const Pattern& u, int n) {
    auto wc = window_classes(u, n);
    std::vector<Repeat> out;
    for (std::size_t i = 0; i < wc.cubes.size(); ++i) {
        auto f = static_cast<std::size_t>(wc.first[static_cast<std::size_t>(wc.cls[i])]);
        if (f != i) out.push_back({wc.cubes[f], wc.cubes[i]});
    }
    return out;
}

RepeatCover full_cover(const Pattern& u, int n) { return {n, u.shape(), find_repeats(u, n)}; }

PointSet covered_area(const std::vector<Repeat>& rs, int d) {
    std::vector<Point> pts;
    for (const auto& r : rs) {
        auto c = cube_points(r.s2, d);
        pts.insert(pts.end(), c.begin(), c.end());
    }
    return PointSet::from(d, std::move(pts));
}

PointSet covered_area(const RepeatCover& j) { return covered_area(j.repeats, j.host.dim()); }

bool is_repeat_cover(const Pattern& u, const RepeatCover& j) {
    auto all = find_repeats(u, j.n);
    std::map<Cube, Cube> by_s2;
    for (const auto& r : all) by_s2.emplace(r.s2, r.s1);
    for (const auto& r : j.repeats) {
        auto it = by_s2.find(r.s2);
        if (it == by_s2.end() || it->second != r.s1) return false;
    }
    auto area = covered_area(j);
    for (const auto& r : all)
        for (const auto& p : cube_points(r.s2, u.dim()))
            if (!area.contains(p)) return false;
    return true;
}

std::optional<Pattern> reconstruct(const RepeatCover& j, const Pattern& w) {
    const int d = j.host.dim();
    for (const auto& r : j.repeats)
        for (const auto* c : {&r.s1, &r.s2})
            for (const auto& p : cube_points(*c, d))
                if (!j.host.contains(p)) throw DomainError("repeat cube " + to_string(c->origin, d) + " leaves the host shape");
    auto area = covered_area(j);
    const auto& pts = j.host.points();
    std::vector<Symbol> vals(pts.size(), 0);
    for (std::size_t i = 0; i < pts.size(); ++i) {
        const Point& t = pts[i];
        if (!area.contains(t)) {
            if (!w.has(t)) return std::nullopt;
            vals[i] = w.at(t);
            continue;
        }
        for (const auto& r : j.repeats) {
            if (!r.s2.contains(t, d)) continue;
            Point src = t;
            for (int x = 0; x < d; ++x) src[x] -= r.s2.origin[x] - r.s1.origin[x];
            auto it = std::lower_bound(pts.begin(), pts.end(), src);
            if (it == pts.end() || *it != src || !(src < t)) return std::nullopt;
            vals[i] = vals[static_cast<std::size_t>(it - pts.begin())];
            break;
        }
    }
    Pattern u(j.host, std::move(vals));
    for (const auto& p : w.shape())
        if (j.host.contains(p) && !area.contains(p) && u.at(p) != w.at(p)) return std::nullopt;
    if (!is_repeat_cover(u, j)) return std::nullopt;
    return u;
}

// ---------------------------------------------------------------- near a face

std::vector<std::size_t> interval_cover(const std::vector<std::pair<int, int>>& iv) {
    std::vector<std::size_t> order(iv.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        if (iv[a].first != iv[b].first) return iv[a].first < iv[b].first;
        if (iv[a].second != iv[b].second) return iv[a].second > iv[b].second;
        return a < b;
    });
    std::vector<std::size_t> kept;
    std::size_t i = 0;
    while (i < order.size()) {
        long reach = long(iv[order[i]].first) - 1;
        while (true) {
            std::optional<std::size_t> best;
            while (i < order.size() && iv[order[i]].first <= reach + 1) {
                if (!best || iv[order[i]].second > iv[*best].second) best = order[i];
                ++i;
            }
            if (!best || iv[*best].second <= reach) break;
            kept.push_back(*best);
            reach = iv[*best].second;
        }
    }
    std::sort(kept.begin(), kept.end());
    return kept;
}

NearFaceCover cover_near_face(const Face& e, int n, const std::vector<Cube>& c, int radius) {
    if (e.dim() < 1) throw DomainError("cover_near_face needs a face of dimension >= 1");
    if (radius < 0) radius = n;
    const int d = e.d, k = e.k;
    NearFaceCover out;
    for (int i = 0; i < d; ++i)
        if (!e.is_restricted(i)) {
            out.axis = i;
            break;
        }
    for (int i = 0; i < kMaxDim; ++i) out.permutation[i] = i;
    std::swap(out.permutation[0], out.permutation[out.axis]);

    // segment of each cube: through its corner nearest the face, along the free axis
    std::map<Point, std::vector<std::size_t>> lines;
    std::set<std::pair<Point, int>> seen;
    Grid u(d, k);
    for (std::size_t idx = 0; idx < c.size(); ++idx) {
        const Cube& s = c[idx];
        Point q = s.origin;
        bool meets = true;
        for (std::size_t x = 0; x < e.restricted.size(); ++x) {
            int i = e.restricted[x];
            if (e.anchor[x] == 1) {
                if (s.origin[i] > 1 + radius) meets = false;
            } else {
                q[i] = s.origin[i] + n - 1;
                if (q[i] < k - radius) meets = false;
            }
        }
        if (!meets) continue;
        Point key = q;
        key[out.axis] = 0;
        if (!seen.insert({key, q[out.axis]}).second) continue;
        lines[key].push_back(idx);
        Point ext{};
        for (int i = 0; i < d; ++i) ext[i] = n;
        for_each_in_box(d, s.origin, ext, [&](const Point& p) {
            if (u.inside(p) && e.distance(p) <= radius) u.set(p);
        });
    }
    for (const auto& [key, members] : lines) {
        std::vector<std::pair<int, int>> iv;
        for (auto idx : members) iv.push_back({c[idx].origin[out.axis], c[idx].origin[out.axis] + n - 1});
        for (auto t : interval_cover(iv)) out.kept.push_back(members[t]);
    }
    std::sort(out.kept.begin(), out.kept.end());
    out.covered = u.count();
    return out;
}

// ---------------------------------------------------------------- necessary points

int skeleton_distance(const Point& p, int d, int k, int l) {
    if (l >= d) return 0;
    std::array<int, kMaxDim> delta{};
    for (int i = 0; i < d; ++i) delta[i] = std::min(p[i] - 1, k - p[i]);
    std::sort(delta.begin(), delta.begin() + d);
    return delta[static_cast<std::size_t>(d - l - 1)];
}

bool is_necessary(const PointSet& t, const Face& e, const Point& p) {
    Grid g(e.d, e.k);
    for (const auto& q : t)
        if (g.inside(q)) g.set(q);
    return is_necessary_grid(g, e, p);
}

PointSet necessary_points(const PointSet& t, int d, int k, int n, int l, int r) {
    Grid g(d, k);
    for (const auto& q : t)
        if (g.inside(q)) g.set(q);
    return PointSet::from(d, necessary_grid(g, d, k, n, l, r));
}

// ---------------------------------------------------------------- interiors

std::vector<Point> interior_net(const Cube& f, int d0, int n) {
    check_dim(d0);
    const int R = n / 3, gap = 2 * R + 1;
    std::array<std::vector<int>, kMaxDim> axes;
    for (int i = 0; i < d0; ++i) {
        int a = f.origin[i] + n, b = f.origin[i] + f.side - 1 - n;
        if (a > b) return {};
        if (2 * gap <= n)
            throw PreconditionError("no n/2-separated net with n/3 coverage exists for n = " + std::to_string(n));
        int len = b - a + 1;
        int m = (len + gap - 1) / gap;
        bool found = false;
        for (int s = 0; s <= R && !found; ++s) {
            int last = a + s + (m - 1) * gap;
            if (last <= b && last >= b - R) {
                for (int t = 0; t < m; ++t) axes[i].push_back(a + s + t * gap);
                found = true;
            }
        }
        if (!found) throw std::logic_error("interior net shift search failed");
    }
    std::vector<Point> out;
    Point ext{};
    for (int i = 0; i < d0; ++i) ext[i] = static_cast<int>(axes[i].size());
    for_each_in_box(d0, Point{}, ext, [&](const Point& ix) {
        Point p{};
        for (int i = 0; i < d0; ++i) p[i] = axes[i][static_cast<std::size_t>(ix[i])];
        out.push_back(p);
    });
    return out;
}

std::vector<std::size_t> cover_interior(const Cube& f, int d0, int n, const std::vector<Cube>& c) {
    check_dim(d0);
    std::map<Point, std::size_t> first;
    for (std::size_t i = 0; i < c.size(); ++i) first.emplace(c[i].origin, i);
    // least index of a cube whose centre is within n/6 of p: |6p - 6m - 3(n-1)| <= n
    auto near = [&](const Point& p) -> std::optional<std::size_t> {
        Point lo{}, ext{};
        for (int i = 0; i < d0; ++i) {
            int base = 6 * p[i] - 3 * (n - 1);
            int mlo = (int)std::ceil(double(base - n) / 6.0), mhi = (int)std::floor(double(base + n) / 6.0);
            if (mhi < mlo) return std::nullopt;
            lo[i] = mlo;
            ext[i] = mhi - mlo + 1;
        }
        std::optional<std::size_t> best;
        for_each_in_box(d0, lo, ext, [&](const Point& m) {
            auto it = first.find(m);
            if (it != first.end() && (!best || it->second < *best)) best = it->second;
        });
        return best;
    };
    Point lo{}, ext{};
    bool empty = false;
    for (int i = 0; i < d0; ++i) {
        lo[i] = f.origin[i] + n;
        ext[i] = f.side - 2 * n;
        if (ext[i] <= 0) empty = true;
    }
    if (empty) return {};
    for_each_in_box(d0, lo, ext, [&](const Point& p) {
        if (!near(p)) throw PreconditionError("no cube centre within n/6 of interior point " + to_string(p, d0));
    });
    std::vector<std::size_t> out;
    for (const auto& p : interior_net(f, d0, n)) out.push_back(*near(p));
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

// ---------------------------------------------------------------- three pieces

EfficientCover efficient_cover(const Pattern& u, int n, int r, int ell) {
    const int d = u.dim();
    const int k = fk_side(u);
    if (r < 1 || r >= n) throw DomainError("efficient_cover needs 1 <= r < n");
    if (ell < 1 || ell > d - 1) throw DomainError("efficient_cover needs 1 <= l <= d-1");
    if (k <= n) throw DomainError("efficient_cover needs k > n");
    const int j = window_count(u, n);
    if (!(ipow(3, d) * j < ipow(n, ell + 1)))
        throw DomainError("efficient_cover needs |W_n(u)| < n^(l+1)/3^d");

    auto all = find_repeats(u, n);
    std::vector<Cube> s2;
    std::map<Point, std::size_t> by_origin;
    for (std::size_t i = 0; i < all.size(); ++i) {
        s2.push_back(all[i].s2);
        by_origin.emplace(all[i].s2.origin, i);
    }
    Grid t(d, k);
    for (const auto& c : s2) t.add_cube(c);

    ThreePieceReport rep;
    rep.k = k;
    rep.n = n;
    rep.r = r;
    rep.ell = ell;
    rep.j = j;
    std::vector<char> sel(all.size(), 0);
    auto take = [&](const std::vector<std::size_t>& idx) {
        std::size_t fresh = 0;
        for (auto i : idx)
            if (!sel[i]) {
                sel[i] = 1;
                ++fresh;
            }
        return fresh;
    };

    // near the l-skeleton
    for (const auto& f : faces_of_dim(k, d, ell)) rep.j1 += take(cover_near_face(f, n, s2, r).kept);

    // band between r and n: one repeat per necessary point
    auto nec = necessary_grid(t, d, k, n, ell, r);
    rep.necessary = nec.size();
    for (const auto& p : nec) {
        Point lo{}, ext{};
        for (int i = 0; i < d; ++i) {
            lo[i] = p[i] - n + 1;
            ext[i] = n;
        }
        std::optional<std::size_t> best;
        for_each_in_box(d, lo, ext, [&](const Point& m) {
            auto it = by_origin.find(m);
            if (it != by_origin.end() && (!best || it->second < *best)) best = it->second;
        });
        if (best) rep.j2 += take({*best});
    }

    // interiors of faces of dimension > l
    for (int d0 = ell + 1; d0 <= d; ++d0) {
        for (const auto& f : faces_of_dim(k, d, d0)) {
            std::vector<int> free;
            for (int i = 0; i < d; ++i)
                if (!f.is_restricted(i)) free.push_back(i);
            std::vector<Cube> proj;
            std::vector<std::size_t> owner;
            for (std::size_t i = 0; i < all.size(); ++i) {
                const Cube& c = s2[i];
                bool touches = true;
                for (std::size_t x = 0; x < f.restricted.size(); ++x) {
                    int ax = f.restricted[x];
                    int want = f.anchor[x] == 1 ? 1 : k - n + 1;
                    if (c.origin[ax] != want) touches = false;
                }
                if (!touches) continue;
                Cube pc{Point{}, n};
                for (std::size_t x = 0; x < free.size(); ++x) pc.origin[x] = c.origin[free[x]];
                proj.push_back(pc);
                owner.push_back(i);
            }
            Cube fc{Point{}, k};
            for (int x = 0; x < d0; ++x) fc.origin[x] = 1;
            try {
                std::vector<std::size_t> chosen;
                for (auto q : cover_interior(fc, d0, n, proj)) chosen.push_back(owner[q]);
                rep.j3 += take(chosen);
            } catch (const PreconditionError&) {
                ++rep.interior_fallbacks;
            }
        }
    }

    // restore A(J) = A(J') where the region arguments leave gaps
    Grid a(d, k);
    for (std::size_t i = 0; i < all.size(); ++i)
        if (sel[i]) a.add_cube(s2[i]);
    for_each_fk(d, k, [&](const Point& p) {
        if (!t.get(p) || a.get(p)) return;
        Point lo{}, ext{};
        for (int i = 0; i < d; ++i) {
            lo[i] = p[i] - n + 1;
            ext[i] = n;
        }
        std::optional<std::size_t> best;
        for_each_in_box(d, lo, ext, [&](const Point& m) {
            auto it = by_origin.find(m);
            if (it != by_origin.end() && (!best || it->second < *best)) best = it->second;
        });
        sel[*best] = 1;
        a.add_cube(s2[*best]);
        ++rep.repairs;
    });

    EfficientCover out;
    out.cover.n = n;
    out.cover.host = u.shape();
    for (std::size_t i = 0; i < all.size(); ++i)
        if (sel[i]) out.cover.repeats.push_back(all[i]);
    rep.area = a.count();

    const std::int64_t size = static_cast<std::int64_t>(out.cover.repeats.size());
    const double kd = std::pow(double(k), d);
    rep.term1 = 2.0 * double(face_count(d, ell)) * std::pow(double(k), ell) * std::pow(double(r), d - ell) / n;
    rep.term2 = double(d) * (kd - double(rep.area)) / r;
    rep.term3 = 0;
    for (int d0 = ell + 1; d0 <= d; ++d0) rep.term3 += double(face_count(d, d0)) * std::pow(2.0 * k / n, d0);
    // scaled by n^d r
    cpp_int lhs = cpp_int(size) * ipow(n, d) * r;
    cpp_int rhs = 2 * cpp_int(face_count(d, ell)) * ipow(k, ell) * ipow(r, d - ell + 1) * ipow(n, d - 1);
    rhs += cpp_int(d) * (ipow(k, d) - cpp_int(rep.area)) * ipow(n, d);
    for (int d0 = ell + 1; d0 <= d; ++d0) rhs += cpp_int(face_count(d, d0)) * ipow(2 * k, d0) * ipow(n, d - d0) * r;
    rep.bound_holds = lhs <= rhs;
    out.report = rep;
    return out;
}

AsymptoticCover asymptotic_cover(const Pattern& u, int n, double tau) {
    const int d = u.dim();
    const int k = fk_side(u);
    if (!(tau > 0) || !(tau < 1)) throw DomainError("tau must lie in (0,1)");
    int r = static_cast<int>(std::ceil(std::pow(double(n), tau) - 1e-9));
    if (k != n * r)
        throw DomainError("asymptotic_cover needs k = n*ceil(n^tau) = " + std::to_string(n * r) + ", got " +
                          std::to_string(k));
    AsymptoticCover out;
    out.r = r;
    out.j = window_count(u, n);
    const std::int64_t j = out.j;
    if (ipow64(5, d) * j < n || j > ipow64(k - n + 1, d))
        throw DomainError("j = " + std::to_string(j) + " outside [n/5^d, (k-n+1)^d]");
    int ell = 0;
    if (ipow64(3, d) * j < ipow64(n, d))
        for (int l = 1; l <= d - 1; ++l)
            if (ipow64(n, l) <= ipow64(5, d) * j && ipow64(3, d) * j < ipow64(n, l + 1)) {
                ell = l;
                break;
            }
    if (ell == 0 || r >= n) {
        auto all = find_repeats(u, n);
        std::vector<Cube> s2;
        for (const auto& rp : all) s2.push_back(rp.s2);
        Face whole{k, d, {}, {}};
        auto nc = cover_near_face(whole, n, s2);
        out.cover.n = n;
        out.cover.host = u.shape();
        for (auto i : nc.kept) out.cover.repeats.push_back(all[i]);
        out.full_cube = true;
    } else {
        auto ec = efficient_cover(u, n, r, ell);
        out.cover = std::move(ec.cover);
        out.report = ec.report;
        out.ell = ell;
    }
    out.ratio = double(out.cover.repeats.size()) * std::log(double(n)) / double(out.j);
    return out;
}

bool nuggets_bound_check(const Pattern& u, int n, const RepeatCover& jc) {
    const int d = u.dim();
    const int k = fk_side(u);
    if (k <= (2 * d + 1) * n) throw DomainError("uncovered area bound needs k > (2d+1)n");
    const std::int64_t j = window_count(u, n);
    const std::int64_t area = static_cast<std::int64_t>(covered_area(jc).size());
    cpp_int lhs = (ipow(k, d) - area) * k;
    cpp_int rhs = cpp_int(j) * (k + 4 * d * n);
    return lhs <= rhs;
}

} // namespace sftlab
