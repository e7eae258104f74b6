// geometry.hpp
#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace sftlab {

inline constexpr int kMaxDim = 3;

// Unused trailing coordinates stay 0, so std::array's operator< is the lex order.
using Point = std::array<int, kMaxDim>;

void check_dim(int d);

// l-infinity distance over the first d coordinates.
int chebyshev(const Point& a, const Point& b, int d);

Point make_point(std::initializer_list<int> coords);
std::string to_string(const Point& p, int d);

// origin + [0, side)^d. The origin is the lex-minimal point m(S).
struct Cube {
    Point origin{};
    int side = 1;

    bool contains(const Point& p, int d) const;
    bool operator==(const Cube&) const = default;
    auto operator<=>(const Cube&) const = default;
};

// Face F_k(I, s) of F_k = [1,k]^d. `restricted` holds 0-based axes in
// increasing order; anchor[t] in {1, k} is s(restricted[t]).
struct Face {
    int k = 1;
    int d = 1;
    std::vector<int> restricted;
    std::vector<int> anchor;

    int dim() const { return d - static_cast<int>(restricted.size()); }
    bool is_restricted(int axis) const;
    bool contains(const Point& p) const;
    // rho(p, E); for p in F_k this is max over I of |p_i - s(i)|
    int distance(const Point& p) const;
    bool operator==(const Face&) const = default;
};

// Sorted, deduplicated finite subset of Z^d.
class PointSet {
public:
    explicit PointSet(int d = 1) : d_(d) {}
    static PointSet from(int d, std::vector<Point> pts);

    int dim() const { return d_; }
    std::size_t size() const { return pts_.size(); }
    bool empty() const { return pts_.empty(); }
    bool contains(const Point& p) const;
    const std::vector<Point>& points() const { return pts_; }
    auto begin() const { return pts_.begin(); }
    auto end() const { return pts_.end(); }
    bool operator==(const PointSet&) const = default;

private:
    int d_;
    std::vector<Point> pts_;
};

PointSet set_union(const PointSet& a, const PointSet& b);
PointSet set_difference(const PointSet& a, const PointSet& b);
PointSet set_intersection(const PointSet& a, const PointSet& b);

// Calls f for every point of lo + [0, ext_0) x ... x [0, ext_{d-1}), in lex order.
void for_each_in_box(int d, const Point& lo, const Point& extent,
                     const std::function<void(const Point&)>& f);

PointSet cube_points(const Cube& c, int d);
PointSet full_cube(int d, int k); // F_k

std::uint64_t face_count(int d, int l); // 2^(d-l) * C(d,l)
std::vector<Face> faces_of_dim(int k, int d, int l);
PointSet face_points(const Face& e);
PointSet skeleton(int k, int d, int l); // F_{k,l}

// T_n(E). Throws DomainError when k <= 2n.
PointSet thickened_interior(const Face& e, int n);
bool in_thickened_interior(const Face& e, int n, const Point& p);

PointSet boundary(const PointSet& e, int r); // inner boundary
PointSet interior(const PointSet& e, int r);
PointSet thicken(const PointSet& e, int r);

// n-cubes inside E, ordered by m(S).
std::vector<Cube> cubes_in(const PointSet& e, int n);
std::vector<Cube> cubes_in(const Cube& e, int n, int d);

} // namespace sftlab
