#include "sftlab/errors.hpp"
#include "sftlab/geometry.hpp"

#include <doctest.h>

#include <map>

using namespace sftlab;

TEST_CASE("face counts match 2^(d-l) C(d,l)") {
    for (int d = 1; d <= 3; ++d)
        for (int l = 0; l <= d; ++l) CHECK(faces_of_dim(7, d, l).size() == face_count(d, l));
    CHECK(face_count(2, 1) == 4);
    CHECK(face_count(3, 0) == 8);
    CHECK(face_count(3, 2) == 6);
}

TEST_CASE("faces are listed by axis combination, anchor 1 first") {
    auto f = faces_of_dim(5, 2, 1);
    REQUIRE(f.size() == 4);
    CHECK(f[0].restricted == std::vector<int>{0});
    CHECK(f[0].anchor == std::vector<int>{1});
    CHECK(f[1].anchor == std::vector<int>{5});
    CHECK(f[2].restricted == std::vector<int>{1});
}

TEST_CASE("face points and skeletons") {
    Face e{6, 2, {0}, {6}};
    auto pts = face_points(e);
    CHECK(pts.size() == 6);
    for (const auto& p : pts) CHECK(p[0] == 6);
    CHECK(skeleton(6, 2, 0).size() == 4);
    CHECK(skeleton(6, 2, 1).size() == 20); // perimeter of a 6x6 square
    CHECK(skeleton(6, 2, 2).size() == 36);
    CHECK(skeleton(4, 3, 1).size() == 8 + 12 * 2);
}

// |s(i) - p_i| <= n spans n+1 layers, so layers n+1 and k-n sit in two sets each.
TEST_CASE("thickened interiors cover F_k with overlap only on the seam layers") {
    for (int d = 1; d <= 3; ++d) {
        int k = d == 3 ? 7 : 9, n = 2;
        std::map<Point, int> hits;
        for (int l = 0; l <= d; ++l)
            for (const auto& f : faces_of_dim(k, d, l))
                for (const auto& p : thickened_interior(f, n)) {
                    ++hits[p];
                    CHECK(in_thickened_interior(f, n, p));
                }
        CHECK(hits.size() == full_cube(d, k).size());
        for (const auto& [p, c] : hits) {
            int expect = 1;
            for (int i = 0; i < d; ++i) expect *= 1 + (p[i] == n + 1) + (p[i] == k - n);
            CHECK(c == expect);
        }
    }
    CHECK_THROWS_AS(thickened_interior(Face{4, 2, {}, {}}, 2), DomainError);
}

TEST_CASE("interior, boundary, thickening of a cube") {
    auto f = full_cube(2, 8);
    auto in = interior(f, 2);
    CHECK(in.size() == 16);
    CHECK(in.contains(make_point({3, 3})));
    CHECK(!in.contains(make_point({2, 5})));
    auto bd = boundary(f, 2);
    CHECK(bd.size() == 64 - 16);
    CHECK(set_union(in, bd) == f);
    CHECK(set_intersection(in, bd).empty());
    auto t = thicken(cube_points(Cube{make_point({0, 0}), 1}, 2), 1);
    CHECK(t.size() == 9);
}

TEST_CASE("cubes inside shapes are listed in lex order") {
    auto c = cubes_in(full_cube(2, 5), 3);
    CHECK(c.size() == 9);
    CHECK(std::is_sorted(c.begin(), c.end()));
    CHECK(c.front().origin == make_point({1, 1}));
    auto c2 = cubes_in(Cube{make_point({1, 1}), 5}, 3, 2);
    CHECK(c2 == c);
    // an L-shape hosts fewer cubes
    auto l = set_difference(full_cube(2, 4), cube_points(Cube{make_point({3, 3}), 2}, 2));
    CHECK(cubes_in(l, 2).size() == 5);
}

TEST_CASE("chebyshev distance and face distance") {
    CHECK(chebyshev(make_point({1, 5}), make_point({4, 3}), 2) == 3);
    Face corner{10, 2, {0, 1}, {1, 10}};
    CHECK(corner.distance(make_point({3, 6})) == 4);
    CHECK(corner.contains(make_point({1, 10})));
    CHECK_THROWS_AS(check_dim(4), DomainError);
}
