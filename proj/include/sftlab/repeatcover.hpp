// repeatcover.hpp
#pragma once

#include "sftlab/geometry.hpp"
#include "sftlab/patterns.hpp"

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

namespace sftlab {

// (S1, S2): equal subpatterns, S1 the lex-minimal appearance, S1 != S2.
struct Repeat {
    Cube s1;
    Cube s2;
    bool operator==(const Repeat&) const = default;
};

struct RepeatCover {
    int n = 1;
    PointSet host;
    std::vector<Repeat> repeats; // sorted by (m(S2), m(S1))
};

// Every repeat of u, ordered by (m(S2), m(S1)). This list is itself a cover.
std::vector<Repeat> find_repeats(const Pattern& u, int n);
RepeatCover full_cover(const Pattern& u, int n);

// A(J): union of the second cubes.
PointSet covered_area(const RepeatCover& j);
PointSet covered_area(const std::vector<Repeat>& rs, int d);

// Every member is a repeat of u and every repeat's S2 lies in A(J).
bool is_repeat_cover(const Pattern& u, const RepeatCover& j);

// Rebuilds u from J and u on host \ A(J) by lex induction u_t = u_{t-p}.
// nullopt when no pattern is consistent with (J, w).
std::optional<Pattern> reconstruct(const RepeatCover& j, const Pattern& w);

// Indices of a sub-family with the same union and every point in at most two
// of them. Intervals are closed [lo, hi].
std::vector<std::size_t> interval_cover(const std::vector<std::pair<int, int>>& intervals);

struct NearFaceCover {
    std::vector<std::size_t> kept; // indices into the input list
    int axis = 0;                  // free axis carrying the segments
    std::array<int, kMaxDim> permutation{}; // permutation[i] = original axis shown as axis i
    std::size_t covered = 0;       // |U|
};

// Sub-family C' of n-cubes in F_k reproducing U = union of S cap R,
// R = B(E, radius) cap F_k, with |C'| <= 2|U|/n. radius defaults to n.
NearFaceCover cover_near_face(const Face& e, int n, const std::vector<Cube>& c, int radius = -1);

// Is p (in T) (E,T)-necessary: for each restricted axis the segment from p to
// the face meets T only in p.
bool is_necessary(const PointSet& t, const Face& e, const Point& p);

// (l,T)-necessary points in (F_k cap B(F_{k,l}, n)) \ B(F_{k,l}, r).
PointSet necessary_points(const PointSet& t, int d, int k, int n, int l, int r);

// Distance from p in F_k to the l-skeleton.
int skeleton_distance(const Point& p, int d, int k, int l);

// Net in int_n(F) used by cover_interior: per axis, spacing 2*floor(n/3)+1.
std::vector<Point> interior_net(const Cube& f, int d0, int n);

// Sub-family covering int_n(F) with at most (2k/n)^d0 cubes. Throws
// PreconditionError naming a point of int_n(F) with no centre within n/6.
std::vector<std::size_t> cover_interior(const Cube& f, int d0, int n, const std::vector<Cube>& c);

struct ThreePieceReport {
    int k = 0, n = 0, r = 0, ell = 0, j = 0;
    std::size_t j1 = 0, j2 = 0, j3 = 0; // selected by each region
    std::size_t necessary = 0;
    std::size_t repairs = 0;            // repeats added to restore A(J)
    std::size_t interior_fallbacks = 0; // faces whose density precondition failed
    std::size_t area = 0;               // |A(J)|
    double term1 = 0, term2 = 0, term3 = 0;
    bool bound_holds = false;           // |J| <= term1 + term2 + term3, exact
};

struct EfficientCover {
    RepeatCover cover;
    ThreePieceReport report;
};

// Three-region cover of u on F_k: near-face covers at the l-skeleton, necessary
// points in the band out to n, interior nets on faces of dimension > l.
EfficientCover efficient_cover(const Pattern& u, int n, int r, int ell);

struct AsymptoticCover {
    RepeatCover cover;
    int ell = 0; // 0: full-cube path
    int r = 0;
    int j = 0;
    bool full_cube = false;
    double ratio = 0; // |J| log n / j
    std::optional<ThreePieceReport> report;
};

// k = n * ceil(n^tau), r = ceil(n^tau); picks the band from j = |W_n(u)|.
AsymptoticCover asymptotic_cover(const Pattern& u, int n, double tau);

// k^d - |A(J)| <= j (1 + 4dn/k), exact integer comparison. Requires k > (2d+1)n.
bool nuggets_bound_check(const Pattern& u, int n, const RepeatCover& j);

} // namespace sftlab
