// orbits.hpp
#pragma once

#include "sftlab/patterns.hpp"

#include <boost/multiprecision/cpp_int.hpp>

#include <array>
#include <compare>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace sftlab {

using BigCount = boost::multiprecision::cpp_int;

using IVec = std::array<std::int64_t, kMaxDim>;

// Finite-index sublattice of Z^d in column-style Hermite normal form:
// h is upper triangular, columns generate, 0 <= h[i][j] < h[i][i] for j > i.
struct Lattice {
    int d = 1;
    std::array<IVec, kMaxDim> h{}; // h[row][col]

    std::int64_t index() const;
    IVec column(int c) const;
    bool contains(IVec v) const;
    // representative of p modulo the lattice inside the box prod [0, h_ii)
    IVec reduce(IVec v) const;
    // row-major offset of a reduced point inside the box
    std::size_t box_offset(const IVec& r) const;
    IVec box_point(std::size_t offset) const;
    std::string str() const;

    bool operator==(const Lattice&) const = default;
    auto operator<=>(const Lattice&) const = default;
};

Lattice diagonal_lattice(int d, std::span<const std::int64_t> sides);
// HNF of the lattice spanned by gens (must have rank d).
Lattice hnf_from_generators(int d, const std::vector<IVec>& gens);
// All sublattices of index j, canonical HNF, ordered by matrix entries.
std::vector<Lattice> sublattices(int d, std::int64_t j);
// number of index-j sublattices, via the HNF diagonal sum (any j)
double sublattice_count(int d, std::int64_t j);

// A finite orbit: exact stabilizer plus the lex-minimal translate of the
// configuration on the lattice's box fundamental domain.
struct Orbit {
    Lattice lattice;
    std::vector<Symbol> fundamental;

    std::int64_t size() const { return lattice.index(); }
    Symbol at(const IVec& p) const;
    Symbol at(const Point& p) const;
    bool operator==(const Orbit&) const = default;
};

// Orbit of the L-periodic configuration whose box values are `fund`;
// L need not be the exact stabilizer.
Orbit canonical_orbit(const Lattice& l, std::span<const Symbol> fund);

struct OrbitCount {
    int j = 0;
    BigCount count;
};

// Largest orbit size covered by count_orbits / enumerate_orbits budgets.
int orbit_size_budget(int d);

OrbitCount count_orbits(int alphabet, int d, int j);
// |P_1| .. |P_jmax|
std::vector<BigCount> count_orbits_upto(int alphabet, int d, int jmax);

std::vector<Orbit> enumerate_orbits(int alphabet, int d, int max_size);

// W_n(gamma) as sorted codes.
std::vector<std::uint64_t> orbit_windows(const Orbit& g, int n, int alphabet);
// W_n(gamma) as symbol arrays, for windows too large to encode.
std::vector<std::vector<Symbol>> orbit_window_symbols(const Orbit& g, int n);

// The periodic configuration restricted to origin + [0, side)^d.
Pattern orbit_pattern(const Orbit& g, int side, const Point& origin);

// Least period of w (returns |w| for a word with no proper period).
int least_period(std::span<const int> w);

// Least period of the middle segment w[n, |w|-n] (1-based, inclusive),
// or nullopt when it has no proper period. Needs |w| > 3n.
std::optional<int> word_periodicity(std::span<const int> w, int n);
std::optional<int> word_periodicity(std::span<const Symbol> w, int n);

// Orbit gamma with W_n(gamma) in W_n(u) and |gamma| <= n/2, built from the
// per-axis slice words when |W_n(u)| <= n/2. u must be a cube of side k > 4n.
std::optional<Orbit> extract_orbit(const Pattern& u, int n);

} // namespace sftlab
