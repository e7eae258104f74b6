// patterns.hpp
#pragma once

#include "sftlab/geometry.hpp"

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <span>
#include <vector>

namespace sftlab {

using Symbol = std::uint8_t;

void check_alphabet(int alphabet); // 2..255

// Symbols on a finite shape, stored in lex order of the shape.
// Placement is kept; equality ignores translation.
class Pattern {
public:
    Pattern() = default;
    Pattern(PointSet shape, std::vector<Symbol> symbols);
    // pattern on origin + [0, side)^d, symbols in row-major (lex) order
    static Pattern on_cube(int d, int side, std::vector<Symbol> symbols, Point origin);
    // F_k = [1,k]^d
    static Pattern on_fk(int d, int k, std::vector<Symbol> symbols);

    int dim() const { return shape_.dim(); }
    const PointSet& shape() const { return shape_; }
    const std::vector<Symbol>& symbols() const { return symbols_; }
    std::size_t size() const { return symbols_.size(); }

    bool has(const Point& p) const;
    Symbol at(const Point& p) const; // throws DomainError off-shape
    std::optional<Cube> box() const { return box_; }

    Pattern translated(const Point& v) const;
    Pattern normalized() const; // lex-min point moved to the origin
    bool operator==(const Pattern& o) const;

private:
    std::ptrdiff_t index_of(const Point& p) const;

    PointSet shape_;
    std::vector<Symbol> symbols_;
    std::optional<Cube> box_;
};

// Translation-normalized restriction to S. Throws DomainError when S is not inside.
Pattern restrict(const Pattern& u, const Cube& s);

// Bijection A^{F_n} <-> [0, |A|^(n^d)), first symbol most significant.
class WindowCodec {
public:
    WindowCodec(int alphabet, int d, int n);
    int alphabet() const { return a_; }
    int dim() const { return d_; }
    int side() const { return n_; }
    int cells() const { return cells_; }
    std::uint64_t table_size() const { return size_; }
    std::uint64_t encode(std::span<const Symbol> cells) const;
    void decode(std::uint64_t code, std::span<Symbol> out) const;

private:
    int a_, d_, n_, cells_;
    std::uint64_t size_;
};

// |A|^(n^d), or nullopt when it does not fit in 63 bits.
std::optional<std::uint64_t> window_table_size(int alphabet, int d, int n);

inline constexpr std::uint64_t kWindowTableLimit = std::uint64_t{1} << 28;

// Distinct n-windows of u as codes, sorted. DomainError if no n-cube fits.
std::vector<std::uint64_t> window_codes(const Pattern& u, int n, int alphabet);

// Every n-cube of u with the index of its pattern class; classes are numbered by
// first (lex-minimal) occurrence. Works for any n, no codes involved.
struct WindowClasses {
    std::vector<Cube> cubes;
    std::vector<int> cls;
    std::vector<int> first; // first[c] = index into cubes of the first occurrence
    int distinct() const { return static_cast<int>(first.size()); }
};
WindowClasses window_classes(const Pattern& u, int n);

// |W_n(u)|
int window_count(const Pattern& u, int n);

// Symbols of the n-window at m (lex order), read from a box pattern.
std::vector<Symbol> window_symbols(const Pattern& u, const Point& m, int n);

// j -> |N^j_{n,k}| by exhaustive enumeration (|A|^(k^d) <= 2^24).
std::map<int, std::uint64_t> complexity_histogram(int alphabet, int d, int n, int k);

// Text format: "d side alphabet" then side^(d-1) rows of side symbols.
struct TextPattern {
    Pattern pattern;
    int alphabet = 2;
};
TextPattern read_pattern(std::istream& in);
void write_pattern(std::ostream& out, const Pattern& u, int alphabet);

// Little-endian 64-bit codes, count first.
void write_window_codes(std::ostream& out, std::span<const std::uint64_t> codes);
std::vector<std::uint64_t> read_window_codes(std::istream& in);

} // namespace sftlab
