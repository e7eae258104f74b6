// Generators and brute-force oracles shared by the tests.
#pragma once

#include "sftlab/ensemble.hpp"
#include "sftlab/orbits.hpp"
#include "sftlab/geometry.hpp"
#include "sftlab/patterns.hpp"

#include <cstdint>
#include <random>
#include <set>
#include <vector>

namespace sftlab::testing {

inline std::vector<Symbol> random_symbols(std::mt19937_64& g, std::size_t count, int alphabet) {
    std::uniform_int_distribution<int> pick(0, alphabet - 1);
    std::vector<Symbol> s(count);
    for (auto& x : s) x = static_cast<Symbol>(pick(g));
    return s;
}

inline std::size_t volume(int d, int k) {
    std::size_t v = 1;
    for (int i = 0; i < d; ++i) v *= static_cast<std::size_t>(k);
    return v;
}

inline Pattern random_fk(std::mt19937_64& g, int d, int k, int alphabet) {
    return Pattern::on_fk(d, k, random_symbols(g, volume(d, k), alphabet));
}

// Pattern on F_k tiled by a random block of the given periods (low complexity).
inline Pattern periodic_fk(std::mt19937_64& g, int d, int k, int alphabet, std::array<int, kMaxDim> per) {
    std::size_t bv = 1;
    for (int i = 0; i < d; ++i) bv *= static_cast<std::size_t>(per[i]);
    auto block = random_symbols(g, bv, alphabet);
    std::vector<Symbol> s;
    Point one{}, ext{};
    for (int i = 0; i < d; ++i) {
        one[i] = 1;
        ext[i] = k;
    }
    for_each_in_box(d, one, ext, [&](const Point& p) {
        std::size_t idx = 0;
        for (int i = 0; i < d; ++i) idx = idx * static_cast<std::size_t>(per[i]) + static_cast<std::size_t>((p[i] - 1) % per[i]);
        s.push_back(block[idx]);
    });
    return Pattern::on_fk(d, k, std::move(s));
}

inline AllowedSet random_allowed(std::mt19937_64& g, int alphabet, int d, int n, double alpha) {
    AllowedSet w(alphabet, d, n);
    std::bernoulli_distribution b(alpha);
    for (std::uint64_t c = 0; c < w.size(); ++c)
        if (b(g)) w.set(c);
    return w;
}

// Distinct length-n factors of a word.
inline int factor_count(const std::vector<int>& w, int n) {
    std::set<std::vector<int>> s;
    for (std::size_t i = 0; i + static_cast<std::size_t>(n) <= w.size(); ++i)
        s.insert(std::vector<int>(w.begin() + static_cast<std::ptrdiff_t>(i), w.begin() + static_cast<std::ptrdiff_t>(i) + n));
    return static_cast<int>(s.size());
}

inline int naive_period(const std::vector<int>& w) {
    for (std::size_t p = 1; p <= w.size(); ++p) {
        bool ok = true;
        for (std::size_t i = p; i < w.size() && ok; ++i) ok = w[i] == w[i - p];
        if (ok) return static_cast<int>(p);
    }
    return static_cast<int>(w.size());
}

// Configurations of exact orbit size j all live on the j-torus (jZ^d is inside
// every index-j lattice). Count tori with exactly j distinct translates, divide by j.
inline BigCount torus_orbit_count(int alphabet, int d, int j) {
    int cells = 1;
    for (int i = 0; i < d; ++i) cells *= j;
    std::vector<int> digits(static_cast<std::size_t>(cells), 0);
    auto idx = [&](const std::array<int, 3>& p) {
        int r = 0;
        for (int i = 0; i < d; ++i) r = r * j + p[i];
        return r;
    };
    std::uint64_t hits = 0;
    for (;;) {
        std::set<std::vector<int>> translates;
        std::array<int, 3> v{};
        for (int t = 0; t < cells; ++t) {
            int rem = t;
            for (int i = d - 1; i >= 0; --i) {
                v[i] = rem % j;
                rem /= j;
            }
            std::vector<int> shifted(static_cast<std::size_t>(cells));
            for (int c = 0; c < cells; ++c) {
                std::array<int, 3> p{};
                int r2 = c;
                for (int i = d - 1; i >= 0; --i) {
                    p[i] = r2 % j;
                    r2 /= j;
                }
                std::array<int, 3> q{};
                for (int i = 0; i < d; ++i) q[i] = (p[i] + v[i]) % j;
                shifted[static_cast<std::size_t>(c)] = digits[static_cast<std::size_t>(idx(q))];
            }
            translates.insert(std::move(shifted));
            if (static_cast<int>(translates.size()) > j) break;
        }
        if (static_cast<int>(translates.size()) == j) ++hits;
        int pos = 0;
        while (pos < cells && ++digits[static_cast<std::size_t>(pos)] == alphabet) digits[static_cast<std::size_t>(pos++)] = 0;
        if (pos == cells) break;
    }
    return BigCount(hits / static_cast<std::uint64_t>(j));
}

// necklaces of exact period j: words of least period j, divided by j
inline BigCount necklace_count(int alphabet, int j) {
    std::uint64_t total = 1;
    for (int i = 0; i < j; ++i) total *= static_cast<std::uint64_t>(alphabet);
    std::uint64_t hits = 0;
    std::vector<int> w(static_cast<std::size_t>(j));
    for (std::uint64_t m = 0; m < total; ++m) {
        std::uint64_t r = m;
        for (auto& x : w) {
            x = static_cast<int>(r % static_cast<std::uint64_t>(alphabet));
            r /= static_cast<std::uint64_t>(alphabet);
        }
        bool primitive = true;
        for (int p = 1; p < j && primitive; ++p) {
            if (j % p) continue;
            bool per = true;
            for (int i = p; i < j && per; ++i) per = w[static_cast<std::size_t>(i)] == w[static_cast<std::size_t>(i - p)];
            if (per) primitive = false;
        }
        if (primitive) ++hits;
    }
    return BigCount(hits / static_cast<std::uint64_t>(j));
}

} // namespace sftlab::testing
