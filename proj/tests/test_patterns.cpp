#include "sftlab/errors.hpp"
#include "sftlab/patterns.hpp"

#include "support.hpp"

#include <doctest.h>

#include <sstream>

using namespace sftlab;
using namespace sftlab::testing;

TEST_CASE("window codec is row-major with the first cell most significant") {
    WindowCodec c(3, 2, 2);
    CHECK(c.table_size() == 81);
    std::vector<Symbol> cells{1, 0, 0, 2};
    CHECK(c.encode(cells) == 1 * 27 + 2);
    std::vector<Symbol> back(4);
    c.decode(29, back);
    CHECK(back == cells);
    std::mt19937_64 g(3);
    WindowCodec c3(2, 3, 2);
    for (int t = 0; t < 100; ++t) {
        auto s = random_symbols(g, 8, 2);
        std::vector<Symbol> r(8);
        c3.decode(c3.encode(s), r);
        CHECK(r == s);
    }
    CHECK(!window_table_size(2, 3, 5));
}

TEST_CASE("complexity histogram d=1 |A|=2 n=2 k=4 matches direct enumeration") {
    // oracle: count distinct length-2 factors of each of the 16 words
    std::map<int, std::uint64_t> oracle;
    for (int m = 0; m < 16; ++m) {
        std::vector<int> w(4);
        for (int i = 0; i < 4; ++i) w[i] = (m >> (3 - i)) & 1;
        ++oracle[factor_count(w, 2)];
    }
    auto h = complexity_histogram(2, 1, 2, 4);
    CHECK(h == oracle);
    CHECK(h == std::map<int, std::uint64_t>{{1, 2}, {2, 6}, {3, 8}});
}

TEST_CASE("complexity histogram d=2 agrees with window_count") {
    auto h = complexity_histogram(2, 2, 2, 3);
    std::map<int, std::uint64_t> oracle;
    for (int m = 0; m < 512; ++m) {
        std::vector<Symbol> s(9);
        for (int i = 0; i < 9; ++i) s[i] = static_cast<Symbol>((m >> i) & 1);
        ++oracle[window_count(Pattern::on_fk(2, 3, s), 2)];
    }
    CHECK(h == oracle);
}

TEST_CASE("window counts") {
    CHECK(window_count(Pattern::on_fk(1, 6, {0, 0, 0, 0, 0, 0}), 3) == 1);
    // de Bruijn word for n=3 plus wrap: all 8 windows distinct
    CHECK(window_count(Pattern::on_fk(1, 10, {0, 0, 0, 1, 0, 1, 1, 1, 0, 0}), 3) == 8);
    std::mt19937_64 g(5);
    for (int t = 0; t < 50; ++t) {
        auto u = random_fk(g, 2, 6, 2);
        auto codes = window_codes(u, 2, 2);
        CHECK(static_cast<int>(codes.size()) == window_count(u, 2));
    }
}

TEST_CASE("window classes number patterns by first occurrence") {
    auto u = Pattern::on_fk(1, 5, {1, 0, 1, 0, 1});
    auto wc = window_classes(u, 2);
    CHECK(wc.distinct() == 2);
    CHECK(wc.cls == std::vector<int>{0, 1, 0, 1});
    CHECK(wc.first == std::vector<int>{0, 1});
}

TEST_CASE("patterns compare up to translation and restrict to cubes") {
    auto u = Pattern::on_fk(2, 3, {0, 1, 2, 3, 4, 5, 6, 7, 8});
    auto r = restrict(u, Cube{make_point({2, 2}), 2});
    CHECK(r.symbols() == std::vector<Symbol>{4, 5, 7, 8});
    CHECK(r == Pattern::on_cube(2, 2, {4, 5, 7, 8}, make_point({10, -3})));
    CHECK(!(r == Pattern::on_cube(2, 2, {4, 5, 8, 7}, make_point({0, 0}))));
    CHECK(u.at(make_point({3, 1})) == 6);
    CHECK_THROWS_AS(u.at(make_point({4, 1})), DomainError);
}

TEST_CASE("pattern text round trip") {
    std::mt19937_64 g(9);
    for (int d = 1; d <= 3; ++d) {
        auto u = random_fk(g, d, 4, 3);
        std::stringstream s;
        write_pattern(s, u, 3);
        auto back = read_pattern(s);
        CHECK(back.alphabet == 3);
        CHECK(back.pattern == u);
    }
    std::istringstream in("# comment\n2 2 2\n0 1 # row one\n1 1\n");
    auto tp = read_pattern(in);
    CHECK(tp.pattern.symbols() == std::vector<Symbol>{0, 1, 1, 1});
    std::istringstream bad("1 3 2\n0 2 1\n");
    CHECK_THROWS(read_pattern(bad));
}

TEST_CASE("window code binary round trip is little-endian") {
    std::vector<std::uint64_t> codes{1, 0x0102030405060708ULL};
    std::stringstream s;
    write_window_codes(s, codes);
    auto raw = s.str();
    REQUIRE(raw.size() == 24);
    CHECK(raw[0] == 2);
    CHECK(raw[8] == 1);
    CHECK(raw[16] == 0x08);
    CHECK(read_window_codes(s) == codes);
}
