#include "sftlab/ensemble.hpp"
#include "sftlab/errors.hpp"

#include "support.hpp"

#include <doctest.h>

#include <cmath>
#include <sstream>

using namespace sftlab;
using namespace sftlab::testing;

TEST_CASE("sampling is a pure function of seed and trial") {
    EnsembleParams p{2, 1, 8, 0.3, 42};
    auto a = sample(p, 5), b = sample(p, 5), c = sample(p, 6);
    CHECK(a == b);
    CHECK(!(a == c));
    CHECK(a.seed == 42);
    CHECK(a.trial == 5);
}

TEST_CASE("sampling couples monotonically in alpha") {
    for (std::uint64_t t = 0; t < 20; ++t) {
        auto lo = sample(EnsembleParams{2, 2, 2, 0.2, 9}, t);
        auto hi = sample(EnsembleParams{2, 2, 2, 0.6, 9}, t);
        CHECK(lo.subset_of(hi));
    }
    CHECK(sample(EnsembleParams{2, 1, 6, 0.0, 1}, 0).count() == 0);
    CHECK(sample(EnsembleParams{2, 1, 6, 1.0, 1}, 0).count() == 64);
}

TEST_CASE("bit density matches alpha") {
    EnsembleParams p{2, 1, 12, 0.37, 3};
    auto w = sample(p, 0);
    double n = static_cast<double>(w.size());
    double sd = std::sqrt(n * 0.37 * 0.63);
    CHECK(std::abs(static_cast<double>(w.count()) - 0.37 * n) < 4 * sd);
}

TEST_CASE("parameter validation") {
    CHECK_THROWS_AS(validate(EnsembleParams{1, 1, 2, 0.5, 0}), DomainError);
    CHECK_THROWS_AS(validate(EnsembleParams{2, 4, 2, 0.5, 0}), DomainError);
    CHECK_THROWS_AS(validate(EnsembleParams{2, 1, 0, 0.5, 0}), DomainError);
    CHECK_THROWS_AS(validate(EnsembleParams{2, 1, 2, 1.5, 0}), DomainError);
    CHECK_THROWS(AllowedSet(2, 2, 6)); // 2^36 windows
}

TEST_CASE("allowed set file round trip") {
    auto w = sample(EnsembleParams{3, 2, 2, 0.4, 77}, 12);
    std::stringstream s;
    write_allowed_set(s, w);
    auto raw = s.str();
    CHECK(raw.substr(0, 8) == "SFTLABW1");
    CHECK(raw.size() == 8 + 16 + 24 + (81 + 7) / 8);
    auto back = read_allowed_set(s);
    CHECK(back == w);
    CHECK(back.seed == 77);
    CHECK(back.trial == 12);
    std::istringstream bad("SFTLABW2xxxxxxxxxxxxxxxxxxxxxxxxxxxx");
    CHECK_THROWS(read_allowed_set(bad));
}

TEST_CASE("local admissibility checks every window") {
    std::mt19937_64 g(8);
    for (int t = 0; t < 50; ++t) {
        auto w = random_allowed(g, 2, 2, 2, 0.8);
        auto u = random_fk(g, 2, 4, 2);
        bool expect = true;
        for (auto c : window_codes(u, 2, 2)) expect = expect && w.test(c);
        CHECK(is_locally_allowed(w, u) == expect);
    }
    AllowedSet w(2, 1, 3);
    CHECK_THROWS_AS(is_locally_allowed(w, Pattern::on_fk(1, 2, {0, 0})), DomainError);
}

TEST_CASE("orbit admissibility") {
    AllowedSet w(2, 1, 3);
    w.set(0); // 000
    std::vector<Symbol> zero{0};
    std::array<std::int64_t, 1> one{1};
    CHECK(orbit_allowed(w, canonical_orbit(diagonal_lattice(1, one), zero)));
    std::vector<Symbol> alt{0, 1};
    std::array<std::int64_t, 1> two{2};
    auto o = canonical_orbit(diagonal_lattice(1, two), alt);
    CHECK(!orbit_allowed(w, o));
    w.set(2); // 010
    w.set(5); // 101
    CHECK(orbit_allowed(w, o));
}
