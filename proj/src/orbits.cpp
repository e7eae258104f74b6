// orbits.cpp
#include "sftlab/orbits.hpp"

#include "sftlab/errors.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <functional>
#include <map>
#include <numeric>
#include <set>
#include <stdexcept>

namespace sftlab {

namespace {

std::int64_t floor_div(std::int64_t a, std::int64_t b) {
    std::int64_t q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
    return q;
}

std::vector<std::int64_t> divisors(std::int64_t j) {
    std::vector<std::int64_t> out;
    for (std::int64_t i = 1; i <= j; ++i)
        if (j % i == 0) out.push_back(i);
    return out;
}

} // namespace

std::int64_t Lattice::index() const {
    std::int64_t r = 1;
    for (int i = 0; i < d; ++i) r *= h[i][i];
    return r;
}

IVec Lattice::column(int c) const {
    IVec v{};
    for (int i = 0; i < d; ++i) v[i] = h[i][c];
    return v;
}

bool Lattice::contains(IVec v) const {
    for (int i = d - 1; i >= 0; --i) {
        if (v[i] % h[i][i] != 0) return false;
        std::int64_t z = v[i] / h[i][i];
        for (int r = 0; r <= i; ++r) v[r] -= z * h[r][i];
    }
    return true;
}

IVec Lattice::reduce(IVec v) const {
    for (int i = d - 1; i >= 0; --i) {
        std::int64_t z = floor_div(v[i], h[i][i]);
        for (int r = 0; r <= i; ++r) v[r] -= z * h[r][i];
    }
    return v;
}

std::size_t Lattice::box_offset(const IVec& r) const {
    std::size_t off = 0;
    for (int i = 0; i < d; ++i) off = off * static_cast<std::size_t>(h[i][i]) + static_cast<std::size_t>(r[i]);
    return off;
}

IVec Lattice::box_point(std::size_t offset) const {
    IVec v{};
    for (int i = d - 1; i >= 0; --i) {
        v[i] = static_cast<std::int64_t>(offset % static_cast<std::size_t>(h[i][i]));
        offset /= static_cast<std::size_t>(h[i][i]);
    }
    return v;
}

std::string Lattice::str() const {
    std::string s = "[";
    for (int i = 0; i < d; ++i) {
        if (i) s += ";";
        for (int j = 0; j < d; ++j) {
            if (j) s += ",";
            s += std::to_string(h[i][j]);
        }
    }
    return s + "]";
}

Lattice diagonal_lattice(int d, std::span<const std::int64_t> sides) {
    check_dim(d);
    Lattice l;
    l.d = d;
    for (int i = 0; i < d; ++i) {
        if (sides[i] < 1) throw DomainError("lattice periods must be positive");
        l.h[i][i] = sides[i];
    }
    return l;
}

Lattice hnf_from_generators(int d, const std::vector<IVec>& gens) {
    check_dim(d);
    std::vector<IVec> active = gens;
    Lattice l;
    l.d = d;
    for (int row = d - 1; row >= 0; --row) {
        // gcd-eliminate entry `row` among the active columns
        while (true) {
            int piv = -1;
            for (int c = 0; c < static_cast<int>(active.size()); ++c)
                if (active[c][row] != 0 &&
                    (piv < 0 || std::llabs(active[c][row]) < std::llabs(active[piv][row])))
                    piv = c;
            if (piv < 0) throw DomainError("generators do not span a full-rank lattice");
            bool done = true;
            for (int c = 0; c < static_cast<int>(active.size()); ++c) {
                if (c == piv || active[c][row] == 0) continue;
                std::int64_t q = floor_div(active[c][row], active[piv][row]);
                for (int r = 0; r < d; ++r) active[c][r] -= q * active[piv][r];
                if (active[c][row] != 0) done = false;
            }
            if (done) {
                IVec col = active[piv];
                if (col[row] < 0)
                    for (auto& x : col) x = -x;
                for (int r = 0; r < d; ++r) l.h[r][row] = col[r];
                active.erase(active.begin() + piv);
                break;
            }
        }
    }
    for (int c = 0; c < d; ++c)
        for (int i = c - 1; i >= 0; --i) {
            std::int64_t q = floor_div(l.h[i][c], l.h[i][i]);
            for (int r = 0; r <= i; ++r) l.h[r][c] -= q * l.h[r][i];
        }
    return l;
}

std::vector<Lattice> sublattices(int d, std::int64_t j) {
    check_dim(d);
    if (j < 1) throw DomainError("sublattice index must be >= 1");
    std::vector<Lattice> out;
    std::vector<std::int64_t> diag(d);
    std::function<void(int, std::int64_t)> pick_diag = [&](int i, std::int64_t rest) {
        if (i == d - 1) {
            diag[i] = rest;
            // enumerate off-diagonal entries h[r][c], r < c, in [0, diag[r])
            std::vector<std::pair<int, int>> slots;
            for (int r = 0; r < d; ++r)
                for (int c = r + 1; c < d; ++c) slots.push_back({r, c});
            Lattice l;
            l.d = d;
            for (int t = 0; t < d; ++t) l.h[t][t] = diag[t];
            std::function<void(std::size_t)> fill = [&](std::size_t s) {
                if (s == slots.size()) {
                    out.push_back(l);
                    return;
                }
                auto [r, c] = slots[s];
                for (std::int64_t v = 0; v < diag[r]; ++v) {
                    l.h[r][c] = v;
                    fill(s + 1);
                }
                l.h[r][c] = 0;
            };
            fill(0);
            return;
        }
        for (std::int64_t a : divisors(rest)) {
            diag[i] = a;
            pick_diag(i + 1, rest / a);
        }
    };
    pick_diag(0, j);
    std::sort(out.begin(), out.end());
    return out;
}

double sublattice_count(int d, std::int64_t j) {
    check_dim(d);
    // sum over diagonals (h_1..h_d) with product j of prod h_i^(d-1-i)
    std::function<double(int, std::int64_t)> rec = [&](int i, std::int64_t rest) -> double {
        if (i == d - 1) return 1.0;
        double s = 0;
        for (std::int64_t a = 1; a * a <= rest; ++a) {
            if (rest % a) continue;
            std::int64_t b = rest / a;
            s += std::pow(double(a), d - 1 - i) * rec(i + 1, b);
            if (b != a) s += std::pow(double(b), d - 1 - i) * rec(i + 1, a);
        }
        return s;
    };
    return rec(0, j);
}

Symbol Orbit::at(const IVec& p) const {
    return fundamental[lattice.box_offset(lattice.reduce(p))];
}

Symbol Orbit::at(const Point& p) const {
    IVec v{};
    for (int i = 0; i < lattice.d; ++i) v[i] = p[i];
    return at(v);
}

namespace {

// values of the L-periodic configuration on box(L) shifted by v
void translate_box(const Lattice& l, std::span<const Symbol> fund, const IVec& v,
                   std::vector<Symbol>& out) {
    std::size_t m = fund.size();
    out.resize(m);
    for (std::size_t o = 0; o < m; ++o) {
        IVec b = l.box_point(o);
        for (int i = 0; i < l.d; ++i) b[i] += v[i];
        out[o] = fund[l.box_offset(l.reduce(b))];
    }
}

bool is_period(const Lattice& l, std::span<const Symbol> fund, const IVec& v) {
    std::size_t m = fund.size();
    for (std::size_t o = 0; o < m; ++o) {
        IVec b = l.box_point(o);
        for (int i = 0; i < l.d; ++i) b[i] += v[i];
        if (fund[l.box_offset(l.reduce(b))] != fund[o]) return false;
    }
    return true;
}

} // namespace

Orbit canonical_orbit(const Lattice& l, std::span<const Symbol> fund) {
    if (fund.size() != static_cast<std::size_t>(l.index()))
        throw DomainError("fundamental pattern size must equal the lattice index");
    int d = l.d;
    std::vector<IVec> gens;
    for (int c = 0; c < d; ++c) gens.push_back(l.column(c));
    for (std::size_t o = 1; o < fund.size(); ++o) {
        IVec v = l.box_point(o);
        if (is_period(l, fund, v)) gens.push_back(v);
    }
    Lattice s = gens.size() == static_cast<std::size_t>(d) ? l : hnf_from_generators(d, gens);
    // values on box(s)
    std::vector<Symbol> base(static_cast<std::size_t>(s.index()));
    for (std::size_t o = 0; o < base.size(); ++o)
        base[o] = fund[l.box_offset(l.reduce(s.box_point(o)))];
    std::vector<Symbol> best = base, cur;
    for (std::size_t o = 1; o < base.size(); ++o) {
        translate_box(s, base, s.box_point(o), cur);
        if (cur < best) best = cur;
    }
    return Orbit{s, std::move(best)};
}

int orbit_size_budget(int d) {
    check_dim(d);
    return d == 1 ? 30 : d == 2 ? 8 : 4;
}

namespace {

BigCount ipow(int a, std::int64_t e) {
    BigCount r = 1;
    for (std::int64_t i = 0; i < e; ++i) r *= a;
    return r;
}

// number of configurations whose stabilizer is exactly l
const BigCount& exact_fixed(int alphabet, const Lattice& l, std::map<Lattice, BigCount>& memo) {
    auto it = memo.find(l);
    if (it != memo.end()) return it->second;
    std::int64_t j = l.index();
    BigCount f = ipow(alphabet, j);
    for (std::int64_t i : divisors(j)) {
        if (i == j) continue;
        for (const auto& sup : sublattices(l.d, i)) {
            bool contains_l = true;
            for (int c = 0; c < l.d && contains_l; ++c) contains_l = sup.contains(l.column(c));
            if (contains_l) f -= exact_fixed(alphabet, sup, memo);
        }
    }
    return memo.emplace(l, f).first->second;
}

void check_bounds(int alphabet, int d, int j, const BigCount& c) {
    // |A|^j / (2j) <= |P_j| <= j^(d+1) |A|^j
    BigCount aj = ipow(alphabet, j);
    BigCount upper = aj;
    for (int i = 0; i < d + 1; ++i) upper *= j;
    if (c > upper || c * 2 * j < aj)
        throw std::logic_error("orbit count violates the |P_j| bounds at j=" + std::to_string(j));
}

} // namespace

std::vector<BigCount> count_orbits_upto(int alphabet, int d, int jmax) {
    check_alphabet(alphabet);
    check_dim(d);
    if (jmax > orbit_size_budget(d))
        throw ResourceError("orbit size " + std::to_string(jmax) + " exceeds the budget " +
                            std::to_string(orbit_size_budget(d)) + " for d=" + std::to_string(d));
    std::map<Lattice, BigCount> memo;
    std::vector<BigCount> out;
    for (int j = 1; j <= jmax; ++j) {
        BigCount total = 0;
        for (const auto& l : sublattices(d, j)) total += exact_fixed(alphabet, l, memo);
        if (total % j != 0) throw std::logic_error("orbit count not divisible by its size");
        BigCount c = total / j;
        check_bounds(alphabet, d, j, c);
        out.push_back(c);
    }
    return out;
}

OrbitCount count_orbits(int alphabet, int d, int j) {
    if (j < 1) throw DomainError("orbit size must be >= 1");
    auto all = count_orbits_upto(alphabet, d, j);
    return {j, all.back()};
}

std::vector<Orbit> enumerate_orbits(int alphabet, int d, int max_size) {
    check_alphabet(alphabet);
    check_dim(d);
    if (max_size > orbit_size_budget(d))
        throw ResourceError("orbit size " + std::to_string(max_size) + " exceeds the budget for d=" +
                            std::to_string(d));
    double work = 0;
    for (int j = 1; j <= max_size; ++j)
        work += sublattice_count(d, j) * std::pow(double(alphabet), j);
    if (work > double(1 << 22))
        throw ResourceError("orbit enumeration up to size " + std::to_string(max_size) +
                            " exceeds the 2^22 configuration budget");
    std::vector<Orbit> out;
    std::vector<Symbol> f, cur;
    for (int j = 1; j <= max_size; ++j) {
        for (const auto& l : sublattices(d, j)) {
            f.assign(static_cast<std::size_t>(j), 0);
            while (true) {
                bool keep = true;
                for (std::size_t o = 1; o < f.size() && keep; ++o) {
                    translate_box(l, f, l.box_point(o), cur);
                    // exact stabilizer <=> all translates differ; lex-min representative
                    if (cur <= f) keep = false;
                }
                if (keep) out.push_back(Orbit{l, f});
                int i = j - 1;
                while (i >= 0 && ++f[i] == alphabet) f[i--] = 0;
                if (i < 0) break;
            }
        }
    }
    std::sort(out.begin(), out.end(), [](const Orbit& a, const Orbit& b) {
        if (a.size() != b.size()) return a.size() < b.size();
        if (a.fundamental != b.fundamental) return a.fundamental < b.fundamental;
        return a.lattice < b.lattice;
    });
    return out;
}

std::vector<std::vector<Symbol>> orbit_window_symbols(const Orbit& g, int n) {
    const Lattice& l = g.lattice;
    std::set<std::vector<Symbol>> seen;
    Point ext{};
    for (int i = 0; i < l.d; ++i) ext[i] = n;
    for (std::size_t o = 0; o < g.fundamental.size(); ++o) {
        IVec v = l.box_point(o);
        std::vector<Symbol> w;
        for_each_in_box(l.d, Point{}, ext, [&](const Point& p) {
            IVec q{};
            for (int i = 0; i < l.d; ++i) q[i] = v[i] + p[i];
            w.push_back(g.at(q));
        });
        seen.insert(std::move(w));
    }
    return {seen.begin(), seen.end()};
}

std::vector<std::uint64_t> orbit_windows(const Orbit& g, int n, int alphabet) {
    WindowCodec codec(alphabet, g.lattice.d, n);
    std::vector<std::uint64_t> out;
    for (const auto& w : orbit_window_symbols(g, n)) out.push_back(codec.encode(w));
    std::sort(out.begin(), out.end());
    return out;
}

Pattern orbit_pattern(const Orbit& g, int side, const Point& origin) {
    int d = g.lattice.d;
    std::vector<Symbol> sym;
    Point ext{};
    for (int i = 0; i < d; ++i) ext[i] = side;
    for_each_in_box(d, origin, ext, [&](const Point& p) { sym.push_back(g.at(p)); });
    return Pattern::on_cube(d, side, std::move(sym), origin);
}

int least_period(std::span<const int> w) {
    // prefix function: least period = |w| - border
    int m = static_cast<int>(w.size());
    if (m == 0) return 0;
    std::vector<int> pi(m, 0);
    for (int i = 1; i < m; ++i) {
        int k = pi[i - 1];
        while (k > 0 && w[i] != w[k]) k = pi[k - 1];
        if (w[i] == w[k]) ++k;
        pi[i] = k;
    }
    return m - pi[m - 1];
}

std::optional<int> word_periodicity(std::span<const int> w, int n) {
    int k = static_cast<int>(w.size());
    if (n < 1 || k <= 3 * n)
        throw DomainError("word periodicity needs |w| > 3n (|w|=" + std::to_string(k) +
                          ", n=" + std::to_string(n) + ")");
    auto mid = w.subspan(static_cast<std::size_t>(n - 1), static_cast<std::size_t>(k - 2 * n + 1));
    int p = least_period(mid);
    if (p == static_cast<int>(mid.size())) return std::nullopt;
    return p;
}

std::optional<int> word_periodicity(std::span<const Symbol> w, int n) {
    std::vector<int> v(w.begin(), w.end());
    return word_periodicity(std::span<const int>(v), n);
}

std::optional<Orbit> extract_orbit(const Pattern& u, int n) {
    auto box = u.box();
    if (!box) throw DomainError("orbit extraction needs a cube-shaped pattern");
    int d = u.dim(), k = box->side;
    if (n < 1 || k <= 4 * n)
        throw DomainError("orbit extraction needs k > 4n (k=" + std::to_string(k) + ", n=" +
                          std::to_string(n) + ")");
    auto classes = window_classes(u, n);
    int j = classes.distinct();
    if (2 * j > n) return std::nullopt;

    const Point& o = box->origin;
    std::array<std::int64_t, kMaxDim> periods{};
    for (int axis = 0; axis < d; ++axis) {
        // slice word f(m) = u on pi_axis(F_n) + m e_axis
        std::map<std::vector<Symbol>, int> ids;
        std::vector<int> word;
        Point ext{};
        for (int i = 0; i < d; ++i) ext[i] = n;
        ext[axis] = 1;
        for (int m = 0; m < k; ++m) {
            Point lo = o;
            lo[axis] += m;
            std::vector<Symbol> slice;
            for_each_in_box(d, lo, ext, [&](const Point& p) { slice.push_back(u.at(p)); });
            auto [it, fresh] = ids.emplace(std::move(slice), static_cast<int>(ids.size()));
            word.push_back(it->second);
        }
        auto mid = std::span<const int>(word).subspan(static_cast<std::size_t>(n - 1),
                                                       static_cast<std::size_t>(k - 2 * n + 1));
        periods[axis] = least_period(mid);
    }

    Lattice l = diagonal_lattice(d, std::span<const std::int64_t>(periods.data(), d));
    std::vector<Symbol> fund(static_cast<std::size_t>(l.index()));
    for (std::size_t off = 0; off < fund.size(); ++off) {
        IVec b = l.box_point(off);
        Point p{};
        for (int i = 0; i < d; ++i) p[i] = o[i] + n - 1 + static_cast<int>(b[i]);
        fund[off] = u.at(p);
    }
    Orbit g = canonical_orbit(l, fund);

    // the construction guarantees both; a failure here is a bug, not bad input
    if (2 * g.size() > n) throw std::logic_error("extracted orbit is larger than n/2");
    std::set<std::vector<Symbol>> uw;
    for (int f : classes.first) uw.insert(window_symbols(u, classes.cubes[f].origin, n));
    for (const auto& w : orbit_window_symbols(g, n))
        if (!uw.count(w)) throw std::logic_error("extracted orbit has a window missing from u");
    return g;
}

} // namespace sftlab
