// analysis.cpp
#include "sftlab/analysis.hpp"

#include "sftlab/counter_rng.hpp"
#include "sftlab/errors.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <functional>
#include <limits>
#include <map>
#include <unordered_map>
#include <unordered_set>

namespace sftlab {

std::string to_string(Verdict v) {
    switch (v) {
    case Verdict::Empty: return "empty";
    case Verdict::NonEmpty: return "nonempty";
    case Verdict::Unknown: return "unknown";
    }
    return "unknown";
}

namespace {

std::uint64_t upow(std::uint64_t a, int e) {
    std::uint64_t r = 1;
    for (int i = 0; i < e; ++i) r *= a;
    return r;
}

} // namespace

// ---------------------------------------------------------------- d = 1

EmptinessVerdict decide_empty_1d(const AllowedSet& w) {
    if (w.dim() != 1) throw DomainError("decide_empty_1d needs d = 1");
    const std::uint64_t a = static_cast<std::uint64_t>(w.alphabet());
    const int n = w.n();
    const std::uint64_t states = upow(a, n - 1);
    auto edge = [&](std::uint64_t from, std::uint64_t sym) { return from * a + sym; };

    std::vector<std::uint32_t> indeg(states, 0), outdeg(states, 0);
    for (auto c : w.allowed_codes()) {
        ++outdeg[c / a];
        ++indeg[c % states];
    }
    std::vector<char> alive(states, 1);
    std::deque<std::uint64_t> q;
    for (std::uint64_t v = 0; v < states; ++v)
        if (indeg[v] == 0 || outdeg[v] == 0) q.push_back(v);
    while (!q.empty()) {
        auto v = q.front();
        q.pop_front();
        if (!alive[v]) continue;
        alive[v] = 0;
        for (std::uint64_t s = 0; s < a; ++s) {
            auto c = edge(v, s);
            if (w.test(c)) {
                auto t = c % states;
                if (alive[t] && --indeg[t] == 0) q.push_back(t);
            }
            auto cin = s * states + v; // edge into v
            if (w.test(cin)) {
                auto f = cin / a;
                if (alive[f] && --outdeg[f] == 0) q.push_back(f);
            }
        }
    }

    EmptinessVerdict out;
    std::uint64_t start = states;
    for (std::uint64_t v = 0; v < states; ++v)
        if (alive[v]) {
            start = v;
            break;
        }
    if (start < states) {
        // follow least surviving out-edges until a vertex repeats
        std::unordered_map<std::uint64_t, std::size_t> seen;
        std::vector<Symbol> syms;
        std::uint64_t v = start;
        while (!seen.count(v)) {
            seen[v] = syms.size();
            for (std::uint64_t s = 0; s < a; ++s) {
                auto c = edge(v, s);
                if (w.test(c) && alive[c % states]) {
                    syms.push_back(static_cast<Symbol>(s));
                    v = c % states;
                    break;
                }
            }
        }
        std::vector<Symbol> cyc(syms.begin() + static_cast<std::ptrdiff_t>(seen[v]), syms.end());
        std::int64_t m = static_cast<std::int64_t>(cyc.size());
        out.verdict = Verdict::NonEmpty;
        out.orbit = canonical_orbit(diagonal_lattice(1, std::span<const std::int64_t>(&m, 1)), cyc);
        return out;
    }
    // acyclic: the longest allowed word has n - 1 + (longest path) symbols
    std::vector<std::uint32_t> in2(states, 0);
    for (auto c : w.allowed_codes()) ++in2[c % states];
    std::vector<std::uint64_t> dist(states, 0);
    std::deque<std::uint64_t> order;
    for (std::uint64_t v = 0; v < states; ++v)
        if (in2[v] == 0) order.push_back(v);
    std::uint64_t longest = 0;
    while (!order.empty()) {
        auto v = order.front();
        order.pop_front();
        longest = std::max(longest, dist[v]);
        for (std::uint64_t s = 0; s < a; ++s) {
            auto c = edge(v, s);
            if (!w.test(c)) continue;
            auto t = c % states;
            dist[t] = std::max(dist[t], dist[v] + 1);
            if (--in2[t] == 0) order.push_back(t);
        }
    }
    out.verdict = Verdict::Empty;
    out.empty_at_k = n + static_cast<int>(longest);
    out.k_searched = out.empty_at_k;
    return out;
}

// ---------------------------------------------------------------- search

namespace {

// Feasibility of partially assigned windows, by projection tables built lazily per mask.
class WindowOracle {
public:
    explicit WindowOracle(const AllowedSet& w) : w_(w), a_(static_cast<std::uint64_t>(w.alphabet())) {
        cells_ = w.codec().cells();
        if (cells_ > 64) throw ResourceError("windows with more than 64 cells are not searchable");
        place_.resize(static_cast<std::size_t>(cells_));
        std::uint64_t p = 1;
        for (int i = cells_ - 1; i >= 0; --i) {
            place_[static_cast<std::size_t>(i)] = p;
            p *= a_;
        }
        full_ = cells_ == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << cells_) - 1;
        allowed_ = w.allowed_codes();
    }
    int cells() const { return cells_; }
    std::uint64_t place(int pos) const { return place_[static_cast<std::size_t>(pos)]; }

    bool feasible(std::uint64_t mask, std::uint64_t partial) const {
        if (mask == full_) return w_.test(partial);
        auto it = proj_.find(mask);
        if (it == proj_.end()) {
            std::unordered_set<std::uint64_t> s;
            for (auto c : allowed_) {
                std::uint64_t pc = 0;
                for (int p = 0; p < cells_; ++p)
                    if (mask >> p & 1u) pc += (c / place_[static_cast<std::size_t>(p)]) % a_ * place_[static_cast<std::size_t>(p)];
                s.insert(pc);
            }
            it = proj_.emplace(mask, std::move(s)).first;
        }
        return it->second.count(partial) != 0;
    }

private:
    const AllowedSet& w_;
    std::uint64_t a_;
    int cells_;
    std::uint64_t full_;
    std::vector<std::uint64_t> place_;
    std::vector<std::uint64_t> allowed_;
    mutable std::unordered_map<std::uint64_t, std::unordered_set<std::uint64_t>> proj_;
};

// Backtracking fill of a box (optionally a torus) with every window feasible.
class BoxSearch {
public:
    BoxSearch(const WindowOracle& oracle, int d, int n, int alphabet, std::array<int, kMaxDim> ext,
              bool wrap, const std::vector<int>* fixed = nullptr)
        : or_(oracle), d_(d), a_(alphabet), ext_(ext) {
        std::size_t total = 1;
        for (int i = 0; i < d; ++i) total *= static_cast<std::size_t>(ext[i]);
        value_.assign(total, -1);
        if (fixed) fixed_ = *fixed;
        cell_slots_.resize(total);
        auto flat = [&](const Point& p) {
            std::size_t idx = 0;
            for (int i = 0; i < d; ++i) idx = idx * static_cast<std::size_t>(ext[i]) + static_cast<std::size_t>(p[i]);
            return idx;
        };
        Point lo{}, oext{}, wext{};
        bool any = true;
        for (int i = 0; i < d; ++i) {
            oext[i] = wrap ? ext[i] : ext[i] - n + 1;
            wext[i] = n;
            if (oext[i] <= 0) any = false;
        }
        if (any) {
            for_each_in_box(d, lo, oext, [&](const Point& o) {
                int win = static_cast<int>(mask_.size());
                mask_.push_back(0);
                partial_.push_back(0);
                int pos = 0;
                for_each_in_box(d, Point{}, wext, [&](const Point& q) {
                    Point c{};
                    for (int i = 0; i < d; ++i) c[i] = (o[i] + q[i]) % ext[i];
                    cell_slots_[flat(c)].push_back({win, pos++});
                });
            });
        }
        // column-major: first coordinate varies fastest
        Point cm_ext{};
        for (int i = 0; i < d; ++i) cm_ext[i] = ext[d - 1 - i];
        for_each_in_box(d, lo, cm_ext, [&](const Point& rp) {
            Point p{};
            for (int i = 0; i < d; ++i) p[i] = rp[d - 1 - i];
            order_.push_back(flat(p));
        });
    }

    // 1 found, 0 none, -1 budget exhausted
    int find(std::uint64_t budget) {
        budget_ = budget;
        aborted_ = false;
        counting_ = false;
        found_ = 0;
        dfs(0);
        if (found_) return 1;
        return aborted_ ? -1 : 0;
    }

    // number of complete fills; nullopt when the budget ran out
    std::optional<std::uint64_t> count(std::uint64_t budget) {
        budget_ = budget;
        aborted_ = false;
        counting_ = true;
        found_ = 0;
        dfs(0);
        if (aborted_) return std::nullopt;
        return found_;
    }

    const std::vector<int>& values() const { return solution_; }
    std::uint64_t nodes() const { return nodes_; }

private:
    struct Slot {
        int win;
        int pos;
    };

    bool place(std::size_t cell, int v) {
        bool ok = true;
        for (const auto& s : cell_slots_[cell]) {
            mask_[static_cast<std::size_t>(s.win)] |= std::uint64_t{1} << s.pos;
            partial_[static_cast<std::size_t>(s.win)] += static_cast<std::uint64_t>(v) * or_.place(s.pos);
        }
        for (const auto& s : cell_slots_[cell])
            if (!or_.feasible(mask_[static_cast<std::size_t>(s.win)], partial_[static_cast<std::size_t>(s.win)])) {
                ok = false;
                break;
            }
        return ok;
    }

    void unplace(std::size_t cell, int v) {
        for (const auto& s : cell_slots_[cell]) {
            mask_[static_cast<std::size_t>(s.win)] &= ~(std::uint64_t{1} << s.pos);
            partial_[static_cast<std::size_t>(s.win)] -= static_cast<std::uint64_t>(v) * or_.place(s.pos);
        }
    }

    // returns true to stop
    bool dfs(std::size_t step) {
        if (step == order_.size()) {
            ++found_;
            if (!counting_) {
                solution_ = value_;
                return true;
            }
            return false;
        }
        if (++nodes_ > budget_) {
            aborted_ = true;
            return true;
        }
        std::size_t cell = order_[step];
        int lo = 0, hi = a_ - 1;
        if (!fixed_.empty() && fixed_[cell] >= 0) lo = hi = fixed_[cell];
        for (int v = lo; v <= hi; ++v) {
            bool ok = place(cell, v);
            value_[cell] = v;
            bool stop = ok && dfs(step + 1);
            unplace(cell, v);
            value_[cell] = -1;
            if (stop) return true;
        }
        return false;
    }

    const WindowOracle& or_;
    int d_, a_;
    std::array<int, kMaxDim> ext_;
    std::vector<int> value_, fixed_, solution_;
    std::vector<std::vector<Slot>> cell_slots_;
    std::vector<std::uint64_t> mask_, partial_;
    std::vector<std::size_t> order_;
    std::uint64_t budget_ = 0, nodes_ = 0, found_ = 0;
    bool aborted_ = false, counting_ = false;
};

std::array<int, kMaxDim> cube_ext(int d, int k) {
    std::array<int, kMaxDim> e{};
    for (int i = 0; i < d; ++i) e[i] = k;
    return e;
}

} // namespace

std::optional<bool> exists_allowed_cube(const AllowedSet& w, int k, std::uint64_t node_budget) {
    WindowOracle oracle(w);
    BoxSearch s(oracle, w.dim(), w.n(), w.alphabet(), cube_ext(w.dim(), k), false);
    int r = s.find(node_budget);
    if (r < 0) return std::nullopt;
    return r == 1;
}

EmptinessVerdict decide_empty(const AllowedSet& w, const SearchLimits& lim) {
    if (w.dim() == 1) return decide_empty_1d(w);
    const int d = w.dim(), n = w.n();
    WindowOracle oracle(w);
    EmptinessVerdict v;
    int smax = std::max(lim.torus_max, lim.k_max - n + 1);
    for (int s = 1; s <= smax; ++s) {
        if (s <= lim.torus_max) {
            Point ext{};
            for (int i = 0; i < d; ++i) ext[i] = s;
            bool complete = true;
            std::optional<Orbit> found;
            for_each_in_box(d, Point{}, ext, [&](const Point& t0) {
                if (found) return;
                std::array<int, kMaxDim> t{};
                int mx = 0;
                for (int i = 0; i < d; ++i) {
                    t[i] = t0[i] + 1;
                    mx = std::max(mx, t[i]);
                }
                if (mx != s) return;
                BoxSearch bs(oracle, d, n, w.alphabet(), t, true);
                int r = bs.find(lim.node_budget);
                v.nodes += bs.nodes();
                if (r < 0) complete = false;
                if (r == 1) {
                    std::array<std::int64_t, kMaxDim> sides{};
                    for (int i = 0; i < d; ++i) sides[i] = t[i];
                    auto lat = diagonal_lattice(d, std::span<const std::int64_t>(sides.data(), d));
                    std::vector<Symbol> fund;
                    for (int x : bs.values()) fund.push_back(static_cast<Symbol>(x));
                    found = canonical_orbit(lat, fund);
                }
            });
            if (found) {
                v.verdict = Verdict::NonEmpty;
                v.orbit = std::move(found);
                return v;
            }
            if (complete)
                v.torus_searched = s;
            else
                v.budget_hit = true;
        }
        int k = n + s - 1;
        if (k <= lim.k_max) {
            BoxSearch bs(oracle, d, n, w.alphabet(), cube_ext(d, k), false);
            int r = bs.find(lim.node_budget);
            v.nodes += bs.nodes();
            if (r == 0) {
                v.verdict = Verdict::Empty;
                v.empty_at_k = k;
                return v;
            }
            if (r == 1)
                v.k_searched = k;
            else
                v.budget_hit = true;
        }
    }
    v.verdict = Verdict::Unknown;
    return v;
}

// ---------------------------------------------------------------- counting

double log_count(const BigCount& c) {
    if (c <= 0) return -std::numeric_limits<double>::infinity();
    auto msb = static_cast<long>(boost::multiprecision::msb(c));
    if (msb < 60) return std::log(c.convert_to<double>());
    long shift = msb - 52;
    BigCount top = c >> static_cast<unsigned>(shift);
    return std::log(top.convert_to<double>()) + double(shift) * std::log(2.0);
}

namespace {

template <class C>
C count_1d(const AllowedSet& w, int k, const std::vector<int>& fixed) {
    const std::uint64_t a = static_cast<std::uint64_t>(w.alphabet());
    const int n = w.n();
    const std::uint64_t states = upow(a, n - 1);
    if (states > (std::uint64_t{1} << 24)) throw ResourceError("transfer state space above 2^24");
    auto sym_range = [&](int pos, std::uint64_t& lo, std::uint64_t& hi) {
        if (!fixed.empty() && fixed[static_cast<std::size_t>(pos)] >= 0)
            lo = hi = static_cast<std::uint64_t>(fixed[static_cast<std::size_t>(pos)]);
        else {
            lo = 0;
            hi = a - 1;
        }
    };
    // prefix of n-1 symbols, built symbol by symbol (codes of growing length)
    std::vector<std::uint64_t> active{0};
    for (int pos = 0; pos < n - 1; ++pos) {
        std::vector<std::uint64_t> nxt;
        std::uint64_t lo, hi;
        sym_range(pos, lo, hi);
        for (auto s : active)
            for (std::uint64_t x = lo; x <= hi; ++x) nxt.push_back(s * a + x);
        active.swap(nxt);
    }
    std::vector<C> cur(states, C(0)), nxt(states, C(0));
    std::vector<char> queued(states, 0);
    for (auto s : active) cur[s] = C(1);
    std::vector<std::uint64_t> nact;
    for (int pos = n - 1; pos < k; ++pos) {
        std::uint64_t lo, hi;
        sym_range(pos, lo, hi);
        nact.clear();
        for (auto s : active) {
            for (std::uint64_t x = lo; x <= hi; ++x) {
                std::uint64_t c = s * a + x;
                if (!w.test(c)) continue;
                std::uint64_t t = c % states;
                if (!queued[t]) {
                    queued[t] = 1;
                    nact.push_back(t);
                }
                nxt[t] += cur[s];
            }
        }
        for (auto s : active) cur[s] = C(0);
        for (auto t : nact) {
            cur[t] = nxt[t];
            nxt[t] = C(0);
            queued[t] = 0;
        }
        active.swap(nact);
    }
    C total(0);
    for (auto s : active) total += cur[s];
    return total;
}

template <class C>
C count_2d_rows(const AllowedSet& w, int k, const std::vector<int>& fixed) {
    const std::uint64_t a = static_cast<std::uint64_t>(w.alphabet());
    const int n = w.n();
    const std::uint64_t row_span = upow(a, k);          // one row
    const std::uint64_t keep = upow(a, (n - 2 > 0 ? n - 2 : 0) * k); // rows kept after a drop
    const std::uint64_t an = upow(a, n);
    std::unordered_map<std::uint64_t, C> cur{{0, C(1)}}, nxt;
    std::uint64_t work = 0;
    std::vector<std::uint64_t> upper(static_cast<std::size_t>(k));
    std::vector<Symbol> rowsyms(static_cast<std::size_t>((n - 1) * k));
    for (int r = 0; r < k; ++r) {
        int held = std::min(n - 1, r); // rows in the state
        bool check = r >= n - 1;
        nxt.clear();
        for (const auto& [state, cnt] : cur) {
            if (check && n > 1) {
                // decode held rows, oldest first
                std::uint64_t s = state;
                for (int i = held * k - 1; i >= 0; --i) {
                    rowsyms[static_cast<std::size_t>(i)] = static_cast<Symbol>(s % a);
                    s /= a;
                }
                for (int c0 = 0; c0 + n <= k; ++c0) {
                    std::uint64_t u = 0;
                    for (int rr = 0; rr < n - 1; ++rr)
                        for (int cc = 0; cc < n; ++cc) u = u * a + rowsyms[static_cast<std::size_t>(rr * k + c0 + cc)];
                    upper[static_cast<std::size_t>(c0)] = u;
                }
            }
            // extend with a new row, cell by cell
            std::function<void(int, std::uint64_t)> ext = [&](int c, std::uint64_t row) {
                if (++work > 400000000ULL) throw ResourceError("row-transfer work budget exceeded");
                if (c == k) {
                    std::uint64_t ns = (held == n - 1 ? state % keep : state) * row_span + row;
                    if (n == 1) ns = 0;
                    nxt[ns] += cnt;
                    return;
                }
                int f = fixed.empty() ? -1 : fixed[static_cast<std::size_t>(r * k + c)];
                std::uint64_t lo = f >= 0 ? static_cast<std::uint64_t>(f) : 0;
                std::uint64_t hi = f >= 0 ? static_cast<std::uint64_t>(f) : a - 1;
                for (std::uint64_t x = lo; x <= hi; ++x) {
                    std::uint64_t nrow = row * a + x;
                    if (check && c >= n - 1) {
                        int c0 = c - n + 1;
                        std::uint64_t seg = nrow % an;
                        std::uint64_t code = (n > 1 ? upper[static_cast<std::size_t>(c0)] * an : 0) + seg;
                        if (!w.test(code)) continue;
                    }
                    ext(c + 1, nrow);
                }
            };
            ext(0, 0);
        }
        cur.swap(nxt);
    }
    C total(0);
    for (const auto& [s, c] : cur) total += c;
    return total;
}

std::uint64_t count_brute(const AllowedSet& w, int k, const std::vector<int>& fixed) {
    WindowOracle oracle(w);
    BoxSearch s(oracle, w.dim(), w.n(), w.alphabet(), cube_ext(w.dim(), k), false,
                fixed.empty() ? nullptr : &fixed);
    auto c = s.count(std::uint64_t{1} << 34);
    if (!c) throw ResourceError("exhaustive pattern count exceeded its node budget");
    return *c;
}

} // namespace

BigCount count_constrained(const AllowedSet& w, int k, const std::vector<int>& fixed) {
    const int d = w.dim(), n = w.n();
    if (k < 1) throw DomainError("k must be >= 1");
    std::size_t cells = 1;
    for (int i = 0; i < d; ++i) cells *= static_cast<std::size_t>(k);
    if (!fixed.empty() && fixed.size() != cells) throw DomainError("fixed-cell vector has the wrong size");
    std::size_t free_cells = 0;
    for (std::size_t i = 0; i < cells; ++i)
        if (fixed.empty() || fixed[i] < 0) ++free_cells;
    double bits = double(free_cells) * std::log2(double(w.alphabet()));
    if (k < n) {
        BigCount r = 1;
        for (std::size_t i = 0; i < free_cells; ++i) r *= w.alphabet();
        return r;
    }
    bool small = bits < 62;
    if (d == 1) {
        if (k > 1000000) throw ResourceError("d=1 pattern counts are limited to k <= 10^6");
        if (small) return BigCount(count_1d<std::uint64_t>(w, k, fixed));
        double limbs = bits / 64 + 1;
        double states = std::pow(double(w.alphabet()), n);
        if (double(k) * states * limbs > 5e9) throw ResourceError("exact d=1 count exceeds the work budget");
        return count_1d<BigCount>(w, k, fixed);
    }
    if (d == 2) {
        double state_bits = double((n - 1) * k) * std::log2(double(w.alphabet()));
        if (state_bits <= 20) {
            if (small) return BigCount(count_2d_rows<std::uint64_t>(w, k, fixed));
            return count_2d_rows<BigCount>(w, k, fixed);
        }
    }
    if (bits <= 24) return BigCount(count_brute(w, k, fixed));
    throw ResourceError("pattern count at d=" + std::to_string(d) + ", n=" + std::to_string(n) +
                        ", k=" + std::to_string(k) + " exceeds the state budget");
}

BigCount count_phi(const AllowedSet& w, int k) { return count_constrained(w, k, {}); }

PeriodicBoundary periodic_boundary(int d, int n, int k) {
    check_dim(d);
    if (k - n + 1 < 1) throw DomainError("periodic boundaries need k >= n");
    PeriodicBoundary pb;
    pb.d = d;
    pb.n = n;
    pb.k = k;
    pb.l = k - n + 1;
    std::map<Point, int> ids;
    Point ext{};
    for (int i = 0; i < d; ++i) ext[i] = k;
    for_each_in_box(d, Point{}, ext, [&](const Point& p) {
        bool bd = false;
        for (int i = 0; i < d; ++i)
            if (p[i] < n || p[i] >= k - n) bd = true;
        if (!bd) {
            pb.classes.push_back(-1);
            return;
        }
        Point r{};
        for (int i = 0; i < d; ++i) r[i] = p[i] % pb.l;
        auto [it, fresh] = ids.emplace(r, static_cast<int>(ids.size()));
        pb.classes.push_back(it->second);
    });
    pb.class_count = static_cast<int>(ids.size());
    return pb;
}

PsiEstimate count_psi(const AllowedSet& w, int k, std::uint64_t boundary_samples) {
    if (boundary_samples < 1) throw DomainError("boundary_samples must be >= 1");
    auto pb = periodic_boundary(w.dim(), w.n(), k);
    const int a = w.alphabet();
    PsiEstimate est;
    est.log_v = pb.class_count * std::log(double(a));
    double v_size = std::pow(double(a), pb.class_count);
    std::vector<int> vals(static_cast<std::size_t>(pb.class_count), 0);
    std::vector<int> fixed(pb.classes.size());
    auto fill_count = [&]() {
        for (std::size_t i = 0; i < fixed.size(); ++i)
            fixed[i] = pb.classes[i] >= 0 ? vals[static_cast<std::size_t>(pb.classes[i])] : -1;
        return count_constrained(w, k, fixed).convert_to<double>();
    };
    if (v_size <= double(boundary_samples)) {
        est.exact = true;
        double sum = 0;
        while (true) {
            sum += fill_count();
            ++est.boundaries;
            int i = pb.class_count - 1;
            while (i >= 0 && ++vals[static_cast<std::size_t>(i)] == a) vals[static_cast<std::size_t>(i--)] = 0;
            if (i < 0) break;
        }
        est.value = sum / v_size;
        return est;
    }
    CounterEngine eng(w.seed, Stream::Boundary, w.trial);
    double mean = 0, m2 = 0;
    for (std::uint64_t s = 0; s < boundary_samples; ++s) {
        for (auto& v : vals) v = static_cast<int>(eng.below(static_cast<std::uint64_t>(a)));
        double x = fill_count();
        ++est.boundaries;
        double delta = x - mean;
        mean += delta / double(est.boundaries);
        m2 += delta * (x - mean);
    }
    est.value = mean;
    est.std_error = boundary_samples > 1 ? std::sqrt(m2 / double(boundary_samples - 1) / double(boundary_samples)) : 0;
    return est;
}

EntropyEstimate entropy_estimate(const AllowedSet& w, int k, std::uint64_t boundary_samples) {
    EntropyEstimate e;
    e.k = k;
    double vol = std::pow(double(k), w.dim());
    e.phi = count_phi(w, k);
    e.h_upper = log_count(e.phi) / vol;
    e.psi = count_psi(w, k, boundary_samples);
    e.h_per_lower = e.psi.value > 0 ? std::log(e.psi.value) / vol : -std::numeric_limits<double>::infinity();
    return e;
}

// ---------------------------------------------------------------- orbits

OrbitCatalog::OrbitCatalog(int alphabet, int d, int n, int max_size)
    : alphabet_(alphabet), d_(d), n_(n), max_size_(max_size) {
    orbits_ = enumerate_orbits(alphabet, d, max_size);
    windows_.reserve(orbits_.size());
    for (const auto& g : orbits_) windows_.push_back(orbit_windows(g, n, alphabet));
}

bool OrbitCatalog::allowed(const AllowedSet& w, std::size_t i) const {
    if (w.alphabet() != alphabet_ || w.dim() != d_ || w.n() != n_)
        throw DomainError("orbit catalog built for different ensemble parameters");
    for (auto c : windows_[i])
        if (!w.test(c)) return false;
    return true;
}

OrbitPresence periodic_orbits_present(const AllowedSet& w, const OrbitCatalog& cat) {
    OrbitPresence p;
    for (std::size_t i = 0; i < cat.orbits().size(); ++i)
        if (cat.allowed(w, i)) p.orbits.push_back(cat.orbits()[i]);
    return p;
}

OrbitPresence periodic_orbits_present(const AllowedSet& w, int max_size) {
    return periodic_orbits_present(w, OrbitCatalog(w.alphabet(), w.dim(), w.n(), max_size));
}

bool any_orbit_allowed(const AllowedSet& w, const OrbitCatalog& cat) {
    for (std::size_t i = 0; i < cat.orbits().size(); ++i)
        if (cat.allowed(w, i)) return true;
    return false;
}

} // namespace sftlab
