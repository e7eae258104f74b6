// ensemble.cpp
#include "sftlab/ensemble.hpp"

#include "sftlab/counter_rng.hpp"
#include "sftlab/errors.hpp"

#include <bit>
#include <cstring>
#include <istream>
#include <ostream>

namespace sftlab {

void validate(const EnsembleParams& p) {
    check_alphabet(p.alphabet);
    check_dim(p.d);
    if (p.n < 1) throw DomainError("window side n must be >= 1");
    if (!(p.alpha >= 0.0 && p.alpha <= 1.0)) throw DomainError("alpha must lie in [0, 1]");
}

namespace {

WindowCodec guarded_codec(int alphabet, int d, int n) {
    auto sz = window_table_size(alphabet, d, n);
    if (!sz || *sz > kWindowTableLimit)
        throw ResourceError("allowed-set table " + std::to_string(alphabet) + "^(" +
                            std::to_string(n) + "^" + std::to_string(d) + ") exceeds 2^28 windows");
    return WindowCodec(alphabet, d, n);
}

} // namespace

AllowedSet::AllowedSet(int alphabet, int d, int n)
    : codec_(guarded_codec(alphabet, d, n)), bits_((codec_.table_size() + 63) / 64, 0) {}

void AllowedSet::set(std::uint64_t code, bool on) {
    std::uint64_t m = std::uint64_t{1} << (code & 63);
    if (on)
        bits_[code >> 6] |= m;
    else
        bits_[code >> 6] &= ~m;
}

void AllowedSet::fill(bool on) {
    for (auto& w : bits_) w = on ? ~std::uint64_t{0} : 0;
    std::uint64_t tail = size() & 63;
    if (on && tail) bits_.back() = (std::uint64_t{1} << tail) - 1;
}

std::uint64_t AllowedSet::count() const {
    std::uint64_t c = 0;
    for (auto w : bits_) c += static_cast<std::uint64_t>(std::popcount(w));
    return c;
}

std::vector<std::uint64_t> AllowedSet::allowed_codes() const {
    std::vector<std::uint64_t> out;
    for (std::size_t b = 0; b < bits_.size(); ++b) {
        std::uint64_t w = bits_[b];
        while (w) {
            out.push_back(b * 64 + static_cast<std::uint64_t>(std::countr_zero(w)));
            w &= w - 1;
        }
    }
    return out;
}

bool AllowedSet::subset_of(const AllowedSet& o) const {
    if (bits_.size() != o.bits_.size()) return false;
    for (std::size_t i = 0; i < bits_.size(); ++i)
        if (bits_[i] & ~o.bits_[i]) return false;
    return true;
}

bool AllowedSet::operator==(const AllowedSet& o) const {
    return alphabet() == o.alphabet() && dim() == o.dim() && n() == o.n() && bits_ == o.bits_;
}

AllowedSet sample(const EnsembleParams& p, std::uint64_t trial) {
    validate(p);
    AllowedSet w(p.alphabet, p.d, p.n);
    w.seed = p.seed;
    w.trial = trial;
    const std::uint64_t thr = bernoulli_threshold(p.alpha);
    const std::uint64_t total = w.size();
    CounterRng rng(p.seed, Stream::Ensemble, trial);
    auto& bits = w.words();
    // block i of the generator decides windows 2i and 2i+1
    for (std::uint64_t blk = 0; 2 * blk < total; ++blk) {
        auto r = rng.words(blk);
        for (std::uint64_t h = 0; h < 2; ++h) {
            std::uint64_t code = 2 * blk + h;
            if (code >= total) break;
            if ((r[h] >> 11) < thr) bits[code >> 6] |= std::uint64_t{1} << (code & 63);
        }
    }
    return w;
}

namespace {

constexpr char kMagic[8] = {'S', 'F', 'T', 'L', 'A', 'B', 'W', '1'};

void put(std::ostream& out, std::uint64_t v, int bytes) {
    for (int i = 0; i < bytes; ++i) out.put(static_cast<char>((v >> (8 * i)) & 0xFF));
}

std::uint64_t get(std::istream& in, int bytes) {
    std::uint64_t v = 0;
    for (int i = 0; i < bytes; ++i) {
        int c = in.get();
        if (c == EOF) throw DomainError("truncated allowed-set file");
        v |= std::uint64_t(static_cast<unsigned char>(c)) << (8 * i);
    }
    return v;
}

} // namespace

void write_allowed_set(std::ostream& out, const AllowedSet& w) {
    out.write(kMagic, 8);
    put(out, static_cast<std::uint64_t>(w.dim()), 4);
    put(out, static_cast<std::uint64_t>(w.n()), 4);
    put(out, static_cast<std::uint64_t>(w.alphabet()), 4);
    put(out, 0, 4);
    put(out, w.seed, 8);
    put(out, w.trial, 8);
    put(out, w.size(), 8);
    std::uint64_t nbytes = (w.size() + 7) / 8;
    for (std::uint64_t b = 0; b < nbytes; ++b)
        out.put(static_cast<char>((w.words()[b / 8] >> (8 * (b % 8))) & 0xFF));
}

AllowedSet read_allowed_set(std::istream& in) {
    char magic[8];
    if (!in.read(magic, 8) || std::memcmp(magic, kMagic, 8) != 0)
        throw DomainError("not an allowed-set file (bad magic)");
    int d = static_cast<int>(get(in, 4));
    int n = static_cast<int>(get(in, 4));
    int a = static_cast<int>(get(in, 4));
    get(in, 4);
    check_dim(d);
    check_alphabet(a);
    AllowedSet w(a, d, n);
    w.seed = get(in, 8);
    w.trial = get(in, 8);
    if (get(in, 8) != w.size()) throw DomainError("allowed-set bit count does not match its header");
    std::uint64_t nbytes = (w.size() + 7) / 8;
    for (std::uint64_t b = 0; b < nbytes; ++b)
        w.words()[b / 8] |= get(in, 1) << (8 * (b % 8));
    std::uint64_t tail = w.size() & 63;
    if (tail && (w.words().back() >> tail)) throw DomainError("allowed-set padding bits are not zero");
    return w;
}

bool is_locally_allowed(const AllowedSet& w, const Pattern& u) {
    if (u.dim() != w.dim()) throw DomainError("pattern and allowed set differ in dimension");
    for (auto c : window_codes(u, w.n(), w.alphabet()))
        if (!w.test(c)) return false;
    return true;
}

bool orbit_allowed(const AllowedSet& w, const Orbit& g) {
    if (g.lattice.d != w.dim()) throw DomainError("orbit and allowed set differ in dimension");
    for (auto c : orbit_windows(g, w.n(), w.alphabet()))
        if (!w.test(c)) return false;
    return true;
}

} // namespace sftlab
