// ensemble.hpp
#pragma once

#include "sftlab/orbits.hpp"
#include "sftlab/patterns.hpp"

#include <cstdint>
#include <iosfwd>
#include <vector>

namespace sftlab {

struct EnsembleParams {
    int alphabet = 2;
    int d = 1;
    int n = 2;
    double alpha = 0.5;
    std::uint64_t seed = 0;
};

void validate(const EnsembleParams& p);

// omega: one bit per F_n-pattern code; set bits are the allowed windows.
class AllowedSet {
public:
    // all windows forbidden; refuses tables above 2^28 windows
    AllowedSet(int alphabet, int d, int n);

    int alphabet() const { return codec_.alphabet(); }
    int dim() const { return codec_.dim(); }
    int n() const { return codec_.side(); }
    const WindowCodec& codec() const { return codec_; }
    std::uint64_t size() const { return codec_.table_size(); }

    std::uint64_t seed = 0;
    std::uint64_t trial = 0;

    bool test(std::uint64_t code) const { return (bits_[code >> 6] >> (code & 63)) & 1u; }
    void set(std::uint64_t code, bool on = true);
    void fill(bool on);
    std::uint64_t count() const;
    std::vector<std::uint64_t> allowed_codes() const;
    bool subset_of(const AllowedSet& o) const;

    std::vector<std::uint64_t>& words() { return bits_; }
    const std::vector<std::uint64_t>& words() const { return bits_; }

    bool operator==(const AllowedSet& o) const;

private:
    WindowCodec codec_;
    std::vector<std::uint64_t> bits_;
};

// Each bit independently set with probability alpha; a pure function of
// (seed, trial).
AllowedSet sample(const EnsembleParams& p, std::uint64_t trial);

// File layout (little-endian): "SFTLABW1", u32 d, u32 n, u32 alphabet,
// u32 0, u64 seed, u64 trial, u64 bit count, then the bitset packed
// 8 bits per byte, bit i in byte i/8 at position i%8.
void write_allowed_set(std::ostream& out, const AllowedSet& w);
AllowedSet read_allowed_set(std::istream& in);

// All n-windows of u allowed. DomainError when u hosts no n-cube.
bool is_locally_allowed(const AllowedSet& w, const Pattern& u);

// W_n(gamma) inside the allowed set.
bool orbit_allowed(const AllowedSet& w, const Orbit& g);

} // namespace sftlab
