// counter_rng.cpp
#include "sftlab/counter_rng.hpp"

#include "sftlab/errors.hpp"

#include <cmath>

namespace sftlab {

namespace {

constexpr std::uint32_t kM0 = 0xD2511F53u;
constexpr std::uint32_t kM1 = 0xCD9E8D57u;
constexpr std::uint32_t kW0 = 0x9E3779B9u;
constexpr std::uint32_t kW1 = 0xBB67AE85u;

inline void mulhilo(std::uint32_t a, std::uint32_t b, std::uint32_t& hi, std::uint32_t& lo) {
    std::uint64_t p = std::uint64_t{a} * b;
    hi = static_cast<std::uint32_t>(p >> 32);
    lo = static_cast<std::uint32_t>(p);
}

} // namespace

std::array<std::uint32_t, 4> philox4x32(std::array<std::uint32_t, 4> c,
                                        std::array<std::uint32_t, 2> k) {
    for (int round = 0; round < 10; ++round) {
        std::uint32_t hi0, lo0, hi1, lo1;
        mulhilo(kM0, c[0], hi0, lo0);
        mulhilo(kM1, c[2], hi1, lo1);
        c = {hi1 ^ c[1] ^ k[0], lo1, hi0 ^ c[3] ^ k[1], lo0};
        k[0] += kW0;
        k[1] += kW1;
    }
    return c;
}

std::array<std::uint32_t, 4> CounterRng::block(std::uint64_t index) const {
    std::array<std::uint32_t, 4> ctr{
        static_cast<std::uint32_t>(index),
        static_cast<std::uint32_t>((index >> 32) & 0xFFFFu) | (tag_ << 16),
        static_cast<std::uint32_t>(trial_),
        static_cast<std::uint32_t>(trial_ >> 32),
    };
    return philox4x32(ctr, {static_cast<std::uint32_t>(seed_), static_cast<std::uint32_t>(seed_ >> 32)});
}

std::array<std::uint64_t, 2> CounterRng::words(std::uint64_t index) const {
    auto b = block(index);
    return {(std::uint64_t{b[1]} << 32) | b[0], (std::uint64_t{b[3]} << 32) | b[2]};
}

CounterEngine::result_type CounterEngine::operator()() {
    auto w = rng_.words(next_ >> 1);
    return w[next_++ & 1];
}

std::uint64_t CounterEngine::below(std::uint64_t bound) {
    if (bound == 0) return 0;
    std::uint64_t limit = max() - max() % bound;
    while (true) {
        std::uint64_t v = (*this)();
        if (v < limit) return v % bound;
    }
}

std::uint64_t bernoulli_threshold(double alpha) {
    if (!(alpha >= 0.0 && alpha <= 1.0)) throw DomainError("alpha must lie in [0, 1]");
    return static_cast<std::uint64_t>(std::floor(std::ldexp(alpha, 53)));
}

} // namespace sftlab
