// counter_rng.hpp
#pragma once

#include <array>
#include <cstdint>
#include <limits>

namespace sftlab {

// Philox4x32-10 (Salmon et al.), counter-based.
std::array<std::uint32_t, 4> philox4x32(std::array<std::uint32_t, 4> ctr,
                                        std::array<std::uint32_t, 2> key);

// Stream tags keep independent consumers of one seed apart.
enum class Stream : std::uint32_t { Ensemble = 0, Boundary = 1, Pattern = 2 };

// Random block i of stream (seed, tag, trial). Indices below 2^48.
class CounterRng {
public:
    CounterRng(std::uint64_t seed, Stream tag, std::uint64_t trial)
        : seed_(seed), tag_(static_cast<std::uint32_t>(tag)), trial_(trial) {}

    std::array<std::uint32_t, 4> block(std::uint64_t index) const;
    // two 64-bit words of block i
    std::array<std::uint64_t, 2> words(std::uint64_t index) const;

private:
    std::uint64_t seed_;
    std::uint32_t tag_;
    std::uint64_t trial_;
};

// Sequential UniformRandomBitGenerator view over a CounterRng.
class CounterEngine {
public:
    using result_type = std::uint64_t;
    CounterEngine(std::uint64_t seed, Stream tag, std::uint64_t trial) : rng_(seed, tag, trial) {}
    static constexpr result_type min() { return 0; }
    static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }
    result_type operator()();
    // uniform integer in [0, bound) without modulo bias
    std::uint64_t below(std::uint64_t bound);

private:
    CounterRng rng_;
    std::uint64_t next_ = 0;
};

// floor(alpha * 2^53); a 53-bit uniform u gives a success when u < threshold.
std::uint64_t bernoulli_threshold(double alpha);

} // namespace sftlab
