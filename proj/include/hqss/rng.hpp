#pragma once

#include <cstdint>
#include <random>

#include <boost/random/uniform_01.hpp>
#include <boost/random/uniform_int_distribution.hpp>

namespace hqss {

// Seeded generator. Boost distributions keep draws identical across standard libraries.
class Rng {
public:
    explicit Rng(std::uint64_t seed = 1) : eng_(seed) {}

    std::uint32_t uniform(std::uint32_t n) {
        boost::random::uniform_int_distribution<std::uint32_t> d(0, n - 1);
        return d(eng_);
    }

    // Uniform in [1, n-1].
    std::uint32_t nonzero(std::uint32_t n) { return 1 + uniform(n - 1); }

    double unit() {
        boost::random::uniform_01<double> d;
        return d(eng_);
    }

    std::mt19937_64& engine() { return eng_; }

private:
    std::mt19937_64 eng_;
};

// Independent stream for trial i of a seeded batch.
inline std::uint64_t deriveSeed(std::uint64_t seed, std::uint64_t index) {
    std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (index + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

} // namespace hqss
