#include <gtest/gtest.h>

#include <cmath>

#include "hqss/qudit.hpp"

using namespace hqss;
using namespace hqss::qudit;

TEST(Mub, StatesAreNormalizedAndOrthogonal) {
    for (std::uint32_t p : {3u, 5u, 7u, 11u})
        for (std::uint32_t j = 0; j < p; ++j)
            for (std::uint32_t l = 0; l < p; ++l) {
                auto a = mubState(p, j, l);
                EXPECT_NEAR(a.norm(), 1.0, 1e-10);
                for (std::uint32_t m = l + 1; m < p; ++m) EXPECT_NEAR(overlap(a, mubState(p, j, m)), 0.0, 1e-10);
            }
}

TEST(Mub, CrossBasisOverlapsAreUnbiased) {
    for (std::uint32_t p : {3u, 5u, 7u, 11u}) {
        double target = 1.0 / std::sqrt(static_cast<double>(p));
        for (std::uint32_t j = 0; j < p; ++j)
            for (std::uint32_t k = j + 1; k < p; ++k)
                for (std::uint32_t l = 0; l < p; ++l)
                    for (std::uint32_t m = 0; m < p; ++m)
                        ASSERT_NEAR(overlap(mubState(p, j, l), mubState(p, k, m)), target, 1e-10);
        for (std::uint32_t j = 0; j < p; ++j)
            for (std::uint32_t l = 0; l < p; ++l)
                for (std::uint32_t k = 0; k < p; ++k)
                    ASSERT_NEAR(overlap(mubState(p, j, l), computationalState(p, k)), target, 1e-10);
    }
}

TEST(Shift, MovesLevelAndBasisExhaustively) {
    for (std::uint32_t p : {3u, 5u, 7u})
        for (std::uint32_t j = 0; j < p; ++j)
            for (std::uint32_t l = 0; l < p; ++l)
                for (std::uint32_t x = 0; x < p; ++x)
                    for (std::uint32_t y = 0; y < p; ++y) {
                        auto moved = applyShift(x, y, mubState(p, j, l));
                        auto want = mubState(p, (j + y) % p, (l + x) % p);
                        for (std::uint32_t k = 0; k < p; ++k) ASSERT_NEAR(std::abs(moved[k] - want[k]), 0.0, 1e-10);
                    }
}

TEST(Shift, SampledAtEleven) {
    Rng rng(5);
    for (int t = 0; t < 500; ++t) {
        std::uint32_t j = rng.uniform(11), l = rng.uniform(11), x = rng.uniform(11), y = rng.uniform(11);
        auto moved = applyShift(x, y, mubState(11, j, l));
        EXPECT_NEAR(overlap(moved, mubState(11, (j + y) % 11, (l + x) % 11)), 1.0, 1e-10);
    }
}

TEST(Measure, SameBasisIsDeterministic) {
    Rng rng(1);
    for (std::uint32_t l = 0; l < 7; ++l) {
        auto m = measure(mubState(7, 3, l), BasisId::mub(3), rng);
        EXPECT_EQ(m.outcome, l);
        EXPECT_NEAR(overlap(m.collapsed, mubState(7, 3, l)), 1.0, 1e-10);
    }
}

TEST(Measure, OtherBasisIsUniform) {
    auto pr = outcomeProbabilities(mubState(5, 1, 2), BasisId::mub(4));
    for (auto v : pr) EXPECT_NEAR(v, 0.2, 1e-10);
    Rng rng(2);
    std::vector<int> hist(5, 0);
    const int n = 50000;
    for (int t = 0; t < n; ++t) ++hist[measure(mubState(5, 1, 2), BasisId::computational(), rng).outcome];
    // 4 sigma on a binomial(n, 1/5) count
    for (auto h : hist) EXPECT_NEAR(h, n / 5.0, 4 * std::sqrt(n * 0.2 * 0.8));
}

TEST(Measure, BadIndices) {
    try {
        mubState(5, 5, 0);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), Errc::BadIndex);
    }
    EXPECT_THROW(mubState(5, 0, 7), Error);
    EXPECT_THROW(computationalState(3, 3), Error);
    Rng rng(1);
    EXPECT_THROW(measure(mubState(5, 0, 0), BasisId::mub(9), rng), Error);
}
